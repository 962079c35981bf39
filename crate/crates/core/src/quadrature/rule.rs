//! 15-point Kronrod rule with its embedded 7-point Gauss rule.

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
/// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub(crate) struct Panel {
    pub a: f64,
    pub b: f64,
    pub value: f64,
    pub err: f64,
    /// Kronrod estimate of ∫|f|, used for the round-off floor.
    pub abs: f64,
}

/// Applies the rule on [a, b]. Only interior nodes are evaluated.
pub(crate) fn gk15<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs = WGK[7] * fc.abs();
    for i in 0..7 {
        let dx = h * XGK[i];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        kron += WGK[i] * (f1 + f2);
        abs += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    Panel {
        a,
        b,
        value: kron * h,
        err: ((kron - gauss) * h).abs(),
        abs: abs * h.abs(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_high_degree_polynomials() {
        // Kronrod-15 integrates degree 22 exactly, Gauss-7 degree 13.
        let p = gk15(&|x: f64| x.powi(12), 0.0, 1.0);
        assert!((p.value - 1.0 / 13.0).abs() < 1e-16);
        assert!(p.err < 1e-15);
        let p = gk15(&|x: f64| x.powi(20), -1.0, 1.0);
        assert!((p.value - 2.0 / 21.0).abs() < 1e-15);
    }

    #[test]
    fn weights_sum_to_interval_length() {
        let p = gk15(&|_| 1.0, 2.0, 5.0);
        assert!((p.value - 3.0).abs() < 1e-14);
    }
}
