//! Gamma function and Gauss--Legendre rules shared by the numerical modules.

use crate::{cast, Real};

/// Lanczos approximation (g = 7, 9 terms), accurate to about 1e-15 relative
/// in double precision on the positive real axis.
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

pub fn gamma<T: Real>(x: T) -> T {
    let half = cast::<T>(0.5);
    if x < half {
        // reflection
        let pi = cast::<T>(std::f64::consts::PI);
        pi / ((pi * x).sin() * gamma(T::one() - x))
    } else {
        let x = x - T::one();
        let mut acc = cast::<T>(LANCZOS[0]);
        for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
            acc += cast::<T>(c) / (x + cast::<T>(i as f64));
        }
        let t = x + cast::<T>(7.5);
        let sqrt_two_pi = cast::<T>((2.0 * std::f64::consts::PI).sqrt());
        sqrt_two_pi * t.powf(x + half) * (-t).exp() * acc
    }
}

/// 16-point Gauss--Legendre rule on [-1, 1], used per quadrature panel.
pub const GL16: [(f64, f64); 16] = [
    (-0.989_400_934_991_649_9, 0.027_152_459_411_754_037),
    (-0.944_575_023_073_232_6, 0.062_253_523_938_647_706),
    (-0.865_631_202_387_831_8, 0.095_158_511_682_492_59),
    (-0.755_404_408_355_003, 0.124_628_971_255_534_03),
    (-0.617_876_244_402_643_8, 0.149_595_988_816_576_76),
    (-0.458_016_777_657_227_37, 0.169_156_519_395_002_62),
    (-0.281_603_550_779_258_9, 0.182_603_415_044_923_6),
    (-0.095_012_509_837_637_45, 0.189_450_610_455_068_59),
    (0.095_012_509_837_637_45, 0.189_450_610_455_068_59),
    (0.281_603_550_779_258_9, 0.182_603_415_044_923_6),
    (0.458_016_777_657_227_37, 0.169_156_519_395_002_62),
    (0.617_876_244_402_643_8, 0.149_595_988_816_576_76),
    (0.755_404_408_355_003, 0.124_628_971_255_534_03),
    (0.865_631_202_387_831_8, 0.095_158_511_682_492_59),
    (0.944_575_023_073_232_6, 0.062_253_523_938_647_706),
    (0.989_400_934_991_649_9, 0.027_152_459_411_754_037),
];

/// 8-point Gauss--Legendre rule, used on the contour panels.
pub const GL8: [(f64, f64); 8] = [
    (-0.960_289_856_497_536_2, 0.101_228_536_290_376_69),
    (-0.796_666_477_413_626_7, 0.222_381_034_453_374_34),
    (-0.525_532_409_916_329, 0.313_706_645_877_887_05),
    (-0.183_434_642_495_649_78, 0.362_683_783_378_361_77),
    (0.183_434_642_495_649_78, 0.362_683_783_378_361_77),
    (0.525_532_409_916_329, 0.313_706_645_877_887_05),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_34),
    (0.960_289_856_497_536_2, 0.101_228_536_290_376_69),
];

/// Integrate `f` over [a, b] with the 16-point rule.
pub fn gl16_panel<T: Real>(a: T, b: T, mut f: impl FnMut(T) -> T) -> T {
    let half = cast::<T>(0.5);
    let mid = half * (a + b);
    let rad = half * (b - a);
    let mut acc = T::zero();
    for &(x, w) in GL16.iter() {
        acc += cast::<T>(w) * f(mid + rad * cast::<T>(x));
    }
    acc * rad
}
