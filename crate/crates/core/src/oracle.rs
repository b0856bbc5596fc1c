//! Floating-point oracle: adaptive Gauss-Kronrod quadrature on the real line
//! and Monte-Carlo moments on spheres. Independent of the exact residue path,
//! used to audit it.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational_xi::RationalXi;
use crate::scalar::sphere_volume;
use crate::symbol::TangMonomial;

/// Seed used when `KKW_SEED` is not set.
pub const DEFAULT_SEED: u64 = 0x6b6b_7700;

/// `KKW_SEED` if set and parseable, else [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("KKW_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// G7-K15 on `[a, b]`: (Kronrod estimate, |Kronrod - Gauss|).
fn gk15(f: &impl Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let pair = f(c - x) + f(c + x);
        kron += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    (kron * h, ((kron - gauss) * h).norm())
}

/// Globally adaptive GK15 on a finite interval.
pub fn quad_interval(f: impl Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Result<Complex64> {
    const MAX_INTERVALS: usize = 4000;
    let (v, e) = gk15(&f, a, b);
    let mut pieces = vec![(a, b, v, e)];
    loop {
        let total: Complex64 = pieces.iter().map(|p| p.2).sum();
        let err: f64 = pieces.iter().map(|p| p.3).sum();
        if err <= tol {
            return Ok(total);
        }
        if pieces.len() >= MAX_INTERVALS {
            return Err(Error::ToleranceNotReached { tol, estimate: err });
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("nonempty");
        let (lo, hi, _, _) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
    }
}

/// `int_R f(xi) dxi` for `f = O(xi^-2)`, via `xi = tan(theta)`.
pub fn quad_line(f: impl Fn(f64) -> Complex64, tol: f64) -> Result<Complex64> {
    use std::f64::consts::FRAC_PI_2;
    quad_interval(
        |theta| {
            let c = theta.cos();
            f(theta.tan()) / (c * c)
        },
        -FRAC_PI_2,
        FRAC_PI_2,
        tol,
    )
}

/// [`quad_line`] for a [`RationalXi`] with `h1` bound numerically.
pub fn quad_rational(f: &RationalXi, h1: f64, tol: f64) -> Result<Complex64> {
    quad_line(|x| f.eval(x, h1), tol)
}

/// Monte-Carlo estimate of a sphere moment with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereEstimate {
    pub value: f64,
    pub sigma: f64,
    pub samples: usize,
    pub seed: u64,
}

/// `int_{S^{d-1}} xi'^alpha dsigma` by uniform sampling (normalised Gaussians).
pub fn quad_sphere(m: &TangMonomial, d: usize, samples: usize, seed: u64) -> SphereEstimate {
    assert!(d >= 1 && samples >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut point = vec![0.0f64; d];
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..samples {
        let mut norm_sq = 0.0;
        for x in point.iter_mut() {
            *x = rng.sample(StandardNormal);
            norm_sq += *x * *x;
        }
        let inv = norm_sq.sqrt().recip();
        let v: f64 = point
            .iter()
            .zip(m.exponents())
            .map(|(x, &e)| (x * inv).powi(e as i32))
            .product();
        sum += v;
        sum_sq += v * v;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0) * n / (n - 1.0);
    let area = sphere_volume(d as u32 - 1);
    SphereEstimate {
        value: area * mean,
        sigma: area * (var / n).sqrt(),
        samples,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn lorentzian() {
        let v = quad_line(|x| Complex64::new(1.0 / (1.0 + x * x), 0.0), 1e-12).unwrap();
        assert!((v.re - PI).abs() < 1e-10);
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn contour_integral_value() {
        // [(i xi + 2)/(xi - i)^2] * [(-1 + 3 xi^2)/(1 + xi^2)^3]
        let f = |x: f64| {
            let z = Complex64::new(x, 0.0);
            (Complex64::i() * z + 2.0) / (z - Complex64::i()).powu(2) * (3.0 * z * z - 1.0)
                / (1.0 + z * z).powu(3)
        };
        let v = quad_line(f, 1e-12).unwrap();
        assert!((v.re - 5.0 * PI / 16.0).abs() < 1e-10);
        assert!((v.re - 0.981_747_70).abs() < 1e-8);
        assert!(v.im.abs() < 1e-10);
    }

    #[test]
    fn correction_integrand() {
        // 8 (5 xi^4 + 9 xi^2)/(1 + xi^2)^5 -> 15 pi / 4
        let v = quad_line(
            |x| {
                let x2 = x * x;
                Complex64::new(8.0 * (5.0 * x2 * x2 + 9.0 * x2) / (1.0 + x2).powi(5), 0.0)
            },
            1e-12,
        )
        .unwrap();
        assert!((v.re - 15.0 * PI / 4.0).abs() < 1e-10);
        assert!((v.re - 11.780_972).abs() < 1e-5);
    }

    #[test]
    fn impossible_tolerance_is_reported() {
        let r = quad_line(|x| Complex64::new(1.0 / (1.0 + x.powi(4)), 0.0), 1e-300);
        assert!(matches!(r, Err(Error::ToleranceNotReached { .. })));
    }

    #[test]
    fn sphere_monte_carlo() {
        let d = 5;
        let omega4 = 8.0 * PI * PI / 3.0;
        let total = quad_sphere(&TangMonomial::one(d), d, 20_000, 1);
        assert!((total.value - omega4).abs() < 1e-9);
        assert!((total.value - 26.3189).abs() < 1e-3);
        let odd = quad_sphere(&TangMonomial::coordinate(d, 1), d, 20_000, 2);
        assert!(odd.value.abs() < 3.0 * odd.sigma);
        let sq = quad_sphere(&TangMonomial::new(vec![2, 0, 0, 0, 0]), d, 20_000, 3);
        assert!((sq.value - omega4 / 5.0).abs() < 3.0 * sq.sigma);
        assert!((omega4 / 5.0 - 5.2638).abs() < 1e-4);
    }

    #[test]
    fn seeding_is_deterministic() {
        let m = TangMonomial::new(vec![2, 2, 0]);
        assert_eq!(quad_sphere(&m, 3, 500, 9), quad_sphere(&m, 3, 500, 9));
    }
}
