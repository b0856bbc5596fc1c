//! Rational functions of the normal covariable `xi` whose only poles are at
//! `+i` and `-i`, kept in partial-fraction form
//!
//! ```text
//!   f(xi) = sum_k p_k xi^k + sum_m u_m / (xi - i)^m + sum_m l_m / (xi + i)^m
//! ```
//!
//! In this form the Cauchy projections are coefficient selections and the
//! real-line integral is `2 pi i u_1`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Scalar};

/// One of the two admissible poles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pole {
    /// `xi = +i`, retained by the projection onto the `+` side.
    Upper,
    /// `xi = -i`.
    Lower,
}

impl Pole {
    pub fn point(self) -> GaussianRational {
        match self {
            Pole::Upper => GaussianRational::i(),
            Pole::Lower => -&GaussianRational::i(),
        }
    }

    pub fn other(self) -> Pole {
        match self {
            Pole::Upper => Pole::Lower,
            Pole::Lower => Pole::Upper,
        }
    }
}

// ---- dense polynomials in xi over Scalar, ascending coefficients ----

pub(crate) type Poly = Vec<Scalar>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

fn padd(a: &[Scalar], b: &[Scalar]) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|k| match (a.get(k), b.get(k)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            })
            .collect(),
    )
}

fn pmul(a: &[Scalar], b: &[Scalar]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(out)
}

fn pscale(a: &[Scalar], s: &Scalar) -> Poly {
    trim(a.iter().map(|x| x * s).collect())
}

/// `(xi - point)^e`.
fn linear_power(point: &GaussianRational, e: u32) -> Poly {
    let factor = vec![Scalar::from_gauss(-point), Scalar::one()];
    (0..e).fold(vec![Scalar::one()], |acc, _| pmul(&acc, &factor))
}

/// `(xi - i)^a (xi + i)^b`.
pub(crate) fn pole_denominator(a: u32, b: u32) -> Poly {
    pmul(
        &linear_power(&Pole::Upper.point(), a),
        &linear_power(&Pole::Lower.point(), b),
    )
}

/// Division by a monic polynomial.
fn divrem_monic(num: &[Scalar], den: &[Scalar]) -> (Poly, Poly) {
    let d = den.len() - 1;
    let mut rem: Poly = num.to_vec();
    if rem.len() <= d {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![Scalar::zero(); rem.len() - d];
    for k in (0..quot.len()).rev() {
        let lead = rem[k + d].clone();
        if lead.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] = &rem[k + j] - &(&lead * dj);
        }
        quot[k] = lead;
    }
    rem.truncate(d);
    (trim(quot), trim(rem))
}

/// Coefficients of `p(at + t)` in powers of `t`.
fn taylor_shift(p: &[Scalar], at: &GaussianRational) -> Poly {
    // Horner in the shifted variable.
    let shift = vec![Scalar::from_gauss(at.clone()), Scalar::one()];
    let mut acc: Poly = Vec::new();
    for c in p.iter().rev() {
        acc = padd(&pmul(&acc, &shift), std::slice::from_ref(c));
    }
    acc
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, j| acc * (n - j) / (j + 1))
}

/// Principal part at `own` of `rem / ((xi - own)^a (xi - other)^b)`,
/// indexed by pole order (entry `m-1` is the coefficient of order `m`).
fn principal_part(rem: &[Scalar], own: Pole, a: u32, b: u32) -> Vec<Scalar> {
    if a == 0 {
        return Vec::new();
    }
    let shifted = taylor_shift(rem, &own.point());
    // (t + w)^(-b) with w = own - other.
    let w = &own.point() - &own.other().point();
    let w_inv = w.inv().expect("poles are distinct");
    let series: Vec<GaussianRational> = (0..a)
        .map(|m| {
            // (-1)^m C(b+m-1, m) w^(-b-m)
            if b == 0 {
                return if m == 0 {
                    GaussianRational::one()
                } else {
                    GaussianRational::zero()
                };
            }
            let mag = binomial(u64::from(b + m - 1), u64::from(m)) as i64;
            let sign = if m % 2 == 1 { -1 } else { 1 };
            &GaussianRational::from_integer(sign * mag) * &w_inv.pow(b + m)
        })
        .collect();
    let mut orders = vec![Scalar::zero(); a as usize];
    for m in 0..a as usize {
        let mut c = Scalar::zero();
        for p in 0..=m {
            if let Some(r) = shifted.get(p) {
                c += &r.scale(&series[m - p]);
            }
        }
        // t^(m - a)  ->  order a - m
        orders[a as usize - m - 1] = c;
    }
    trim(orders)
}

/// Canonical partial-fraction form. Equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalXi {
    poly: Poly,
    upper: Vec<Scalar>,
    lower: Vec<Scalar>,
}

impl RationalXi {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self {
            poly: trim(vec![c]),
            ..Self::default()
        }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn xi() -> Self {
        Self::polynomial(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn polynomial(coeffs: Vec<Scalar>) -> Self {
        Self {
            poly: trim(coeffs),
            ..Self::default()
        }
    }

    /// `c / (xi - pole)^order`.
    pub fn pole_term(pole: Pole, order: u32, c: Scalar) -> Self {
        assert!(order >= 1);
        let mut v = vec![Scalar::zero(); order as usize];
        v[order as usize - 1] = c;
        let mut out = Self::default();
        match pole {
            Pole::Upper => out.upper = trim(v),
            Pole::Lower => out.lower = trim(v),
        }
        out
    }

    /// `num(xi) / ((xi - i)^a (xi + i)^b)` in canonical form.
    pub fn from_fraction(num: &[Scalar], a: u32, b: u32) -> Self {
        let num = trim(num.to_vec());
        let den = pole_denominator(a, b);
        let (quot, rem) = divrem_monic(&num, &den);
        Self {
            poly: quot,
            upper: principal_part(&rem, Pole::Upper, a, b),
            lower: principal_part(&rem, Pole::Lower, b, a),
        }
    }

    /// `c / (1 + xi^2)^e`.
    pub fn inverse_norm_power(c: Scalar, e: u32) -> Self {
        Self::from_fraction(&[c], e, e)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty() && self.upper.is_empty() && self.lower.is_empty()
    }

    pub fn poly(&self) -> &[Scalar] {
        &self.poly
    }

    /// Coefficients by order at `pole`; entry `m-1` multiplies `(xi - pole)^-m`.
    pub fn pole_terms(&self, pole: Pole) -> &[Scalar] {
        match pole {
            Pole::Upper => &self.upper,
            Pole::Lower => &self.lower,
        }
    }

    /// Numerator over `(xi - i)^a (xi + i)^b` with `a`, `b` the highest pole
    /// orders present.
    pub fn to_fraction(&self) -> (Vec<Scalar>, u32, u32) {
        let a = self.upper.len() as u32;
        let b = self.lower.len() as u32;
        let mut num = pmul(&self.poly, &pole_denominator(a, b));
        for (m, c) in self.upper.iter().enumerate() {
            let m = m as u32 + 1;
            num = padd(&num, &pscale(&pole_denominator(a - m, b), c));
        }
        for (m, c) in self.lower.iter().enumerate() {
            let m = m as u32 + 1;
            num = padd(&num, &pscale(&pole_denominator(a, b - m), c));
        }
        (num, a, b)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            poly: padd(&self.poly, &rhs.poly),
            upper: padd(&self.upper, &rhs.upper),
            lower: padd(&self.lower, &rhs.lower),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::integer(-1))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self {
            poly: pscale(&self.poly, s),
            upper: pscale(&self.upper, s),
            lower: pscale(&self.lower, s),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let (na, aa, ba) = self.to_fraction();
        let (nb, ab, bb) = rhs.to_fraction();
        Self::from_fraction(&pmul(&na, &nb), aa + ab, ba + bb)
    }

    /// `d/dxi`.
    pub fn dxi(&self) -> Self {
        let poly = trim(
            self.poly
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::integer(k as i64))
                .collect(),
        );
        let raise = |terms: &[Scalar]| -> Poly {
            let mut out = vec![Scalar::zero(); terms.len() + 1];
            for (m, c) in terms.iter().enumerate() {
                out[m + 1] = c * &Scalar::integer(-(m as i64 + 1));
            }
            trim(out)
        };
        Self {
            poly,
            upper: raise(&self.upper),
            lower: raise(&self.lower),
        }
    }

    pub fn dxi_n(&self, times: u32) -> Self {
        (0..times).fold(self.clone(), |f, _| f.dxi())
    }

    /// Keeps only the pole terms at `pole`. Defined for decaying functions.
    pub fn project(&self, pole: Pole) -> Result<Self> {
        if !self.poly.is_empty() {
            return Err(Error::NonDecaying(
                Self::polynomial(self.poly.clone()).to_string(),
            ));
        }
        Ok(match pole {
            Pole::Upper => Self {
                upper: self.upper.clone(),
                ..Self::default()
            },
            Pole::Lower => Self {
                lower: self.lower.clone(),
                ..Self::default()
            },
        })
    }

    /// Cauchy projection `pi^+`: the part holomorphic in the lower half-plane.
    pub fn pi_plus(&self) -> Result<Self> {
        self.project(Pole::Upper)
    }

    pub fn pi_minus(&self) -> Result<Self> {
        self.project(Pole::Lower)
    }

    /// `O(xi^-2)` at infinity.
    pub fn decays_quadratically(&self) -> bool {
        let u1 = self.upper.first().cloned().unwrap_or_default();
        let l1 = self.lower.first().cloned().unwrap_or_default();
        self.poly.is_empty() && (&u1 + &l1).is_zero()
    }

    /// `int_{-inf}^{inf} f(xi) dxi = 2 pi i * (order-1 coefficient at +i)`.
    pub fn integrate_line(&self) -> Result<Scalar> {
        if !self.decays_quadratically() {
            return Err(Error::Divergent(self.to_string()));
        }
        let u1 = self.upper.first().cloned().unwrap_or_default();
        Ok(
            &(&Scalar::from_gauss(&GaussianRational::from_integer(2) * &GaussianRational::i())
                * &Scalar::pi())
                * &u1,
        )
    }

    /// Point value with `h1` bound to `h1`.
    pub fn eval(&self, xi: f64, h1: f64) -> Complex64 {
        let z = Complex64::new(xi, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.poly.iter().rev() {
            acc = acc * z + c.to_complex(h1);
        }
        for (pole, terms) in [(Pole::Upper, &self.upper), (Pole::Lower, &self.lower)] {
            let inv = (z - pole.point().to_complex()).inv();
            let mut p = inv;
            for c in terms {
                acc += c.to_complex(h1) * p;
                p *= inv;
            }
        }
        acc
    }

    /// Applies `f` to every coefficient (used for `h1` substitution).
    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Self {
            poly: trim(self.poly.iter().map(&f).collect()),
            upper: trim(self.upper.iter().map(&f).collect()),
            lower: trim(self.lower.iter().map(&f).collect()),
        }
    }
}

impl fmt::Display for RationalXi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("[{c}]"),
                1 => format!("[{c}]*xi"),
                _ => format!("[{c}]*xi^{k}"),
            });
        }
        for (pole, sign, terms) in [
            (Pole::Upper, '-', &self.upper),
            (Pole::Lower, '+', &self.lower),
        ] {
            let _ = pole;
            for (m, c) in terms.iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let m = m + 1;
                if m == 1 {
                    parts.push(format!("[{c}]/(xi{sign}i)"));
                } else {
                    parts.push(format!("[{c}]/(xi{sign}i)^{m}"));
                }
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}
