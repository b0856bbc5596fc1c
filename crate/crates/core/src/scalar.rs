//! Exact value ring: Gaussian rationals times monomials in the formal
//! constants `pi`, `Omega_d` (volume of the unit d-sphere) and `h1`
//! (first normal derivative of the collar warping function at the boundary).
//!
//! The imaginary unit lives in the coefficient, so `i*i = -1` is automatic;
//! the formal constants stay opaque until [`Scalar::to_complex`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `re + im*i` with arbitrary-precision rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    /// The real rational `num/den`. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Self::new(&self.re / &norm, -(&self.im / &norm)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

/// A formal constant. Variant order is the canonical print order:
/// `pi < Omega_d < h1`, with `Omega_d` sorted by `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Pi,
    Omega(u32),
    H1,
}

impl Symbol {
    pub fn name(&self) -> String {
        match self {
            Symbol::Pi => "pi".to_string(),
            Symbol::Omega(d) => format!("Omega_{d}"),
            Symbol::H1 => "h1".to_string(),
        }
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pi" => Ok(Symbol::Pi),
            "h1" => Ok(Symbol::H1),
            _ => s
                .strip_prefix("Omega_")
                .and_then(|d| d.parse::<u32>().ok())
                .map(Symbol::Omega)
                .ok_or_else(|| Error::UnknownConstant(s.to_string())),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Volume of the unit d-sphere, `2 pi^((d+1)/2) / Gamma((d+1)/2)`.
pub fn sphere_volume(d: u32) -> f64 {
    use std::f64::consts::PI;
    // Gamma at integers and half-integers by recursion.
    let twice = d + 1; // Gamma(twice / 2)
    let mut gamma = if twice.is_multiple_of(2) {
        1.0
    } else {
        PI.sqrt()
    };
    let mut k = if twice.is_multiple_of(2) { 2 } else { 1 };
    while k < twice {
        gamma *= k as f64 / 2.0;
        k += 2;
    }
    2.0 * PI.powf(twice as f64 / 2.0) / gamma
}

/// Product of formal constants with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalMonomial(BTreeMap<Symbol, u32>);

impl FormalMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::power(s, 1)
    }

    pub fn power(s: Symbol, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(s, e);
        }
        Self(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, s: Symbol) -> u32 {
        self.0.get(&s).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Symbol, u32)> + '_ {
        self.0.iter().map(|(s, e)| (*s, *e))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (s, e) in &other.0 {
            *out.entry(*s).or_insert(0) += e;
        }
        Self(out)
    }

    /// `self / other` when every exponent of `other` is covered.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let mut out = self.0.clone();
        for (s, e) in &other.0 {
            let have = out.get(s).copied().unwrap_or(0);
            if have < *e {
                return None;
            }
            if have == *e {
                out.remove(s);
            } else {
                out.insert(*s, have - e);
            }
        }
        Some(Self(out))
    }

    /// Common factor of two monomials (minimum exponents).
    pub fn gcd(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .filter_map(|(s, e)| {
                    let m = (*e).min(other.exponent(*s));
                    (m > 0).then_some((*s, m))
                })
                .collect(),
        )
    }

    pub fn to_f64(&self, h1: f64) -> f64 {
        self.factors()
            .map(|(s, e)| {
                let base = match s {
                    Symbol::Pi => std::f64::consts::PI,
                    Symbol::Omega(d) => sphere_volume(d),
                    Symbol::H1 => h1,
                };
                base.powi(e as i32)
            })
            .product()
    }
}

impl fmt::Display for FormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, e) in self.factors() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse sum of `GaussianRational * FormalMonomial` terms. Never stores a
/// zero coefficient, so structural equality is exact equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    terms: BTreeMap<FormalMonomial, GaussianRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_gauss(GaussianRational::one())
    }

    pub fn i() -> Self {
        Self::from_gauss(GaussianRational::i())
    }

    pub fn integer(n: i64) -> Self {
        Self::from_gauss(GaussianRational::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_gauss(GaussianRational::ratio(num, den))
    }

    pub fn from_gauss(c: GaussianRational) -> Self {
        Self::term(c, FormalMonomial::one())
    }

    pub fn term(c: GaussianRational, m: FormalMonomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::term(GaussianRational::one(), FormalMonomial::symbol(s))
    }

    pub fn pi() -> Self {
        Self::symbol(Symbol::Pi)
    }

    pub fn omega(d: u32) -> Self {
        Self::symbol(Symbol::Omega(d))
    }

    pub fn h1() -> Self {
        Self::symbol(Symbol::H1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormalMonomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The pure Gaussian-rational value, if no formal constant occurs.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn as_single_term(&self) -> Option<(&FormalMonomial, &GaussianRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn insert_add(&mut self, m: &FormalMonomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(existing) => {
                let sum = &*existing + c;
                if sum.is_zero() {
                    self.terms.remove(m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replace the formal `h1` by an exact value.
    pub fn substitute_h1(&self, value: &Scalar) -> Self {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(Symbol::H1);
            let rest = m
                .checked_div(&FormalMonomial::power(Symbol::H1, e))
                .expect("exponent present");
            out += &(&Scalar::term(c.clone(), rest) * &value.pow(e));
        }
        out
    }

    /// Exact quotient by a single-term divisor whose monomial divides every
    /// term of `self`.
    pub fn div_term(&self, divisor: &Scalar) -> Option<Scalar> {
        let (dm, dc) = divisor.as_single_term()?;
        let inv = dc.inv()?;
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let q = m.checked_div(dm)?;
            out.insert_add(&q, &(c * &inv));
        }
        Some(out)
    }

    /// Double-precision value with `h1` bound to `h1`.
    pub fn to_complex(&self, h1: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_complex() * m.to_f64(h1))
            .sum()
    }
}

impl From<GaussianRational> for Scalar {
    fn from(c: GaussianRational) -> Self {
        Scalar::from_gauss(c)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.insert_add(m, c);
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_add(&ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

// ---- canonical text form ----
//
//   scalar   := "0" | term (" + " term)*
//   term     := coeff ("*" symbol ("^" int)?)*  |  ["-"] symbol ("*" symbol ...)*
//   coeff    := real | real "*i" | "i" | "-i" | "(" ratio ("+"|"-") ratio "*i)"
//   real     := int | "(" int "/" posint ")"
//   symbol   := "pi" | "Omega_" int | "h1"
//
// Unit real coefficients are dropped when symbols follow ("pi*h1", "-Omega_4").

fn fmt_real(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

fn fmt_bare(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Coefficient text; returns "" / "-" for the units +1 / -1 when symbols follow.
fn fmt_coeff(c: &GaussianRational, has_symbols: bool) -> String {
    let one = BigRational::one();
    if c.im.is_zero() {
        if has_symbols && c.re == one {
            return String::new();
        }
        if has_symbols && c.re == -one.clone() {
            return "-".to_string();
        }
        return fmt_real(&c.re);
    }
    if c.re.is_zero() {
        if c.im == one {
            return "i".to_string();
        }
        if c.im == -one {
            return "-i".to_string();
        }
        return format!("{}*i", fmt_real(&c.im));
    }
    let sign = if c.im.is_negative() { '-' } else { '+' };
    format!("({}{}{}*i)", fmt_bare(&c.re), sign, fmt_bare(&c.im.abs()))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coeff = fmt_coeff(c, !m.is_one());
            if m.is_one() {
                f.write_str(&coeff)?;
            } else if coeff.is_empty() || coeff == "-" {
                write!(f, "{coeff}{m}")?;
            } else {
                write!(f, "{coeff}*{m}")?;
            }
        }
        Ok(())
    }
}

fn parse_err(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Parses a rational literal `p`, `p/q` or `(p/q)`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(s);
    parse_ratio(inner)
}

/// Splits on `*` outside parentheses.
fn split_factors(term: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (idx, ch) in term.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&term[start..idx]);
                start = idx + 1;
            }
            _ => {}
        }
    }
    out.push(&term[start..]);
    out
}

/// Complex literal `(a+b*i)` / `(a-b*i)`.
fn parse_mixed(s: &str) -> Option<GaussianRational> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let body = inner.strip_suffix("*i")?;
    // The sign separating the parts is the last '+' or '-' not at position 0.
    let split = body
        .char_indices()
        .skip(1)
        .filter(|(_, c)| *c == '+' || *c == '-')
        .map(|(i, _)| i)
        .last()?;
    let re = parse_ratio(&body[..split])?;
    let im = parse_ratio(body[split..].trim_start_matches('+'))?;
    Some(GaussianRational::new(re, im))
}

fn parse_term(input: &str, term: &str) -> Result<Scalar> {
    let term = term.trim();
    if term.is_empty() {
        return Err(parse_err(input, "empty term"));
    }
    let mut coeff = GaussianRational::one();
    let mut mono = FormalMonomial::one();
    for (idx, raw) in split_factors(term).into_iter().enumerate() {
        let mut tok = raw.trim();
        if tok.is_empty() {
            return Err(parse_err(input, "empty factor"));
        }
        if idx == 0 {
            if let Some(rest) = tok.strip_prefix('-') {
                if rest.starts_with(|c: char| c.is_ascii_alphabetic()) {
                    coeff = -&coeff;
                    tok = rest;
                }
            }
        }
        if tok == "i" {
            coeff = &coeff * &GaussianRational::i();
        } else if let Some(r) = parse_rational(tok) {
            coeff = &coeff * &GaussianRational::new(r, BigRational::zero());
        } else if let Some(g) = parse_mixed(tok) {
            coeff = &coeff * &g;
        } else {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<u32>()
                        .map_err(|_| parse_err(input, format!("bad exponent in `{tok}`")))?,
                ),
                None => (tok, 1),
            };
            let sym: Symbol = name.parse()?;
            mono = mono.mul(&FormalMonomial::power(sym, exp));
        }
    }
    Ok(Scalar::term(coeff, mono))
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(parse_err(s, "empty input"));
        }
        let mut out = Scalar::zero();
        for term in trimmed.split(" + ") {
            out += &parse_term(s, term)?;
        }
        Ok(out)
    }
}

/// Exact quotient `num / den` of two scalars, reduced when both are single
/// terms. Compared by cross-multiplication.
#[derive(Clone, Debug)]
pub struct Ratio {
    pub num: Scalar,
    pub den: Scalar,
}

impl Ratio {
    pub fn new(num: Scalar, den: Scalar) -> Self {
        if let (Some((nm, nc)), Some((dm, dc))) = (num.as_single_term(), den.as_single_term()) {
            let g = nm.gcd(dm);
            let coeff = dc.inv().map(|inv| nc * &inv).unwrap_or_else(|| nc.clone());
            let num = Scalar::term(coeff, nm.checked_div(&g).expect("gcd divides"));
            let den = Scalar::term(
                GaussianRational::one(),
                dm.checked_div(&g).expect("gcd divides"),
            );
            return Self { num, den };
        }
        Self { num, den }
    }

    pub fn is_defined(&self) -> bool {
        !self.den.is_zero()
    }

    pub fn equals(&self, other: &Ratio) -> bool {
        self.is_defined() && other.is_defined() && &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_defined() {
            return f.write_str("undefined");
        }
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
