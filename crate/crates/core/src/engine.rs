//! The boundary term machine: enumerates the summands of
//!
//! ```text
//! Phi = sum (-i)^{|a|+j+k+1} / (a! (j+k+1)!)
//!       int_{|xi'|=1} int_R tr[ d^j_{x_n} d^a_{xi'} d^k_{xi_n} pi^+ sigma_r
//!                              x d^a_{x'} d^{j+1}_{xi_n} d^k_{x_n} sigma_l ]
//! ```
//!
//! over `r - k - |a| + l - j - 1 = -n`, `r <= -p1`, `l <= -p2`, evaluates
//! each one exactly and assembles the per-point boundary density.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dirac::{
    build_sigma_minus2, build_sigma_minus3, gravitational_boundary_density, MetricJet,
};
use crate::error::{Error, Result};
use crate::oracle::{quad_rational, quad_sphere};
use crate::rational_xi::{Pole, RationalXi};
use crate::scalar::{GaussianRational, Ratio, Scalar};
use crate::symbol::{minus_i_power, sphere_integrate, sphere_reduce, BoundarySymbol, TangMonomial};

/// Lowest symbol order of `D^-2` that the model provides.
pub const LOWEST_MODELED_ORDER: i32 = -3;

/// One summand of the boundary term. `alpha` is the total order `|a|` of the
/// tangential multi-index; all multi-indices of the same order behave alike
/// at the base point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TermIndex {
    pub r: i32,
    pub l: i32,
    pub k: u32,
    pub j: u32,
    pub alpha: u32,
}

impl TermIndex {
    pub fn new(r: i32, l: i32, k: u32, j: u32, alpha: u32) -> Self {
        Self { r, l, k, j, alpha }
    }

    pub fn satisfies(&self, n: usize) -> bool {
        self.r - self.k as i32 - self.alpha as i32 + self.l - self.j as i32 - 1 == -(n as i32)
    }

    /// `(-i)^{|a|+j+k+1} / (a! (j+k+1)!)`, with `a! = 1` for `|a| <= 1`.
    pub fn coefficient(&self) -> Scalar {
        let e = self.alpha + self.j + self.k + 1;
        let denom = factorial(self.j + self.k + 1) * factorial(self.alpha);
        &minus_i_power(e) * &Scalar::ratio(1, denom)
    }

    pub fn label(&self) -> String {
        let s = self.alpha + self.j + self.k;
        match (self.r, self.l, s) {
            (-2, -2, 0) => "a".to_string(),
            (-2, -2, 1) if self.alpha == 1 => "a.I".to_string(),
            (-2, -2, 1) if self.j == 1 => "a.II".to_string(),
            (-2, -2, 1) => "a.III".to_string(),
            (-2, -3, 0) => "b".to_string(),
            (-3, -2, 0) => "c".to_string(),
            _ => format!(
                "r{}.l{}.k{}.j{}.a{}",
                self.r, self.l, self.k, self.j, self.alpha
            ),
        }
    }
}

fn factorial(m: u32) -> i64 {
    (1..=m as i64).product()
}

/// All summands for `(n, p1, p2)` in a fixed order: `r` and `l` descending
/// (least negative first), then `|a|`, `j`, `k` descending.
pub fn enumerate_terms(n: usize, p1: u32, p2: u32, max_jet: u32) -> Result<Vec<TermIndex>> {
    for p in [p1, p2] {
        if p != 2 {
            return Err(Error::UnsupportedPower(p));
        }
    }
    if n < 2 {
        return Err(Error::UnsupportedDimension(n));
    }
    let n = n as i32;
    let (r_max, l_max) = (-(p1 as i32), -(p2 as i32));
    // s = |a| + j + k = r + l + n - 1 >= 0
    let mut pairs = Vec::new();
    let mut r = r_max;
    while r + l_max + n > 0 {
        let mut l = l_max;
        while r + l + n > 0 {
            pairs.push((r, l));
            l -= 1;
        }
        r -= 1;
    }
    if let Some(lowest) = pairs.iter().map(|&(r, l)| r.min(l)).min() {
        if lowest < LOWEST_MODELED_ORDER {
            return Err(Error::SymbolNotModeled(lowest));
        }
    }
    let mut out = Vec::new();
    for (r, l) in pairs {
        let s = (r + l + n - 1) as u32;
        for alpha in (0..=s).rev() {
            for j in (0..=s - alpha).rev() {
                let k = s - alpha - j;
                if alpha == 0 && (j > max_jet || k > max_jet) {
                    return Err(Error::JetOrderExceeded { max: max_jet });
                }
                out.push(TermIndex::new(r, l, k, j, alpha));
            }
        }
    }
    Ok(out)
}

/// One evaluated summand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub label: String,
    pub term: TermIndex,
    pub density: Scalar,
    pub audit: Vec<String>,
}

/// The pieces of a non-vanishing summand before integration.
#[derive(Clone, Debug)]
pub struct TermIntegrand {
    pub coefficient: Scalar,
    pub left: BoundarySymbol,
    pub right: BoundarySymbol,
    /// `tr[left x right]` integrated over `|xi'| = 1`, still a function of `xi_n`.
    pub reduced: RationalXi,
    /// The traced product before the sphere integration, by monomial.
    pub monomials: Vec<TangMonomial>,
}

/// One row of the numeric audit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericCase {
    pub label: String,
    pub exact: [f64; 2],
    pub quadrature: [f64; 2],
    pub abs_error: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericSphere {
    pub monomial: String,
    pub dim: usize,
    pub exact: f64,
    pub estimate: f64,
    pub sigma: f64,
    pub pass: bool,
}

/// Floating-point cross-check of a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericAudit {
    pub h1: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub cases: Vec<NumericCase>,
    pub sphere: Vec<NumericSphere>,
}

/// A named comparison against an expected exact value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

/// Everything `compute` reports for one `(n, p1, p2)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeReport {
    pub dim: usize,
    pub p1: u32,
    pub p2: u32,
    pub h1: Scalar,
    pub projection: String,
    pub extrapolated: bool,
    pub warnings: Vec<String>,
    pub cases: Vec<CaseResult>,
    pub boundary_density: Scalar,
    pub boundary_total: String,
    pub interior_note: String,
    pub checks: Vec<Check>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericAudit>,
}

/// The three traced integrals in the case-c rearrangement.
#[derive(Clone, Debug, PartialEq)]
pub struct Rearrangement {
    /// `int int tr[pi^+ sigma_-3 x d_xi sigma_-2]`
    pub direct: Scalar,
    /// `int int tr[d_xi sigma_-2 x sigma_-3]`
    pub unprojected: Scalar,
    /// `int int tr[pi^+ sigma_-2 x d_xi sigma_-3]`
    pub swapped: Scalar,
}

impl Rearrangement {
    pub fn holds(&self) -> bool {
        self.direct == &self.unprojected + &self.swapped
    }
}

/// One proportionality statement between a residue density and the
/// boundary gravitational density.
#[derive(Clone, Debug)]
pub struct Proportionality {
    pub name: String,
    pub residue: Scalar,
    pub gravity: Scalar,
    /// `residue / gravity` as computed.
    pub computed: Ratio,
    /// The stated constant, oriented the same way.
    pub stated: Ratio,
    /// Exact cross-multiplied comparison of `computed` and `stated`.
    pub pass: bool,
}

/// Evaluates summands for the collar metric at one boundary point.
#[derive(Clone, Debug)]
pub struct Engine {
    h1: Scalar,
    projection: Pole,
    max_jet: u32,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    /// Formal `h1`, `pi^+` keeping the poles at `+i`, first-order jets.
    pub fn new() -> Self {
        Self {
            h1: Scalar::h1(),
            projection: Pole::Upper,
            max_jet: 1,
        }
    }

    pub fn with_h1(mut self, h1: Scalar) -> Self {
        self.h1 = h1;
        self
    }

    /// Which pole the projection keeps. `Pole::Lower` exists as a negative
    /// control.
    pub fn with_projection(mut self, pole: Pole) -> Self {
        self.projection = pole;
        self
    }

    pub fn h1(&self) -> &Scalar {
        &self.h1
    }

    pub fn projection(&self) -> Pole {
        self.projection
    }

    pub fn max_jet(&self) -> u32 {
        self.max_jet
    }

    pub fn metric(&self, n: usize) -> Result<MetricJet> {
        MetricJet::with_h1(n, self.h1.clone())
    }

    pub fn symbol(&self, m: &MetricJet, order: i32) -> Result<BoundarySymbol> {
        match order {
            -2 => build_sigma_minus2(m),
            -3 => build_sigma_minus3(m),
            o => Err(Error::SymbolNotModeled(o)),
        }
    }

    pub fn enumerate(&self, n: usize, p1: u32, p2: u32) -> Result<Vec<TermIndex>> {
        enumerate_terms(n, p1, p2, self.max_jet)
    }

    /// `d^j_{x_n} d^k_{xi_n} pi^+ sigma_r`.
    pub fn left_factor(&self, m: &MetricJet, t: &TermIndex) -> Result<BoundarySymbol> {
        let mut s = self.symbol(m, t.r)?.project(self.projection)?;
        for _ in 0..t.k {
            s = s.dxi_n();
        }
        for _ in 0..t.j {
            s = s.dx_n()?;
        }
        Ok(s)
    }

    /// `d^{j+1}_{xi_n} d^k_{x_n} sigma_l`.
    pub fn right_factor(&self, m: &MetricJet, t: &TermIndex) -> Result<BoundarySymbol> {
        let mut s = self.symbol(m, t.l)?;
        for _ in 0..t.k {
            s = s.dx_n()?;
        }
        for _ in 0..=t.j {
            s = s.dxi_n();
        }
        Ok(s)
    }

    /// The integrand of a summand, or `None` when `|a| >= 1`.
    pub fn case_integrand(&self, m: &MetricJet, t: &TermIndex) -> Result<Option<TermIntegrand>> {
        if t.alpha > 0 {
            return Ok(None);
        }
        let left = self.left_factor(m, t)?;
        let right = self.right_factor(m, t)?;
        let traced = left.mul(&right)?.trace();
        let reduced = sphere_reduce(&traced, m.n() - 1);
        Ok(Some(TermIntegrand {
            coefficient: t.coefficient(),
            left,
            right,
            reduced,
            monomials: traced.keys().cloned().collect(),
        }))
    }

    pub fn evaluate_term(&self, m: &MetricJet, t: &TermIndex) -> Result<CaseResult> {
        let label = t.label();
        let Some(parts) = self.case_integrand(m, t)? else {
            return Ok(CaseResult {
                label,
                term: *t,
                density: Scalar::zero(),
                audit: vec![
                    "d_x' vanishes in normal coordinates at x0, so the term is 0".to_string(),
                ],
            });
        };
        let integral = parts.reduced.integrate_line()?;
        let density = &parts.coefficient * &integral;
        let audit = vec![
            format!("coefficient: {}", parts.coefficient),
            format!("left factor: {}", parts.left),
            format!("right factor: {}", parts.right),
            format!("traced and sphere-integrated: {}", parts.reduced),
            format!("xi_n integral: {integral}"),
            format!("density: {density}"),
        ];
        Ok(CaseResult {
            label,
            term: *t,
            density,
            audit,
        })
    }

    /// `int int tr[a x b]` for two symbols at `x0`.
    fn traced_integral(
        &self,
        m: &MetricJet,
        a: &BoundarySymbol,
        b: &BoundarySymbol,
    ) -> Result<Scalar> {
        sphere_reduce(&a.mul(b)?.trace(), m.n() - 1).integrate_line()
    }

    pub fn rearrangement_identity(&self, m: &MetricJet) -> Result<Rearrangement> {
        let s2 = self.symbol(m, -2)?;
        let s3 = self.symbol(m, -3)?;
        let p2 = s2.project(self.projection)?;
        let p3 = s3.project(self.projection)?;
        Ok(Rearrangement {
            direct: self.traced_integral(m, &p3, &s2.dxi_n())?,
            unprojected: self.traced_integral(m, &s2.dxi_n(), &s3)?,
            swapped: self.traced_integral(m, &p2, &s3.dxi_n())?,
        })
    }

    /// Case c as case b plus `-i int int tr[d_xi sigma_-2 x sigma_-3]`,
    /// cross-checked against the direct evaluation.
    pub fn evaluate_case_c_via_flip(&self, m: &MetricJet) -> Result<CaseResult> {
        let b_term = TermIndex::new(-2, -3, 0, 0, 0);
        let c_term = TermIndex::new(-3, -2, 0, 0, 0);
        let b = self.evaluate_term(m, &b_term)?;
        let direct = self.evaluate_term(m, &c_term)?;
        let re = self.rearrangement_identity(m)?;
        let correction = &-Scalar::i() * &re.unprojected;
        let density = &b.density + &correction;
        let audit = vec![
            format!("case b: {}", b.density),
            format!("correction -i int tr[d_xi sigma_-2 x sigma_-3]: {correction}"),
            format!(
                "rearrangement identity: {}",
                if re.holds() { "holds" } else { "fails" }
            ),
            format!("direct evaluation: {}", direct.density),
            format!(
                "agreement with direct evaluation: {}",
                if density == direct.density {
                    "yes"
                } else {
                    "no"
                }
            ),
        ];
        Ok(CaseResult {
            label: "c".to_string(),
            term: c_term,
            density,
            audit,
        })
    }

    /// The correction term `-i int int tr[d_xi sigma_-2 x sigma_-3]`.
    pub fn case_c_correction(&self, m: &MetricJet) -> Result<Scalar> {
        Ok(&-Scalar::i() * &self.rearrangement_identity(m)?.unprojected)
    }

    /// Report without anchor checks.
    pub fn compute_phi_unchecked(&self, n: usize, p1: u32, p2: u32) -> Result<VolumeReport> {
        let terms = self.enumerate(n, p1, p2)?;
        let m = self.metric(n)?;
        let cases = terms
            .iter()
            .map(|t| self.evaluate_term(&m, t))
            .collect::<Result<Vec<_>>>()?;
        let boundary_density: Scalar = cases.iter().map(|c| c.density.clone()).sum();
        let mut warnings = Vec::new();
        if m.is_extrapolated() {
            warnings.push(format!(
                "extrapolated: the boundary data at x0 for n = {n} uses the general-n normal-coordinate model"
            ));
        }
        if terms.is_empty() {
            warnings.push(format!(
                "no boundary summands for n = {n}; the boundary density is 0"
            ));
        }
        let boundary_total = if boundary_density.is_zero() {
            "0".to_string()
        } else if boundary_density.len() == 1 {
            format!("{boundary_density}*Vol_dM")
        } else {
            format!("({boundary_density})*Vol_dM")
        };
        Ok(VolumeReport {
            dim: n,
            p1,
            p2,
            h1: self.h1.clone(),
            projection: match self.projection {
                Pole::Upper => "upper".to_string(),
                Pole::Lower => "lower".to_string(),
            },
            extrapolated: m.is_extrapolated(),
            warnings,
            cases,
            boundary_density,
            boundary_total,
            interior_note: interior_note(n, p1, p2),
            checks: Vec::new(),
            seed: crate::oracle::seed_from_env(),
            numeric: None,
        })
    }

    /// Sums every summand for `(n, p1, p2)` and attaches the anchor checks
    /// that apply to this configuration.
    pub fn compute_phi(&self, n: usize, p1: u32, p2: u32) -> Result<VolumeReport> {
        let mut report = self.compute_phi_unchecked(n, p1, p2)?;
        report.checks = crate::anchors::report_checks(self, &report)?;
        Ok(report)
    }

    fn require_six(m: &MetricJet) -> Result<()> {
        if m.n() != 6 {
            return Err(Error::UnsupportedDimension(m.n()));
        }
        Ok(())
    }

    /// `-1/2 int int tr[d_{x_n} pi^+ sigma_-2 x d_xi^2 sigma_-2]` (flat boundary, n = 6).
    pub fn compute_res22(&self, m: &MetricJet) -> Result<Scalar> {
        Self::require_six(m)?;
        Ok(self
            .evaluate_term(m, &TermIndex::new(-2, -2, 0, 1, 0))?
            .density)
    }

    /// `-i int int tr[pi^+ sigma_-2 x d_xi sigma_-3]` (flat boundary, n = 6).
    pub fn compute_res23(&self, m: &MetricJet) -> Result<Scalar> {
        Self::require_six(m)?;
        Ok(self
            .evaluate_term(m, &TermIndex::new(-2, -3, 0, 0, 0))?
            .density)
    }

    /// Ratios between residue densities and the boundary gravitational
    /// density `2K`, compared with the stated constants from the anchor
    /// table. For n = 6 the ratios are `res / I`; for n = 5 it is `I / Phi`.
    pub fn gravity_proportionality(&self, n: usize) -> Result<Vec<Proportionality>> {
        let m = self.metric(n)?;
        let gravity = gravitational_boundary_density(&m);
        let table = crate::anchors::table();
        let stated = |id: &str, key: &str| -> Result<Scalar> {
            table.scalar(id, key).map(|s| s.substitute_h1(&self.h1))
        };
        let mut out = Vec::new();
        match n {
            6 => {
                for (name, residue, key) in [
                    ("res22", self.compute_res22(&m)?, "res22_coefficient"),
                    ("res23", self.compute_res23(&m)?, "res23_coefficient"),
                ] {
                    let computed = Ratio::new(residue.clone(), gravity.clone());
                    let stated = Ratio::new(stated("thm41", key)?, Scalar::one());
                    let pass = &residue * &stated.den == &stated.num * &gravity;
                    out.push(Proportionality {
                        name: name.to_string(),
                        residue,
                        gravity: gravity.clone(),
                        computed,
                        stated,
                        pass,
                    });
                }
            }
            5 => {
                let phi = self.compute_phi_unchecked(5, 2, 2)?.boundary_density;
                let computed = Ratio::new(gravity.clone(), phi.clone());
                let stated = Ratio::new(
                    stated("thm42", "coefficient_numerator")?,
                    stated("thm42", "coefficient_denominator")?,
                );
                let pass = &gravity * &stated.den == &stated.num * &phi;
                out.push(Proportionality {
                    name: "phi5".to_string(),
                    residue: phi,
                    gravity,
                    computed,
                    stated,
                    pass,
                });
            }
            other => return Err(Error::UnsupportedDimension(other)),
        }
        Ok(out)
    }

    /// Evaluates every case of `report` in floating point (formal `h1`
    /// bound to `h1`) by quadrature and Monte Carlo, independently of the
    /// residue computation.
    pub fn numeric_audit(
        &self,
        report: &VolumeReport,
        h1: f64,
        tolerance: f64,
        samples: usize,
        seed: u64,
    ) -> Result<NumericAudit> {
        let m = self.metric(report.dim)?;
        let d = report.dim - 1;
        let mut cases = Vec::new();
        let mut monomials = BTreeSet::new();
        for case in &report.cases {
            let exact = case.density.to_complex(h1);
            let quadrature = match self.case_integrand(&m, &case.term)? {
                None => Complex64::new(0.0, 0.0),
                Some(parts) => {
                    monomials.extend(parts.monomials.iter().cloned());
                    parts.coefficient.to_complex(h1)
                        * quad_rational(&parts.reduced, h1, tolerance * 1e-3)?
                }
            };
            let abs_error = (exact - quadrature).norm();
            cases.push(NumericCase {
                label: case.label.clone(),
                exact: [exact.re, exact.im],
                quadrature: [quadrature.re, quadrature.im],
                abs_error,
                pass: abs_error <= tolerance,
            });
        }
        let sphere = monomials
            .iter()
            .enumerate()
            .map(|(i, mono)| {
                let exact = sphere_integrate(mono, d).to_complex(h1).re;
                let est = quad_sphere(mono, d, samples, seed.wrapping_add(i as u64));
                NumericSphere {
                    monomial: mono.to_string(),
                    dim: d,
                    exact,
                    estimate: est.value,
                    sigma: est.sigma,
                    pass: (est.value - exact).abs()
                        <= 3.0 * est.sigma + 1e-9 * exact.abs().max(1.0),
                }
            })
            .collect();
        Ok(NumericAudit {
            h1,
            tolerance,
            samples,
            cases,
            sphere,
        })
    }
}

/// What the report says about the interior term, which is never computed.
pub fn interior_note(n: usize, p1: u32, p2: u32) -> String {
    let p = (p1 + p2) as usize;
    if (n + p) % 2 == 1 {
        return "interior term vanishes (n - p1 - p2 is odd); the volume is the boundary integral of the density"
            .to_string();
    }
    if p == n {
        return "interior term c0*Vol_M (cited constant, not computed)".to_string();
    }
    if (n, p1, p2) == (6, 2, 2) {
        return "interior term -(5*Omega_6/3)*int_M s dvol_M (cited from the Kastler and Kalau-Walze literature, not computed)"
            .to_string();
    }
    "interior term not computed".to_string()
}

/// Numeric value of formal `h1` used by the oracle: the bound value if the
/// engine's `h1` is a constant, else 1.
pub fn numeric_h1(h1: &Scalar) -> f64 {
    h1.as_constant()
        .map(|c: GaussianRational| c.to_complex().re)
        .unwrap_or(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn six_dimensional_terms() {
        let terms = enumerate_terms(6, 2, 2, 1).unwrap();
        let labels: Vec<String> = terms.iter().map(|t| t.label()).collect();
        assert_eq!(labels, ["a.I", "a.II", "a.III", "b", "c"]);
        assert!(terms.iter().all(|t| t.satisfies(6)));
    }

    #[test]
    fn five_dimensional_terms() {
        assert_eq!(
            enumerate_terms(5, 2, 2, 1).unwrap(),
            vec![TermIndex::new(-2, -2, 0, 0, 0)]
        );
    }

    #[test]
    fn enumeration_errors() {
        assert_eq!(
            enumerate_terms(7, 2, 2, 1),
            Err(Error::SymbolNotModeled(-4))
        );
        assert_eq!(enumerate_terms(6, 1, 2, 1), Err(Error::UnsupportedPower(1)));
        assert!(enumerate_terms(4, 2, 2, 1).unwrap().is_empty());
        assert_eq!(
            enumerate_terms(6, 2, 2, 0),
            Err(Error::JetOrderExceeded { max: 0 })
        );
    }

    #[test]
    fn coefficients() {
        assert_eq!(TermIndex::new(-2, -2, 0, 1, 0).coefficient(), s("(-1/2)"));
        assert_eq!(TermIndex::new(-2, -3, 0, 0, 0).coefficient(), s("-i"));
    }

    #[test]
    fn six_dimensional_cases() {
        let e = Engine::new();
        let m = e.metric(6).unwrap();
        let d = |t| e.evaluate_term(&m, &t).unwrap().density;
        assert!(d(TermIndex::new(-2, -2, 0, 0, 1)).is_zero());
        assert_eq!(
            d(TermIndex::new(-2, -2, 0, 1, 0)),
            s("(-5/8)*pi*Omega_4*h1")
        );
        assert_eq!(d(TermIndex::new(-2, -2, 1, 0, 0)), s("(5/8)*pi*Omega_4*h1"));
        assert_eq!(
            d(TermIndex::new(-2, -3, 0, 0, 0)),
            s("(-15/8)*pi*Omega_4*h1")
        );
        assert_eq!(
            d(TermIndex::new(-3, -2, 0, 0, 0)),
            s("(15/8)*pi*Omega_4*h1")
        );
    }

    #[test]
    fn case_c_two_ways() {
        let e = Engine::new();
        let m = e.metric(6).unwrap();
        assert!(e.rearrangement_identity(&m).unwrap().holds());
        assert_eq!(e.case_c_correction(&m).unwrap(), s("(15/4)*pi*Omega_4*h1"));
        let c = e.evaluate_case_c_via_flip(&m).unwrap();
        assert_eq!(c.density, s("(15/8)*pi*Omega_4*h1"));
    }

    #[test]
    fn phi_totals() {
        let e = Engine::new();
        let six = e.compute_phi_unchecked(6, 2, 2).unwrap();
        assert!(six.boundary_density.is_zero());
        assert_eq!(six.boundary_total, "0");
        assert!(!six.extrapolated);
        let five = e.compute_phi_unchecked(5, 2, 2).unwrap();
        assert_eq!(five.boundary_density, s("(1/2)*pi*Omega_3"));
        assert_eq!(five.boundary_total, "(1/2)*pi*Omega_3*Vol_dM");
        assert!(five.interior_note.contains("vanishes"));
        let four = e.compute_phi_unchecked(4, 2, 2).unwrap();
        assert!(four.boundary_density.is_zero() && four.extrapolated);
        assert_eq!(
            four.interior_note,
            "interior term c0*Vol_M (cited constant, not computed)"
        );
    }

    #[test]
    fn residues_with_flat_collar() {
        let e = Engine::new().with_h1(Scalar::zero());
        let m = e.metric(6).unwrap();
        assert!(e.compute_res22(&m).unwrap().is_zero());
        assert!(e.compute_res23(&m).unwrap().is_zero());
        assert!(e.compute_res22(&e.metric(5).unwrap()).is_err());
    }

    #[test]
    fn numeric_agreement() {
        let e = Engine::new();
        let report = e.compute_phi_unchecked(6, 2, 2).unwrap();
        let audit = e.numeric_audit(&report, 1.0, 1e-8, 20_000, 7).unwrap();
        assert!(audit.cases.iter().all(|c| c.pass), "{audit:?}");
        assert!(audit.sphere.iter().all(|c| c.pass), "{audit:?}");
    }
}
