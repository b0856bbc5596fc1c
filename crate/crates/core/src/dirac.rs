//! Symbols of `D^-2` for the collar metric `g = g_boundary / h(x_n) + dx_n^2`
//! with `h(0) = 1`, evaluated at a boundary point `x0` in boundary normal
//! coordinates, and the extrinsic-curvature data of the boundary.
//!
//! At `x0`: `g^{ij} = delta_ij`, tangential derivatives of the metric vanish
//! and `d/dx_n g^{ab} = h1 delta_ab` for tangential `a, b`.

use crate::clifford::CliffordElement;
use crate::error::{Error, Result};
use crate::rational_xi::RationalXi;
use crate::scalar::Scalar;
use crate::symbol::{BoundarySymbol, TangMonomial};

/// Dimension and first-order boundary data `h1 = h'(0)` of the collar metric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricJet {
    n: usize,
    h1: Scalar,
}

impl MetricJet {
    /// Formal `h1`.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_h1(n, Scalar::h1())
    }

    pub fn with_h1(n: usize, h1: Scalar) -> Result<Self> {
        if n < 2 {
            return Err(Error::UnsupportedDimension(n));
        }
        Ok(Self { n, h1 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h1(&self) -> &Scalar {
        &self.h1
    }

    /// Dimensions outside {5, 6} use the general-`n` normal-coordinate data.
    pub fn is_extrapolated(&self) -> bool {
        !matches!(self.n, 5 | 6)
    }

    /// `d/dx_n g^{ab}(x0)` for tangential `a, b` (diagonal value).
    pub fn inverse_metric_normal_derivative(&self) -> Scalar {
        self.h1.clone()
    }

    /// `Gamma^n_{ab}(x0) = -1/2 g^{nn} d/dx_n g_{ab}` (diagonal value); with
    /// `g_ab = delta_ab / h` this is `h1 / 2`.
    pub fn normal_christoffel(&self) -> Scalar {
        let dg_lower = -&self.inverse_metric_normal_derivative();
        &Scalar::ratio(-1, 2) * &dg_lower
    }

    pub fn connection(&self) -> Result<ConnectionData> {
        ConnectionData::new(self)
    }
}

/// Contracted Christoffel symbols and spin-connection terms at `x0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionData {
    /// `Gamma^n(x0) = g^{ij} Gamma^n_{ij}`; `Gamma^k(x0) = 0` for `k < n`.
    pub gamma_n: Scalar,
    /// `delta^k(x0)` for `k = 1..n-1`; `delta^n(x0) = 0`.
    pub delta: Vec<CliffordElement>,
}

impl ConnectionData {
    pub fn new(m: &MetricJet) -> Result<Self> {
        let n = m.n();
        let gamma_n = &Scalar::integer(n as i64 - 1) * &m.normal_christoffel();
        let quarter_h1 = &Scalar::ratio(1, 4) * m.h1();
        let delta = (1..n)
            .map(|k| Ok(CliffordElement::product_of(n, &[k, n])?.scale(&quarter_h1)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { gamma_n, delta })
    }
}

fn norm_power(c: Scalar, e: u32) -> RationalXi {
    RationalXi::inverse_norm_power(c, e)
}

/// `xi_n * c / (1 + xi_n^2)^e`.
fn xi_over_norm_power(c: Scalar, e: u32) -> RationalXi {
    RationalXi::from_fraction(&[Scalar::zero(), c], e, e)
}

/// `sigma_{-2}(D^-2) = |xi|^-2`; at `|xi'| = 1` this is `1/(1+xi_n^2)` with
/// normal derivative `-h1/(1+xi_n^2)^2`.
pub fn build_sigma_minus2(m: &MetricJet) -> Result<BoundarySymbol> {
    let n = m.n();
    let id = CliffordElement::identity(n)?;
    let one = TangMonomial::one(n - 1);
    // d/dx_n |xi|^2 = d/dx_n g^{ab} xi_a xi_b = h1 |xi'|^2
    let jet1 = norm_power(-&m.inverse_metric_normal_derivative(), 2);
    BoundarySymbol::from_parts(
        n,
        vec![(one.clone(), id.clone(), norm_power(Scalar::one(), 1))],
        Some(vec![(one, id, jet1)]),
        "",
    )
}

/// `sigma_{-3}(D^-2) = -i |xi|^-4 xi_k (Gamma^k - 2 delta^k)
///                     - 2i |xi|^-6 xi^j xi_a xi_b d_j g^{ab}` at `x0`.
/// Its normal derivative is not part of the model.
pub fn build_sigma_minus3(m: &MetricJet) -> Result<BoundarySymbol> {
    let n = m.n();
    let d = n - 1;
    let conn = m.connection()?;
    let id = CliffordElement::identity(n)?;
    let minus_i = -Scalar::i();
    let mut parts = Vec::new();

    // k < n: Gamma^k = 0, so only -2 delta^k survives.
    for (k, delta_k) in conn.delta.iter().enumerate() {
        parts.push((
            TangMonomial::coordinate(d, k + 1),
            delta_k.scale(&Scalar::integer(-2)),
            norm_power(minus_i.clone(), 2),
        ));
    }
    // k = n: xi_n Gamma^n.
    parts.push((
        TangMonomial::one(d),
        id.clone(),
        xi_over_norm_power(&minus_i * &conn.gamma_n, 2),
    ));
    // j = n, a = b tangential: xi_n |xi'|^2 h1 with |xi'| = 1.
    let metric_term =
        &Scalar::integer(-2) * &(&Scalar::i() * &m.inverse_metric_normal_derivative());
    parts.push((TangMonomial::one(d), id, xi_over_norm_power(metric_term, 3)));

    BoundarySymbol::from_parts(n, parts, None, "sigma_-3(D^-2)")
}

/// Trace of the second fundamental form at `x0`:
/// `K = sum_{a<n} K_aa = -sum_{a<n} Gamma^n_aa`.
pub fn second_fundamental_form_trace(m: &MetricJet) -> Scalar {
    -&(&Scalar::integer(m.n() as i64 - 1) * &m.normal_christoffel())
}

/// Density of the boundary gravitational action, `2 K(x0)`.
pub fn gravitational_boundary_density(m: &MetricJet) -> Scalar {
    &Scalar::integer(2) * &second_fundamental_form_trace(m)
}
