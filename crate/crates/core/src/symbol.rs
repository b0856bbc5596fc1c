//! Clifford-valued boundary symbols at a fixed boundary point `x0`.
//!
//! A symbol is a finite sum of `xi'^alpha * blade * f(xi_n)` already
//! restricted to `|xi'| = 1`, together with its first normal derivative
//! (the order-1 jet in `x_n`). Tangential `x'`-derivatives vanish at `x0`.

use std::collections::BTreeMap;
use std::fmt;

use crate::clifford::{spinor_trace_of_identity, Blade, CliffordElement};
use crate::error::{Error, Result};
use crate::rational_xi::{Pole, RationalXi};
use crate::scalar::{GaussianRational, Scalar, Symbol};

/// Monomial `xi_1^a1 ... xi_{n-1}^a_{n-1}` in the tangential covariables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TangMonomial(Vec<u32>);

impl TangMonomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(d: usize) -> Self {
        Self(vec![0; d])
    }

    /// `xi_k`, 1-based.
    pub fn coordinate(d: usize, k: usize) -> Self {
        let mut e = vec![0; d];
        e[k - 1] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for TangMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(k, e)| {
                if *e == 1 {
                    format!("xi{}", k + 1)
                } else {
                    format!("xi{}^{}", k + 1, e)
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

fn odd_double_factorial_below(a: u32) -> i64 {
    // (a-1)!! for even a
    (1..a).step_by(2).map(i64::from).product()
}

/// `int_{|xi'|=1} xi'^alpha dsigma` over the unit sphere in `R^d`, an exact
/// multiple of `Omega_{d-1}`; zero when any exponent is odd.
pub fn sphere_integrate(m: &TangMonomial, d: usize) -> Scalar {
    assert!(d >= 1, "sphere dimension");
    if m.exponents().iter().any(|e| e % 2 == 1) {
        return Scalar::zero();
    }
    let num: i64 = m
        .exponents()
        .iter()
        .map(|&a| odd_double_factorial_below(a))
        .product();
    let half = m.degree() / 2;
    let den: i64 = (1..=half).map(|k| d as i64 + 2 * k as i64 - 2).product();
    &Scalar::ratio(num, den) * &Scalar::symbol(Symbol::Omega(d as u32 - 1))
}

pub type SymbolTerms = BTreeMap<(TangMonomial, Blade), RationalXi>;

/// First normal derivative slot of a [`BoundarySymbol`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalJet {
    Known(SymbolTerms),
    /// Already consumed by a previous `d/dx_n`.
    Exhausted,
    /// The model supplies no normal derivative for this symbol.
    Unavailable(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundarySymbol {
    dim: usize,
    jet0: SymbolTerms,
    jet1: NormalJet,
}

fn insert_add(terms: &mut SymbolTerms, key: (TangMonomial, Blade), f: RationalXi) {
    let sum = match terms.remove(&key) {
        Some(existing) => existing.add(&f),
        None => f,
    };
    if !sum.is_zero() {
        terms.insert(key, sum);
    }
}

fn terms_mul(a: &SymbolTerms, b: &SymbolTerms) -> SymbolTerms {
    let mut out = SymbolTerms::new();
    for ((ma, ba), fa) in a {
        for ((mb, bb), fb) in b {
            let (neg, blade) = ba.product(*bb);
            let prod = fa.mul(fb);
            insert_add(
                &mut out,
                (ma.mul(mb), blade),
                if neg { prod.neg() } else { prod },
            );
        }
    }
    out
}

fn terms_add(a: &SymbolTerms, b: &SymbolTerms) -> SymbolTerms {
    let mut out = a.clone();
    for (k, f) in b {
        insert_add(&mut out, k.clone(), f.clone());
    }
    out
}

fn terms_map(
    t: &SymbolTerms,
    f: impl Fn(&RationalXi) -> Result<RationalXi>,
) -> Result<SymbolTerms> {
    let mut out = SymbolTerms::new();
    for (k, v) in t {
        let w = f(v)?;
        if !w.is_zero() {
            out.insert(k.clone(), w);
        }
    }
    Ok(out)
}

impl BoundarySymbol {
    /// Builds a symbol; every entry is `(xi'^alpha, Clifford coefficient, f)`.
    pub fn from_parts(
        dim: usize,
        jet0: Vec<(TangMonomial, CliffordElement, RationalXi)>,
        jet1: Option<Vec<(TangMonomial, CliffordElement, RationalXi)>>,
        unavailable_name: &str,
    ) -> Result<Self> {
        let collect = |parts: Vec<(TangMonomial, CliffordElement, RationalXi)>| {
            let mut out = SymbolTerms::new();
            for (m, c, f) in parts {
                if c.dim() != dim {
                    return Err(Error::DimensionMismatch(dim, c.dim()));
                }
                if m.len() + 1 != dim {
                    return Err(Error::DimensionMismatch(dim, m.len() + 1));
                }
                for (blade, s) in c.terms() {
                    insert_add(&mut out, (m.clone(), *blade), f.scale(s));
                }
            }
            Ok(out)
        };
        let jet0 = collect(jet0)?;
        let jet1 = match jet1 {
            Some(parts) => NormalJet::Known(collect(parts)?),
            None => NormalJet::Unavailable(unavailable_name.to_string()),
        };
        Ok(Self { dim, jet0, jet1 })
    }

    /// The identity symbol, constant in `x_n`.
    pub fn identity(dim: usize) -> Result<Self> {
        let id = CliffordElement::identity(dim)?;
        Self::from_parts(
            dim,
            vec![(TangMonomial::one(dim - 1), id, RationalXi::one())],
            Some(Vec::new()),
            "",
        )
    }

    /// A symbol independent of `x_n` built from a single scalar function.
    pub fn scalar_function(dim: usize, f: RationalXi) -> Result<Self> {
        let id = CliffordElement::identity(dim)?;
        Self::from_parts(
            dim,
            vec![(TangMonomial::one(dim - 1), id, f)],
            Some(Vec::new()),
            "",
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn jet0(&self) -> &SymbolTerms {
        &self.jet0
    }

    pub fn jet1(&self) -> &NormalJet {
        &self.jet1
    }

    fn check_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim != rhs.dim {
            Err(Error::DimensionMismatch(self.dim, rhs.dim))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let jet1 = match (&self.jet1, &rhs.jet1) {
            (NormalJet::Known(a), NormalJet::Known(b)) => NormalJet::Known(terms_add(a, b)),
            (NormalJet::Known(_), other) => other.clone(),
            (other, _) => other.clone(),
        };
        Ok(Self {
            dim: self.dim,
            jet0: terms_add(&self.jet0, &rhs.jet0),
            jet1,
        })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let scale = |t: &SymbolTerms| terms_map(t, |f| Ok(f.scale(s))).expect("infallible");
        Self {
            dim: self.dim,
            jet0: scale(&self.jet0),
            jet1: match &self.jet1 {
                NormalJet::Known(t) => NormalJet::Known(scale(t)),
                other => other.clone(),
            },
        }
    }

    /// Product of symbols (no composition corrections): Clifford product of
    /// coefficients, Leibniz rule on the jets.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let jet1 = match (&self.jet1, &rhs.jet1) {
            (NormalJet::Known(a1), NormalJet::Known(b1)) => NormalJet::Known(terms_add(
                &terms_mul(&self.jet0, b1),
                &terms_mul(a1, &rhs.jet0),
            )),
            (NormalJet::Known(_), other) => other.clone(),
            (other, _) => other.clone(),
        };
        Ok(Self {
            dim: self.dim,
            jet0: terms_mul(&self.jet0, &rhs.jet0),
            jet1,
        })
    }

    /// `d/dxi_n`.
    pub fn dxi_n(&self) -> Self {
        let d = |t: &SymbolTerms| terms_map(t, |f| Ok(f.dxi())).expect("infallible");
        Self {
            dim: self.dim,
            jet0: d(&self.jet0),
            jet1: match &self.jet1 {
                NormalJet::Known(t) => NormalJet::Known(d(t)),
                other => other.clone(),
            },
        }
    }

    /// `d/dx_n` at `x0`: the stored jet becomes the value.
    pub fn dx_n(&self) -> Result<Self> {
        match &self.jet1 {
            NormalJet::Known(t) => Ok(Self {
                dim: self.dim,
                jet0: t.clone(),
                jet1: NormalJet::Exhausted,
            }),
            NormalJet::Exhausted => Err(Error::JetOrderExceeded { max: 1 }),
            NormalJet::Unavailable(name) => Err(Error::JetUnavailable(name.clone())),
        }
    }

    /// Keeps the pole terms at `pole` in every coefficient function.
    pub fn project(&self, pole: Pole) -> Result<Self> {
        let p = |t: &SymbolTerms| terms_map(t, |f| f.project(pole));
        Ok(Self {
            dim: self.dim,
            jet0: p(&self.jet0)?,
            jet1: match &self.jet1 {
                NormalJet::Known(t) => NormalJet::Known(p(t)?),
                other => other.clone(),
            },
        })
    }

    pub fn pi_plus(&self) -> Result<Self> {
        self.project(Pole::Upper)
    }

    /// Spinor trace of the value at `x0`, grouped by tangential monomial.
    pub fn trace(&self) -> BTreeMap<TangMonomial, RationalXi> {
        let mut out: BTreeMap<TangMonomial, RationalXi> = BTreeMap::new();
        let tr_id = spinor_trace_of_identity(self.dim, &Scalar::one());
        for ((m, blade), f) in &self.jet0 {
            if !blade.is_identity() {
                continue;
            }
            let v = f.scale(&tr_id);
            let sum = match out.remove(m) {
                Some(existing) => existing.add(&v),
                None => v,
            };
            if !sum.is_zero() {
                out.insert(m.clone(), sum);
            }
        }
        out
    }

    /// The identity-blade coefficient at `xi' = 1` for monomial-free symbols.
    pub fn scalar_part(&self) -> RationalXi {
        self.jet0
            .iter()
            .filter(|((m, b), _)| b.is_identity() && m.degree() == 0)
            .fold(RationalXi::zero(), |acc, (_, f)| acc.add(f))
    }
}

/// Integrates a traced symbol over `|xi'| = 1` (exactly, monomial by
/// monomial), leaving a function of `xi_n`.
pub fn sphere_reduce(traced: &BTreeMap<TangMonomial, RationalXi>, d: usize) -> RationalXi {
    traced.iter().fold(RationalXi::zero(), |acc, (m, f)| {
        acc.add(&f.scale(&sphere_integrate(m, d)))
    })
}

/// `int_{|xi'|=1} int_R tr[...] dxi_n dsigma(xi')`.
pub fn integrate_trace(traced: &BTreeMap<TangMonomial, RationalXi>, d: usize) -> Result<Scalar> {
    sphere_reduce(traced, d).integrate_line()
}

impl fmt::Display for BoundarySymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.jet0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .jet0
            .iter()
            .map(|((m, b), v)| format!("{m}*{b}*({v})"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `(-i)^e`.
pub fn minus_i_power(e: u32) -> Scalar {
    Scalar::from_gauss((-&GaussianRational::i()).pow(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xi_fn(num: &[i64], a: u32, b: u32) -> RationalXi {
        let num: Vec<Scalar> = num.iter().map(|&c| Scalar::integer(c)).collect();
        RationalXi::from_fraction(&num, a, b)
    }

    #[test]
    fn sphere_moments() {
        let d = 5;
        assert_eq!(sphere_integrate(&TangMonomial::one(d), d), Scalar::omega(4));
        assert!(sphere_integrate(&TangMonomial::coordinate(d, 1), d).is_zero());
        let x1sq = TangMonomial::new(vec![2, 0, 0, 0, 0]);
        assert_eq!(
            sphere_integrate(&x1sq, d),
            &Scalar::ratio(1, 5) * &Scalar::omega(4)
        );
        // <x1^4> on S^4 in R^5: 3/(5*7)
        let x1q = TangMonomial::new(vec![4, 0, 0, 0, 0]);
        assert_eq!(
            sphere_integrate(&x1q, d),
            &Scalar::ratio(3, 35) * &Scalar::omega(4)
        );
    }

    #[test]
    fn identity_is_neutral() {
        let id = BoundarySymbol::identity(6).unwrap();
        let c = CliffordElement::product_of(6, &[1, 6]).unwrap();
        let a = BoundarySymbol::from_parts(
            6,
            vec![(TangMonomial::coordinate(5, 1), c, xi_fn(&[1], 1, 1))],
            Some(vec![]),
            "",
        )
        .unwrap();
        assert_eq!(a.mul(&id).unwrap(), a);
        assert_eq!(id.mul(&a).unwrap(), a);
    }

    #[test]
    fn clifford_products_reduce() {
        let c16 = CliffordElement::product_of(6, &[1, 6]).unwrap();
        let c26 = CliffordElement::product_of(6, &[2, 6]).unwrap();
        let f = xi_fn(&[1], 1, 1);
        let a = BoundarySymbol::from_parts(
            6,
            vec![(TangMonomial::coordinate(5, 1), c16, f.clone())],
            Some(vec![]),
            "",
        )
        .unwrap();
        let b = BoundarySymbol::from_parts(
            6,
            vec![(TangMonomial::coordinate(5, 2), c26, f.clone())],
            Some(vec![]),
            "",
        )
        .unwrap();
        let ab = a.mul(&b).unwrap();
        // c1 c6 c2 c6 = -c1 c2 c6 c6 = c1 c2
        let (blade, _) = Blade::from_indices(&[1, 2]).unwrap();
        let key = (TangMonomial::new(vec![1, 1, 0, 0, 0]), blade);
        assert_eq!(ab.jet0().get(&key), Some(&f.mul(&f)));
        assert_eq!(ab.jet0().len(), 1);
    }

    #[test]
    fn jet_order_is_enforced() {
        let s = BoundarySymbol::scalar_function(5, xi_fn(&[1], 1, 1)).unwrap();
        let once = s.dx_n().unwrap();
        assert!(once.jet0().is_empty());
        assert!(matches!(
            once.dx_n(),
            Err(Error::JetOrderExceeded { max: 1 })
        ));
        let missing = BoundarySymbol::from_parts(
            5,
            vec![(
                TangMonomial::one(4),
                CliffordElement::identity(5).unwrap(),
                xi_fn(&[1], 2, 2),
            )],
            None,
            "sigma",
        )
        .unwrap();
        assert!(matches!(missing.dx_n(), Err(Error::JetUnavailable(_))));
    }

    #[test]
    fn traces() {
        let f = xi_fn(&[1], 1, 1);
        let s = BoundarySymbol::scalar_function(6, f.clone()).unwrap();
        let tr = s.trace();
        assert_eq!(
            tr.get(&TangMonomial::one(5)),
            Some(&f.scale(&Scalar::integer(8)))
        );
        let c = CliffordElement::product_of(6, &[3, 6]).unwrap();
        let b =
            BoundarySymbol::from_parts(6, vec![(TangMonomial::coordinate(5, 3), c, f)], None, "")
                .unwrap();
        assert!(b.trace().is_empty());
    }

    #[test]
    fn minus_i_powers() {
        assert_eq!(minus_i_power(0), Scalar::one());
        assert_eq!(minus_i_power(1), -Scalar::i());
        assert_eq!(minus_i_power(2), Scalar::integer(-1));
        assert_eq!(minus_i_power(3), Scalar::i());
    }
}
