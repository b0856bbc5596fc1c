//! Clifford algebra on `n` orthonormal generators with [`Scalar`]
//! coefficients. Generators anticommute and square to `-1`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Product of distinct generators `c(e_i1) c(e_i2) ...` with `i1 < i2 < ...`,
/// stored as a bitmask (bit `i-1` for generator `i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Blade(u64);

impl Blade {
    pub const IDENTITY: Blade = Blade(0);

    /// Blade from generator indices (1-based, any order, no repeats).
    /// Returns the blade together with the sign of the reordering.
    pub fn from_indices(indices: &[usize]) -> Option<(Blade, bool)> {
        let mut blade = Blade::IDENTITY;
        let mut negative = false;
        for &i in indices {
            if i == 0 || i > 64 {
                return None;
            }
            let g = Blade(1 << (i - 1));
            if blade.0 & g.0 != 0 {
                return None;
            }
            let (neg, b) = blade.product(g);
            negative ^= neg;
            blade = b;
        }
        Some((blade, negative))
    }

    pub fn generator(i: usize) -> Blade {
        assert!((1..=64).contains(&i), "generator index {i}");
        Blade(1 << (i - 1))
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn indices(self) -> Vec<usize> {
        (0..64)
            .filter(|b| self.0 >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }

    pub fn max_index(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Geometric product of two blades: `(negative, blade)`.
    pub fn product(self, rhs: Blade) -> (bool, Blade) {
        // transpositions needed to sort the concatenated index list
        let mut swaps = 0;
        let mut a = self.0 >> 1;
        while a != 0 {
            swaps += (a & rhs.0).count_ones();
            a >>= 1;
        }
        // each shared generator contracts to -1
        swaps += (self.0 & rhs.0).count_ones();
        (swaps % 2 == 1, Blade(self.0 ^ rhs.0))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        for i in self.indices() {
            write!(f, "c{i}")?;
        }
        Ok(())
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > 64 {
        Err(Error::CliffordDimension(dim))
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElement {
    dim: usize,
    terms: BTreeMap<Blade, Scalar>,
}

impl CliffordElement {
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            terms: BTreeMap::new(),
        })
    }

    pub fn scalar(dim: usize, s: Scalar) -> Result<Self> {
        Self::blade(dim, Blade::IDENTITY, s)
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::scalar(dim, Scalar::one())
    }

    /// `coeff * blade`.
    pub fn blade(dim: usize, blade: Blade, coeff: Scalar) -> Result<Self> {
        let mut out = Self::zero(dim)?;
        if blade.max_index() > dim {
            return Err(Error::GeneratorOutOfRange {
                index: blade.max_index(),
                dim,
            });
        }
        if !coeff.is_zero() {
            out.terms.insert(blade, coeff);
        }
        Ok(out)
    }

    /// The Clifford action `c(e_i)`.
    pub fn generator(dim: usize, i: usize) -> Result<Self> {
        if i == 0 || i > dim {
            return Err(Error::GeneratorOutOfRange { index: i, dim });
        }
        Self::blade(dim, Blade::generator(i), Scalar::one())
    }

    /// Ordered product of generators, e.g. `[k, n]` for `c(e_k) c(e_n)`.
    pub fn product_of(dim: usize, indices: &[usize]) -> Result<Self> {
        indices.iter().try_fold(Self::identity(dim)?, |acc, &i| {
            acc.mul(&Self::generator(dim, i)?)
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, blade: Blade) -> Scalar {
        self.terms.get(&blade).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, blade: Blade, c: Scalar) {
        let sum = &self.coefficient(blade) + &c;
        if sum.is_zero() {
            self.terms.remove(&blade);
        } else {
            self.terms.insert(blade, sum);
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self {
            dim: self.dim,
            terms: BTreeMap::new(),
        };
        for (b, c) in &self.terms {
            out.add_term(*b, c * s);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        let mut out = Self {
            dim: self.dim,
            terms: BTreeMap::new(),
        };
        for (ba, ca) in &self.terms {
            for (bb, cb) in &rhs.terms {
                let (neg, blade) = ba.product(*bb);
                let c = ca * cb;
                out.add_term(blade, if neg { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Trace in the spinor representation: `2^floor(n/2)` times the identity
    /// coefficient. Every other blade is traceless.
    pub fn spinor_trace(&self) -> Scalar {
        spinor_trace_of_identity(self.dim, &self.coefficient(Blade::IDENTITY))
    }
}

/// `tr(id) * coeff` for the spinor module in dimension `dim`.
pub fn spinor_trace_of_identity(dim: usize, coeff: &Scalar) -> Scalar {
    coeff * &Scalar::integer(1 << (dim / 2))
}

/// `tr(ab) == tr(ba)`.
pub fn trace_cyclicity_check(a: &CliffordElement, b: &CliffordElement) -> Result<bool> {
    Ok(a.mul(b)?.spinor_trace() == b.mul(a)?.spinor_trace())
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| format!("[{c}]{b}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
