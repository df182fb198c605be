use std::fmt;

use serde::{Deserialize, Serialize};

use super::Integer;

/// Canonical form of a finitely generated abelian group:
/// `Z/d_1 + ... + Z/d_t + Z^free_rank` with `1 < d_1 | d_2 | ... | d_t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    torsion: Vec<Integer>,
    free_rank: usize,
}

/// Exponent of an abelian group; groups with a free summand have none.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Exponent {
    Finite(Integer),
    Infinite,
}

impl AbelianInvariants {
    /// Panics unless `torsion` is a divisibility chain of entries >= 2.
    pub fn new(torsion: Vec<Integer>, free_rank: usize) -> Self {
        for d in &torsion {
            assert!(
                *d > Integer::one(),
                "torsion coefficients must be at least 2"
            );
        }
        for w in torsion.windows(2) {
            assert!(
                w[0].divides(&w[1]),
                "torsion must form a divisibility chain"
            );
        }
        AbelianInvariants { torsion, free_rank }
    }

    pub fn trivial() -> Self {
        AbelianInvariants {
            torsion: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianInvariants {
            torsion: Vec::new(),
            free_rank: rank,
        }
    }

    pub fn cyclic(order: impl Into<Integer>) -> Self {
        let d = order.into().abs();
        if d.is_zero() {
            return Self::free(1);
        }
        if d.is_one() {
            return Self::trivial();
        }
        Self::new(vec![d], 0)
    }

    /// Builds the quotient `Z^ambient / diag(divisors)`: unit divisors vanish and
    /// each nonzero divisor uses up one free generator.
    pub(crate) fn from_diagonal(divisors: Vec<Integer>, ambient: usize) -> Self {
        let rank = divisors.len();
        let torsion = super::smith::normalize_divisibility(divisors)
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        AbelianInvariants {
            torsion,
            free_rank: ambient - rank,
        }
    }

    pub fn torsion(&self) -> &[Integer] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<Integer> {
        self.is_finite()
            .then(|| self.torsion.iter().cloned().product())
    }

    pub fn exponent(&self) -> Exponent {
        exponent(self)
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &AbelianInvariants) -> AbelianInvariants {
        let mut d: Vec<Integer> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        d.sort();
        AbelianInvariants {
            torsion: super::smith::normalize_divisibility(d)
                .into_iter()
                .filter(|x| !x.is_one())
                .collect(),
            free_rank: self.free_rank + other.free_rank,
        }
    }
}

/// Largest elementary divisor; 1 for the trivial group; `Infinite` with a free part.
pub fn exponent(inv: &AbelianInvariants) -> Exponent {
    if inv.free_rank > 0 {
        return Exponent::Infinite;
    }
    Exponent::Finite(inv.torsion.last().cloned().unwrap_or_else(Integer::one))
}

impl Exponent {
    pub fn finite(&self) -> Option<&Integer> {
        match self {
            Exponent::Finite(e) => Some(e),
            Exponent::Infinite => None,
        }
    }

    pub fn divides(&self, n: &Integer) -> bool {
        self.finite().is_some_and(|e| e.divides(n))
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(e) => write!(f, "{e}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}
