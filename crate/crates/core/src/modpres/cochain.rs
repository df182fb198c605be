use crate::error::{Error, Result};
use crate::exactlin::{
    contains_lattice, free_homology, kernel, quotient_invariants, AbelianInvariants, IntMatrix,
};

/// Cochain complex of presented abelian groups `Z^{g_i} / R_i` with integer
/// codifferentials `δ^i : degree i -> degree i+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedCochainComplex {
    lo: i32,
    relations: Vec<IntMatrix>,
    // codiffs[k] = δ^{lo+k}
    codiffs: Vec<IntMatrix>,
}

impl PresentedCochainComplex {
    /// `relations[k]` presents degree `lo + k`; `codiffs[k]` is `δ^{lo+k}`.
    /// Checks shapes, that each `δ` respects relations, and that `δ∘δ`
    /// vanishes modulo relations.
    pub fn new(lo: i32, relations: Vec<IntMatrix>, codiffs: Vec<IntMatrix>) -> Result<Self> {
        let c = Self::new_unchecked(lo, relations, codiffs)?;
        for k in 0..c.codiffs.len() {
            let d = &c.codiffs[k];
            if !contains_lattice(&c.relations[k + 1], &(d * &c.relations[k])) {
                return Err(Error::MalformedComplex(format!(
                    "δ^{} does not preserve relations",
                    lo + k as i32
                )));
            }
            if k + 1 < c.codiffs.len() {
                let dd = &c.codiffs[k + 1] * d;
                if !contains_lattice(&c.relations[k + 2], &dd) {
                    return Err(Error::MalformedComplex(format!(
                        "δ∘δ is nonzero modulo relations at degree {}",
                        lo + k as i32
                    )));
                }
            }
        }
        Ok(c)
    }

    pub(crate) fn new_unchecked(
        lo: i32,
        relations: Vec<IntMatrix>,
        codiffs: Vec<IntMatrix>,
    ) -> Result<Self> {
        if relations.is_empty() || codiffs.len() + 1 != relations.len() {
            return Err(Error::MalformedComplex(
                "need one codifferential between each pair of degrees".into(),
            ));
        }
        for (k, d) in codiffs.iter().enumerate() {
            if d.cols() != relations[k].rows() || d.rows() != relations[k + 1].rows() {
                return Err(Error::MalformedComplex(format!(
                    "δ^{} has the wrong shape",
                    lo + k as i32
                )));
            }
        }
        Ok(PresentedCochainComplex {
            lo,
            relations,
            codiffs,
        })
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.relations.len() as i32 - 1
    }

    /// Number of generators in degree `i`.
    pub fn gens(&self, i: i32) -> usize {
        self.relations(i).rows()
    }

    pub fn relations(&self, i: i32) -> IntMatrix {
        if i < self.lo || i > self.hi() {
            return IntMatrix::zeros(0, 0);
        }
        self.relations[(i - self.lo) as usize].clone()
    }

    /// `δ^i`, zero where not stored.
    pub fn codifferential(&self, i: i32) -> IntMatrix {
        if i >= self.lo && i < self.hi() {
            return self.codiffs[(i - self.lo) as usize].clone();
        }
        IntMatrix::zeros(self.gens(i + 1), self.gens(i))
    }

    /// `H^i`: cocycles modulo relations, divided by coboundaries and relations.
    pub fn cohomology(&self, i: i32) -> Result<AbelianInvariants> {
        let g = self.gens(i);
        if g == 0 {
            return Ok(AbelianInvariants::trivial());
        }
        let (prev, cur, next) = (
            self.codifferential(i - 1),
            self.codifferential(i),
            self.relations(i + 1),
        );
        let rel = self.relations(i);
        if rel.cols() == 0 && next.cols() == 0 {
            return Ok(free_homology(&prev, &cur));
        }
        // x is a cocycle when δx + R_{i+1} y = 0 for some y
        let k = kernel(&cur.hcat(&next.neg()));
        let cocycles = k.select_rows(0..g);
        Ok(quotient_invariants(&cocycles, &prev.hcat(&rel))?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Integer;

    #[test]
    fn alternating_zero_and_p() {
        // Z --0--> Z --3--> Z --0--> Z
        let z = || IntMatrix::zeros(1, 0);
        let c = PresentedCochainComplex::new(
            0,
            vec![z(), z(), z(), z()],
            vec![
                IntMatrix::from_rows(&[vec![0]]),
                IntMatrix::from_rows(&[vec![3]]),
                IntMatrix::from_rows(&[vec![0]]),
            ],
        )
        .unwrap();
        assert_eq!(c.cohomology(1).unwrap(), AbelianInvariants::trivial());
        assert_eq!(c.cohomology(2).unwrap(), AbelianInvariants::cyclic(3));
    }

    #[test]
    fn relations_are_respected() {
        // Z/4 --2--> Z/4: kernel {0,2} and cokernel Z/2
        let r = IntMatrix::from_rows(&[vec![4]]);
        let c = PresentedCochainComplex::new(
            0,
            vec![r.clone(), r],
            vec![IntMatrix::from_rows(&[vec![2]])],
        )
        .unwrap();
        assert_eq!(c.cohomology(0).unwrap(), AbelianInvariants::cyclic(2));
        assert_eq!(
            c.cohomology(1).unwrap(),
            AbelianInvariants::new(vec![Integer::from(2)], 0)
        );
    }

    #[test]
    fn rejects_ill_defined_map() {
        // Z/2 -> Z/4 by 1 is not well defined
        let c = PresentedCochainComplex::new(
            0,
            vec![
                IntMatrix::from_rows(&[vec![2]]),
                IntMatrix::from_rows(&[vec![4]]),
            ],
            vec![IntMatrix::from_rows(&[vec![1]])],
        );
        assert!(matches!(c, Err(Error::MalformedComplex(_))));
    }
}
