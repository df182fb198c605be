use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{
    image_basis, kernel, quotient_invariants, solve_preimage, AbelianInvariants, IntMatrix,
};
use crate::groupring::{ElementaryAbelianGroup, GroupRingElement, GroupRingMatrix};

use super::presentation::{free_actions, ModulePresentation};

/// Graded free `Z[G]`-complex with differentials `d_i : C_i -> C_{i-1}`.
///
/// Degrees outside `[lo, hi]` are zero. A complex carrying a `window` is a
/// truncation of an unbounded complex: its homology is only meaningful strictly
/// inside the window, and it cannot be used as hypercohomology coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeChainComplex {
    group: ElementaryAbelianGroup,
    lo: i32,
    ranks: Vec<usize>,
    // diffs[k] = d_{lo+k+1}
    diffs: Vec<GroupRingMatrix>,
    window: Option<(i32, i32)>,
}

impl FreeChainComplex {
    /// `ranks[k]` is the rank in degree `lo + k`; `diffs[k]` is `d_{lo+k+1}`.
    /// Checks shapes and `d∘d = 0` in the group ring.
    pub fn new(
        group: ElementaryAbelianGroup,
        lo: i32,
        ranks: Vec<usize>,
        diffs: Vec<GroupRingMatrix>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::MalformedComplex("no degrees".into()));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::MalformedComplex(format!(
                "{} degrees need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.group() != group {
                return Err(crate::groupring::GroupError::GroupMismatch(group, d.group()).into());
            }
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return Err(Error::MalformedComplex(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    lo + k as i32 + 1,
                    d.rows(),
                    d.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].multiply(&diffs[k])?.is_zero() {
                return Err(Error::MalformedComplex(format!(
                    "d_{} ∘ d_{} != 0",
                    lo + k as i32,
                    lo + k as i32 + 1
                )));
            }
        }
        Ok(FreeChainComplex {
            group,
            lo,
            ranks,
            diffs,
            window: None,
        })
    }

    /// A single free module of rank `k` in degree `degree`.
    pub fn concentrated(group: ElementaryAbelianGroup, degree: i32, k: usize) -> Self {
        FreeChainComplex {
            group,
            lo: degree,
            ranks: vec![k],
            diffs: Vec::new(),
            window: None,
        }
    }

    /// Marks the complex as a truncation whose homology is valid strictly inside `(lo, hi)`.
    pub fn with_window(mut self, lo: i32, hi: i32) -> Self {
        self.window = Some((lo, hi));
        self
    }

    pub fn group(&self) -> ElementaryAbelianGroup {
        self.group
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.ranks.len() as i32 - 1
    }

    pub fn window(&self) -> Option<(i32, i32)> {
        self.window
    }

    pub fn is_finite(&self) -> bool {
        self.window.is_none()
    }

    pub fn rank(&self, degree: i32) -> usize {
        if degree < self.lo || degree > self.hi() {
            return 0;
        }
        self.ranks[(degree - self.lo) as usize]
    }

    /// `d_degree : C_degree -> C_{degree-1}`, a zero matrix where not stored.
    pub fn differential(&self, degree: i32) -> GroupRingMatrix {
        if degree > self.lo && degree <= self.hi() {
            return self.diffs[(degree - self.lo - 1) as usize].clone();
        }
        GroupRingMatrix::zeros(self.group, self.rank(degree - 1), self.rank(degree))
    }

    /// Degrees with nonzero rank, as an inclusive range; `None` for the zero complex.
    pub fn support(&self) -> Option<(i32, i32)> {
        let first = self.ranks.iter().position(|&k| k > 0)?;
        let last = self.ranks.iter().rposition(|&k| k > 0)?;
        Some((self.lo + first as i32, self.lo + last as i32))
    }

    /// Drops zero-rank degrees at both ends.
    pub fn trimmed(&self) -> Self {
        let Some((a, b)) = self.support() else {
            return FreeChainComplex::concentrated(self.group, 0, 0);
        };
        let ranks = (a..=b).map(|i| self.rank(i)).collect();
        let diffs = (a + 1..=b).map(|i| self.differential(i)).collect();
        FreeChainComplex {
            group: self.group,
            lo: a,
            ranks,
            diffs,
            window: self.window,
        }
    }

    /// Restricts (or pads with zeros) to degrees `[a, b]`.
    pub fn restricted(&self, a: i32, b: i32) -> Self {
        assert!(a <= b);
        let ranks = (a..=b).map(|i| self.rank(i)).collect();
        let diffs = (a + 1..=b).map(|i| self.differential(i)).collect();
        FreeChainComplex {
            group: self.group,
            lo: a,
            ranks,
            diffs,
            window: self.window,
        }
    }

    /// Degree shift: `(ΣC)_i = C_{i-1}`, differentials unchanged.
    pub fn suspend(&self) -> Self {
        self.shift(1)
    }

    /// Moves every degree up by `k`, differentials unchanged.
    pub fn shift(&self, k: i32) -> Self {
        let mut c = self.clone();
        c.lo += k;
        c.window = c.window.map(|(a, b)| (a + k, b + k));
        c
    }

    /// `Σ (-1)^i k_i |G|`, the Euler characteristic of the expanded integer complex.
    pub fn euler_characteristic(&self) -> i64 {
        (self.lo..=self.hi())
            .map(|i| {
                let s = if i.rem_euclid(2) == 0 { 1 } else { -1 };
                s * (self.rank(i) * self.group.order()) as i64
            })
            .sum()
    }

    pub fn expanded_differential(&self, degree: i32) -> IntMatrix {
        self.differential(degree).expand()
    }

    fn check_window(&self, degree: i32) -> Result<()> {
        if let Some((lo, hi)) = self.window {
            if degree <= lo || degree >= hi {
                return Err(Error::WindowViolation { degree, lo, hi });
            }
        }
        Ok(())
    }

    /// `H_n` as an abelian group: cycles of the expanded `d_n` modulo boundaries of `d_{n+1}`.
    pub fn homology(&self, n: i32) -> Result<AbelianInvariants> {
        self.check_window(n)?;
        if self.rank(n) == 0 {
            return Ok(AbelianInvariants::trivial());
        }
        let cycles = kernel(&self.expanded_differential(n));
        let boundaries = self.expanded_differential(n + 1);
        Ok(quotient_invariants(&cycles, &boundaries)?)
    }

    /// `H_n` as a `Z[G]`-module presented on a basis of the cycle lattice.
    pub fn homology_module(&self, n: i32) -> Result<ModulePresentation> {
        self.check_window(n)?;
        homology_module_of(
            self.group,
            &self.expanded_differential(n),
            &self.expanded_differential(n + 1),
            &free_actions(self.group, self.rank(n)),
        )
    }

    /// Basis of the `n`-cycles of the expanded complex.
    pub fn cycle_basis(&self, n: i32) -> IntMatrix {
        kernel(&self.expanded_differential(n))
    }

    /// The complex of `Z`-lattices underlying `self`.
    pub fn to_lattice(&self) -> LatticeComplex {
        LatticeComplex {
            group: self.group,
            lo: self.lo,
            modules: (self.lo..=self.hi())
                .map(|i| ModulePresentation::free(self.group, self.rank(i)))
                .collect(),
            diffs: (self.lo + 1..=self.hi())
                .map(|i| self.expanded_differential(i))
                .collect(),
        }
    }
}

pub(crate) fn homology_module_of(
    group: ElementaryAbelianGroup,
    d_out: &IntMatrix,
    d_in: &IntMatrix,
    actions: &[IntMatrix],
) -> Result<ModulePresentation> {
    let cycles = kernel(d_out);
    let z = cycles.cols();
    if z == 0 {
        return Ok(ModulePresentation::zero(group));
    }
    let rel = solve_preimage(&cycles, d_in)?;
    let rel = if rel.cols() == 0 {
        IntMatrix::zeros(z, 0)
    } else {
        image_basis(&rel)
    };
    let induced = actions
        .iter()
        .map(|a| solve_preimage(&cycles, &(a * &cycles)))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    ModulePresentation::new(group, z, rel, induced)
}

/// Bounded complex of `Z`-free `Z[G]`-lattices with integer differentials.
///
/// This is the coefficient type for hypercohomology. Free complexes embed via
/// [`FreeChainComplex::to_lattice`]; non-free lattices (for example a single `Z`
/// in one degree) are allowed as well.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeComplex {
    group: ElementaryAbelianGroup,
    lo: i32,
    modules: Vec<ModulePresentation>,
    // diffs[k] = d_{lo+k+1}
    diffs: Vec<IntMatrix>,
}

impl LatticeComplex {
    /// Checks that modules are `Z`-free, differentials have the right shape,
    /// commute with the action, and compose to zero.
    pub fn new(
        group: ElementaryAbelianGroup,
        lo: i32,
        modules: Vec<ModulePresentation>,
        diffs: Vec<IntMatrix>,
    ) -> Result<Self> {
        if modules.is_empty() || diffs.len() + 1 != modules.len() {
            return Err(Error::MalformedComplex(
                "need one differential between each pair of degrees".into(),
            ));
        }
        for m in &modules {
            if !m.is_z_free() {
                return Err(Error::NotZFree);
            }
            if m.group() != group {
                return Err(crate::groupring::GroupError::GroupMismatch(group, m.group()).into());
            }
            m.validate().map_err(Error::InvalidPresentation)?;
        }
        for (k, d) in diffs.iter().enumerate() {
            let (src, dst) = (&modules[k + 1], &modules[k]);
            if d.rows() != dst.gens() || d.cols() != src.gens() {
                return Err(Error::MalformedComplex(format!(
                    "d_{} has the wrong shape",
                    lo + k as i32 + 1
                )));
            }
            for (a, b) in dst.actions().iter().zip(src.actions()) {
                if a * d != d * b {
                    return Err(Error::MalformedComplex(format!(
                        "d_{} is not equivariant",
                        lo + k as i32 + 1
                    )));
                }
            }
        }
        for k in 1..diffs.len() {
            if !(&diffs[k - 1] * &diffs[k]).is_zero() {
                return Err(Error::MalformedComplex(format!(
                    "d∘d != 0 at degree {}",
                    lo + k as i32 + 1
                )));
            }
        }
        Ok(LatticeComplex {
            group,
            lo,
            modules,
            diffs,
        })
    }

    /// A single lattice `m` in degree `degree`.
    pub fn concentrated(degree: i32, m: ModulePresentation) -> Result<Self> {
        Self::new(m.group(), degree, vec![m], Vec::new())
    }

    pub fn group(&self) -> ElementaryAbelianGroup {
        self.group
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.modules.len() as i32 - 1
    }

    pub fn module(&self, degree: i32) -> ModulePresentation {
        if degree < self.lo || degree > self.hi() {
            return ModulePresentation::zero(self.group);
        }
        self.modules[(degree - self.lo) as usize].clone()
    }

    pub fn rank(&self, degree: i32) -> usize {
        if degree < self.lo || degree > self.hi() {
            return 0;
        }
        self.modules[(degree - self.lo) as usize].gens()
    }

    pub fn differential(&self, degree: i32) -> IntMatrix {
        if degree > self.lo && degree <= self.hi() {
            return self.diffs[(degree - self.lo - 1) as usize].clone();
        }
        IntMatrix::zeros(self.rank(degree - 1), self.rank(degree))
    }

    pub fn homology(&self, n: i32) -> Result<AbelianInvariants> {
        if self.rank(n) == 0 {
            return Ok(AbelianInvariants::trivial());
        }
        Ok(quotient_invariants(
            &kernel(&self.differential(n)),
            &self.differential(n + 1),
        )?)
    }

    pub fn homology_module(&self, n: i32) -> Result<ModulePresentation> {
        homology_module_of(
            self.group,
            &self.differential(n),
            &self.differential(n + 1),
            self.module(n).actions(),
        )
    }
}

/// The `Z`-dual complex: `D_i = Hom_Z(C_{-i}, Z)` with `d^D_i = (d^C_{1-i})^*`,
/// each entry antipoded and the matrix transposed. A validity window is mirrored.
pub fn dual_complex(c: &FreeChainComplex) -> FreeChainComplex {
    let lo = -c.hi();
    let hi = -c.lo();
    let ranks = (lo..=hi).map(|i| c.rank(-i)).collect();
    let diffs = (lo + 1..=hi)
        .map(|i| c.differential(1 - i).dual())
        .collect();
    FreeChainComplex {
        group: c.group(),
        lo,
        ranks,
        diffs,
        window: c.window().map(|(a, b)| (-b, -a)),
    }
}

/// Tensor product over `Z` of a `Z[G1]`-complex and a `Z[G2]`-complex, a
/// `Z[G1 x G2]`-complex with `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`.
///
/// Degree-`n` basis: pairs `(x, y)` with `|x| + |y| = n`, ordered by `|x|`
/// ascending, then `x`, then `y`.
pub fn tensor_complex(c: &FreeChainComplex, d: &FreeChainComplex) -> Result<FreeChainComplex> {
    let group = c.group().product(&d.group())?;
    let lo = c.lo() + d.lo();
    let hi = c.hi() + d.hi();
    // offsets[n][i] = position of the (C_i ⊗ D_{n-i}) block in degree n
    let offset = |n: i32, i: i32| -> usize { (c.lo()..i).map(|a| c.rank(a) * d.rank(n - a)).sum() };
    let rank = |n: i32| -> usize { (c.lo()..=c.hi()).map(|a| c.rank(a) * d.rank(n - a)).sum() };
    let ranks: Vec<usize> = (lo..=hi).map(rank).collect();
    let one1 = GroupRingElement::one(c.group());
    let one2 = GroupRingElement::one(d.group());
    let mut diffs = Vec::new();
    for n in lo + 1..=hi {
        let mut m = GroupRingMatrix::zeros(group, rank(n - 1), rank(n));
        for i in c.lo()..=c.hi() {
            let j = n - i;
            let (ki, kj) = (c.rank(i), d.rank(j));
            if ki == 0 || kj == 0 {
                continue;
            }
            let src = offset(n, i);
            // dx ⊗ y lands in block (i-1, j) of degree n-1
            let dc = c.differential(i);
            if c.rank(i - 1) > 0 {
                let dst = offset(n - 1, i - 1);
                for x in 0..ki {
                    for y in 0..kj {
                        for x2 in 0..c.rank(i - 1) {
                            let e = dc.get(x2, x);
                            if !e.is_zero() {
                                m.set(dst + x2 * kj + y, src + x * kj + y, e.tensor(&one2)?);
                            }
                        }
                    }
                }
            }
            // (-1)^i x ⊗ dy lands in block (i, j-1)
            let dd = d.differential(j);
            if d.rank(j - 1) > 0 {
                let kj2 = d.rank(j - 1);
                let dst = offset(n - 1, i);
                let negate = i.rem_euclid(2) == 1;
                for x in 0..ki {
                    for y in 0..kj {
                        for y2 in 0..kj2 {
                            let e = dd.get(y2, y);
                            if !e.is_zero() {
                                let t = one1.tensor(e)?;
                                let t = if negate { t.neg() } else { t };
                                m.set(dst + x * kj2 + y2, src + x * kj + y, t);
                            }
                        }
                    }
                }
            }
        }
        diffs.push(m);
    }
    FreeChainComplex::new(group, lo, ranks, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lens21() -> FreeChainComplex {
        let g = ElementaryAbelianGroup::cyclic(2).unwrap();
        FreeChainComplex::new(
            g,
            0,
            vec![1, 1],
            vec![GroupRingMatrix::scalar(
                GroupRingElement::generator_minus_one(g, 0).unwrap(),
            )],
        )
        .unwrap()
    }

    #[test]
    fn rejects_nonzero_square() {
        let g = ElementaryAbelianGroup::cyclic(3).unwrap();
        let d = GroupRingMatrix::scalar(GroupRingElement::generator_minus_one(g, 0).unwrap());
        let r = FreeChainComplex::new(g, 0, vec![1, 1, 1], vec![d.clone(), d]);
        assert!(matches!(r, Err(Error::MalformedComplex(_))));
    }

    #[test]
    fn circle_homology() {
        let c = lens21();
        assert_eq!(c.homology(0).unwrap(), AbelianInvariants::free(1));
        assert_eq!(c.homology(1).unwrap(), AbelianInvariants::free(1));
        assert_eq!(c.homology(5).unwrap(), AbelianInvariants::trivial());
        let h1 = c.homology_module(1).unwrap();
        assert_eq!(h1.gens(), 1);
        assert!(h1.has_trivial_action());
        assert_eq!(h1.validate(), Ok(()));
    }

    #[test]
    fn window_is_enforced() {
        let c = lens21().with_window(0, 1);
        assert!(matches!(c.homology(0), Err(Error::WindowViolation { .. })));
        assert!(matches!(
            c.homology_module(1),
            Err(Error::WindowViolation { .. })
        ));
    }

    #[test]
    fn dual_of_generator_minus_one() {
        let g = ElementaryAbelianGroup::cyclic(3).unwrap();
        let d = GroupRingMatrix::scalar(GroupRingElement::generator_minus_one(g, 0).unwrap());
        let c = FreeChainComplex::new(g, 0, vec![1, 1], vec![d]).unwrap();
        let dual = dual_complex(&c);
        assert_eq!((dual.lo(), dual.hi()), (-1, 0));
        let expected = GroupRingElement::from_i64s(g, &[-1, 0, 1]);
        assert_eq!(dual.differential(0).get(0, 0), &expected);
        assert_eq!(dual_complex(&dual), c);
        assert_eq!(
            dual.differential(0).expand(),
            c.differential(1).expand().transpose()
        );
    }

    #[test]
    fn tensor_ranks_and_homology() {
        let t = tensor_complex(&lens21(), &lens21()).unwrap();
        assert_eq!(
            (0..=2).map(|i| t.rank(i)).collect::<Vec<_>>(),
            vec![1, 2, 1]
        );
        assert_eq!(t.group(), ElementaryAbelianGroup::new(2, 2).unwrap());
        assert_eq!(t.homology(1).unwrap(), AbelianInvariants::free(2));
        assert_eq!(t.homology(2).unwrap(), AbelianInvariants::free(1));
    }

    #[test]
    fn tensor_with_point_is_identity() {
        let g = ElementaryAbelianGroup::cyclic(2).unwrap();
        let point = FreeChainComplex::concentrated(g, 0, 1);
        let t = tensor_complex(&lens21(), &point).unwrap();
        assert_eq!(t.rank(0), 1);
        assert_eq!(t.rank(1), 1);
        let d = t.differential(1);
        // (g-1) ⊗ 1 in Z[(Z/2)^2]
        let expected = GroupRingElement::generator_minus_one(t.group(), 0).unwrap();
        assert_eq!(d.get(0, 0), &expected);
    }

    #[test]
    fn lattice_complex_rejects_non_equivariant_map() {
        let g = ElementaryAbelianGroup::cyclic(2).unwrap();
        let z = ModulePresentation::trivial(g);
        let free = ModulePresentation::free(g, 1);
        // Z[G] -> Z via (1, 0) is not equivariant
        let r = LatticeComplex::new(
            g,
            0,
            vec![z, free],
            vec![IntMatrix::from_rows(&[vec![1, 0]])],
        );
        assert!(matches!(r, Err(Error::MalformedComplex(_))));
        // the augmentation is
        let aug = IntMatrix::from_rows(&[vec![1, 1]]);
        let c = LatticeComplex::new(
            g,
            0,
            vec![
                ModulePresentation::trivial(g),
                ModulePresentation::free(g, 1),
            ],
            vec![aug],
        )
        .unwrap();
        assert_eq!(c.homology(0).unwrap(), AbelianInvariants::trivial());
        let k = c.homology_module(1).unwrap();
        assert_eq!(k.actions()[0], IntMatrix::from_rows(&[vec![-1]]));
    }
}
