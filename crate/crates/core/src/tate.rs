//! Tate cohomology `Ĥ^i(G, M)` and hypercohomology `Ĥ^i(G, C)` computed from
//! windows of a complete resolution.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{AbelianInvariants, Exponent, IntMatrix};
use crate::groupring::{ElementaryAbelianGroup, GroupRingMatrix};
use crate::modpres::{
    ActionTable, FreeChainComplex, LatticeComplex, ModulePresentation, PresentedCochainComplex,
};
use crate::resolve::{complete_resolution, CompleteResolutionWindow};

/// `Hom_G(Z[G]^cols, M) -> Hom_G(Z[G]^rows, M)` induced by precomposition with
/// `d` (rows x cols), on `M^cols -> M^rows` via evaluation at basis vectors.
fn precompose(d: &GroupRingMatrix, actions: &ActionTable) -> IntMatrix {
    let g = actions.gens;
    let mut out = IntMatrix::zeros(d.cols() * g, d.rows() * g);
    for j in 0..d.rows() {
        for k in 0..d.cols() {
            let e = d.get(j, k);
            if !e.is_zero() {
                out.set_block(k * g, j * g, &actions.apply(e));
            }
        }
    }
    out
}

/// `Hom_G(F_*, M)` on degrees `[lo, hi]` of a resolution window.
pub fn hom_complex(
    w: &CompleteResolutionWindow,
    m: &ModulePresentation,
    lo: i32,
    hi: i32,
) -> Result<PresentedCochainComplex> {
    assert!(w.lo() <= lo && hi <= w.hi() && lo <= hi);
    let table = ActionTable::new(m);
    let relations = (lo..=hi)
        .map(|i| m.relations().block_diagonal(w.rank(i)))
        .collect();
    let codiffs = (lo..hi)
        .map(|i| precompose(&w.differential(i + 1), &table))
        .collect();
    PresentedCochainComplex::new_unchecked(lo, relations, codiffs)
}

/// `Ĥ^i(G, M)` read from a resolution window containing `[i-1, i+1]`.
pub fn tate_cohomology_in(
    w: &CompleteResolutionWindow,
    m: &ModulePresentation,
    i: i32,
) -> Result<AbelianInvariants> {
    hom_complex(w, m, i - 1, i + 1)?.cohomology(i)
}

/// `Ĥ^i(G, M) = H^i(Hom_G(F_*, M))` for a complete resolution `F_*`.
pub fn tate_cohomology(
    group: ElementaryAbelianGroup,
    m: &ModulePresentation,
    i: i32,
) -> Result<AbelianInvariants> {
    check_module(group, m)?;
    tate_cohomology_in(&complete_resolution(group, i - 1, i + 1), m, i)
}

fn check_module(group: ElementaryAbelianGroup, m: &ModulePresentation) -> Result<()> {
    if m.group() != group {
        return Err(crate::groupring::GroupError::GroupMismatch(group, m.group()).into());
    }
    m.validate().map_err(Error::InvalidPresentation)
}

/// `Ĥ^i(G, M)` for every `i` in `[lo, hi]`, sharing one resolution window.
pub fn tate_cohomology_range(
    group: ElementaryAbelianGroup,
    m: &ModulePresentation,
    lo: i32,
    hi: i32,
) -> Result<Vec<AbelianInvariants>> {
    check_module(group, m)?;
    let w = complete_resolution(group, lo - 1, hi + 1);
    (lo..=hi)
        .into_par_iter()
        .map(|i| tate_cohomology_in(&w, m, i))
        .collect()
}

/// The total complex of `Hom_G(F_p, C_j)` in degrees `[lo, hi]`, where
/// `Tot^n = ⊕_j Hom_G(F_{n+j}, C_j)` and `δ^n = δ_0 - (-1)^n δ_1`, with `δ_0`
/// postcomposition by `∂_C` and `δ_1` precomposition by `∂_F`.
pub fn total_complex(
    c: &LatticeComplex,
    w: &CompleteResolutionWindow,
    lo: i32,
    hi: i32,
) -> PresentedCochainComplex {
    let (clo, chi) = (c.lo(), c.hi());
    assert!(w.lo() <= lo + clo && hi + chi <= w.hi());
    let tables: Vec<ActionTable> = (clo..=chi)
        .map(|j| ActionTable::new(&c.module(j)))
        .collect();
    // offset of the Hom(F_{n+j}, C_j) block inside Tot^n
    let offset = |n: i32, j: i32| -> usize { (clo..j).map(|a| w.rank(n + a) * c.rank(a)).sum() };
    let size = |n: i32| offset(n, chi + 1);
    let relations = (lo..=hi).map(|n| IntMatrix::zeros(size(n), 0)).collect();
    let codiffs = (lo..hi)
        .map(|n| {
            let mut out = IntMatrix::zeros(size(n + 1), size(n));
            let sign = if n.rem_euclid(2) == 0 { -1i64 } else { 1 };
            for j in clo..=chi {
                let p = n + j;
                let (f, g) = (w.rank(p), c.rank(j));
                if f == 0 || g == 0 {
                    continue;
                }
                let src = offset(n, j);
                // δ_0: Hom(F_p, C_j) -> Hom(F_p, C_{j-1})
                if j > clo && c.rank(j - 1) > 0 {
                    let block = c.differential(j).block_diagonal(f);
                    out.add_block(offset(n + 1, j - 1), src, &block);
                }
                // δ_1: Hom(F_p, C_j) -> Hom(F_{p+1}, C_j), with the sign of δ^n
                if w.rank(p + 1) > 0 {
                    let block = precompose(&w.differential(p + 1), &tables[(j - clo) as usize]);
                    let block = if sign < 0 { block.neg() } else { block };
                    out.add_block(offset(n + 1, j), src, &block);
                }
            }
            out
        })
        .collect();
    PresentedCochainComplex::new_unchecked(lo, relations, codiffs).unwrap()
}

/// `Ĥ^i(G, C)` for a bounded complex of lattices.
pub fn lattice_hypercohomology(c: &LatticeComplex, i: i32) -> Result<AbelianInvariants> {
    let w = complete_resolution(c.group(), i - 1 + c.lo(), i + 1 + c.hi());
    total_complex(c, &w, i - 1, i + 1).cohomology(i)
}

/// `Ĥ^i(G, C)` for every `i` in `[lo, hi]`, sharing one resolution window.
pub fn lattice_hypercohomology_range(
    c: &LatticeComplex,
    lo: i32,
    hi: i32,
) -> Result<Vec<AbelianInvariants>> {
    let w = complete_resolution(c.group(), lo - 1 + c.lo(), hi + 1 + c.hi());
    (lo..=hi)
        .into_par_iter()
        .map(|i| total_complex(c, &w, i - 1, i + 1).cohomology(i))
        .collect()
}

fn finite_lattice(c: &FreeChainComplex) -> Result<LatticeComplex> {
    if let Some((lo, hi)) = c.window() {
        return Err(Error::InfiniteLength { lo, hi });
    }
    Ok(c.to_lattice())
}

/// Tate hypercohomology `Ĥ^i(G, C)` of a finite free complex.
pub fn tate_hypercohomology(c: &FreeChainComplex, i: i32) -> Result<AbelianInvariants> {
    lattice_hypercohomology(&finite_lattice(c)?, i)
}

/// [`tate_hypercohomology`] over a degree range.
pub fn tate_hypercohomology_range(
    c: &FreeChainComplex,
    lo: i32,
    hi: i32,
) -> Result<Vec<AbelianInvariants>> {
    lattice_hypercohomology_range(&finite_lattice(c)?, lo, hi)
}

/// `(ΣC)_i = C_{i-1}`.
pub fn suspension(c: &FreeChainComplex) -> FreeChainComplex {
    c.suspend()
}

/// One row of a [`CohomologyTable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyEntry {
    pub degree: i32,
    pub group: AbelianInvariants,
    pub exponent: Exponent,
}

/// `Ĥ^i` and its exponent for each degree of a range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub lo: i32,
    pub hi: i32,
    pub entries: Vec<CohomologyEntry>,
}

impl CohomologyTable {
    pub fn from_groups(lo: i32, groups: Vec<AbelianInvariants>) -> Self {
        let hi = lo + groups.len() as i32 - 1;
        let entries = groups
            .into_iter()
            .enumerate()
            .map(|(k, group)| CohomologyEntry {
                degree: lo + k as i32,
                exponent: group.exponent(),
                group,
            })
            .collect();
        CohomologyTable { lo, hi, entries }
    }

    pub fn get(&self, degree: i32) -> Option<&CohomologyEntry> {
        self.entries.get(usize::try_from(degree - self.lo).ok()?)
    }
}

/// Exponents of `Ĥ^i(G, M)` for `i` in `[a, b]`.
pub fn exponent_profile(
    group: ElementaryAbelianGroup,
    m: &ModulePresentation,
    a: i32,
    b: i32,
) -> Result<CohomologyTable> {
    Ok(CohomologyTable::from_groups(
        a,
        tate_cohomology_range(group, m, a, b)?,
    ))
}

/// One degree of a [`ConcentrationReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcentrationRow {
    pub degree: i32,
    pub complex: AbelianInvariants,
    pub module: AbelianInvariants,
}

/// Comparison of `Ĥ^i(G, C)` with `Ĥ^{i+n}(G, H_n(C))` for `C` with homology only in degree `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    pub degree: i32,
    pub homology: AbelianInvariants,
    pub rows: Vec<ConcentrationRow>,
    pub holds: bool,
}

/// Checks `Ĥ^i(G, C) ≅ Ĥ^{i+n}(G, H_n(C))` for `i` in `[lo, hi]`.
///
/// Fails with [`Error::NotConcentrated`] when `C` has homology outside degree
/// `n`, or none at all (reported with `offending == n`).
pub fn concentrated_check(
    c: &LatticeComplex,
    n: i32,
    lo: i32,
    hi: i32,
) -> Result<ConcentrationReport> {
    for k in c.lo()..=c.hi() {
        if k != n && !c.homology(k)?.is_trivial() {
            return Err(Error::NotConcentrated {
                degree: n,
                offending: k,
            });
        }
    }
    let homology = c.homology(n)?;
    if homology.is_trivial() {
        return Err(Error::NotConcentrated {
            degree: n,
            offending: n,
        });
    }
    let module = c.homology_module(n)?;
    let lhs = lattice_hypercohomology_range(c, lo, hi)?;
    let rhs = tate_cohomology_range(c.group(), &module, lo + n, hi + n)?;
    let rows: Vec<ConcentrationRow> = (lo..=hi)
        .zip(lhs.into_iter().zip(rhs))
        .map(|(degree, (complex, module))| ConcentrationRow {
            degree,
            complex,
            module,
        })
        .collect();
    let holds = rows.iter().all(|r| r.complex == r.module);
    Ok(ConcentrationReport {
        degree: n,
        homology,
        rows,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Integer;
    use crate::groupring::GroupRingElement;
    use crate::resolve::{periodic_complete_resolution, positive_resolution, syzygy};

    fn g(p: u32, r: u32) -> ElementaryAbelianGroup {
        ElementaryAbelianGroup::new(p, r).unwrap()
    }

    fn cyclic(n: i64) -> AbelianInvariants {
        AbelianInvariants::cyclic(n)
    }

    #[test]
    fn degree_zero_is_group_order() {
        for (p, r) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
            let grp = g(p, r);
            let h = tate_cohomology(grp, &ModulePresentation::trivial(grp), 0).unwrap();
            assert_eq!(h, cyclic(grp.order() as i64));
        }
    }

    #[test]
    fn cyclic_groups_are_periodic() {
        for p in [2u32, 3] {
            let grp = g(p, 1);
            let hs = tate_cohomology_range(grp, &ModulePresentation::trivial(grp), -4, 4).unwrap();
            for (i, h) in (-4..=4).zip(hs) {
                let expected = if i % 2 == 0 {
                    cyclic(p as i64)
                } else {
                    AbelianInvariants::trivial()
                };
                assert_eq!(h, expected, "p={p} i={i}");
            }
        }
    }

    #[test]
    fn periodic_window_agrees_with_splice() {
        let grp = g(2, 1);
        let z = ModulePresentation::trivial(grp);
        let periodic = periodic_complete_resolution(2, -5, 5).unwrap();
        let spliced = complete_resolution(grp, -5, 5);
        for i in -3..=3 {
            assert_eq!(
                tate_cohomology_in(&periodic, &z, i).unwrap(),
                tate_cohomology_in(&spliced, &z, i).unwrap()
            );
        }
    }

    #[test]
    fn free_coefficients_vanish() {
        let grp = g(2, 2);
        let hs = tate_cohomology_range(grp, &ModulePresentation::free(grp, 1), -2, 3).unwrap();
        assert!(hs.iter().all(AbelianInvariants::is_trivial));
    }

    #[test]
    fn sign_representation() {
        // Ĥ^i(Z/2, Z_-) is Z/2 in odd degrees
        let grp = g(2, 1);
        let sign =
            ModulePresentation::lattice(grp, vec![IntMatrix::from_rows(&[vec![-1]])]).unwrap();
        let hs = tate_cohomology_range(grp, &sign, -2, 2).unwrap();
        let expected: Vec<_> = (-2..=2)
            .map(|i: i32| {
                if i.rem_euclid(2) == 1 {
                    cyclic(2)
                } else {
                    AbelianInvariants::trivial()
                }
            })
            .collect();
        assert_eq!(hs, expected);
    }

    #[test]
    fn torsion_coefficients() {
        // Z/4 with trivial action over Z/2: Ĥ^0 = Z/2 and Ĥ^1 = Hom(Z/2, Z/4) = Z/2
        let grp = g(2, 1);
        let m = ModulePresentation::new(
            grp,
            1,
            IntMatrix::from_rows(&[vec![4]]),
            vec![IntMatrix::identity(1)],
        )
        .unwrap();
        assert_eq!(tate_cohomology(grp, &m, 0).unwrap(), cyclic(2));
        assert_eq!(tate_cohomology(grp, &m, 1).unwrap(), cyclic(2));
    }

    #[test]
    fn dimension_shift() {
        for grp in [g(2, 1), g(3, 1), g(2, 2)] {
            let z = ModulePresentation::trivial(grp);
            for n in 1..=2usize {
                let om = syzygy(&z, n).unwrap();
                for i in -1..=3 {
                    assert_eq!(
                        tate_cohomology(grp, &om, i).unwrap(),
                        tate_cohomology(grp, &z, i - n as i32).unwrap(),
                        "{grp} n={n} i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn second_syzygy_profile() {
        let grp = g(2, 2);
        let om = syzygy(&ModulePresentation::trivial(grp), 2).unwrap();
        let t = exponent_profile(grp, &om, 1, 4).unwrap();
        assert_eq!(
            t.get(2).unwrap().exponent,
            Exponent::Finite(Integer::from(4))
        );
        for i in [1, 3, 4] {
            assert!(t.get(i).unwrap().exponent.divides(&Integer::from(2)));
        }
    }

    fn lens21() -> FreeChainComplex {
        let grp = g(2, 1);
        FreeChainComplex::new(
            grp,
            0,
            vec![1, 1],
            vec![GroupRingMatrix::scalar(
                GroupRingElement::generator_minus_one(grp, 0).unwrap(),
            )],
        )
        .unwrap()
    }

    #[test]
    fn free_complexes_have_no_hypercohomology() {
        let hs = tate_hypercohomology_range(&lens21(), -3, 3).unwrap();
        assert!(hs.iter().all(AbelianInvariants::is_trivial));
        let point = FreeChainComplex::concentrated(g(3, 1), 0, 2);
        assert!(tate_hypercohomology_range(&point, -1, 1)
            .unwrap()
            .iter()
            .all(AbelianInvariants::is_trivial));
    }

    #[test]
    fn windowed_complex_is_rejected() {
        let c = positive_resolution(g(2, 1), 3);
        assert!(matches!(
            tate_hypercohomology(&c, 0),
            Err(Error::InfiniteLength { .. })
        ));
    }

    #[test]
    fn coefficients_in_a_single_degree() {
        let grp = g(3, 1);
        let z = ModulePresentation::trivial(grp);
        let c = LatticeComplex::concentrated(0, z.clone()).unwrap();
        for i in -2..=2 {
            assert_eq!(
                lattice_hypercohomology(&c, i).unwrap(),
                tate_cohomology(grp, &z, i).unwrap()
            );
        }
    }

    #[test]
    fn shifted_coefficients() {
        let grp = g(2, 1);
        let c = LatticeComplex::concentrated(2, ModulePresentation::trivial(grp)).unwrap();
        assert_eq!(lattice_hypercohomology(&c, -2).unwrap(), cyclic(2));
        let report = concentrated_check(&c, 2, -3, 1).unwrap();
        assert!(report.holds);
    }

    #[test]
    fn suspension_shifts_degrees() {
        let c = lens21();
        let s = suspension(&c);
        assert_eq!(s.rank(1), c.rank(0));
        assert_eq!(s.homology(2).unwrap(), c.homology(1).unwrap());
    }

    #[test]
    fn acyclic_complex_is_not_concentrated() {
        let c = lens21().to_lattice();
        assert!(matches!(
            concentrated_check(&c, 0, 0, 0),
            Err(Error::NotConcentrated { offending: 1, .. })
        ));
        let zero = FreeChainComplex::concentrated(g(2, 1), 1, 0).to_lattice();
        assert!(matches!(
            concentrated_check(&zero, 1, 0, 0),
            Err(Error::NotConcentrated { offending: 1, .. })
        ));
    }
}
