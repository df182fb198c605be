//! Generators for free complexes: lens spheres, their products and seeded
//! random complexes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{kernel, IntMatrix, Integer};
use crate::groupring::{full_norm, ElementaryAbelianGroup, GroupRingElement, GroupRingMatrix};
use crate::modpres::{tensor_complex, FreeChainComplex};

/// Free `Z[Z/p]` complex of `S^{2k-1}`: rank 1 in degrees `0..2k-1`, `d_i = g - 1`
/// for odd `i` and the norm for even `i`.
pub fn lens_complex(p: u32, k: usize) -> Result<FreeChainComplex> {
    if k == 0 {
        return Err(Error::MalformedComplex("lens complex needs k >= 1".into()));
    }
    let group = ElementaryAbelianGroup::cyclic(p)?;
    let g_minus_one = GroupRingMatrix::scalar(GroupRingElement::generator_minus_one(group, 0)?);
    let norm = GroupRingMatrix::scalar(full_norm(group));
    let diffs = (1..2 * k)
        .map(|i| {
            if i % 2 == 1 {
                g_minus_one.clone()
            } else {
                norm.clone()
            }
        })
        .collect();
    FreeChainComplex::new(group, 0, vec![1; 2 * k], diffs)
}

/// `S^{2k_1-1} x ... x S^{2k_r-1}` with the free `(Z/p)^r` action, as the tensor
/// product of lens complexes.
pub fn product_complex(p: u32, ks: &[usize]) -> Result<FreeChainComplex> {
    let (first, rest) = ks.split_first().ok_or_else(|| {
        Error::MalformedComplex("product complex needs at least one factor".into())
    })?;
    rest.iter().try_fold(lens_complex(p, *first)?, |acc, &k| {
        tensor_complex(&acc, &lens_complex(p, k)?)
    })
}

/// Seeded free complex with `ranks[i]` in degree `i`.
///
/// `d_1` has small random entries. Each later column of `d_{i+1}` is a small
/// random combination of a `Z`-basis of `ker expand(d_i)`, so `d∘d = 0` by
/// construction. When a kernel is zero the differential is zero.
pub fn random_free_complex(
    group: ElementaryAbelianGroup,
    ranks: &[usize],
    seed: u64,
) -> Result<FreeChainComplex> {
    if ranks.is_empty() {
        return Err(Error::InfeasibleRanks("no degrees requested".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = group.order();
    let mut diffs: Vec<GroupRingMatrix> = Vec::new();
    for i in 1..ranks.len() {
        let (rows, cols) = (ranks[i - 1], ranks[i]);
        let d = match diffs.last() {
            None => {
                let entries = (0..rows * cols)
                    .map(|_| {
                        let coeffs = (0..n)
                            .map(|_| Integer::from(sparse_small(&mut rng)))
                            .collect();
                        GroupRingElement::from_coeffs(group, coeffs)
                    })
                    .collect();
                GroupRingMatrix::from_entries(group, rows, cols, entries)?
            }
            Some(prev) => {
                let k = kernel(&prev.expand());
                let columns: Vec<Vec<Integer>> = (0..cols)
                    .map(|_| {
                        let mut v = vec![Integer::from(0); rows * n];
                        for c in 0..k.cols() {
                            let s = Integer::from(sparse_small(&mut rng));
                            if !s.is_zero() {
                                for (r, x) in v.iter_mut().enumerate() {
                                    *x += &(&k[(r, c)] * &s);
                                }
                            }
                        }
                        v
                    })
                    .collect();
                GroupRingMatrix::from_column_vectors(
                    group,
                    rows,
                    &IntMatrix::from_columns(rows * n, &columns),
                )
            }
        };
        diffs.push(d);
    }
    FreeChainComplex::new(group, 0, ranks.to_vec(), diffs)
}

// mostly zero, otherwise ±1 or ±2
fn sparse_small(rng: &mut ChaCha8Rng) -> i64 {
    match rng.gen_range(0..10) {
        0 => 1,
        1 => -1,
        2 => 2,
        3 => -2,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::AbelianInvariants;

    #[test]
    fn circle() {
        let c = lens_complex(2, 1).unwrap();
        assert_eq!(c.homology(0).unwrap(), AbelianInvariants::free(1));
        assert_eq!(c.homology(1).unwrap(), AbelianInvariants::free(1));
    }

    #[test]
    fn three_sphere() {
        let c = lens_complex(3, 2).unwrap();
        let h: Vec<_> = (0..=3).map(|i| c.homology(i).unwrap()).collect();
        assert_eq!(h[0], AbelianInvariants::free(1));
        assert!(h[1].is_trivial() && h[2].is_trivial());
        assert_eq!(h[3], AbelianInvariants::free(1));
        for i in [0, 3] {
            assert!(c.homology_module(i).unwrap().has_trivial_action());
        }
    }

    #[test]
    fn torus() {
        let c = product_complex(2, &[1, 1]).unwrap();
        assert_eq!(
            (0..=2).map(|i| c.rank(i)).collect::<Vec<_>>(),
            vec![1, 2, 1]
        );
        let free: Vec<_> = (0..=2)
            .map(|i| c.homology(i).unwrap().free_rank())
            .collect();
        assert_eq!(free, vec![1, 2, 1]);
        assert!(c.homology_module(1).unwrap().has_trivial_action());
    }

    #[test]
    fn circle_times_three_sphere() {
        let c = product_complex(2, &[1, 2]).unwrap();
        let support: Vec<i32> = (0..=4)
            .filter(|&i| !c.homology(i).unwrap().is_trivial())
            .collect();
        assert_eq!(support, vec![0, 1, 3, 4]);
    }

    #[test]
    fn random_is_seeded() {
        let g = ElementaryAbelianGroup::new(2, 2).unwrap();
        let a = random_free_complex(g, &[2, 3, 2, 1], 7).unwrap();
        assert_eq!(a, random_free_complex(g, &[2, 3, 2, 1], 7).unwrap());
        assert_ne!(a, random_free_complex(g, &[2, 3, 2, 1], 8).unwrap());
    }

    #[test]
    fn random_has_nonzero_later_differentials() {
        let g = ElementaryAbelianGroup::cyclic(3).unwrap();
        let nonzero = (0..10)
            .filter(|&s| {
                !random_free_complex(g, &[1, 2, 2], s)
                    .unwrap()
                    .differential(2)
                    .is_zero()
            })
            .count();
        assert!(nonzero > 0);
    }

    #[test]
    fn empty_ranks() {
        let g = ElementaryAbelianGroup::cyclic(2).unwrap();
        assert!(matches!(
            random_free_complex(g, &[], 0),
            Err(Error::InfeasibleRanks(_))
        ));
    }
}
