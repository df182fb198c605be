//! Complete resolutions of `Z` over `Z[(Z/p)^r]`, free covers of presented
//! modules, syzygies and lifting of chain maps out of free resolutions.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::exactlin::{image_basis, kernel, solve_preimage, IntMatrix, LinalgError};
use crate::groupring::{full_norm, ElementaryAbelianGroup, GroupRingElement, GroupRingMatrix};
use crate::modpres::{free_actions, tensor_complex, FreeChainComplex, ModulePresentation};

/// A window `[lo, hi]` of a complete resolution of `Z`.
///
/// Stored as a free complex with validity window `(lo, hi)`: exactness holds at
/// every interior degree, and cochains `Hom_G(F_i, M)` are available for
/// `lo <= i <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteResolutionWindow {
    complex: FreeChainComplex,
    augmentation: IntMatrix,
}

impl CompleteResolutionWindow {
    pub fn group(&self) -> ElementaryAbelianGroup {
        self.complex.group()
    }

    pub fn lo(&self) -> i32 {
        self.complex.lo()
    }

    pub fn hi(&self) -> i32 {
        self.complex.hi()
    }

    pub fn rank(&self, degree: i32) -> usize {
        self.complex.rank(degree)
    }

    /// `d_degree`, for `lo < degree <= hi`.
    pub fn differential(&self, degree: i32) -> GroupRingMatrix {
        assert!(
            degree > self.lo() && degree <= self.hi(),
            "degree {degree} outside window"
        );
        self.complex.differential(degree)
    }

    /// The underlying truncated complex (carries its validity window).
    pub fn complex(&self) -> &FreeChainComplex {
        &self.complex
    }

    /// `ε : F_0 -> Z` on the expanded basis of `F_0`: every group element goes to 1.
    pub fn augmentation(&self) -> &IntMatrix {
        &self.augmentation
    }

    /// Whether the expanded window is exact at every interior degree.
    pub fn is_exact(&self) -> bool {
        (self.lo() + 1..self.hi()).all(|i| self.complex.homology(i).is_ok_and(|h| h.is_trivial()))
    }
}

/// The augmentation row `Z[G]^k -> Z`.
pub fn augmentation_row(group: ElementaryAbelianGroup, k: usize) -> IntMatrix {
    IntMatrix::from_rows(&[vec![1i64; k * group.order()]])
}

/// The 2-periodic complete resolution of `Z` over `Z[Z/p]` in degrees `[lo, hi]`:
/// `d_i = g - 1` for odd `i` and the norm for even `i`.
pub fn periodic_complete_resolution(p: u32, lo: i32, hi: i32) -> Result<CompleteResolutionWindow> {
    assert!(lo <= hi);
    let g = ElementaryAbelianGroup::cyclic(p)?;
    let diffs = (lo + 1..=hi)
        .map(|i| GroupRingMatrix::scalar(periodic_entry(g, i)))
        .collect();
    let ranks = vec![1; (hi - lo + 1) as usize];
    Ok(CompleteResolutionWindow {
        complex: FreeChainComplex::new(g, lo, ranks, diffs)?.with_window(lo, hi),
        augmentation: augmentation_row(g, 1),
    })
}

fn periodic_entry(g: ElementaryAbelianGroup, degree: i32) -> GroupRingElement {
    if degree.rem_euclid(2) == 1 {
        GroupRingElement::generator_minus_one(g, 0).unwrap()
    } else {
        full_norm(g)
    }
}

type Cache = RwLock<HashMap<ElementaryAbelianGroup, Arc<FreeChainComplex>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Free resolution of `Z` in degrees `0..=length`: the Koszul tensor product of
/// the periodic resolutions of the cyclic factors.
///
/// The rank in degree `n` is the number of degree-`n` monomials in `r`
/// variables. The result carries the window `(-1, length)`: `H_0 = Z` and the
/// complex is exact in degrees `1..length`.
pub fn positive_resolution(group: ElementaryAbelianGroup, length: usize) -> FreeChainComplex {
    assert!(length >= 1);
    if let Some(c) = cache().read().unwrap().get(&group) {
        if c.hi() >= length as i32 {
            return c
                .restricted(0, length as i32)
                .with_window(-1, length as i32);
        }
    }
    let factor = ElementaryAbelianGroup::cyclic(group.prime()).unwrap();
    let periodic = FreeChainComplex::new(
        factor,
        0,
        vec![1; length + 1],
        (1..=length as i32)
            .map(|i| GroupRingMatrix::scalar(periodic_entry(factor, i)))
            .collect(),
    )
    .unwrap();
    let mut acc = periodic.clone();
    for _ in 1..group.rank() {
        // tensoring truncated pieces is exact below `length`; cut back each time
        acc = tensor_complex(&acc, &periodic)
            .unwrap()
            .restricted(0, length as i32);
    }
    let acc = acc.restricted(0, length as i32);
    debug_assert_eq!(acc.group(), group);
    let mut w = cache().write().unwrap();
    let keep = w.get(&group).is_none_or(|c| c.hi() < acc.hi());
    if keep {
        w.insert(group, Arc::new(acc.clone()));
    }
    acc.with_window(-1, length as i32)
}

/// Complete resolution window `[lo, hi]`, spliced from the positive resolution
/// and its dual: `F_{-n} = F_{n-1}^*`, `d_{-n} = d_n^*` for `n >= 1`, and
/// `d_0 = η∘ε`, multiplication by the norm of `G`.
pub fn complete_resolution(
    group: ElementaryAbelianGroup,
    lo: i32,
    hi: i32,
) -> CompleteResolutionWindow {
    assert!(lo <= hi);
    let length = hi.max(-lo).max(1) as usize + 1;
    let pos = positive_resolution(group, length);
    let rank = |i: i32| {
        if i >= 0 {
            pos.rank(i)
        } else {
            pos.rank(-i - 1)
        }
    };
    let diff = |i: i32| {
        if i >= 1 {
            pos.differential(i)
        } else if i == 0 {
            GroupRingMatrix::scalar(full_norm(group))
        } else {
            pos.differential(-i).dual()
        }
    };
    let ranks = (lo..=hi).map(rank).collect();
    let diffs = (lo + 1..=hi).map(diff).collect();
    CompleteResolutionWindow {
        complex: FreeChainComplex::new(group, lo, ranks, diffs)
            .unwrap()
            .with_window(lo, hi),
        augmentation: augmentation_row(group, pos.rank(0)),
    }
}

/// One step of a free resolution: `0 -> K -> Z[G]^k -> M -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionStep {
    /// Rank of the free cover (the number of generators of `M`).
    pub k: usize,
    /// The cover on expanded bases: column `j*|G| + h` is `h` applied to generator `j`.
    pub cover: IntMatrix,
    /// Basis of the kernel lattice inside `Z^{k|G|}`, as columns.
    pub kernel_basis: IntMatrix,
    /// The kernel, presented on `kernel_basis` with no relations.
    pub kernel: ModulePresentation,
}

/// Covers `M` by the free module on all of its generators and presents the kernel.
///
/// A module presented exactly as `Z[G]^k` is covered by itself, with zero kernel.
pub fn resolution_step(m: &ModulePresentation) -> Result<ResolutionStep> {
    m.validate().map_err(Error::InvalidPresentation)?;
    let group = m.group();
    let n = group.order();
    if m.is_z_free()
        && m.gens().is_multiple_of(n)
        && m.actions() == free_actions(group, m.gens() / n).as_slice()
    {
        let k = m.gens() / n;
        return Ok(ResolutionStep {
            k,
            cover: IntMatrix::identity(k * n),
            kernel_basis: IntMatrix::zeros(k * n, 0),
            kernel: ModulePresentation::zero(group),
        });
    }
    let k = m.gens();
    let table = m.element_actions();
    let mut cover = IntMatrix::zeros(k, k * n);
    for j in 0..k {
        for (h, a) in table.iter().enumerate() {
            for i in 0..k {
                cover[(i, j * n + h)] = a[(i, j)].clone();
            }
        }
    }
    // x is in the kernel when cover(x) lies in the relation lattice
    let stacked = cover.hcat(&m.relations().neg());
    let projected = kernel(&stacked).select_rows(0..k * n);
    let basis = if projected.cols() == 0 {
        IntMatrix::zeros(k * n, 0)
    } else {
        image_basis(&projected)
    };
    let actions = free_actions(group, k)
        .iter()
        .map(|a| solve_preimage(&basis, &(a * &basis)))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let kernel = ModulePresentation::new(
        group,
        basis.cols(),
        IntMatrix::zeros(basis.cols(), 0),
        actions,
    )?;
    debug_assert!(kernel.validate().is_ok());
    Ok(ResolutionStep {
        k,
        cover,
        kernel_basis: basis,
        kernel,
    })
}

/// `Ω^n M`, the kernel after `n` resolution steps; `Ω^0 M = M`.
pub fn syzygy(m: &ModulePresentation, n: usize) -> Result<ModulePresentation> {
    let mut cur = m.clone();
    if n == 0 {
        cur.validate().map_err(Error::InvalidPresentation)?;
    }
    for _ in 0..n {
        cur = resolution_step(&cur)?.kernel;
    }
    Ok(cur)
}

/// A partial free resolution `F_{len-1} -> ... -> F_0 -> M -> 0`, indexed from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialResolution {
    /// The free complex in degrees `0..len`.
    pub complex: FreeChainComplex,
    /// The cover `F_0 -> M` on expanded bases.
    pub cover: IntMatrix,
    /// The kernel of the top differential (or of the cover when `len == 1`), `Ω^len M`.
    pub top_kernel: ModulePresentation,
    /// Basis of that kernel inside the expanded top module.
    pub top_kernel_basis: IntMatrix,
}

/// `len >= 1` resolution steps of `M`, assembled into a free complex.
pub fn partial_resolution(m: &ModulePresentation, len: usize) -> Result<PartialResolution> {
    assert!(len >= 1);
    let group = m.group();
    let first = resolution_step(m)?;
    let mut ranks = vec![first.k];
    let mut diffs = Vec::new();
    let cover = first.cover.clone();
    let mut step = first;
    for _ in 1..len {
        let next = resolution_step(&step.kernel)?;
        // generator t of the new free module goes to kernel basis vector t
        diffs.push(GroupRingMatrix::from_column_vectors(
            group,
            step.k,
            &step.kernel_basis,
        ));
        ranks.push(next.k);
        step = next;
    }
    Ok(PartialResolution {
        complex: FreeChainComplex::new(group, 0, ranks, diffs)?,
        cover,
        top_kernel: step.kernel,
        top_kernel_basis: step.kernel_basis,
    })
}

/// Lifts the identity of `H_m(C)` to a chain map from a partial resolution.
///
/// `f` is a partial resolution of `homology_module(C, m)` (so its generators
/// are the cycle basis of `C_m`), placed in degrees `m..m+len`. Returns
/// `f_m, ..., f_{m+len-1}` with `f_m` sending generator `j` to cycle `j` and
/// `∂ f_{i+1} = f_i ∂`.
pub fn lift_chain_map(
    f: &FreeChainComplex,
    c: &FreeChainComplex,
    m: i32,
) -> Result<Vec<GroupRingMatrix>> {
    let group = c.group();
    let len = f.hi() - f.lo() + 1;
    let cycles = c.cycle_basis(m);
    if cycles.cols() != f.rank(f.lo()) {
        return Err(Error::LiftObstruction { degree: m });
    }
    let mut maps = vec![GroupRingMatrix::from_column_vectors(
        group,
        c.rank(m),
        &cycles,
    )];
    for s in 1..len {
        let i = m + s;
        let prev = &maps[s as usize - 1];
        let target = prev.multiply(&f.differential(f.lo() + s))?;
        let x =
            solve_preimage(&c.expanded_differential(i), &target.column_vectors()).map_err(|e| {
                match e {
                    LinalgError::NoSolution { .. } => Error::LiftObstruction { degree: i },
                    other => other.into(),
                }
            })?;
        maps.push(GroupRingMatrix::from_column_vectors(group, c.rank(i), &x));
    }
    Ok(maps)
}
