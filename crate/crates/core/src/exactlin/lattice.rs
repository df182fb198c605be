//! Lattice operations on column spans: kernels, bases, preimages and quotients.

use super::smith::{elementary_divisors, normalize_divisibility};
use super::sparse::{columns_of, SparseRow};
use super::{AbelianInvariants, IntMatrix, Integer, LinalgError};

/// Echelon decomposition of the column lattice of `A` (m x n).
///
/// Column `k` of `A` is the `k`-th row of `A^T`; integer row operations on `A^T`
/// augmented by the identity give `T * A^T = E` with `E` in row echelon form.
/// Pivot rows of `E` form a basis of the column lattice of `A`; the transforms of
/// the zero rows form a basis of the kernel of `A`.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    m: usize,
    n: usize,
    /// (pivot coordinate, echelon row, transform row), sorted by pivot coordinate
    pivots: Vec<(usize, SparseRow, SparseRow)>,
    kernel: Vec<SparseRow>,
}

impl ColumnEchelon {
    pub fn new(a: &IntMatrix) -> Self {
        Self::with_kernel(a, true)
    }

    fn with_kernel(a: &IntMatrix, track: bool) -> Self {
        let (m, n) = (a.rows(), a.cols());
        let mut work: Vec<(SparseRow, SparseRow)> = columns_of(a)
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                (
                    c,
                    if track {
                        SparseRow::unit(k)
                    } else {
                        SparseRow::default()
                    },
                )
            })
            .collect();
        let mut pivots = Vec::new();
        let mut kernel = Vec::new();
        // peel off zero columns
        work.retain(|(e, t)| {
            if e.is_empty() {
                kernel.push(t.clone());
                false
            } else {
                true
            }
        });
        while !work.is_empty() {
            let col = work
                .iter()
                .filter_map(|(e, _)| e.leading().map(|(j, _)| j))
                .min()
                .unwrap();
            loop {
                // smallest leading entry at coordinate `col`, fewest nonzeros on ties
                let (best, _) = work
                    .iter()
                    .enumerate()
                    .filter_map(|(i, (e, _))| match e.leading() {
                        Some((j, v)) if j == col => Some((i, (v.clone(), e.len()))),
                        _ => None,
                    })
                    .min_by(|a, b| a.1 .0.cmp_abs(&b.1 .0).then(a.1 .1.cmp(&b.1 .1)))
                    .unwrap();
                let (pe, pt) = work[best].clone();
                let pv = pe.leading().unwrap().1.clone();
                let mut remaining = false;
                for (i, (e, t)) in work.iter_mut().enumerate() {
                    if i == best {
                        continue;
                    }
                    if let Some((j, v)) = e.leading() {
                        if j == col {
                            let q = v.div_round(&pv);
                            e.sub_scaled(&q, &pe);
                            if track {
                                t.sub_scaled(&q, &pt);
                            }
                            remaining |= e.leading().is_some_and(|(j, _)| j == col);
                        }
                    }
                }
                if !remaining {
                    let (mut e, mut t) = work.swap_remove(best);
                    if e.leading().unwrap().1.is_negative() {
                        e.negate();
                        t.negate();
                    }
                    pivots.push((col, e, t));
                    break;
                }
            }
            work.retain(|(e, t)| {
                if e.is_empty() {
                    kernel.push(t.clone());
                    false
                } else {
                    true
                }
            });
        }
        ColumnEchelon {
            m,
            n,
            pivots,
            kernel,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the column lattice, as columns of an `m x rank` matrix.
    pub fn image_basis(&self) -> IntMatrix {
        let cols: Vec<Vec<Integer>> = self
            .pivots
            .iter()
            .map(|(_, e, _)| e.to_dense(self.m))
            .collect();
        IntMatrix::from_columns(self.m, &cols)
    }

    /// Basis of the integer kernel, as columns of an `n x (n - rank)` matrix.
    pub fn kernel_basis(&self) -> IntMatrix {
        let cols: Vec<Vec<Integer>> = self.kernel.iter().map(|t| t.to_dense(self.n)).collect();
        IntMatrix::from_columns(self.n, &cols)
    }

    /// Solves `A x = b`; returns `None` when `b` is outside the column lattice.
    pub fn solve_column(&self, b: &[Integer]) -> Option<Vec<Integer>> {
        assert_eq!(b.len(), self.m);
        let mut rest = SparseRow::from_dense(b);
        let mut x = SparseRow::default();
        for (col, e, t) in &self.pivots {
            let Some(v) = rest.get(*col) else {
                continue;
            };
            if let Some((lead, _)) = rest.leading() {
                if lead < *col {
                    return None;
                }
            }
            let y = v.checked_exact_div(e.leading().unwrap().1)?;
            rest.sub_scaled(&y, e);
            x.sub_scaled(&-&y, t);
        }
        rest.is_empty().then(|| x.to_dense(self.n))
    }
}

/// Basis of the integer kernel `{x : A x = 0}`, as columns.
pub fn kernel(a: &IntMatrix) -> IntMatrix {
    ColumnEchelon::new(a).kernel_basis()
}

/// Basis of the column lattice of `A`.
pub fn image_basis(a: &IntMatrix) -> IntMatrix {
    ColumnEchelon::with_kernel(a, false).image_basis()
}

/// Solves `A X = B` over the integers.
pub fn solve_preimage(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    if a.rows() != b.rows() {
        return Err(LinalgError::ShapeMismatch {
            left: (a.rows(), a.cols()),
            right: (b.rows(), b.cols()),
        });
    }
    let ech = ColumnEchelon::new(a);
    solve_with(&ech, b)
}

pub(crate) fn solve_with(ech: &ColumnEchelon, b: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        match ech.solve_column(&b.column(j)) {
            Some(x) => cols.push(x),
            None => return Err(LinalgError::NoSolution { column: j }),
        }
    }
    Ok(IntMatrix::from_columns(ech.n, &cols))
}

/// Whether every column of `b` lies in the column lattice of `a`.
pub fn contains_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    let ech = ColumnEchelon::new(a);
    (0..b.cols()).all(|j| ech.solve_column(&b.column(j)).is_some())
}

/// Equality of the column lattices of `a` and `b`.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    contains_lattice(a, b) && contains_lattice(b, a)
}

/// Invariants of (column lattice of `K`) / (column lattice of `L`).
///
/// The columns of `K` need only generate the ambient lattice; a basis is extracted
/// first. Fails with [`LinalgError::SublatticeViolation`] when a column of `L`
/// escapes the lattice of `K`.
pub fn quotient_invariants(k: &IntMatrix, l: &IntMatrix) -> Result<AbelianInvariants, LinalgError> {
    let basis = image_basis(k);
    let ech = ColumnEchelon::new(&basis);
    let coords = solve_with(&ech, l).map_err(|e| match e {
        LinalgError::NoSolution { column } => LinalgError::SublatticeViolation { column },
        other => other,
    })?;
    let divisors = elementary_divisors(&coords);
    Ok(AbelianInvariants::from_diagonal(divisors, basis.cols()))
}

/// Cokernel `Z^m / (column lattice of L)`.
pub fn cokernel_invariants(l: &IntMatrix) -> AbelianInvariants {
    AbelianInvariants::from_diagonal(elementary_divisors(l), l.rows())
}

/// Homology `ker(out) / im(inc)` of free abelian groups with `out * inc = 0`,
/// read off the Smith diagonal of `inc` and the ranks.
pub fn free_homology(inc: &IntMatrix, out: &IntMatrix) -> AbelianInvariants {
    debug_assert_eq!(inc.rows(), out.cols());
    let dim = inc.rows();
    let d_in = elementary_divisors(inc);
    let r_out = if out.rows() == 0 || out.cols() == 0 {
        0
    } else {
        elementary_divisors(out).len()
    };
    let torsion: Vec<Integer> =
        normalize_divisibility(d_in.iter().filter(|d| !d.is_one()).cloned().collect());
    AbelianInvariants::new(torsion, dim - r_out - d_in.len())
}
