//! Smith normal form.
//!
//! [`smith_normal_form`] is the dense routine that also returns the unimodular
//! transforms. [`elementary_divisors`] computes only the diagonal on sparse rows
//! and is the workhorse behind every invariant computation.

use super::sparse::{rows_of, SparseRow};
use super::{IntMatrix, Integer};

/// `U * A * V = S` with `U`, `V` unimodular and `S` diagonal, `s_1 | s_2 | ...`, `s_i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<Integer> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

struct Dense {
    s: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Dense {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.s.cols() {
            let t = self.s[(a, j)].clone();
            self.s[(a, j)] = std::mem::take(&mut self.s[(b, j)]);
            self.s[(b, j)] = t;
        }
        for j in 0..self.u.cols() {
            let t = self.u[(a, j)].clone();
            self.u[(a, j)] = std::mem::take(&mut self.u[(b, j)]);
            self.u[(b, j)] = t;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.s.rows() {
            let t = self.s[(i, a)].clone();
            self.s[(i, a)] = std::mem::take(&mut self.s[(i, b)]);
            self.s[(i, b)] = t;
        }
        for i in 0..self.v.rows() {
            let t = self.v[(i, a)].clone();
            self.v[(i, a)] = std::mem::take(&mut self.v[(i, b)]);
            self.v[(i, b)] = t;
        }
    }

    /// row `dst` -= q * row `src`
    fn row_op(&mut self, dst: usize, src: usize, q: &Integer) {
        for j in 0..self.s.cols() {
            let x = self.s[(src, j)].clone();
            if !x.is_zero() {
                self.s[(dst, j)].sub_mul_assign(q, &x);
            }
        }
        for j in 0..self.u.cols() {
            let x = self.u[(src, j)].clone();
            if !x.is_zero() {
                self.u[(dst, j)].sub_mul_assign(q, &x);
            }
        }
    }

    /// column `dst` -= q * column `src`
    fn col_op(&mut self, dst: usize, src: usize, q: &Integer) {
        for i in 0..self.s.rows() {
            let x = self.s[(i, src)].clone();
            if !x.is_zero() {
                self.s[(i, dst)].sub_mul_assign(q, &x);
            }
        }
        for i in 0..self.v.rows() {
            let x = self.v[(i, src)].clone();
            if !x.is_zero() {
                self.v[(i, dst)].sub_mul_assign(q, &x);
            }
        }
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.s.rows() {
            for j in t..self.s.cols() {
                let x = &self.s[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.cmp_abs(&self.s[(bi, bj)]).is_lt()) {
                    best = Some((i, j));
                    if x.is_unit() {
                        return best;
                    }
                }
            }
        }
        best
    }
}

/// Smith normal form with transforms, pivoting on the smallest-magnitude entry.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Dense {
        s: a.clone(),
        u: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
    };
    for t in 0..m.min(n) {
        let Some((pi, pj)) = w.smallest_in_block(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if !w.s[(i, t)].is_zero() {
                    let q = w.s[(i, t)].div_round(&w.s[(t, t)]);
                    w.row_op(i, t, &q);
                    dirty |= !w.s[(i, t)].is_zero();
                }
            }
            for j in t + 1..n {
                if !w.s[(t, j)].is_zero() {
                    let q = w.s[(t, j)].div_round(&w.s[(t, t)]);
                    w.col_op(j, t, &q);
                    dirty |= !w.s[(t, j)].is_zero();
                }
            }
            if dirty {
                // a remainder smaller than the pivot survived: move it into the pivot slot
                let mut best = (t, t);
                for i in t + 1..m {
                    if !w.s[(i, t)].is_zero() && w.s[(i, t)].cmp_abs(&w.s[best]).is_lt() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !w.s[(t, j)].is_zero() && w.s[(t, j)].cmp_abs(&w.s[best]).is_lt() {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            // pivot isolated; enforce divisibility of the remaining block
            let pivot = w.s[(t, t)].clone();
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !pivot.divides(&w.s[(i, j)]));
            match offender {
                Some((i, _)) => w.row_op(t, i, &Integer::from(-1)),
                None => break,
            }
        }
        if w.s[(t, t)].is_negative() {
            for j in 0..n {
                w.s[(t, j)] = -&w.s[(t, j)];
            }
            for j in 0..m {
                w.u[(t, j)] = -&w.u[(t, j)];
            }
        }
    }
    SmithForm {
        u: w.u,
        s: w.s,
        v: w.v,
    }
}

/// The nonzero Smith diagonal of `a`, in divisibility order, computed without transforms.
pub fn elementary_divisors(a: &IntMatrix) -> Vec<Integer> {
    let mut rows: Vec<SparseRow> = rows_of(a).into_iter().filter(|r| !r.is_empty()).collect();
    let mut diag = Vec::new();
    while let Some((pr, pc)) = choose_pivot(&rows) {
        let mut pr = pr;
        let mut pc = pc;
        loop {
            // clear column pc below/above using rows; track smallest remainder
            let pivot_row = rows[pr].clone();
            let pv = pivot_row.get(pc).unwrap().clone();
            let mut next: Option<(usize, Integer)> = None;
            for (i, row) in rows.iter_mut().enumerate() {
                if i == pr {
                    continue;
                }
                if let Some(x) = row.get(pc) {
                    let q = x.div_round(&pv);
                    row.sub_scaled(&q, &pivot_row);
                    if let Some(r) = row.get(pc) {
                        if next.as_ref().is_none_or(|(_, b)| r.cmp_abs(b).is_lt()) {
                            next = Some((i, r.clone()));
                        }
                    }
                }
            }
            if let Some((i, _)) = next {
                pr = i;
                continue;
            }
            // column pc now only meets row pr; column operations touch row pr alone
            let mut smaller: Option<(usize, Integer)> = None;
            let mut reduced = Vec::with_capacity(rows[pr].len());
            for (j, x) in &rows[pr].entries {
                if *j == pc {
                    reduced.push((*j, x.clone()));
                    continue;
                }
                let q = x.div_round(&pv);
                let mut r = x.clone();
                r.sub_mul_assign(&q, &pv);
                if !r.is_zero() {
                    if smaller.as_ref().is_none_or(|(_, b)| r.cmp_abs(b).is_lt()) {
                        smaller = Some((*j, r.clone()));
                    }
                    reduced.push((*j, r));
                }
            }
            rows[pr].entries = reduced;
            match smaller {
                Some((j, _)) => pc = j,
                None => break,
            }
        }
        let row = rows.swap_remove(pr);
        diag.push(row.entries[0].1.abs());
        rows.retain(|r| !r.is_empty());
    }
    normalize_divisibility(diag)
}

/// Rank of `a` over the rationals.
pub fn rank(a: &IntMatrix) -> usize {
    elementary_divisors(a).len()
}

fn choose_pivot(rows: &[SparseRow]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, &Integer, usize)> = None;
    for (i, row) in rows.iter().enumerate() {
        for (j, x) in &row.entries {
            let better = match best {
                None => true,
                Some((_, _, b, len)) => match x.cmp_abs(b) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Equal => row.len() < len,
                    std::cmp::Ordering::Greater => false,
                },
            };
            if better {
                best = Some((i, *j, x, row.len()));
            }
        }
        if let Some((_, _, b, len)) = best {
            if b.is_unit() && len <= 1 {
                break;
            }
        }
    }
    best.map(|(i, j, _, _)| (i, j))
}

/// Turns a list of nonzero diagonal entries into the divisibility chain of the
/// isomorphic diagonal matrix, using `diag(a, b) ~ diag(gcd, lcm)`.
pub(crate) fn normalize_divisibility(mut d: Vec<Integer>) -> Vec<Integer> {
    for x in &mut d {
        *x = x.abs();
    }
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            if !d[i].divides(&d[j]) {
                let g = d[i].gcd(&d[j]);
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d
}

/// Determinant by fraction-free elimination (Bareiss).
pub(crate) fn determinant(a: &IntMatrix) -> Integer {
    let n = a.rows();
    let mut m = a.clone();
    let mut sign = 1i32;
    let mut prev = Integer::one();
    for k in 0..n {
        if m[(k, k)].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Integer::zero();
            };
            for j in 0..n {
                let t = m[(k, j)].clone();
                m[(k, j)] = m[(i, j)].clone();
                m[(i, j)] = t;
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[(i, j)] * &m[(k, k)]) - &(&m[(i, k)] * &m[(k, j)]);
                m[(i, j)] = num
                    .checked_exact_div(&prev)
                    .expect("Bareiss division is exact");
            }
        }
        prev = m[(k, k)].clone();
    }
    if n == 0 {
        return Integer::one();
    }
    let d = m[(n - 1, n - 1)].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(a);
        assert_eq!(&(&f.u * a) * &f.v, f.s);
        assert!(f.u.determinant().is_unit());
        assert!(f.v.determinant().is_unit());
        let d = f.diagonal();
        for w in d.windows(2) {
            assert!(w[0].divides(&w[1]), "chain broken: {d:?}");
        }
        for (i, j, _) in f.s.nonzeros() {
            assert_eq!(i, j);
        }
        assert!(d.iter().all(|x| !x.is_negative()));
        f
    }

    #[test]
    fn identity_is_fixed() {
        let f = check(&IntMatrix::identity(2));
        assert_eq!(f.s, IntMatrix::identity(2));
        assert_eq!(f.u, IntMatrix::identity(2));
        assert_eq!(f.v, IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        let f = check(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(f.diagonal(), vec![Integer::from(2), Integer::from(4)]);
    }

    #[test]
    fn zero_matrix() {
        let z = IntMatrix::zeros(2, 3);
        let f = check(&z);
        assert_eq!(f.s, z);
        assert_eq!(f.u, IntMatrix::identity(2));
        assert_eq!(f.v, IntMatrix::identity(3));
    }

    #[test]
    fn divisibility_needs_fixing() {
        // diag(2,3) ~ diag(1,6)
        let f = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(f.diagonal(), vec![Integer::from(1), Integer::from(6)]);
        assert_eq!(
            elementary_divisors(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]])),
            vec![Integer::from(1), Integer::from(6)]
        );
    }

    #[test]
    fn sparse_diagonal_matches_dense() {
        let a = IntMatrix::from_rows(&[
            vec![3, 1, 4, 1],
            vec![5, 9, 2, 6],
            vec![5, 3, 5, 8],
            vec![8, 4, 6, 2],
            vec![2, 0, 0, 4],
        ]);
        let dense: Vec<Integer> = check(&a)
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_zero())
            .collect();
        assert_eq!(elementary_divisors(&a), dense);
    }

    #[test]
    fn bareiss_determinant() {
        let a = IntMatrix::from_rows(&[vec![0, 2, 1], vec![1, 0, 3], vec![4, 1, 0]]);
        // 0*(0-3) - 2*(0-12) + 1*(1-0) = 25
        assert_eq!(a.determinant(), Integer::from(25));
    }
}
