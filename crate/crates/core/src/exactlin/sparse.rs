//! Sparse integer rows, the working representation of every elimination routine.

use super::{IntMatrix, Integer};

/// Sparse vector with entries sorted by index and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct SparseRow {
    pub(crate) entries: Vec<(usize, Integer)>,
}

impl SparseRow {
    pub(crate) fn from_dense(values: &[Integer]) -> Self {
        SparseRow {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect(),
        }
    }

    pub(crate) fn unit(index: usize) -> Self {
        SparseRow {
            entries: vec![(index, Integer::one())],
        }
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn len(&self) -> usize {
        self.entries.len()
    }

    pub(crate) fn get(&self, index: usize) -> Option<&Integer> {
        self.entries
            .binary_search_by_key(&index, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub(crate) fn leading(&self) -> Option<(usize, &Integer)> {
        self.entries.first().map(|(j, v)| (*j, v))
    }

    /// `self -= q * other`.
    pub(crate) fn sub_scaled(&mut self, q: &Integer, other: &SparseRow) {
        if q.is_zero() || other.is_empty() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ja, _)), Some((jb, _))) if ja < jb => out.push(a.next().unwrap()),
                (Some((ja, _)), Some((jb, _))) if ja > jb => {
                    let (j, v) = b.next().unwrap();
                    out.push((*j, -&(q * v)));
                }
                (Some(_), Some(_)) => {
                    let (j, mut v) = a.next().unwrap();
                    let (_, w) = b.next().unwrap();
                    v.sub_mul_assign(q, w);
                    if !v.is_zero() {
                        out.push((j, v));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, v) = b.next().unwrap();
                    out.push((*j, -&(q * v)));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub(crate) fn negate(&mut self) {
        for (_, v) in &mut self.entries {
            *v = -&*v;
        }
    }

    pub(crate) fn to_dense(&self, len: usize) -> Vec<Integer> {
        let mut v = vec![Integer::zero(); len];
        for (j, x) in &self.entries {
            v[*j] = x.clone();
        }
        v
    }
}

pub(crate) fn rows_of(m: &IntMatrix) -> Vec<SparseRow> {
    (0..m.rows())
        .map(|i| SparseRow::from_dense(m.row(i)))
        .collect()
}

pub(crate) fn columns_of(m: &IntMatrix) -> Vec<SparseRow> {
    let mut cols = vec![SparseRow::default(); m.cols()];
    for (i, j, v) in m.nonzeros() {
        cols[j].entries.push((i, v.clone()));
    }
    cols
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> SparseRow {
        let dense: Vec<Integer> = v.iter().map(|&x| Integer::from(x)).collect();
        SparseRow::from_dense(&dense)
    }

    #[test]
    fn sub_scaled_merges_and_cancels() {
        let mut a = row(&[1, 0, 2, 0, 3]);
        let b = row(&[0, 1, 1, 0, 1]);
        a.sub_scaled(&Integer::from(2), &b);
        assert_eq!(a.to_dense(5), row(&[1, -2, 0, 0, 1]).to_dense(5));
        assert_eq!(a.len(), 3);
        assert_eq!(a.get(2), None);
    }
}
