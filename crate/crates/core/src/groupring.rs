//! The elementary abelian group `(Z/p)^r`, its integral group ring, matrices over
//! the group ring, and their expansion to integer matrices through the
//! left-regular representation.
//!
//! Group elements are exponent vectors in `{0..p-1}^r`, indexed lexicographically
//! with the first coordinate most significant. Every matrix in the crate refers to
//! this order implicitly.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{IntMatrix, Integer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("group ring elements over different groups: {0} vs {1}")]
    GroupMismatch(ElementaryAbelianGroup, ElementaryAbelianGroup),
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: u32 },
    #[error("shape mismatch: {0:?} vs {1:?}")]
    ShapeMismatch((usize, usize), (usize, usize)),
    #[error("products of groups with different primes {0} and {1}")]
    PrimeMismatch(u32, u32),
}

/// `(Z/p)^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementaryAbelianGroup {
    p: u32,
    rank: u32,
}

impl ElementaryAbelianGroup {
    pub fn new(p: u32, rank: u32) -> Result<Self, GroupError> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(GroupError::NotPrime(p));
        }
        if rank == 0 {
            return Err(GroupError::ZeroRank);
        }
        Ok(ElementaryAbelianGroup { p, rank })
    }

    /// The cyclic group of order `p`.
    pub fn cyclic(p: u32) -> Result<Self, GroupError> {
        Self::new(p, 1)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.rank)
    }

    pub fn exponents(&self, index: usize) -> Vec<u32> {
        let mut v = vec![0; self.rank as usize];
        let mut x = index;
        for slot in v.iter_mut().rev() {
            *slot = (x % self.p as usize) as u32;
            x /= self.p as usize;
        }
        v
    }

    pub fn index_of(&self, exponents: &[u32]) -> usize {
        assert_eq!(exponents.len(), self.rank as usize);
        exponents
            .iter()
            .fold(0, |acc, &e| acc * self.p as usize + (e % self.p) as usize)
    }

    /// Index of the `i`-th generator (0-based).
    pub fn generator(&self, i: usize) -> Result<usize, GroupError> {
        if i >= self.rank as usize {
            return Err(GroupError::IndexOutOfRange {
                index: i,
                rank: self.rank,
            });
        }
        Ok((self.p as usize).pow(self.rank - 1 - i as u32))
    }

    /// Index of the product of two elements.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.p as usize;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.rank {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        let p = self.p as usize;
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.rank {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    /// `G x H` with the coordinates of `self` first; index of `(g, h)` is `g * |H| + h`.
    pub fn product(&self, other: &ElementaryAbelianGroup) -> Result<Self, GroupError> {
        if self.p != other.p {
            return Err(GroupError::PrimeMismatch(self.p, other.p));
        }
        Ok(ElementaryAbelianGroup {
            p: self.p,
            rank: self.rank + other.rank,
        })
    }
}

impl fmt::Display for ElementaryAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank == 1 {
            write!(f, "Z/{}", self.p)
        } else {
            write!(f, "(Z/{})^{}", self.p, self.rank)
        }
    }
}

/// An element of `Z[G]`: one integer coefficient per group element.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupRingElement {
    group: ElementaryAbelianGroup,
    coeffs: Vec<Integer>,
}

impl GroupRingElement {
    pub fn zero(group: ElementaryAbelianGroup) -> Self {
        GroupRingElement {
            group,
            coeffs: vec![Integer::zero(); group.order()],
        }
    }

    pub fn one(group: ElementaryAbelianGroup) -> Self {
        Self::basis(group, 0)
    }

    /// The group element with the given index, as a ring element.
    pub fn basis(group: ElementaryAbelianGroup, index: usize) -> Self {
        let mut e = Self::zero(group);
        e.coeffs[index] = Integer::one();
        e
    }

    pub fn from_coeffs(group: ElementaryAbelianGroup, coeffs: Vec<Integer>) -> Self {
        assert_eq!(
            coeffs.len(),
            group.order(),
            "one coefficient per group element"
        );
        GroupRingElement { group, coeffs }
    }

    pub fn from_i64s(group: ElementaryAbelianGroup, coeffs: &[i64]) -> Self {
        Self::from_coeffs(group, coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    /// `g_i - 1` for the `i`-th generator.
    pub fn generator_minus_one(
        group: ElementaryAbelianGroup,
        i: usize,
    ) -> Result<Self, GroupError> {
        let g = group.generator(i)?;
        let mut e = Self::basis(group, g);
        e.coeffs[0] -= &Integer::one();
        Ok(e)
    }

    pub fn group(&self) -> ElementaryAbelianGroup {
        self.group
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn coeff(&self, index: usize) -> &Integer {
        &self.coeffs[index]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Integer::is_zero)
    }

    /// Sum of coefficients (the augmentation `Z[G] -> Z`).
    pub fn augmentation(&self) -> Integer {
        self.coeffs.iter().sum()
    }

    /// `g -> g^{-1}` on coefficients.
    pub fn antipode(&self) -> Self {
        let mut coeffs = vec![Integer::zero(); self.coeffs.len()];
        for (g, c) in self.coeffs.iter().enumerate() {
            coeffs[self.group.inverse(g)] = c.clone();
        }
        GroupRingElement {
            group: self.group,
            coeffs,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, GroupError> {
        self.check_group(other)?;
        Ok(self.add_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        GroupRingElement {
            group: self.group,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            group: self.group,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: &Integer) -> Self {
        GroupRingElement {
            group: self.group,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Convolution product.
    pub fn ring_multiply(&self, other: &Self) -> Result<Self, GroupError> {
        self.check_group(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = vec![Integer::zero(); self.coeffs.len()];
        for (g, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (h, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[self.group.mul(g, h)] += &(a * b);
                }
            }
        }
        GroupRingElement {
            group: self.group,
            coeffs: out,
        }
    }

    /// The element `a ⊗ b` of `Z[G x H] = Z[G] ⊗ Z[H]`.
    pub fn tensor(&self, other: &Self) -> Result<Self, GroupError> {
        let group = self.group.product(&other.group)?;
        let n = other.coeffs.len();
        let mut coeffs = vec![Integer::zero(); group.order()];
        for (g, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (h, b) in other.coeffs.iter().enumerate() {
                coeffs[g * n + h] = a * b;
            }
        }
        Ok(GroupRingElement { group, coeffs })
    }

    /// Matrix of left multiplication on `Z[G]` in the group-element basis:
    /// entry `(k, h)` is the coefficient of `k h^{-1}`.
    pub fn left_regular_matrix(&self) -> IntMatrix {
        let n = self.coeffs.len();
        let mut m = IntMatrix::zeros(n, n);
        for h in 0..n {
            for (g, a) in self.coeffs.iter().enumerate() {
                if !a.is_zero() {
                    m[(self.group.mul(g, h), h)] = a.clone();
                }
            }
        }
        m
    }

    fn check_group(&self, other: &Self) -> Result<(), GroupError> {
        if self.group != other.group {
            return Err(GroupError::GroupMismatch(self.group, other.group));
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

/// The norm `1 + g_i + ... + g_i^{p-1}` of the `i`-th cyclic factor (0-based).
pub fn norm_element(
    group: ElementaryAbelianGroup,
    i: usize,
) -> Result<GroupRingElement, GroupError> {
    let g = group.generator(i)?;
    let mut e = GroupRingElement::zero(group);
    let mut x = 0;
    for _ in 0..group.prime() {
        e.coeffs[x] = Integer::one();
        x = group.mul(x, g);
    }
    Ok(e)
}

/// The sum of all group elements.
pub fn full_norm(group: ElementaryAbelianGroup) -> GroupRingElement {
    GroupRingElement::from_coeffs(group, vec![Integer::one(); group.order()])
}

/// Matrix over `Z[G]`, acting on column vectors of `Z[G]^cols`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupRingMatrix {
    group: ElementaryAbelianGroup,
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElement>,
}

impl GroupRingMatrix {
    pub fn zeros(group: ElementaryAbelianGroup, rows: usize, cols: usize) -> Self {
        GroupRingMatrix {
            group,
            rows,
            cols,
            entries: vec![GroupRingElement::zero(group); rows * cols],
        }
    }

    pub fn identity(group: ElementaryAbelianGroup, n: usize) -> Self {
        let mut m = Self::zeros(group, n, n);
        for i in 0..n {
            m.set(i, i, GroupRingElement::one(group));
        }
        m
    }

    pub fn scalar(element: GroupRingElement) -> Self {
        GroupRingMatrix {
            group: element.group(),
            rows: 1,
            cols: 1,
            entries: vec![element],
        }
    }

    pub fn from_entries(
        group: ElementaryAbelianGroup,
        rows: usize,
        cols: usize,
        entries: Vec<GroupRingElement>,
    ) -> Result<Self, GroupError> {
        if entries.len() != rows * cols {
            return Err(GroupError::ShapeMismatch((rows, cols), (entries.len(), 1)));
        }
        if let Some(e) = entries.iter().find(|e| e.group != group) {
            return Err(GroupError::GroupMismatch(group, e.group));
        }
        Ok(GroupRingMatrix {
            group,
            rows,
            cols,
            entries,
        })
    }

    pub fn group(&self) -> ElementaryAbelianGroup {
        self.group
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: GroupRingElement) {
        assert_eq!(value.group, self.group);
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[GroupRingElement] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GroupRingElement::is_zero)
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, GroupError> {
        if self.group != other.group {
            return Err(GroupError::GroupMismatch(self.group, other.group));
        }
        if self.cols != other.rows {
            return Err(GroupError::ShapeMismatch(
                (self.rows, self.cols),
                (other.rows, other.cols),
            ));
        }
        let mut out = Self::zeros(self.group, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] = out.entries[idx].add_unchecked(&a.mul_unchecked(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        if self.group != other.group {
            return Err(GroupError::GroupMismatch(self.group, other.group));
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(GroupError::ShapeMismatch(
                (self.rows, self.cols),
                (other.rows, other.cols),
            ));
        }
        Ok(GroupRingMatrix {
            group: self.group,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add_unchecked(b))
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        GroupRingMatrix {
            group: self.group,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(GroupRingElement::neg).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.group, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Transpose with the antipode applied entrywise: the matrix of the
    /// `Z`-dual map in the dual bases.
    pub fn dual(&self) -> Self {
        let mut out = Self::zeros(self.group, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).antipode());
            }
        }
        out
    }

    /// Replaces each entry by its left-regular block: a `(rows*|G|) x (cols*|G|)` integer matrix.
    pub fn expand(&self) -> IntMatrix {
        let n = self.group.order();
        let mut out = IntMatrix::zeros(self.rows * n, self.cols * n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if !e.is_zero() {
                    out.set_block(i * n, j * n, &e.left_regular_matrix());
                }
            }
        }
        out
    }

    /// Column `j` as an integer vector of length `rows*|G|` (the image of the `j`-th basis vector).
    pub fn column_vector(&self, j: usize) -> Vec<Integer> {
        (0..self.rows)
            .flat_map(|i| self.get(i, j).coeffs.iter().cloned())
            .collect()
    }

    /// Inverse of [`Self::column_vector`]: each column of `columns` (length `rows*|G|`)
    /// becomes one column of a group ring matrix.
    pub fn from_column_vectors(
        group: ElementaryAbelianGroup,
        rows: usize,
        columns: &IntMatrix,
    ) -> Self {
        let n = group.order();
        assert_eq!(columns.rows(), rows * n);
        let mut out = Self::zeros(group, rows, columns.cols());
        for j in 0..columns.cols() {
            for i in 0..rows {
                let coeffs = (0..n).map(|g| columns[(i * n + g, j)].clone()).collect();
                out.set(i, j, GroupRingElement::from_coeffs(group, coeffs));
            }
        }
        out
    }

    /// All columns as an integer matrix (`rows*|G| x cols`).
    pub fn column_vectors(&self) -> IntMatrix {
        let cols: Vec<Vec<Integer>> = (0..self.cols).map(|j| self.column_vector(j)).collect();
        IntMatrix::from_columns(self.rows * self.group.order(), &cols)
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut out = Self::zeros(a.group, a.rows + c.rows, a.cols + b.cols);
        for (src, r0, c0) in [
            (a, 0, 0),
            (b, 0, a.cols),
            (c, a.rows, 0),
            (d, a.rows, a.cols),
        ] {
            for i in 0..src.rows {
                for j in 0..src.cols {
                    out.set(r0 + i, c0 + j, src.get(i, j).clone());
                }
            }
        }
        out
    }
}

impl fmt::Debug for GroupRingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "GroupRingMatrix {}x{} over {} [",
            self.rows, self.cols, self.group
        )?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:?}", self.get(i, j)))
                .collect();
            writeln!(f, "  {}", row.join(" | "))?;
        }
        write!(f, "]")
    }
}
