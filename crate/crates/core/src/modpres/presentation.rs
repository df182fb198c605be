use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{
    cokernel_invariants, image_basis, solve_preimage, AbelianInvariants, ColumnEchelon, IntMatrix,
};
use crate::groupring::{ElementaryAbelianGroup, GroupRingElement};

/// A failed module-presentation invariant, with the first offending column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    Shape(String),
    /// `actions[generator] * relations` leaves the relation lattice.
    NotWellDefined {
        generator: usize,
        column: usize,
    },
    /// `actions[i] * actions[j] - actions[j] * actions[i]` leaves the relation lattice.
    NotCommuting {
        i: usize,
        j: usize,
        column: usize,
    },
    /// `actions[generator]^p - 1` leaves the relation lattice.
    WrongOrder {
        generator: usize,
        column: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(s) => write!(f, "shape: {s}"),
            Violation::NotWellDefined { generator, column } => {
                write!(
                    f,
                    "action {generator} does not preserve relations (column {column})"
                )
            }
            Violation::NotCommuting { i, j, column } => {
                write!(f, "actions {i} and {j} do not commute (column {column})")
            }
            Violation::WrongOrder { generator, column } => {
                write!(
                    f,
                    "action {generator} does not have order p (column {column})"
                )
            }
        }
    }
}

/// A finitely generated `Z[G]`-module: `Z^gens / (column lattice of relations)`
/// with generator `i` of `G` acting by `actions[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModulePresentation {
    group: ElementaryAbelianGroup,
    gens: usize,
    relations: IntMatrix,
    actions: Vec<IntMatrix>,
}

impl ModulePresentation {
    /// Checks shapes only; call [`Self::validate`] for the module axioms.
    pub fn new(
        group: ElementaryAbelianGroup,
        gens: usize,
        relations: IntMatrix,
        actions: Vec<IntMatrix>,
    ) -> Result<Self> {
        let mut problems = Vec::new();
        if relations.rows() != gens {
            problems.push(Violation::Shape(format!(
                "relation matrix has {} rows, expected {gens}",
                relations.rows()
            )));
        }
        if actions.len() != group.rank() as usize {
            problems.push(Violation::Shape(format!(
                "{} action matrices for a group of rank {}",
                actions.len(),
                group.rank()
            )));
        }
        for (i, a) in actions.iter().enumerate() {
            if a.rows() != gens || a.cols() != gens {
                problems.push(Violation::Shape(format!(
                    "action {i} is {}x{}",
                    a.rows(),
                    a.cols()
                )));
            }
        }
        if !problems.is_empty() {
            return Err(Error::InvalidPresentation(problems));
        }
        Ok(ModulePresentation {
            group,
            gens,
            relations,
            actions,
        })
    }

    /// A `Z`-free module (no relations) with the given action matrices.
    pub fn lattice(group: ElementaryAbelianGroup, actions: Vec<IntMatrix>) -> Result<Self> {
        let gens = actions.first().map_or(0, IntMatrix::rows);
        Self::new(group, gens, IntMatrix::zeros(gens, 0), actions)
    }

    /// `Z` with trivial action.
    pub fn trivial(group: ElementaryAbelianGroup) -> Self {
        Self::trivial_of_rank(group, 1)
    }

    /// `Z^n` with trivial action.
    pub fn trivial_of_rank(group: ElementaryAbelianGroup, n: usize) -> Self {
        ModulePresentation {
            group,
            gens: n,
            relations: IntMatrix::zeros(n, 0),
            actions: vec![IntMatrix::identity(n); group.rank() as usize],
        }
    }

    pub fn zero(group: ElementaryAbelianGroup) -> Self {
        Self::trivial_of_rank(group, 0)
    }

    /// `Z[G]^k`: `k*|G|` generators permuted by the regular representation.
    pub fn free(group: ElementaryAbelianGroup, k: usize) -> Self {
        ModulePresentation {
            group,
            gens: k * group.order(),
            relations: IntMatrix::zeros(k * group.order(), 0),
            actions: free_actions(group, k),
        }
    }

    pub fn group(&self) -> ElementaryAbelianGroup {
        self.group
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.actions
    }

    /// True when the relation matrix is zero, so the module is `Z`-free on its generators.
    pub fn is_z_free(&self) -> bool {
        self.relations.is_zero()
    }

    /// Checks well-definedness, commutation and order `p` of the action modulo relations.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let ech = ColumnEchelon::new(&self.relations);
        let first_escape =
            |m: &IntMatrix| (0..m.cols()).find(|&j| ech.solve_column(&m.column(j)).is_none());
        let mut out = Vec::new();
        for (g, a) in self.actions.iter().enumerate() {
            if let Some(column) = first_escape(&(a * &self.relations)) {
                out.push(Violation::NotWellDefined {
                    generator: g,
                    column,
                });
            }
        }
        for i in 0..self.actions.len() {
            for j in i + 1..self.actions.len() {
                let c = (&self.actions[i] * &self.actions[j])
                    .sub(&(&self.actions[j] * &self.actions[i]));
                if let Some(column) = first_escape(&c) {
                    out.push(Violation::NotCommuting { i, j, column });
                }
            }
        }
        for (g, a) in self.actions.iter().enumerate() {
            let c = a
                .pow(self.group.prime())
                .sub(&IntMatrix::identity(self.gens));
            if let Some(column) = first_escape(&c) {
                out.push(Violation::WrongOrder {
                    generator: g,
                    column,
                });
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub fn validated(self) -> Result<Self> {
        self.validate().map_err(Error::InvalidPresentation)?;
        Ok(self)
    }

    /// Action matrix of every group element, indexed like the group.
    pub fn element_actions(&self) -> Vec<IntMatrix> {
        let g = self.group;
        let mut table = vec![IntMatrix::identity(self.gens); g.order()];
        for idx in 1..g.order() {
            // peel off the last nonzero coordinate
            let e = g.exponents(idx);
            let k = e.iter().rposition(|&x| x != 0).unwrap();
            let prev = idx - g.generator(k).unwrap();
            table[idx] = &self.actions[k] * &table[prev];
        }
        table
    }

    /// Matrix of the action of a group ring element.
    pub fn ring_action(&self, a: &GroupRingElement) -> IntMatrix {
        ActionTable::new(self).apply(a)
    }

    /// The underlying abelian group.
    pub fn underlying_invariants(&self) -> AbelianInvariants {
        if self.relations.cols() == 0 {
            return AbelianInvariants::free(self.gens);
        }
        cokernel_invariants(&self.relations)
    }

    /// Whether every group element acts as the identity modulo relations.
    pub fn has_trivial_action(&self) -> bool {
        let ech = ColumnEchelon::new(&self.relations);
        self.actions.iter().all(|a| {
            let d = a.sub(&IntMatrix::identity(self.gens));
            (0..d.cols()).all(|j| ech.solve_column(&d.column(j)).is_some())
        })
    }

    pub fn direct_sum(&self, other: &ModulePresentation) -> Result<ModulePresentation> {
        if self.group != other.group {
            return Err(
                crate::groupring::GroupError::GroupMismatch(self.group, other.group).into(),
            );
        }
        let gens = self.gens + other.gens;
        let mut rel = IntMatrix::zeros(gens, self.relations.cols() + other.relations.cols());
        rel.set_block(0, 0, &self.relations);
        rel.set_block(self.gens, self.relations.cols(), &other.relations);
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| {
                let mut m = IntMatrix::zeros(gens, gens);
                m.set_block(0, 0, a);
                m.set_block(self.gens, self.gens, b);
                m
            })
            .collect();
        Ok(ModulePresentation {
            group: self.group,
            gens,
            relations: rel,
            actions,
        })
    }

    /// The `G`-stable sublattice spanned by the columns of `basis`, presented on
    /// those columns. `self` must be `Z`-free and `basis` must have independent columns.
    pub fn sublattice(&self, basis: &IntMatrix) -> Result<ModulePresentation> {
        if !self.is_z_free() {
            return Err(Error::NotZFree);
        }
        let actions = self
            .actions
            .iter()
            .map(|a| solve_preimage(basis, &(a * basis)))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ModulePresentation::new(
            self.group,
            basis.cols(),
            IntMatrix::zeros(basis.cols(), 0),
            actions,
        )
    }

    /// `outer / inner` for `G`-stable lattices `inner ⊆ outer` in a `Z`-free module.
    pub fn subquotient(&self, outer: &IntMatrix, inner: &IntMatrix) -> Result<ModulePresentation> {
        if !self.is_z_free() {
            return Err(Error::NotZFree);
        }
        let outer = image_basis(outer);
        let relations = solve_preimage(&outer, inner)?;
        let relations = image_basis(&relations);
        let actions = self
            .actions
            .iter()
            .map(|a| solve_preimage(&outer, &(a * &outer)))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ModulePresentation::new(self.group, outer.cols(), relations, actions)
    }
}

/// Precomputed action of every group element on a module.
pub(crate) struct ActionTable {
    pub(crate) gens: usize,
    pub(crate) table: Vec<IntMatrix>,
}

impl ActionTable {
    pub(crate) fn new(m: &ModulePresentation) -> Self {
        ActionTable {
            gens: m.gens,
            table: m.element_actions(),
        }
    }

    pub(crate) fn apply(&self, a: &GroupRingElement) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.gens, self.gens);
        for (h, c) in a.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, j, v) in self.table[h].nonzeros() {
                out[(i, j)] += &(c * v);
            }
        }
        out
    }
}

/// Regular-representation action matrices of the generators on `Z[G]^k`.
pub fn free_actions(group: ElementaryAbelianGroup, k: usize) -> Vec<IntMatrix> {
    (0..group.rank() as usize)
        .map(|i| {
            GroupRingElement::basis(group, group.generator(i).unwrap())
                .left_regular_matrix()
                .block_diagonal(k)
        })
        .collect()
}
