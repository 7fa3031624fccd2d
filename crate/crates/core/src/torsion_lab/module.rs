use crate::error::{Error, Result};
use crate::exactfield::{Scalar, ScalarTower};
use crate::linalg::{solve_right, Mat, Subspace};

use super::FDAlgebra;

/// A finite-dimensional right module: `actions[i]` is the matrix of
/// `m -> m e_i` on coordinate columns, so `rho(ab) = rho(b) rho(a)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FDModule {
    tower: ScalarTower,
    dim: usize,
    actions: Vec<Mat>,
}

/// `M / N` together with the coordinate maps relating it to `M`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: FDModule,
    /// `dim(M/N) x dim(M)`, kills `N`.
    pub projection: Mat,
    /// `dim(M) x dim(M/N)`, a section of `projection` spanning a complement of `N`.
    pub section: Mat,
    pub kernel: Subspace,
}

impl Quotient {
    /// Preimage in `M` of a subspace of `M/N`.
    pub fn preimage(&self, s: &Subspace) -> Subspace {
        self.kernel.sum(&Subspace::span(&(&self.section * s.basis())))
    }

    /// Image in `M/N` of a subspace of `M`.
    pub fn image(&self, s: &Subspace) -> Subspace {
        Subspace::span(&(&self.projection * s.basis()))
    }
}

impl FDModule {
    /// Checks the unit and the multiplication law against `algebra`.
    pub fn new(algebra: &FDAlgebra, dim: usize, actions: Vec<Mat>) -> Result<Self> {
        if actions.len() != algebra.dim() || actions.iter().any(|a| a.rows() != dim || a.cols() != dim) {
            return Err(Error::ShapeMismatch(format!(
                "need {} action matrices of size {dim}x{dim}",
                algebra.dim()
            )));
        }
        let actions = actions
            .into_iter()
            .map(|a| a.embed(algebra.tower()))
            .collect::<Result<Vec<_>>>()?;
        let m = Self::new_unchecked(algebra.tower(), dim, actions);
        if !m.action(algebra.unit()).is_identity() {
            return Err(Error::InvalidStructure(
                "the unit does not act as the identity".into(),
            ));
        }
        for i in 0..algebra.dim() {
            for j in 0..algebra.dim() {
                let lhs = m.action(algebra.basis_product(i, j));
                if lhs != &m.actions[j] * &m.actions[i] {
                    return Err(Error::InvalidStructure(format!(
                        "action of e_{i} e_{j} is not the composite"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(tower: &ScalarTower, dim: usize, actions: Vec<Mat>) -> Self {
        Self {
            tower: tower.clone(),
            dim,
            actions,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tower(&self) -> &ScalarTower {
        &self.tower
    }

    pub fn actions(&self) -> &[Mat] {
        &self.actions
    }

    /// Matrix of `m -> m a` for `a` given in algebra coordinates.
    pub fn action(&self, a: &[Scalar]) -> Mat {
        let mut out = Mat::zeros(&self.tower, self.dim, self.dim);
        for (c, rho) in a.iter().zip(&self.actions) {
            if !c.is_zero() {
                out = &out + &rho.scale(c);
            }
        }
        out
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(&self.tower, self.dim)
    }

    pub fn zero(&self) -> Subspace {
        Subspace::zero(&self.tower, self.dim)
    }

    pub fn is_submodule(&self, s: &Subspace) -> bool {
        self.actions
            .iter()
            .all(|rho| s.contains(&Subspace::span(&(rho * s.basis()))))
    }

    /// The submodule generated by a subspace.
    pub fn generated(&self, s: &Subspace) -> Subspace {
        let mut current = s.clone();
        loop {
            let mut next = current.clone();
            for rho in &self.actions {
                next = next.sum(&Subspace::span(&(rho * current.basis())));
            }
            if next.dim() == current.dim() {
                return current;
            }
            current = next;
        }
    }

    /// `{m : m a = 0 for all a in elements}`.
    pub fn annihilated_by(&self, elements: &[Vec<Scalar>]) -> Subspace {
        if elements.is_empty() {
            return self.full();
        }
        let stacked = elements
            .iter()
            .map(|a| self.action(a))
            .reduce(|acc, m| acc.vstack(&m).expect("same width"))
            .expect("nonempty");
        Subspace::span(&stacked.kernel_matrix())
    }

    /// The submodule `s` as a module in its own right, on the basis of `s`.
    pub fn restrict(&self, s: &Subspace) -> Result<FDModule> {
        if !self.is_submodule(s) {
            return Err(Error::InvalidStructure("subspace is not a submodule".into()));
        }
        let b = s.basis();
        let actions = self
            .actions
            .iter()
            .map(|rho| {
                solve_right(b, &(rho * b))?
                    .ok_or_else(|| Error::InvariantViolation("submodule not invariant".into()))
            })
            .collect::<Result<_>>()?;
        Ok(Self::new_unchecked(&self.tower, s.dim(), actions))
    }

    /// Coordinates of `s` in the basis of `sub` (as used by [`FDModule::restrict`]).
    pub fn coordinates_in(sub: &Subspace, s: &Subspace) -> Result<Subspace> {
        let x = solve_right(sub.basis(), s.basis())?
            .ok_or_else(|| Error::InvalidStructure("subspace not contained".into()))?;
        Ok(Subspace::span(&x))
    }

    pub fn quotient(&self, n: &Subspace) -> Result<Quotient> {
        if !self.is_submodule(n) {
            return Err(Error::InvalidStructure("quotient by a non-submodule".into()));
        }
        let mut basis = n.basis().clone();
        let mut complement = Mat::zeros(&self.tower, self.dim, 0);
        let id = Mat::identity(&self.tower, self.dim);
        for j in 0..self.dim {
            let e = id.column(j);
            if !basis.col_space_contains(&e) {
                basis = basis.hstack(&e)?;
                complement = complement.hstack(&e)?;
            }
        }
        let inv = solve_right(&basis, &id)?
            .ok_or_else(|| Error::InvariantViolation("completed basis is singular".into()))?;
        let k = n.dim();
        let q = self.dim - k;
        let projection = inv.submatrix(k, 0, q, self.dim);
        let actions = self
            .actions
            .iter()
            .map(|rho| &(&projection * rho) * &complement)
            .collect();
        Ok(Quotient {
            module: Self::new_unchecked(&self.tower, q, actions),
            projection,
            section: complement,
            kernel: n.clone(),
        })
    }

    pub fn direct_sum(&self, other: &FDModule) -> FDModule {
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Self::new_unchecked(&self.tower, self.dim + other.dim, actions)
    }
}
