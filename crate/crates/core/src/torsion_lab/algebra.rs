use crate::algebra::{AlgElement, AlgebraDescriptor};
use crate::error::{Error, Result};
use crate::exactfield::{Scalar, ScalarTower};
use crate::linalg::{solve_right, Mat};

use super::FDModule;

/// An associative unital algebra given by structure constants:
/// `e_i e_j = sum_k table[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FDAlgebra {
    tower: ScalarTower,
    dim: usize,
    table: Vec<Scalar>,
    unit: Vec<Scalar>,
}

impl FDAlgebra {
    /// Checks associativity on all basis triples and the unit laws.
    pub fn new(
        tower: &ScalarTower,
        dim: usize,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidStructure("algebra of dimension 0".into()));
        }
        if table.len() != dim
            || table
                .iter()
                .any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim))
            || unit.len() != dim
        {
            return Err(Error::ShapeMismatch(format!(
                "structure constants must be {dim}x{dim}x{dim} with a unit of length {dim}"
            )));
        }
        let flat = table
            .into_iter()
            .flatten()
            .flatten()
            .map(|s| s.embed(tower))
            .collect::<Result<_>>()?;
        let unit = unit.into_iter().map(|s| s.embed(tower)).collect::<Result<_>>()?;
        let alg = Self {
            tower: tower.clone(),
            dim,
            table: flat,
            unit,
        };
        alg.check_axioms()?;
        Ok(alg)
    }

    fn check_axioms(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            let ei = self.basis_vector(i);
            if self.mul(&self.unit, &ei) != ei || self.mul(&ei, &self.unit) != ei {
                return Err(Error::InvalidStructure(format!(
                    "unit law fails on basis element {i}"
                )));
            }
            for j in 0..d {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..d {
                    let jk = self.basis_product(j, k).to_vec();
                    let ek = self.basis_vector(k);
                    if self.mul(&ij, &ek) != self.mul(&ei, &jk) {
                        return Err(Error::InvalidStructure(format!(
                            "associativity fails on basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Named examples: `dual_numbers` (basis 1, x), `upper_triangular_2`
    /// (basis e11, e12, e22) and `product_QQ` (basis e1, e2).
    pub fn builtin(name: &str) -> Result<Self> {
        let tower = ScalarTower::gaussian();
        match name {
            "dual_numbers" => Ok(Self::truncated_polynomial(&tower, 2)),
            "upper_triangular_2" => Self::incidence(&tower, 2, &[(0, 1)]),
            "product_QQ" => Self::incidence(&tower, 2, &[]),
            _ => Err(Error::UnknownBuiltin(name.into())),
        }
    }

    pub const BUILTIN_NAMES: [&'static str; 3] = ["dual_numbers", "upper_triangular_2", "product_QQ"];

    /// `F[x]/(x^k)` on the basis `1, x, ..., x^(k-1)`.
    pub fn truncated_polynomial(tower: &ScalarTower, k: usize) -> Self {
        let zero = Scalar::zero(tower);
        let mut table = vec![zero.clone(); k * k * k];
        for i in 0..k {
            for j in 0..k {
                if i + j < k {
                    table[(i * k + j) * k + i + j] = Scalar::one(tower);
                }
            }
        }
        let mut unit = vec![zero; k];
        unit[0] = Scalar::one(tower);
        Self {
            tower: tower.clone(),
            dim: k,
            table,
            unit,
        }
    }

    /// Incidence algebra of a partial order on `points` elements, given by its
    /// strict relations `(a, b)` with `a < b` (must be transitively closed).
    /// The basis lists the diagonal units and the relations, ordered by
    /// `(a, b)` lexicographically.
    pub fn incidence(tower: &ScalarTower, points: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut pairs: Vec<(usize, usize)> = (0..points).map(|a| (a, a)).collect();
        for &(a, b) in relations {
            if a >= points || b >= points || a == b {
                return Err(Error::InvalidStructure(format!("bad relation ({a}, {b})")));
            }
            pairs.push((a, b));
        }
        pairs.sort_unstable();
        pairs.dedup();
        let d = pairs.len();
        let index = |p: (usize, usize)| pairs.iter().position(|&q| q == p);
        let zero = Scalar::zero(tower);
        let mut table = vec![zero.clone(); d * d * d];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, e)) in pairs.iter().enumerate() {
                if b == c {
                    let k = index((a, e))
                        .ok_or_else(|| Error::InvalidStructure("relation set is not transitive".into()))?;
                    table[(i * d + j) * d + k] = Scalar::one(tower);
                }
            }
        }
        let unit = pairs
            .iter()
            .map(|&(a, b)| if a == b { Scalar::one(tower) } else { zero.clone() })
            .collect();
        let alg = Self {
            tower: tower.clone(),
            dim: d,
            table,
            unit,
        };
        alg.check_axioms()?;
        Ok(alg)
    }

    /// A multi-matrix algebra on its matrix-unit basis.
    pub fn from_multimatrix(algebra: &AlgebraDescriptor) -> Self {
        let units = AlgElement::matrix_units(algebra);
        let d = units.len();
        let mut table = Vec::with_capacity(d * d * d);
        for x in &units {
            for y in &units {
                table.extend((x * y).to_coords());
            }
        }
        Self {
            tower: algebra.tower().clone(),
            dim: d,
            table,
            unit: AlgElement::one(algebra).to_coords(),
        }
    }

    /// `A x B` with the basis of `A` followed by that of `B`.
    pub fn product(&self, other: &FDAlgebra) -> Result<Self> {
        if self.tower != other.tower {
            return Err(Error::TowerMismatch(
                self.tower.to_string(),
                other.tower.to_string(),
            ));
        }
        let d = self.dim + other.dim;
        let zero = Scalar::zero(&self.tower);
        let mut table = vec![zero; d * d * d];
        for (alg, off) in [(self, 0), (other, self.dim)] {
            for i in 0..alg.dim {
                for j in 0..alg.dim {
                    for (k, c) in alg.basis_product(i, j).iter().enumerate() {
                        table[((off + i) * d + off + j) * d + off + k] = c.clone();
                    }
                }
            }
        }
        let unit = self.unit.iter().chain(&other.unit).cloned().collect();
        Ok(Self {
            tower: self.tower.clone(),
            dim: d,
            table,
            unit,
        })
    }

    /// The same algebra on the basis `f_j = sum_i change[i][j] e_i`.
    pub fn change_basis(&self, change: &Mat) -> Result<Self> {
        let d = self.dim;
        if change.rows() != d || change.cols() != d || change.rank() != d {
            return Err(Error::InvalidStructure("basis change must be invertible".into()));
        }
        let inv = solve_right(change, &Mat::identity(&self.tower, d))?
            .ok_or_else(|| Error::InvalidStructure("singular basis change".into()))?;
        let f: Vec<Vec<Scalar>> = (0..d).map(|j| change.column(j).entries().to_vec()).collect();
        let to_new = |v: &[Scalar]| -> Vec<Scalar> {
            (&inv * &Mat::column_vector(&self.tower, v.to_vec()))
                .entries()
                .to_vec()
        };
        let mut table = Vec::with_capacity(d * d * d);
        for fi in &f {
            for fj in &f {
                table.extend(to_new(&self.mul(fi, fj)));
            }
        }
        Ok(Self {
            tower: self.tower.clone(),
            dim: d,
            table,
            unit: to_new(&self.unit),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tower(&self) -> &ScalarTower {
        &self.tower
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.table[start..start + self.dim]
    }

    /// Structure constants as a nested `d x d x d` array.
    pub fn table(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.basis_product(i, j).to_vec()).collect())
            .collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        (0..self.dim)
            .map(|k| {
                if k == i {
                    Scalar::one(&self.tower)
                } else {
                    Scalar::zero(&self.tower)
                }
            })
            .collect()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(&self.tower); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (k, t) in self.basis_product(i, j).iter().enumerate() {
                    if !t.is_zero() {
                        out[k] = &out[k] + &(&c * t);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `v -> v a` on coordinate columns.
    pub fn right_mult(&self, a: &[Scalar]) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.mul(&self.basis_vector(j), a))
            .collect();
        Mat::from_fn(&self.tower, self.dim, self.dim, |i, j| cols[j][i].clone())
    }

    /// Matrix of `v -> a v` on coordinate columns.
    pub fn left_mult(&self, a: &[Scalar]) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.mul(a, &self.basis_vector(j)))
            .collect();
        Mat::from_fn(&self.tower, self.dim, self.dim, |i, j| cols[j][i].clone())
    }

    /// The right regular module `R_R`.
    pub fn regular_module(&self) -> FDModule {
        let actions = (0..self.dim)
            .map(|i| self.right_mult(&self.basis_vector(i)))
            .collect();
        FDModule::new_unchecked(&self.tower, self.dim, actions)
    }

    /// The right ideal `a R`, as a subspace of `R`.
    pub fn right_ideal(&self, generators: &[Vec<Scalar>]) -> crate::linalg::Subspace {
        let vectors: Vec<Mat> = generators
            .iter()
            .flat_map(|g| {
                (0..self.dim)
                    .map(move |i| Mat::column_vector(&self.tower, self.mul(g, &self.basis_vector(i))))
            })
            .collect();
        crate::linalg::Subspace::from_vectors(&self.tower, self.dim, &vectors)
    }
}
