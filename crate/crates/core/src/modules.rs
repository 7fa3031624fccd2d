//! Finitely presented right modules over a multi-matrix algebra `A`:
//! submodules of `A^n`, functionals into `A`, the four closure operators,
//! the splitting of a module into bounded and projective parts, and the
//! torsion filtration.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{linearize, AlgArray, AlgElement, AlgebraDescriptor, CenterValue, MatrixRing};
use crate::dimension::{dim_fgp, dim_fp, free_dim};
use crate::error::{Error, Result};
use crate::exactfield::{Rational, Scalar};
use crate::linalg::{Mat, Subspace};
use crate::projections::{ann_left, ann_right, meet, Projection};
use crate::random;
use crate::report::{Inclusion, TorsionPart, TorsionReport};
use crate::torsion_lab::{self, FDAlgebra, FDModule};

/// Field coordinates of an array, entry by entry.
pub fn array_coords(x: &AlgArray) -> Vec<Scalar> {
    x.entries().iter().flat_map(AlgElement::to_coords).collect()
}

pub fn array_from_coords(
    algebra: &AlgebraDescriptor,
    rows: usize,
    cols: usize,
    coords: &[Scalar],
) -> Result<AlgArray> {
    let fd = algebra.field_dim();
    if coords.len() != rows * cols * fd {
        return Err(Error::ShapeMismatch(format!(
            "{} coordinates for a {rows}x{cols} array",
            coords.len()
        )));
    }
    let entries = (0..rows * cols)
        .map(|k| AlgElement::from_coords(algebra, &coords[k * fd..(k + 1) * fd]))
        .collect::<Result<Vec<_>>>()?;
    Ok(AlgArray::from_fn(algebra, rows, cols, |i, j| {
        entries[i * cols + j].clone()
    }))
}

/// A submodule `K` of `A^n` given by generators, together with the canonical
/// column space of `K` in every block (block `b` of `A^n` is `F^(n n_b)`).
#[derive(Clone, Debug)]
pub struct SubmoduleBasis {
    algebra: AlgebraDescriptor,
    ambient: usize,
    generators: Vec<AlgArray>,
    spans: Vec<Subspace>,
}

impl PartialEq for SubmoduleBasis {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.ambient == other.ambient && self.spans == other.spans
    }
}

impl Eq for SubmoduleBasis {}

impl SubmoduleBasis {
    pub fn new(algebra: &AlgebraDescriptor, ambient: usize, generators: Vec<AlgArray>) -> Result<Self> {
        for g in &generators {
            algebra.check_same(g.algebra())?;
            if g.rows() != ambient || g.cols() != 1 {
                return Err(Error::ShapeMismatch(format!(
                    "generator of shape {}x{} in A^{ambient}",
                    g.rows(),
                    g.cols()
                )));
            }
        }
        let tower = algebra.tower();
        let spans = algebra
            .block_sizes()
            .iter()
            .enumerate()
            .map(|(b, &nb)| {
                let cols: Vec<Mat> = generators.iter().map(|g| g.to_blocks()[b].clone()).collect();
                Subspace::span(&Mat::hcat(tower, ambient * nb, &cols).expect("same height"))
            })
            .collect();
        Ok(Self {
            algebra: algebra.clone(),
            ambient,
            generators,
            spans,
        })
    }

    /// The image of `F: A^m -> A^n`, generated by the columns of `F`.
    pub fn from_array(f: &AlgArray) -> Self {
        let gens = (0..f.cols()).map(|j| f.col(j)).collect();
        Self::new(f.algebra(), f.rows(), gens).expect("columns have the right shape")
    }

    /// `p(A^n)` for a projection `p` of `M_n(A)`.
    pub fn from_projection(ring: &MatrixRing, p: &Projection) -> Result<Self> {
        Ok(Self::from_array(&ring.unpack(p.element())?))
    }

    pub fn zero(algebra: &AlgebraDescriptor, ambient: usize) -> Self {
        Self::new(algebra, ambient, Vec::new()).expect("no generators")
    }

    pub fn full(algebra: &AlgebraDescriptor, ambient: usize) -> Self {
        Self::from_array(&AlgArray::identity(algebra, ambient))
    }

    /// An `A`-submodule given as a subspace of the field coordinates of `A^n`.
    pub fn from_field_subspace(algebra: &AlgebraDescriptor, ambient: usize, s: &Subspace) -> Result<Self> {
        let gens = s
            .basis_vectors()
            .iter()
            .map(|v| array_from_coords(algebra, ambient, 1, v.entries()))
            .collect::<Result<_>>()?;
        let k = Self::new(algebra, ambient, gens)?;
        if k.field_subspace() != *s {
            return Err(Error::InvalidStructure("subspace is not an A-submodule".into()));
        }
        Ok(k)
    }

    pub fn algebra(&self) -> &AlgebraDescriptor {
        &self.algebra
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[AlgArray] {
        &self.generators
    }

    /// Canonical column space of block `b`.
    pub fn spans(&self) -> &[Subspace] {
        &self.spans
    }

    /// The generators as the columns of an `n x k` array.
    pub fn generator_array(&self) -> AlgArray {
        let gens = &self.generators;
        AlgArray::from_fn(&self.algebra, self.ambient, gens.len(), |i, j| {
            gens[j].get(i, 0).clone()
        })
    }

    /// The underlying field subspace of `A^n`, spanned by placing each block
    /// basis vector in each column of its block.
    pub fn field_subspace(&self) -> Subspace {
        let a = &self.algebra;
        let tower = a.tower();
        let n = self.ambient;
        let mut vectors = Vec::new();
        for (b, (span, &nb)) in self.spans.iter().zip(a.block_sizes()).enumerate() {
            for v in span.basis_vectors() {
                for k in 0..nb {
                    let x = AlgArray::from_fn(a, n, 1, |i, _| {
                        AlgElement::from_fn(a, |bb, m| {
                            Mat::from_fn(tower, m, m, |r, c| {
                                if bb == b && c == k {
                                    v.get(i * nb + r, 0).clone()
                                } else {
                                    Scalar::zero(tower)
                                }
                            })
                        })
                    });
                    vectors.push(Mat::column_vector(tower, array_coords(&x)));
                }
            }
        }
        Subspace::from_vectors(tower, n * a.field_dim(), &vectors)
    }

    pub fn field_dim(&self) -> usize {
        self.spans
            .iter()
            .zip(self.algebra.block_sizes())
            .map(|(s, nb)| s.dim() * nb)
            .sum()
    }

    /// `rank_b / n_b` per block.
    pub fn dim(&self) -> CenterValue {
        CenterValue::from_rationals(
            self.algebra.tower(),
            self.spans
                .iter()
                .zip(self.algebra.block_sizes())
                .map(|(s, &nb)| Rational::new(s.dim().into(), nb.into())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.spans.iter().all(Subspace::is_zero)
    }

    pub fn contains(&self, other: &SubmoduleBasis) -> bool {
        self.spans.iter().zip(&other.spans).all(|(a, b)| a.contains(b))
    }

    pub fn contains_vector(&self, x: &AlgArray) -> bool {
        x.to_blocks()
            .iter()
            .zip(&self.spans)
            .all(|(m, s)| s.basis().col_space_contains(m))
    }

    pub fn sum(&self, other: &SubmoduleBasis) -> Result<SubmoduleBasis> {
        self.algebra.check_same(&other.algebra)?;
        let gens = self.generators.iter().chain(&other.generators).cloned().collect();
        Self::new(&self.algebra, self.ambient, gens)
    }

    pub fn intersect(&self, other: &SubmoduleBasis) -> Result<SubmoduleBasis> {
        self.algebra.check_same(&other.algebra)?;
        let inter = self.field_subspace().intersect(&other.field_subspace());
        Self::from_field_subspace(&self.algebra, self.ambient, &inter)
    }

    /// Hermitian projector of `M_n(A)` onto `K`.
    pub fn projector(&self, ring: &MatrixRing) -> Result<Projection> {
        self.algebra.check_same(ring.base())?;
        let bases: Vec<Mat> = self.spans.iter().map(|s| s.basis().clone()).collect();
        Projection::onto_columns(ring.algebra(), &bases)
    }
}

/// `coker(F: A^m -> A^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    relations: AlgArray,
    labels: Vec<String>,
}

impl ModulePresentation {
    pub fn new(relations: AlgArray) -> Result<Self> {
        let labels = (0..relations.rows()).map(|i| format!("g{i}")).collect();
        Self::with_labels(relations, labels)
    }

    pub fn with_labels(relations: AlgArray, labels: Vec<String>) -> Result<Self> {
        if labels.len() != relations.rows() {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for {} generators",
                labels.len(),
                relations.rows()
            )));
        }
        if relations.rows() == 0 {
            return Err(Error::ShapeMismatch("module needs at least one generator".into()));
        }
        Ok(Self { relations, labels })
    }

    /// `A^n` itself.
    pub fn free(algebra: &AlgebraDescriptor, n: usize) -> Self {
        Self::new(AlgArray::zeros(algebra, n, 0)).expect("n > 0")
    }

    pub fn algebra(&self) -> &AlgebraDescriptor {
        self.relations.algebra()
    }

    pub fn ambient(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &AlgArray {
        &self.relations
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `im F`.
    pub fn image(&self) -> SubmoduleBasis {
        SubmoduleBasis::from_array(&self.relations)
    }

    /// Field dimension of `A^n / im F`.
    pub fn field_dim(&self) -> usize {
        self.ambient() * self.algebra().field_dim() - self.image().field_dim()
    }

    pub fn is_zero(&self) -> bool {
        self.field_dim() == 0
    }

    /// The module as a finite-dimensional module over `A` viewed through its
    /// matrix-unit basis.
    pub fn to_lab(&self) -> Result<(FDAlgebra, FDModule)> {
        let (r, free) = free_lab_module(self.algebra(), self.ambient());
        let q = free.quotient(&self.image().field_subspace())?;
        Ok((r, q.module))
    }
}

/// `A^n` as a lab module: `n` copies of `A_A`.
fn free_lab_module(algebra: &AlgebraDescriptor, n: usize) -> (FDAlgebra, FDModule) {
    let r = FDAlgebra::from_multimatrix(algebra);
    let reg = r.regular_module();
    let free = (1..n).fold(reg.clone(), |acc, _| acc.direct_sum(&reg));
    (r, free)
}

/// A spanning set of `{v in A^(1 x n) : v F = 0}`, by linearising `v -> v F`.
pub fn hom_to_a(m: &ModulePresentation) -> Vec<AlgArray> {
    let a = m.algebra();
    let (n, k) = (m.ambient(), m.relations().cols());
    let f = m.relations();
    let map = linearize(a, n, k * a.field_dim(), |args| {
        let v = AlgArray::from_fn(a, 1, n, |_, j| args[j].clone());
        array_coords(&v.checked_mul(f).expect("shapes agree"))
    });
    map.kernel_basis()
        .iter()
        .map(|v| array_from_coords(a, 1, n, v.entries()).expect("length n * dim A"))
        .collect()
}

fn generator_presentation(k: &SubmoduleBasis) -> ModulePresentation {
    ModulePresentation::new(k.generator_array()).expect("ambient rank is positive")
}

/// `{x in A^n : f(x) = 0 for every f vanishing on K}`. The joint kernel is
/// taken block by block: `f x = 0` iff every column of `x_b` lies in the
/// kernel of `f_b`.
pub fn closure_bnd(k: &SubmoduleBasis) -> Result<Projection> {
    let a = k.algebra();
    let n = k.ambient();
    let ring = MatrixRing::new(a, n)?;
    let functionals = hom_to_a(&generator_presentation(k));
    let tower = a.tower();
    let kernels: Vec<Mat> = a
        .block_sizes()
        .iter()
        .enumerate()
        .map(|(b, &nb)| {
            let rows: Vec<Mat> = functionals.iter().map(|f| f.to_blocks()[b].clone()).collect();
            let stacked = rows
                .into_iter()
                .reduce(|acc, m| acc.vstack(&m).expect("same width"))
                .unwrap_or_else(|| Mat::zeros(tower, 0, n * nb));
            stacked.kernel_matrix()
        })
        .collect();
    Projection::onto_columns(ring.algebra(), &kernels)
}

/// Checks `p g = g` for every generator, i.e. `K ⊆ p(A^n)`, with `A`-linear
/// array arithmetic.
fn dominates(ring: &MatrixRing, p: &Projection, k: &SubmoduleBasis) -> Result<bool> {
    let parr = ring.unpack(p.element())?;
    for g in k.generators() {
        if parr.checked_mul(g)? != *g {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Random summands of `A^n` containing `K`: spans of the generators of `K`
/// together with a few random vectors.
fn certificate_family<R: Rng + ?Sized>(
    rng: &mut R,
    ring: &MatrixRing,
    k: &SubmoduleBasis,
    size: usize,
) -> Result<Vec<Projection>> {
    let a = k.algebra();
    let mut out = vec![Projection::one(ring.algebra())];
    for _ in 0..size {
        let extra = rng.random_range(0..=k.ambient());
        let mut gens = k.generators().to_vec();
        gens.extend((0..extra).map(|_| random::array(rng, a, k.ambient(), 1)));
        out.push(SubmoduleBasis::new(a, k.ambient(), gens)?.projector(ring)?);
    }
    Ok(out)
}

fn check_minimal(p: &Projection, family: &[Projection]) -> Result<()> {
    for q in family {
        if !p.le(q)? {
            return Err(Error::InvariantViolation(
                "closure is not below a summand containing K".into(),
            ));
        }
    }
    Ok(())
}

/// The least summand containing `K`: the Hermitian projector onto `K`,
/// checked to contain `K` and to lie below every member of a random family of
/// summands containing `K`.
pub fn closure_summands<R: Rng + ?Sized>(
    k: &SubmoduleBasis,
    rng: &mut R,
    certificates: usize,
) -> Result<Projection> {
    let ring = MatrixRing::new(k.algebra(), k.ambient())?;
    let p = k.projector(&ring)?;
    if !dominates(&ring, &p, k)? {
        return Err(Error::InvariantViolation("projector does not fix K".into()));
    }
    check_minimal(&p, &certificate_family(rng, &ring, k, certificates)?)?;
    Ok(p)
}

/// The infimum of the projections whose range contains `K`, taken over the
/// hyperplane projections `1 - w w*/(w* w)` with `w ⊥ K` in one block. Their
/// meet is compared with the projector onto `K` and checked for domination
/// against a random family.
pub fn closure_projinf<R: Rng + ?Sized>(
    k: &SubmoduleBasis,
    rng: &mut R,
    certificates: usize,
) -> Result<Projection> {
    let a = k.algebra();
    let ring = MatrixRing::new(a, k.ambient())?;
    let big = ring.algebra();
    let tower = a.tower();
    let mut family = vec![Projection::one(big)];
    for (b, span) in k.spans().iter().enumerate() {
        let perp = span.basis().adjoint().kernel_basis();
        for w in perp {
            let q = AlgElement::from_fn(big, |bb, m| {
                let id = Mat::identity(tower, m);
                if bb == b {
                    &id - &Mat::hermitian_projector(&w)
                } else {
                    id
                }
            });
            family.push(Projection::new(q)?);
        }
    }
    let p = meet(&family)?;
    if p != k.projector(&ring)? || !dominates(&ring, &p, k)? {
        return Err(Error::InvariantViolation(
            "infimum differs from the projector onto K".into(),
        ));
    }
    check_minimal(&p, &certificate_family(rng, &ring, k, certificates)?)?;
    Ok(p)
}

/// Goldie closure: the preimage of `Z_2(A^n / K)`, computed in the lab.
pub fn closure_goldie(k: &SubmoduleBasis) -> Result<Projection> {
    let a = k.algebra();
    let n = k.ambient();
    let (r, free) = free_lab_module(a, n);
    let q = free.quotient(&k.field_subspace())?;
    let z2 = torsion_lab::goldie_torsion(&q.module, &r)?;
    let closed = SubmoduleBasis::from_field_subspace(a, n, &q.preimage(&z2))?;
    closed.projector(&MatrixRing::new(a, n)?)
}

/// For a right ideal `K` of `A` (`n = 1`), the projection `ann_r(ann_l(K))`.
pub fn double_annihilator(k: &SubmoduleBasis) -> Result<Option<Projection>> {
    if k.ambient() != 1 {
        return Ok(None);
    }
    let a = k.algebra();
    let mut gens: Vec<AlgElement> = k.generators().iter().map(|g| g.get(0, 0).clone()).collect();
    if gens.is_empty() {
        gens.push(AlgElement::zero(a));
    }
    let left = ann_left(&gens)?;
    let p = ann_right(&[left.into_element()])?;
    // the ring M_1(A) has the same blocks as A
    let ring = MatrixRing::new(a, 1)?;
    Ok(Some(Projection::new(AlgElement::new(
        ring.algebra(),
        p.element().blocks().to_vec(),
    )?)?))
}

/// The functional `x -> y* (1 - s) x` with `y = (1 - s) v`: it vanishes on
/// `s(A^n)` and is nonzero at `v` whenever `v` is outside `s(A^n)`.
pub fn separating_functional(ring: &MatrixRing, s: &Projection, v: &AlgArray) -> Result<AlgArray> {
    let comp = ring.unpack(s.complement().element())?;
    let y = comp.checked_mul(v)?;
    y.star().checked_mul(&comp)
}

/// Outcome of splitting `M = coker F` along the closure of `im F`.
#[derive(Clone, Debug)]
pub struct SplitResult {
    pub closure_projection: Projection,
    /// `p(A^n) / im F`, presented as `coker [F | 1 - p]`.
    pub bounded_part: ModulePresentation,
    /// `1 - p`; its range is isomorphic to `M / bnd M`.
    pub projective_part: Projection,
    pub dims: SplitDims,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitDims {
    pub ambient: Vec<String>,
    pub closure: Vec<String>,
    pub module: Vec<String>,
    pub bounded: Vec<String>,
    pub projective: Vec<String>,
}

pub fn split(m: &ModulePresentation) -> Result<SplitResult> {
    let a = m.algebra();
    let n = m.ambient();
    let ring = MatrixRing::new(a, n)?;
    let p = closure_bnd(&m.image())?;
    let proj = p.complement();
    let bounded = ModulePresentation::with_labels(
        m.relations().hstack(&ring.unpack(proj.element())?)?,
        m.labels().to_vec(),
    )?;
    let ambient = free_dim(a, n);
    let closure = dim_fgp(&ring, &p)?;
    let projective = dim_fgp(&ring, &proj)?;
    let module = dim_fp(m)?;
    let bounded_dim = dim_fp(&bounded)?;
    if closure.add(&projective)? != ambient {
        return Err(Error::InvariantViolation(
            "dim(A^n) != dim(cl K) + dim(M / bnd M)".into(),
        ));
    }
    if bounded_dim.add(&projective)? != module {
        return Err(Error::InvariantViolation(
            "dim(M) != dim(bnd M) + dim(M / bnd M)".into(),
        ));
    }
    Ok(SplitResult {
        closure_projection: p,
        bounded_part: bounded,
        projective_part: proj,
        dims: SplitDims {
            ambient: ambient.to_strings(),
            closure: closure.to_strings(),
            module: module.to_strings(),
            bounded: bounded_dim.to_strings(),
            projective: projective.to_strings(),
        },
    })
}

/// `0 ⊆ tM ⊆ TM ⊆ M` with `Q = A`: `tM = ker(M -> M ⊗ A) = 0`, and `TM` is
/// the bounded part of the splitting.
pub fn torsion_filtration(m: &ModulePresentation) -> Result<TorsionReport> {
    let s = split(m)?;
    let total = m.field_dim();
    let k = m.image();
    let closure =
        SubmoduleBasis::from_projection(&MatrixRing::new(m.algebra(), m.ambient())?, &s.closure_projection)?;
    if !closure.contains(&k) {
        return Err(Error::InvariantViolation("closure does not contain im F".into()));
    }
    let t_dim = closure.field_dim() - k.field_dim();
    let bounded_dim = s.bounded_part.field_dim();
    let small_t = 0;
    let parts = vec![
        TorsionPart::sized("small_t", small_t, total).with_note("kernel of M -> M ⊗ Q with Q = A is zero"),
        TorsionPart::sized("dim_zero", t_dim, total),
        TorsionPart::sized("bounded", bounded_dim, total),
        TorsionPart::sized("projective", total - t_dim, total),
    ];
    let inclusions = vec![
        Inclusion {
            sub: "small_t".into(),
            sup: "dim_zero".into(),
            holds: small_t <= t_dim,
            required: true,
        },
        Inclusion {
            sub: "dim_zero".into(),
            sup: "small_t".into(),
            holds: t_dim == small_t,
            required: true,
        },
        Inclusion {
            sub: "dim_zero".into(),
            sup: "bounded".into(),
            holds: t_dim == bounded_dim,
            required: true,
        },
    ];
    Ok(TorsionReport {
        module_dim: total,
        ring_semisimple: true,
        parts,
        inclusions,
        notes: vec!["multi-matrix algebras are semisimple, so Q = A".into()],
    })
}

/// `dim_Q(p(Q^n)) = dim_A(p(A^n))` with `Q = A`: the left side is read off
/// the column spaces of the envelope, the right side from the ranks of `p`.
pub fn envelope_tensor_check(ring: &MatrixRing, p: &Projection) -> Result<bool> {
    let envelope = SubmoduleBasis::from_projection(ring, p)?;
    Ok(envelope.dim() == dim_fgp(ring, p)?)
}

/// On the summand `L = p(A^n)`: `L ∩ A^n = L` and `cl(L ∩ A^n)` is `p` again.
pub fn johnson_round_trip(ring: &MatrixRing, p: &Projection) -> Result<bool> {
    let l = SubmoduleBasis::from_projection(ring, p)?;
    let inside = l.intersect(&SubmoduleBasis::full(ring.base(), ring.n()))?;
    Ok(inside == l && closure_bnd(&inside)? == *p)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn alg(name: &str) -> AlgebraDescriptor {
        AlgebraDescriptor::builtin(name).unwrap()
    }

    fn quotient_by_e11() -> ModulePresentation {
        let m2 = alg("m2");
        ModulePresentation::new(AlgArray::column(&m2, vec![AlgElement::matrix_unit(&m2, 0, 0, 0)])).unwrap()
    }

    #[test]
    fn hom_examples() {
        let m2 = alg("m2");
        let free = ModulePresentation::free(&m2, 2);
        assert_eq!(hom_to_a(&free).len(), 2 * 4);
        let zero = ModulePresentation::new(AlgArray::identity(&m2, 2)).unwrap();
        assert!(hom_to_a(&zero).is_empty());
        let homs = hom_to_a(&quotient_by_e11());
        assert_eq!(homs.len(), 2);
        let e11 = AlgElement::matrix_unit(&m2, 0, 0, 0);
        for v in homs {
            assert!((v.get(0, 0) * &e11).is_zero());
        }
    }

    #[test]
    fn closure_examples() {
        let m2 = alg("m2");
        let ring = MatrixRing::new(&m2, 2).unwrap();
        assert!(closure_bnd(&SubmoduleBasis::zero(&m2, 2)).unwrap().is_zero());
        assert_eq!(
            closure_bnd(&SubmoduleBasis::full(&m2, 2)).unwrap(),
            Projection::one(ring.algebra())
        );
        let k = quotient_by_e11().image();
        let p = closure_bnd(&k).unwrap();
        assert_eq!(
            p.element().block(0),
            AlgElement::matrix_unit(&m2, 0, 0, 0).block(0)
        );
        assert_eq!(double_annihilator(&k).unwrap().unwrap(), p);
        assert_eq!(closure_goldie(&k).unwrap(), p);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(closure_summands(&k, &mut rng, 4).unwrap(), p);
        assert_eq!(closure_projinf(&k, &mut rng, 4).unwrap(), p);
    }

    #[test]
    fn closures_agree_on_random_submodules() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for name in ["gauss_plus_m2", "m2", "m2_plus_m3"] {
            let a = alg(name);
            for n in 1..=2 {
                let gens = (0..rng.random_range(0..3))
                    .map(|_| random::array(&mut rng, &a, n, 1))
                    .collect();
                let k = SubmoduleBasis::new(&a, n, gens).unwrap();
                let ring = MatrixRing::new(&a, n).unwrap();
                let p = closure_bnd(&k).unwrap();
                assert_eq!(SubmoduleBasis::from_projection(&ring, &p).unwrap(), k);
                assert_eq!(closure_summands(&k, &mut rng, 3).unwrap(), p);
                assert_eq!(closure_projinf(&k, &mut rng, 3).unwrap(), p);
                assert_eq!(closure_goldie(&k).unwrap(), p);
            }
        }
    }

    #[test]
    fn split_examples() {
        let m2 = alg("m2");
        let free = ModulePresentation::free(&m2, 1);
        let s = split(&free).unwrap();
        assert!(s.bounded_part.is_zero());
        assert_eq!(s.projective_part, Projection::one(s.projective_part.algebra()));

        let s = split(&quotient_by_e11()).unwrap();
        assert_eq!(
            s.closure_projection.element().block(0),
            AlgElement::matrix_unit(&m2, 0, 0, 0).block(0)
        );
        assert_eq!(s.dims.projective, vec!["1/2".to_string()]);
        assert!(s.bounded_part.is_zero());
    }

    #[test]
    fn filtration_examples() {
        let m2 = alg("m2");
        let rep = torsion_filtration(&ModulePresentation::free(&m2, 2)).unwrap();
        assert!(rep.is_consistent());
        assert_eq!(rep.part("dim_zero").unwrap().dim, Some(0));
        assert_eq!(rep.part("projective").unwrap().dim, Some(8));
        let zero = ModulePresentation::new(AlgArray::identity(&m2, 1)).unwrap();
        let rep = torsion_filtration(&zero).unwrap();
        assert_eq!(rep.module_dim, 0);
        assert!(rep.parts.iter().all(|p| p.dim == Some(0)));
    }

    #[test]
    fn separation_example() {
        let m2 = alg("m2");
        let ring = MatrixRing::new(&m2, 1).unwrap();
        let s = Projection::new(AlgElement::matrix_unit(ring.algebra(), 0, 0, 0)).unwrap();
        let v = AlgArray::column(&m2, vec![AlgElement::matrix_unit(&m2, 0, 1, 0)]);
        let f = separating_functional(&ring, &s, &v).unwrap();
        let sarr = ring.unpack(s.element()).unwrap();
        assert!(f.checked_mul(&sarr).unwrap().is_zero());
        assert!(!f.checked_mul(&v).unwrap().is_zero());
    }

    #[test]
    fn envelope_and_johnson() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = alg("gauss_plus_m2");
        for n in 1..=3 {
            let ring = MatrixRing::new(&a, n).unwrap();
            for p in [
                Projection::zero(ring.algebra()),
                Projection::one(ring.algebra()),
                random::projection(&mut rng, ring.algebra()),
            ] {
                assert!(envelope_tensor_check(&ring, &p).unwrap());
                assert!(johnson_round_trip(&ring, &p).unwrap());
            }
        }
    }

    #[test]
    fn lab_view_matches() {
        let (r, m) = quotient_by_e11().to_lab().unwrap();
        assert_eq!(m.dim(), 2);
        assert!(torsion_lab::goldie_torsion(&m, &r).unwrap().is_zero());
        assert!(torsion_lab::bounded_submodule(&m, &r).unwrap().is_zero());
    }
}
