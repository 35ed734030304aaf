//! Small dense complex linear algebra.
//!
//! Everything here works on dimensions of at most a handful of entries (the
//! largest operators in the crate are 4×4), so matrices are plain row-major
//! `Vec`s and every product is the textbook triple loop.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

/// Allowed deviation of a ray or state norm from 1.
pub const NORM_TOL: f64 = 1e-9;
/// Allowed overlap between rays that are meant to be orthogonal.
pub const ORTH_TOL: f64 = 1e-9;
/// Entrywise tolerance for operator identities (hermiticity, idempotence,
/// commutators, completeness).
pub const OP_TOL: f64 = 1e-9;

fn check_finite(components: &[Complex64]) -> Result<()> {
    if components
        .iter()
        .all(|z| z.re.is_finite() && z.im.is_finite())
    {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

fn norm_of(components: &[Complex64]) -> f64 {
    components.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn check_normalized(components: &[Complex64]) -> Result<()> {
    if components.len() < 2 {
        return Err(Error::Dimension(format!(
            "dimension must be at least 2, got {}",
            components.len()
        )));
    }
    check_finite(components)?;
    let norm = norm_of(components);
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::Normalization {
            norm,
            tol: NORM_TOL,
        });
    }
    Ok(())
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "cannot pair vectors of dimension {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(a.iter().zip(b).map(|(x, y)| x.conj() * y).sum())
}

/// A unit vector in C^d. Equality is exact component equality; global phase
/// is only quotiented out once a ray is turned into a [`Projector`].
#[derive(Debug, Clone, PartialEq)]
pub struct Ray {
    components: Vec<Complex64>,
    label: Option<String>,
}

impl Ray {
    pub fn new(components: Vec<Complex64>) -> Result<Self> {
        check_normalized(&components)?;
        Ok(Ray {
            components,
            label: None,
        })
    }

    /// Builds a ray from real amplitudes without normalizing them.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Ray::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Normalizes `components` first; fails only on a zero or non-finite input.
    pub fn normalized(components: Vec<Complex64>) -> Result<Self> {
        check_finite(&components)?;
        let norm = norm_of(&components);
        if norm == 0.0 {
            return Err(Error::Normalization {
                norm,
                tol: NORM_TOL,
            });
        }
        Ray::new(components.into_iter().map(|z| z / norm).collect())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Complex64] {
        &self.components
    }

    /// Multiplies every amplitude by `e^{i theta}`.
    pub fn with_phase(&self, theta: f64) -> Ray {
        let phase = Complex64::from_polar(1.0, theta);
        Ray {
            components: self.components.iter().map(|z| z * phase).collect(),
            label: self.label.clone(),
        }
    }

    /// Standard basis vector `|k>` in dimension `d`.
    pub fn basis(d: usize, k: usize) -> Result<Self> {
        if k >= d {
            return Err(Error::Dimension(format!(
                "basis index {k} out of range for d={d}"
            )));
        }
        let mut components = vec![Complex64::new(0.0, 0.0); d];
        components[k] = Complex64::new(1.0, 0.0);
        Ray::new(components)
    }
}

/// `<a|b>`, antilinear in the first argument.
pub fn inner_product(a: &Ray, b: &Ray) -> Result<ComplexScalar> {
    dot(&a.components, &b.components)
}

/// A pure state. Shares the invariants of [`Ray`] but plays a different role.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    components: Vec<Complex64>,
}

impl QuantumState {
    pub fn new(components: Vec<Complex64>) -> Result<Self> {
        check_normalized(&components)?;
        Ok(QuantumState { components })
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        QuantumState::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn basis(d: usize, k: usize) -> Result<Self> {
        Ok(QuantumState::from(Ray::basis(d, k)?))
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Complex64] {
        &self.components
    }

    /// Tensor product `self ⊗ other`.
    pub fn kron(&self, other: &QuantumState) -> QuantumState {
        let components = self
            .components
            .iter()
            .flat_map(|a| other.components.iter().map(move |b| a * b))
            .collect();
        QuantumState { components }
    }

    /// Linear combination of already-normalized states, renormalized.
    pub fn superpose(terms: &[(Complex64, &QuantumState)]) -> Result<Self> {
        let d = terms
            .first()
            .map(|(_, s)| s.dim())
            .ok_or_else(|| Error::Dimension("empty superposition".into()))?;
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for (c, s) in terms {
            if s.dim() != d {
                return Err(Error::Dimension("mixed dimensions in superposition".into()));
            }
            for (o, z) in out.iter_mut().zip(&s.components) {
                *o += c * z;
            }
        }
        Ray::normalized(out).map(QuantumState::from)
    }
}

impl From<Ray> for QuantumState {
    fn from(ray: Ray) -> Self {
        QuantumState {
            components: ray.components,
        }
    }
}

/// Haar-random pure state: independent complex normal amplitudes, normalized.
pub fn random_state(d: usize, seed: u64) -> Result<QuantumState> {
    if d < 2 {
        return Err(Error::Dimension(format!(
            "random state needs d >= 2, got {d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let components: Vec<Complex64> = (0..d)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    Ray::normalized(components).map(QuantumState::from)
}

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension("matrix rows must form a square".into()));
        }
        let data: Vec<Complex64> = rows.iter().flatten().copied().collect();
        check_finite(&data)?;
        Ok(Matrix { dim, data })
    }

    /// `|a><b|`
    pub fn outer(a: &[Complex64], b: &[Complex64]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::Dimension(
                "outer product of unequal dimensions".into(),
            ));
        }
        let dim = a.len();
        let data = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| x * y.conj()))
            .collect();
        Ok(Matrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scale(&self, c: Complex64) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn adjoint(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = self[(j, i)].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus; the norm used for every operator tolerance.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let dim = self.dim * other.dim;
        let mut m = Matrix::zeros(dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self[(i, j)];
                for k in 0..other.dim {
                    for l in 0..other.dim {
                        m[(i * other.dim + k, j * other.dim + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        m
    }

    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        self.same_dim(other)?;
        Ok(&(self * other) - &(other * self))
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::Dimension(format!(
                "operator of dimension {} applied to vector of dimension {}",
                self.dim,
                v.len()
            )));
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect())
    }

    /// `<psi|M|psi>`
    pub fn expectation(&self, psi: &QuantumState) -> Result<Complex64> {
        let mv = self.apply(&psi.components)?;
        dot(&psi.components, &mv)
    }

    fn same_dim(&self, other: &Matrix) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "operators of dimension {} and {}",
                self.dim, other.dim
            )))
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

// The arithmetic operators panic on mismatched dimensions; callers inside the
// crate only combine operators built for the same system.
impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        Matrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let n = self.dim;
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    m[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        m
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rank-one orthogonal projector `|v><v|`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: Matrix,
}

impl Projector {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim
    }

    /// The ±1-valued observable `I - 2P`.
    pub fn observable(&self) -> Matrix {
        &Matrix::identity(self.dim()) - &self.matrix.scale(Complex64::new(2.0, 0.0))
    }

    pub fn is_hermitian(&self) -> bool {
        (&self.matrix - &self.matrix.adjoint()).max_abs() <= OP_TOL
    }

    pub fn is_idempotent(&self) -> bool {
        (&(&self.matrix * &self.matrix) - &self.matrix).max_abs() <= OP_TOL
    }

    pub fn has_unit_trace(&self) -> bool {
        (self.matrix.trace() - Complex64::new(1.0, 0.0)).norm() <= OP_TOL
    }
}

pub fn projector_of(v: &Ray) -> Result<Projector> {
    // Rays are normalized at construction, but the check is cheap and keeps
    // the contract local.
    check_normalized(&v.components)?;
    Ok(Projector {
        matrix: Matrix::outer(&v.components, &v.components)?,
    })
}

/// `<psi|P|psi>`, clamped into `[0, 1]`.
pub fn born_probability(psi: &QuantumState, p: &Projector) -> Result<f64> {
    let value = p.matrix.expectation(psi)?;
    debug_assert!(value.im.abs() <= 1e-9, "imaginary Born probability {value}");
    Ok(value.re.clamp(0.0, 1.0))
}

/// One reason a list of rays fails to be a measurement context.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ContextFailure {
    Empty,
    MixedDimension {
        index: usize,
        dim: usize,
        expected: usize,
    },
    WrongSize {
        size: usize,
        dimension: usize,
    },
    NotNormalized {
        index: usize,
        norm: f64,
    },
    NotOrthogonal {
        i: usize,
        k: usize,
        overlap: f64,
    },
    NonCommuting {
        i: usize,
        k: usize,
        norm: f64,
    },
    Incomplete {
        defect: f64,
    },
}

/// Outcome of [`validate_context`]: the measured defects plus every failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContextValidation {
    pub dimension: usize,
    pub size: usize,
    /// Largest `|<v_i|v_k>|` over distinct pairs.
    pub max_overlap: f64,
    /// Largest entrywise modulus of `[P_i, P_k]` over distinct pairs.
    pub max_commutator: f64,
    /// Largest entrywise modulus of `sum_i P_i - I`.
    pub completeness_defect: f64,
    pub failures: Vec<ContextFailure>,
}

impl ContextValidation {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `rays` form a complete orthonormal basis: pairwise
/// orthogonal, pairwise commuting projectors, and projectors summing to the
/// identity.
pub fn validate_context(rays: &[Ray]) -> ContextValidation {
    let mut out = ContextValidation {
        dimension: rays.first().map_or(0, Ray::dim),
        size: rays.len(),
        max_overlap: 0.0,
        max_commutator: 0.0,
        completeness_defect: 0.0,
        failures: Vec::new(),
    };
    let Some(first) = rays.first() else {
        out.failures.push(ContextFailure::Empty);
        return out;
    };
    let d = first.dim();
    for (index, r) in rays.iter().enumerate() {
        if r.dim() != d {
            out.failures.push(ContextFailure::MixedDimension {
                index,
                dim: r.dim(),
                expected: d,
            });
        }
    }
    if !out.failures.is_empty() {
        return out;
    }
    if rays.len() != d {
        out.failures.push(ContextFailure::WrongSize {
            size: rays.len(),
            dimension: d,
        });
    }
    for (index, r) in rays.iter().enumerate() {
        let norm = norm_of(r.components());
        if (norm - 1.0).abs() > NORM_TOL {
            out.failures
                .push(ContextFailure::NotNormalized { index, norm });
        }
    }

    let projectors: Vec<Matrix> = rays
        .iter()
        .map(|r| Matrix::outer(r.components(), r.components()).expect("uniform dimension"))
        .collect();
    for i in 0..rays.len() {
        for k in (i + 1)..rays.len() {
            let overlap = dot(rays[i].components(), rays[k].components())
                .expect("uniform dimension")
                .norm();
            out.max_overlap = out.max_overlap.max(overlap);
            if overlap > ORTH_TOL {
                out.failures
                    .push(ContextFailure::NotOrthogonal { i, k, overlap });
            }
            let norm = projectors[i]
                .commutator(&projectors[k])
                .expect("uniform dimension")
                .max_abs();
            out.max_commutator = out.max_commutator.max(norm);
            if norm > OP_TOL {
                out.failures
                    .push(ContextFailure::NonCommuting { i, k, norm });
            }
        }
    }

    let sum = projectors.iter().fold(Matrix::zeros(d), |acc, p| &acc + p);
    out.completeness_defect = (&sum - &Matrix::identity(d)).max_abs();
    if out.completeness_defect > OP_TOL {
        out.failures.push(ContextFailure::Incomplete {
            defect: out.completeness_defect,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn std_basis(d: usize) -> Vec<Ray> {
        (0..d).map(|k| Ray::basis(d, k).unwrap()).collect()
    }

    #[test]
    fn inner_product_examples() {
        let e0 = Ray::basis(4, 0).unwrap();
        let e1 = Ray::basis(4, 1).unwrap();
        assert_eq!(inner_product(&e0, &e1).unwrap(), c(0.0));

        let a = Ray::from_real(&[1.0, 0.0]).unwrap();
        assert_eq!(inner_product(&a, &a).unwrap(), c(1.0));

        let plus = Ray::from_real(&[H, H]).unwrap();
        let z = inner_product(&plus, &a).unwrap();
        assert!((z - c(H)).norm() < 1e-12);
    }

    #[test]
    fn inner_product_dimension_mismatch() {
        let a = Ray::basis(2, 0).unwrap();
        let b = Ray::basis(3, 0).unwrap();
        assert!(matches!(inner_product(&a, &b), Err(Error::Dimension(_))));
    }

    #[test]
    fn ray_rejects_bad_input() {
        assert!(matches!(
            Ray::from_real(&[1.0, 1.0]),
            Err(Error::Normalization { .. })
        ));
        assert!(matches!(Ray::from_real(&[1.0]), Err(Error::Dimension(_))));
        assert!(matches!(
            Ray::from_real(&[f64::NAN, 0.0]),
            Err(Error::NonFinite)
        ));
        assert!(Ray::normalized(vec![c(0.0), c(0.0)]).is_err());
    }

    #[test]
    fn projector_examples() {
        let p = projector_of(&Ray::basis(2, 0).unwrap()).unwrap();
        assert_eq!(
            p.matrix(),
            &Matrix::from_rows(&[vec![c(1.0), c(0.0)], vec![c(0.0), c(0.0)]]).unwrap()
        );

        let p = projector_of(&Ray::basis(3, 1).unwrap()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == 1 && j == 1 { 1.0 } else { 0.0 };
                assert_eq!(p.matrix()[(i, j)], c(want));
            }
        }

        let p = projector_of(&Ray::from_real(&[H, H]).unwrap()).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((p.matrix()[(i, j)] - c(0.5)).norm() < 1e-12);
            }
        }
        assert!(p.is_hermitian() && p.is_idempotent() && p.has_unit_trace());
    }

    #[test]
    fn born_examples() {
        let psi0 = QuantumState::basis(2, 0).unwrap();
        let p0 = projector_of(&Ray::basis(2, 0).unwrap()).unwrap();
        let p1 = projector_of(&Ray::basis(2, 1).unwrap()).unwrap();
        assert!((born_probability(&psi0, &p0).unwrap() - 1.0).abs() < 1e-12);
        assert!(born_probability(&psi0, &p1).unwrap().abs() < 1e-12);
        let plus = QuantumState::from_real(&[H, H]).unwrap();
        assert!((born_probability(&plus, &p0).unwrap() - 0.5).abs() < 1e-12);

        let psi3 = QuantumState::basis(3, 0).unwrap();
        assert!(matches!(
            born_probability(&psi3, &p0),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn full_standard_basis_is_a_context() {
        let v = validate_context(&std_basis(4));
        assert!(v.is_valid(), "{v:?}");
        assert!(v.completeness_defect < 1e-12);
    }

    #[test]
    fn three_of_four_is_incomplete() {
        let rays = std_basis(4);
        let v = validate_context(&rays[..3]);
        assert!(!v.is_valid());
        assert!(v
            .failures
            .iter()
            .any(|f| matches!(f, ContextFailure::Incomplete { .. })));
        assert!(v.failures.iter().any(|f| matches!(
            f,
            ContextFailure::WrongSize {
                size: 3,
                dimension: 4
            }
        )));
    }

    #[test]
    fn non_orthogonal_pair_is_reported() {
        let rays = vec![Ray::basis(2, 0).unwrap(), Ray::from_real(&[H, H]).unwrap()];
        let v = validate_context(&rays);
        assert!(v
            .failures
            .iter()
            .any(|f| matches!(f, ContextFailure::NotOrthogonal { i: 0, k: 1, .. })));
        assert!(v.max_commutator > 0.1);
    }

    #[test]
    fn empty_and_mixed_inputs() {
        assert_eq!(validate_context(&[]).failures, vec![ContextFailure::Empty]);
        let v = validate_context(&[Ray::basis(2, 0).unwrap(), Ray::basis(3, 1).unwrap()]);
        assert!(matches!(
            v.failures[0],
            ContextFailure::MixedDimension { index: 1, .. }
        ));
    }

    #[test]
    fn random_state_is_deterministic_and_normalized() {
        assert_eq!(random_state(2, 7).unwrap(), random_state(2, 7).unwrap());
        assert_ne!(random_state(2, 7).unwrap(), random_state(2, 8).unwrap());
        let psi = random_state(4, 1).unwrap();
        assert!((norm_of(psi.components()) - 1.0).abs() < 1e-9);
        assert!(matches!(random_state(1, 0), Err(Error::Dimension(_))));
    }

    #[test]
    fn random_state_is_uniform_on_bloch_sphere() {
        // For Haar-random qubits |<0|psi>|^2 is uniform on [0, 1].
        let mean = (0..1000)
            .map(|seed| random_state(2, seed).unwrap().components()[0].norm_sqr())
            .sum::<f64>()
            / 1000.0;
        assert!((mean - 0.5).abs() < 0.05, "mean {mean}");
    }

    #[test]
    fn kron_of_identities() {
        let i2 = Matrix::identity(2);
        assert_eq!(i2.kron(&i2), Matrix::identity(4));
    }

    fn complex_vec(d: usize) -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d)
            .prop_filter("nonzero", |v| {
                v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3)
            })
            .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
    }

    fn ray(d: usize) -> impl Strategy<Value = Ray> {
        complex_vec(d).prop_map(|v| Ray::normalized(v).unwrap())
    }

    proptest! {
        #[test]
        fn conjugate_symmetry(a in ray(4), b in ray(4)) {
            let ab = inner_product(&a, &b).unwrap();
            let ba = inner_product(&b, &a).unwrap();
            prop_assert!((ab - ba.conj()).norm() < 1e-12);
        }

        #[test]
        fn linear_in_second_argument(
            a in complex_vec(3),
            b in complex_vec(3),
            c2 in complex_vec(3),
            s in (-2.0f64..2.0, -2.0f64..2.0),
            t in (-2.0f64..2.0, -2.0f64..2.0),
        ) {
            let s = Complex64::new(s.0, s.1);
            let t = Complex64::new(t.0, t.1);
            let combo: Vec<Complex64> = b.iter().zip(&c2).map(|(x, y)| s * x + t * y).collect();
            let lhs = dot(&a, &combo).unwrap();
            let rhs = s * dot(&a, &b).unwrap() + t * dot(&a, &c2).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-9);
        }

        #[test]
        fn projector_ignores_global_phase(v in ray(4), theta in 0.0f64..std::f64::consts::TAU) {
            let p = projector_of(&v).unwrap();
            let q = projector_of(&v.with_phase(theta)).unwrap();
            prop_assert!((p.matrix() - q.matrix()).max_abs() <= 1e-9);
            prop_assert!(p.is_hermitian() && p.is_idempotent() && p.has_unit_trace());
        }

        #[test]
        fn born_probabilities_of_a_context_sum_to_one(seed in any::<u64>(), phase in 0.0f64..6.3) {
            // Rotated qubit basis plus two standard vectors: a valid d=4 context.
            let (s, co) = phase.sin_cos();
            let rays = vec![
                Ray::from_real(&[co, s, 0.0, 0.0]).unwrap(),
                Ray::from_real(&[-s, co, 0.0, 0.0]).unwrap(),
                Ray::basis(4, 2).unwrap(),
                Ray::basis(4, 3).unwrap(),
            ];
            prop_assert!(validate_context(&rays).is_valid());
            let psi = random_state(4, seed).unwrap();
            let total: f64 = rays
                .iter()
                .map(|r| born_probability(&psi, &projector_of(r).unwrap()).unwrap())
                .sum();
            prop_assert!((total - 1.0).abs() < 1e-8);
        }
    }
}
