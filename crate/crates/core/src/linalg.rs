//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Tensor products use the left-factor-most-significant convention: the
//! amplitude of `u ⊗ v` at index `i * dim(v) + j` is `u[i] * v[j]`. Matrices
//! are stored row-major.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Absolute entrywise tolerance for golden-value comparisons.
pub const EPS_EQ: f64 = 1e-12;
/// Tolerance on |norm² − 1| for a state to count as normalized.
pub const EPS_NORM: f64 = 1e-12;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

fn all_finite(values: &[C64]) -> bool {
    values.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Finite-dimensional ket with optional basis labels.
///
/// Labels are metadata only; no arithmetic reads them.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
    labels: Option<Vec<String>>,
}

impl StateVector {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if !all_finite(&amps) {
            return Err(Error::NonFinite("state vector"));
        }
        Ok(Self { amps, labels: None })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Computational basis ket `|index⟩` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        if index >= dim {
            return Err(Error::SubsystemIndex { index, count: dim });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(Self { amps, labels: None })
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        check_dim(self.dim(), labels.len())?;
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= EPS_NORM
    }

    pub fn ensure_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized { norm_sqr: self.norm_sqr() })
        }
    }

    /// Rescales to unit norm. Fails on the zero vector.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized { norm_sqr: n * n });
        }
        Ok(self.scale(C64::new(1.0 / n, 0.0)))
    }

    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for &a in &self.amps {
            for &b in &other.amps {
                amps.push(a * b);
            }
        }
        StateVector { amps, labels: None }
    }

    /// ⟨self|other⟩, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn scale(&self, c: C64) -> StateVector {
        StateVector {
            amps: self.amps.iter().map(|&a| a * c).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn add(&self, other: &StateVector) -> Result<StateVector> {
        check_dim(self.dim(), other.dim())?;
        Ok(StateVector {
            amps: self.amps.iter().zip(&other.amps).map(|(a, b)| a + b).collect(),
            labels: self.labels.clone(),
        })
    }

    pub fn sub(&self, other: &StateVector) -> Result<StateVector> {
        self.add(&other.scale(-ONE))
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &StateVector, tol: f64) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= tol)
    }

    /// Equality up to a global phase: |⟨u|v⟩| = ‖u‖‖v‖ within `tol`.
    pub fn eq_up_to_phase(&self, other: &StateVector, tol: f64) -> bool {
        match self.inner(other) {
            Ok(ip) => (ip.norm() - (self.norm_sqr() * other.norm_sqr()).sqrt()).abs() <= tol,
            Err(_) => false,
        }
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.amps.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            check_dim(dim, row.len())?;
            data.extend(row);
        }
        if !all_finite(&data) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        Self::from_fn(entries.len(), |i, j| if i == j { entries[i] } else { ZERO })
    }

    /// |u⟩⟨v|
    pub fn outer(u: &StateVector, v: &StateVector) -> Self {
        let n = u.dim();
        let m = v.dim();
        debug_assert_eq!(n, m);
        Self::from_fn(n, |i, j| u.amplitude(i) * v.amplitude(j).conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, z: C64) {
        self.data[i * self.dim + j] = z;
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        check_dim(self.dim, v.dim())?;
        let amps = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v.amplitude(j)).sum())
            .collect();
        Ok(StateVector { amps, labels: v.labels.clone() })
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        check_dim(self.dim, other.dim)?;
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// MN − NM
    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    /// MN + NM
    pub fn anticommutator(&self, other: &Matrix) -> Result<Matrix> {
        self.matmul(other)?.add(&other.matmul(self)?)
    }

    pub fn adjoint(&self) -> Matrix {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Kronecker product with the same index convention as [`StateVector::tensor`].
    pub fn tensor(&self, other: &Matrix) -> Matrix {
        let m = other.dim;
        Self::from_fn(self.dim * m, |i, j| self.get(i / m, j / m) * other.get(i % m, j % m))
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        check_dim(self.dim, other.dim)?;
        Ok(Matrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        check_dim(self.dim, other.dim)?;
        Ok(Matrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: C64) -> Matrix {
        Matrix { dim: self.dim, data: self.data.iter().map(|&a| a * c).collect() }
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        check_dim(self.dim, other.dim)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Matrix, tol: f64) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= tol)
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    pub fn ensure_hermitian(&self) -> Result<()> {
        let deviation = self.hermiticity_deviation();
        if deviation <= EPS_EQ {
            Ok(())
        } else {
            Err(Error::NotHermitian { deviation })
        }
    }

    /// max |(M†M − I)ᵢⱼ|
    pub fn unitarity_deviation(&self) -> f64 {
        self.adjoint()
            .matmul(self)
            .and_then(|p| p.max_abs_diff(&Matrix::identity(self.dim)))
            .unwrap_or(f64::INFINITY)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    pub fn ensure_unitary(&self) -> Result<()> {
        let deviation = self.unitarity_deviation();
        if deviation <= EPS_EQ {
            Ok(())
        } else {
            Err(Error::NotUnitary { deviation })
        }
    }

    /// ⟨u|M|v⟩
    pub fn sandwich(&self, u: &StateVector, v: &StateVector) -> Result<C64> {
        u.inner(&self.apply(v)?)
    }

    /// Operator on a tensor product that acts as `self` on factor `index` and
    /// as the identity on every other factor of `dims`.
    pub fn embed(&self, dims: &[usize], index: usize) -> Result<Matrix> {
        if index >= dims.len() {
            return Err(Error::SubsystemIndex { index, count: dims.len() });
        }
        check_dim(dims[index], self.dim)?;
        let mut out = Matrix::identity(1);
        for (k, &d) in dims.iter().enumerate() {
            let factor = if k == index { self.clone() } else { Matrix::identity(d) };
            out = out.tensor(&factor);
        }
        Ok(out)
    }

    pub(crate) fn set_entry(&mut self, i: usize, j: usize, z: C64) {
        self.set(i, j, z);
    }
}

/// Pauli matrix σ_k for k = 1 (x), 2 (y), 3 (z).
///
/// # Panics
/// If `k` is not 1, 2 or 3.
pub fn pauli(k: usize) -> Matrix {
    match k {
        1 => Matrix::from_fn(2, |i, j| if i != j { ONE } else { ZERO }),
        2 => Matrix::from_fn(2, |i, j| match (i, j) {
            (0, 1) => -I,
            (1, 0) => I,
            _ => ZERO,
        }),
        3 => Matrix::diagonal(&[ONE, -ONE]),
        _ => panic!("Pauli index must be 1, 2 or 3, got {k}"),
    }
}

pub fn sigma_x() -> Matrix {
    pauli(1)
}

pub fn sigma_y() -> Matrix {
    pauli(2)
}

pub fn sigma_z() -> Matrix {
    pauli(3)
}

/// Spin-½ operator S_k = σ_k / 2 (ħ = 1).
pub fn spin_operator(k: usize) -> Matrix {
    pauli(k).scale(C64::new(0.5, 0.0))
}
