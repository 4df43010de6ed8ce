//! Density operators with an explicit subsystem factorization.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, StateVector, C64, EPS_EQ, I, ONE, ZERO};

/// Number of random unit vectors used to probe positivity.
pub const POSITIVITY_PROBES: usize = 100;
const PROBE_SEED: u64 = 0x5eed_0fd0;

/// Hermitian, unit-trace, non-negative operator.
///
/// `factor_dims` lists the subsystem dimensions in tensor order; their product
/// equals the matrix dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: Matrix,
    factor_dims: Vec<usize>,
}

/// Σ wᵢ |ψᵢ⟩⟨ψᵢ| with weights in (0, 1) summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct Mixture {
    weights: Vec<f64>,
    states: Vec<StateVector>,
}

impl Mixture {
    pub fn new(weights: Vec<f64>, states: Vec<StateVector>) -> Result<Self> {
        if weights.len() != states.len() {
            return Err(Error::InvalidMixture(format!(
                "{} weights for {} states",
                weights.len(),
                states.len()
            )));
        }
        if weights.is_empty() {
            return Err(Error::InvalidMixture("empty mixture".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && **w < 1.0)) {
            return Err(Error::InvalidMixture(format!("weight {w} outside (0, 1)")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > EPS_EQ {
            return Err(Error::InvalidMixture(format!("weights sum to {total}")));
        }
        let dim = states[0].dim();
        for s in &states {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: s.dim() });
            }
            s.ensure_normalized()?;
        }
        Ok(Self { weights, states })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }
}

fn check_factorization(dim: usize, dims: &[usize]) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) || dims.iter().product::<usize>() != dim {
        return Err(Error::BadFactorization { dims: dims.to_vec(), dim });
    }
    Ok(())
}

impl DensityOperator {
    /// |ψ⟩⟨ψ| as a single-subsystem operator.
    pub fn from_pure(v: &StateVector) -> Result<Self> {
        Self::from_pure_factored(v, &[v.dim()])
    }

    pub fn from_pure_factored(v: &StateVector, factor_dims: &[usize]) -> Result<Self> {
        v.ensure_normalized()?;
        check_factorization(v.dim(), factor_dims)?;
        Ok(Self { matrix: Matrix::outer(v, v), factor_dims: factor_dims.to_vec() })
    }

    pub fn from_mixture(m: &Mixture) -> Result<Self> {
        let dim = m.states[0].dim();
        let mut acc = Matrix::zeros(dim);
        for (w, s) in m.weights.iter().zip(&m.states) {
            acc = acc.add(&Matrix::outer(s, s).scale(C64::new(*w, 0.0)))?;
        }
        Ok(Self { matrix: acc, factor_dims: vec![dim] })
    }

    /// Validates hermiticity, unit trace and (probe-checked) positivity.
    pub fn from_matrix(matrix: Matrix, factor_dims: &[usize]) -> Result<Self> {
        check_factorization(matrix.dim(), factor_dims)?;
        let herm = matrix.hermiticity_deviation();
        if herm > EPS_EQ {
            return Err(Error::InvalidDensity(format!("not hermitian (deviation {herm:e})")));
        }
        let tr = matrix.trace();
        if (tr - ONE).norm() > EPS_EQ {
            return Err(Error::InvalidDensity(format!("trace {tr} != 1")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
        for _ in 0..POSITIVITY_PROBES {
            let v = random_state(matrix.dim(), &mut rng);
            let p = matrix.sandwich(&v, &v)?.re;
            if p < -EPS_EQ {
                return Err(Error::InvalidDensity(format!("negative probe value {p:e}")));
            }
        }
        Ok(Self { matrix, factor_dims: factor_dims.to_vec() })
    }

    /// Re-declares the subsystem factorization.
    pub fn with_factors(mut self, factor_dims: &[usize]) -> Result<Self> {
        check_factorization(self.dim(), factor_dims)?;
        self.factor_dims = factor_dims.to_vec();
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    /// ρ₁ ⊗ ρ₂ with concatenated factorizations.
    pub fn tensor(&self, other: &DensityOperator) -> DensityOperator {
        let mut dims = self.factor_dims.clone();
        dims.extend_from_slice(&other.factor_dims);
        DensityOperator { matrix: self.matrix.tensor(&other.matrix), factor_dims: dims }
    }

    /// tr(ρ²)
    pub fn purity(&self) -> f64 {
        // tr(ρ²) = Σᵢⱼ |ρᵢⱼ|² for hermitian ρ
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += self.matrix.get(i, j).norm_sqr();
            }
        }
        acc
    }

    /// tr(ρA) for hermitian `a`.
    pub fn expectation(&self, a: &Matrix) -> Result<f64> {
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: a.dim() });
        }
        a.ensure_hermitian()?;
        Ok(self.matrix.matmul(a)?.trace().re)
    }

    /// ⟨a|ρ|a⟩, clamped into [0, 1].
    pub fn born_probability(&self, a: &StateVector) -> Result<f64> {
        a.ensure_normalized()?;
        let p = self.matrix.sandwich(a, a)?.re;
        Ok(p.clamp(0.0, 1.0))
    }

    /// Reduced operator on subsystem `keep`, tracing out every other factor.
    pub fn partial_trace(&self, keep: usize) -> Result<DensityOperator> {
        let dims = &self.factor_dims;
        if dims.len() < 2 {
            return Err(Error::NotComposite(dims.len()));
        }
        if keep >= dims.len() {
            return Err(Error::SubsystemIndex { index: keep, count: dims.len() });
        }
        let dk = dims[keep];
        let inner: usize = dims[keep + 1..].iter().product();
        let outer: usize = dims[..keep].iter().product();
        let index = |o: usize, k: usize, i: usize| (o * dk + k) * inner + i;
        let mut reduced = Matrix::zeros(dk);
        for a in 0..dk {
            for b in 0..dk {
                let mut acc = ZERO;
                for o in 0..outer {
                    for i in 0..inner {
                        acc += self.matrix.get(index(o, a, i), index(o, b, i));
                    }
                }
                reduced.set_entry(a, b, acc);
            }
        }
        Ok(DensityOperator { matrix: reduced, factor_dims: vec![dk] })
    }

    /// i[ρ, H], the instantaneous dρ/dt.
    pub fn liouville_rhs(&self, h: &Matrix) -> Result<Matrix> {
        if h.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: h.dim() });
        }
        h.ensure_hermitian()?;
        Ok(self.matrix.commutator(h)?.scale(I))
    }

    /// U ρ U†
    pub fn evolve(&self, u: &Matrix) -> Result<DensityOperator> {
        let m = u.matmul(&self.matrix)?.matmul(&u.adjoint())?;
        Ok(DensityOperator { matrix: m, factor_dims: self.factor_dims.clone() })
    }
}

/// Factor order of the no-signaling system: apparatus A, subsystems U and V, apparatus B.
pub const FACTOR_A: usize = 0;
pub const FACTOR_U: usize = 1;
pub const FACTOR_V: usize = 2;
pub const FACTOR_B: usize = 3;

/// Expectations of an observable on V with and without apparatus A coupling to U.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoSignalingOutcome {
    pub with_measurement: f64,
    pub without_measurement: f64,
}

impl NoSignalingOutcome {
    pub fn difference(&self) -> f64 {
        (self.with_measurement - self.without_measurement).abs()
    }
}

/// Matrix units |i⟩⟨j| on each listed factor, embedded in the full space.
fn local_test_operators(dims: &[usize], factors: &[usize]) -> Vec<Matrix> {
    let mut ops = Vec::new();
    for &f in factors {
        let d = dims[f];
        for i in 0..d {
            for j in 0..d {
                let unit = Matrix::from_fn(d, |r, c| if r == i && c == j { ONE } else { ZERO });
                ops.push(unit.embed(dims, f).expect("valid factor"));
            }
        }
    }
    ops
}

fn ensure_local(u: &Matrix, dims: &[usize], complement: &[usize], what: &'static str) -> Result<()> {
    for t in local_test_operators(dims, complement) {
        if u.commutator(&t)?.max_abs() > EPS_EQ {
            return Err(Error::NotLocal(what));
        }
    }
    Ok(())
}

/// Runs the four-part (A, U, V, B) no-signaling experiment.
///
/// `rho_uv` must carry a two-factor factorization (U, V). `u_ua` and `u_vb`
/// are full-space unitaries that must act trivially outside (A, U) and (V, B)
/// respectively; `theta_v` is an observable on V alone. Returns ⟨θ_V⟩ after
/// U_VB·U_UA and after U_VB only.
pub fn no_signaling_experiment(
    rho_a: &DensityOperator,
    rho_uv: &DensityOperator,
    rho_b: &DensityOperator,
    u_ua: &Matrix,
    u_vb: &Matrix,
    theta_v: &Matrix,
) -> Result<NoSignalingOutcome> {
    if rho_uv.factor_dims().len() != 2 {
        return Err(Error::BadFactorization { dims: rho_uv.factor_dims().to_vec(), dim: rho_uv.dim() });
    }
    let dims = [rho_a.dim(), rho_uv.factor_dims()[0], rho_uv.factor_dims()[1], rho_b.dim()];
    let rho0 = DensityOperator::from_matrix(
        rho_a.matrix().tensor(rho_uv.matrix()).tensor(rho_b.matrix()),
        &dims,
    )?;
    let total = rho0.dim();
    for u in [u_ua, u_vb] {
        if u.dim() != total {
            return Err(Error::DimensionMismatch { expected: total, found: u.dim() });
        }
        u.ensure_unitary()?;
    }
    ensure_local(u_ua, &dims, &[FACTOR_V, FACTOR_B], "(A, U)")?;
    ensure_local(u_vb, &dims, &[FACTOR_A, FACTOR_U], "(V, B)")?;
    let deviation = u_ua.commutator(u_vb)?.max_abs();
    if deviation > EPS_EQ {
        return Err(Error::NonCommuting { deviation });
    }
    theta_v.ensure_hermitian()?;
    let observable = theta_v.embed(&dims, FACTOR_V)?;

    let rho_ba = rho0.evolve(&u_vb.matmul(u_ua)?)?;
    let rho_b_only = rho0.evolve(u_vb)?;
    Ok(NoSignalingOutcome {
        with_measurement: rho_ba.expectation(&observable)?,
        without_measurement: rho_b_only.expectation(&observable)?,
    })
}

/// Haar-ish random unit vector: complex Gaussian entries, normalized.
pub fn random_state(dim: usize, rng: &mut impl Rng) -> StateVector {
    loop {
        let amps: Vec<C64> = (0..dim)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        if let Ok(v) = StateVector::new(amps).and_then(|v| v.normalized()) {
            return v;
        }
    }
}

/// Random unitary from a complex Gaussian matrix orthonormalized column by
/// column (modified Gram–Schmidt).
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> Matrix {
    'retry: loop {
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
        for _ in 0..dim {
            let mut v: Vec<C64> = (0..dim)
                .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            for q in &cols {
                let proj: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
            let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n < 1e-8 {
                continue 'retry;
            }
            cols.push(v.into_iter().map(|z| z / n).collect());
        }
        return Matrix::from_fn(dim, |i, j| cols[j][i]);
    }
}

/// Random full-rank mixed state Σ wᵢ|ψᵢ⟩⟨ψᵢ| with `dim` random components.
pub fn random_density(dim: usize, rng: &mut impl Rng) -> DensityOperator {
    let raw: Vec<f64> = (0..dim).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut acc = Matrix::zeros(dim);
    for w in raw {
        let v = random_state(dim, rng);
        acc = acc.add(&Matrix::outer(&v, &v).scale(C64::new(w / total, 0.0))).expect("same dim");
    }
    DensityOperator { matrix: acc, factor_dims: vec![dim] }
}

/// Inputs for one seeded no-signaling trial on qubit factors, with the
/// singlet on (U, V) and σ_z on V as the observable.
pub fn no_signaling_trial(seed: u64) -> Result<NoSignalingOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho_a = random_density(2, &mut rng);
    let rho_b = random_density(2, &mut rng);
    let rho_uv = DensityOperator::from_pure_factored(&crate::states::singlet(), &[2, 2])?;
    let u_ua = random_unitary(4, &mut rng).tensor(&Matrix::identity(4));
    let u_vb = Matrix::identity(4).tensor(&random_unitary(4, &mut rng));
    no_signaling_experiment(&rho_a, &rho_uv, &rho_b, &u_ua, &u_vb, &crate::linalg::sigma_z())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pauli, sigma_x, sigma_z};
    use crate::states::{box_state, down, ghz_state, singlet, spin_state, up, Direction, Sign};

    fn half_identity() -> Matrix {
        Matrix::identity(2).scale(C64::new(0.5, 0.0))
    }

    #[test]
    fn pure_up() {
        let r = DensityOperator::from_pure(&up()).unwrap();
        assert_eq!(r.matrix(), &Matrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap());
    }

    #[test]
    fn pure_singlet_is_projector() {
        let r = DensityOperator::from_pure(&singlet()).unwrap();
        let sq = r.matrix().matmul(r.matrix()).unwrap();
        assert!(sq.approx_eq(r.matrix(), EPS_EQ));
        assert!((r.matrix().trace() - ONE).norm() <= EPS_EQ);
        assert!((r.purity() - 1.0).abs() <= EPS_EQ);
    }

    #[test]
    fn from_pure_rejects_unnormalized() {
        let v = StateVector::from_real(&[1.0, 1.0]).unwrap();
        assert!(matches!(DensityOperator::from_pure(&v), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn maximally_mixed_qubit() {
        let m = Mixture::new(vec![0.5, 0.5], vec![up(), down()]).unwrap();
        let r = DensityOperator::from_mixture(&m).unwrap();
        assert!(r.matrix().approx_eq(&half_identity(), EPS_EQ));
        assert!((r.purity() - 0.5).abs() <= EPS_EQ);
    }

    #[test]
    fn non_orthogonal_mixture_purity() {
        // ½|↑⟩⟨↑| + ½|+x⟩⟨+x| = ((3/4, 1/4), (1/4, 1/4)); tr ρ² = 9/16 + 2/16 + 1/16
        let n = spin_state(Direction::x(), Sign::Plus);
        let r = DensityOperator::from_mixture(&Mixture::new(vec![0.5, 0.5], vec![up(), n]).unwrap())
            .unwrap();
        let expected = Matrix::from_real_rows(&[&[0.75, 0.25], &[0.25, 0.25]]).unwrap();
        assert!(r.matrix().approx_eq(&expected, EPS_EQ));
        assert!((r.purity() - 0.75).abs() <= EPS_EQ);
    }

    #[test]
    fn mixture_validation() {
        assert!(Mixture::new(vec![0.5, 0.6], vec![up(), down()]).is_err());
        assert!(Mixture::new(vec![1.0], vec![up()]).is_err());
        assert!(Mixture::new(vec![0.5], vec![up(), down()]).is_err());
        let bad = StateVector::from_real(&[1.0, 1.0]).unwrap();
        assert!(Mixture::new(vec![0.5, 0.5], vec![up(), bad]).is_err());
        assert!(Mixture::new(vec![0.5, 0.5], vec![up(), singlet()]).is_err());
    }

    #[test]
    fn expectation_basics() {
        let r = DensityOperator::from_pure(&up()).unwrap();
        assert!((r.expectation(&sigma_z()).unwrap() - 1.0).abs() <= EPS_EQ);
        let non_herm = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(r.expectation(&non_herm), Err(Error::NotHermitian { .. })));
        assert!(r.expectation(&Matrix::identity(4)).is_err());
    }

    #[test]
    fn reduced_singlet() {
        let r = DensityOperator::from_pure_factored(&singlet(), &[2, 2]).unwrap();
        for keep in 0..2 {
            let red = r.partial_trace(keep).unwrap();
            assert!(red.matrix().approx_eq(&half_identity(), EPS_EQ));
            assert!((red.purity() - 0.5).abs() <= EPS_EQ);
            for k in 1..=3 {
                assert!(red.expectation(&pauli(k)).unwrap().abs() <= EPS_EQ);
            }
            assert!((red.born_probability(&up()).unwrap() - 0.5).abs() <= EPS_EQ);
        }
    }

    #[test]
    fn product_state_reduces_to_factor() {
        let n = spin_state(Direction::new(1.1, 2.3).unwrap(), Sign::Plus);
        let r = DensityOperator::from_pure_factored(&up().tensor(&n), &[2, 2]).unwrap();
        let red = r.partial_trace(1).unwrap();
        assert!(red.matrix().approx_eq(&Matrix::outer(&n, &n), EPS_EQ));
        assert!(red.matrix().approx_eq(
            DensityOperator::from_pure(&n).unwrap().matrix(),
            EPS_EQ
        ));
    }

    #[test]
    fn partial_trace_errors() {
        let r = DensityOperator::from_pure(&box_state()).unwrap();
        assert_eq!(r.partial_trace(0).unwrap_err(), Error::NotComposite(1));
        let r = DensityOperator::from_pure_factored(&singlet(), &[2, 2]).unwrap();
        assert!(matches!(r.partial_trace(2), Err(Error::SubsystemIndex { .. })));
        assert!(DensityOperator::from_pure_factored(&singlet(), &[2, 3]).is_err());
    }

    #[test]
    fn partial_trace_three_factors() {
        let r = DensityOperator::from_pure_factored(&ghz_state(), &[2, 2, 2]).unwrap();
        for keep in 0..3 {
            assert!(r.partial_trace(keep).unwrap().matrix().approx_eq(&half_identity(), EPS_EQ));
        }
        // mixed dimensions: |↑⟩ ⊗ |2⟩ in C² ⊗ C³
        let v = up().tensor(&StateVector::basis(3, 2).unwrap());
        let r = DensityOperator::from_pure_factored(&v, &[2, 3]).unwrap();
        let red = r.partial_trace(1).unwrap();
        assert!((red.matrix().get(2, 2) - ONE).norm() <= EPS_EQ);
        assert_eq!(red.factor_dims(), &[3]);
    }

    #[test]
    fn born_probabilities() {
        let r = DensityOperator::from_pure(&box_state()).unwrap();
        let a = StateVector::basis(2, 0).unwrap();
        assert!((r.born_probability(&a).unwrap() - 0.5).abs() <= EPS_EQ);
        let e = DensityOperator::from_pure(&up()).unwrap();
        assert_eq!(e.born_probability(&up()).unwrap(), 1.0);
    }

    #[test]
    fn liouville_commuting_is_zero() {
        let r = DensityOperator::from_pure(&up()).unwrap();
        assert!(r.liouville_rhs(&sigma_z()).unwrap().max_abs() <= EPS_EQ);
    }

    #[test]
    fn liouville_up_sigma_x() {
        // [ρ, σx] = ((0,1),(−1,0)); times i
        let r = DensityOperator::from_pure(&up()).unwrap();
        let rhs = r.liouville_rhs(&sigma_x()).unwrap();
        let expected = Matrix::from_rows(vec![vec![ZERO, I], vec![-I, ZERO]]).unwrap();
        assert!(rhs.approx_eq(&expected, EPS_EQ));
        assert!(rhs.is_hermitian(EPS_EQ));
        let non_herm = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(r.liouville_rhs(&non_herm).is_err());
    }

    #[test]
    fn from_matrix_validates() {
        assert!(DensityOperator::from_matrix(half_identity(), &[2]).is_ok());
        assert!(DensityOperator::from_matrix(Matrix::identity(2), &[2]).is_err());
        let neg = Matrix::from_real_rows(&[&[1.5, 0.0], &[0.0, -0.5]]).unwrap();
        assert!(DensityOperator::from_matrix(neg, &[2]).is_err());
        let non_herm = Matrix::from_real_rows(&[&[0.5, 0.3], &[0.0, 0.5]]).unwrap();
        assert!(DensityOperator::from_matrix(non_herm, &[2]).is_err());
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for d in [2, 4, 16] {
            assert!(random_unitary(d, &mut rng).is_unitary(1e-12));
        }
    }

    #[test]
    fn random_density_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for d in [2, 4] {
            let r = random_density(d, &mut rng);
            assert!(DensityOperator::from_matrix(r.matrix().clone(), &[d]).is_ok());
            assert!(r.purity() < 1.0);
        }
    }

    #[test]
    fn no_signaling_identity_coupling() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rho_a = random_density(2, &mut rng);
        let rho_b = random_density(2, &mut rng);
        let rho_uv = DensityOperator::from_pure_factored(&singlet(), &[2, 2]).unwrap();
        let u_vb = Matrix::identity(4).tensor(&random_unitary(4, &mut rng));
        let out = no_signaling_experiment(&rho_a, &rho_uv, &rho_b, &Matrix::identity(16), &u_vb, &sigma_z())
            .unwrap();
        assert_eq!(out.with_measurement, out.without_measurement);
    }

    #[test]
    fn no_signaling_seeded_trials() {
        let max = (0..20).map(|s| no_signaling_trial(s).unwrap().difference()).fold(0.0, f64::max);
        assert!(max <= 1e-12, "max difference {max:e}");
    }

    #[test]
    fn no_signaling_rejects_nonlocal_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let rho_a = random_density(2, &mut rng);
        let rho_b = random_density(2, &mut rng);
        let rho_uv = DensityOperator::from_pure_factored(&singlet(), &[2, 2]).unwrap();
        let local_ua = random_unitary(4, &mut rng).tensor(&Matrix::identity(4));
        let local_vb = Matrix::identity(4).tensor(&random_unitary(4, &mut rng));
        let global = random_unitary(16, &mut rng);
        let err = no_signaling_experiment(&rho_a, &rho_uv, &rho_b, &global, &local_vb, &sigma_z());
        assert_eq!(err.unwrap_err(), Error::NotLocal("(A, U)"));
        let err = no_signaling_experiment(&rho_a, &rho_uv, &rho_b, &local_ua, &global, &sigma_z());
        assert_eq!(err.unwrap_err(), Error::NotLocal("(V, B)"));
        let not_unitary = Matrix::identity(16).scale(C64::new(2.0, 0.0));
        let err = no_signaling_experiment(&rho_a, &rho_uv, &rho_b, &not_unitary, &local_vb, &sigma_z());
        assert!(matches!(err, Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn no_signaling_rejects_overlapping_unitaries() {
        // a coupling between U and V is not an A-side operation
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let rho_a = random_density(2, &mut rng);
        let rho_b = random_density(2, &mut rng);
        let rho_uv = DensityOperator::from_pure_factored(&singlet(), &[2, 2]).unwrap();
        let on_uv = Matrix::identity(2).tensor(&random_unitary(4, &mut rng)).tensor(&Matrix::identity(2));
        let local_vb = Matrix::identity(4).tensor(&random_unitary(4, &mut rng));
        assert!(no_signaling_experiment(&rho_a, &rho_uv, &rho_b, &on_uv, &local_vb, &sigma_z()).is_err());
    }
}
