//! Bell and CHSH inequalities, their quantum violations, and a seeded Monte
//! Carlo harness for deterministic local-hidden-variable models.
//!
//! A model supplies a λ sampler and two ±1 response functions. The harness
//! estimates P(â, b̂) = E[A(â; λ) B(b̂; λ)] from i.i.d. draws. Sampling is split
//! into fixed-size partitions; partition `k` draws from ChaCha stream `k` of
//! the user seed, so serial and parallel execution give identical results.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::correlations::quantum_correlation;
use crate::error::{Error, Result};
use crate::linalg::EPS_EQ;
use crate::states::{Direction, Sign};

/// Samples per partition of a Monte Carlo run.
pub const PARTITION_SIZE: u64 = 1 << 16;
/// Default number of λ draws.
pub const DEFAULT_SAMPLES: u64 = 1_000_000;
/// Classical CHSH bound.
pub const CHSH_CLASSICAL_BOUND: f64 = 2.0;

/// Outcome of evaluating an inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    /// rhs − lhs
    pub margin: f64,
}

impl InequalityReport {
    pub fn new(lhs: f64, rhs: f64) -> Self {
        let margin = rhs - lhs;
        Self { lhs, rhs, satisfied: margin >= -EPS_EQ, margin }
    }

    pub fn violated(&self) -> bool {
        !self.satisfied
    }

    /// Satisfied once `slack` (e.g. a multiple of a standard error) is allowed.
    pub fn satisfied_within(&self, slack: f64) -> bool {
        self.margin >= -slack - EPS_EQ
    }
}

fn check_correlation(p: f64) -> Result<()> {
    if p.is_finite() && (-1.0 - EPS_EQ..=1.0 + EPS_EQ).contains(&p) {
        Ok(())
    } else {
        Err(Error::CorrelationRange(p))
    }
}

/// |P(a,b) − P(a,c)| ≤ 1 + P(b,c)
pub fn bell_check(p_ab: f64, p_ac: f64, p_bc: f64) -> Result<InequalityReport> {
    for p in [p_ab, p_ac, p_bc] {
        check_correlation(p)?;
    }
    Ok(InequalityReport::new((p_ab - p_ac).abs(), 1.0 + p_bc))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellScanRow {
    pub theta: f64,
    pub report: InequalityReport,
}

impl BellScanRow {
    pub fn violated(&self) -> bool {
        self.report.violated()
    }
}

/// Coplanar â, b̂, ĉ with ∠(â,b̂) = ∠(b̂,ĉ) = θ, evaluated with the singlet
/// prediction P = −cos(angle).
pub fn bell_scan(theta_grid: &[f64]) -> Vec<BellScanRow> {
    theta_grid
        .iter()
        .map(|&theta| {
            let p_ab = -theta.cos();
            let p_bc = p_ab;
            let p_ac = -(2.0 * theta).cos();
            BellScanRow { theta, report: InequalityReport::new((p_ab - p_ac).abs(), 1.0 + p_bc) }
        })
        .collect()
}

/// `steps` evenly spaced angles covering [0, π/2] inclusive.
pub fn bell_grid(steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![0.0],
        n => (0..n)
            .map(|k| if k == n - 1 { FRAC_PI_2 } else { FRAC_PI_2 * k as f64 / (n - 1) as f64 })
            .collect(),
    }
}

/// xy − xy′ + x′y + x′y′ for ±1 inputs.
pub fn chsh_combination(x: i8, y: i8, xp: i8, yp: i8) -> i8 {
    x * y - x * yp + xp * y + xp * yp
}

/// Every ±1 assignment of (x, y, x′, y′) with its CHSH combination.
pub fn chsh_identity_table() -> Vec<([i8; 4], i8)> {
    let mut rows = Vec::with_capacity(16);
    for bits in 0u8..16 {
        let v: [i8; 4] = std::array::from_fn(|k| if bits >> (3 - k) & 1 == 0 { 1 } else { -1 });
        rows.push((v, chsh_combination(v[0], v[1], v[2], v[3])));
    }
    rows
}

/// True iff the combination is ±2 for all 16 assignments.
pub fn chsh_identity_check() -> bool {
    chsh_identity_table().iter().all(|(_, s)| *s == 2 || *s == -2)
}

/// S = P(a,b) − P(a,b′) + P(a′,b) + P(a′,b′)
pub fn chsh_value(p_ab: f64, p_abp: f64, p_apb: f64, p_apbp: f64) -> f64 {
    p_ab - p_abp + p_apb + p_apbp
}

/// |S| ≤ 2
pub fn chsh_report(s: f64) -> InequalityReport {
    InequalityReport::new(s.abs(), CHSH_CLASSICAL_BOUND)
}

/// Four measurement axes for the CHSH combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings {
    pub a: Direction,
    pub a_prime: Direction,
    pub b: Direction,
    pub b_prime: Direction,
}

impl ChshSettings {
    /// Coplanar axes given by angles in the x–z plane.
    pub fn coplanar(a: f64, a_prime: f64, b: f64, b_prime: f64) -> Self {
        Self {
            a: Direction::in_xz_plane(a),
            a_prime: Direction::in_xz_plane(a_prime),
            b: Direction::in_xz_plane(b),
            b_prime: Direction::in_xz_plane(b_prime),
        }
    }

    /// b̂′, â′, b̂, â fanned out counter-clockwise in steps of π/4.
    pub fn fan() -> Self {
        Self::coplanar(3.0 * FRAC_PI_4, FRAC_PI_4, FRAC_PI_2, 0.0)
    }

    /// Pairs in the order (a,b), (a,b′), (a′,b), (a′,b′).
    pub fn pairs(&self) -> [(Direction, Direction); 4] {
        [(self.a, self.b), (self.a, self.b_prime), (self.a_prime, self.b), (self.a_prime, self.b_prime)]
    }
}

/// Singlet prediction of S for the given settings.
pub fn quantum_chsh(settings: &ChshSettings) -> f64 {
    let [p1, p2, p3, p4] = settings.pairs().map(|(a, b)| quantum_correlation(a, b));
    chsh_value(p1, p2, p3, p4)
}

/// A deterministic local-hidden-variable model.
pub trait LhvModel: Sync {
    type Lambda;

    fn sample_lambda<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Lambda;
    fn response_a(&self, dir: &Direction, lambda: &Self::Lambda) -> Sign;
    fn response_b(&self, dir: &Direction, lambda: &Self::Lambda) -> Sign;
}

/// λ uniform on the unit sphere; A = sign(â·λ), B = −sign(b̂·λ), with
/// sign(0) = +1.
#[derive(Debug, Clone, Copy, Default)]
pub struct SignModel;

fn sign_of(x: f64) -> Sign {
    if x >= 0.0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl LhvModel for SignModel {
    type Lambda = [f64; 3];

    fn sample_lambda<R: Rng + ?Sized>(&self, rng: &mut R) -> [f64; 3] {
        let z: f64 = rng.random_range(-1.0..=1.0);
        let phi: f64 = rng.random_range(0.0..TAU);
        let r = (1.0 - z * z).max(0.0).sqrt();
        let (s, c) = phi.sin_cos();
        [r * c, r * s, z]
    }

    fn response_a(&self, dir: &Direction, lambda: &[f64; 3]) -> Sign {
        sign_of(dot3(&dir.cartesian(), lambda))
    }

    fn response_b(&self, dir: &Direction, lambda: &[f64; 3]) -> Sign {
        sign_of(dot3(&dir.cartesian(), lambda)).flip()
    }
}

pub fn builtin_sign_model() -> SignModel {
    SignModel
}

/// Closed-form sign-model correlation for axes separated by `theta ∈ [0, π]`.
pub fn sign_model_correlation(theta: f64) -> f64 {
    -1.0 + 2.0 * theta / PI
}

/// Monte Carlo estimate of a correlation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationEstimate {
    pub mean: f64,
    pub standard_error: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl CorrelationEstimate {
    fn from_sum(sum: i64, n: u64, seed: u64) -> Self {
        let nf = n as f64;
        let mean = sum as f64 / nf;
        // products are ±1, so Σx² = n and the sample variance is n(1 − m²)/(n − 1)
        let standard_error = if n > 1 {
            ((1.0 - mean * mean).max(0.0) * nf / (nf - 1.0)).sqrt() / nf.sqrt()
        } else {
            0.0
        };
        Self { mean, standard_error, n_samples: n, seed }
    }
}

fn partition_rng(seed: u64, partition: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(partition);
    rng
}

fn partition_sums<M: LhvModel>(
    model: &M,
    dirs: &[(Direction, Direction)],
    seed: u64,
    partition: u64,
    len: u64,
) -> Vec<i64> {
    let mut rng = partition_rng(seed, partition);
    let mut sums = vec![0i64; dirs.len()];
    for _ in 0..len {
        let lambda = model.sample_lambda(&mut rng);
        for (acc, (a, b)) in sums.iter_mut().zip(dirs) {
            let prod = model.response_a(a, &lambda).value() * model.response_b(b, &lambda).value();
            *acc += prod as i64;
        }
    }
    sums
}

fn partitions(n: u64) -> Vec<(u64, u64)> {
    let count = n.div_ceil(PARTITION_SIZE);
    (0..count)
        .map(|k| (k, PARTITION_SIZE.min(n - k * PARTITION_SIZE)))
        .collect()
}

fn merge(per_partition: Vec<Vec<i64>>, width: usize) -> Vec<i64> {
    per_partition.into_iter().fold(vec![0i64; width], |mut acc, p| {
        for (a, v) in acc.iter_mut().zip(p) {
            *a += v;
        }
        acc
    })
}

/// Estimates every correlation in `dirs` from one shared set of λ draws.
pub fn lhv_correlations<M: LhvModel>(
    model: &M,
    dirs: &[(Direction, Direction)],
    n: u64,
    seed: u64,
) -> Result<Vec<CorrelationEstimate>> {
    if n == 0 {
        return Err(Error::ZeroSamples);
    }
    let parts: Vec<Vec<i64>> = partitions(n)
        .into_par_iter()
        .map(|(k, len)| partition_sums(model, dirs, seed, k, len))
        .collect();
    Ok(merge(parts, dirs.len())
        .into_iter()
        .map(|s| CorrelationEstimate::from_sum(s, n, seed))
        .collect())
}

/// Single-threaded variant of [`lhv_correlations`]; output is identical.
pub fn lhv_correlations_serial<M: LhvModel>(
    model: &M,
    dirs: &[(Direction, Direction)],
    n: u64,
    seed: u64,
) -> Result<Vec<CorrelationEstimate>> {
    if n == 0 {
        return Err(Error::ZeroSamples);
    }
    let parts: Vec<Vec<i64>> = partitions(n)
        .into_iter()
        .map(|(k, len)| partition_sums(model, dirs, seed, k, len))
        .collect();
    Ok(merge(parts, dirs.len())
        .into_iter()
        .map(|s| CorrelationEstimate::from_sum(s, n, seed))
        .collect())
}

pub fn lhv_correlation<M: LhvModel>(
    model: &M,
    a: Direction,
    b: Direction,
    n: u64,
    seed: u64,
) -> Result<CorrelationEstimate> {
    Ok(lhv_correlations(model, &[(a, b)], n, seed)?[0])
}

/// Bell check on LHV estimates, with the combined standard error of the three terms.
pub fn lhv_bell_check(ab: &CorrelationEstimate, ac: &CorrelationEstimate, bc: &CorrelationEstimate) -> Result<(InequalityReport, f64)> {
    let report = bell_check(ab.mean, ac.mean, bc.mean)?;
    let se = (ab.standard_error.powi(2) + ac.standard_error.powi(2) + bc.standard_error.powi(2)).sqrt();
    Ok((report, se))
}

/// CHSH on LHV estimates ordered as [`ChshSettings::pairs`], with combined standard error.
pub fn lhv_chsh(est: &[CorrelationEstimate; 4]) -> (f64, f64) {
    let s = chsh_value(est[0].mean, est[1].mean, est[2].mean, est[3].mean);
    let se = est.iter().map(|e| e.standard_error.powi(2)).sum::<f64>().sqrt();
    (s, se)
}
