//! Three-qubit GHZ operator algebra and the finite realism contradiction.

use crate::correlations::conditional_probability;
use crate::density::DensityOperator;
use crate::error::Result;
use crate::linalg::{sigma_x, sigma_y, Matrix, StateVector, C64, EPS_EQ};
use crate::states::{box_state, ghz_state};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GhzName {
    A,
    B,
    C,
    D,
}

impl GhzName {
    pub fn as_str(self) -> &'static str {
        match self {
            GhzName::A => "A",
            GhzName::B => "B",
            GhzName::C => "C",
            GhzName::D => "D",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    X,
    Y,
}

impl PauliAxis {
    fn matrix(self) -> Matrix {
        match self {
            PauliAxis::X => sigma_x(),
            PauliAxis::Y => sigma_y(),
        }
    }
}

/// Product of one σ_x or σ_y per particle, particle 1 leftmost.
#[derive(Debug, Clone, PartialEq)]
pub struct GhzOperator {
    pub name: GhzName,
    pub pattern: [PauliAxis; 3],
    pub matrix: Matrix,
}

impl GhzOperator {
    pub fn new(name: GhzName, pattern: [PauliAxis; 3]) -> Self {
        let matrix = pattern[0]
            .matrix()
            .tensor(&pattern[1].matrix())
            .tensor(&pattern[2].matrix());
        Self { name, pattern, matrix }
    }
}

/// A = σx σy σy, B = σy σx σy, C = σy σy σx, D = σx σx σx.
pub fn build_operators() -> [GhzOperator; 4] {
    use PauliAxis::{X, Y};
    [
        GhzOperator::new(GhzName::A, [X, Y, Y]),
        GhzOperator::new(GhzName::B, [Y, X, Y]),
        GhzOperator::new(GhzName::C, [Y, Y, X]),
        GhzOperator::new(GhzName::D, [X, X, X]),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraCheck {
    pub name: String,
    pub deviation: f64,
    pub pass: bool,
}

impl AlgebraCheck {
    fn new(name: String, deviation: f64) -> Self {
        Self { name, deviation, pass: deviation <= EPS_EQ }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraReport {
    pub checks: Vec<AlgebraCheck>,
}

impl AlgebraReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&AlgebraCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Hermiticity and involution of each operator, pairwise commutation, and D + ABC = 0.
pub fn verify_algebra() -> AlgebraReport {
    let ops = build_operators();
    let id = Matrix::identity(8);
    let mut checks = Vec::new();
    for op in &ops {
        let n = op.name.as_str();
        checks.push(AlgebraCheck::new(format!("{n}_hermitian"), op.matrix.hermiticity_deviation()));
    }
    for (i, p) in ops.iter().enumerate() {
        for q in &ops[i + 1..] {
            let dev = p.matrix.commutator(&q.matrix).expect("dim 8").max_abs();
            checks.push(AlgebraCheck::new(format!("{}{}_commute", p.name.as_str(), q.name.as_str()), dev));
        }
    }
    for op in &ops {
        let sq = op.matrix.matmul(&op.matrix).expect("dim 8");
        checks.push(AlgebraCheck::new(
            format!("{}_squared_identity", op.name.as_str()),
            sq.max_abs_diff(&id).expect("dim 8"),
        ));
    }
    let abc = ops[0].matrix.matmul(&ops[1].matrix).and_then(|m| m.matmul(&ops[2].matrix)).expect("dim 8");
    let sum = ops[3].matrix.add(&abc).expect("dim 8");
    checks.push(AlgebraCheck::new("D_plus_ABC_zero".into(), sum.max_abs()));
    AlgebraReport { checks }
}

/// Returns c ∈ {+1, −1} if `op·psi = c·psi` within tolerance.
pub fn eigenvalue_check(op: &GhzOperator, psi: &StateVector) -> Option<f64> {
    if psi.dim() != 8 || !psi.is_normalized() {
        return None;
    }
    let image = op.matrix.apply(psi).ok()?;
    [1.0, -1.0]
        .into_iter()
        .find(|&c| image.approx_eq(&psi.scale(C64::new(c, 0.0)), EPS_EQ))
}

/// Local values (m_x1, m_x2, m_x3) and (m_y1, m_y2, m_y3), each ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealismAssignment {
    pub m_x: [i8; 3],
    pub m_y: [i8; 3],
}

impl RealismAssignment {
    /// Products predicted for A, B, C and D.
    pub fn products(&self) -> [i8; 4] {
        let (x, y) = (self.m_x, self.m_y);
        [x[0] * y[1] * y[2], y[0] * x[1] * y[2], y[0] * y[1] * x[2], x[0] * x[1] * x[2]]
    }

    pub fn all() -> impl Iterator<Item = RealismAssignment> {
        (0u8..64).map(|bits| {
            let s = |k: u8| if bits >> k & 1 == 0 { 1i8 } else { -1 };
            RealismAssignment { m_x: [s(0), s(1), s(2)], m_y: [s(3), s(4), s(5)] }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealismReport {
    pub total_assignments: usize,
    /// Assignments with A = B = C = +1.
    pub consistent: Vec<RealismAssignment>,
    /// m_x1 m_x2 m_x3 forced by every consistent assignment, if unique.
    pub forced_d_product: Option<i8>,
    /// Eigenvalue of D on the GHZ state.
    pub quantum_d: Option<f64>,
    /// Assignments reproducing all four quantum values (+1, +1, +1, −1).
    pub reproducing_quantum: usize,
}

impl RealismReport {
    pub fn contradiction(&self) -> bool {
        matches!((self.forced_d_product, self.quantum_d), (Some(r), Some(q)) if f64::from(r) != q)
            && self.reproducing_quantum == 0
    }
}

/// Enumerates all 64 local assignments against the GHZ predictions.
pub fn realism_contradiction_report() -> RealismReport {
    let all: Vec<_> = RealismAssignment::all().collect();
    let consistent: Vec<_> = all.iter().copied().filter(|a| a.products()[..3] == [1, 1, 1]).collect();
    let first = consistent.first().map(|a| a.products()[3]);
    let forced_d_product = first.filter(|&d| consistent.iter().all(|a| a.products()[3] == d));
    let ops = build_operators();
    let psi = ghz_state();
    let quantum: Vec<Option<f64>> = ops.iter().map(|op| eigenvalue_check(op, &psi)).collect();
    let reproducing_quantum = all
        .iter()
        .filter(|a| {
            a.products()
                .iter()
                .zip(&quantum)
                .all(|(&p, q)| *q == Some(f64::from(p)))
        })
        .count();
    RealismReport {
        total_assignments: all.len(),
        consistent,
        forced_d_product,
        quantum_d: quantum[3],
        reproducing_quantum,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxesReport {
    pub p_a: f64,
    pub p_b: f64,
    pub p_not_a_given_b: f64,
    pub p_a_given_not_b: f64,
    pub purity: f64,
}

/// The particle is either in box A or in box B, so p(−A, B) = p(B) and
/// p(A, −B) = p(A).
pub fn boxes_analysis() -> Result<BoxesReport> {
    let psi = box_state();
    let rho = DensityOperator::from_pure(&psi)?;
    let a = StateVector::basis(2, 0)?;
    let b = StateVector::basis(2, 1)?;
    let p_a = rho.born_probability(&a)?;
    let p_b = rho.born_probability(&b)?;
    Ok(BoxesReport {
        p_a,
        p_b,
        p_not_a_given_b: conditional_probability(p_b, p_b)?,
        p_a_given_not_b: conditional_probability(p_a, p_a)?,
        purity: rho.purity(),
    })
}
