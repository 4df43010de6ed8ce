//! Named states: spin-direction kets, the singlet, photon polarization pairs,
//! GHZ and the two-box state.
//!
//! Basis orderings: spin (↑, ↓); photon (H, V); multi-particle products put
//! particle 1 leftmost (most significant index).

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use crate::error::{Error, Result};
use crate::linalg::{StateVector, C64, ZERO};

/// Unit vector on the sphere given by polar angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    theta: f64,
    phi: f64,
}

impl Direction {
    /// `theta ∈ [0, π]`; `phi` is reduced modulo 2π.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::InvalidDirection("non-finite angle".into()));
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidDirection(format!("theta = {theta} outside [0, π]")));
        }
        let phi = phi.rem_euclid(TAU);
        // rem_euclid can round up to exactly 2π for tiny negative inputs
        let phi = if phi >= TAU { 0.0 } else { phi };
        Ok(Self { theta, phi })
    }

    /// Direction in the x–z plane at angle `angle` from ẑ towards x̂, for any real angle.
    pub fn in_xz_plane(angle: f64) -> Self {
        let a = angle.rem_euclid(TAU);
        if a <= PI {
            Self { theta: a, phi: 0.0 }
        } else {
            Self { theta: TAU - a, phi: PI }
        }
    }

    pub fn z() -> Self {
        Self { theta: 0.0, phi: 0.0 }
    }

    pub fn x() -> Self {
        Self { theta: PI / 2.0, phi: 0.0 }
    }

    pub fn y() -> Self {
        Self { theta: PI / 2.0, phi: PI / 2.0 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn cartesian(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        let a = self.cartesian();
        let b = other.cartesian();
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    /// −n̂: θ → π − θ, φ → φ + π.
    pub fn antipode(&self) -> Self {
        let phi = (self.phi + PI).rem_euclid(TAU);
        Self { theta: PI - self.theta, phi: if phi >= TAU { 0.0 } else { phi } }
    }
}

/// Analyzer orientation for a polarization measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationAngle(pub f64);

/// Spin projection sign along a direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_i32(s: i32) -> Option<Sign> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

pub fn up() -> StateVector {
    StateVector::basis(2, 0).expect("dim 2")
}

pub fn down() -> StateVector {
    StateVector::basis(2, 1).expect("dim 2")
}

/// |n̂⟩ = cos(θ/2)|↑⟩ + e^{iφ} sin(θ/2)|↓⟩ and
/// |−n̂⟩ = sin(θ/2)|↑⟩ − e^{iφ} cos(θ/2)|↓⟩.
///
/// The minus ket uses this explicit form rather than `spin_state(antipode, +)`;
/// the two differ by a global phase.
pub fn spin_state(d: Direction, sign: Sign) -> StateVector {
    let (s, c) = (d.theta / 2.0).sin_cos();
    let e = C64::from_polar(1.0, d.phi);
    let amps = match sign {
        Sign::Plus => vec![C64::new(c, 0.0), e * s],
        Sign::Minus => vec![C64::new(s, 0.0), -e * c],
    };
    StateVector::new(amps).expect("finite").with_labels(["up", "down"]).expect("dim 2")
}

/// (1/√2)(|↑↓⟩ − |↓↑⟩)
pub fn singlet() -> StateVector {
    StateVector::from_real(&[0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0])
        .expect("finite")
        .with_labels(["up,up", "up,down", "down,up", "down,down"])
        .expect("dim 4")
}

/// (1/√2)(|n̂⟩⊗|−n̂⟩ − |−n̂⟩⊗|n̂⟩) for an arbitrary axis; equals [`singlet`] up to phase.
pub fn singlet_along(d: Direction) -> StateVector {
    let p = spin_state(d, Sign::Plus);
    let m = spin_state(d, Sign::Minus);
    p.tensor(&m)
        .sub(&m.tensor(&p))
        .expect("same dim")
        .scale(C64::new(FRAC_1_SQRT_2, 0.0))
}

pub fn horizontal() -> StateVector {
    StateVector::basis(2, 0).expect("dim 2")
}

pub fn vertical() -> StateVector {
    StateVector::basis(2, 1).expect("dim 2")
}

/// (|θ⟩, |θ⊥⟩) with |θ⟩ = cosθ|H⟩ + sinθ|V⟩ and |θ⊥⟩ = −sinθ|H⟩ + cosθ|V⟩.
pub fn photon_basis(t: PolarizationAngle) -> (StateVector, StateVector) {
    let (s, c) = t.0.sin_cos();
    let ordinary = StateVector::from_real(&[c, s]).expect("finite");
    let extraordinary = StateVector::from_real(&[-s, c]).expect("finite");
    (ordinary, extraordinary)
}

/// The two photon-pair sources.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhotonPairKind {
    /// (1/√2)(|VH⟩ − |HV⟩), positronium ground-state decay.
    I,
    /// (1/√2)(|HH⟩ + |VV⟩), atomic cascade.
    II,
}

/// Two-photon state in the basis (HH, HV, VH, VV).
pub fn psi_photon(kind: PhotonPairKind) -> StateVector {
    let h = FRAC_1_SQRT_2;
    let amps = match kind {
        PhotonPairKind::I => [0.0, -h, h, 0.0],
        PhotonPairKind::II => [h, 0.0, 0.0, h],
    };
    StateVector::from_real(&amps)
        .expect("finite")
        .with_labels(["HH", "HV", "VH", "VV"])
        .expect("dim 4")
}

/// (1/√2)(|↑↑↑⟩ − |↓↓↓⟩)
pub fn ghz_state() -> StateVector {
    let mut amps = vec![ZERO; 8];
    amps[0] = C64::new(FRAC_1_SQRT_2, 0.0);
    amps[7] = C64::new(-FRAC_1_SQRT_2, 0.0);
    StateVector::new(amps).expect("finite")
}

/// Permutes the three tensor factors of an 8-dim state: factor `k` of the
/// result is factor `perm[k]` of the input.
pub fn permute_three_qubits(v: &StateVector, perm: [usize; 3]) -> Result<StateVector> {
    if v.dim() != 8 {
        return Err(Error::DimensionMismatch { expected: 8, found: v.dim() });
    }
    let mut amps = vec![ZERO; 8];
    for (idx, amp) in amps.iter_mut().enumerate() {
        let bits = [(idx >> 2) & 1, (idx >> 1) & 1, idx & 1];
        let mut src = [0usize; 3];
        for k in 0..3 {
            src[perm[k]] = bits[k];
        }
        *amp = v.amplitude((src[0] << 2) | (src[1] << 1) | src[2]);
    }
    StateVector::new(amps)
}

/// (1/√2)(|A⟩ + |B⟩) for a particle split between two boxes.
pub fn box_state() -> StateVector {
    StateVector::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2])
        .expect("finite")
        .with_labels(["A", "B"])
        .expect("dim 2")
}
