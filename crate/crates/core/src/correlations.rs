//! EPR joint probabilities, conditioning and collapse, photon-pair
//! amplitudes, and the spin correlation function P(â, b̂).

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::linalg::{StateVector, C64, EPS_EQ};
use crate::states::{photon_basis, psi_photon, singlet, spin_state, Direction, PhotonPairKind, PolarizationAngle, Sign};

/// One joint outcome of two spin measurements with its probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointOutcome {
    pub sign1: Sign,
    pub sign2: Sign,
    pub probability: f64,
}

/// Calcite analyzer output: ordinary (|θ⟩) or extraordinary (|θ⊥⟩).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    Ordinary,
    Extraordinary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhotonChannel {
    pub channel1: Channel,
    pub channel2: Channel,
}

impl PhotonChannel {
    pub const ALL: [PhotonChannel; 4] = [
        PhotonChannel::new(Channel::Ordinary, Channel::Ordinary),
        PhotonChannel::new(Channel::Ordinary, Channel::Extraordinary),
        PhotonChannel::new(Channel::Extraordinary, Channel::Ordinary),
        PhotonChannel::new(Channel::Extraordinary, Channel::Extraordinary),
    ];

    pub const fn new(channel1: Channel, channel2: Channel) -> Self {
        Self { channel1, channel2 }
    }
}

/// p(|â⟩₁, |b̂⟩₂) in the singlet, closed form.
pub fn singlet_joint_probability(a: Direction, b: Direction) -> f64 {
    let (sa, ca) = (a.theta() / 2.0).sin_cos();
    let (sb, cb) = (b.theta() / 2.0).sin_cos();
    0.5 * (sa * sa * cb * cb + sb * sb * ca * ca
        - 0.5 * a.theta().sin() * b.theta().sin() * (a.phi() - b.phi()).cos())
}

/// |(⟨s₁â| ⊗ ⟨s₂b̂|)|singlet⟩|² by direct contraction.
pub fn singlet_outcome_probability(a: Direction, sign1: Sign, b: Direction, sign2: Sign) -> f64 {
    let bra = spin_state(a, sign1).tensor(&spin_state(b, sign2));
    bra.inner(&singlet()).expect("dim 4").norm_sqr()
}

/// p(|â⟩₁, |b̂⟩₂) by contraction; agrees with [`singlet_joint_probability`].
pub fn singlet_joint_probability_contracted(a: Direction, b: Direction) -> f64 {
    singlet_outcome_probability(a, Sign::Plus, b, Sign::Plus)
}

/// All four outcome probabilities for settings (â, b̂).
pub fn singlet_outcomes(a: Direction, b: Direction) -> [JointOutcome; 4] {
    let mut out = [JointOutcome { sign1: Sign::Plus, sign2: Sign::Plus, probability: 0.0 }; 4];
    let mut k = 0;
    for s1 in Sign::BOTH {
        for s2 in Sign::BOTH {
            out[k] = JointOutcome { sign1: s1, sign2: s2, probability: singlet_outcome_probability(a, s1, b, s2) };
            k += 1;
        }
    }
    out
}

/// Post-measurement state when particle 1 yields `outcome1` along `axis`:
/// |±â⟩₁ ⊗ |∓â⟩₂.
pub fn collapse_singlet(outcome1: Sign, axis: Direction) -> StateVector {
    spin_state(axis, outcome1).tensor(&spin_state(axis, outcome1.flip()))
}

/// p(A|B) = p(A, B) / p(B).
pub fn conditional_probability(joint: f64, marginal: f64) -> Result<f64> {
    if marginal <= EPS_EQ {
        return Err(Error::ZeroMarginal(marginal));
    }
    if joint < 0.0 || joint > marginal + EPS_EQ {
        return Err(Error::JointExceedsMarginal { joint, marginal });
    }
    Ok((joint / marginal).min(1.0))
}

/// Coefficient of |θ₁^a⟩ ⊗ |θ₂^b⟩ in the photon-pair state, closed form.
pub fn photon_amplitude(kind: PhotonPairKind, ch: PhotonChannel, t1: PolarizationAngle, t2: PolarizationAngle) -> C64 {
    use Channel::{Extraordinary as E, Ordinary as O};
    let (s, c) = (t1.0 - t2.0).sin_cos();
    let v = FRAC_1_SQRT_2
        * match (kind, ch.channel1, ch.channel2) {
            (PhotonPairKind::I, O, O) | (PhotonPairKind::I, E, E) => s,
            (PhotonPairKind::I, E, O) => c,
            (PhotonPairKind::I, O, E) => -c,
            (PhotonPairKind::II, O, O) | (PhotonPairKind::II, E, E) => c,
            (PhotonPairKind::II, E, O) => -s,
            (PhotonPairKind::II, O, E) => s,
        };
    C64::new(v, 0.0)
}

/// Same coefficient by projecting onto the rotated analyzer basis.
pub fn photon_amplitude_contracted(
    kind: PhotonPairKind,
    ch: PhotonChannel,
    t1: PolarizationAngle,
    t2: PolarizationAngle,
) -> C64 {
    let pick = |t: PolarizationAngle, c: Channel| {
        let (o, e) = photon_basis(t);
        match c {
            Channel::Ordinary => o,
            Channel::Extraordinary => e,
        }
    };
    let bra = pick(t1, ch.channel1).tensor(&pick(t2, ch.channel2));
    bra.inner(&psi_photon(kind)).expect("dim 4")
}

pub fn photon_joint_probability(kind: PhotonPairKind, ch: PhotonChannel, t1: PolarizationAngle, t2: PolarizationAngle) -> f64 {
    photon_amplitude(kind, ch, t1, t2).norm_sqr()
}

/// −â·b̂
pub fn quantum_correlation_closed_form(a: Direction, b: Direction) -> f64 {
    -a.dot(&b)
}

/// P(â, b̂) = P₊₊ + P₋₋ − P₊₋ − P₋₊ from the four singlet outcome probabilities.
pub fn quantum_correlation(a: Direction, b: Direction) -> f64 {
    singlet_outcomes(a, b)
        .iter()
        .map(|o| o.sign1.value() * o.sign2.value() * o.probability)
        .sum()
}
