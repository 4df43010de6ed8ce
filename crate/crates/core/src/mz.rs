//! Mode-labelled amplitude propagation through Mach-Zehnder interferometers.
//!
//! Arms are labelled as in the usual sketch: the input `a` hits BS₁, which
//! transmits into `b` and reflects into `c`; mirrors send `b → d` and `c → e`;
//! BS₂ sends `d` to `g` (transmitted) / `f` (reflected) and `e` to `f` / `g`.
//! Every reflection, at a splitter or a mirror, multiplies by `i`; splitters
//! scale both outputs by 1/√2. With BS₂ removed, `d → g` and `e → f`.
//!
//! In the double interferometer the `c⁺` and `c⁻` arms cross; a pair found
//! on both is converted to the annihilation-photon mode γ with its amplitude
//! unchanged.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{C64, EPS_EQ, I, ONE, ZERO};

/// Amplitudes at or below this modulus are treated as cancelled and not stored.
pub const AMPLITUDE_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Particle {
    Positron,
    Electron,
    /// The lone quantum of a single interferometer.
    Single,
}

impl Particle {
    fn suffix(self) -> &'static str {
        match self {
            Particle::Positron => "+",
            Particle::Electron => "-",
            Particle::Single => "",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arm {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Arm {
    fn letter(self) -> char {
        match self {
            Arm::A => 'a',
            Arm::B => 'b',
            Arm::C => 'c',
            Arm::D => 'd',
            Arm::E => 'e',
            Arm::F => 'f',
            Arm::G => 'g',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeLabel {
    pub particle: Particle,
    pub arm: Arm,
}

impl ModeLabel {
    pub const fn new(particle: Particle, arm: Arm) -> Self {
        Self { particle, arm }
    }

    pub const fn plus(arm: Arm) -> Self {
        Self::new(Particle::Positron, arm)
    }

    pub const fn minus(arm: Arm) -> Self {
        Self::new(Particle::Electron, arm)
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.arm.letter(), self.particle.suffix())
    }
}

/// Basis element of a [`ModeState`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    /// Annihilation photons.
    Gamma,
    Single(ModeLabel),
    /// Positron arm, electron arm.
    Pair(Arm, Arm),
}

impl Term {
    pub fn single(arm: Arm) -> Self {
        Term::Single(ModeLabel::new(Particle::Single, arm))
    }

    /// Arm occupied by `particle`, if this term carries it.
    pub fn arm_of(&self, particle: Particle) -> Option<Arm> {
        match (*self, particle) {
            (Term::Single(l), p) if l.particle == p => Some(l.arm),
            (Term::Pair(plus, _), Particle::Positron) => Some(plus),
            (Term::Pair(_, minus), Particle::Electron) => Some(minus),
            _ => None,
        }
    }

    /// Exchanges the positron and electron roles.
    pub fn swap_particles(&self) -> Term {
        match *self {
            Term::Gamma => Term::Gamma,
            Term::Pair(p, m) => Term::Pair(m, p),
            Term::Single(l) => Term::Single(ModeLabel {
                particle: match l.particle {
                    Particle::Positron => Particle::Electron,
                    Particle::Electron => Particle::Positron,
                    Particle::Single => Particle::Single,
                },
                arm: l.arm,
            }),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Gamma => write!(f, "gamma"),
            Term::Single(l) => write!(f, "{l}"),
            Term::Pair(p, m) => write!(f, "{}{}", ModeLabel::plus(*p), ModeLabel::minus(*m)),
        }
    }
}

/// `c · (1/√2)^k`. Every path to a given term crosses the same splitters, so
/// keeping `k` apart from `c` makes splitter-only products exact.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Amp {
    c: C64,
    k: u32,
}

fn inv_sqrt2_pow(k: u32) -> f64 {
    let half = 0.5f64.powi((k / 2) as i32);
    if k.is_multiple_of(2) {
        half
    } else {
        half * FRAC_1_SQRT_2
    }
}

impl Amp {
    fn value(self) -> C64 {
        self.c * inv_sqrt2_pow(self.k)
    }

    fn norm_sqr(self) -> f64 {
        self.c.norm_sqr() * 0.5f64.powi(self.k as i32)
    }

    fn add(self, other: Amp) -> Amp {
        let k = self.k.min(other.k);
        let lift = |a: Amp| a.c * inv_sqrt2_pow(a.k - k);
        Amp { c: lift(self) + lift(other), k }
    }
}

/// Sparse superposition of mode terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ModeState {
    terms: BTreeMap<Term, Amp>,
}

impl ModeState {
    fn from_amps(terms: impl IntoIterator<Item = (Term, Amp)>) -> Self {
        let mut acc: BTreeMap<Term, Amp> = BTreeMap::new();
        for (t, a) in terms {
            acc.entry(t).and_modify(|e| *e = e.add(a)).or_insert(a);
        }
        acc.retain(|_, a| a.value().norm() > AMPLITUDE_FLOOR);
        Self { terms: acc }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Term, C64)>) -> Self {
        Self::from_amps(terms.into_iter().map(|(t, c)| (t, Amp { c, k: 0 })))
    }

    pub fn basis(term: Term) -> Self {
        Self::from_terms([(term, ONE)])
    }

    pub fn amplitude(&self, term: &Term) -> C64 {
        self.terms.get(term).map_or(ZERO, |a| a.value())
    }

    /// |amplitude(term)|², zero when the term is absent.
    pub fn probability(&self, term: &Term) -> f64 {
        self.terms.get(term).map_or(0.0, |a| a.norm_sqr())
    }

    /// Terms in order, with their amplitudes.
    pub fn terms(&self) -> impl Iterator<Item = (Term, C64)> + '_ {
        self.terms.iter().map(|(t, a)| (*t, a.value()))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn scale(&self, c: C64) -> ModeState {
        Self::from_amps(self.terms.iter().map(|(t, a)| (*t, Amp { c: a.c * c, k: a.k })))
    }

    pub fn swap_particles(&self) -> ModeState {
        Self::from_amps(self.terms.iter().map(|(t, a)| (t.swap_particles(), *a)))
    }

    /// Applies a single-particle linear map to every term carrying `particle`.
    /// Arms outside the map's domain are left unchanged.
    pub fn apply_local(&self, particle: Particle, map: impl Fn(Arm) -> Option<Vec<(Arm, C64)>>) -> ModeState {
        self.apply_with_factors(particle, |arm| {
            map(arm).map(|v| v.into_iter().map(|(a, c)| (a, c, 0)).collect())
        })
    }

    /// Like [`apply_local`](Self::apply_local), with each image carrying an
    /// extra power of 1/√2.
    fn apply_with_factors(&self, particle: Particle, map: impl Fn(Arm) -> Option<Vec<(Arm, C64, u32)>>) -> ModeState {
        let mut out = Vec::new();
        for (&term, &amp) in &self.terms {
            let Some(images) = term.arm_of(particle).and_then(&map) else {
                out.push((term, amp));
                continue;
            };
            for (new_arm, c, k) in images {
                let new_term = match term {
                    Term::Single(l) => Term::Single(ModeLabel::new(l.particle, new_arm)),
                    Term::Pair(_, m) if particle == Particle::Positron => Term::Pair(new_arm, m),
                    Term::Pair(p, _) => Term::Pair(p, new_arm),
                    Term::Gamma => unreachable!("gamma carries no particle"),
                };
                out.push((new_term, Amp { c: amp.c * c, k: amp.k + k }));
            }
        }
        Self::from_amps(out)
    }

    /// Maps terms to terms, keeping amplitudes.
    fn relabel(&self, f: impl Fn(Term) -> Term) -> ModeState {
        Self::from_amps(self.terms.iter().map(|(t, a)| (f(*t), *a)))
    }

    /// Keeps the terms selected by `f`, relabelled.
    fn filter_map(&self, f: impl Fn(Term) -> Option<Term>) -> ModeState {
        Self::from_amps(self.terms.iter().filter_map(|(t, a)| f(*t).map(|n| (n, *a))))
    }

    /// Equality up to one global phase: same support, and `self = e^{iα}·other`
    /// termwise within `tol`.
    pub fn eq_up_to_phase(&self, other: &ModeState, tol: f64) -> bool {
        let support = |s: &ModeState| -> Vec<Term> {
            s.terms().filter(|(_, a)| a.norm() > tol).map(|(t, _)| t).collect()
        };
        if support(self) != support(other) {
            return false;
        }
        let Some((pivot, _)) = other.terms().max_by(|x, y| x.1.norm().total_cmp(&y.1.norm())) else {
            return self.is_empty();
        };
        let ratio = self.amplitude(&pivot) / other.amplitude(&pivot);
        if (ratio.norm() - 1.0).abs() > tol {
            return false;
        }
        let phase = ratio / ratio.norm();
        self.terms
            .keys()
            .chain(other.terms.keys())
            .all(|t| (self.amplitude(t) - phase * other.amplitude(t)).norm() <= tol)
    }
}

impl fmt::Display for ModeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (t, a) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:+.6}{:+.6}i) {t}", a.re, a.im)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Optical elements acting on one particle's arm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Element {
    /// a → (b + i c)/√2
    FirstSplitter,
    /// b → i d, c → i e
    Mirrors,
    /// d → (g + i f)/√2, e → (f + i g)/√2
    SecondSplitter,
    /// d → g, e → f
    SecondSplitterRemoved,
}

impl Element {
    /// Images with their splitter factors split off as powers of 1/√2.
    fn factored(self, arm: Arm) -> Option<Vec<(Arm, C64, u32)>> {
        match (self, arm) {
            (Element::FirstSplitter, Arm::A) => Some(vec![(Arm::B, ONE, 1), (Arm::C, I, 1)]),
            (Element::Mirrors, Arm::B) => Some(vec![(Arm::D, I, 0)]),
            (Element::Mirrors, Arm::C) => Some(vec![(Arm::E, I, 0)]),
            (Element::SecondSplitter, Arm::D) => Some(vec![(Arm::G, ONE, 1), (Arm::F, I, 1)]),
            (Element::SecondSplitter, Arm::E) => Some(vec![(Arm::F, ONE, 1), (Arm::G, I, 1)]),
            (Element::SecondSplitterRemoved, Arm::D) => Some(vec![(Arm::G, ONE, 0)]),
            (Element::SecondSplitterRemoved, Arm::E) => Some(vec![(Arm::F, ONE, 0)]),
            _ => None,
        }
    }

    pub fn map(self, arm: Arm) -> Option<Vec<(Arm, C64)>> {
        self.factored(arm)
            .map(|v| v.into_iter().map(|(a, c, k)| (a, c * inv_sqrt2_pow(k))).collect())
    }

    pub fn apply(self, state: &ModeState, particle: Particle) -> ModeState {
        state.apply_with_factors(particle, |arm| self.factored(arm))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Splitter {
    Present,
    Removed,
}

impl Splitter {
    fn element(self) -> Element {
        match self {
            Splitter::Present => Element::SecondSplitter,
            Splitter::Removed => Element::SecondSplitterRemoved,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Splitter::Present => "present",
            Splitter::Removed => "removed",
        }
    }
}

impl FromStr for Splitter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "present" => Ok(Splitter::Present),
            "removed" => Ok(Splitter::Removed),
            other => Err(format!("expected `present` or `removed`, found `{other}`")),
        }
    }
}

/// Which second beam splitters are in place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HardyConfig {
    pub bs2_plus: Splitter,
    pub bs2_minus: Splitter,
}

impl HardyConfig {
    pub const fn new(bs2_plus: Splitter, bs2_minus: Splitter) -> Self {
        Self { bs2_plus, bs2_minus }
    }

    pub const BOTH_PRESENT: HardyConfig = HardyConfig::new(Splitter::Present, Splitter::Present);
    pub const PLUS_REMOVED: HardyConfig = HardyConfig::new(Splitter::Removed, Splitter::Present);
    pub const MINUS_REMOVED: HardyConfig = HardyConfig::new(Splitter::Present, Splitter::Removed);
    pub const BOTH_REMOVED: HardyConfig = HardyConfig::new(Splitter::Removed, Splitter::Removed);

    pub const ALL: [HardyConfig; 4] =
        [Self::BOTH_PRESENT, Self::PLUS_REMOVED, Self::MINUS_REMOVED, Self::BOTH_REMOVED];

    /// Parses the two-line experiment file:
    ///
    /// ```text
    /// bs2_plus = present
    /// bs2_minus = removed
    /// ```
    ///
    /// Blank lines and `#` comments are ignored. Errors carry the 1-based line number.
    pub fn parse_experiment(text: &str) -> Result<Self> {
        let mut plus = None;
        let mut minus = None;
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: String| Error::ExperimentFile { line: line_no, message };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("expected `key = value`, found `{line}`")))?;
            let value: Splitter = value.trim().parse().map_err(bad)?;
            let slot = match key.trim() {
                "bs2_plus" => &mut plus,
                "bs2_minus" => &mut minus,
                other => return Err(bad(format!("unknown key `{other}`"))),
            };
            if slot.is_some() {
                return Err(bad(format!("duplicate key `{}`", key.trim())));
            }
            *slot = Some(value);
        }
        let missing = |k: &str| Error::ExperimentFile { line: last_line + 1, message: format!("missing `{k}`") };
        Ok(Self {
            bs2_plus: plus.ok_or_else(|| missing("bs2_plus"))?,
            bs2_minus: minus.ok_or_else(|| missing("bs2_minus"))?,
        })
    }
}

impl fmt::Display for HardyConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bs2_plus = {}\nbs2_minus = {}", self.bs2_plus.as_str(), self.bs2_minus.as_str())
    }
}

/// States of a single interferometer after the source, BS₁, the mirrors and BS₂.
pub fn single_mz_stages(bs2_present: bool) -> Vec<ModeState> {
    let bs2 = if bs2_present { Element::SecondSplitter } else { Element::SecondSplitterRemoved };
    let mut stages = vec![ModeState::basis(Term::single(Arm::A))];
    for el in [Element::FirstSplitter, Element::Mirrors, bs2] {
        let next = el.apply(stages.last().expect("non-empty"), Particle::Single);
        stages.push(next);
    }
    stages
}

pub fn propagate_single_mz(bs2_present: bool) -> ModeState {
    single_mz_stages(bs2_present).pop().expect("non-empty")
}

/// c⁺c⁻ → γ
pub fn annihilate(state: &ModeState) -> ModeState {
    state.relabel(|t| match t {
        Term::Pair(Arm::C, Arm::C) => Term::Gamma,
        other => other,
    })
}

fn both(el: Element, state: &ModeState) -> ModeState {
    el.apply(&el.apply(state, Particle::Positron), Particle::Electron)
}

/// The double-interferometer state just before the second splitters:
/// ½(−γ − d⁺d⁻ − i d⁺e⁻ − i e⁺d⁻).
pub fn hardy_psi() -> ModeState {
    let start = ModeState::basis(Term::Pair(Arm::A, Arm::A));
    let split = both(Element::FirstSplitter, &start);
    both(Element::Mirrors, &annihilate(&split))
}

/// Applies BS₂⁺ and BS₂⁻ (or their removal) as configured.
pub fn apply_second_splitters(state: &ModeState, config: HardyConfig) -> ModeState {
    let s = config.bs2_plus.element().apply(state, Particle::Positron);
    config.bs2_minus.element().apply(&s, Particle::Electron)
}

pub fn propagate_hardy(config: HardyConfig) -> ModeState {
    apply_second_splitters(&hardy_psi(), config)
}

/// |amplitude(target)|², zero when the term is absent.
pub fn detection_probability(state: &ModeState, target: &Term) -> f64 {
    state.probability(target)
}

/// Total probability of finding `label` (summed over the partner's modes).
pub fn marginal_probability(state: &ModeState, label: ModeLabel) -> f64 {
    state
        .terms
        .iter()
        .filter(|(t, _)| t.arm_of(label.particle) == Some(label.arm))
        .map(|(_, a)| a.norm_sqr())
        .sum()
}

/// Reference frames for the order in which the two particles meet BS₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Frame {
    /// Both reach BS₂ together.
    K0,
    /// The positron passes BS₂⁺ first.
    KPlus,
    /// The electron passes BS₂⁻ first.
    KMinus,
}

impl Frame {
    pub fn as_str(self) -> &'static str {
        match self {
            Frame::K0 => "K0",
            Frame::KPlus => "K+",
            Frame::KMinus => "K-",
        }
    }
}

/// State when only the particle that is first in `frame` has crossed its BS₂.
/// `K0` returns the state before either splitter.
pub fn frame_intermediate(frame: Frame) -> ModeState {
    let psi = hardy_psi();
    match frame {
        Frame::K0 => psi,
        Frame::KPlus => Element::SecondSplitter.apply(&psi, Particle::Positron),
        Frame::KMinus => Element::SecondSplitter.apply(&psi, Particle::Electron),
    }
}

/// Conditions on `detected` and returns the normalized partner state. For
/// single-particle states the detected mode itself is returned.
pub fn collapse_after_detection(state: &ModeState, detected: ModeLabel) -> Result<ModeState> {
    let conditioned = state.filter_map(|t| {
        if t.arm_of(detected.particle) != Some(detected.arm) {
            return None;
        }
        Some(match (t, detected.particle) {
            (Term::Pair(_, m), Particle::Positron) => Term::Single(ModeLabel::minus(m)),
            (Term::Pair(p, _), Particle::Electron) => Term::Single(ModeLabel::plus(p)),
            (other, _) => other,
        })
    });
    let norm = conditioned.norm_sqr();
    if norm <= EPS_EQ {
        return Err(Error::UndetectableMode(detected.to_string()));
    }
    Ok(conditioned.scale(C64::new(1.0 / norm.sqrt(), 0.0)))
}

/// ⟨Ê⁺Ê⁻⟩ = |amplitude(e⁺e⁻)|².
pub fn projector_e_expectation(state: &ModeState) -> f64 {
    detection_probability(state, &Term::Pair(Arm::E, Arm::E))
}

/// Value 0 or 1 of a projector when the state is one of its eigenstates.
fn projector_value(weight: f64, total: f64) -> Option<u8> {
    if (weight - total).abs() <= EPS_EQ {
        Some(1)
    } else if weight <= EPS_EQ {
        Some(0)
    } else {
        None
    }
}

/// Facts read off the four configurations and the chain that breaks local realism.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalRealismTable {
    /// P(f⁺f⁻) with both BS₂ removed.
    pub ff_both_removed: f64,
    /// P(g⁺f⁻) with BS₂⁺ present and BS₂⁻ removed.
    pub g_plus_f_minus_fraction: f64,
    /// P(f⁻ | g⁺) in that configuration.
    pub f_minus_given_g_plus: f64,
    /// P(f⁺g⁻) with BS₂⁺ removed and BS₂⁻ present.
    pub f_plus_g_minus_fraction: f64,
    /// P(f⁺ | g⁻) in that configuration.
    pub f_plus_given_g_minus: f64,
    /// P(g⁺g⁻) with both present.
    pub gg_both_present: f64,
    pub config_norms: [(HardyConfig, f64); 4],
}

impl LocalRealismTable {
    /// The four facts cannot hold together for one λ.
    pub fn inconsistent(&self) -> bool {
        self.ff_both_removed <= EPS_EQ
            && (self.f_minus_given_g_plus - 1.0).abs() <= EPS_EQ
            && (self.f_plus_given_g_minus - 1.0).abs() <= EPS_EQ
            && self.gg_both_present > EPS_EQ
    }

    pub fn verdict(&self) -> String {
        if self.inconsistent() {
            format!(
                "inconsistent: F+(inf)F-(inf)=0 always, yet in {:.4} of both-present runs \
                 G+(0)=G-(0)=1, which forces F-(inf)=1 and F+(inf)=1",
                self.gg_both_present
            )
        } else {
            "consistent".to_string()
        }
    }
}

fn conditional(state: &ModeState, joint: Term, given: ModeLabel) -> f64 {
    let marginal = marginal_probability(state, given);
    if marginal <= EPS_EQ {
        0.0
    } else {
        detection_probability(state, &joint) / marginal
    }
}

pub fn local_realism_table() -> LocalRealismTable {
    let states = HardyConfig::ALL.map(|c| (c, propagate_hardy(c)));
    let get = |c: HardyConfig| &states.iter().find(|(k, _)| *k == c).expect("all configs").1;
    let minus_removed = get(HardyConfig::MINUS_REMOVED);
    let plus_removed = get(HardyConfig::PLUS_REMOVED);
    LocalRealismTable {
        ff_both_removed: detection_probability(get(HardyConfig::BOTH_REMOVED), &Term::Pair(Arm::F, Arm::F)),
        g_plus_f_minus_fraction: detection_probability(minus_removed, &Term::Pair(Arm::G, Arm::F)),
        f_minus_given_g_plus: conditional(minus_removed, Term::Pair(Arm::G, Arm::F), ModeLabel::plus(Arm::G)),
        f_plus_g_minus_fraction: detection_probability(plus_removed, &Term::Pair(Arm::F, Arm::G)),
        f_plus_given_g_minus: conditional(plus_removed, Term::Pair(Arm::F, Arm::G), ModeLabel::minus(Arm::G)),
        gg_both_present: detection_probability(get(HardyConfig::BOTH_PRESENT), &Term::Pair(Arm::G, Arm::G)),
        config_norms: states.map(|(c, s)| (c, s.norm_sqr())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    EPlus,
    EMinus,
    EPlusEMinus,
}

impl Observable {
    pub fn as_str(self) -> &'static str {
        match self {
            Observable::EPlus => "E+",
            Observable::EMinus => "E-",
            Observable::EPlusEMinus => "E+E-",
        }
    }
}

/// Value of an element of reality inferred in a given frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealityValue {
    pub observable: Observable,
    pub value: u8,
    pub frame: Frame,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrameRealityReport {
    pub values: Vec<RealityValue>,
    /// Partner states after detecting g⁺ in K+ and g⁻ in K−.
    pub partner_k_plus: ModeState,
    pub partner_k_minus: ModeState,
    /// ⟨Ê⁺Ê⁻⟩ on the K0 state.
    pub e_product_expectation: f64,
}

impl FrameRealityReport {
    pub fn value(&self, observable: Observable) -> Option<u8> {
        self.values.iter().find(|v| v.observable == observable).map(|v| v.value)
    }

    /// [E⁺] = [E⁻] = 1 implies [E⁺E⁻] = 1; flags a frame-independent
    /// assignment that contradicts this.
    pub fn inconsistent(&self) -> bool {
        matches!(
            (self.value(Observable::EPlus), self.value(Observable::EMinus), self.value(Observable::EPlusEMinus)),
            (Some(1), Some(1), Some(v)) if v != 1
        )
    }
}

pub fn frame_reality_report() -> Result<FrameRealityReport> {
    let partner_k_plus = collapse_after_detection(&frame_intermediate(Frame::KPlus), ModeLabel::plus(Arm::G))?;
    let partner_k_minus = collapse_after_detection(&frame_intermediate(Frame::KMinus), ModeLabel::minus(Arm::G))?;
    let psi = frame_intermediate(Frame::K0);
    let e_product_expectation = projector_e_expectation(&psi);

    let mut values = Vec::new();
    let e_minus = marginal_probability(&partner_k_plus, ModeLabel::minus(Arm::E));
    if let Some(v) = projector_value(e_minus, partner_k_plus.norm_sqr()) {
        values.push(RealityValue { observable: Observable::EMinus, value: v, frame: Frame::KPlus });
    }
    let e_plus = marginal_probability(&partner_k_minus, ModeLabel::plus(Arm::E));
    if let Some(v) = projector_value(e_plus, partner_k_minus.norm_sqr()) {
        values.push(RealityValue { observable: Observable::EPlus, value: v, frame: Frame::KMinus });
    }
    if let Some(v) = projector_value(e_product_expectation, psi.norm_sqr()) {
        values.push(RealityValue { observable: Observable::EPlusEMinus, value: v, frame: Frame::K0 });
    }
    Ok(FrameRealityReport { values, partner_k_plus, partner_k_minus, e_product_expectation })
}
