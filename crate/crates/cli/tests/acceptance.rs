//! End-to-end acceptance checks. Runs without the libtest harness so every
//! criterion prints one line; exits non-zero if any fails.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI, SQRT_2, TAU};
use std::process::Command;
use std::time::{Duration, Instant};

use epr_core::bell::{
    bell_grid, bell_scan, builtin_sign_model, chsh_identity_check, chsh_identity_table, chsh_report, lhv_bell_check,
    lhv_chsh, lhv_correlations, quantum_chsh, ChshSettings,
};
use epr_core::correlations::{
    photon_joint_probability, quantum_correlation, singlet_joint_probability, singlet_joint_probability_contracted,
    singlet_outcome_probability, PhotonChannel,
};
use epr_core::density::{no_signaling_trial, DensityOperator};
use epr_core::ghz::{build_operators, eigenvalue_check, realism_contradiction_report, verify_algebra};
use epr_core::linalg::{pauli, Matrix, C64};
use epr_core::mz::{
    collapse_after_detection, detection_probability, frame_intermediate, local_realism_table, projector_e_expectation,
    propagate_hardy, propagate_single_mz, Arm, Frame, HardyConfig, ModeLabel, ModeState, Term, hardy_psi,
};
use epr_core::states::{ghz_state, singlet, Direction, PhotonPairKind, PolarizationAngle, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-12;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn random_direction(rng: &mut impl Rng) -> Direction {
    Direction::new(rng.random_range(0.0..=PI), rng.random_range(0.0..TAU)).unwrap()
}

fn unit(d: &Direction) -> [f64; 3] {
    let (t, p) = (d.theta(), d.phi());
    [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()]
}

fn c1_singlet_probabilities() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut axes = vec![Direction::z(), Direction::x(), Direction::y()];
    axes.extend((0..20).map(|_| random_direction(&mut rng)));
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for a in &axes {
        for s in Sign::BOTH {
            worst = worst.max((singlet_outcome_probability(*a, s, *a, s.flip()) - 0.5).abs());
            worst = worst.max(singlet_outcome_probability(*a, s, *a, s).abs());
        }
        worst = worst.max((singlet_joint_probability(*a, a.antipode()) - 0.5).abs());
        worst = worst.max(singlet_joint_probability(*a, *a).abs());
    }
    let per_axis = start.elapsed() / axes.len() as u32;
    verdict(
        worst <= TOL && per_axis < Duration::from_millis(1),
        format!("max deviation {worst:.2e}, {per_axis:?} per axis"),
    )
}

/// |⟨a,+|⊗⟨b,+| singlet⟩|² written out by hand.
fn joint_oracle(a: Direction, b: Direction) -> f64 {
    let ket = |d: Direction| {
        let (s, c) = (d.theta() / 2.0).sin_cos();
        [C64::new(c, 0.0), C64::from_polar(s, d.phi())]
    };
    let (ka, kb) = (ket(a), ket(b));
    let amp = (ka[0].conj() * kb[1].conj() - ka[1].conj() * kb[0].conj()) * FRAC_1_SQRT_2;
    amp.norm_sqr()
}

fn c2_closed_form_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (a, b) = (random_direction(&mut rng), random_direction(&mut rng));
        let closed = singlet_joint_probability(a, b);
        worst = worst.max((closed - singlet_joint_probability_contracted(a, b)).abs());
        worst = worst.max((closed - joint_oracle(a, b)).abs());
    }
    verdict(worst <= TOL, format!("1000 pairs, max diff {worst:.2e}"))
}

fn c3_reduced_singlet() -> Verdict {
    let rho = DensityOperator::from_pure_factored(&singlet(), &[2, 2]).unwrap();
    let half = Matrix::identity(2).scale(C64::new(0.5, 0.0));
    let mut worst: f64 = 0.0;
    for keep in 0..2 {
        let red = rho.partial_trace(keep).unwrap();
        worst = worst.max(red.matrix().max_abs_diff(&half).unwrap());
        worst = worst.max((red.purity() - 0.5).abs());
        for k in 1..=3 {
            worst = worst.max(red.expectation(&pauli(k)).unwrap().abs());
        }
    }
    verdict(worst <= TOL, format!("max deviation {worst:.2e}"))
}

fn c4_no_signaling() -> Verdict {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for seed in 0..100 {
        match no_signaling_trial(seed) {
            Ok(o) => worst = worst.max(o.difference()),
            Err(e) => return verdict(false, format!("seed {seed}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    verdict(
        worst <= TOL && elapsed < Duration::from_secs(1),
        format!("100 trials, max diff {worst:.2e}, {elapsed:?}"),
    )
}

fn c5_photon_formulas() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let (t1, t2) = (rng.random_range(-PI..PI), rng.random_range(-PI..PI));
        let (s2, c2) = ((t1 - t2).sin().powi(2) / 2.0, (t1 - t2).cos().powi(2) / 2.0);
        for (kind, same, cross) in [(PhotonPairKind::I, s2, c2), (PhotonPairKind::II, c2, s2)] {
            let mut total = 0.0;
            for ch in PhotonChannel::ALL {
                let p = photon_joint_probability(kind, ch, PolarizationAngle(t1), PolarizationAngle(t2));
                let want = if ch.channel1 == ch.channel2 { same } else { cross };
                worst = worst.max((p - want).abs());
                total += p;
            }
            worst = worst.max((total - 1.0).abs());
        }
    }
    verdict(worst <= TOL, format!("100 angle pairs x 2 kinds, max deviation {worst:.2e}"))
}

fn c6_quantum_correlation() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (a, b) = (random_direction(&mut rng), random_direction(&mut rng));
        let (ua, ub) = (unit(&a), unit(&b));
        let dot = ua[0] * ub[0] + ua[1] * ub[1] + ua[2] * ub[2];
        worst = worst.max((quantum_correlation(a, b) + dot).abs());
    }
    let a = random_direction(&mut rng);
    let same = (quantum_correlation(a, a) + 1.0).abs();
    verdict(worst <= TOL && same <= TOL, format!("max diff {worst:.2e}, |P(a,a)+1| = {same:.2e}"))
}

fn c7_bell_scan() -> Verdict {
    let grid = bell_grid(181);
    let oracle_grid_ok = grid.len() == 181
        && grid.iter().enumerate().all(|(k, &t)| (t - k as f64 * PI / 360.0).abs() <= TOL)
        && grid[180] == FRAC_PI_2;
    let rows = bell_scan(&grid);
    let wrong: Vec<usize> = rows
        .iter()
        .enumerate()
        .filter(|(k, r)| r.violated() != (*k != 0 && *k != 180))
        .map(|(k, _)| k)
        .collect();
    verdict(
        oracle_grid_ok && wrong.is_empty(),
        format!("181 points, {} violated, mismatches at {wrong:?}", rows.iter().filter(|r| r.violated()).count()),
    )
}

fn c8_chsh() -> Verdict {
    let s = quantum_chsh(&ChshSettings::fan());
    let dev = (s + 2.0 * SQRT_2).abs();
    let mut cases = 0;
    let mut all_pm2 = true;
    for bits in 0..16u8 {
        let v = |k: u8| if bits >> k & 1 == 0 { 1i32 } else { -1 };
        let (x, y, xp, yp) = (v(0), v(1), v(2), v(3));
        let combo = x * y - x * yp + xp * y + xp * yp;
        all_pm2 &= combo.abs() == 2;
        cases += 1;
    }
    let lib_ok = chsh_identity_check() && chsh_identity_table().len() == 16;
    verdict(
        dev <= TOL && cases == 16 && all_pm2 && lib_ok && chsh_report(s).violated(),
        format!("S = {s}, |S + 2√2| = {dev:.2e}, identity {cases}/16"),
    )
}

/// Fraction of the sphere where sign(â·λ) ≠ sign(b̂·λ), by midpoint quadrature
/// in (z, φ); uniform z gives the uniform measure.
fn sign_model_oracle(theta: f64) -> f64 {
    let a = [0.0, 0.0, 1.0];
    let b = [theta.sin(), 0.0, theta.cos()];
    let n = 1000;
    let mut differ = 0usize;
    for i in 0..n {
        let z = -1.0 + (i as f64 + 0.5) * 2.0 / n as f64;
        let r = (1.0 - z * z).sqrt();
        for j in 0..n {
            let phi = (j as f64 + 0.5) * TAU / n as f64;
            let l = [r * phi.cos(), r * phi.sin(), z];
            let da = a[0] * l[0] + a[1] * l[1] + a[2] * l[2];
            let db = b[0] * l[0] + b[1] * l[1] + b[2] * l[2];
            if (da >= 0.0) != (db >= 0.0) {
                differ += 1;
            }
        }
    }
    // A·B = −sign·sign: +1 where they differ, −1 where they agree
    let f = differ as f64 / (n * n) as f64;
    f - (1.0 - f)
}

fn c9_lhv_harness() -> Verdict {
    let thetas = [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3];
    let oracles: Vec<f64> = thetas.iter().map(|&t| sign_model_oracle(t)).collect();
    let oracle_ok = thetas.iter().zip(&oracles).all(|(t, o)| (o - (-1.0 + 2.0 * t / PI)).abs() <= 1e-3);
    let model = builtin_sign_model();
    let fan = ChshSettings::fan();
    let mut dirs = Vec::new();
    for &t in &thetas {
        let (a, b, c) = (Direction::in_xz_plane(0.0), Direction::in_xz_plane(t), Direction::in_xz_plane(2.0 * t));
        dirs.extend([(a, b), (a, c), (b, c)]);
    }
    dirs.extend(fan.pairs());
    let mut worst_est: f64 = 0.0;
    let mut reports_ok = true;
    let mut slowest = Duration::ZERO;
    for seed in 0..10 {
        let start = Instant::now();
        let est = match lhv_correlations(&model, &dirs, 1_000_000, seed) {
            Ok(e) => e,
            Err(e) => return verdict(false, format!("seed {seed}: {e}")),
        };
        for (k, o) in oracles.iter().enumerate() {
            worst_est = worst_est.max((est[3 * k].mean - o).abs());
            let (bell, se) = lhv_bell_check(&est[3 * k], &est[3 * k + 1], &est[3 * k + 2]).unwrap();
            reports_ok &= bell.satisfied_within(4.0 * se);
        }
        let (s, se) = lhv_chsh(&[est[9], est[10], est[11], est[12]]);
        reports_ok &= chsh_report(s).satisfied_within(4.0 * se);
        slowest = slowest.max(start.elapsed());
    }
    verdict(
        oracle_ok && worst_est <= 0.01 && reports_ok && slowest < Duration::from_secs(10),
        format!("max |estimate - oracle| {worst_est:.4}, reports within 4 SE: {reports_ok}, slowest seed {slowest:?}"),
    )
}

fn c10_ghz() -> Verdict {
    let algebra = verify_algebra();
    let psi = ghz_state();
    let eig: Vec<Option<f64>> = build_operators().iter().map(|op| eigenvalue_check(op, &psi)).collect();
    let eig_ok = eig == [Some(1.0), Some(1.0), Some(1.0), Some(-1.0)];
    // independent enumeration of the six ±1 values
    let mut surviving = 0;
    let mut all_plus = true;
    for bits in 0..64u8 {
        let m = |k: u8| if bits >> k & 1 == 0 { 1i32 } else { -1 };
        let (x1, x2, x3, y1, y2, y3) = (m(0), m(1), m(2), m(3), m(4), m(5));
        if x1 * y2 * y3 == 1 && y1 * x2 * y3 == 1 && y1 * y2 * x3 == 1 {
            surviving += 1;
            all_plus &= x1 * x2 * x3 == 1;
        }
    }
    let report = realism_contradiction_report();
    let lib_ok = report.consistent.len() == 8 && report.forced_d_product == Some(1) && report.contradiction();
    verdict(
        algebra.all_pass() && eig_ok && surviving == 8 && all_plus && lib_ok,
        format!(
            "{}/{} algebra checks, eigenvalues {eig:?}, {surviving} surviving assignments",
            algebra.checks.iter().filter(|c| c.pass).count(),
            algebra.checks.len()
        ),
    )
}

fn c11_single_mz() -> Verdict {
    let f = Term::single(Arm::F);
    let g = Term::single(Arm::G);
    let with = propagate_single_mz(true);
    let without = propagate_single_mz(false);
    let devs = [
        (detection_probability(&with, &f) - 1.0).abs(),
        detection_probability(&with, &g),
        (detection_probability(&without, &f) - 0.5).abs(),
        (detection_probability(&without, &g) - 0.5).abs(),
    ];
    let worst = devs.iter().copied().fold(0.0, f64::max);
    verdict(worst <= TOL, format!("max deviation {worst:.2e}"))
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn pair(p: Arm, m: Arm) -> Term {
    Term::Pair(p, m)
}

fn c12_hardy() -> Verdict {
    use Arm::{F, G};
    let k = 1.0 / (2.0 * SQRT_2);
    let printed = [
        (
            HardyConfig::BOTH_PRESENT,
            ModeState::from_terms([
                (Term::Gamma, c(-0.5, 0.0)),
                (pair(F, F), c(0.75, 0.0)),
                (pair(F, G), c(0.0, -0.25)),
                (pair(G, F), c(0.0, -0.25)),
                (pair(G, G), c(0.25, 0.0)),
            ]),
        ),
        (
            HardyConfig::PLUS_REMOVED,
            ModeState::from_terms([
                (Term::Gamma, c(-SQRT_2 * k, 0.0)),
                (pair(F, F), c(k, 0.0)),
                (pair(G, F), c(0.0, -2.0 * k)),
                (pair(F, G), c(0.0, -k)),
            ]),
        ),
        (
            HardyConfig::MINUS_REMOVED,
            ModeState::from_terms([
                (Term::Gamma, c(-SQRT_2 * k, 0.0)),
                (pair(F, F), c(k, 0.0)),
                (pair(F, G), c(0.0, -2.0 * k)),
                (pair(G, F), c(0.0, -k)),
            ]),
        ),
        (
            HardyConfig::BOTH_REMOVED,
            ModeState::from_terms([
                (Term::Gamma, c(0.5, 0.0)),
                (pair(G, G), c(0.5, 0.0)),
                (pair(G, F), c(0.0, 0.5)),
                (pair(F, G), c(0.0, 0.5)),
            ]),
        ),
    ];
    let mut ok = true;
    let mut worst_norm: f64 = 0.0;
    for (cfg, want) in &printed {
        let got = propagate_hardy(*cfg);
        ok &= got.eq_up_to_phase(want, TOL);
        worst_norm = worst_norm.max((got.norm_sqr() - 1.0).abs());
    }
    let gg = detection_probability(&propagate_hardy(HardyConfig::BOTH_PRESENT), &pair(G, G));
    let ff = detection_probability(&propagate_hardy(HardyConfig::BOTH_REMOVED), &pair(F, F));
    let t = local_realism_table();
    let fractions_ok = (t.g_plus_f_minus_fraction - 0.125).abs() <= TOL
        && (t.f_plus_g_minus_fraction - 0.125).abs() <= TOL
        && (gg - 1.0 / 16.0).abs() <= TOL
        && ff.abs() <= TOL;
    verdict(
        ok && worst_norm <= TOL && fractions_ok,
        format!(
            "states match: {ok}, max |norm - 1| {worst_norm:.2e}, P(g+g-) = {gg}, P(f+f-) = {ff}, fractions {} / {}",
            t.g_plus_f_minus_fraction, t.f_plus_g_minus_fraction
        ),
    )
}

fn c13_frames() -> Verdict {
    use Arm::{D, E, F, G};
    let k = 1.0 / (2.0 * SQRT_2);
    let k_plus = ModeState::from_terms([
        (Term::Gamma, c(-SQRT_2 * k, 0.0)),
        (pair(F, D), c(0.0, -2.0 * k)),
        (pair(F, E), c(k, 0.0)),
        (pair(G, E), c(0.0, -k)),
    ]);
    let k_minus = ModeState::from_terms([
        (Term::Gamma, c(-SQRT_2 * k, 0.0)),
        (pair(D, F), c(0.0, -2.0 * k)),
        (pair(E, F), c(k, 0.0)),
        (pair(E, G), c(0.0, -k)),
    ]);
    let states_ok = frame_intermediate(Frame::KPlus).eq_up_to_phase(&k_plus, TOL)
        && frame_intermediate(Frame::KMinus).eq_up_to_phase(&k_minus, TOL);
    let single_on = |state: &ModeState, detected: ModeLabel, partner: ModeLabel| match collapse_after_detection(state, detected) {
        Ok(s) => s.len() == 1 && (s.amplitude(&Term::Single(partner)).norm() - 1.0).abs() <= TOL,
        Err(_) => false,
    };
    let collapse_ok = single_on(&frame_intermediate(Frame::KPlus), ModeLabel::plus(G), ModeLabel::minus(E))
        && single_on(&frame_intermediate(Frame::KMinus), ModeLabel::minus(G), ModeLabel::plus(E));
    let e_product = projector_e_expectation(&hardy_psi());
    verdict(
        states_ok && collapse_ok && e_product.abs() <= TOL,
        format!("states match: {states_ok}, single-term collapse: {collapse_ok}, <E+E-> = {e_product}"),
    )
}

fn c14_determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_epr");
    let argvs: [&[&str]; 3] = [
        &["lhv-sim", "--n", "200000", "--seed", "42", "--theta", "0.9", "--format", "csv"],
        &["bell-scan", "--format", "csv"],
        &["no-signaling", "--seeds", "20", "--format", "csv"],
    ];
    for argv in argvs {
        let once = Command::new(bin).args(argv).output();
        let twice = Command::new(bin).args(argv).output();
        match (once, twice) {
            (Ok(a), Ok(b)) => {
                if !a.status.success() || a.stdout.is_empty() || a.stdout != b.stdout || a.status != b.status {
                    return verdict(false, format!("{argv:?} differs between runs or failed"));
                }
            }
            (Err(e), _) | (_, Err(e)) => return verdict(false, format!("cannot run {bin}: {e}")),
        }
    }
    verdict(true, "3 command lines, byte-identical CSV across runs")
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("singlet joint probabilities", c1_singlet_probabilities),
        ("closed form vs contraction", c2_closed_form_equivalence),
        ("reduced singlet", c3_reduced_singlet),
        ("no-signaling", c4_no_signaling),
        ("photon formulas", c5_photon_formulas),
        ("quantum correlation", c6_quantum_correlation),
        ("bell scan", c7_bell_scan),
        ("chsh", c8_chsh),
        ("lhv harness", c9_lhv_harness),
        ("ghz", c10_ghz),
        ("single mach-zehnder", c11_single_mz),
        ("hardy configurations", c12_hardy),
        ("frame reports", c13_frames),
        ("cli determinism", c14_determinism),
    ];
    let mut failed = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!("criterion {:>2} {} {title}: {}", k + 1, if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
