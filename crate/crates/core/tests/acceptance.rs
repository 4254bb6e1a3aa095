//! Acceptance suite. Each test prints one `PASS`/`FAIL` line for its
//! criterion followed by the individual clauses, then asserts.
//!
//! Run with `cargo test -p multient-core --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use multient::random::{random_distribution, random_local_orbit_point, random_state};
use multient::secret_sharing::{cheat_shift, qss_decode, qss_encode, run_cheat_demo, CHEATER};
use multient::{
    catalog, certify_incommensurate, compute_invariants, hidden_from_single_party, hidden_param_lower_bound,
    majorizes, Complex64, DecodePair, PureState, SecretQutrit, Spectrum, VerdictKind, WitnessQuantity,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const INVARIANT_EXACT: f64 = 1e-12;
const PRINTED_THREE_DECIMALS: f64 = 1e-3;
const THRESHOLD_INVARIANT: f64 = 1e-10;
const RUNTIME_LIMIT: Duration = Duration::from_secs(1);
const SPECTRA_AGREE: f64 = 1e-9;
const MAXIMALLY_MIXED: f64 = 1e-12;
const LU_DRIFT: f64 = 1e-8;
const MAJORIZATION: f64 = 1e-9;
const CERTIFIER: f64 = 1e-6;
const PT_SEPARABLE: f64 = -1e-10;
const PT_EPR: f64 = 1e-9;
const DECODE_FIDELITY: f64 = 1e-10;
const RESIDUAL: f64 = 1e-10;
const SHIFT_RESTORE: f64 = 1e-12;

struct Criterion {
    id: u32,
    title: &'static str,
    clauses: Vec<(bool, String)>,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Self {
            id,
            title,
            clauses: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl Into<String>) {
        self.clauses.push((ok, detail.into()));
    }

    fn finish(self) {
        let ok = self.clauses.iter().all(|(ok, _)| *ok);
        println!("criterion {} [{}] {}", self.id, if ok { "PASS" } else { "FAIL" }, self.title);
        for (clause_ok, detail) in &self.clauses {
            println!("    {} {}", if *clause_ok { "ok  " } else { "FAIL" }, detail);
        }
        let failed: Vec<&str> = self
            .clauses
            .iter()
            .filter(|(ok, _)| !ok)
            .map(|(_, d)| d.as_str())
            .collect();
        assert!(failed.is_empty(), "criterion {} failed: {failed:?}", self.id);
    }
}

fn random_secret(rng: &mut StdRng) -> SecretQutrit {
    let amps = random_state(rng, &[3]).amplitudes().to_vec();
    SecretQutrit::from_array([amps[0], amps[1], amps[2]])
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Largest entrywise distance between `rho` and `I/d`.
fn distance_from_mixed(state: &PureState, party: usize) -> f64 {
    let rho = state.reduce(&[party]).unwrap();
    let d = rho.dim();
    let mut worst = 0.0f64;
    for r in 0..d {
        for c in 0..d {
            let want = if r == c { 1.0 / d as f64 } else { 0.0 };
            worst = worst.max((rho.matrix()[(r, c)] - Complex64::new(want, 0.0)).norm());
        }
    }
    worst
}

/// `min_phase max_i |a_i - e^{i phase} b_i|`, aligning on the overlap.
fn distance_up_to_phase(a: &PureState, b: &PureState) -> f64 {
    let overlap = b.overlap(a).unwrap();
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { Complex64::new(1.0, 0.0) };
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - phase * y).norm())
        .fold(0.0, f64::max)
}

#[test]
fn criterion_1_invariant_values() {
    let mut c = Criterion::new(1, "invariants of the 2x2x2 locally identical pair");
    let start = Instant::now();
    let psi = compute_invariants(&catalog::dim8_psi()).unwrap();
    let phi = compute_invariants(&catalog::dim8_phi()).unwrap();
    let elapsed = start.elapsed();
    let i2 = 769.0 / 1369.0;
    c.check((psi.i2 - i2).abs() < INVARIANT_EXACT, format!("psi i2 = {:.15} vs 769/1369", psi.i2));
    c.check((phi.i2 - i2).abs() < INVARIANT_EXACT, format!("phi i2 = {:.15} vs 769/1369", phi.i2));
    c.check((psi.i5 - 0.343).abs() < PRINTED_THREE_DECIMALS, format!("psi i5 = {:.6} vs 0.343", psi.i5));
    c.check((phi.i5 - 0.242).abs() < PRINTED_THREE_DECIMALS, format!("phi i5 = {:.6} vs 0.242", phi.i5));
    c.check(elapsed < RUNTIME_LIMIT, format!("runtime {elapsed:?}"));
    c.finish();
}

#[test]
fn criterion_2_threshold_state_invariants() {
    let mut c = Criterion::new(2, "i5 of the incommensurate qutrit encodings");
    let start = Instant::now();
    for (name, state, want) in [
        ("phi1", catalog::phi1(), 1.0 / 9.0),
        ("phi2", catalog::phi2(), 1.0 / 18.0),
        ("phi3", catalog::phi3(), 0.0),
    ] {
        let i5 = compute_invariants(&state).unwrap().i5;
        c.check((i5 - want).abs() < THRESHOLD_INVARIANT, format!("{name} i5 = {i5:.15} vs {want:.15}"));
    }
    let elapsed = start.elapsed();
    c.check(elapsed < RUNTIME_LIMIT, format!("runtime {elapsed:?}"));
    c.finish();
}

#[test]
fn criterion_3_local_indistinguishability() {
    let mut c = Criterion::new(3, "local indistinguishability");
    let psi = catalog::dim8_psi().local_spectra();
    let phi = catalog::dim8_phi().local_spectra();
    for (party, (a, b)) in psi.iter().zip(&phi).enumerate() {
        let diff = a.max_abs_diff(b);
        c.check(diff < SPECTRA_AGREE, format!("dim8 party {party} spectra differ by {diff:.2e}"));
    }

    let mut rng = StdRng::seed_from_u64(3);
    let mut secrets: Vec<SecretQutrit> = (0..3).map(SecretQutrit::basis).collect();
    secrets.extend((0..50).map(|_| random_secret(&mut rng)));
    let worst = secrets
        .iter()
        .map(|s| {
            let enc = qss_encode(s).unwrap();
            (0..3).map(|p| distance_from_mixed(&enc, p)).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    c.check(
        worst < MAXIMALLY_MIXED,
        format!("{} encodings: every share within {worst:.2e} of I/3", secrets.len()),
    );

    for (name, state) in [("two_ghz", catalog::two_ghz()), ("three_epr", catalog::three_epr())] {
        let worst = (0..3).map(|p| distance_from_mixed(&state, p)).fold(0.0, f64::max);
        c.check(worst < MAXIMALLY_MIXED, format!("{name}: every party within {worst:.2e} of I/4"));
    }
    c.finish();
}

#[test]
fn criterion_4_local_unitary_invariance() {
    let mut c = Criterion::new(4, "invariants are unchanged by local unitaries");
    let mut rng = StdRng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let dims: Vec<usize> = (0..3).map(|_| rng.random_range(2..=3)).collect();
        let state = random_state(&mut rng, &dims);
        let moved = random_local_orbit_point(&mut rng, &state);
        let a = compute_invariants(&state).unwrap().as_array();
        let b = compute_invariants(&moved).unwrap().as_array();
        worst = worst.max(max_abs_diff(&a, &b));
    }
    c.check(worst < LU_DRIFT, format!("500 states: largest drift {worst:.2e}"));
    c.finish();
}

#[test]
fn criterion_5_majorization() {
    let mut c = Criterion::new(5, "majorization order");
    let mut rng = StdRng::seed_from_u64(5);

    let mut uniform_ok = true;
    for _ in 0..1000 {
        let n = rng.random_range(2..=9);
        let p = random_distribution(&mut rng, n);
        let uniform = Spectrum::new(vec![1.0 / n as f64; n]).unwrap();
        uniform_ok &= majorizes(&uniform, &p, MAJORIZATION).unwrap();
    }
    c.check(uniform_ok, "uniform is majorized by 1000 random spectra");

    let p = Spectrum::new(vec![0.5, 0.25, 0.25]).unwrap();
    let q = Spectrum::new(vec![0.4, 0.4, 0.2]).unwrap();
    let pq = majorizes(&p, &q, MAJORIZATION).unwrap();
    let qp = majorizes(&q, &p, MAJORIZATION).unwrap();
    c.check(!pq && !qp, format!("[0.5,0.25,0.25] vs [0.4,0.4,0.2]: p<q {pq}, q<p {qp}"));

    let mut reflexive = true;
    let mut transitive = true;
    let mut chains = 0;
    for _ in 0..1000 {
        let n = rng.random_range(2..=9);
        let r = random_distribution(&mut rng, n);
        reflexive &= majorizes(&r, &r, MAJORIZATION).unwrap();

        // Mixing towards uniform moves down the order.
        let mix = |s: &Spectrum, t: f64| {
            Spectrum::new(s.values().iter().map(|x| t * x + (1.0 - t) / n as f64).collect()).unwrap()
        };
        let q = mix(&r, rng.random());
        let p = mix(&q, rng.random());
        let chain = [&p, &q, &r];
        let (pq, qr, pr) = (
            majorizes(chain[0], chain[1], MAJORIZATION).unwrap(),
            majorizes(chain[1], chain[2], MAJORIZATION).unwrap(),
            majorizes(chain[0], chain[2], MAJORIZATION).unwrap(),
        );
        transitive &= pq && qr && pr;

        let a = random_distribution(&mut rng, n);
        let b = random_distribution(&mut rng, n);
        let d = random_distribution(&mut rng, n);
        if majorizes(&a, &b, MAJORIZATION).unwrap() && majorizes(&b, &d, MAJORIZATION).unwrap() {
            chains += 1;
            transitive &= majorizes(&a, &d, MAJORIZATION).unwrap();
        }
    }
    c.check(reflexive, "reflexive on 1000 random vectors");
    c.check(
        transitive,
        format!("transitive on 1000 constructed chains and {chains} random chains"),
    );
    c.finish();
}

#[test]
fn criterion_6_incommensurability_certificates() {
    let mut c = Criterion::new(6, "incommensurability certificates");

    let v = certify_incommensurate(&catalog::dim8_psi(), &catalog::dim8_phi(), CERTIFIER).unwrap();
    let i5 = v.witness(WitnessQuantity::I5);
    c.check(
        v.kind == VerdictKind::Incommensurate && i5.is_some(),
        format!("dim8 pair: {} with I5 witness {:?}", v.kind.as_str(), i5.map(|w| (w.first, w.second))),
    );

    let phis = [("phi1", catalog::phi1()), ("phi2", catalog::phi2()), ("phi3", catalog::phi3())];
    for i in 0..3 {
        for j in i + 1..3 {
            let v = certify_incommensurate(&phis[i].1, &phis[j].1, CERTIFIER).unwrap();
            c.check(
                v.kind == VerdictKind::Incommensurate,
                format!("{} vs {}: {}", phis[i].0, phis[j].0, v.kind.as_str()),
            );
        }
    }

    let v = certify_incommensurate(&catalog::two_ghz(), &catalog::three_epr(), CERTIFIER).unwrap();
    let pt = v
        .witnesses
        .iter()
        .find(|w| matches!(w.quantity, WitnessQuantity::MinPartialTranspose { .. }));
    let pt_ok = pt.is_some_and(|w| w.first >= PT_SEPARABLE && (w.second + 0.125).abs() < PT_EPR);
    c.check(
        v.kind == VerdictKind::Incommensurate && pt_ok,
        format!("two_ghz vs three_epr: {} with {:?}", v.kind.as_str(), pt.map(ToString::to_string)),
    );

    let mut rng = StdRng::seed_from_u64(6);
    let mut inconclusive = 0;
    for _ in 0..100 {
        let dims: Vec<usize> = (0..3).map(|_| rng.random_range(2..=3)).collect();
        let state = random_state(&mut rng, &dims);
        let moved = random_local_orbit_point(&mut rng, &state);
        if certify_incommensurate(&state, &moved, CERTIFIER).unwrap().kind == VerdictKind::Inconclusive {
            inconclusive += 1;
        }
    }
    c.check(inconclusive == 100, format!("{inconclusive}/100 local-unitary orbits inconclusive"));
    c.finish();
}

#[test]
fn criterion_7_secret_sharing_round_trip() {
    let mut c = Criterion::new(7, "secret sharing round trip");
    let mut rng = StdRng::seed_from_u64(7);
    let s = 1.0 / 3f64.sqrt();
    let mut expected = vec![Complex64::new(0.0, 0.0); 9];
    for (x, y) in [(0, 0), (2, 1), (1, 2)] {
        expected[3 * x + y] = Complex64::new(s, 0.0);
    }
    let expected_residual = PureState::new(vec![3, 3], expected, false).unwrap();

    let mut worst_fidelity = 0.0f64;
    let mut worst_residual = 0.0f64;
    for _ in 0..100 {
        let secret = random_secret(&mut rng);
        let encoded = qss_encode(&secret).unwrap();
        for pair in DecodePair::ALL {
            let r = qss_decode(&encoded, pair).unwrap();
            worst_fidelity = worst_fidelity
                .max((r.fidelity - 1.0).abs())
                .max((r.secret_fidelity(&secret) - 1.0).abs());
            if pair == DecodePair::AB {
                worst_residual = worst_residual.max(distance_up_to_phase(&r.residual, &expected_residual));
            }
        }
    }
    c.check(
        worst_fidelity < DECODE_FIDELITY,
        format!("300 decodes: fidelity within {worst_fidelity:.2e} of 1"),
    );
    c.check(
        worst_residual < RESIDUAL,
        format!("AB residual within {worst_residual:.2e} of (|00>+|21>+|12>)/sqrt3"),
    );
    c.finish();
}

#[test]
fn criterion_8_cheat_demo() {
    let mut c = Criterion::new(8, "single-party cheating table");
    let rows = run_cheat_demo().unwrap();
    c.check(rows.len() == 9, format!("{} rows", rows.len()));
    for r in &rows {
        let want = match r.pair {
            DecodePair::AC => r.b,
            DecodePair::AB | DecodePair::BC => (r.b + 1) % 3,
        };
        c.check(
            r.recovered == want,
            format!("b={} {}: recovered {} (expected {want})", r.b, r.pair, r.recovered),
        );
        if r.pair.contains(CHEATER) {
            c.check(
                r.bob_inference == Some(r.b),
                format!("b={} {}: cheater infers {:?}", r.b, r.pair, r.bob_inference),
            );
        }
    }

    let mut worst = 0.0f64;
    for b in 0..3 {
        let encoded = qss_encode(&SecretQutrit::basis(b)).unwrap();
        let mut state = cheat_shift(&encoded, CHEATER).unwrap();
        for _ in 0..2 {
            state = cheat_shift(&state, CHEATER).unwrap();
        }
        let diff = encoded
            .amplitudes()
            .iter()
            .zip(state.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        worst = worst.max(diff);
    }
    c.check(worst < SHIFT_RESTORE, format!("two more shifts restore the encoding within {worst:.2e}"));
    c.finish();
}

#[test]
fn criterion_9_parameter_counting() {
    let mut c = Criterion::new(9, "nonlocal parameter counts");
    for (k, bound, hidden) in [(3, 5, 2), (4, 18, 14)] {
        let got_bound = hidden_param_lower_bound(k).unwrap();
        let got_hidden = hidden_from_single_party(k).unwrap();
        c.check(got_bound == bound, format!("k={k}: bound {got_bound} (expected {bound})"));
        c.check(got_hidden == hidden, format!("k={k}: hidden {got_hidden} (expected {hidden})"));
    }
    c.finish();
}
