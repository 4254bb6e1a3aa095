//! Named states.
//!
//! Six-qubit states are laid out as `A1 A2 B1 B2 C1 C2` and then merged into
//! three four-level parties, qubit 1 being the high-order digit of each.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{tensor_states, PureState};

/// Identifiers accepted by [`build`].
pub const NAMES: &[&str] = &[
    "epr",
    "epr_minus",
    "ghz",
    "two_ghz",
    "three_epr",
    "three_epr_minus",
    "dim8_psi",
    "dim8_phi",
    "threshold",
    "phi1",
    "phi2",
    "phi3",
];

const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn no_params(name: &str, params: &[f64]) -> Result<()> {
    if params.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidParams {
            name: name.to_string(),
            reason: format!("takes no parameters, got {}", params.len()),
        })
    }
}

/// Builds a catalog state by name.
///
/// `ghz` takes the qubit count; `threshold` takes `(a, b, c)` either as three
/// reals or as six numbers `a_re, a_im, b_re, b_im, c_re, c_im`. Every other
/// name takes no parameters.
pub fn build(name: &str, params: &[f64]) -> Result<PureState> {
    match name {
        "epr" => no_params(name, params).map(|_| epr()),
        "epr_minus" => no_params(name, params).map(|_| epr_minus()),
        "ghz" => {
            let k = match params {
                [k] if k.fract() == 0.0 && *k >= 2.0 && *k <= 24.0 => *k as usize,
                _ => {
                    return Err(Error::InvalidParams {
                        name: name.into(),
                        reason: "expects one integer qubit count between 2 and 24".into(),
                    })
                }
            };
            Ok(ghz(k))
        }
        "two_ghz" => no_params(name, params).map(|_| two_ghz()),
        "three_epr" => no_params(name, params).map(|_| three_epr()),
        "three_epr_minus" => no_params(name, params).map(|_| three_epr_minus()),
        "dim8_psi" => no_params(name, params).map(|_| dim8_psi()),
        "dim8_phi" => no_params(name, params).map(|_| dim8_phi()),
        "threshold" => {
            let (a, b, c) = match *params {
                [a, b, c] => (re(a), re(b), re(c)),
                [ar, ai, br, bi, cr, ci] => (
                    Complex64::new(ar, ai),
                    Complex64::new(br, bi),
                    Complex64::new(cr, ci),
                ),
                _ => {
                    return Err(Error::InvalidParams {
                        name: name.into(),
                        reason: format!("expects 3 or 6 numbers, got {}", params.len()),
                    })
                }
            };
            threshold(a, b, c).map_err(|e| match e {
                Error::ZeroVector => Error::InvalidParams {
                    name: name.into(),
                    reason: "a = b = c = 0".into(),
                },
                other => other,
            })
        }
        "phi1" => no_params(name, params).map(|_| phi1()),
        "phi2" => no_params(name, params).map(|_| phi2()),
        "phi3" => no_params(name, params).map(|_| phi3()),
        _ => Err(Error::UnknownState(name.to_string())),
    }
}

/// `(|00> + |11>)/sqrt2`
pub fn epr() -> PureState {
    PureState::new(vec![2, 2], vec![re(H), re(0.0), re(0.0), re(H)], false).expect("unit norm")
}

/// `(|00> - |11>)/sqrt2`
pub fn epr_minus() -> PureState {
    PureState::new(vec![2, 2], vec![re(H), re(0.0), re(0.0), re(-H)], false).expect("unit norm")
}

/// `(|0...0> + |1...1>)/sqrt2` on `k >= 2` qubits.
pub fn ghz(k: usize) -> PureState {
    assert!(k >= 2, "GHZ needs at least two qubits");
    let mut amps = vec![re(0.0); 1 << k];
    amps[0] = re(H);
    amps[(1 << k) - 1] = re(H);
    PureState::new(vec![2; k], amps, false).expect("unit norm")
}

/// Two GHZ triples, `(A1 B1 C1) (x) (A2 B2 C2)`, as dims `[4, 4, 4]`.
pub fn two_ghz() -> PureState {
    tensor_states(&[ghz(3), ghz(3)])
        .and_then(|s| s.regroup_parties(&[vec![0, 3], vec![1, 4], vec![2, 5]]))
        .expect("fixed layout")
}

fn three_pairs(pair: PureState) -> PureState {
    // qubits in tensor order: A1 B1 | A2 C1 | B2 C2
    tensor_states(&[pair.clone(), pair.clone(), pair])
        .and_then(|s| s.regroup_parties(&[vec![0, 2], vec![1, 4], vec![3, 5]]))
        .expect("fixed layout")
}

/// EPR pairs on A1-B1, A2-C1, B2-C2, as dims `[4, 4, 4]`.
pub fn three_epr() -> PureState {
    three_pairs(epr())
}

/// [`three_epr`] built from `(|00> - |11>)/sqrt2` pairs.
pub fn three_epr_minus() -> PureState {
    three_pairs(epr_minus())
}

/// `2 sqrt(3/37)|000> - (5/sqrt37)|111>`
pub fn dim8_psi() -> PureState {
    let mut amps = vec![re(0.0); 8];
    amps[0] = re(2.0 * (3.0f64 / 37.0).sqrt());
    amps[7] = re(-5.0 / 37.0f64.sqrt());
    PureState::new(vec![2, 2, 2], amps, true).expect("nonzero")
}

/// `4 sqrt(2/37)|000> - (5/sqrt37)|vvv>` with `|v> = (|0> + |1>)/sqrt2`.
pub fn dim8_phi() -> PureState {
    let v_cubed = (H * H * H) * -5.0 / 37.0f64.sqrt();
    let mut amps = vec![re(v_cubed); 8];
    amps[0] += re(4.0 * (2.0f64 / 37.0).sqrt());
    PureState::new(vec![2, 2, 2], amps, true).expect("nonzero")
}

/// The ((3,2)) threshold encoding of `a|0> + b|1> + c|2>`:
/// `a(|000>+|111>+|222>) + b(|012>+|120>+|201>) + c(|021>+|102>+|210>)`,
/// divided by its norm.
pub fn threshold(a: Complex64, b: Complex64, c: Complex64) -> Result<PureState> {
    let mut amps = vec![re(0.0); 27];
    let secret = [a, b, c];
    // the term with secret index s has digits (x, x + s, x + 2s) mod 3
    for (s, &coef) in secret.iter().enumerate() {
        for x in 0..3 {
            let digits = [x, (x + s) % 3, (x + 2 * s) % 3];
            amps[digits[0] * 9 + digits[1] * 3 + digits[2]] += coef;
        }
    }
    PureState::new(vec![3, 3, 3], amps, true)
}

/// `threshold(1, 0, 0)`
pub fn phi1() -> PureState {
    threshold(re(1.0), re(0.0), re(0.0)).expect("nonzero")
}

/// `threshold(0, 1/sqrt2, 1/sqrt2)`
pub fn phi2() -> PureState {
    threshold(re(0.0), re(H), re(H)).expect("nonzero")
}

/// `threshold(0, 1/sqrt2, -1/sqrt2)`
pub fn phi3() -> PureState {
    threshold(re(0.0), re(H), re(-H)).expect("nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;

    #[test]
    fn every_name_builds_a_unit_vector() {
        for &name in NAMES {
            let params: &[f64] = match name {
                "ghz" => &[4.0],
                "threshold" => &[0.3, -0.2, 0.5, 0.1, 0.0, 0.7],
                _ => &[],
            };
            let s = build(name, params).unwrap();
            assert!((s.norm() - 1.0).abs() <= 1e-12, "{name}");
        }
    }

    #[test]
    fn build_errors() {
        assert_eq!(build("w_state", &[]), Err(Error::UnknownState("w_state".into())));
        assert!(matches!(build("epr", &[1.0]), Err(Error::InvalidParams { .. })));
        assert!(matches!(build("ghz", &[]), Err(Error::InvalidParams { .. })));
        assert!(matches!(build("ghz", &[2.5]), Err(Error::InvalidParams { .. })));
        assert!(matches!(build("threshold", &[0.0, 0.0, 0.0]), Err(Error::InvalidParams { .. })));
        assert!(matches!(build("threshold", &[1.0, 0.0]), Err(Error::InvalidParams { .. })));
    }

    #[test]
    fn ghz2_is_epr() {
        assert_eq!(ghz(2), epr());
    }

    #[test]
    fn phi1_amplitudes() {
        let s = phi1();
        let third = 1.0 / 3.0f64.sqrt();
        for (i, a) in s.amplitudes().iter().enumerate() {
            let want = if [0, 13, 26].contains(&i) { third } else { 0.0 };
            assert!((a - re(want)).norm() < 1e-15, "index {i}");
        }
    }

    #[test]
    fn phi2_matches_printed_form() {
        let s = phi2();
        let w = 1.0 / 6.0f64.sqrt();
        for digits in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [1, 0, 2], [2, 1, 0]] {
            assert!((s.amplitude(&digits) - re(w)).norm() < 1e-15);
        }
        let s = phi3();
        assert!((s.amplitude(&[1, 0, 2]) - re(-w)).norm() < 1e-15);
    }

    #[test]
    fn phis_are_orthonormal() {
        let phis = [phi1(), phi2(), phi3()];
        for (i, a) in phis.iter().enumerate() {
            for (j, b) in phis.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((a.overlap(b).unwrap() - re(want)).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn two_ghz_and_three_epr_layouts() {
        let s = two_ghz();
        assert_eq!(s.dims(), &[4, 4, 4]);
        // |0_A1 0_A2, 0_B1 0_B2, 0_C1 0_C2> and |1 1, 1 1, 1 1> and the mixed
        // |01, 01, 01> (second GHZ excited)
        assert!((s.amplitude(&[0, 0, 0]) - re(0.5)).norm() < 1e-15);
        assert!((s.amplitude(&[1, 1, 1]) - re(0.5)).norm() < 1e-15);
        assert!((s.amplitude(&[2, 2, 2]) - re(0.5)).norm() < 1e-15);
        assert!((s.amplitude(&[3, 3, 3]) - re(0.5)).norm() < 1e-15);

        let e = three_epr();
        // A1=B1=1 only: A = 10b, B = 10b, C = 00b
        assert!((e.amplitude(&[2, 2, 0]) - re(H * H * H)).norm() < 1e-15);
        // A2=C1=1: A = 01b, C = 10b
        assert!((e.amplitude(&[1, 0, 2]) - re(H * H * H)).norm() < 1e-15);
        // B2=C2=1: B = 01b, C = 01b
        assert!((e.amplitude(&[0, 1, 1]) - re(H * H * H)).norm() < 1e-15);
        assert_eq!(e.amplitude(&[1, 1, 1]), re(0.0));

        let quarter = ComplexMatrix::from_diagonal(&[0.25; 4]);
        for s in [two_ghz(), three_epr(), three_epr_minus()] {
            for p in 0..3 {
                assert!(s.reduce(&[p]).unwrap().matrix().max_abs_diff(&quarter) <= 1e-12);
            }
        }
        assert!(two_ghz().overlap(&three_epr_minus()).unwrap().norm() <= 1e-10);
    }

    #[test]
    fn dim8_states_share_local_spectra() {
        for s in [dim8_psi(), dim8_phi()] {
            for sp in s.local_spectra() {
                assert!((sp.values()[0] - 25.0 / 37.0).abs() < 1e-12);
                assert!((sp.values()[1] - 12.0 / 37.0).abs() < 1e-12);
            }
        }
        let rho = dim8_psi().reduce(&[0]).unwrap();
        assert!(rho
            .matrix()
            .max_abs_diff(&ComplexMatrix::from_diagonal(&[12.0 / 37.0, 25.0 / 37.0]))
            < 1e-15);
    }

    #[test]
    fn threshold_states_are_locally_maximally_mixed() {
        let third = ComplexMatrix::from_diagonal(&[1.0 / 3.0; 3]);
        let secrets = [
            (re(1.0), re(0.0), re(0.0)),
            (re(0.6), Complex64::new(0.0, 0.8), re(0.0)),
            (Complex64::new(0.1, 0.2), re(-0.5), Complex64::new(0.3, -0.7)),
        ];
        for (a, b, c) in secrets {
            let s = threshold(a, b, c).unwrap();
            for p in 0..3 {
                assert!(s.reduce(&[p]).unwrap().matrix().max_abs_diff(&third) <= 1e-12);
            }
        }
    }
}
