//! Local-unitary polynomial invariants of tripartite states, counting of
//! hidden nonlocal parameters, and an incommensurability certifier.
//!
//! For `|psi> = sum a_ijk |i j k>` the invariants are
//!
//! * `I1 = sum |a_ijk|^2`
//! * `I2, I3, I4 = tr rho_A^2, tr rho_B^2, tr rho_C^2`
//! * `I5 = sum a_ijk a*_ilm a_nlo a*_pjo a_pqm a*_nqk`
//!
//! Two locally isospectral states whose invariants differ cannot be related
//! by local unitaries. When every party's reduced state is isospectral that
//! is exactly the condition for mutual LOCC inconvertibility, so a differing
//! invariant is a certificate of incommensurability.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::schmidt::reduced_min_pt_eigenvalue;
use crate::state::PureState;
use crate::tol;

/// Values of `I1..I5` for a three-party state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantSet {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
    pub i5: f64,
}

impl InvariantSet {
    pub fn as_array(&self) -> [f64; 5] {
        [self.i1, self.i2, self.i3, self.i4, self.i5]
    }
}

fn require_three_parties(state: &PureState) -> Result<()> {
    if state.num_parties() != 3 {
        return Err(Error::PartyCount {
            expected: 3,
            found: state.num_parties(),
        });
    }
    Ok(())
}

pub fn compute_invariants(state: &PureState) -> Result<InvariantSet> {
    require_three_parties(state)?;
    let i1 = state.amplitudes().iter().map(|z| z.norm_sqr()).sum();
    let purities = purity_per_party(state);
    let i5 = i5_direct(state)?;
    debug_assert!(i5.im.abs() < tol::IMAGINARY_RESIDUE, "I5 residue {}", i5.im);
    Ok(InvariantSet {
        i1,
        i2: purities[0],
        i3: purities[1],
        i4: purities[2],
        i5: i5.re,
    })
}

/// `tr rho_p^2` for every party.
pub fn purity_per_party(state: &PureState) -> Vec<f64> {
    (0..state.num_parties())
        .map(|p| state.reduce(&[p]).expect("single party").purity())
        .collect()
}

/// Six-fold contraction evaluated as a plain nine-index sum in a fixed
/// loop order.
pub fn i5_direct(state: &PureState) -> Result<Complex64> {
    require_three_parties(state)?;
    let (da, db, dc) = (state.dims()[0], state.dims()[1], state.dims()[2]);
    let amps = state.amplitudes();
    let a = |i: usize, j: usize, k: usize| amps[(i * db + j) * dc + k];

    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..da {
        for j in 0..db {
            for k in 0..dc {
                let x0 = a(i, j, k);
                if x0 == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for l in 0..db {
                    for m in 0..dc {
                        let x1 = x0 * a(i, l, m).conj();
                        for n in 0..da {
                            for o in 0..dc {
                                let x2 = x1 * a(n, l, o);
                                for p in 0..da {
                                    let x3 = x2 * a(p, j, o).conj();
                                    for q in 0..db {
                                        total += x3 * a(p, q, m) * a(n, q, k).conj();
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(total)
}

/// The same contraction regrouped through the two-party reductions:
/// `I5 = tr(rho_BC R)` with `R[(l,m),(j,k)] = sum_np rho_AB[nl,pj] rho_AC[pm,nk]`.
pub fn i5_matrix_chain(state: &PureState) -> Result<Complex64> {
    require_three_parties(state)?;
    let (da, db, dc) = (state.dims()[0], state.dims()[1], state.dims()[2]);
    let rho_bc = state.reduce(&[1, 2])?;
    let rho_ab = state.reduce(&[0, 1])?;
    let rho_ac = state.reduce(&[0, 2])?;
    let (bc, ab, ac) = (rho_bc.matrix(), rho_ab.matrix(), rho_ac.matrix());

    // P[(l,j),(n,p)] = rho_AB[(n,l),(p,j)]
    let p_mat = ComplexMatrix::from_fn(db * db, da * da, |r, c| {
        let (l, j) = (r / db, r % db);
        let (n, p) = (c / da, c % da);
        ab[(n * db + l, p * db + j)]
    });
    // Q[(n,p),(m,k)] = rho_AC[(p,m),(n,k)]
    let q_mat = ComplexMatrix::from_fn(da * da, dc * dc, |r, c| {
        let (n, p) = (r / da, r % da);
        let (m, k) = (c / dc, c % dc);
        ac[(p * dc + m, n * dc + k)]
    });
    let pq = p_mat.matmul(&q_mat);
    // R[(l,m),(j,k)] = PQ[(l,j),(m,k)]
    let r_mat = ComplexMatrix::from_fn(db * dc, db * dc, |r, c| {
        let (l, m) = (r / dc, r % dc);
        let (j, k) = (c / dc, c % dc);
        pq[(l * db + j, m * dc + k)]
    });
    Ok(bc.matmul(&r_mat).trace())
}

/// Lower bound `2^(k+1) - 2 - 3k` on the number of real nonlocal
/// parameters of `k` qubits.
pub fn hidden_param_lower_bound(k: u32) -> Result<i64> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "parameter counting needs at least 2 parties, got {k}"
        )));
    }
    let pow = 1i64
        .checked_shl(k + 1)
        .filter(|&v| v > 0)
        .ok_or_else(|| Error::InvalidArgument(format!("k = {k} is too large")))?;
    Ok(pow - 2 - 3 * i64::from(k))
}

/// Nonlocal parameters not visible in any single-qubit reduction: each of
/// the `k` one-party density matrices exposes one eigenvalue. Clamped at 0.
pub fn hidden_from_single_party(k: u32) -> Result<i64> {
    Ok((hidden_param_lower_bound(k)? - i64::from(k)).max(0))
}

/// Outcome class of [`certify_incommensurate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    /// Some party's reduced spectra differ, so the isospectral argument does
    /// not apply and nothing is claimed.
    NotLocallyIsospectral,
    /// A local-unitary invariant differs: the states are LOCC incommensurate.
    Incommensurate,
    /// All implemented invariants agree.
    Inconclusive,
}

impl VerdictKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictKind::NotLocallyIsospectral => "not_locally_isospectral",
            VerdictKind::Incommensurate => "incommensurate",
            VerdictKind::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessQuantity {
    I2,
    I3,
    I4,
    I5,
    /// Minimum partial-transpose eigenvalue of the two-party reduction with
    /// `traced` removed, cut between the two remaining parties.
    MinPartialTranspose { traced: usize },
}

impl fmt::Display for WitnessQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessQuantity::I2 => write!(f, "I2"),
            WitnessQuantity::I3 => write!(f, "I3"),
            WitnessQuantity::I4 => write!(f, "I4"),
            WitnessQuantity::I5 => write!(f, "I5"),
            WitnessQuantity::MinPartialTranspose { traced } => {
                write!(f, "min_pt_eigenvalue(traced={traced})")
            }
        }
    }
}

/// A quantity that differs between the two states, with both values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub quantity: WitnessQuantity,
    pub first: f64,
    pub second: f64,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} vs {}", self.quantity, self.first, self.second)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IncommensurabilityVerdict {
    pub kind: VerdictKind,
    /// Every differing quantity; nonempty iff `kind` is `Incommensurate`.
    pub witnesses: Vec<Witness>,
    /// Largest per-party difference between the reduced spectra.
    pub max_spectral_difference: f64,
}

impl IncommensurabilityVerdict {
    pub fn witness(&self, quantity: WitnessQuantity) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.quantity == quantity)
    }
}

/// Sound but incomplete test for three-party LOCC incommensurability.
///
/// Returns `Incommensurate` only with a witness: one of `I2..I5`, or the
/// partial-transpose minimum of one of the three two-party reductions,
/// differing by more than `tol`.
pub fn certify_incommensurate(a: &PureState, b: &PureState, tol: f64) -> Result<IncommensurabilityVerdict> {
    require_three_parties(a)?;
    if a.dims() != b.dims() {
        return Err(Error::ShapeMismatch(format!(
            "states have dims {:?} and {:?}",
            a.dims(),
            b.dims()
        )));
    }

    let max_spectral_difference = a
        .local_spectra()
        .iter()
        .zip(b.local_spectra())
        .map(|(x, y)| x.max_abs_diff(&y))
        .fold(0.0, f64::max);
    if max_spectral_difference > tol {
        return Ok(IncommensurabilityVerdict {
            kind: VerdictKind::NotLocallyIsospectral,
            witnesses: Vec::new(),
            max_spectral_difference,
        });
    }

    let ia = compute_invariants(a)?;
    let ib = compute_invariants(b)?;
    let mut witnesses: Vec<Witness> = [
        (WitnessQuantity::I2, ia.i2, ib.i2),
        (WitnessQuantity::I3, ia.i3, ib.i3),
        (WitnessQuantity::I4, ia.i4, ib.i4),
        (WitnessQuantity::I5, ia.i5, ib.i5),
    ]
    .into_iter()
    .filter(|(_, x, y)| (x - y).abs() > tol)
    .map(|(quantity, first, second)| Witness {
        quantity,
        first,
        second,
    })
    .collect();

    for traced in 0..3 {
        let rest: Vec<usize> = (0..3).filter(|&p| p != traced).collect();
        let first = reduced_min_pt_eigenvalue(a, &rest[..1], &rest[1..])?;
        let second = reduced_min_pt_eigenvalue(b, &rest[..1], &rest[1..])?;
        if (first - second).abs() > tol {
            witnesses.push(Witness {
                quantity: WitnessQuantity::MinPartialTranspose { traced },
                first,
                second,
            });
        }
    }

    let kind = if witnesses.is_empty() {
        VerdictKind::Inconclusive
    } else {
        VerdictKind::Incommensurate
    };
    Ok(IncommensurabilityVerdict {
        kind,
        witnesses,
        max_spectral_difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn ghz3() -> PureState {
        let mut amps = vec![c(0.0); 8];
        amps[0] = c(1.0);
        amps[7] = c(1.0);
        PureState::new(vec![2, 2, 2], amps, true).unwrap()
    }

    /// Brute-force `I2 = sum a_kij a*_mij a_mpq a*_kpq` straight from the
    /// polynomial, independent of the reduced density matrix code.
    fn i2_polynomial(s: &PureState) -> f64 {
        let d = s.dims();
        let a = |i: usize, j: usize, k: usize| s.amplitude(&[i, j, k]);
        let mut t = Complex64::new(0.0, 0.0);
        for i in 0..d[1] {
            for j in 0..d[2] {
                for k in 0..d[0] {
                    for m in 0..d[0] {
                        for p in 0..d[1] {
                            for q in 0..d[2] {
                                t += a(k, i, j) * a(m, i, j).conj() * a(m, p, q) * a(k, p, q).conj();
                            }
                        }
                    }
                }
            }
        }
        t.re
    }

    #[test]
    fn product_state_invariants_are_one() {
        let s = PureState::basis(vec![2, 2, 2], &[0, 0, 0]).unwrap();
        let inv = compute_invariants(&s).unwrap();
        assert_eq!(inv.as_array(), [1.0; 5]);
    }

    #[test]
    fn requires_three_parties() {
        let s = PureState::basis(vec![2, 2], &[0, 0]).unwrap();
        assert!(matches!(compute_invariants(&s), Err(Error::PartyCount { expected: 3, found: 2 })));
        assert!(certify_incommensurate(&s, &s, 1e-6).is_err());
    }

    #[test]
    fn purity_examples() {
        assert!(purity_per_party(&ghz3()).iter().all(|&x| (x - 0.5).abs() < 1e-15));
        let prod = PureState::basis(vec![2, 3, 2], &[1, 2, 0]).unwrap();
        assert_eq!(purity_per_party(&prod), vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn purities_agree_with_eigenvalues_and_polynomial() {
        let mut rng = StdRng::seed_from_u64(71);
        for dims in [[2, 2, 2], [2, 3, 2], [3, 3, 3]] {
            for _ in 0..20 {
                let s = random::random_state(&mut rng, &dims);
                let inv = compute_invariants(&s).unwrap();
                for (p, value) in [inv.i2, inv.i3, inv.i4].into_iter().enumerate() {
                    let ev: f64 = s.reduce(&[p]).unwrap().spectrum().values().iter().map(|x| x * x).sum();
                    assert!((value - ev).abs() <= 1e-9);
                }
                assert!((inv.i2 - i2_polynomial(&s)).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn i5_routes_agree() {
        let mut rng = StdRng::seed_from_u64(73);
        for dims in [[2, 2, 2], [2, 3, 4], [3, 3, 3], [4, 2, 3]] {
            for _ in 0..10 {
                let s = random::random_state(&mut rng, &dims);
                let direct = i5_direct(&s).unwrap();
                let chain = i5_matrix_chain(&s).unwrap();
                assert!((direct - chain).norm() <= 1e-9, "{dims:?}: {direct} vs {chain}");
                assert!(direct.im.abs() < tol::IMAGINARY_RESIDUE);
            }
        }
    }

    #[test]
    fn invariants_are_local_unitary_invariant() {
        let mut rng = StdRng::seed_from_u64(79);
        for dims in [[2, 2, 2], [2, 3, 3], [3, 3, 3]] {
            for _ in 0..30 {
                let s = random::random_state(&mut rng, &dims);
                let t = random::random_local_orbit_point(&mut rng, &s);
                let (x, y) = (compute_invariants(&s).unwrap(), compute_invariants(&t).unwrap());
                for (u, v) in x.as_array().iter().zip(y.as_array()) {
                    assert!((u - v).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn parameter_counts() {
        assert_eq!(hidden_param_lower_bound(3).unwrap(), 5);
        assert_eq!(hidden_param_lower_bound(4).unwrap(), 18);
        assert_eq!(hidden_param_lower_bound(5).unwrap(), 47);
        assert_eq!(hidden_from_single_party(3).unwrap(), 2);
        assert_eq!(hidden_from_single_party(4).unwrap(), 14);
        assert_eq!(hidden_from_single_party(2).unwrap(), 0);
        assert_eq!(hidden_param_lower_bound(2).unwrap(), 0);
        assert!(hidden_param_lower_bound(1).is_err());
        assert!(hidden_from_single_party(0).is_err());
        assert!(hidden_param_lower_bound(62).is_err());
    }

    #[test]
    fn orbit_pairs_are_inconclusive() {
        let mut rng = StdRng::seed_from_u64(83);
        for _ in 0..20 {
            let s = random::random_state(&mut rng, &[2, 3, 2]);
            let t = random::random_local_orbit_point(&mut rng, &s);
            let v = certify_incommensurate(&s, &t, tol::CERTIFIER).unwrap();
            assert_eq!(v.kind, VerdictKind::Inconclusive);
            assert!(v.witnesses.is_empty());
        }
    }

    #[test]
    fn different_spectra_are_not_isospectral() {
        let mut rng = StdRng::seed_from_u64(89);
        let s = random::random_state(&mut rng, &[2, 2, 2]);
        let v = certify_incommensurate(&s, &ghz3(), tol::CERTIFIER).unwrap();
        assert_eq!(v.kind, VerdictKind::NotLocallyIsospectral);
        assert!(v.witnesses.is_empty());
        assert!(v.max_spectral_difference > tol::CERTIFIER);
    }
}
