//! The ((3,2)) qutrit threshold scheme: one qutrit secret spread over three
//! qutrit shares so that any two shares recover it and one share alone is
//! maximally mixed.
//!
//! Also models a cheating share holder who applies the cyclic shift
//! `|0> -> |1> -> |2> -> |0>` to their share before a joint decode.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::catalog;
use crate::error::{Error, Result};
use crate::invariants::{certify_incommensurate, IncommensurabilityVerdict};
use crate::linalg::ComplexMatrix;
use crate::schmidt::schmidt;
use crate::state::{LocalUnitary, PureState};
use crate::tol;

/// Secret `a|0> + b|1> + c|2>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecretQutrit {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl SecretQutrit {
    /// Requires `|a|^2 + |b|^2 + |c|^2 = 1` within `1e-10`.
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        let s = Self { a, b, c };
        let norm = s.norm();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        if (norm - 1.0).abs() > tol::NORM {
            return Err(Error::NotNormalized { norm });
        }
        Ok(s)
    }

    /// Rescales any nonzero triple to unit norm.
    pub fn normalized(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        let norm = Self { a, b, c }.norm();
        if norm <= tol::MIN_NORM {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            a: a / norm,
            b: b / norm,
            c: c / norm,
        })
    }

    /// Basis secret `|trit>`.
    pub fn basis(trit: u8) -> Self {
        let mut v = [Complex64::new(0.0, 0.0); 3];
        v[usize::from(trit % 3)] = Complex64::new(1.0, 0.0);
        Self::from_array(v)
    }

    pub fn from_array([a, b, c]: [Complex64; 3]) -> Self {
        Self { a, b, c }
    }

    pub fn to_array(&self) -> [Complex64; 3] {
        [self.a, self.b, self.c]
    }

    fn norm(&self) -> f64 {
        self.to_array().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `|<self|other>|^2`
    pub fn fidelity(&self, other: &SecretQutrit) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(x, y)| x.conj() * y)
            .sum::<Complex64>()
            .norm_sqr()
    }
}

/// Which two share holders decode together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecodePair {
    AB,
    AC,
    BC,
}

impl DecodePair {
    pub const ALL: [DecodePair; 3] = [DecodePair::AB, DecodePair::AC, DecodePair::BC];

    /// Adders `(control, target, times)` applied in order.
    fn circuit(self) -> [(usize, usize, u8); 2] {
        match self {
            DecodePair::AB => [(0, 1, 1), (1, 0, 1)],
            DecodePair::AC => [(2, 0, 2), (0, 2, 2)],
            DecodePair::BC => [(1, 2, 2), (2, 1, 2)],
        }
    }

    /// Register that holds the secret after decoding.
    pub fn secret_register(self) -> usize {
        match self {
            DecodePair::AB | DecodePair::AC => 0,
            DecodePair::BC => 2,
        }
    }

    pub fn parties(self) -> [usize; 2] {
        match self {
            DecodePair::AB => [0, 1],
            DecodePair::AC => [0, 2],
            DecodePair::BC => [1, 2],
        }
    }

    pub fn contains(self, party: usize) -> bool {
        self.parties().contains(&party)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DecodePair::AB => "AB",
            DecodePair::AC => "AC",
            DecodePair::BC => "BC",
        }
    }
}

impl fmt::Display for DecodePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DecodePair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "AB" | "BA" => Ok(DecodePair::AB),
            "AC" | "CA" => Ok(DecodePair::AC),
            "BC" | "CB" => Ok(DecodePair::BC),
            _ => Err(Error::InvalidArgument(format!("unknown decode pair `{s}`; expected AB, AC or BC"))),
        }
    }
}

impl Serialize for DecodePair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct DecodeResult {
    pub secret_register: usize,
    pub post_state: PureState,
    /// Leading Schmidt vector of the secret register, with the global phase
    /// moved onto it so that the residual's first largest amplitude is real
    /// and positive.
    pub reconstructed: SecretQutrit,
    /// State of the two other registers, dims `[3, 3]`.
    pub residual: PureState,
    /// `|<reconstructed (x) residual|post_state>|^2`; one exactly when the
    /// secret register factors out.
    pub fidelity: f64,
}

impl DecodeResult {
    /// `|<secret|reconstructed>|^2`
    pub fn secret_fidelity(&self, secret: &SecretQutrit) -> f64 {
        secret.fidelity(&self.reconstructed)
    }
}

fn require_qutrit(state: &PureState, party: usize) -> Result<()> {
    match state.dims().get(party) {
        Some(3) => Ok(()),
        Some(&dim) => Err(Error::NotQutrit { party, dim }),
        None => Err(Error::InvalidParties(format!(
            "party {party} out of range for a {}-party state",
            state.num_parties()
        ))),
    }
}

/// `|..c..t..> -> |..c..(t + times*c mod 3)..>`; `times` is 1 or 2, the
/// latter realised as two unit additions.
pub fn mod3_adder(state: &PureState, control: usize, target: usize, times: u8) -> Result<PureState> {
    require_qutrit(state, control)?;
    require_qutrit(state, target)?;
    if control == target {
        return Err(Error::InvalidParties(format!(
            "adder control and target are both party {control}"
        )));
    }
    if !(1..=2).contains(&times) {
        return Err(Error::InvalidArgument(format!("adder multiplicity must be 1 or 2, got {times}")));
    }
    let add_once = |s: &PureState| {
        s.map_basis(|digits| digits[target] = (digits[target] + digits[control]) % 3)
    };
    let mut out = add_once(state);
    for _ in 1..times {
        out = add_once(&out);
    }
    Ok(out)
}

pub fn qss_encode(secret: &SecretQutrit) -> Result<PureState> {
    catalog::threshold(secret.a, secret.b, secret.c)
}

/// Runs the decoding circuit for `pair` and factors out the secret register.
pub fn qss_decode(state: &PureState, pair: DecodePair) -> Result<DecodeResult> {
    if state.dims() != [3, 3, 3] {
        return Err(Error::ShapeMismatch(format!(
            "decoding needs dims [3, 3, 3], got {:?}",
            state.dims()
        )));
    }
    let mut post = state.clone();
    for (control, target, times) in pair.circuit() {
        debug_assert!(pair.contains(control) && pair.contains(target));
        post = mod3_adder(&post, control, target, times)?;
    }

    let register = pair.secret_register();
    let decomposition = schmidt(&post, &[register])?;
    let weight = decomposition.coefficients[0].powi(2);
    let left = decomposition.left_vectors.column(0);
    let right = decomposition.right_vectors.column(0);

    let peak = right.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let anchor = right
        .iter()
        .find(|z| z.norm() >= peak - 1e-12)
        .copied()
        .expect("nonempty");
    let phase = anchor / anchor.norm();
    let residual_amps: Vec<Complex64> = right.iter().map(|z| z / phase).collect();
    let secret_amps: Vec<Complex64> = left.iter().map(|z| z * phase).collect();

    Ok(DecodeResult {
        secret_register: register,
        residual: PureState::new(vec![3, 3], residual_amps, true)?,
        reconstructed: SecretQutrit::normalized(secret_amps[0], secret_amps[1], secret_amps[2])?,
        post_state: post,
        fidelity: weight,
    })
}

/// `|0> -> |1> -> |2> -> |0>` as a matrix.
pub fn shift_matrix() -> ComplexMatrix {
    ComplexMatrix::from_fn(3, 3, |r, c| {
        if r == (c + 1) % 3 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Applies the cyclic shift to one qutrit share.
pub fn cheat_shift(state: &PureState, party: usize) -> Result<PureState> {
    require_qutrit(state, party)?;
    let u = LocalUnitary::new(party, shift_matrix())?;
    state.apply_local_unitary(&u)
}

/// Party index of the cheating share holder.
pub const CHEATER: usize = 1;

/// One row of the cheating demonstration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheatRecord {
    /// Trit actually encoded.
    pub b: u8,
    pub pair: DecodePair,
    /// Basis value found in the secret register after decoding.
    pub recovered: u8,
    /// What the cheater concludes, for pairs that include the cheater.
    pub bob_inference: Option<u8>,
}

/// Basis value of a register that is in a definite basis state.
fn certain_trit(state: &PureState, register: usize) -> Result<u8> {
    let rho = state.reduce(&[register])?;
    let diag: Vec<f64> = (0..3).map(|i| rho.matrix()[(i, i)].re).collect();
    let (trit, p) = diag
        .iter()
        .copied()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .expect("three entries");
    if p < 1.0 - tol::SPECTRUM {
        return Err(Error::InvalidArgument(format!(
            "register {register} is not in a basis state (largest probability {p})"
        )));
    }
    Ok(trit as u8)
}

fn decode_after_cheat(trit: u8, pair: DecodePair) -> Result<u8> {
    let encoded = qss_encode(&SecretQutrit::basis(trit))?;
    let shifted = cheat_shift(&encoded, CHEATER)?;
    let decoded = qss_decode(&shifted, pair)?;
    certain_trit(&decoded.post_state, decoded.secret_register)
}

/// Encodes each basis trit, lets party B shift its share, and decodes with
/// every pair.
///
/// The cheater knows the public decoding circuits, so for each pair they
/// learn the offset their shift induces by running it on the encoding of
/// `0`, and subtract it from the jointly recovered value.
pub fn run_cheat_demo() -> Result<Vec<CheatRecord>> {
    let mut rows = Vec::with_capacity(9);
    for b in 0..3u8 {
        for pair in DecodePair::ALL {
            let recovered = decode_after_cheat(b, pair)?;
            let bob_inference = if pair.contains(CHEATER) {
                let offset = decode_after_cheat(0, pair)?;
                Some((recovered + 3 - offset) % 3)
            } else {
                None
            };
            rows.push(CheatRecord {
                b,
                pair,
                recovered,
                bob_inference,
            });
        }
    }
    Ok(rows)
}

/// Verdict for one pair of the incommensurate encoding set.
#[derive(Debug, Clone)]
pub struct PairVerdict {
    pub first: &'static str,
    pub second: &'static str,
    pub verdict: IncommensurabilityVerdict,
}

/// Certifies that `phi1`, `phi2`, `phi3` are pairwise incommensurate, so no
/// single share holder can map one onto another with a local unitary.
pub fn prevention_check() -> Result<Vec<PairVerdict>> {
    let states = [
        ("phi1", catalog::phi1()),
        ("phi2", catalog::phi2()),
        ("phi3", catalog::phi3()),
    ];
    let mut out = Vec::with_capacity(3);
    for i in 0..3 {
        for j in i + 1..3 {
            out.push(PairVerdict {
                first: states[i].0,
                second: states[j].0,
                verdict: certify_incommensurate(&states[i].1, &states[j].1, tol::CERTIFIER)?,
            });
        }
    }
    Ok(out)
}
