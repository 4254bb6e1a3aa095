//! Random states and unitaries for property checks and sampling.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, Spectrum};
use crate::state::{LocalUnitary, PureState};

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Unitarily invariant (Haar) random pure state.
pub fn random_state(rng: &mut impl Rng, dims: &[usize]) -> PureState {
    let total: usize = dims.iter().product();
    let amps = (0..total).map(|_| gaussian(rng)).collect();
    PureState::new(dims.to_vec(), amps, true).expect("gaussian vector is nonzero")
}

/// Haar random `n x n` unitary: Gram-Schmidt on a complex Ginibre matrix.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut x: Vec<Complex64> = (0..n).map(|_| gaussian(rng)).collect();
        for _ in 0..2 {
            for b in &cols {
                let proj: Complex64 = b.iter().zip(&x).map(|(bi, xi)| bi.conj() * xi).sum();
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi -= proj * bi;
                }
            }
        }
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(x.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(n, n, |r, c| cols[c][r])
}

pub fn random_local_unitary(rng: &mut impl Rng, party: usize, dim: usize) -> LocalUnitary {
    LocalUnitary::new(party, random_unitary(rng, dim)).expect("Gram-Schmidt output is unitary")
}

/// Applies an independent Haar unitary to every party.
pub fn random_local_orbit_point(rng: &mut impl Rng, state: &PureState) -> PureState {
    state
        .dims()
        .to_vec()
        .into_iter()
        .enumerate()
        .fold(state.clone(), |s, (party, d)| {
            s.apply_local_unitary(&random_local_unitary(rng, party, d))
                .expect("unitary sized to the party")
        })
}

/// Random probability vector of length `n`, sorted descending.
pub fn random_distribution(rng: &mut impl Rng, n: usize) -> Spectrum {
    let raw: Vec<f64> = (0..n).map(|_| -rng.random::<f64>().max(f64::MIN_POSITIVE).ln()).collect();
    let total: f64 = raw.iter().sum();
    Spectrum::new(raw.into_iter().map(|x| x / total).collect()).expect("finite values")
}
