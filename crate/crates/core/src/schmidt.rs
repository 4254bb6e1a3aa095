//! Bipartite structure: Schmidt decompositions, majorization, Nielsen's
//! convertibility criterion and the partial-transpose entanglement witness.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, Spectrum};
use crate::state::{DensityMatrix, PureState};
use crate::tol;

/// `|psi> = sum_i c_i |l_i>|r_i>` across a cut of the parties.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    /// Descending, nonnegative; `min(dim_left, dim_right)` entries.
    pub coefficients: Vec<f64>,
    /// Columns are `|l_i>` over the `left` parties in ascending order.
    pub left_vectors: ComplexMatrix,
    /// Columns are `|r_i>` over the `right` parties in ascending order.
    pub right_vectors: ComplexMatrix,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    dims: Vec<usize>,
}

impl SchmidtDecomposition {
    /// Reassembles `sum_i c_i |l_i>|r_i>` in the original party order.
    pub fn reconstruct(&self) -> PureState {
        let (rows, cols) = (self.left_vectors.rows(), self.right_vectors.rows());
        let mut amps = vec![Complex64::new(0.0, 0.0); rows * cols];
        for (i, &c) in self.coefficients.iter().enumerate() {
            for r in 0..rows {
                let a = self.left_vectors[(r, i)] * c;
                for s in 0..cols {
                    amps[r * cols + s] += a * self.right_vectors[(s, i)];
                }
            }
        }
        let order: Vec<usize> = self.left.iter().chain(&self.right).copied().collect();
        let permuted_dims: Vec<usize> = order.iter().map(|&p| self.dims[p]).collect();
        let mut inverse = vec![0; order.len()];
        for (pos, &p) in order.iter().enumerate() {
            inverse[p] = pos;
        }
        PureState::from_parts_unchecked(permuted_dims, amps)
            .permute_parties(&inverse)
            .expect("inverse of a permutation")
    }

    /// Squared coefficients as a spectrum.
    pub fn weights(&self) -> Spectrum {
        Spectrum::new(self.coefficients.iter().map(|c| c * c).collect()).expect("finite")
    }
}

fn check_cut(state: &PureState, left: &[usize]) -> Result<Vec<usize>> {
    if left.is_empty() || left.len() >= state.num_parties() {
        return Err(Error::InvalidParties(format!(
            "cut {left:?} is not a nonempty proper subset of {} parties",
            state.num_parties()
        )));
    }
    let mut left = left.to_vec();
    left.sort_unstable();
    Ok(left)
}

/// Schmidt decomposition across `left | rest`.
pub fn schmidt(state: &PureState, left: &[usize]) -> Result<SchmidtDecomposition> {
    let left = check_cut(state, left)?;
    let (m, right) = state.bipartite_matrix(&left)?;
    let svd = linalg::singular_value_decomposition(&m);
    // M = U S V^H, so the right Schmidt vectors are the conjugated columns of V
    let right_vectors = ComplexMatrix::from_fn(svd.v.rows(), svd.v.cols(), |r, c| svd.v[(r, c)].conj());
    Ok(SchmidtDecomposition {
        coefficients: svd.singular_values,
        left_vectors: svd.u,
        right_vectors,
        left,
        right,
        dims: state.dims().to_vec(),
    })
}

/// `p ≺ q`: every descending prefix sum of `p` is at most the matching
/// prefix sum of `q` plus `tol`.
///
/// The shorter spectrum is zero-padded. Totals must agree within `tol`.
pub fn majorizes(p: &Spectrum, q: &Spectrum, tol: f64) -> Result<bool> {
    let (ps, qs) = (p.sum(), q.sum());
    if (ps - qs).abs() > tol {
        return Err(Error::SumMismatch { left: ps, right: qs });
    }
    let n = p.len().max(q.len());
    let (p, q) = (p.padded(n), q.padded(n));
    let mut acc_p = 0.0;
    let mut acc_q = 0.0;
    for (a, b) in p.iter().zip(&q) {
        acc_p += a;
        acc_q += b;
        if acc_p > acc_q + tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `source` can be turned into `target` by LOCC between the `left`
/// parties and the rest: the source's cut spectrum must be majorized by the
/// target's (default majorization slack).
pub fn nielsen_transformable(source: &PureState, target: &PureState, left: &[usize]) -> Result<bool> {
    if source.dims() != target.dims() {
        return Err(Error::ShapeMismatch(format!(
            "states have dims {:?} and {:?}",
            source.dims(),
            target.dims()
        )));
    }
    let left = check_cut(source, left)?;
    let p = source.reduce(&left)?.spectrum();
    let q = target.reduce(&left)?.spectrum();
    majorizes(&p, &q, tol::MAJORIZATION)
}

/// Smallest eigenvalue of the partial transpose of `rho` over a
/// `dim_left x dim_right` split. Values below `-1e-8` certify entanglement.
pub fn min_pt_eigenvalue(rho: &DensityMatrix, dim_left: usize, dim_right: usize) -> Result<f64> {
    let pt = linalg::partial_transpose(rho.matrix(), dim_left, dim_right)?;
    let spectrum = linalg::hermitian_eigenvalues(&pt)?;
    Ok(*spectrum.values().last().expect("nonempty"))
}

/// Reduces `state` to `left ∪ right` (left parties first, each group in the
/// listed order) and returns the partial-transpose minimum across that cut.
pub fn reduced_min_pt_eigenvalue(state: &PureState, left: &[usize], right: &[usize]) -> Result<f64> {
    if left.is_empty() || right.is_empty() {
        return Err(Error::InvalidParties("both sides of the cut must be nonempty".into()));
    }
    let keep: Vec<usize> = left.iter().chain(right).copied().collect();
    let rho = state.reduce_ordered(&keep)?;
    let dl = left.iter().map(|&p| state.dims()[p]).product();
    let dr = right.iter().map(|&p| state.dims()[p]).product();
    min_pt_eigenvalue(&rho, dl, dr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn spec(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    fn epr() -> PureState {
        PureState::new(vec![2, 2], vec![c(H), c(0.0), c(0.0), c(H)], false).unwrap()
    }

    fn two_qutrit_with_spectrum(p: &[f64]) -> PureState {
        let mut amps = vec![c(0.0); 9];
        for (i, &x) in p.iter().enumerate() {
            amps[i * 4] = c(x.sqrt());
        }
        PureState::new(vec![3, 3], amps, false).unwrap()
    }

    #[test]
    fn schmidt_examples() {
        let s = schmidt(&epr(), &[0]).unwrap();
        assert!(s.coefficients.iter().all(|&x| (x - H).abs() < 1e-15));

        let psi = PureState::new(
            vec![2, 2, 2],
            {
                let mut a = vec![c(0.0); 8];
                a[0] = c(2.0 * (3.0f64 / 37.0).sqrt());
                a[7] = c(-5.0 / 37.0f64.sqrt());
                a
            },
            false,
        )
        .unwrap();
        let s = schmidt(&psi, &[0]).unwrap();
        assert!((s.coefficients[0] - 5.0 / 37.0f64.sqrt()).abs() < 1e-14);
        assert!((s.coefficients[1] - 2.0 * 3.0f64.sqrt() / 37.0f64.sqrt()).abs() < 1e-14);

        let prod = PureState::basis(vec![2, 2], &[0, 0]).unwrap();
        assert_eq!(schmidt(&prod, &[0]).unwrap().coefficients, vec![1.0, 0.0]);

        assert!(schmidt(&prod, &[]).is_err());
        assert!(schmidt(&prod, &[0, 1]).is_err());
    }

    #[test]
    fn schmidt_reconstructs_and_matches_reductions() {
        let mut rng = StdRng::seed_from_u64(41);
        for cut in [vec![0], vec![1], vec![0, 2], vec![2, 1]] {
            let s = random::random_state(&mut rng, &[2, 3, 2]);
            let d = schmidt(&s, &cut).unwrap();
            let back = d.reconstruct();
            let err: f64 = back
                .amplitudes()
                .iter()
                .zip(s.amplitudes())
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(err <= 1e-8, "cut {cut:?}: {err}");
            assert!((d.weights().sum() - 1.0).abs() <= 1e-9);
            let rest: Vec<usize> = (0..3).filter(|p| !cut.contains(p)).collect();
            assert!(d.weights().max_abs_diff(&s.reduce(&cut).unwrap().spectrum()) <= 1e-8);
            assert!(d.weights().max_abs_diff(&s.reduce(&rest).unwrap().spectrum()) <= 1e-8);
            let dl: usize = cut.iter().map(|&p| s.dims()[p]).product();
            assert_eq!(d.coefficients.len(), dl.min(12 / dl));
        }
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&spec(&[0.5, 0.5]), &spec(&[1.0, 0.0]), 1e-9).unwrap());
        assert!(!majorizes(&spec(&[1.0, 0.0]), &spec(&[0.5, 0.5]), 1e-9).unwrap());
        let a = spec(&[0.5, 0.25, 0.25]);
        let b = spec(&[0.4, 0.4, 0.2]);
        assert!(!majorizes(&a, &b, 1e-9).unwrap());
        assert!(!majorizes(&b, &a, 1e-9).unwrap());
        // padding
        assert!(majorizes(&spec(&[0.25; 4]), &spec(&[0.5, 0.5]), 1e-9).unwrap());
        assert!(matches!(
            majorizes(&spec(&[0.5, 0.4]), &spec(&[1.0]), 1e-9),
            Err(Error::SumMismatch { .. })
        ));
    }

    #[test]
    fn uniform_is_majorized_by_everything() {
        let mut rng = StdRng::seed_from_u64(43);
        for n in 1..8 {
            let uniform = spec(&vec![1.0 / n as f64; n]);
            for _ in 0..50 {
                let q = random::random_distribution(&mut rng, n);
                assert!(majorizes(&uniform, &q, tol::MAJORIZATION).unwrap());
            }
        }
    }

    #[test]
    fn majorization_is_a_preorder() {
        let mut rng = StdRng::seed_from_u64(47);
        for _ in 0..1000 {
            let n = 4;
            let p = random::random_distribution(&mut rng, n);
            let q = random::random_distribution(&mut rng, n);
            let r = random::random_distribution(&mut rng, n);
            assert!(majorizes(&p, &p, 1e-9).unwrap());
            if majorizes(&p, &q, 1e-9).unwrap() && majorizes(&q, &r, 1e-9).unwrap() {
                assert!(majorizes(&p, &r, 2e-9).unwrap());
            }
        }
    }

    #[test]
    fn nielsen_examples() {
        let mut rng = StdRng::seed_from_u64(53);
        for _ in 0..20 {
            let t = random::random_state(&mut rng, &[2, 2]);
            assert!(nielsen_transformable(&epr(), &t, &[0]).unwrap());
            assert!(nielsen_transformable(&t, &t, &[1]).unwrap());
            let u = random::random_local_orbit_point(&mut rng, &t);
            assert!(nielsen_transformable(&t, &u, &[0]).unwrap());
            assert!(nielsen_transformable(&u, &t, &[0]).unwrap());
        }
        let a = two_qutrit_with_spectrum(&[0.5, 0.25, 0.25]);
        let b = two_qutrit_with_spectrum(&[0.4, 0.4, 0.2]);
        assert!(!nielsen_transformable(&a, &b, &[0]).unwrap());
        assert!(!nielsen_transformable(&b, &a, &[0]).unwrap());
        assert!(nielsen_transformable(&a, &epr(), &[0]).is_err());
    }

    #[test]
    fn pt_witness_on_products_and_epr() {
        let mut rng = StdRng::seed_from_u64(59);
        let a = random::random_state(&mut rng, &[3]);
        let b = random::random_state(&mut rng, &[2]);
        let rho = a.tensor(&b).reduce(&[0, 1]).unwrap();
        assert!(min_pt_eigenvalue(&rho, 3, 2).unwrap() >= -1e-10);
        let rho = epr().reduce(&[0, 1]).unwrap();
        assert!((min_pt_eigenvalue(&rho, 2, 2).unwrap() + 0.5).abs() < 1e-12);
        assert!(min_pt_eigenvalue(&rho, 2, 3).is_err());
    }

    #[test]
    fn pt_witness_is_local_unitary_invariant() {
        let mut rng = StdRng::seed_from_u64(61);
        for _ in 0..30 {
            let s = random::random_state(&mut rng, &[2, 3, 2]);
            let before = reduced_min_pt_eigenvalue(&s, &[0], &[1]).unwrap();
            let t = random::random_local_orbit_point(&mut rng, &s);
            let after = reduced_min_pt_eigenvalue(&t, &[0], &[1]).unwrap();
            assert!((before - after).abs() <= 1e-9);
        }
    }
}
