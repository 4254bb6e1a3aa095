//! Multipartite pure states.
//!
//! Amplitudes are stored in lexicographic basis order with party 0 as the
//! most significant digit, so for dims `[3, 3, 3]` the ket `|012>` lives at
//! index `0*9 + 1*3 + 2 = 5`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, Spectrum};
use crate::tol;

/// Normalized pure state of `k >= 1` parties with local dimensions `>= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Builds a state from amplitudes in canonical order.
    ///
    /// With `normalize` set, any vector of norm above `1e-12` is rescaled;
    /// otherwise the norm must already be one within `1e-10`.
    pub fn new(dims: Vec<usize>, amps: Vec<Complex64>, normalize: bool) -> Result<Self> {
        validate_dims(&dims)?;
        let total: usize = dims.iter().product();
        if amps.len() != total {
            return Err(Error::ShapeMismatch(format!(
                "dims {dims:?} need {total} amplitudes, got {}",
                amps.len()
            )));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("amplitudes must be finite".into()));
        }
        let norm = vector_norm(&amps);
        if normalize {
            if norm <= tol::MIN_NORM {
                return Err(Error::ZeroVector);
            }
            let amps = amps.into_iter().map(|z| z / norm).collect();
            Ok(Self { dims, amps })
        } else if (norm - 1.0).abs() > tol::NORM {
            if norm == 0.0 {
                Err(Error::ZeroVector)
            } else {
                Err(Error::NotNormalized { norm })
            }
        } else {
            Ok(Self { dims, amps })
        }
    }

    /// Product basis state `|digits>`.
    pub fn basis(dims: Vec<usize>, digits: &[usize]) -> Result<Self> {
        validate_dims(&dims)?;
        if digits.len() != dims.len() || digits.iter().zip(&dims).any(|(d, n)| d >= n) {
            return Err(Error::ShapeMismatch(format!(
                "basis label {digits:?} does not fit dims {dims:?}"
            )));
        }
        let total: usize = dims.iter().product();
        let mut amps = vec![Complex64::new(0.0, 0.0); total];
        amps[encode_index(&dims, digits)] = Complex64::new(1.0, 0.0);
        Ok(Self { dims, amps })
    }

    pub(crate) fn from_parts_unchecked(dims: Vec<usize>, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), dims.iter().product::<usize>());
        Self { dims, amps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_parties(&self) -> usize {
        self.dims.len()
    }

    /// Total Hilbert space dimension.
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Amplitude of the basis ket with the given per-party digits.
    pub fn amplitude(&self, digits: &[usize]) -> Complex64 {
        self.amps[encode_index(&self.dims, digits)]
    }

    pub fn norm(&self) -> f64 {
        vector_norm(&self.amps)
    }

    /// `self (x) other`, parties of `other` appended after those of `self`.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Self { dims, amps }
    }

    /// Reorders parties so that new party `i` is old party `order[i]`.
    pub fn permute_parties(&self, order: &[usize]) -> Result<PureState> {
        check_permutation(order, self.num_parties())?;
        let new_dims: Vec<usize> = order.iter().map(|&p| self.dims[p]).collect();
        let new_strides = strides(&new_dims);
        // stride in the new layout of each old party
        let mut old_to_new_stride = vec![0; self.num_parties()];
        for (new_pos, &old) in order.iter().enumerate() {
            old_to_new_stride[old] = new_strides[new_pos];
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim()];
        let mut digits = vec![0usize; self.num_parties()];
        for &a in &self.amps {
            let idx: usize = digits.iter().zip(&old_to_new_stride).map(|(d, s)| d * s).sum();
            amps[idx] = a;
            increment(&mut digits, &self.dims);
        }
        Ok(Self {
            dims: new_dims,
            amps,
        })
    }

    /// Merges parties into ordered blocks.
    ///
    /// `grouping[b]` lists the old parties forming new party `b`, most
    /// significant first. Every party must appear exactly once.
    pub fn regroup_parties(&self, grouping: &[Vec<usize>]) -> Result<PureState> {
        if grouping.iter().any(Vec::is_empty) {
            return Err(Error::InvalidParties("grouping contains an empty block".into()));
        }
        let order: Vec<usize> = grouping.iter().flatten().copied().collect();
        check_permutation(&order, self.num_parties())
            .map_err(|_| Error::InvalidParties(format!(
                "grouping {grouping:?} is not a partition of parties 0..{}",
                self.num_parties()
            )))?;
        let permuted = self.permute_parties(&order)?;
        let dims = grouping
            .iter()
            .map(|block| block.iter().map(|&p| self.dims[p]).product())
            .collect();
        Ok(Self {
            dims,
            amps: permuted.amps,
        })
    }

    /// Applies a single-party unitary.
    pub fn apply_local_unitary(&self, u: &LocalUnitary) -> Result<PureState> {
        let party = u.party;
        if party >= self.num_parties() {
            return Err(Error::InvalidParties(format!(
                "party {party} out of range for a {}-party state",
                self.num_parties()
            )));
        }
        let d = self.dims[party];
        if u.matrix.rows() != d {
            return Err(Error::ShapeMismatch(format!(
                "unitary of size {} applied to party {party} of dimension {d}",
                u.matrix.rows()
            )));
        }
        let stride: usize = self.dims[party + 1..].iter().product();
        let block = stride * d;
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim()];
        for outer in (0..self.dim()).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for r in 0..d {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for c in 0..d {
                        acc += u.matrix[(r, c)] * self.amps[base + c * stride];
                    }
                    amps[base + r * stride] = acc;
                }
            }
        }
        Ok(Self {
            dims: self.dims.clone(),
            amps,
        })
    }

    /// Rows indexed by the `left` parties (in the given order), columns by
    /// the remaining parties in ascending order.
    pub(crate) fn bipartite_matrix(&self, left: &[usize]) -> Result<(ComplexMatrix, Vec<usize>)> {
        validate_subset(left, self.num_parties())?;
        let right: Vec<usize> = (0..self.num_parties()).filter(|p| !left.contains(p)).collect();
        let order: Vec<usize> = left.iter().chain(&right).copied().collect();
        let permuted = self.permute_parties(&order)?;
        let rows: usize = left.iter().map(|&p| self.dims[p]).product();
        let cols = self.dim() / rows;
        let m = ComplexMatrix::new(rows, cols, permuted.amps)?;
        Ok((m, right))
    }

    /// Reduced density matrix on `keep`, traced over the other parties.
    ///
    /// The kept parties are ordered ascending in the result regardless of
    /// the order they are listed in.
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidParties("cannot reduce to an empty set of parties".into()));
        }
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        self.reduce_ordered(&keep)
    }

    /// Like [`PureState::reduce`] but keeps the parties in the listed order.
    pub fn reduce_ordered(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidParties("cannot reduce to an empty set of parties".into()));
        }
        validate_subset(keep, self.num_parties())?;
        let rows: usize = keep.iter().map(|&p| self.dims[p]).product();
        if keep.len() == self.num_parties() {
            let permuted = self.permute_parties(keep)?;
            let rho = ComplexMatrix::outer(&permuted.amps, &permuted.amps);
            return Ok(DensityMatrix::from_matrix_unchecked(rho));
        }
        let (m, _) = self.bipartite_matrix(keep)?;
        debug_assert_eq!(m.rows(), rows);
        Ok(DensityMatrix::from_matrix_unchecked(m.matmul(&m.adjoint())))
    }

    /// Spectrum of every single-party reduction, descending.
    pub fn local_spectra(&self) -> Vec<Spectrum> {
        (0..self.num_parties())
            .map(|p| {
                self.reduce(&[p])
                    .expect("single party is a valid subset")
                    .spectrum()
            })
            .collect()
    }

    /// Inner product `<self|other>`.
    pub fn overlap(&self, other: &PureState) -> Result<Complex64> {
        if self.dims != other.dims {
            return Err(Error::ShapeMismatch(format!(
                "overlap of states with dims {:?} and {:?}",
                self.dims, other.dims
            )));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// Permutes basis kets: the amplitude of `|digits>` moves to
    /// `|f(digits)>`. `f` must be a bijection on basis labels.
    pub(crate) fn map_basis(&self, mut f: impl FnMut(&mut [usize])) -> PureState {
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim()];
        let mut digits = vec![0usize; self.num_parties()];
        let mut image = digits.clone();
        for &a in &self.amps {
            image.copy_from_slice(&digits);
            f(&mut image);
            amps[encode_index(&self.dims, &image)] += a;
            increment(&mut digits, &self.dims);
        }
        Self {
            dims: self.dims.clone(),
            amps,
        }
    }
}

/// Kronecker product of a nonempty list of states.
pub fn tensor_states(states: &[PureState]) -> Result<PureState> {
    let (first, rest) = states
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("tensor product of an empty list".into()))?;
    Ok(rest.iter().fold(first.clone(), |acc, s| acc.tensor(s)))
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity (all within `1e-9`).
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > tol::HERMITIAN {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol::DENSITY {
            return Err(Error::InvalidDensityMatrix(format!("has trace {trace}")));
        }
        let spectrum = linalg::hermitian_eigenvalues(&matrix)?;
        let min = spectrum.values().last().copied().unwrap_or(0.0);
        if min < -tol::DENSITY {
            return Err(Error::InvalidDensityMatrix(format!(
                "has negative eigenvalue {min}"
            )));
        }
        Ok(Self { matrix })
    }

    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.hermitian_deviation() <= tol::HERMITIAN);
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn spectrum(&self) -> Spectrum {
        linalg::hermitian_eigenvalues(&self.matrix).expect("density matrices are Hermitian")
    }

    /// `tr(rho^2)`, computed entrywise as the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.matrix.data().iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Unitary acting on one party.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitary {
    pub party: usize,
    matrix: ComplexMatrix,
}

impl LocalUnitary {
    pub fn new(party: usize, matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let deviation = matrix.unitary_deviation();
        if deviation > tol::UNITARY {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { party, matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

fn vector_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn validate_dims(dims: &[usize]) -> Result<()> {
    if dims.is_empty() {
        return Err(Error::InvalidArgument("a state needs at least one party".into()));
    }
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::InvalidDimension(d));
    }
    Ok(())
}

fn validate_subset(parties: &[usize], n: usize) -> Result<()> {
    for (i, &p) in parties.iter().enumerate() {
        if p >= n {
            return Err(Error::InvalidParties(format!(
                "party {p} out of range for a {n}-party state"
            )));
        }
        if parties[..i].contains(&p) {
            return Err(Error::InvalidParties(format!("party {p} listed twice")));
        }
    }
    Ok(())
}

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::InvalidParties(format!(
            "expected a permutation of {n} parties, got {order:?}"
        )));
    }
    validate_subset(order, n)
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for p in (0..dims.len().saturating_sub(1)).rev() {
        s[p] = s[p + 1] * dims[p + 1];
    }
    s
}

fn encode_index(dims: &[usize], digits: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&d, &n)| acc * n + d)
}

/// Advances `digits` to the next label in lexicographic order (wrapping).
fn increment(digits: &mut [usize], dims: &[usize]) {
    for p in (0..digits.len()).rev() {
        digits[p] += 1;
        if digits[p] < dims[p] {
            return;
        }
        digits[p] = 0;
    }
}
