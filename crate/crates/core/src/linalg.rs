//! Dense complex linear algebra.
//!
//! Matrices here never exceed about 100x100, so everything is row-major
//! `Vec<Complex64>` storage and plain loops. Both factorizations are cyclic
//! Jacobi sweeps with a fixed pivot order, which makes results bit-for-bit
//! reproducible across runs.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

const MAX_SWEEPS: usize = 100;

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Outer product `|a><b|`.
    pub fn outer(a: &[Complex64], b: &[Complex64]) -> Self {
        Self::from_fn(a.len(), b.len(), |r, c| a[r] * b[c].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    /// Matrix product. Panics if the inner dimensions disagree.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matmul: {}x{} times {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    /// Entrywise difference. Panics on shape mismatch.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `M - M^H`; infinite for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev = 0.0_f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    /// Largest entrywise modulus of `U^H U - I`; infinite for non-square input.
    pub fn unitary_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.adjoint()
            .matmul(self)
            .max_abs_diff(&Self::identity(self.rows))
    }

    /// Column Gram matrix `M^H M`.
    pub fn gram(&self) -> Self {
        self.adjoint().matmul(self)
    }

    fn apply_right_rotation(&mut self, p: usize, q: usize, g: &Rotation) {
        for r in 0..self.rows {
            let x = self[(r, p)];
            let y = self[(r, q)];
            self[(r, p)] = x * g.pp + y * g.qp;
            self[(r, q)] = x * g.pq + y * g.qq;
        }
    }

    fn apply_left_rotation_adjoint(&mut self, p: usize, q: usize, g: &Rotation) {
        for c in 0..self.cols {
            let x = self[(p, c)];
            let y = self[(q, c)];
            self[(p, c)] = g.pp.conj() * x + g.qp.conj() * y;
            self[(q, c)] = g.pq.conj() * x + g.qq.conj() * y;
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Real values sorted in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Sorts `values` descending. NaN entries are rejected.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::InvalidArgument("spectrum contains NaN".into()));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Values zero-padded (or left as is) to at least `len` entries.
    pub fn padded(&self, len: usize) -> Vec<f64> {
        let mut v = self.0.clone();
        if v.len() < len {
            v.resize(len, 0.0);
        }
        v
    }

    /// Largest absolute difference after zero-padding both to equal length.
    pub fn max_abs_diff(&self, other: &Spectrum) -> f64 {
        let n = self.len().max(other.len());
        self.padded(n)
            .iter()
            .zip(other.padded(n))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl From<Spectrum> for Vec<f64> {
    fn from(s: Spectrum) -> Self {
        s.0
    }
}

/// `M = V diag(values) V^H` with eigenvalues descending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Spectrum,
    /// Eigenvectors as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

/// Thin singular value decomposition `M = U diag(sigma) V^H`.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows x k` with orthonormal columns, `k = min(rows, cols)`.
    pub u: ComplexMatrix,
    /// Descending, nonnegative.
    pub singular_values: Vec<f64>,
    /// `cols x k` with orthonormal columns.
    pub v: ComplexMatrix,
}

/// 2x2 unitary acting on the coordinate pair `(p, q)`.
struct Rotation {
    pp: Complex64,
    pq: Complex64,
    qp: Complex64,
    qq: Complex64,
}

impl Rotation {
    /// Unitary `G` with `G^H [[a, b], [b*, d]] G` diagonal.
    fn diagonalizing(a: f64, b: Complex64, d: f64) -> Self {
        let mag = b.norm();
        let phase = if mag > 0.0 { b.conj() / mag } else { ONE };
        let theta = (d - a) / (2.0 * mag);
        let t = if theta.is_infinite() {
            0.0
        } else {
            let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
            sign / (theta.abs() + (theta * theta + 1.0).sqrt())
        };
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        // diag(1, e^{-i phi}) times the real Jacobi rotation [[c, s], [-s, c]]
        Self {
            pp: Complex64::new(c, 0.0),
            pq: Complex64::new(s, 0.0),
            qp: phase * -s,
            qq: phase * c,
        }
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// The input is symmetrized as `(M + M^H) / 2` after the Hermiticity check,
/// so the returned eigenvalues are exactly real.
pub fn hermitian_eigendecomposition(m: &ComplexMatrix) -> Result<HermitianEigen> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let deviation = m.hermitian_deviation();
    if deviation > tol::HERMITIAN {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.rows;
    let mut a = ComplexMatrix::from_fn(n, n, |r, c| (m[(r, c)] + m[(c, r)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)].norm_sqr())
            .sum();
        if off.sqrt() <= f64::EPSILON * 1e-3 * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let b = a[(p, q)];
                if b.norm() <= f64::MIN_POSITIVE {
                    continue;
                }
                let g = Rotation::diagonalizing(a[(p, p)].re, b, a[(q, q)].re);
                a.apply_right_rotation(p, q, &g);
                a.apply_left_rotation_adjoint(p, q, &g);
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
                v.apply_right_rotation(p, q, &g);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re).then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen {
        values: Spectrum(values),
        vectors,
    })
}

/// Eigenvalues only, descending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Spectrum> {
    hermitian_eigendecomposition(m).map(|e| e.values)
}

/// Thin SVD by one-sided (Hestenes) Jacobi orthogonalization.
pub fn singular_value_decomposition(m: &ComplexMatrix) -> Svd {
    if m.rows < m.cols {
        let t = tall_svd(&m.adjoint());
        return Svd {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        };
    }
    tall_svd(m)
}

fn tall_svd(m: &ComplexMatrix) -> Svd {
    let (rows, cols) = (m.rows, m.cols);
    let mut w = m.clone();
    let mut v = ComplexMatrix::identity(cols);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = ZERO;
                for r in 0..rows {
                    let x = w[(r, p)];
                    let y = w[(r, q)];
                    alpha += x.norm_sqr();
                    beta += y.norm_sqr();
                    gamma += x.conj() * y;
                }
                if gamma.norm() <= f64::EPSILON * (alpha * beta).sqrt() || gamma.norm() == 0.0 {
                    continue;
                }
                rotated = true;
                let g = Rotation::diagonalizing(alpha, gamma, beta);
                w.apply_right_rotation(p, q, &g);
                v.apply_right_rotation(p, q, &g);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = (0..cols)
        .map(|c| (0..rows).map(|r| w[(r, c)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));
    let w =ComplexMatrix::from_fn(rows, cols, |r, c| w[(r, order[c])]);
    let v = ComplexMatrix::from_fn(cols, cols, |r, c| v[(r, order[c])]);
    let singular_values: Vec<f64> = order.iter().map(|&i| norms[i]).collect();

    let cutoff = singular_values.first().copied().unwrap_or(0.0).max(1.0) * 1e-13;
    let mut u = ComplexMatrix::zeros(rows, cols);
    let mut filled = Vec::with_capacity(cols);
    for (c, &s) in singular_values.iter().enumerate() {
        if s > cutoff {
            for r in 0..rows {
                u[(r, c)] = w[(r, c)] / s;
            }
            filled.push(c);
        }
    }
    complete_orthonormal_columns(&mut u, &filled);
    Svd {
        u,
        singular_values,
        v,
    }
}

/// Fills every column of `u` not listed in `filled` with unit vectors
/// orthogonal to all other columns, using Gram-Schmidt on standard basis
/// vectors.
fn complete_orthonormal_columns(u: &mut ComplexMatrix, filled: &[usize]) {
    let rows = u.rows;
    let mut basis: Vec<Vec<Complex64>> = filled.iter().map(|&c| u.column(c)).collect();
    let missing: Vec<usize> = (0..u.cols).filter(|c| !filled.contains(c)).collect();
    let mut candidate = 0;
    for c in missing {
        loop {
            assert!(candidate < rows, "orthonormal completion ran out of candidates");
            let mut x = vec![ZERO; rows];
            x[candidate] = ONE;
            candidate += 1;
            for _ in 0..2 {
                for b in &basis {
                    let proj: Complex64 = b.iter().zip(&x).map(|(bi, xi)| bi.conj() * xi).sum();
                    for (xi, bi) in x.iter_mut().zip(b) {
                        *xi -= proj * bi;
                    }
                }
            }
            let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 0.5 {
                for (r, xi) in x.iter().enumerate() {
                    u[(r, c)] = xi / norm;
                }
                basis.push(u.column(c));
                break;
            }
        }
    }
}

/// Kronecker product `A (x) B`.
pub fn kronecker(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.rows * b.rows, a.cols * b.cols, |r, c| {
        a[(r / b.rows, c / b.cols)] * b[(r % b.rows, c % b.cols)]
    })
}

/// Transposes the right tensor factor of a bipartite operator:
/// `out[(i,k),(j,l)] = rho[(i,l),(j,k)]`.
pub fn partial_transpose(rho: &ComplexMatrix, dim_left: usize, dim_right: usize) -> Result<ComplexMatrix> {
    let n = dim_left * dim_right;
    if !rho.is_square() || rho.rows != n {
        return Err(Error::ShapeMismatch(format!(
            "partial transpose over {dim_left}x{dim_right} needs a {n}x{n} matrix, got {}x{}",
            rho.rows, rho.cols
        )));
    }
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let (i, k) = (r / dim_right, r % dim_right);
        let (j, l) = (c / dim_right, c % dim_right);
        rho[(i * dim_right + l, j * dim_right + k)]
    }))
}
