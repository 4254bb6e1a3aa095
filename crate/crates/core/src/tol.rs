//! Global numerical tolerances.

/// Hermiticity check, entrywise max |M - M^H|.
pub const HERMITIAN: f64 = 1e-9;

/// Unitarity check, entrywise max |U^H U - I|.
pub const UNITARY: f64 = 1e-9;

/// Frobenius reconstruction residual of factorizations.
pub const RECONSTRUCTION: f64 = 1e-8;

/// Comparisons between spectra.
pub const SPECTRUM: f64 = 1e-9;

/// Allowed deviation of a supplied state from unit norm.
pub const NORM: f64 = 1e-10;

/// Smallest norm that may still be rescaled to one.
pub const MIN_NORM: f64 = 1e-12;

/// Trace and positivity slack for density matrices.
pub const DENSITY: f64 = 1e-9;

/// Default slack in majorization prefix comparisons.
pub const MAJORIZATION: f64 = 1e-9;

/// Default tolerance of the incommensurability certifier.
pub const CERTIFIER: f64 = 1e-6;

/// A partial-transpose eigenvalue below `-ENTANGLEMENT_WITNESS` certifies
/// entanglement across the cut.
pub const ENTANGLEMENT_WITNESS: f64 = 1e-8;

/// Largest imaginary residue accepted for contractions that must be real.
pub const IMAGINARY_RESIDUE: f64 = 1e-9;
