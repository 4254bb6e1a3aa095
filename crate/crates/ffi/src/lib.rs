//! C ABI over `multient`.
//!
//! States cross the boundary as opaque [`MultientState`] handles created by
//! one of the constructors and released with [`multient_state_free`].
//! Every function returns a [`MultientStatus`]; on failure the message is
//! available from [`multient_last_error_message`] on the same thread.
//!
//! Array outputs follow one pattern: the caller passes a buffer and its
//! capacity, the required length is always written to `out_len`, and
//! `MULTIENT_STATUS_BUFFER_TOO_SMALL` is returned when the buffer is short.
//! Complex arrays are interleaved `re, im` doubles.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use multient::secret_sharing::{self, DecodePair, SecretQutrit};
use multient::{catalog, invariants, schmidt, Complex64, Error, PureState, VerdictKind, WitnessQuantity};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultientStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ShapeMismatch = 3,
    NotNormalized = 4,
    NotQutrit = 5,
    UnknownState = 6,
    BufferTooSmall = 7,
    NumericalError = 8,
    Panic = 9,
}

/// Opaque pure-state handle.
pub struct MultientState {
    inner: PureState,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultientInvariants {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
    pub i5: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultientVerdictKind {
    NotLocallyIsospectral = 0,
    Incommensurate = 1,
    Inconclusive = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultientWitnessQuantity {
    I2 = 0,
    I3 = 1,
    I4 = 2,
    I5 = 3,
    MinPartialTranspose = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultientWitness {
    pub quantity: MultientWitnessQuantity,
    /// Traced party for `MinPartialTranspose`, otherwise -1.
    pub traced: i32,
    pub first: f64,
    pub second: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultientDecodePair {
    Ab = 0,
    Ac = 1,
    Bc = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultientCheatRecord {
    pub b: u8,
    pub pair: MultientDecodePair,
    pub recovered: u8,
    /// -1 when the pair does not include the cheater.
    pub bob_inference: i32,
}

struct Failure {
    status: MultientStatus,
    message: String,
}

impl Failure {
    fn new(status: MultientStatus, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::ShapeMismatch(_) | Error::PartyCount { .. } | Error::SumMismatch { .. } => {
                MultientStatus::ShapeMismatch
            }
            Error::NotNormalized { .. } | Error::ZeroVector => MultientStatus::NotNormalized,
            Error::NotQutrit { .. } => MultientStatus::NotQutrit,
            Error::UnknownState(_) => MultientStatus::UnknownState,
            Error::NotHermitian { .. } | Error::NotUnitary { .. } | Error::InvalidDensityMatrix(_) => {
                MultientStatus::NumericalError
            }
            _ => MultientStatus::InvalidArgument,
        };
        Self::new(status, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MultientStatus {
    let failure = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            return MultientStatus::Ok;
        }
        Ok(Err(failure)) => failure,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            Failure::new(MultientStatus::Panic, format!("panic: {message}"))
        }
    };
    set_last_error(&failure.message);
    failure.status
}

fn null(what: &str) -> Failure {
    Failure::new(MultientStatus::NullPointer, format!("{what} is null"))
}

unsafe fn state_ref<'a>(p: *const MultientState, what: &str) -> Result<&'a PureState, Failure> {
    p.as_ref().map(|s| &s.inner).ok_or_else(|| null(what))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null(what))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn put_handle(out: *mut *mut MultientState, state: PureState) -> Result<(), Failure> {
    let out = out_ref(out, "out")?;
    *out = Box::into_raw(Box::new(MultientState { inner: state }));
    Ok(())
}

unsafe fn copy_out<T: Copy>(values: &[T], out: *mut T, capacity: usize, out_len: *mut usize) -> Result<(), Failure> {
    *out_ref(out_len, "out_len")? = values.len();
    if values.len() > capacity {
        return Err(Failure::new(
            MultientStatus::BufferTooSmall,
            format!("buffer holds {capacity} items, {} needed", values.len()),
        ));
    }
    if !values.is_empty() {
        if out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    }
    Ok(())
}

fn interleave(zs: &[Complex64]) -> Vec<f64> {
    zs.iter().flat_map(|z| [z.re, z.im]).collect()
}

fn to_pair(p: MultientDecodePair) -> DecodePair {
    match p {
        MultientDecodePair::Ab => DecodePair::AB,
        MultientDecodePair::Ac => DecodePair::AC,
        MultientDecodePair::Bc => DecodePair::BC,
    }
}

fn from_pair(p: DecodePair) -> MultientDecodePair {
    match p {
        DecodePair::AB => MultientDecodePair::Ab,
        DecodePair::AC => MultientDecodePair::Ac,
        DecodePair::BC => MultientDecodePair::Bc,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn multient_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn multient_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates a state from party dimensions and interleaved amplitudes
/// (`2 * prod(dims)` doubles). Without `normalize` the amplitudes must
/// already have unit norm.
///
/// # Safety
/// `dims` must point to `num_parties` values and `amps` to `num_doubles`
/// doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn multient_state_new(
    dims: *const usize,
    num_parties: usize,
    amps: *const f64,
    num_doubles: usize,
    normalize: bool,
    out: *mut *mut MultientState,
) -> MultientStatus {
    guard(|| {
        let dims = slice(dims, num_parties, "dims")?.to_vec();
        let raw = slice(amps, num_doubles, "amps")?;
        if raw.len() % 2 != 0 {
            return Err(Failure::new(
                MultientStatus::InvalidArgument,
                "amplitude buffer length must be even",
            ));
        }
        let amps = raw.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect();
        put_handle(out, PureState::new(dims, amps, normalize)?)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `state` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn multient_state_free(state: *mut MultientState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Builds a named catalog state.
///
/// # Safety
/// `name` must be a NUL-terminated string, `params` must point to
/// `num_params` doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn multient_catalog_build(
    name: *const c_char,
    params: *const f64,
    num_params: usize,
    out: *mut *mut MultientState,
) -> MultientStatus {
    guard(|| {
        if name.is_null() {
            return Err(null("name"));
        }
        let name = CStr::from_ptr(name)
            .to_str()
            .map_err(|_| Failure::new(MultientStatus::InvalidArgument, "name is not UTF-8"))?;
        let params = slice(params, num_params, "params")?;
        put_handle(out, catalog::build(name, params)?)
    })
}

/// # Safety
/// `state` must be a live handle; the output pointers must be writable for
/// `capacity` items.
#[no_mangle]
pub unsafe extern "C" fn multient_state_dims(
    state: *const MultientState,
    out: *mut usize,
    capacity: usize,
    out_len: *mut usize,
) -> MultientStatus {
    guard(|| copy_out(state_ref(state, "state")?.dims(), out, capacity, out_len))
}

/// Interleaved amplitudes in lexicographic basis order.
///
/// # Safety
/// As [`multient_state_dims`]; `capacity` counts doubles.
#[no_mangle]
pub unsafe extern "C" fn multient_state_amplitudes(
    state: *const MultientState,
    out: *mut f64,
    capacity: usize,
    out_len: *mut usize,
) -> MultientStatus {
    guard(|| {
        let amps = interleave(state_ref(state, "state")?.amplitudes());
        copy_out(&amps, out, capacity, out_len)
    })
}

/// `<a|b>`
///
/// # Safety
/// `a` and `b` must be live handles; `out_re` and `out_im` writable.
#[no_mangle]
pub unsafe extern "C" fn multient_state_overlap(
    a: *const MultientState,
    b: *const MultientState,
    out_re: *mut f64,
    out_im: *mut f64,
) -> MultientStatus {
    guard(|| {
        let z = state_ref(a, "a")?.overlap(state_ref(b, "b")?)?;
        *out_ref(out_re, "out_re")? = z.re;
        *out_ref(out_im, "out_im")? = z.im;
        Ok(())
    })
}

/// Eigenvalues of one party's reduced density matrix, descending.
///
/// # Safety
/// As [`multient_state_dims`].
#[no_mangle]
pub unsafe extern "C" fn multient_local_spectrum(
    state: *const MultientState,
    party: usize,
    out: *mut f64,
    capacity: usize,
    out_len: *mut usize,
) -> MultientStatus {
    guard(|| {
        let spectrum = state_ref(state, "state")?.reduce(&[party])?.spectrum();
        copy_out(spectrum.values(), out, capacity, out_len)
    })
}

/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn multient_invariants(
    state: *const MultientState,
    out: *mut MultientInvariants,
) -> MultientStatus {
    guard(|| {
        let inv = invariants::compute_invariants(state_ref(state, "state")?)?;
        *out_ref(out, "out")? = MultientInvariants {
            i1: inv.i1,
            i2: inv.i2,
            i3: inv.i3,
            i4: inv.i4,
            i5: inv.i5,
        };
        Ok(())
    })
}

/// Smallest partial-transpose eigenvalue of the two-party reduction left
/// after tracing out party `traced` of a three-party state.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn multient_min_pt_eigenvalue(
    state: *const MultientState,
    traced: usize,
    out: *mut f64,
) -> MultientStatus {
    guard(|| {
        let state = state_ref(state, "state")?;
        if state.num_parties() != 3 || traced > 2 {
            return Err(Failure::new(
                MultientStatus::InvalidArgument,
                format!("traced party {traced} invalid for a {}-party state", state.num_parties()),
            ));
        }
        let kept: Vec<usize> = (0..3).filter(|&p| p != traced).collect();
        *out_ref(out, "out")? = schmidt::reduced_min_pt_eigenvalue(state, &kept[..1], &kept[1..])?;
        Ok(())
    })
}

/// Runs the incommensurability certifier. Witnesses are copied into
/// `witnesses` (at most 7 exist).
///
/// # Safety
/// `a` and `b` must be live handles; the output pointers must be writable,
/// `witnesses` for `capacity` items.
#[no_mangle]
pub unsafe extern "C" fn multient_certify(
    a: *const MultientState,
    b: *const MultientState,
    tol: f64,
    out_kind: *mut MultientVerdictKind,
    out_max_spectral_difference: *mut f64,
    witnesses: *mut MultientWitness,
    capacity: usize,
    out_len: *mut usize,
) -> MultientStatus {
    guard(|| {
        let verdict = invariants::certify_incommensurate(state_ref(a, "a")?, state_ref(b, "b")?, tol)?;
        *out_ref(out_kind, "out_kind")? = match verdict.kind {
            VerdictKind::NotLocallyIsospectral => MultientVerdictKind::NotLocallyIsospectral,
            VerdictKind::Incommensurate => MultientVerdictKind::Incommensurate,
            VerdictKind::Inconclusive => MultientVerdictKind::Inconclusive,
        };
        *out_ref(out_max_spectral_difference, "out_max_spectral_difference")? = verdict.max_spectral_difference;
        let rows: Vec<MultientWitness> = verdict
            .witnesses
            .iter()
            .map(|w| {
                let (quantity, traced) = match w.quantity {
                    WitnessQuantity::I2 => (MultientWitnessQuantity::I2, -1),
                    WitnessQuantity::I3 => (MultientWitnessQuantity::I3, -1),
                    WitnessQuantity::I4 => (MultientWitnessQuantity::I4, -1),
                    WitnessQuantity::I5 => (MultientWitnessQuantity::I5, -1),
                    WitnessQuantity::MinPartialTranspose { traced } => {
                        (MultientWitnessQuantity::MinPartialTranspose, traced as i32)
                    }
                };
                MultientWitness {
                    quantity,
                    traced,
                    first: w.first,
                    second: w.second,
                }
            })
            .collect();
        copy_out(&rows, witnesses, capacity, out_len)
    })
}

/// Encodes the normalized qutrit secret `a|0> + b|1> + c|2>` given as six
/// interleaved doubles.
///
/// # Safety
/// `secret` must point to 6 doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn multient_qss_encode(secret: *const f64, out: *mut *mut MultientState) -> MultientStatus {
    guard(|| {
        let s = slice(secret, 6, "secret")?;
        let z = |i: usize| Complex64::new(s[i], s[i + 1]);
        put_handle(out, secret_sharing::qss_encode(&SecretQutrit::new(z(0), z(2), z(4))?)?)
    })
}

/// Decodes with `pair`. Writes the reconstructed secret as six interleaved
/// doubles, the weight of the factored secret register, and the index of
/// that register. `out_post_state` may be null; otherwise it receives a new
/// handle to the full post-decoding state.
///
/// # Safety
/// `state` must be a live handle, `out_secret` must hold 6 doubles, and the
/// other non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn multient_qss_decode(
    state: *const MultientState,
    pair: MultientDecodePair,
    out_secret: *mut f64,
    out_fidelity: *mut f64,
    out_secret_register: *mut usize,
    out_post_state: *mut *mut MultientState,
) -> MultientStatus {
    guard(|| {
        let r = secret_sharing::qss_decode(state_ref(state, "state")?, to_pair(pair))?;
        if out_secret.is_null() {
            return Err(null("out_secret"));
        }
        let secret = interleave(&r.reconstructed.to_array());
        ptr::copy_nonoverlapping(secret.as_ptr(), out_secret, 6);
        *out_ref(out_fidelity, "out_fidelity")? = r.fidelity;
        *out_ref(out_secret_register, "out_secret_register")? = r.secret_register;
        if !out_post_state.is_null() {
            put_handle(out_post_state, r.post_state)?;
        }
        Ok(())
    })
}

/// Applies the cyclic shift `|j> -> |j+1 mod 3>` to one qutrit party.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn multient_cheat_shift(
    state: *const MultientState,
    party: usize,
    out: *mut *mut MultientState,
) -> MultientStatus {
    guard(|| put_handle(out, secret_sharing::cheat_shift(state_ref(state, "state")?, party)?))
}

/// `|..c..t..> -> |..c..(t + times*c mod 3)..>` with `times` 1 or 2.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn multient_mod3_adder(
    state: *const MultientState,
    control: usize,
    target: usize,
    times: u8,
    out: *mut *mut MultientState,
) -> MultientStatus {
    guard(|| {
        put_handle(
            out,
            secret_sharing::mod3_adder(state_ref(state, "state")?, control, target, times)?,
        )
    })
}

/// Lower bound on the number of local-unitary invariant parameters of a
/// `k`-qubit pure state.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn multient_hidden_param_lower_bound(k: u32, out: *mut i64) -> MultientStatus {
    guard(|| {
        *out_ref(out, "out")? = invariants::hidden_param_lower_bound(k)?;
        Ok(())
    })
}

/// Invariant parameters not visible to any single party's spectrum.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn multient_hidden_from_single_party(k: u32, out: *mut i64) -> MultientStatus {
    guard(|| {
        *out_ref(out, "out")? = invariants::hidden_from_single_party(k)?;
        Ok(())
    })
}

/// The nine-row cheating table, ordered by secret then pair.
///
/// # Safety
/// `out` must be writable for `capacity` records and `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn multient_cheat_demo(
    out: *mut MultientCheatRecord,
    capacity: usize,
    out_len: *mut usize,
) -> MultientStatus {
    guard(|| {
        let rows: Vec<MultientCheatRecord> = secret_sharing::run_cheat_demo()?
            .into_iter()
            .map(|r| MultientCheatRecord {
                b: r.b,
                pair: from_pair(r.pair),
                recovered: r.recovered,
                bob_inference: r.bob_inference.map_or(-1, i32::from),
            })
            .collect();
        copy_out(&rows, out, capacity, out_len)
    })
}
