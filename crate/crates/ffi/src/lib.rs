//! C ABI over `equiclone`.
//!
//! Every fallible call returns an [`EqcStatus`] and writes results through out
//! pointers. States and density matrices cross the boundary as opaque handles
//! that must be released with the matching `*_free` function. The message for
//! the most recent failure on the calling thread is available from
//! [`eqc_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use equiclone::analysis;
use equiclone::cloners::{self, Lambda};
use equiclone::optimality;
use equiclone::{DensityMatrix, Equator, EquatorialState, Error, Ket};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    Numerical = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqcEquator {
    Xz = 0,
    Xy = 1,
}

impl From<EqcEquator> for Equator {
    fn from(e: EqcEquator) -> Self {
        match e {
            EqcEquator::Xz => Equator::Xz,
            EqcEquator::Xy => Equator::Xy,
        }
    }
}

/// Opaque pure state.
pub struct EqcKet(Ket);

/// Opaque density matrix.
pub struct EqcDensity(DensityMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> EqcStatus {
    match e {
        Error::QubitOutOfRange { .. } | Error::OutOfRange { .. } => EqcStatus::OutOfRange,
        Error::NotHermitian(_)
        | Error::NotPositive(_)
        | Error::NoConvergence(_)
        | Error::ZeroNorm => EqcStatus::Numerical,
        _ => EqcStatus::InvalidArgument,
    }
}

struct Failure(EqcStatus, String);

type FfiResult = Result<(), Failure>;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> FfiResult + UnwindSafe) -> EqcStatus {
    match catch_unwind(f) {
        Ok(Ok(())) => EqcStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            EqcStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(EqcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> FfiResult {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn out_slice<'a>(out: *mut f64, len: usize, need: usize) -> Result<&'a mut [f64], Failure> {
    if out.is_null() {
        return Err(null("output buffer"));
    }
    if len < need {
        return Err(Failure(
            EqcStatus::BufferTooSmall,
            format!("buffer holds {len} values, {need} needed"),
        ));
    }
    Ok(std::slice::from_raw_parts_mut(out, need))
}

unsafe fn ket_ref<'a>(k: *const EqcKet) -> Result<&'a Ket, Failure> {
    k.as_ref().map(|k| &k.0).ok_or_else(|| null("ket"))
}

unsafe fn density_ref<'a>(d: *const EqcDensity) -> Result<&'a DensityMatrix, Failure> {
    d.as_ref().map(|d| &d.0).ok_or_else(|| null("density"))
}

fn boxed_ket(k: Ket) -> *mut EqcKet {
    Box::into_raw(Box::new(EqcKet(k)))
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length without the NUL, or
/// 0 when there is no error.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn eqc_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// `3 − 2√2`, the λ of the optimal one-to-two cloner.
#[no_mangle]
pub extern "C" fn eqc_optimal_lambda() -> f64 {
    Lambda::optimal().value()
}

/// Single-qubit state on `equator` at `angle`.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn eqc_equatorial_ket(
    equator: EqcEquator,
    angle: f64,
    out: *mut *mut EqcKet,
) -> EqcStatus {
    guard(|| {
        if !angle.is_finite() {
            return Err(Failure(
                EqcStatus::InvalidArgument,
                "angle is not finite".into(),
            ));
        }
        let k = EquatorialState::new(equator.into(), angle).ket();
        write(out, boxed_ket(k), "out")
    })
}

/// Three-qubit output of the one-to-two cloner with parameter `lambda`
/// (copies in qubits 0 and 1, ancilla in qubit 2).
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn eqc_clone_1to2(
    equator: EqcEquator,
    lambda: f64,
    angle: f64,
    out: *mut *mut EqcKet,
) -> EqcStatus {
    guard(|| {
        let l = Lambda::new(lambda)?;
        let state = EquatorialState::new(equator.into(), angle);
        let k = match equator {
            EqcEquator::Xz => cloners::clone_1to2_xz(l, &state)?,
            EqcEquator::Xy => cloners::clone_1to2_xy(l, &state)?,
        };
        write(out, boxed_ket(k), "out")
    })
}

/// Three-qubit output of the triplicator on `equator`.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn eqc_triplicate(
    equator: EqcEquator,
    angle: f64,
    out: *mut *mut EqcKet,
) -> EqcStatus {
    guard(|| {
        let k = cloners::triplicate(equator.into(), &EquatorialState::new(equator.into(), angle))?;
        write(out, boxed_ket(k), "out")
    })
}

/// Number of qubits, or 0 for a null handle.
///
/// # Safety
/// `ket` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eqc_ket_n_qubits(ket: *const EqcKet) -> usize {
    ket.as_ref().map_or(0, |k| k.0.n_qubits())
}

/// Writes the `2^n` amplitudes as separate real and imaginary arrays.
///
/// # Safety
/// `ket` must be a live handle; `re` and `im` must each hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn eqc_ket_amplitudes(
    ket: *const EqcKet,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> EqcStatus {
    guard(|| {
        let k = ket_ref(ket)?;
        let amps = k.amplitudes();
        let re = out_slice(re, len, amps.len())?;
        let im = out_slice(im, len, amps.len())?;
        for (i, a) in amps.iter().enumerate() {
            re[i] = a.re;
            im[i] = a.im;
        }
        Ok(())
    })
}

/// Reduced density matrix on the qubits listed in `keep`, in that order.
///
/// # Safety
/// `ket` must be a live handle, `keep` must hold `n_keep` entries, and `out`
/// must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn eqc_ket_reduce(
    ket: *const EqcKet,
    keep: *const usize,
    n_keep: usize,
    out: *mut *mut EqcDensity,
) -> EqcStatus {
    guard(|| {
        let k = ket_ref(ket)?;
        if keep.is_null() {
            return Err(null("keep"));
        }
        let keep = std::slice::from_raw_parts(keep, n_keep);
        let rho = k.reduced_density(keep)?;
        write(out, Box::into_raw(Box::new(EqcDensity(rho))), "out")
    })
}

/// Matrix dimension, or 0 for a null handle.
///
/// # Safety
/// `rho` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eqc_density_dim(rho: *const EqcDensity) -> usize {
    rho.as_ref().map_or(0, |d| d.0.dim())
}

/// Entry `(i, j)`.
///
/// # Safety
/// `rho` must be a live handle; `re` and `im` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eqc_density_entry(
    rho: *const EqcDensity,
    i: usize,
    j: usize,
    re: *mut f64,
    im: *mut f64,
) -> EqcStatus {
    guard(|| {
        let d = density_ref(rho)?;
        if i >= d.dim() || j >= d.dim() {
            return Err(Failure(
                EqcStatus::OutOfRange,
                format!("entry ({i}, {j}) outside dimension {}", d.dim()),
            ));
        }
        let v = d.entry(i, j);
        write(re, v.re, "re")?;
        write(im, v.im, "im")
    })
}

/// Ascending eigenvalues.
///
/// # Safety
/// `rho` must be a live handle; `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn eqc_density_eigenvalues(
    rho: *const EqcDensity,
    out: *mut f64,
    len: usize,
) -> EqcStatus {
    guard(|| {
        let d = density_ref(rho)?;
        let ev = d.eigenvalues()?;
        out_slice(out, len, ev.len())?.copy_from_slice(&ev);
        Ok(())
    })
}

/// Ascending eigenvalues of the partial transpose on the second qubit of a
/// two-qubit density matrix.
///
/// # Safety
/// `rho` must be a live handle; `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn eqc_density_pt_eigenvalues(
    rho: *const EqcDensity,
    out: *mut f64,
    len: usize,
) -> EqcStatus {
    guard(|| {
        let d = density_ref(rho)?;
        let ev = d
            .partial_transpose(equiclone::Subsystem::Second)?
            .eigenvalues()?;
        out_slice(out, len, ev.len())?.copy_from_slice(&ev);
        Ok(())
    })
}

/// `⟨ψ|ρ|ψ⟩`.
///
/// # Safety
/// Both handles must be live; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn eqc_fidelity_pure(
    ket: *const EqcKet,
    rho: *const EqcDensity,
    out: *mut f64,
) -> EqcStatus {
    guard(|| {
        let f = equiclone::fidelity_pure(ket_ref(ket)?, density_ref(rho)?)?;
        write(out, f, "out")
    })
}

/// Closed-form fidelity of the `n → m` cloner (`n = 1` gives the optimum).
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn eqc_fidelity_closed(n: usize, m: usize, out: *mut f64) -> EqcStatus {
    guard(|| write(out, analysis::fidelity_closed_ntom(n, m)?, "out"))
}

/// Large-`m` limit of [`eqc_fidelity_closed`].
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn eqc_fidelity_asymptotic(n: usize, out: *mut f64) -> EqcStatus {
    guard(|| write(out, analysis::fidelity_asymptotic(n)?, "out"))
}

/// Mean simulated single-copy fidelity of the `n → m` cloner over `grid`
/// phases.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn eqc_simulate_fidelity(
    n: usize,
    m: usize,
    grid: usize,
    out: *mut f64,
) -> EqcStatus {
    guard(|| {
        write(
            out,
            analysis::simulate_fidelity(n, m, grid)?.simulated,
            "out",
        )
    })
}

/// `2 λ_max(A)` for one-to-`m` cloning.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn eqc_optimal_fidelity_via_a(m: usize, out: *mut f64) -> EqcStatus {
    guard(|| write(out, optimality::optimal_fidelity_via_a(m)?, "out"))
}

/// Closed-form partial-transpose spectrum of the two copies, ascending, into
/// `out[0..4]`.
///
/// # Safety
/// `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn eqc_pt_spectrum(lambda: f64, out: *mut f64, len: usize) -> EqcStatus {
    guard(|| {
        let s = analysis::pt_spectrum_closed(Lambda::new(lambda)?);
        out_slice(out, len, 4)?.copy_from_slice(&s.eigenvalues);
        Ok(())
    })
}

/// # Safety
/// `ket` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eqc_ket_free(ket: *mut EqcKet) {
    if !ket.is_null() {
        drop(Box::from_raw(ket));
    }
}

/// # Safety
/// `rho` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eqc_density_free(rho: *mut EqcDensity) {
    if !rho.is_null() {
        drop(Box::from_raw(rho));
    }
}
