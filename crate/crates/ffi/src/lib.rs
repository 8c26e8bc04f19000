//! C ABI for `bfm-workbench`.
//!
//! Every function returns a [`BfmStatus`]; outputs go through pointer
//! arguments. On failure, [`bfm_last_error_message`] describes the error for the
//! calling thread. Strings handed out by this library must be released with
//! [`bfm_string_free`], datum handles with [`bfm_root_datum_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bfm_workbench::bfm::{leaf_rank1, toda_embed_rank1};
use bfm_workbench::cli::{self, CheckResult, Command, Report, RunConfig};
use bfm_workbench::mirror::{mirror_spectral_check, MirrorProblem};
use bfm_workbench::rootdata::{build_root_datum, langlands_dual, RootDatum, WeylGroup};
use bfm_workbench::toda::{toda_hamiltonian, TodaPhasePoint};
use bfm_workbench::Error;
use num_complex::Complex64;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BfmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnsupportedType = 3,
    Domain = 4,
    NotInCell = 5,
    Evaluation = 6,
    Io = 7,
    InvalidUtf8 = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BfmComplex {
    pub re: f64,
    pub im: f64,
}

impl From<BfmComplex> for Complex64 {
    fn from(z: BfmComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for BfmComplex {
    fn from(z: Complex64) -> Self {
        BfmComplex { re: z.re, im: z.im }
    }
}

/// Opaque root datum handle.
pub struct BfmRootDatum {
    inner: RootDatum,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(BfmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::UnsupportedType(_) => BfmStatus::UnsupportedType,
            Error::Domain(_) => BfmStatus::Domain,
            Error::NotInCell(_) => BfmStatus::NotInCell,
            Error::Evaluation(_) => BfmStatus::Evaluation,
            Error::InvalidArgument(_) => BfmStatus::InvalidArgument,
            Error::Io(_) => BfmStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(BfmStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BfmStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BfmStatus::Ok,
        Ok(Err(Failure(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            BfmStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(BfmStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn read_slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write<T>(out: *mut T, v: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(BfmStatus::Evaluation, "output contains a NUL byte".into()))
}

unsafe fn datum<'a>(d: *const BfmRootDatum) -> Result<&'a RootDatum, Failure> {
    d.as_ref().map(|d| &d.inner).ok_or_else(|| null("datum"))
}

/// Message for the last failed call on this thread, or null. The pointer stays
/// valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn bfm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn bfm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `type_label` such as `"A2"`; `lattice` is `"simply-connected"` or `"adjoint"`.
#[no_mangle]
pub unsafe extern "C" fn bfm_root_datum_new(
    type_label: *const c_char,
    lattice: *const c_char,
    out: *mut *mut BfmRootDatum,
) -> BfmStatus {
    guard(|| {
        let t = read_str(type_label, "type_label")?.parse().map_err(Failure::from)?;
        let l = read_str(lattice, "lattice")?.parse().map_err(Failure::from)?;
        let d = build_root_datum(t, l)?;
        write(out, Box::into_raw(Box::new(BfmRootDatum { inner: d })), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn bfm_root_datum_free(d: *mut BfmRootDatum) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bfm_root_datum_dual(d: *const BfmRootDatum, out: *mut *mut BfmRootDatum) -> BfmStatus {
    guard(|| {
        let dual = langlands_dual(datum(d)?);
        write(out, Box::into_raw(Box::new(BfmRootDatum { inner: dual })), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn bfm_root_datum_equal(
    a: *const BfmRootDatum,
    b: *const BfmRootDatum,
    out: *mut bool,
) -> BfmStatus {
    guard(|| {
        let eq = datum(a)? == datum(b)?;
        write(out, eq, "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn bfm_root_datum_rank(d: *const BfmRootDatum, out: *mut usize) -> BfmStatus {
    guard(|| write(out, datum(d)?.rank(), "out"))
}

#[no_mangle]
pub unsafe extern "C" fn bfm_root_datum_weyl_order(d: *const BfmRootDatum, out: *mut usize) -> BfmStatus {
    guard(|| write(out, WeylGroup::new(datum(d)?).len(), "out"))
}

/// JSON text of the datum; free with [`bfm_string_free`].
#[no_mangle]
pub unsafe extern "C" fn bfm_root_datum_to_json(d: *const BfmRootDatum, out: *mut *mut c_char) -> BfmStatus {
    guard(|| {
        let s = serde_json::to_string(datum(d)?).expect("datum is plain data");
        write(out, to_c_string(s)?, "out")
    })
}

/// `H_k = tr(L^k)/k` at the phase point `(x, p)` of `n` particles.
#[no_mangle]
pub unsafe extern "C" fn bfm_toda_hamiltonian(
    k: usize,
    x: *const BfmComplex,
    p: *const BfmComplex,
    n: usize,
    out: *mut BfmComplex,
) -> BfmStatus {
    guard(|| {
        let x = read_slice(x, n, "x")?.iter().map(|&z| z.into()).collect();
        let p = read_slice(p, n, "p")?.iter().map(|&z| z.into()).collect();
        let pt = TodaPhasePoint::new(x, p)?;
        write(out, toda_hamiltonian(k, &pt)?.into(), "out")
    })
}

/// `ξ² = u² − q` and `(z + z⁻¹)/4 = u²/q − 1/2`.
#[no_mangle]
pub unsafe extern "C" fn bfm_toda_embed_rank1(
    u: BfmComplex,
    q: BfmComplex,
    out_casimir: *mut BfmComplex,
    out_classfn: *mut BfmComplex,
) -> BfmStatus {
    guard(|| {
        let e = toda_embed_rank1(u.into(), q.into())?;
        write(out_casimir, e.casimir.into(), "out_casimir")?;
        write(out_classfn, e.classfn.into(), "out_classfn")
    })
}

/// Point `(ξ, z)` of the leaf with parameter `q` at `s`.
#[no_mangle]
pub unsafe extern "C" fn bfm_leaf_rank1(
    q: BfmComplex,
    s: BfmComplex,
    out_xi: *mut BfmComplex,
    out_z: *mut BfmComplex,
) -> BfmStatus {
    guard(|| {
        let p = leaf_rank1(q.into(), s.into())?;
        write(out_xi, p.xi.into(), "out_xi")?;
        write(out_z, p.z.into(), "out_z")
    })
}

/// Mirror spectral check at one `q` (length = rank) for a type-A datum, as a
/// canonical `bfm-workbench/1` report. `starts = 0` uses the default sweep.
#[no_mangle]
pub unsafe extern "C" fn bfm_mirror_check(
    d: *const BfmRootDatum,
    q: *const BfmComplex,
    nq: usize,
    starts: usize,
    seed: u64,
    out_json: *mut *mut c_char,
) -> BfmStatus {
    guard(|| {
        let d = datum(d)?;
        let q: Vec<Complex64> = read_slice(q, nq, "q")?.iter().map(|&z| z.into()).collect();
        let prob = MirrorProblem::new(d, &[], &q, &[])?;
        let starts = if starts == 0 { prob.default_starts() } else { starts };
        let r = mirror_spectral_check(&prob, starts, seed)?;
        let mut cfg = RunConfig::new(Command::MirrorCheck, &d.type_label.to_string())?;
        cfg.lattice = d.lattice;
        cfg.q = Some(q);
        cfg.seed = seed;
        cfg.starts = Some(starts);
        let tol = if d.rank() == 1 {
            cli::checks::RANK1_SPECTRUM_TOL
        } else {
            cli::checks::SPECTRUM_TOL
        };
        let check = CheckResult::new(&format!("mirror-check-{}", d.type_label), r.passes(tol), &r);
        let report = Report::new(serde_json::to_value(&cfg).expect("plain data"), vec![check]);
        write(out_json, to_c_string(report.to_canonical_json())?, "out_json")
    })
}

/// Run the command line `argv[0..argc]` (program name first). The process exit
/// code lands in `out_exit_code`; the manifest, if one was produced, in
/// `out_json` (null otherwise). Usage errors are reported through the exit
/// code, not the status.
#[no_mangle]
pub unsafe extern "C" fn bfm_run(
    argc: c_int,
    argv: *const *const c_char,
    out_json: *mut *mut c_char,
    out_exit_code: *mut c_int,
) -> BfmStatus {
    guard(|| {
        let argc = usize::try_from(argc).map_err(|_| Failure(BfmStatus::InvalidArgument, "argc < 0".into()))?;
        let ptrs = read_slice(argv, argc, "argv")?;
        let args = ptrs
            .iter()
            .map(|&p| read_str(p, "argv entry").map(str::to_owned))
            .collect::<Result<Vec<_>, _>>()?;
        let e = cli::execute(args);
        if let Some(m) = &e.message {
            if e.code != 0 {
                set_error(m.trim_end());
            }
        }
        let json = match e.manifest {
            Some(m) => to_c_string(m)?,
            None => ptr::null_mut(),
        };
        if out_exit_code.is_null() || out_json.is_null() {
            bfm_string_free(json);
            return Err(null("output pointer"));
        }
        out_exit_code.write(e.code);
        out_json.write(json);
        Ok(())
    })
}
