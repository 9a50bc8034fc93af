//! C ABI over `liouville-core`.
//!
//! Every fallible function returns an [`LvStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can be
//! read with [`lv_last_error_message`]. Objects are opaque handles created by
//! `lv_*_new`/constructors and released with the matching `lv_*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use liouville_core::experiments::{named_solution, SolutionParams};
use liouville_core::invariants::{j1, j2};
use liouville_core::solutions::make_constant;
use liouville_core::{
    boundary_from_solution, chi, solve_bvp, BoundaryData, Error, ErrorKind, ExactSolution, InvariantCoefficients,
    OrthogonalLattice, SchemeKind, SolveReport, StencilSample,
};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Singular = 3,
    Domain = 4,
    Breakdown = 5,
    IterationLimit = 6,
    Positivity = 7,
    Unfilled = 8,
    OutOfRange = 9,
    Config = 10,
    Io = 11,
    Panic = 12,
}

impl From<ErrorKind> for LvStatus {
    fn from(k: ErrorKind) -> Self {
        match k {
            ErrorKind::InvalidArgument => LvStatus::InvalidArgument,
            ErrorKind::Singular => LvStatus::Singular,
            ErrorKind::Domain => LvStatus::Domain,
            ErrorKind::Breakdown => LvStatus::Breakdown,
            ErrorKind::IterationLimit => LvStatus::IterationLimit,
            ErrorKind::Positivity => LvStatus::Positivity,
            ErrorKind::Unfilled => LvStatus::Unfilled,
            ErrorKind::OutOfRange => LvStatus::OutOfRange,
            ErrorKind::Config => LvStatus::Config,
            ErrorKind::Io => LvStatus::Io,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LvSchemeKind {
    Standard = 0,
    InvariantExplicit = 1,
    InvariantImplicit = 2,
    RebeloValiquette = 3,
    AdlerStartsev = 4,
}

/// Scheme selector. `kind` holds an [`LvSchemeKind`] value. `a` is used by
/// the explicit invariant scheme; `a, b, c, d` by the implicit one and must
/// sum to 1. Ignored otherwise.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LvScheme {
    pub kind: u32,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LvChi {
    pub rms: f64,
    pub relative: f64,
    pub max_abs: f64,
    pub count: usize,
    pub coverage: f64,
}

/// Opaque orthogonal lattice.
pub struct LvLattice(OrthogonalLattice);

/// Opaque closed-form solution.
pub struct LvSolution(ExactSolution);

/// Opaque result of a boundary-value solve.
pub struct LvReport(SolveReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: LvStatus, msg: impl Into<String>) -> LvStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> LvStatus {
    fail(e.kind().into(), e.to_string())
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), LvStatus>) -> LvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            LvStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => fail(LvStatus::Panic, "internal panic"),
    }
}

trait IntoStatus<T> {
    fn st(self) -> Result<T, LvStatus>;
}

impl<T> IntoStatus<T> for liouville_core::Result<T> {
    fn st(self) -> Result<T, LvStatus> {
        self.map_err(from_error)
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, LvStatus> {
    p.as_mut().ok_or_else(|| fail(LvStatus::NullPointer, format!("{what} is null")))
}

unsafe fn inp<'a, T>(p: *const T, what: &str) -> Result<&'a T, LvStatus> {
    p.as_ref().ok_or_else(|| fail(LvStatus::NullPointer, format!("{what} is null")))
}

unsafe fn slice<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], LvStatus> {
    if p.is_null() {
        return Err(fail(LvStatus::NullPointer, format!("{what} is null")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

fn scheme_of(s: &LvScheme) -> Result<SchemeKind, LvStatus> {
    const STD: u32 = LvSchemeKind::Standard as u32;
    const EXPL: u32 = LvSchemeKind::InvariantExplicit as u32;
    const IMPL: u32 = LvSchemeKind::InvariantImplicit as u32;
    const RV: u32 = LvSchemeKind::RebeloValiquette as u32;
    const AS: u32 = LvSchemeKind::AdlerStartsev as u32;
    let k = match s.kind {
        STD => SchemeKind::Standard,
        EXPL => SchemeKind::InvariantExplicit { a: s.a },
        IMPL => SchemeKind::InvariantImplicit(InvariantCoefficients::new(s.a, s.b, s.c, s.d).st()?),
        RV => SchemeKind::RebeloValiquette,
        AS => SchemeKind::AdlerStartsev,
        other => return Err(fail(LvStatus::InvalidArgument, format!("unknown scheme kind {other}"))),
    };
    k.validate().st()?;
    Ok(k)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Length in bytes (without NUL) of the last error message on this thread,
/// 0 if none.
#[no_mangle]
pub extern "C" fn lv_last_error_length() -> usize {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(0, |c| c.as_bytes().len()))
}

/// Copies the last error message into `buf` (NUL-terminated, truncated to
/// `len - 1` bytes). Returns the number of bytes written without the NUL.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn lv_last_error_message(buf: *mut c_char, len: usize) -> usize {
    if buf.is_null() || len == 0 {
        return 0;
    }
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let bytes = e.as_ref().map_or(&[][..], |c| c.as_bytes());
        let n = bytes.len().min(len - 1);
        ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
        *buf.add(n) = 0;
        n
    })
}

/// Uniform lattice `x_m = x0 + m h`, `y_n = y0 + n k`, `m < rows`, `n < cols`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lv_lattice_uniform(
    x0: f64,
    y0: f64,
    h: f64,
    k: f64,
    rows: usize,
    cols: usize,
    out_lattice: *mut *mut LvLattice,
) -> LvStatus {
    guard(|| {
        let o = out(out_lattice, "out_lattice")?;
        *o = boxed(LvLattice(OrthogonalLattice::uniform(x0, y0, h, k, rows, cols).st()?));
        Ok(())
    })
}

/// Lattice from strictly increasing coordinate arrays.
///
/// # Safety
/// `xs`/`ys` must point to `nx`/`ny` doubles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lv_lattice_new(
    xs: *const f64,
    nx: usize,
    ys: *const f64,
    ny: usize,
    out_lattice: *mut *mut LvLattice,
) -> LvStatus {
    guard(|| {
        let o = out(out_lattice, "out_lattice")?;
        let (xs, ys) = (slice(xs, nx, "xs")?, slice(ys, ny, "ys")?);
        *o = boxed(LvLattice(OrthogonalLattice::new(xs.to_vec(), ys.to_vec()).st()?));
        Ok(())
    })
}

/// # Safety
/// `lat` and the out-pointers must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn lv_lattice_dims(lat: *const LvLattice, rows: *mut usize, cols: *mut usize) -> LvStatus {
    guard(|| {
        let l = &inp(lat, "lattice")?.0;
        *out(rows, "rows")? = l.rows();
        *out(cols, "cols")? = l.cols();
        Ok(())
    })
}

/// # Safety
/// `lat` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lv_lattice_free(lat: *mut LvLattice) {
    free(lat)
}

/// Named closed-form solution: `"s1"`, `"s2"` or `"s3"`, with the default
/// parameters.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lv_solution_named(name: *const c_char, out_solution: *mut *mut LvSolution) -> LvStatus {
    guard(|| {
        let o = out(out_solution, "out_solution")?;
        if name.is_null() {
            return Err(fail(LvStatus::NullPointer, "name is null"));
        }
        let name = std::ffi::CStr::from_ptr(name)
            .to_str()
            .map_err(|_| fail(LvStatus::InvalidArgument, "name is not UTF-8"))?;
        *o = boxed(LvSolution(named_solution(name, &SolutionParams::default()).st()?));
        Ok(())
    })
}

/// `s1` with parameters `alpha, beta, gamma, delta`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lv_solution_s1(
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
    out_solution: *mut *mut LvSolution,
) -> LvStatus {
    guard(|| {
        let o = out(out_solution, "out_solution")?;
        let p = SolutionParams { alpha, beta, gamma, delta, ..SolutionParams::default() };
        *o = boxed(LvSolution(named_solution("s1", &p).st()?));
        Ok(())
    })
}

/// `s2` with parameters `A` and `s`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lv_solution_s2(a: f64, s: f64, out_solution: *mut *mut LvSolution) -> LvStatus {
    guard(|| {
        let o = out(out_solution, "out_solution")?;
        let p = SolutionParams { a, s, ..SolutionParams::default() };
        *o = boxed(LvSolution(named_solution("s2", &p).st()?));
        Ok(())
    })
}

/// Constant field `u = value`. Solves the equation only for `value = 0`;
/// useful as boundary data.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lv_solution_constant(value: f64, out_solution: *mut *mut LvSolution) -> LvStatus {
    guard(|| {
        let o = out(out_solution, "out_solution")?;
        *o = boxed(LvSolution(make_constant(value)));
        Ok(())
    })
}

/// # Safety
/// `sol` and `value` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn lv_solution_eval(sol: *const LvSolution, x: f64, y: f64, value: *mut f64) -> LvStatus {
    guard(|| {
        let s = &inp(sol, "solution")?.0;
        *out(value, "value")? = s.try_eval(x, y).st()?;
        Ok(())
    })
}

/// # Safety
/// `sol` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lv_solution_free(sol: *mut LvSolution) {
    free(sol)
}

/// One cell of a scheme: `u11` from `u00, u01, u10` and steps `h, k`.
///
/// # Safety
/// `scheme` and `u11` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn lv_step(
    scheme: *const LvScheme,
    u00: f64,
    u01: f64,
    u10: f64,
    h: f64,
    k: f64,
    u11: *mut f64,
) -> LvStatus {
    guard(|| {
        let s = scheme_of(inp(scheme, "scheme")?)?;
        *out(u11, "u11")? = s.step(u00, u01, u10, h, k).st()?;
        Ok(())
    })
}

/// Residual of a scheme on the orthogonal stencil with corner `(x, y)`,
/// steps `h, k` and values `u[m][n]` stored as `{u00, u01, u10, u11}`.
///
/// # Safety
/// `u` must point to 4 doubles; the other pointers valid or null.
#[no_mangle]
pub unsafe extern "C" fn lv_residual(
    scheme: *const LvScheme,
    x: f64,
    y: f64,
    h: f64,
    k: f64,
    u: *const f64,
    residual: *mut f64,
) -> LvStatus {
    guard(|| {
        let s = scheme_of(inp(scheme, "scheme")?)?;
        let u = slice(u, 4, "u")?;
        let st = StencilSample::uniform(x, y, h, k, [[u[0], u[1]], [u[2], u[3]]]);
        *out(residual, "residual")? = s.residual(&st).st()?;
        Ok(())
    })
}

/// The two difference invariants of an orthogonal stencil,
/// `J1 = u01 u10 h² k²` and `J2 = u00 u11 h² k²`. `u` as in [`lv_residual`].
///
/// # Safety
/// `u` must point to 4 doubles; the out-pointers valid or null.
#[no_mangle]
pub unsafe extern "C" fn lv_invariants_j(h: f64, k: f64, u: *const f64, j1_out: *mut f64, j2_out: *mut f64) -> LvStatus {
    guard(|| {
        let u = slice(u, 4, "u")?;
        let st = StencilSample::uniform(0.0, 0.0, h, k, [[u[0], u[1]], [u[2], u[3]]]);
        let (a, b) = (j1(&st).st()?, j2(&st).st()?);
        *out(j1_out, "j1")? = a;
        *out(j2_out, "j2")? = b;
        Ok(())
    })
}

/// Solves the boundary-value problem with the first row (`m = 0`, length
/// `cols`) and first column (`n = 0`, length `rows`) given. `row0[0]` and
/// `col0[0]` must agree. Cells that fail are recorded in the report, not
/// returned as an error.
///
/// # Safety
/// Arrays must hold the stated lengths; the other pointers valid or null.
#[no_mangle]
pub unsafe extern "C" fn lv_solve_boundary(
    lat: *const LvLattice,
    row0: *const f64,
    row0_len: usize,
    col0: *const f64,
    col0_len: usize,
    scheme: *const LvScheme,
    out_report: *mut *mut LvReport,
) -> LvStatus {
    guard(|| {
        let o = out(out_report, "out_report")?;
        let l = &inp(lat, "lattice")?.0;
        let s = scheme_of(inp(scheme, "scheme")?)?;
        let bd = BoundaryData::new(slice(row0, row0_len, "row0")?.to_vec(), slice(col0, col0_len, "col0")?.to_vec())
            .st()?;
        *o = boxed(LvReport(solve_bvp(l, &bd, s).st()?));
        Ok(())
    })
}

/// Solves with boundary data sampled from `sol`.
///
/// # Safety
/// Pointers must be valid handles or null.
#[no_mangle]
pub unsafe extern "C" fn lv_solve(
    lat: *const LvLattice,
    sol: *const LvSolution,
    scheme: *const LvScheme,
    out_report: *mut *mut LvReport,
) -> LvStatus {
    guard(|| {
        let o = out(out_report, "out_report")?;
        let l = &inp(lat, "lattice")?.0;
        let sol = &inp(sol, "solution")?.0;
        let s = scheme_of(inp(scheme, "scheme")?)?;
        let bd = boundary_from_solution(sol, l).st()?;
        *o = boxed(LvReport(solve_bvp(l, &bd, s).st()?));
        Ok(())
    })
}

/// Value at node `(m, n)`. `LV_STATUS_UNFILLED` if the cell was not computed.
///
/// # Safety
/// Pointers must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn lv_report_value(rep: *const LvReport, m: usize, n: usize, value: *mut f64) -> LvStatus {
    guard(|| {
        let f = &inp(rep, "report")?.0.field;
        let v = out(value, "value")?;
        if m >= f.rows() || n >= f.cols() {
            return Err(from_error(Error::OutOfRange { m, n, rows: f.rows(), cols: f.cols() }));
        }
        *v = f.get(m, n).ok_or_else(|| from_error(Error::Unfilled { m, n }))?;
        Ok(())
    })
}

/// Copies the field row-major into `buf` (`rows * cols` doubles); unfilled
/// nodes become NaN.
///
/// # Safety
/// `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn lv_report_field(rep: *const LvReport, buf: *mut f64, len: usize) -> LvStatus {
    guard(|| {
        let f = &inp(rep, "report")?.0.field;
        let need = f.rows() * f.cols();
        if buf.is_null() {
            return Err(fail(LvStatus::NullPointer, "buf is null"));
        }
        if len < need {
            return Err(fail(LvStatus::InvalidArgument, format!("buffer holds {len} values, need {need}")));
        }
        let dst = std::slice::from_raw_parts_mut(buf, need);
        for m in 0..f.rows() {
            for n in 0..f.cols() {
                dst[m * f.cols() + n] = f.get(m, n).unwrap_or(f64::NAN);
            }
        }
        Ok(())
    })
}

/// Number of cells that failed, and fraction of nodes filled.
///
/// # Safety
/// Pointers must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn lv_report_summary(rep: *const LvReport, failures: *mut usize, coverage: *mut f64) -> LvStatus {
    guard(|| {
        let r = &inp(rep, "report")?.0;
        *out(failures, "failures")? = r.failures.len();
        *out(coverage, "coverage")? = r.coverage();
        Ok(())
    })
}

/// Status of the `i`-th failed cell and its indices.
///
/// # Safety
/// Pointers must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn lv_report_failure(
    rep: *const LvReport,
    i: usize,
    m: *mut usize,
    n: *mut usize,
    kind: *mut LvStatus,
) -> LvStatus {
    guard(|| {
        let r = &inp(rep, "report")?.0;
        let f = r
            .failures
            .get(i)
            .ok_or_else(|| fail(LvStatus::OutOfRange, format!("failure {i} of {}", r.failures.len())))?;
        *out(m, "m")? = f.m;
        *out(n, "n")? = f.n;
        *out(kind, "kind")? = f.kind.into();
        Ok(())
    })
}

/// Error of the computed field against `sol` over the filled nodes.
///
/// # Safety
/// Pointers must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn lv_report_chi(rep: *const LvReport, sol: *const LvSolution, result: *mut LvChi) -> LvStatus {
    guard(|| {
        let r = &inp(rep, "report")?.0;
        let s = &inp(sol, "solution")?.0;
        let o = out(result, "result")?;
        let c = chi(&r.field, s).st()?;
        *o = LvChi { rms: c.rms, relative: c.relative, max_abs: c.max_abs, count: c.count, coverage: c.coverage };
        Ok(())
    })
}

/// # Safety
/// `rep` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lv_report_free(rep: *mut LvReport) {
    free(rep)
}
