use std::ffi::CStr;
use std::ptr;

use liouville_ffi::*;

fn scheme(kind: LvSchemeKind) -> LvScheme {
    LvScheme { kind: kind as u32, a: 0.5, b: 0.0, c: 0.5, d: 0.0 }
}

fn last_error() -> String {
    let mut buf = [0 as std::ffi::c_char; 256];
    let n = unsafe { lv_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert_eq!(n, lv_last_error_length().min(255));
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn version_is_a_c_string() {
    let v = unsafe { CStr::from_ptr(lv_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn single_steps() {
    let mut u11 = 0.0;
    let st = unsafe { lv_step(&scheme(LvSchemeKind::Standard), 1.0, 1.0, 1.0, 0.1, 0.1, &mut u11) };
    assert_eq!(st, LvStatus::Ok);
    assert!((u11 - 1.01).abs() < 1e-15);

    let st = unsafe { lv_step(&scheme(LvSchemeKind::InvariantExplicit), -1.0, -1.0, 2.0, 0.1, 0.1, &mut u11) };
    assert_eq!(st, LvStatus::Domain);
    assert!(!last_error().is_empty());

    let bad = LvScheme { kind: 99, ..scheme(LvSchemeKind::Standard) };
    assert_eq!(unsafe { lv_step(&bad, 1.0, 1.0, 1.0, 0.1, 0.1, &mut u11) }, LvStatus::InvalidArgument);
    let bad = LvScheme { a: 0.9, c: 0.9, ..scheme(LvSchemeKind::InvariantImplicit) };
    assert_eq!(unsafe { lv_step(&bad, 1.0, 1.0, 1.0, 0.1, 0.1, &mut u11) }, LvStatus::InvalidArgument);
}

#[test]
fn invariants_and_residual() {
    let u = [1.0, 2.0, 3.0, 5.0];
    let (mut a, mut b) = (0.0, 0.0);
    assert_eq!(unsafe { lv_invariants_j(0.5, 0.2, u.as_ptr(), &mut a, &mut b) }, LvStatus::Ok);
    assert!((a - 6.0 * 0.01).abs() < 1e-15 && (b - 5.0 * 0.01).abs() < 1e-15);

    let s = scheme(LvSchemeKind::InvariantExplicit);
    let mut u11 = 0.0;
    unsafe { lv_step(&s, 1.0, 1.1, 0.9, 0.05, 0.05, &mut u11) };
    let mut r = 1.0;
    let u = [1.0, 1.1, 0.9, u11];
    assert_eq!(unsafe { lv_residual(&s, 0.0, 0.0, 0.05, 0.05, u.as_ptr(), &mut r) }, LvStatus::Ok);
    assert!(r.abs() < 1e-14, "{r}");
}

#[test]
fn null_pointers_are_reported() {
    let mut u11 = 0.0;
    assert_eq!(unsafe { lv_step(ptr::null(), 1.0, 1.0, 1.0, 0.1, 0.1, &mut u11) }, LvStatus::NullPointer);
    assert!(last_error().contains("scheme"));
    let s = scheme(LvSchemeKind::Standard);
    assert_eq!(unsafe { lv_step(&s, 1.0, 1.0, 1.0, 0.1, 0.1, ptr::null_mut()) }, LvStatus::NullPointer);
    assert_eq!(unsafe { lv_solve(ptr::null(), ptr::null(), &s, ptr::null_mut()) }, LvStatus::NullPointer);
    unsafe {
        lv_lattice_free(ptr::null_mut());
        lv_solution_free(ptr::null_mut());
        lv_report_free(ptr::null_mut());
    }
    // success clears the message
    assert_eq!(unsafe { lv_step(&s, 1.0, 1.0, 1.0, 0.1, 0.1, &mut u11) }, LvStatus::Ok);
    assert_eq!(lv_last_error_length(), 0);
}

#[test]
fn solve_s2_through_handles() {
    unsafe {
        let mut lat = ptr::null_mut();
        assert_eq!(lv_lattice_uniform(-1.5, -1.0, 0.02, 0.02, 21, 21, &mut lat), LvStatus::Ok);
        let (mut rows, mut cols) = (0, 0);
        lv_lattice_dims(lat, &mut rows, &mut cols);
        assert_eq!((rows, cols), (21, 21));

        let mut sol = ptr::null_mut();
        assert_eq!(lv_solution_named(c"s2".as_ptr(), &mut sol), LvStatus::Ok);
        let mut bad = ptr::null_mut();
        assert_eq!(lv_solution_named(c"s9".as_ptr(), &mut bad), LvStatus::Config);
        assert!(bad.is_null());

        for kind in [LvSchemeKind::Standard, LvSchemeKind::InvariantExplicit, LvSchemeKind::InvariantImplicit] {
            let mut rep = ptr::null_mut();
            assert_eq!(lv_solve(lat, sol, &scheme(kind), &mut rep), LvStatus::Ok);
            let (mut failures, mut coverage) = (9, 0.0);
            lv_report_summary(rep, &mut failures, &mut coverage);
            assert_eq!((failures, coverage), (0, 1.0));

            let mut c = LvChi::default();
            assert_eq!(lv_report_chi(rep, sol, &mut c), LvStatus::Ok);
            assert!(c.rms > 0.0 && c.rms < 1e-3 && c.count == 441, "{c:?}");

            let mut v = 0.0;
            let mut exact = 0.0;
            lv_report_value(rep, 20, 20, &mut v);
            lv_solution_eval(sol, -1.1, -0.6, &mut exact);
            assert!((v - exact).abs() < 1e-3);
            assert_eq!(lv_report_value(rep, 21, 0, &mut v), LvStatus::OutOfRange);

            let mut buf = vec![0.0; 441];
            assert_eq!(lv_report_field(rep, buf.as_mut_ptr(), 440), LvStatus::InvalidArgument);
            assert_eq!(lv_report_field(rep, buf.as_mut_ptr(), buf.len()), LvStatus::Ok);
            assert_eq!(buf[440], v);
            lv_report_free(rep);
        }
        lv_solution_free(sol);
        lv_lattice_free(lat);
    }
}

#[test]
fn failed_cells_are_in_the_report() {
    unsafe {
        let mut lat = ptr::null_mut();
        lv_lattice_new([0.0, 0.1, 0.2].as_ptr(), 3, [0.0, 0.1, 0.2].as_ptr(), 3, &mut lat);
        let row0 = [-1.0, -1.0, -1.0];
        let mut rep = ptr::null_mut();
        let s = scheme(LvSchemeKind::InvariantExplicit);
        assert_eq!(lv_solve_boundary(lat, row0.as_ptr(), 3, row0.as_ptr(), 3, &s, &mut rep), LvStatus::Ok);
        let (mut failures, mut coverage) = (0, 0.0);
        lv_report_summary(rep, &mut failures, &mut coverage);
        assert!(failures > 0 && coverage < 1.0);
        let (mut m, mut n, mut kind) = (0, 0, LvStatus::Ok);
        assert_eq!(lv_report_failure(rep, 0, &mut m, &mut n, &mut kind), LvStatus::Ok);
        assert_ne!(kind, LvStatus::Ok);
        assert_eq!(lv_report_failure(rep, failures, &mut m, &mut n, &mut kind), LvStatus::OutOfRange);
        let mut v = 0.0;
        assert_eq!(lv_report_value(rep, 2, 2, &mut v), LvStatus::Unfilled);
        lv_report_free(rep);

        // corners disagree
        let col0 = [2.0, 1.0, 1.0];
        let mut rep = ptr::null_mut();
        let st = lv_solve_boundary(lat, row0.as_ptr(), 3, col0.as_ptr(), 3, &s, &mut rep);
        assert_eq!(st, LvStatus::InvalidArgument);
        assert!(rep.is_null());
        lv_lattice_free(lat);
    }
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/liouville.h")).unwrap();
    for name in ["lv_solve(", "lv_step(", "lv_report_chi(", "lv_last_error_message(", "typedef struct LvLattice LvLattice", "LV_STATUS_UNFILLED = 8"] {
        assert!(h.contains(name), "{name}");
    }
}
