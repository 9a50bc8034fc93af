//! Difference invariants of `SL(2) × SL(2)` on a four-point stencil.
//!
//! `ξ₁`, `η₁` are cross-ratios of the `x` and `y` coordinates. `H₁…H₄` pair
//! field values with squared coordinate gaps so that the density weights of
//! `u` cancel. On an orthogonal lattice `H₁…H₄` degenerate (zero or
//! infinite), and the finite combinations `J₁`, `J₂` take over.

use crate::error::{nonzero, Error, Result};
use crate::lattice::StencilSample;

pub fn xi1(s: &StencilSample) -> Result<f64> {
    let x = &s.x;
    let den = (x[0][0] - x[1][0]) * (x[0][1] - x[1][1]);
    let den = nonzero(den, 0.0, "ξ₁ denominator")?;
    Ok((x[0][1] - x[0][0]) * (x[1][1] - x[1][0]) / den)
}

pub fn eta1(s: &StencilSample) -> Result<f64> {
    let y = &s.y;
    let den = (y[0][1] - y[0][0]) * (y[1][1] - y[1][0]);
    let den = nonzero(den, 0.0, "η₁ denominator")?;
    Ok((y[0][0] - y[1][0]) * (y[0][1] - y[1][1]) / den)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HInvariants {
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
    pub h4: f64,
}

pub fn h_invariants(s: &StencilSample) -> Result<HInvariants> {
    let (h, k) = (s.h10(), s.k01());
    let (e01, e11) = (s.eps01(), s.eps11());
    let (d10, d11) = (s.del10(), s.del11());
    let [[u00, u01], [u10, u11]] = s.u;

    let span = k + d11 - d10;
    let h1 = u00 * u01 * e01 * e01 * k * k;
    let h2 = u10 * u11 * e11 * e11 * span * span;

    let u00 = nonzero(u00, 0.0, "u00")?;
    let den3 = nonzero(u00 * e01 * e01 * k * k, 0.0, "H₃ denominator")?;
    let den4 = nonzero(u00 * h * h * d10 * d10, 0.0, "H₄ denominator")?;
    let h3 = u10 * (h - e01).powi(2) * (k - d10).powi(2) / den3;
    let h4 = u11 * e11 * e11 * span * span / den4;
    Ok(HInvariants { h1, h2, h3, h4 })
}

fn check_steps(s: &StencilSample) -> Result<(f64, f64)> {
    let h = nonzero(s.h10(), 0.0, "h10")?;
    let k = nonzero(s.k01(), 0.0, "k01")?;
    Ok((h, k))
}

/// `J₁ = u01 u10 h10² k01²`.
pub fn j1(s: &StencilSample) -> Result<f64> {
    let (h, k) = check_steps(s)?;
    Ok(s.u01() * s.u10() * h * h * k * k)
}

/// `J₂ = u00 u11 h10² k01²`.
pub fn j2(s: &StencilSample) -> Result<f64> {
    let (h, k) = check_steps(s)?;
    Ok(s.u00() * s.u11() * h * h * k * k)
}

/// Discrete first derivatives `(u_x^d, u_y^d)` on a general stencil, exact
/// on affine fields.
pub fn discrete_derivatives(s: &StencilSample) -> Result<(f64, f64)> {
    let d = s.eps01() * s.del10() - s.h10() * s.k01();
    if d == 0.0 || !d.is_finite() {
        return Err(Error::singular("degenerate stencil (D = 0)"));
    }
    let du10 = s.u10() - s.u00();
    let du01 = s.u01() - s.u00();
    let ux = (s.del10() * du01 - s.k01() * du10) / d;
    let uy = (s.eps01() * du10 - s.h10() * du01) / d;
    Ok((ux, uy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn general(x: [[f64; 2]; 2], y: [[f64; 2]; 2], u: [[f64; 2]; 2]) -> StencilSample {
        StencilSample::new(x, y, u)
    }

    #[test]
    fn cross_ratio_examples() {
        let s = StencilSample::uniform(0.0, 0.0, 0.1, 0.1, [[1.0; 2]; 2]);
        assert_eq!(xi1(&s).unwrap(), 0.0);
        assert_eq!(eta1(&s).unwrap(), 0.0);

        let s = general([[0.0, 0.2], [1.0, 1.3]], [[0.0, 1.0], [0.3, 1.6]], [[1.0; 2]; 2]);
        let want = 0.06 / 1.1;
        assert!((xi1(&s).unwrap() - want).abs() < 1e-15);
        // difference form
        let (e01, e11, h) = (s.eps01(), s.eps11(), s.h10());
        let alt = e01 * e11 / (h * (h + e11 - e01));
        assert!((alt - want).abs() < 1e-15);

        let s = general([[0.0, 0.0], [1.0, 1.0]], [[0.0, 1.0], [0.0, 1.0]], [[1.0; 2]; 2]);
        assert_eq!(eta1(&s).unwrap(), 0.0);
    }

    #[test]
    fn degenerate_cross_ratio_is_singular() {
        let s = general([[0.0, 0.5], [0.0, 1.0]], [[0.0, 1.0], [0.0, 1.0]], [[1.0; 2]; 2]);
        assert!(matches!(xi1(&s), Err(Error::Singular(_))));
    }

    #[test]
    fn h_invariant_examples() {
        // u00=1, u01=2, eps01=0.5, k01=0.25
        let s = StencilSample::from_differences(
            0.0, 0.0, 1.0, 0.25, 0.5, 0.3, 0.1, 0.2,
            [[1.0, 2.0], [1.5, 0.7]],
        );
        let h = h_invariants(&s).unwrap();
        assert!((h.h1 - 0.03125).abs() < 1e-15);

        // u00=1, u10=2, h10=1, eps01=0.5, k01=1, del10=0.25
        let s = StencilSample::from_differences(
            0.0, 0.0, 1.0, 1.0, 0.5, 0.2, 0.25, 0.1,
            [[1.0, 1.0], [2.0, 1.0]],
        );
        let h = h_invariants(&s).unwrap();
        assert!((h.h3 - 1.125).abs() < 1e-15);
    }

    #[test]
    fn h_invariants_degenerate_on_orthogonal_lattice() {
        let s = StencilSample::uniform(0.0, 0.0, 0.1, 0.1, [[1.0; 2]; 2]);
        assert!(h_invariants(&s).is_err());
        let [[u00, u01], [_, _]] = s.u;
        assert_eq!(u00 * u01 * s.eps01().powi(2) * s.k01().powi(2), 0.0);
    }

    #[test]
    fn j_examples() {
        let s = StencilSample::uniform(0.0, 0.0, 1.0, 1.0, [[1.0, 2.0], [3.0, 4.0]]);
        assert_eq!(j1(&s).unwrap(), 6.0);
        assert_eq!(j2(&s).unwrap(), 4.0);

        let f = |x: f64| 1.0 + x * x;
        let g = |y: f64| (0.3 * y).exp();
        let (x0, y0, h, k) = (0.2, -0.4, 0.05, 0.07);
        let u = [
            [f(x0) * g(y0), f(x0) * g(y0 + k)],
            [f(x0 + h) * g(y0), f(x0 + h) * g(y0 + k)],
        ];
        let s = StencilSample::uniform(x0, y0, h, k, u);
        let d = j2(&s).unwrap() - j1(&s).unwrap();
        assert!(d.abs() <= 4.0 * f64::EPSILON * j1(&s).unwrap());
    }

    #[test]
    fn j_requires_nonzero_steps() {
        let s = StencilSample::orthogonal([0.0, 0.0], [0.0, 1.0], [[1.0; 2]; 2]);
        assert!(j1(&s).is_err());
    }

    #[test]
    fn derivative_examples() {
        let s = StencilSample::uniform(0.0, 0.0, 0.1, 0.1, [[1.0, 1.4], [1.2, 0.0]]);
        let (ux, uy) = discrete_derivatives(&s).unwrap();
        assert!((ux - 2.0).abs() < 1e-13 && (uy - 4.0).abs() < 1e-13);

        let s = general([[0.0, 0.3], [1.0, 1.2]], [[0.0, 1.0], [0.4, 1.5]], [[2.5; 2]; 2]);
        assert_eq!(discrete_derivatives(&s).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn derivative_of_degenerate_stencil() {
        // (1,0) and (0,1) collinear with (0,0)
        let s = general([[0.0, 1.0], [1.0, 0.0]], [[0.0, 1.0], [1.0, 0.0]], [[1.0; 2]; 2]);
        assert!(matches!(discrete_derivatives(&s), Err(Error::Singular(_))));
    }

    #[test]
    fn derivatives_converge_linearly() {
        let f = |x: f64, y: f64| (x + 2.0 * y).sin() + x * y;
        let (gx, gy) = (|x: f64, y: f64| (x + 2.0 * y).cos() + y, |x: f64, y: f64| 2.0 * (x + 2.0 * y).cos() + x);
        let (x0, y0) = (0.3, 0.1);
        let mut errs = Vec::new();
        for h in [0.04, 0.02, 0.01] {
            let x = [[x0, x0 + 0.3 * h], [x0 + h, x0 + 1.2 * h]];
            let y = [[y0, y0 + h], [y0 + 0.2 * h, y0 + 1.1 * h]];
            let u = [[f(x[0][0], y[0][0]), f(x[0][1], y[0][1])], [f(x[1][0], y[1][0]), f(x[1][1], y[1][1])]];
            let (ux, uy) = discrete_derivatives(&general(x, y, u)).unwrap();
            errs.push((ux - gx(x0, y0)).abs().max((uy - gy(x0, y0)).abs()));
        }
        let p1 = (errs[0] / errs[1]).log2();
        let p2 = (errs[1] / errs[2]).log2();
        assert!(p1 > 0.9 && p2 > 0.9, "{errs:?}");
    }

    proptest! {
        #[test]
        fn affine_fields_are_differentiated_exactly(
            a in -3.0..3.0f64, b in -3.0..3.0f64, c in -3.0..3.0f64,
            xs in prop::array::uniform4(-1.0..1.0f64),
            ys in prop::array::uniform4(-1.0..1.0f64),
        ) {
            let x = [[xs[0], xs[1]], [xs[2], xs[3]]];
            let y = [[ys[0], ys[1]], [ys[2], ys[3]]];
            let mut u = [[0.0; 2]; 2];
            for i in 0..2 { for j in 0..2 { u[i][j] = a * x[i][j] + b * y[i][j] + c; } }
            let s = general(x, y, u);
            let d = s.eps01() * s.del10() - s.h10() * s.k01();
            prop_assume!(d.abs() > 0.05);
            let (ux, uy) = discrete_derivatives(&s).unwrap();
            prop_assert!((ux - a).abs() < 1e-10 && (uy - b).abs() < 1e-10);
        }
    }
}
