//! Four-point discretizations of `u u_xy − u_x u_y = u³`.
//!
//! Every scheme relates the corners of one lattice rectangle and is solved
//! for the top-right value `u11` given `u00`, `u01`, `u10` and the steps
//! `h = x10 − x00`, `k = y01 − y00`:
//!
//! * standard: `u11 u00 − u01 u10 = h k u00³`;
//! * invariant: `J₂ − J₁ = a|J₁|^{3/2} + b J₁|J₂|^{1/2} + c|J₁|^{1/2} J₂ + d|J₂|^{3/2}`
//!   with `a + b + c + d = 1`, explicit when `b = d = 0`;
//! * Rebelo–Valiquette: `u11 u00 − u10 u01 = u00 u01 u10 h k`;
//! * Adler–Startsev: `u11 (1 + u10)(1 + u01) u00 = u10 u01`, step-free.

use std::fmt;
use std::str::FromStr;

use crate::error::{nonzero, Error, Result};
use crate::invariants::{j1, j2};
use crate::lattice::StencilSample;
use crate::smooth::SmoothFn1D;

/// Coefficients `(a, b, c, d)` of the invariant scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl InvariantCoefficients {
    pub const SUM_TOL: f64 = 1e-12;

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let coeffs = InvariantCoefficients { a, b, c, d };
        coeffs.validate()?;
        Ok(coeffs)
    }

    /// The explicit family: `b = d = 0`, `c = 1 − a`.
    pub fn explicit(a: f64) -> Self {
        InvariantCoefficients {
            a,
            b: 0.0,
            c: 1.0 - a,
            d: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let sum = self.a + self.b + self.c + self.d;
        if !sum.is_finite() || (sum - 1.0).abs() > Self::SUM_TOL {
            return Err(Error::invalid(format!(
                "invariant scheme coefficients must sum to 1 (got {sum})"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeKind {
    Standard,
    InvariantExplicit { a: f64 },
    InvariantImplicit(InvariantCoefficients),
    RebeloValiquette,
    AdlerStartsev,
    /// `u11 u00 = u01 u10`, the discrete wave equation. Used to check that
    /// separable data is propagated exactly.
    #[doc(hidden)]
    Wave,
}

impl SchemeKind {
    /// The symmetric explicit invariant scheme, `a = 1/2`.
    pub const INVARIANT: SchemeKind = SchemeKind::InvariantExplicit { a: 0.5 };

    pub fn name(&self) -> &'static str {
        match self {
            SchemeKind::Standard => "standard",
            SchemeKind::InvariantExplicit { .. } => "invariant-explicit",
            SchemeKind::InvariantImplicit(_) => "invariant-implicit",
            SchemeKind::RebeloValiquette => "rv",
            SchemeKind::AdlerStartsev => "as",
            SchemeKind::Wave => "wave",
        }
    }

    /// Invariant schemes take square roots of `u01 u10` and are run on
    /// strictly positive fields only.
    pub fn requires_positive(&self) -> bool {
        matches!(
            self,
            SchemeKind::InvariantExplicit { .. } | SchemeKind::InvariantImplicit(_)
        )
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SchemeKind::InvariantImplicit(c) => c.validate(),
            SchemeKind::InvariantExplicit { a } if !a.is_finite() => {
                Err(Error::invalid("parameter a must be finite"))
            }
            _ => Ok(()),
        }
    }

    /// Solves the scheme for `u11`.
    pub fn step(&self, u00: f64, u01: f64, u10: f64, h: f64, k: f64) -> Result<f64> {
        match *self {
            SchemeKind::Standard => step_standard(u00, u01, u10, h, k),
            SchemeKind::InvariantExplicit { a } => step_invariant_explicit(u00, u01, u10, h, k, a),
            SchemeKind::InvariantImplicit(c) => step_invariant_implicit(u00, u01, u10, h, k, c),
            SchemeKind::RebeloValiquette => step_rv(u00, u01, u10, h, k),
            SchemeKind::AdlerStartsev => step_as(u00, u01, u10),
            SchemeKind::Wave => step_wave(u00, u01, u10),
        }
    }

    /// The scheme's own defining expression at a full stencil (zero on
    /// discrete solutions).
    pub fn residual(&self, s: &StencilSample) -> Result<f64> {
        match *self {
            SchemeKind::Standard => Ok(residual_standard(s)),
            SchemeKind::InvariantExplicit { a } => {
                residual_invariant_implicit(s, InvariantCoefficients::explicit(a))
            }
            SchemeKind::InvariantImplicit(c) => residual_invariant_implicit(s, c),
            SchemeKind::RebeloValiquette => Ok(residual_rv(s)),
            SchemeKind::AdlerStartsev => Ok(residual_as(s)),
            SchemeKind::Wave => Ok(s.u11() * s.u00() - s.u01() * s.u10()),
        }
    }

    /// Magnitude of the largest term of [`SchemeKind::residual`], for
    /// relative residual checks.
    pub fn residual_scale(&self, s: &StencilSample) -> f64 {
        let [[u00, u01], [u10, u11]] = s.u;
        let (h, k) = (s.h10(), s.k01());
        let scale = match self {
            SchemeKind::Standard => (u11 * u00).abs().max((u01 * u10).abs()).max((h * k * u00.powi(3)).abs()),
            SchemeKind::InvariantExplicit { .. } | SchemeKind::InvariantImplicit(_) => {
                let hk2 = (h * k).powi(2);
                (u01 * u10 * hk2).abs().max((u00 * u11 * hk2).abs())
            }
            SchemeKind::RebeloValiquette => (u11 * u00)
                .abs()
                .max((u01 * u10).abs())
                .max((u00 * u01 * u10 * h * k).abs()),
            SchemeKind::AdlerStartsev => (u11 * (u10 + 1.0) * (u01 + 1.0) * u00)
                .abs()
                .max((u10 * u01).abs()),
            SchemeKind::Wave => (u11 * u00).abs().max((u01 * u10).abs()),
        };
        scale.max(f64::MIN_POSITIVE)
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeKind::InvariantExplicit { a } => write!(f, "invariant-explicit(a={a})"),
            SchemeKind::InvariantImplicit(c) => write!(
                f,
                "invariant-implicit(a={},b={},c={},d={})",
                c.a, c.b, c.c, c.d
            ),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    /// Parses a scheme name; invariant schemes get their default
    /// coefficients (`a = 1/2`, or `(1/2, 0, 1/2, 0)` for the implicit one).
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "standard" | "stand" => Ok(SchemeKind::Standard),
            "invariant-explicit" | "invariant" | "inv" => Ok(SchemeKind::INVARIANT),
            "invariant-implicit" => Ok(SchemeKind::InvariantImplicit(
                InvariantCoefficients::explicit(0.5),
            )),
            "rv" | "rebelo-valiquette" => Ok(SchemeKind::RebeloValiquette),
            "as" | "adler-startsev" => Ok(SchemeKind::AdlerStartsev),
            other => Err(Error::Config(format!("unknown scheme '{other}'"))),
        }
    }
}

pub fn step_standard(u00: f64, u01: f64, u10: f64, h: f64, k: f64) -> Result<f64> {
    let u00 = nonzero(u00, 0.0, "u00")?;
    Ok((u01 * u10 + h * k * u00 * u00 * u00) / u00)
}

pub fn residual_standard(s: &StencilSample) -> f64 {
    let u00 = s.u00();
    s.u11() * u00 - s.u01() * s.u10() - s.h10() * s.k01() * u00 * u00 * u00
}

/// The explicit invariant recursion (`b = d = 0`, `c = 1 − a`).
pub fn step_invariant_explicit(u00: f64, u01: f64, u10: f64, h: f64, k: f64, a: f64) -> Result<f64> {
    let u00 = nonzero(u00, 0.0, "u00")?;
    let p = u01 * u10;
    if !(p > 0.0) {
        return Err(Error::domain(format!(
            "invariant step needs u01·u10 > 0 (got {p:e})"
        )));
    }
    let root = h * k * p.sqrt();
    let den = (a - 1.0) * root + 1.0;
    if den.abs() <= f64::EPSILON {
        return Err(Error::Breakdown(format!(
            "denominator (a−1)hk√(u01u10) + 1 vanishes (a = {a}, hk√(u01u10) = {root:e})"
        )));
    }
    Ok(p * (a * root + 1.0) / (u00 * den))
}

/// `J₂ − J₁ − (a|J₁|^{3/2} + b J₁|J₂|^{1/2} + c|J₁|^{1/2} J₂ + d|J₂|^{3/2})`.
pub fn residual_invariant_implicit(s: &StencilSample, c: InvariantCoefficients) -> Result<f64> {
    let (a1, a2) = (j1(s)?, j2(s)?);
    Ok(invariant_residual_from_j(a1, a2, c))
}

fn invariant_residual_from_j(j1: f64, j2: f64, c: InvariantCoefficients) -> f64 {
    let (r1, r2) = (j1.abs().sqrt(), j2.abs().sqrt());
    j2 - j1 - (c.a * j1.abs() * r1 + c.b * j1 * r2 + c.c * r1 * j2 + c.d * j2.abs() * r2)
}

const NEWTON_MAX_ITER: usize = 60;
const BRACKET_EXPANSIONS: usize = 8;

/// Solves the general invariant scheme for `u11` by safeguarded Newton
/// iteration inside a sign-change bracket around the standard-scheme value.
pub fn step_invariant_implicit(
    u00: f64,
    u01: f64,
    u10: f64,
    h: f64,
    k: f64,
    coeffs: InvariantCoefficients,
) -> Result<f64> {
    coeffs.validate()?;
    let u00 = nonzero(u00, 0.0, "u00")?;
    let hk2 = nonzero((h * k).powi(2), 0.0, "h·k")?;
    let jj1 = u01 * u10 * hk2;
    let slope = u00 * hk2; // dJ₂/du11
    let r = |u11: f64| invariant_residual_from_j(jj1, u00 * u11 * hk2, coeffs);
    let dr = |u11: f64| {
        let jj2 = u00 * u11 * hk2;
        let r2 = jj2.abs().sqrt();
        let dsqrt = if r2 > 0.0 { 0.5 * jj2.signum() / r2 } else { 0.0 };
        slope
            * (1.0
                - coeffs.b * jj1 * dsqrt
                - coeffs.c * jj1.abs().sqrt()
                - coeffs.d * 1.5 * jj2.signum() * r2)
    };
    let tol = 1e-13 * jj1.abs().max(1.0);

    let guess = step_standard(u00, u01, u10, h, k)?;
    if guess == 0.0 {
        return Err(Error::Breakdown("standard-scheme guess is zero".into()));
    }
    let (mut lo, mut hi) = if guess > 0.0 {
        (guess / 4.0, 4.0 * guess)
    } else {
        (4.0 * guess, guess / 4.0)
    };
    let mut expansions = 0;
    while r(lo).signum() == r(hi).signum() {
        if expansions == BRACKET_EXPANSIONS {
            return Err(Error::Breakdown(format!(
                "no sign change of the invariant residual in [{lo:e}, {hi:e}]"
            )));
        }
        expansions += 1;
        if guess > 0.0 {
            lo /= 4.0;
            hi *= 4.0;
        } else {
            lo *= 4.0;
            hi /= 4.0;
        }
    }
    let r_lo = r(lo);
    let mut x = guess.clamp(lo, hi);
    let mut converged = false;
    for _ in 0..NEWTON_MAX_ITER {
        let fx = r(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == r_lo.signum() {
            lo = x;
        } else {
            hi = x;
        }
        let d = dr(x);
        let newton = x - fx / d;
        let next = if d != 0.0 && newton > lo.min(hi) && newton < lo.max(hi) {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let moved = (next - x).abs();
        x = next;
        // converged once inside tolerance and the iterate has settled
        if converged && moved <= 4.0 * f64::EPSILON * x.abs() {
            return Ok(x);
        }
        converged = fx.abs() <= tol && moved <= 1e-10 * x.abs();
    }
    let res = r(x);
    if res.abs() <= tol {
        Ok(x)
    } else {
        Err(Error::IterationLimit {
            iterations: NEWTON_MAX_ITER,
            residual: res,
        })
    }
}

pub fn step_rv(u00: f64, u01: f64, u10: f64, h: f64, k: f64) -> Result<f64> {
    let u00 = nonzero(u00, 0.0, "u00")?;
    Ok(u01 * u10 * (1.0 / u00 + h * k))
}

/// `u11 u00 − u10 u01 − u00 u01 u10 (x10 − x00)(y01 − y00)`.
pub fn residual_rv(s: &StencilSample) -> f64 {
    let [[u00, u01], [u10, u11]] = s.u;
    u11 * u00 - u10 * u01 - u00 * u01 * u10 * s.h10() * s.k01()
}

pub fn step_as(u00: f64, u01: f64, u10: f64) -> Result<f64> {
    let den = u00 * (1.0 + u10) * (1.0 + u01);
    if den == 0.0 || !den.is_finite() {
        return Err(Error::singular(format!(
            "Adler–Startsev step needs u00 ≠ 0, u01 ≠ −1, u10 ≠ −1 (u00={u00}, u01={u01}, u10={u10})"
        )));
    }
    Ok(u01 * u10 / den)
}

/// `u11 (u10 + 1)(u01 + 1) u00 − u10 u01`.
pub fn residual_as(s: &StencilSample) -> f64 {
    let [[u00, u01], [u10, u11]] = s.u;
    u11 * (u10 + 1.0) * (u01 + 1.0) * u00 - u10 * u01
}

fn step_wave(u00: f64, u01: f64, u10: f64) -> Result<f64> {
    let u00 = nonzero(u00, 0.0, "u00")?;
    Ok(u01 * u10 / u00)
}

/// A stencil of the Rebelo–Valiquette lattice together with the next
/// coordinates `x2`, `y2`, which the generalized symmetry needs for the
/// divided differences at `i = 1`, `j = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RvStencil {
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub u: [[f64; 2]; 2],
}

impl RvStencil {
    /// Fills `u11` from the scheme so the stencil lies on a solution.
    pub fn solved(x: [f64; 3], y: [f64; 3], u00: f64, u01: f64, u10: f64) -> Result<Self> {
        let u11 = step_rv(u00, u01, u10, x[1] - x[0], y[1] - y[0])?;
        Ok(RvStencil {
            x,
            y,
            u: [[u00, u01], [u10, u11]],
        })
    }

    pub fn stencil(&self) -> StencilSample {
        StencilSample::orthogonal([self.x[0], self.x[1]], [self.y[0], self.y[1]], self.u)
    }

    fn check(&self) -> Result<()> {
        for w in [self.x, self.y] {
            if w[0] == w[1] || w[1] == w[2] {
                return Err(Error::singular("coincident lattice coordinates"));
            }
        }
        Ok(())
    }
}

fn divided(f: &SmoothFn1D, a: f64, b: f64) -> f64 {
    (f.eval(b) - f.eval(a)) / (b - a)
}

/// Exact derivative of the Rebelo–Valiquette expression along a flow that
/// moves `x_i`, `y_j` and `u_ij` with velocities `dx[i]`, `dy[j]`,
/// `du[i][j]`. The expression is polynomial, so this is its linearization.
fn rv_linearized(s: &RvStencil, dx: [f64; 2], dy: [f64; 2], du: [[f64; 2]; 2]) -> f64 {
    let [[u00, u01], [u10, u11]] = s.u;
    let (h, k) = (s.x[1] - s.x[0], s.y[1] - s.y[0]);
    let (dh, dk) = (dx[1] - dx[0], dy[1] - dy[0]);
    let p = u00 * u01 * u10;
    let dp = du[0][0] * u01 * u10 + u00 * du[0][1] * u10 + u00 * u01 * du[1][0];
    du[1][1] * u00 + u11 * du[0][0] - du[1][0] * u01 - u10 * du[0][1] - (dp * h * k + p * (dh * k + h * dk))
}

/// Derivative of the Rebelo–Valiquette expression along the generalized
/// symmetry `f ∂x + g ∂y − u_ij (Δf_i + Δg_j) ∂u_ij`, where `Δf_i` is the
/// divided difference of `f` on `[x_i, x_{i+1}]`. Vanishes on solutions for
/// arbitrary `f`, `g`.
pub fn rv_symmetry_residual(f: &SmoothFn1D, g: &SmoothFn1D, s: &RvStencil) -> Result<f64> {
    s.check()?;
    let dfx = [divided(f, s.x[0], s.x[1]), divided(f, s.x[1], s.x[2])];
    let dgy = [divided(g, s.y[0], s.y[1]), divided(g, s.y[1], s.y[2])];
    let mut du = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            du[i][j] = -s.u[i][j] * (dfx[i] + dgy[j]);
        }
    }
    let dx = [f.eval(s.x[0]), f.eval(s.x[1])];
    let dy = [g.eval(s.y[0]), g.eval(s.y[1])];
    Ok(rv_linearized(s, dx, dy, du))
}

/// Derivative of the Rebelo–Valiquette expression along the point-prolonged
/// field `X^D(f) + Y^D(g)`, i.e. `−(f'(x_i) + g'(y_j)) u_ij ∂u_ij`.
pub fn rv_point_residual(f: &SmoothFn1D, g: &SmoothFn1D, s: &RvStencil) -> Result<f64> {
    s.check()?;
    let mut du = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            du[i][j] = -s.u[i][j] * (f.d1(s.x[i]) + g.d1(s.y[j]));
        }
    }
    let dx = [f.eval(s.x[0]), f.eval(s.x[1])];
    let dy = [g.eval(s.y[0]), g.eval(s.y[1])];
    Ok(rv_linearized(s, dx, dy, du))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_examples() {
        assert!((step_standard(1.0, 1.0, 1.0, 0.1, 0.1).unwrap() - 1.01).abs() < 1e-15);
        assert!((step_standard(2.0, 3.0, 4.0, 0.1, 0.1).unwrap() - 6.04).abs() < 1e-14);
        assert_eq!(step_standard(2.0, 3.0, 4.0, 0.0, 0.0).unwrap(), 6.0);
        assert!(step_standard(0.0, 1.0, 1.0, 0.1, 0.1).is_err());
    }

    #[test]
    fn explicit_invariant_examples() {
        let v = step_invariant_explicit(1.0, 1.0, 1.0, 0.1, 0.1, 0.5).unwrap();
        assert!((v - 1.005 / 0.995).abs() < 1e-15);
        assert!((v - 1.0100502513).abs() < 1e-10);
        assert_eq!(step_invariant_explicit(2.0, 3.0, 4.0, 0.0, 0.0, 0.5).unwrap(), 6.0);
    }

    #[test]
    fn explicit_invariant_errors() {
        assert!(matches!(
            step_invariant_explicit(1.0, -1.0, 1.0, 0.1, 0.1, 0.5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            step_invariant_explicit(1.0, 0.0, 1.0, 0.1, 0.1, 0.5),
            Err(Error::Domain(_))
        ));
        // (a − 1) h k √(u01 u10) = −1 with a = 0, hk = 1, u01 = u10 = 1
        assert!(matches!(
            step_invariant_explicit(1.0, 1.0, 1.0, 1.0, 1.0, 0.0),
            Err(Error::Breakdown(_))
        ));
    }

    #[test]
    fn implicit_matches_explicit_family() {
        for &(u00, u01, u10, h) in &[(1.0, 1.0, 1.0, 0.1), (0.7, 1.3, 0.4, 0.05), (2.0, 3.0, 5.0, 0.02)] {
            let e = step_invariant_explicit(u00, u01, u10, h, h, 0.5).unwrap();
            let i = step_invariant_implicit(u00, u01, u10, h, h, InvariantCoefficients::explicit(0.5)).unwrap();
            assert!((e - i).abs() <= 1e-12, "{e} vs {i}");
        }
    }

    #[test]
    fn implicit_a_only_closed_form() {
        let c = InvariantCoefficients::new(1.0, 0.0, 0.0, 0.0).unwrap();
        let v = step_invariant_implicit(1.0, 1.0, 1.0, 0.1, 0.1, c).unwrap();
        assert!((v - 1.01).abs() < 1e-13, "{v}");
    }

    #[test]
    fn implicit_general_coefficients_solve_residual() {
        let c = InvariantCoefficients::new(0.1, 0.2, 0.3, 0.4).unwrap();
        let (u00, u01, u10, h, k) = (0.9, 1.2, 1.1, 0.3, 0.2);
        let u11 = step_invariant_implicit(u00, u01, u10, h, k, c).unwrap();
        let s = StencilSample::uniform(0.0, 0.0, h, k, [[u00, u01], [u10, u11]]);
        let r = residual_invariant_implicit(&s, c).unwrap();
        assert!(r.abs() <= 1e-16, "{r}");
    }

    #[test]
    fn implicit_rejects_bad_coefficients() {
        assert!(InvariantCoefficients::new(0.5, 0.5, 0.5, 0.0).is_err());
        let bad = InvariantCoefficients { a: 1.0, b: 1.0, c: 0.0, d: 0.0 };
        assert!(step_invariant_implicit(1.0, 1.0, 1.0, 0.1, 0.1, bad).is_err());
    }

    #[test]
    fn implicit_residual_for_equal_j() {
        let s = StencilSample::uniform(0.0, 0.0, 1.0, 1.0, [[2.0, 1.0], [2.0, 1.0]]);
        let c = InvariantCoefficients::new(0.0, 0.0, 0.0, 1.0).unwrap();
        let j = j1(&s).unwrap();
        assert_eq!(j, j2(&s).unwrap());
        let r = residual_invariant_implicit(&s, c).unwrap();
        assert!((r + j.powf(1.5)).abs() < 1e-15);
    }

    #[test]
    fn rv_examples() {
        assert!((step_rv(1.0, 1.0, 1.0, 0.1, 0.1).unwrap() - 1.01).abs() < 1e-15);
        assert_eq!(step_rv(2.0, 3.0, 4.0, 0.0, 0.0).unwrap(), 6.0);
        assert_eq!(step_rv(2.0, 1.0, 1.0, 1.0, 1.0).unwrap(), 1.5);
        assert!(step_rv(0.0, 1.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn as_examples() {
        assert_eq!(step_as(1.0, 1.0, 1.0).unwrap(), 0.25);
        let u11 = step_as(-1.0, -0.25, -0.25).unwrap();
        assert!((u11 + 1.0 / 9.0).abs() < 1e-16);
        let s = StencilSample::uniform(0.0, 0.0, 1.0, 1.0, [[-1.0, -0.25], [-0.25, u11]]);
        assert!(residual_as(&s).abs() < 1e-16);
        assert_eq!(step_as(1.0, 0.0, 3.0).unwrap(), 0.0);
        assert_eq!(step_as(1.0, 3.0, 0.0).unwrap(), 0.0);
        assert!(step_as(1.0, -1.0, 3.0).is_err());
        assert!(step_as(0.0, 1.0, 3.0).is_err());
    }

    #[test]
    fn steps_invert_their_residuals() {
        let schemes = [
            SchemeKind::Standard,
            SchemeKind::INVARIANT,
            SchemeKind::InvariantExplicit { a: 0.3 },
            SchemeKind::InvariantImplicit(InvariantCoefficients::new(0.25, 0.25, 0.25, 0.25).unwrap()),
            SchemeKind::RebeloValiquette,
            SchemeKind::AdlerStartsev,
            SchemeKind::Wave,
        ];
        for scheme in schemes {
            for &(u00, u01, u10, h, k) in &[(1.0, 1.0, 1.0, 0.1, 0.1), (0.6, 1.7, 0.9, 0.05, 0.08)] {
                let u11 = scheme.step(u00, u01, u10, h, k).unwrap();
                let s = StencilSample::uniform(0.0, 0.0, h, k, [[u00, u01], [u10, u11]]);
                let r = scheme.residual(&s).unwrap();
                assert!(r.abs() <= 1e-13, "{scheme}: {r}");
            }
        }
    }

    #[test]
    fn scheme_names_parse() {
        assert_eq!("standard".parse::<SchemeKind>().unwrap(), SchemeKind::Standard);
        assert_eq!("invariant-explicit".parse::<SchemeKind>().unwrap(), SchemeKind::INVARIANT);
        assert_eq!("rv".parse::<SchemeKind>().unwrap(), SchemeKind::RebeloValiquette);
        assert_eq!("as".parse::<SchemeKind>().unwrap(), SchemeKind::AdlerStartsev);
        assert!("bogus".parse::<SchemeKind>().is_err());
    }

    #[test]
    fn rv_translations_are_symmetries() {
        let s = RvStencil::solved([0.1, 0.4, 0.6], [-0.3, 0.2, 0.5], 1.2, 0.8, 1.5).unwrap();
        let r = rv_symmetry_residual(&SmoothFn1D::constant(1.0), &SmoothFn1D::constant(-2.0), &s).unwrap();
        assert!(r.abs() < 1e-12);
    }

    #[test]
    fn rv_generalized_virasoro_field() {
        let s = RvStencil::solved([0.1, 0.4, 0.6], [-0.3, 0.2, 0.5], 1.2, 0.8, 1.5).unwrap();
        let r = rv_symmetry_residual(&SmoothFn1D::monomial(3), &SmoothFn1D::zero(), &s).unwrap();
        assert!(r.abs() < 1e-6, "{r}");
    }

    #[test]
    fn rv_point_field_is_not_a_symmetry() {
        let s = RvStencil::solved([0.1, 0.4, 0.6], [-0.3, 0.2, 0.5], 1.2, 0.8, 1.5).unwrap();
        let r = rv_point_residual(&SmoothFn1D::monomial(2), &SmoothFn1D::zero(), &s).unwrap();
        let [[u00, u01], [u10, _]] = s.u;
        let (h, k) = (s.x[1] - s.x[0], s.y[1] - s.y[0]);
        let magnitude = u00 * u01 * u10 * h * h * k;
        assert!((r.abs() - magnitude).abs() <= 1e-9 * magnitude, "{r} vs {magnitude}");
        assert!((r + magnitude).abs() <= 1e-9 * magnitude);
    }

    #[test]
    fn linearization_matches_numerical_flow() {
        use crate::symmetry::{flow_derivative, DiscreteVectorField};
        let s = RvStencil::solved([0.1, 0.4, 0.6], [-0.3, 0.2, 0.5], 1.2, 0.8, 1.5).unwrap();
        let (f, g) = (SmoothFn1D::polynomial(vec![0.3, -0.2, 0.7, 0.4]), SmoothFn1D::monomial(2));
        let field = DiscreteVectorField::new(Some(f.clone()), Some(g.clone()));
        let numeric = flow_derivative(&field, |t| Ok(residual_rv(t)), &s.stencil()).unwrap();
        let exact = rv_point_residual(&f, &g, &s).unwrap();
        assert!((numeric - exact).abs() < 1e-9, "{numeric} vs {exact}");
    }

    #[test]
    fn rv_rejects_coincident_coordinates() {
        let s = RvStencil {
            x: [0.0, 0.5, 0.5],
            y: [0.0, 1.0, 2.0],
            u: [[1.0; 2]; 2],
        };
        assert!(rv_symmetry_residual(&SmoothFn1D::monomial(2), &SmoothFn1D::zero(), &s).is_err());
    }
}
