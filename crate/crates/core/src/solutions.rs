//! Closed-form solutions used as oracles, and the continuous residuals.
//!
//! All Liouville solutions here are instances of the general solution
//! `u = 2 φ₁'(x) φ₂'(y) / (φ₁(x) + φ₂(y))²`; their jets come from that
//! formula, while `eval` keeps each closed form as printed.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::Jet2;
use crate::lattice::OrthogonalLattice;
use crate::moebius::MoebiusMap;
use crate::smooth::SmoothFn1D;
use crate::symmetry::{transport_jet, weak_factors};

/// `u u_xy − u_x u_y − u³`.
pub fn residual_algebraic_liouville(j: &Jet2) -> f64 {
    j.u * j.uxy - j.ux * j.uy - j.u * j.u * j.u
}

/// `u u_xy − u_x u_y`.
pub fn residual_wave(j: &Jet2) -> f64 {
    j.u * j.uxy - j.ux * j.uy
}

type EvalFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
type JetFn = Arc<dyn Fn(f64, f64) -> Jet2 + Send + Sync>;

/// A closed-form field with analytic second-order jet.
#[derive(Clone)]
pub struct ExactSolution {
    name: String,
    eval: EvalFn,
    jet: JetFn,
}

impl fmt::Debug for ExactSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExactSolution").field("name", &self.name).finish()
    }
}

/// Summary of a coarse positivity scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityScan {
    pub positive_fraction: f64,
    pub min: f64,
    pub max: f64,
}

impl PositivityScan {
    pub fn all_positive(&self) -> bool {
        self.positive_fraction == 1.0
    }
}

impl ExactSolution {
    pub fn from_parts<E, J>(name: impl Into<String>, eval: E, jet: J) -> Self
    where
        E: Fn(f64, f64) -> f64 + Send + Sync + 'static,
        J: Fn(f64, f64) -> Jet2 + Send + Sync + 'static,
    {
        ExactSolution {
            name: name.into(),
            eval: Arc::new(eval),
            jet: Arc::new(jet),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Raw value; NaN or infinite outside the domain.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.eval)(x, y)
    }

    pub fn try_eval(&self, x: f64, y: f64) -> Result<f64> {
        let v = self.eval(x, y);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::domain(format!("{} undefined at ({x}, {y})", self.name)))
        }
    }

    pub fn jet(&self, x: f64, y: f64) -> Jet2 {
        (self.jet)(x, y)
    }

    pub fn try_jet(&self, x: f64, y: f64) -> Result<Jet2> {
        let j = self.jet(x, y);
        if j.is_finite() {
            Ok(j)
        } else {
            Err(Error::domain(format!("{} jet undefined at ({x}, {y})", self.name)))
        }
    }

    /// Scans an `n × n` grid over `[x0, x1] × [y0, y1]`.
    pub fn positivity_scan(&self, x: [f64; 2], y: [f64; 2], n: usize) -> PositivityScan {
        let n = n.max(2);
        let (mut pos, mut total) = (0usize, 0usize);
        let (mut min, mut max) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..n {
            let xv = x[0] + (x[1] - x[0]) * i as f64 / (n - 1) as f64;
            for j in 0..n {
                let yv = y[0] + (y[1] - y[0]) * j as f64 / (n - 1) as f64;
                let v = self.eval(xv, yv);
                total += 1;
                if v.is_finite() && v > 0.0 {
                    pos += 1;
                }
                if v.is_finite() {
                    min = min.min(v);
                    max = max.max(v);
                }
            }
        }
        PositivityScan {
            positive_fraction: pos as f64 / total as f64,
            min,
            max,
        }
    }

    /// Positivity scan at the nodes of a lattice.
    pub fn positivity_on(&self, lat: &OrthogonalLattice) -> PositivityScan {
        let (mut pos, mut min, mut max) = (0usize, f64::INFINITY, f64::NEG_INFINITY);
        for &x in lat.xs() {
            for &y in lat.ys() {
                let v = self.eval(x, y);
                if v.is_finite() {
                    min = min.min(v);
                    max = max.max(v);
                    if v > 0.0 {
                        pos += 1;
                    }
                }
            }
        }
        PositivityScan {
            positive_fraction: pos as f64 / lat.len() as f64,
            min,
            max,
        }
    }

    /// The image under `(x, y, u) ↦ (M(x), N(y), u / (M'(x) N'(y)))`, as a
    /// function of the new coordinates.
    pub fn transported(&self, mx: MoebiusMap, my: MoebiusMap) -> ExactSolution {
        let (ix, iy) = (mx.inverse(), my.inverse());
        let src = self.clone();
        let src_jet = self.clone();
        ExactSolution::from_parts(
            format!("{}∘moebius", self.name),
            move |xt, yt| {
                let pre = (|| -> Result<f64> {
                    let (x, y) = (ix.apply(xt)?, iy.apply(yt)?);
                    Ok(src.eval(x, y) * ix.deriv(xt)? * iy.deriv(yt)?)
                })();
                pre.unwrap_or(f64::NAN)
            },
            move |xt, yt| {
                let pre = (|| -> Result<Jet2> {
                    let (x, y) = (ix.apply(xt)?, iy.apply(yt)?);
                    transport_jet(&ix, &iy, xt, yt, &src_jet.jet(x, y))
                })();
                pre.unwrap_or(Jet2::constant(xt, yt, f64::NAN))
            },
        )
    }
}

/// Jet of `2 φ₁' φ₂' / (φ₁ + φ₂)²` from `[φ, φ', φ'', φ''']` of each factor.
fn general_jet(x: f64, y: f64, p: [f64; 4], q: [f64; 4]) -> Jet2 {
    let s = p[0] + q[0];
    let (s2, s3, s4) = (s * s, s * s * s, s * s * s * s);
    let (p1, p2, p3) = (p[1], p[2], p[3]);
    let (q1, q2, q3) = (q[1], q[2], q[3]);
    let ax = p2 / s2 - 2.0 * p1 * p1 / s3;
    let ay = q2 / s2 - 2.0 * q1 * q1 / s3;
    Jet2 {
        x,
        y,
        u: 2.0 * p1 * q1 / s2,
        ux: 2.0 * q1 * ax,
        uy: 2.0 * p1 * ay,
        uxx: 2.0 * q1 * (p3 / s2 - 6.0 * p1 * p2 / s3 + 6.0 * p1 * p1 * p1 / s4),
        uyy: 2.0 * p1 * (q3 / s2 - 6.0 * q1 * q2 / s3 + 6.0 * q1 * q1 * q1 / s4),
        uxy: 2.0 * q2 * ax + 2.0 * q1 * (-2.0 * p2 * q1 / s3 + 6.0 * p1 * p1 * q1 / s4),
    }
}

fn general_parts(phi1: SmoothFn1D, phi2: SmoothFn1D) -> (EvalFn, JetFn) {
    let (a, b) = (phi1.clone(), phi2.clone());
    let eval: EvalFn = Arc::new(move |x, y| {
        let s = a.eval(x) + b.eval(y);
        2.0 * a.d1(x) * b.d1(y) / (s * s)
    });
    let jet: JetFn = Arc::new(move |x, y| general_jet(x, y, phi1.derivatives(x), phi2.derivatives(y)));
    (eval, jet)
}

/// `u = 2 φ₁'(x) φ₂'(y) / (φ₁(x) + φ₂(y))²`. Both functions need third
/// derivatives for the jet.
pub fn make_general(phi1: SmoothFn1D, phi2: SmoothFn1D) -> Result<ExactSolution> {
    if phi1.order() < 3 || phi2.order() < 3 {
        return Err(Error::invalid("general solution needs φ₁, φ₂ with three derivatives"));
    }
    let (eval, jet) = general_parts(phi1, phi2);
    Ok(ExactSolution {
        name: "general".into(),
        eval,
        jet,
    })
}

/// `2βγδ / ((β²x² + 1)(δ²y² + 1)(atan(βx) + γ atan(δy) + α)²)`.
pub fn make_s1(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<ExactSolution> {
    if ![alpha, beta, gamma, delta].iter().all(|v| v.is_finite()) {
        return Err(Error::invalid("s₁ parameters must be finite"));
    }
    if !(beta * gamma * delta > 0.0) {
        return Err(Error::domain("s₁ needs βγδ > 0"));
    }
    let phi1 = SmoothFn1D::arctan(1.0, beta, 0.0);
    let phi2 = SmoothFn1D::arctan(gamma, delta, alpha);
    let (_, jet) = general_parts(phi1, phi2);
    Ok(ExactSolution {
        name: "s1".into(),
        eval: Arc::new(move |x, y| {
            let base = (beta * x).atan() + gamma * (delta * y).atan() + alpha;
            2.0 * beta * gamma * delta
                / ((beta * beta * x * x + 1.0) * (delta * delta * y * y + 1.0) * base * base)
        }),
        jet,
    })
}

/// Largest `|s (x + y)|` evaluated before overflow is reported.
pub const S2_EXP_LIMIT: f64 = 700.0;

/// `2 A s² e^{s(x+y)} / (A e^{sy} + e^{sx})²`.
pub fn make_s2(a: f64, s: f64) -> Result<ExactSolution> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain("s₂ needs A > 0"));
    }
    if s == 0.0 || !s.is_finite() {
        return Err(Error::domain("s₂ needs s ≠ 0"));
    }
    let (_, jet) = general_parts(SmoothFn1D::exp(1.0, s), SmoothFn1D::exp(a, s));
    Ok(ExactSolution {
        name: "s2".into(),
        eval: Arc::new(move |x, y| {
            if (s * (x + y)).abs() > S2_EXP_LIMIT {
                return f64::NAN;
            }
            let den = a * (s * y).exp() + (s * x).exp();
            2.0 * a * s * s * (s * (x + y)).exp() / (den * den)
        }),
        jet: Arc::new(move |x, y| {
            if (s * (x + y)).abs() > S2_EXP_LIMIT {
                return Jet2::constant(x, y, f64::NAN);
            }
            jet(x, y)
        }),
    })
}

/// The third closed form, with `X = x + 1/2`:
/// `8(1 − 4X)(1 − 4y) e^{−4X² + 2X − 4y² + 2y} / (e^{2X − 4X²} + e^{2y − 4y²} + 1)²`.
///
/// Positive only where `(1 − 4X)(1 − 4y) > 0`, i.e. away from the lines
/// `x = −1/4` and `y = 1/4`.
pub fn make_s3() -> ExactSolution {
    // 2X − 4X² = −2x − 4x²
    let phi1 = SmoothFn1D::exp_quadratic(0.0, -2.0, -4.0);
    let phi2 = SmoothFn1D::exp_quadratic(0.0, 2.0, -4.0).affine(1.0, 1.0);
    let (_, jet) = general_parts(phi1, phi2);
    ExactSolution {
        name: "s3".into(),
        eval: Arc::new(|x, y| {
            let xx = x + 0.5;
            let ex = (2.0 * xx - 4.0 * xx * xx).exp();
            let ey = (2.0 * y - 4.0 * y * y).exp();
            let den = ex + ey + 1.0;
            8.0 * (1.0 - 4.0 * xx) * (1.0 - 4.0 * y) * (-4.0 * xx * xx + 2.0 * xx - 4.0 * y * y + 2.0 * y).exp()
                / (den * den)
        }),
        jet,
    }
}

/// Separable `u = p(x) q(y)`: a solution of the wave equation, not of the
/// Liouville equation.
pub fn make_separable(p: SmoothFn1D, q: SmoothFn1D) -> ExactSolution {
    let (p2, q2) = (p.clone(), q.clone());
    ExactSolution::from_parts(
        "separable",
        move |x, y| p.eval(x) * q.eval(y),
        move |x, y| {
            let (a, b) = (p2.derivatives(x), q2.derivatives(y));
            Jet2 {
                x,
                y,
                u: a[0] * b[0],
                ux: a[1] * b[0],
                uy: a[0] * b[1],
                uxx: a[2] * b[0],
                uxy: a[1] * b[1],
                uyy: a[0] * b[2],
            }
        },
    )
}

/// Constant field `u ≡ value`.
pub fn make_constant(value: f64) -> ExactSolution {
    ExactSolution::from_parts("constant", move |_, _| value, move |x, y| Jet2::constant(x, y, value))
}

/// Discrete general solution of the Adler–Startsev equation:
/// `u_ij = −(c_{i+1} − c_i)(k_{j+1} − k_j) / ((c_{i+1} + k_j)(c_i + k_{j+1}))`,
/// indexed `[i][j]` with `i < c.len() − 1`, `j < k.len() − 1`.
pub fn as_exact(c: &[f64], kseq: &[f64]) -> Result<Vec<Vec<f64>>> {
    if c.len() < 2 || kseq.len() < 2 {
        return Err(Error::invalid("as_exact needs sequences of length ≥ 2"));
    }
    let mut out = Vec::with_capacity(c.len() - 1);
    for i in 0..c.len() - 1 {
        let mut row = Vec::with_capacity(kseq.len() - 1);
        for j in 0..kseq.len() - 1 {
            let den = (c[i + 1] + kseq[j]) * (c[i] + kseq[j + 1]);
            if den == 0.0 || !den.is_finite() {
                return Err(Error::singular(format!("zero denominator at ({i}, {j})")));
            }
            row.push(-(c[i + 1] - c[i]) * (kseq[j + 1] - kseq[j]) / den);
        }
        out.push(row);
    }
    Ok(out)
}

/// `u = (a x y + b x + c y + d)^{−2}`, on which both factors
/// `2u u_xx − 3u_x²` and `2u u_yy − 3u_y²` vanish.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakSolution {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

pub fn weak_solution(a: f64, b: f64, c: f64, d: f64) -> Result<WeakSolution> {
    if ![a, b, c, d].iter().all(|v| v.is_finite()) {
        return Err(Error::invalid("weak solution parameters must be finite"));
    }
    if a == 0.0 && b == 0.0 && c == 0.0 && d == 0.0 {
        return Err(Error::singular("weak solution base vanishes identically"));
    }
    Ok(WeakSolution { a, b, c, d })
}

impl WeakSolution {
    pub fn base(&self, x: f64, y: f64) -> f64 {
        self.a * x * y + self.b * x + self.c * y + self.d
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        let b = self.base(x, y);
        if b == 0.0 {
            return Err(Error::domain(format!("weak solution base vanishes at ({x}, {y})")));
        }
        Ok(1.0 / (b * b))
    }

    pub fn jet(&self, x: f64, y: f64) -> Result<Jet2> {
        let base = self.base(x, y);
        if base == 0.0 {
            return Err(Error::domain(format!("weak solution base vanishes at ({x}, {y})")));
        }
        let bx = self.a * y + self.b;
        let by = self.a * x + self.c;
        let (i2, i3, i4) = (base.powi(-2), base.powi(-3), base.powi(-4));
        Ok(Jet2 {
            x,
            y,
            u: i2,
            ux: -2.0 * i3 * bx,
            uy: -2.0 * i3 * by,
            uxx: 6.0 * i4 * bx * bx,
            uxy: 6.0 * i4 * bx * by - 2.0 * self.a * i3,
            uyy: 6.0 * i4 * by * by,
        })
    }

    /// `(2u u_xx − 3u_x², 2u u_yy − 3u_y²)`.
    pub fn residuals(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        Ok(weak_factors(&self.jet(x, y)?))
    }
}
