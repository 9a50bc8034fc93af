//! Symmetry algebra of the algebraic Liouville equation.
//!
//! The generators are `X(f) = f ∂x − f' u ∂u` and `Y(g) = g ∂y − g' u ∂u`
//! for smooth `f(x)`, `g(y)`. Quadratic `f`, `g` span the finite subalgebra
//! `sl(2) ⊕ sl(2)`, which integrates to pairs of Möbius maps acting on `u`
//! as a density: `ũ = u / (M'(x) N'(y))`.
//!
//! Three realizations live here: the prolongation to the four points of a
//! stencil, the second-order prolongation to the jet space, and the finite
//! group action. [`flow_derivative`] differentiates any stencil functional
//! along a prolonged field numerically.

use crate::error::{nonzero, Error, Result};
use crate::jet::Jet2;
use crate::lattice::StencilSample;
use crate::moebius::MoebiusMap;
use crate::smooth::{poly_deriv, poly_mul, SmoothFn1D};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// `X(f) + Y(g)` prolonged to the four corners of a stencil.
#[derive(Debug, Clone, Default)]
pub struct DiscreteVectorField {
    pub fx: Option<SmoothFn1D>,
    pub gy: Option<SmoothFn1D>,
}

impl DiscreteVectorField {
    pub fn new(fx: Option<SmoothFn1D>, gy: Option<SmoothFn1D>) -> Self {
        DiscreteVectorField { fx, gy }
    }

    pub fn x(f: SmoothFn1D) -> Self {
        Self::new(Some(f), None)
    }

    pub fn y(g: SmoothFn1D) -> Self {
        Self::new(None, Some(g))
    }

    pub fn along(axis: Axis, f: SmoothFn1D) -> Self {
        match axis {
            Axis::X => Self::x(f),
            Axis::Y => Self::y(f),
        }
    }

    /// `(ξ, η, φ)` at one point.
    pub fn at(&self, x: f64, y: f64, u: f64) -> (f64, f64, f64) {
        let (xi, fp) = self
            .fx
            .as_ref()
            .map_or((0.0, 0.0), |f| (f.eval(x), f.d1(x)));
        let (eta, gp) = self
            .gy
            .as_ref()
            .map_or((0.0, 0.0), |g| (g.eval(y), g.d1(y)));
        (xi, eta, -(fp + gp) * u)
    }
}

/// Components of a prolonged field at the four stencil corners.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldComponents {
    pub xi: [[f64; 2]; 2],
    pub eta: [[f64; 2]; 2],
    pub phi: [[f64; 2]; 2],
}

pub fn vf_components(field: &DiscreteVectorField, s: &StencilSample) -> FieldComponents {
    let mut c = FieldComponents {
        xi: [[0.0; 2]; 2],
        eta: [[0.0; 2]; 2],
        phi: [[0.0; 2]; 2],
    };
    for i in 0..2 {
        for j in 0..2 {
            let (xi, eta, phi) = field.at(s.x[i][j], s.y[i][j], s.u[i][j]);
            c.xi[i][j] = xi;
            c.eta[i][j] = eta;
            c.phi[i][j] = phi;
        }
    }
    c
}

/// The function `h` with `[X(f), X(g)] = X(h)`, i.e. `h = f g' − g f'`.
///
/// Polynomial inputs give an exact polynomial. Otherwise the result carries
/// one derivative fewer than its least smooth input.
pub fn lie_bracket(f: &SmoothFn1D, g: &SmoothFn1D) -> SmoothFn1D {
    if let (Some(a), Some(b)) = (f.coefficients(), g.coefficients()) {
        let left = poly_mul(a, &poly_deriv(b));
        let right = poly_mul(b, &poly_deriv(a));
        let n = left.len().max(right.len());
        let c: Vec<f64> = (0..n)
            .map(|i| left.get(i).unwrap_or(&0.0) - right.get(i).unwrap_or(&0.0))
            .collect();
        return SmoothFn1D::polynomial(c);
    }
    let (f, g) = (f.clone(), g.clone());
    let order = f.order().min(g.order()).saturating_sub(1);
    SmoothFn1D::from_derivatives(order, move |x| {
        let a = f.derivatives(x);
        let b = g.derivatives(x);
        [
            a[0] * b[1] - b[0] * a[1],
            a[0] * b[2] - b[0] * a[2],
            a[1] * b[2] + a[0] * b[3] - b[1] * a[2] - b[0] * a[3],
            f64::NAN,
        ]
    })
}

/// Coefficients of a prolonged vector field on the second-order jet space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct JetVectorCoefficients {
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub ux: f64,
    pub uy: f64,
    pub uxx: f64,
    pub uxy: f64,
    pub uyy: f64,
}

impl JetVectorCoefficients {
    /// Action on a function whose partial derivatives are `grad`.
    pub fn apply(&self, grad: &JetVectorCoefficients) -> f64 {
        self.x * grad.x
            + self.y * grad.y
            + self.u * grad.u
            + self.ux * grad.ux
            + self.uy * grad.uy
            + self.uxx * grad.uxx
            + self.uxy * grad.uxy
            + self.uyy * grad.uyy
    }

    fn transposed(&self) -> Self {
        JetVectorCoefficients {
            x: self.y,
            y: self.x,
            u: self.u,
            ux: self.uy,
            uy: self.ux,
            uxx: self.uyy,
            uxy: self.uxy,
            uyy: self.uxx,
        }
    }
}

/// `pr² X(f)` (axis x) or `pr² Y(f)` (axis y) evaluated at `jet`.
pub fn prolong2_apply(f: &SmoothFn1D, axis: Axis, jet: &Jet2) -> JetVectorCoefficients {
    match axis {
        Axis::X => prolong2_x(f, jet),
        Axis::Y => prolong2_x(f, &jet.transposed()).transposed(),
    }
}

fn prolong2_x(f: &SmoothFn1D, j: &Jet2) -> JetVectorCoefficients {
    let [f0, f1, f2, f3] = f.derivatives(j.x);
    JetVectorCoefficients {
        x: f0,
        y: 0.0,
        u: -f1 * j.u,
        ux: -2.0 * f1 * j.ux - f2 * j.u,
        uy: -f1 * j.uy,
        uxx: -3.0 * f1 * j.uxx - 3.0 * f2 * j.ux - f3 * j.u,
        uxy: -2.0 * f1 * j.uxy - f2 * j.uy,
        uyy: -f1 * j.uyy,
    }
}

/// `I₁ = (u u_xy − u_x u_y) / u³`.
pub fn eval_i1(jet: &Jet2) -> Result<f64> {
    let u = nonzero(jet.u, 0.0, "u")?;
    Ok((u * jet.uxy - jet.ux * jet.uy) / (u * u * u))
}

/// `I₂ = (2u u_xx − 3u_x²)(2u u_yy − 3u_y²) / u⁶`.
pub fn eval_i2(jet: &Jet2) -> Result<f64> {
    let u = nonzero(jet.u, 0.0, "u")?;
    let (a, b) = weak_factors(jet);
    Ok(a * b / u.powi(6))
}

/// The two factors `2u u_xx − 3u_x²` and `2u u_yy − 3u_y²` of the `I₂`
/// numerator.
pub fn weak_factors(jet: &Jet2) -> (f64, f64) {
    (
        2.0 * jet.u * jet.uxx - 3.0 * jet.ux * jet.ux,
        2.0 * jet.u * jet.uyy - 3.0 * jet.uy * jet.uy,
    )
}

fn i1_gradient(j: &Jet2) -> Result<JetVectorCoefficients> {
    let u = nonzero(j.u, 0.0, "u")?;
    let u3 = u * u * u;
    let num = u * j.uxy - j.ux * j.uy;
    Ok(JetVectorCoefficients {
        u: j.uxy / u3 - 3.0 * num / (u3 * u),
        ux: -j.uy / u3,
        uy: -j.ux / u3,
        uxy: 1.0 / (u * u),
        ..Default::default()
    })
}

fn i2_gradient(j: &Jet2) -> Result<JetVectorCoefficients> {
    let u = nonzero(j.u, 0.0, "u")?;
    let (a, b) = weak_factors(j);
    let u6 = u.powi(6);
    Ok(JetVectorCoefficients {
        u: (2.0 * j.uxx * b + 2.0 * j.uyy * a) / u6 - 6.0 * a * b / (u6 * u),
        ux: -6.0 * j.ux * b / u6,
        uy: -6.0 * j.uy * a / u6,
        uxx: 2.0 * u * b / u6,
        uyy: 2.0 * u * a / u6,
        ..Default::default()
    })
}

/// `pr² X(f) · I₁` (or `Y` for axis y); zero for every `f`.
pub fn prolonged_action_i1(f: &SmoothFn1D, axis: Axis, jet: &Jet2) -> Result<f64> {
    Ok(prolong2_apply(f, axis, jet).apply(&i1_gradient(jet)?))
}

/// `pr² X(f) · I₂` computed from the prolonged field and the gradient of
/// `I₂`. Compare with [`predicted_i2_action`].
pub fn invariance_residual_i2(f: &SmoothFn1D, axis: Axis, jet: &Jet2) -> Result<f64> {
    Ok(prolong2_apply(f, axis, jet).apply(&i2_gradient(jet)?))
}

/// Closed form of the `I₂` action: `2 f''' (3u_y² − 2u u_yy) / u⁴` for
/// axis x and the mirrored expression for axis y.
pub fn predicted_i2_action(f: &SmoothFn1D, axis: Axis, jet: &Jet2) -> Result<f64> {
    let u = nonzero(jet.u, 0.0, "u")?;
    let j = match axis {
        Axis::X => *jet,
        Axis::Y => jet.transposed(),
    };
    let f3 = f.d3(j.x);
    Ok(2.0 * f3 * (3.0 * j.uy * j.uy - 2.0 * u * j.uyy) / u.powi(4))
}

/// Finite action of a Möbius pair on one point of `(x, y, u)` space.
pub fn group_action_point(
    mx: &MoebiusMap,
    my: &MoebiusMap,
    x: f64,
    y: f64,
    u: f64,
) -> Result<(f64, f64, f64)> {
    let (xt, dx) = (mx.apply(x)?, mx.deriv(x)?);
    let (yt, dy) = (my.apply(y)?, my.deriv(y)?);
    Ok((xt, yt, u / (dx * dy)))
}

/// Applies [`group_action_point`] to every corner.
pub fn act_on_stencil(mx: &MoebiusMap, my: &MoebiusMap, s: &StencilSample) -> Result<StencilSample> {
    s.try_map_corners(|x, y, u| group_action_point(mx, my, x, y, u))
}

/// The image of a solution `u(x, y)` under a Möbius pair, as a function of
/// the transformed coordinates.
pub fn transport_solution<F>(
    mx: MoebiusMap,
    my: MoebiusMap,
    u: F,
) -> impl Fn(f64, f64) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    let (ix, iy) = (mx.inverse(), my.inverse());
    move |xt, yt| {
        let x = ix.apply(xt)?;
        let y = iy.apply(yt)?;
        Ok(u(x, y) * ix.deriv(xt)? * iy.deriv(yt)?)
    }
}

/// Transported jet at `(x̃, ỹ)` given the source jet at the preimage point
/// and the inverse maps `N = M⁻¹`, `K`. Chain rule on `ũ = u(N, K) N' K'`.
pub fn transport_jet(ix: &MoebiusMap, iy: &MoebiusMap, xt: f64, yt: f64, src: &Jet2) -> Result<Jet2> {
    let [_, a1, a2, a3] = ix.derivatives(xt)?;
    let [_, b1, b2, b3] = iy.derivatives(yt)?;
    let j = src;
    Ok(Jet2 {
        x: xt,
        y: yt,
        u: j.u * a1 * b1,
        ux: b1 * (j.ux * a1 * a1 + j.u * a2),
        uy: a1 * (j.uy * b1 * b1 + j.u * b2),
        uxx: b1 * (j.uxx * a1 * a1 * a1 + 3.0 * j.ux * a1 * a2 + j.u * a3),
        uyy: a1 * (j.uyy * b1 * b1 * b1 + 3.0 * j.uy * b1 * b2 + j.u * b3),
        uxy: j.uxy * a1 * a1 * b1 * b1 + j.ux * a1 * a1 * b2 + j.uy * a2 * b1 * b1 + j.u * a2 * b2,
    })
}

/// Base step of the ε-flow difference quotients.
pub const FLOW_STEP: f64 = 1e-4;

/// `d/dε g(ε)` at zero from central differences at steps `FLOW_STEP` and
/// `FLOW_STEP/2`, combined by Richardson extrapolation (fourth order).
pub fn richardson_derivative<G>(mut g: G) -> Result<f64>
where
    G: FnMut(f64) -> Result<f64>,
{
    let mut central = |e: f64| -> Result<f64> {
        let (p, m) = (g(e)?, g(-e)?);
        if !(p.is_finite() && m.is_finite()) {
            return Err(Error::domain("functional undefined along the flow"));
        }
        Ok((p - m) / (2.0 * e))
    };
    let coarse = central(FLOW_STEP)?;
    let fine = central(FLOW_STEP / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Moves every stencil coordinate and value by `eps` times its component.
pub fn displace(s: &StencilSample, c: &FieldComponents, eps: f64) -> StencilSample {
    let mut out = *s;
    for i in 0..2 {
        for j in 0..2 {
            out.x[i][j] += eps * c.xi[i][j];
            out.y[i][j] += eps * c.eta[i][j];
            out.u[i][j] += eps * c.phi[i][j];
        }
    }
    out
}

/// Derivative of the functional `F` along the flow of the prolonged field at
/// `s`, i.e. `pr Z · F`.
pub fn flow_derivative<F>(field: &DiscreteVectorField, f: F, s: &StencilSample) -> Result<f64>
where
    F: Fn(&StencilSample) -> Result<f64>,
{
    let c = vf_components(field, s);
    richardson_derivative(|eps| f(&displace(s, &c, eps)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{j1, xi1};

    fn unit_stencil() -> StencilSample {
        StencilSample::uniform(0.3, -0.2, 0.5, 0.7, [[1.0, 1.3], [0.8, 1.1]])
    }

    #[test]
    fn components_of_translation_and_dilation() {
        let s = unit_stencil();
        let c = vf_components(&DiscreteVectorField::x(SmoothFn1D::constant(1.0)), &s);
        assert_eq!(c.xi, [[1.0; 2]; 2]);
        assert_eq!(c.phi, [[0.0; 2]; 2]);

        let mut s = unit_stencil();
        s.x[0][0] = 2.0;
        s.u[0][0] = 5.0;
        let c = vf_components(&DiscreteVectorField::x(SmoothFn1D::monomial(1)), &s);
        assert_eq!((c.xi[0][0], c.phi[0][0]), (2.0, -5.0));

        s.x[1][0] = 1.0;
        s.u[1][0] = 4.0;
        let c = vf_components(&DiscreteVectorField::x(SmoothFn1D::monomial(3)), &s);
        assert_eq!((c.xi[1][0], c.phi[1][0]), (1.0, -12.0));
    }

    #[test]
    fn bracket_examples() {
        let b = lie_bracket(&SmoothFn1D::monomial(1), &SmoothFn1D::monomial(2));
        assert_eq!(b.eval(2.0), 4.0);
        let f = SmoothFn1D::exp(1.0, 0.7);
        let z = lie_bracket(&f, &f);
        for x in [-1.0, 0.0, 2.0] {
            assert_eq!(z.eval(x), 0.0);
            assert_eq!(z.d1(x), 0.0);
        }
        let b = lie_bracket(&SmoothFn1D::constant(1.0), &SmoothFn1D::monomial(1));
        assert_eq!(b.eval(5.0), 1.0);
    }

    #[test]
    fn bracket_closure_on_monomials() {
        for m in 0..=3usize {
            for n in 0..=3usize {
                let b = lie_bracket(&SmoothFn1D::monomial(m), &SmoothFn1D::monomial(n));
                for x in [-1.3f64, -0.2, 0.4, 1.7] {
                    let want = if m + n == 0 {
                        0.0
                    } else {
                        (n as f64 - m as f64) * x.powi(m as i32 + n as i32 - 1)
                    };
                    assert!((b.eval(x) - want).abs() <= 1e-10, "[{m},{n}] at {x}");
                }
            }
        }
    }

    #[test]
    fn closure_bracket_matches_polynomial_bracket() {
        let f = SmoothFn1D::from_derivatives(3, |x| [x * x, 2.0 * x, 2.0, 0.0]);
        let g = SmoothFn1D::monomial(3);
        let exact = lie_bracket(&SmoothFn1D::monomial(2), &g);
        let b = lie_bracket(&f, &g);
        assert_eq!(b.order(), 2);
        for x in [-0.5, 0.9] {
            assert!((b.eval(x) - exact.eval(x)).abs() < 1e-14);
            assert!((b.d2(x) - exact.d2(x)).abs() < 1e-13);
            assert!(b.d3(x).is_nan());
        }
    }

    #[test]
    fn prolongation_examples() {
        let jet = Jet2 {
            x: 1.0,
            y: 0.3,
            u: 1.0,
            ux: 2.0,
            uy: 0.5,
            uxx: 0.7,
            uxy: -0.1,
            uyy: 0.4,
        };
        let c = prolong2_apply(&SmoothFn1D::constant(1.0), Axis::X, &jet);
        assert_eq!(
            c,
            JetVectorCoefficients {
                x: 1.0,
                ..Default::default()
            }
        );

        let c = prolong2_apply(&SmoothFn1D::monomial(2), Axis::X, &jet);
        assert_eq!(c.u, -2.0);
        assert_eq!(c.ux, -10.0);

        let jet0 = Jet2 { x: 0.0, u: 1.5, ..jet };
        let c = prolong2_apply(&SmoothFn1D::monomial(3), Axis::X, &jet0);
        assert_eq!(
            c,
            JetVectorCoefficients {
                uxx: -9.0,
                ..Default::default()
            }
        );

        let c = prolong2_apply(&SmoothFn1D::constant(1.0), Axis::Y, &jet);
        assert_eq!(c.y, 1.0);
        assert_eq!(c.x, 0.0);
    }

    #[test]
    fn invariant_examples() {
        let j = Jet2 {
            u: 1.0,
            uxy: 1.0,
            ..Default::default()
        };
        assert_eq!(eval_i1(&j).unwrap(), 1.0);
        let j = Jet2 {
            u: 1.0,
            uxx: 1.0,
            uyy: 1.0,
            ..Default::default()
        };
        assert_eq!(eval_i2(&j).unwrap(), 4.0);
        assert!(eval_i1(&Jet2::default()).is_err());
        assert!(eval_i2(&Jet2::default()).is_err());
    }

    #[test]
    fn i2_residual_examples() {
        let jet = Jet2 {
            x: 0.4,
            y: -0.3,
            u: 1.0,
            uy: 0.0,
            uyy: 1.0,
            ux: 0.2,
            uxx: 0.3,
            uxy: 0.1,
        };
        let quad = SmoothFn1D::polynomial(vec![0.3, -1.0, 2.0]);
        assert!(invariance_residual_i2(&quad, Axis::X, &jet).unwrap().abs() < 1e-14);
        let cubic = SmoothFn1D::monomial(3);
        let r = invariance_residual_i2(&cubic, Axis::X, &jet).unwrap();
        assert!((r + 24.0).abs() < 1e-12, "{r}");
        assert_eq!(predicted_i2_action(&cubic, Axis::X, &jet).unwrap(), -24.0);
    }

    #[test]
    fn group_action_examples() {
        let id = MoebiusMap::identity();
        assert_eq!(group_action_point(&id, &id, 1.0, 2.0, 3.0).unwrap(), (1.0, 2.0, 3.0));
        let mx = MoebiusMap::new(1.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(group_action_point(&mx, &id, 1.0, 0.0, 8.0).unwrap(), (0.5, 0.0, 32.0));
        let t = MoebiusMap::translation(0.7);
        let (_, _, u) = group_action_point(&t, &MoebiusMap::translation(-1.0), 1.0, 2.0, 3.0).unwrap();
        assert_eq!(u, 3.0);
        assert!(group_action_point(&mx, &id, -1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn transport_by_translation_shifts() {
        let u = |x: f64, y: f64| (x * x + 1.0) * (2.0 + y.sin());
        let t = transport_solution(MoebiusMap::translation(0.5), MoebiusMap::translation(-0.25), u);
        let got = t(1.0, 2.0).unwrap();
        assert!((got - u(0.5, 2.25)).abs() < 1e-15);
    }

    #[test]
    fn flow_derivative_examples() {
        let s = unit_stencil();
        let field = DiscreteVectorField::x(SmoothFn1D::monomial(2));
        let d = flow_derivative(&field, xi1, &s).unwrap();
        assert!(d.abs() < 1e-8);

        let s = StencilSample::uniform(0.0, 0.0, 1.0, 1.0, [[1.0, 2.0], [3.0, 1.0]]);
        assert_eq!(j1(&s).unwrap(), 6.0);
        let field = DiscreteVectorField::x(SmoothFn1D::monomial(3));
        let d = flow_derivative(&field, j1, &s).unwrap();
        assert!((d + 6.0).abs() < 1e-6, "{d}");

        let d = flow_derivative(&field, |_| Ok(3.5), &s).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn flow_derivative_reports_undefined_functional() {
        let s = unit_stencil();
        let field = DiscreteVectorField::x(SmoothFn1D::monomial(1));
        let r = flow_derivative(&field, |_| Ok(f64::NAN), &s);
        assert!(matches!(r, Err(Error::Domain(_))));
    }
}
