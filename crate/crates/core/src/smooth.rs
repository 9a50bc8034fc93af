//! Analytic functions of one variable carrying their first three derivatives.
//!
//! These are the `f(x)`, `g(y)` that parametrize the symmetry vector fields
//! and the `φ₁`, `φ₂` of the two-function solution formula. Polynomials are
//! kept in coefficient form so that brackets of polynomials stay exact.

use std::fmt;
use std::sync::Arc;

use crate::moebius::MoebiusMap;

type DerivFn = dyn Fn(f64) -> [f64; 4] + Send + Sync;

#[derive(Clone)]
enum Repr {
    /// Ascending coefficients, `c[0] + c[1] x + ...`.
    Poly(Vec<f64>),
    /// `order` is the highest derivative the closure reports reliably;
    /// higher slots hold NaN.
    Closure { f: Arc<DerivFn>, order: usize },
}

#[derive(Clone)]
pub struct SmoothFn1D {
    repr: Repr,
}

impl fmt::Debug for SmoothFn1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Poly(c) => f.debug_tuple("SmoothFn1D::Poly").field(c).finish(),
            Repr::Closure { order, .. } => f
                .debug_struct("SmoothFn1D::Closure")
                .field("order", order)
                .finish_non_exhaustive(),
        }
    }
}

impl SmoothFn1D {
    pub fn polynomial(coeffs: impl Into<Vec<f64>>) -> Self {
        let mut c: Vec<f64> = coeffs.into();
        while c.len() > 1 && c.last() == Some(&0.0) {
            c.pop();
        }
        if c.is_empty() {
            c.push(0.0);
        }
        SmoothFn1D { repr: Repr::Poly(c) }
    }

    pub fn constant(c: f64) -> Self {
        Self::polynomial(vec![c])
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0;
        Self::polynomial(c)
    }

    /// Wraps a closure returning `[f, f', f'', f''']`. Slots above `order`
    /// are ignored and reported as NaN.
    pub fn from_derivatives<F>(order: usize, f: F) -> Self
    where
        F: Fn(f64) -> [f64; 4] + Send + Sync + 'static,
    {
        SmoothFn1D {
            repr: Repr::Closure {
                f: Arc::new(f),
                order: order.min(3),
            },
        }
    }

    /// `scale · e^{rate·x}`.
    pub fn exp(scale: f64, rate: f64) -> Self {
        Self::from_derivatives(3, move |x| {
            let e = scale * (rate * x).exp();
            [e, rate * e, rate * rate * e, rate * rate * rate * e]
        })
    }

    /// `e^{c0 + c1 x + c2 x²}`.
    pub fn exp_quadratic(c0: f64, c1: f64, c2: f64) -> Self {
        Self::from_derivatives(3, move |x| {
            let e = (c0 + c1 * x + c2 * x * x).exp();
            let q1 = c1 + 2.0 * c2 * x;
            let q2 = 2.0 * c2;
            [
                e,
                q1 * e,
                (q2 + q1 * q1) * e,
                (3.0 * q1 * q2 + q1 * q1 * q1) * e,
            ]
        })
    }

    /// `amplitude · atan(rate·x) + offset`.
    pub fn arctan(amplitude: f64, rate: f64, offset: f64) -> Self {
        Self::from_derivatives(3, move |x| {
            let b2 = rate * rate;
            let w = 1.0 + b2 * x * x;
            let r3 = rate * b2;
            [
                amplitude * (rate * x).atan() + offset,
                amplitude * rate / w,
                amplitude * (-2.0 * r3 * x) / (w * w),
                amplitude * (-2.0 * r3 * (1.0 - 3.0 * b2 * x * x)) / (w * w * w),
            ]
        })
    }

    /// The Möbius map as a function; NaN at its pole.
    pub fn moebius(map: MoebiusMap) -> Self {
        Self::from_derivatives(3, move |x| map.derivatives(x).unwrap_or([f64::NAN; 4]))
    }

    /// Highest derivative order available (polynomials report 3).
    pub fn order(&self) -> usize {
        match &self.repr {
            Repr::Poly(_) => 3,
            Repr::Closure { order, .. } => *order,
        }
    }

    pub fn coefficients(&self) -> Option<&[f64]> {
        match &self.repr {
            Repr::Poly(c) => Some(c),
            Repr::Closure { .. } => None,
        }
    }

    /// `[f, f', f'', f''']` at `x`; unavailable orders are NaN.
    pub fn derivatives(&self, x: f64) -> [f64; 4] {
        match &self.repr {
            Repr::Poly(c) => poly_derivatives(c, x),
            Repr::Closure { f, order } => {
                let mut d = f(x);
                for slot in d.iter_mut().skip(order + 1) {
                    *slot = f64::NAN;
                }
                d
            }
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.derivatives(x)[0]
    }

    pub fn d1(&self, x: f64) -> f64 {
        self.derivatives(x)[1]
    }

    pub fn d2(&self, x: f64) -> f64 {
        self.derivatives(x)[2]
    }

    pub fn d3(&self, x: f64) -> f64 {
        self.derivatives(x)[3]
    }

    /// `factor · self + shift`.
    pub fn affine(&self, factor: f64, shift: f64) -> Self {
        match &self.repr {
            Repr::Poly(c) => {
                let mut c: Vec<f64> = c.iter().map(|v| v * factor).collect();
                c[0] += shift;
                Self::polynomial(c)
            }
            Repr::Closure { .. } => {
                let inner = self.clone();
                Self::from_derivatives(self.order(), move |x| {
                    let d = inner.derivatives(x);
                    [
                        factor * d[0] + shift,
                        factor * d[1],
                        factor * d[2],
                        factor * d[3],
                    ]
                })
            }
        }
    }

    pub fn add(&self, other: &SmoothFn1D) -> Self {
        if let (Some(a), Some(b)) = (self.coefficients(), other.coefficients()) {
            let mut c = vec![0.0; a.len().max(b.len())];
            for (i, v) in a.iter().enumerate() {
                c[i] += v;
            }
            for (i, v) in b.iter().enumerate() {
                c[i] += v;
            }
            return Self::polynomial(c);
        }
        let (p, q) = (self.clone(), other.clone());
        Self::from_derivatives(self.order().min(other.order()), move |x| {
            let (a, b) = (p.derivatives(x), q.derivatives(x));
            [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
        })
    }
}

fn poly_derivatives(c: &[f64], x: f64) -> [f64; 4] {
    // Horner on the value and its first three derivatives simultaneously,
    // using (q·x)^(k) = q^(k)·x + k·q^(k-1).
    let mut d = [0.0; 4];
    for &coef in c.iter().rev() {
        d[3] = d[3] * x + 3.0 * d[2];
        d[2] = d[2] * x + 2.0 * d[1];
        d[1] = d[1] * x + d[0];
        d[0] = d[0] * x + coef;
    }
    d
}

pub(crate) fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub(crate) fn poly_deriv(a: &[f64]) -> Vec<f64> {
    if a.len() <= 1 {
        return vec![0.0];
    }
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| i as f64 * c)
        .collect()
}
