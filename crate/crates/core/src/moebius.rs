//! Finite SL(2,ℝ) transformations `x ↦ (αx + β)/(γx + δ)` with `αδ − βγ = 1`.

use crate::error::{Error, Result};

/// Below this magnitude `γx + δ` is treated as a pole.
pub const POLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
}

impl MoebiusMap {
    /// Normalizes the coefficients to unit determinant. A non-positive
    /// determinant is rejected: orientation-reversing maps are not in SL(2,ℝ).
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        let det = alpha * delta - beta * gamma;
        if !det.is_finite() || det <= 0.0 {
            return Err(Error::invalid(format!(
                "Möbius determinant must be positive, got {det:e}"
            )));
        }
        let s = det.sqrt();
        Ok(MoebiusMap {
            alpha: alpha / s,
            beta: beta / s,
            gamma: gamma / s,
            delta: delta / s,
        })
    }

    pub const fn identity() -> Self {
        MoebiusMap {
            alpha: 1.0,
            beta: 0.0,
            gamma: 0.0,
            delta: 1.0,
        }
    }

    pub const fn translation(t: f64) -> Self {
        MoebiusMap {
            alpha: 1.0,
            beta: t,
            gamma: 0.0,
            delta: 1.0,
        }
    }

    /// `x ↦ λx`, `λ > 0`.
    pub fn scaling(lambda: f64) -> Result<Self> {
        Self::new(lambda, 0.0, 0.0, 1.0)
    }

    pub fn coefficients(&self) -> [f64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    fn denom(&self, x: f64) -> Result<f64> {
        let d = self.gamma * x + self.delta;
        if !d.is_finite() || d.abs() < POLE_TOL {
            return Err(Error::singular(format!("Möbius pole at x = {x}")));
        }
        Ok(d)
    }

    pub fn apply(&self, x: f64) -> Result<f64> {
        let d = self.denom(x)?;
        Ok((self.alpha * x + self.beta) / d)
    }

    pub fn deriv(&self, x: f64) -> Result<f64> {
        let d = self.denom(x)?;
        Ok(1.0 / (d * d))
    }

    /// `[M, M', M'', M''']` at `x`.
    pub fn derivatives(&self, x: f64) -> Result<[f64; 4]> {
        let d = self.denom(x)?;
        let g = self.gamma;
        let d2 = d * d;
        Ok([
            (self.alpha * x + self.beta) / d,
            1.0 / d2,
            -2.0 * g / (d2 * d),
            6.0 * g * g / (d2 * d2),
        ])
    }

    pub fn inverse(&self) -> Self {
        MoebiusMap {
            alpha: self.delta,
            beta: -self.beta,
            gamma: -self.gamma,
            delta: self.alpha,
        }
    }

    /// The map `x ↦ self(other(x))`.
    pub fn compose(&self, other: &MoebiusMap) -> Self {
        let [a, b, c, d] = self.coefficients();
        let [p, q, r, s] = other.coefficients();
        let prod = [a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s];
        // product of two unit-determinant matrices; renormalize the rounding drift
        Self::new(prod[0], prod[1], prod[2], prod[3]).unwrap_or(MoebiusMap {
            alpha: prod[0],
            beta: prod[1],
            gamma: prod[2],
            delta: prod[3],
        })
    }
}

impl Default for MoebiusMap {
    fn default() -> Self {
        Self::identity()
    }
}

pub fn moebius_apply(map: &MoebiusMap, x: f64) -> Result<f64> {
    map.apply(x)
}

pub fn moebius_deriv(map: &MoebiusMap, x: f64) -> Result<f64> {
    map.deriv(x)
}

pub fn moebius_compose(a: &MoebiusMap, b: &MoebiusMap) -> MoebiusMap {
    a.compose(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: [f64; 4], b: [f64; 4], tol: f64) -> bool {
        a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn apply_and_deriv_examples() {
        let id = MoebiusMap::identity();
        assert_eq!(id.apply(3.7).unwrap(), 3.7);
        assert_eq!(id.deriv(3.7).unwrap(), 1.0);

        let t = MoebiusMap::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(t.apply(2.0).unwrap(), 3.0);
        assert_eq!(t.deriv(2.0).unwrap(), 1.0);

        let m = MoebiusMap::new(1.0, 0.0, 1.0, 1.0).unwrap();
        assert_eq!(m.apply(1.0).unwrap(), 0.5);
        assert_eq!(m.deriv(1.0).unwrap(), 0.25);
    }

    #[test]
    fn construction_normalizes_and_rejects() {
        let m = MoebiusMap::new(2.0, 0.0, 0.0, 2.0).unwrap();
        assert_eq!(m.coefficients(), [1.0, 0.0, 0.0, 1.0]);
        assert!(MoebiusMap::new(0.0, 1.0, 1.0, 0.0).is_err());
        assert!(MoebiusMap::new(1.0, 2.0, 2.0, 4.0).is_err());
        assert!(MoebiusMap::new(f64::NAN, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn pole_is_rejected() {
        let m = MoebiusMap::new(1.0, 0.0, 1.0, 1.0).unwrap();
        assert!(matches!(m.apply(-1.0), Err(Error::Singular(_))));
        assert!(m.deriv(-1.0).is_err());
    }

    #[test]
    fn compose_examples() {
        let m = MoebiusMap::new(1.3, 0.4, -0.2, 0.9).unwrap();
        let id = MoebiusMap::identity();
        assert!(close(id.compose(&m).coefficients(), m.coefficients(), 1e-15));
        assert!(close(
            m.compose(&m.inverse()).coefficients(),
            id.coefficients(),
            1e-12
        ));
        let a = MoebiusMap::translation(1.0);
        let b = MoebiusMap::translation(2.0);
        assert_eq!(a.compose(&b).coefficients(), [1.0, 3.0, 0.0, 1.0]);
    }

    fn arb_map() -> impl Strategy<Value = MoebiusMap> {
        (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64)
            .prop_filter_map("positive determinant", |(a, b, c, d)| {
                let m = MoebiusMap::new(a, b, c, d).ok()?;
                m.coefficients().iter().all(|v| v.abs() <= 2.0).then_some(m)
            })
    }

    proptest! {
        #[test]
        fn deriv_matches_central_difference(m in arb_map(), x in -2.0..2.0f64) {
            let [_, _, g, d] = m.coefficients();
            prop_assume!((g * x + d).abs() > 0.1 && (g * (x + 1e-3) + d).abs() > 0.1
                && (g * (x - 1e-3) + d).abs() > 0.1);
            let step = 1e-5;
            let fd = (m.apply(x + step).unwrap() - m.apply(x - step).unwrap()) / (2.0 * step);
            let exact = m.deriv(x).unwrap();
            prop_assert!((fd - exact).abs() <= 1e-6 * exact.abs());
        }

        #[test]
        fn composition_is_associative(a in arb_map(), b in arb_map(), c in arb_map()) {
            let left = a.compose(&b).compose(&c);
            let right = a.compose(&b.compose(&c));
            prop_assert!(close(left.coefficients(), right.coefficients(), 1e-12));
        }

        #[test]
        fn composition_preserves_unit_determinant(a in arb_map(), b in arb_map()) {
            let [p, q, r, s] = a.compose(&b).coefficients();
            prop_assert!((p * s - q * r - 1.0).abs() < 1e-12);
        }
    }
}
