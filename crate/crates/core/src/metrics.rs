//! Error measures against exact solutions and convergence-order fits.

use crate::error::{Error, Result};
use crate::lattice::GridField;
use crate::schemes::SchemeKind;
use crate::solutions::ExactSolution;

/// Distances between a numerical field and an exact one over the filled
/// cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chi {
    /// `sqrt(Σ (u − u_ex)² / N)`.
    pub rms: f64,
    /// `sqrt(Σ (u − u_ex)² / Σ u_ex²)`.
    pub relative: f64,
    pub max_abs: f64,
    pub count: usize,
    pub coverage: f64,
}

pub fn chi(numeric: &GridField, exact: &ExactSolution) -> Result<Chi> {
    chi_against(numeric, |x, y| exact.try_eval(x, y))
}

/// As [`chi`] with an arbitrary reference function.
pub fn chi_against<F>(numeric: &GridField, exact: F) -> Result<Chi>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let (mut se, mut sr, mut max_abs, mut count) = (0.0, 0.0, 0.0f64, 0usize);
    for (_, _, x, y, u) in numeric.iter_filled() {
        let e = exact(x, y)?;
        let d = u - e;
        se += d * d;
        sr += e * e;
        max_abs = max_abs.max(d.abs());
        count += 1;
    }
    if count == 0 {
        return Err(Error::invalid("no filled cells to compare"));
    }
    let relative = if sr > 0.0 {
        (se / sr).sqrt()
    } else if se == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(Chi {
        rms: (se / count as f64).sqrt(),
        relative,
        max_abs,
        count,
        coverage: numeric.coverage(),
    })
}

/// Least-squares slope of `log err` against `log h`.
pub fn convergence_order(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::invalid("need at least two (h, err) samples"));
    }
    for w in samples.windows(2) {
        if !(w[1].0 < w[0].0) {
            return Err(Error::invalid("step sizes must be strictly decreasing"));
        }
    }
    if samples.iter().any(|&(h, e)| !(h > 0.0 && e > 0.0 && h.is_finite() && e.is_finite())) {
        return Err(Error::invalid("step sizes and errors must be positive and finite"));
    }
    let n = samples.len() as f64;
    let lx: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let ly: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

/// One-cell defect `u11_scheme − u(x + h, y + k)` with the other three
/// corners taken from the exact solution.
pub fn cell_defect(scheme: SchemeKind, sol: &ExactSolution, x: f64, y: f64, h: f64, k: f64) -> Result<f64> {
    let u00 = sol.try_eval(x, y)?;
    let u01 = sol.try_eval(x, y + k)?;
    let u10 = sol.try_eval(x + h, y)?;
    let u11 = scheme.step(u00, u01, u10, h, k)?;
    Ok(u11 - sol.try_eval(x + h, y + k)?)
}

/// Order of the one-cell defect at `(x, y)` over square steps `h = k`.
pub fn defect_order(scheme: SchemeKind, sol: &ExactSolution, x: f64, y: f64, hs: &[f64]) -> Result<f64> {
    let samples = hs
        .iter()
        .map(|&h| Ok((h, cell_defect(scheme, sol, x, y, h, h)?.abs())))
        .collect::<Result<Vec<_>>>()?;
    convergence_order(&samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::OrthogonalLattice;
    use crate::solutions::make_s2;
    use proptest::prelude::*;

    fn field(vals: impl Fn(f64, f64) -> f64) -> GridField {
        let lat = OrthogonalLattice::uniform(0.0, 0.0, 0.1, 0.1, 5, 4).unwrap();
        GridField::from_fn(lat, vals).unwrap()
    }

    #[test]
    fn chi_examples() {
        let s2 = make_s2(1.0, 1.0).unwrap();
        let g = field(|x, y| s2.eval(x, y));
        let c = chi(&g, &s2).unwrap();
        assert_eq!((c.rms, c.relative, c.max_abs), (0.0, 0.0, 0.0));

        let g = field(|x, y| s2.eval(x, y) + 1.0);
        let c = chi(&g, &s2).unwrap();
        assert!((c.rms - 1.0).abs() < 1e-15);
        assert!((c.max_abs - 1.0).abs() < 1e-15);
        assert_eq!(c.count, 20);
    }

    #[test]
    fn chi_of_empty_field_fails() {
        let lat = OrthogonalLattice::uniform(0.0, 0.0, 0.1, 0.1, 2, 2).unwrap();
        let s2 = make_s2(1.0, 1.0).unwrap();
        assert!(chi(&GridField::empty(lat), &s2).is_err());
    }

    #[test]
    fn order_examples() {
        let p = convergence_order(&[(0.1, 0.01), (0.05, 0.0025)]).unwrap();
        assert!((p - 2.0).abs() < 1e-12);
        let p = convergence_order(&[(0.2, 0.6), (0.1, 0.3), (0.05, 0.15)]).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert!(convergence_order(&[(0.1, 0.01)]).is_err());
        assert!(convergence_order(&[(0.1, 0.01), (0.2, 0.02)]).is_err());
        assert!(convergence_order(&[(0.1, 0.0), (0.05, 0.02)]).is_err());
    }

    #[test]
    fn invariant_defect_is_fourth_order_on_s2() {
        let s2 = make_s2(12.8397, 3.86233).unwrap();
        let p = defect_order(SchemeKind::INVARIANT, &s2, -1.2, -0.8, &[0.04, 0.02, 0.01]).unwrap();
        assert!(p >= 3.5, "{p}");
    }

    proptest! {
        #[test]
        fn pure_power_laws_are_recovered(c in 0.1..10.0f64, p in 0.5..5.0f64) {
            let hs = [0.1f64, 0.05, 0.025, 0.0125];
            let s: Vec<_> = hs.iter().map(|&h| (h, c * h.powf(p))).collect();
            prop_assert!((convergence_order(&s).unwrap() - p).abs() < 1e-12);
        }

        #[test]
        fn chi_scales_linearly(lambda in 0.1..10.0f64) {
            let exact = |x: f64, y: f64| Ok(1.0 + x * y);
            let err = |l: f64| field(move |x, y| 1.0 + x * y + l * (x - 2.0 * y).sin());
            let a = chi_against(&err(1.0), exact).unwrap();
            let b = chi_against(&err(lambda), exact).unwrap();
            prop_assert!((b.rms - lambda * a.rms).abs() <= 1e-12 * b.rms);
            prop_assert!((b.max_abs - lambda * a.max_abs).abs() <= 1e-12 * b.max_abs);
        }
    }
}
