//! The numerical experiments: table reproduction for the three exact
//! solutions, and consistency studies.

use crate::error::{Error, Result};
use crate::invariants::{j1, j2};
use crate::lattice::{OrthogonalLattice, StencilSample};
use crate::metrics::{cell_defect, chi, convergence_order, Chi};
use crate::schemes::SchemeKind;
use crate::smooth::SmoothFn1D;
use crate::solutions::{make_s1, make_s2, make_s3, make_separable, ExactSolution};
use crate::solver::{boundary_from_solution, solve_bvp, SolveReport};

/// Parameters of the exact solutions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub a: f64,
    pub s: f64,
}

impl Default for SolutionParams {
    fn default() -> Self {
        SolutionParams {
            alpha: 6.0,
            beta: 1.0,
            gamma: 1.0,
            delta: 1.0,
            a: 12.8397,
            s: 3.86233,
        }
    }
}

/// Builds a named solution (`s1`, `s2`, `s3`).
pub fn named_solution(name: &str, p: &SolutionParams) -> Result<ExactSolution> {
    match name {
        "s1" => make_s1(p.alpha, p.beta, p.gamma, p.delta),
        "s2" => make_s2(p.a, p.s),
        "s3" => Ok(make_s3()),
        other => Err(Error::Config(format!("unknown solution '{other}'"))),
    }
}

/// One experiment: a solution on a uniform square-step lattice.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub solution: ExactSolution,
    pub x0: f64,
    pub y0: f64,
    pub h: f64,
    pub m: usize,
    pub n: usize,
}

impl Experiment {
    pub fn lattice(&self) -> Result<OrthogonalLattice> {
        OrthogonalLattice::uniform(self.x0, self.y0, self.h, self.h, self.m, self.n)
    }

    pub fn grid_label(&self) -> String {
        format!("({},{}) h={} {}x{}", self.x0, self.y0, self.h, self.m, self.n)
    }

    pub fn run(&self, scheme: SchemeKind) -> Result<SchemeRun> {
        let lat = self.lattice()?;
        let bd = boundary_from_solution(&self.solution, &lat)?;
        let report = solve_bvp(&lat, &bd, scheme)?;
        let chi = chi(&report.field, &self.solution)?;
        Ok(SchemeRun { report, chi })
    }
}

#[derive(Debug, Clone)]
pub struct SchemeRun {
    pub report: SolveReport,
    pub chi: Chi,
}

impl SchemeRun {
    pub fn coverage(&self) -> f64 {
        self.report.coverage()
    }
}

/// The three table experiments. With `swap_captions` the grid of the second
/// experiment goes with `s3` and the third grid with `s2`.
pub fn table_experiments(p: &SolutionParams, swap_captions: bool) -> Result<Vec<Experiment>> {
    let s1 = Experiment {
        solution: named_solution("s1", p)?,
        x0: -2.5,
        y0: -2.5,
        h: 0.02,
        m: 260,
        n: 260,
    };
    let small_grid = |solution| Experiment {
        solution,
        x0: -1.5,
        y0: -1.0,
        h: 0.02,
        m: 60,
        n: 60,
    };
    let large_grid = |solution| Experiment {
        solution,
        x0: -3.0,
        y0: -1.0,
        h: 0.02,
        m: 180,
        n: 180,
    };
    let (s2, s3) = (named_solution("s2", p)?, make_s3());
    Ok(if swap_captions {
        vec![s1, large_grid(s2), small_grid(s3)]
    } else {
        vec![s1, small_grid(s2), large_grid(s3)]
    })
}

#[derive(Debug)]
pub struct TableRow {
    pub experiment: Experiment,
    pub invariant: Result<SchemeRun>,
    pub standard: Result<SchemeRun>,
}

pub fn reproduce_table(p: &SolutionParams, swap_captions: bool) -> Result<Vec<TableRow>> {
    Ok(table_experiments(p, swap_captions)?
        .into_iter()
        .map(|e| TableRow {
            invariant: e.run(SchemeKind::INVARIANT),
            standard: e.run(SchemeKind::Standard),
            experiment: e,
        })
        .collect())
}

/// Per-cell defects and global errors over a list of steps.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyReport {
    pub hs: Vec<f64>,
    pub standard_defects: Vec<f64>,
    pub invariant_defects: Vec<f64>,
    pub standard_defect_order: f64,
    pub invariant_defect_order: f64,
    pub standard_chi: Vec<f64>,
    pub invariant_chi: Vec<f64>,
    pub standard_global_order: f64,
    pub invariant_global_order: f64,
}

/// Defects at the cell with lower-left corner `(x0, y0)`, and `χ_rms` of
/// full solves over the square `[x0, x0 + extent] × [y0, y0 + extent]`.
pub fn consistency_study(sol: &ExactSolution, x0: f64, y0: f64, extent: f64, hs: &[f64]) -> Result<ConsistencyReport> {
    let mut r = ConsistencyReport {
        hs: hs.to_vec(),
        standard_defects: vec![],
        invariant_defects: vec![],
        standard_defect_order: f64::NAN,
        invariant_defect_order: f64::NAN,
        standard_chi: vec![],
        invariant_chi: vec![],
        standard_global_order: f64::NAN,
        invariant_global_order: f64::NAN,
    };
    for &h in hs {
        r.standard_defects.push(cell_defect(SchemeKind::Standard, sol, x0, y0, h, h)?.abs());
        r.invariant_defects.push(cell_defect(SchemeKind::INVARIANT, sol, x0, y0, h, h)?.abs());
        let steps = (extent / h).round() as usize;
        let e = Experiment {
            solution: sol.clone(),
            x0,
            y0,
            h,
            m: steps + 1,
            n: steps + 1,
        };
        r.standard_chi.push(e.run(SchemeKind::Standard)?.chi.rms);
        r.invariant_chi.push(e.run(SchemeKind::INVARIANT)?.chi.rms);
    }
    let order = |errs: &[f64]| {
        let s: Vec<_> = hs.iter().copied().zip(errs.iter().copied()).collect();
        convergence_order(&s)
    };
    r.standard_defect_order = order(&r.standard_defects)?;
    r.invariant_defect_order = order(&r.invariant_defects)?;
    r.standard_global_order = order(&r.standard_chi)?;
    r.invariant_global_order = order(&r.invariant_chi)?;
    Ok(r)
}

/// Largest `|J₂ − J₁| / J₁` and largest wave-step defect over cells of a
/// separable field. Both vanish up to rounding.
pub fn separable_wave_check(h: f64, cells: usize) -> Result<(f64, f64)> {
    let sep = make_separable(
        SmoothFn1D::exp_quadratic(0.2, 0.7, -0.4),
        SmoothFn1D::polynomial(vec![1.5, 0.4, 0.2]),
    );
    let (mut jgap, mut defect) = (0.0f64, 0.0f64);
    for i in 0..cells {
        for j in 0..cells {
            let (x, y) = (-0.5 + i as f64 * h, -0.3 + j as f64 * h);
            let u = [
                [sep.eval(x, y), sep.eval(x, y + h)],
                [sep.eval(x + h, y), sep.eval(x + h, y + h)],
            ];
            let s = StencilSample::uniform(x, y, h, h, u);
            let (a, b) = (j1(&s)?, j2(&s)?);
            jgap = jgap.max((b - a).abs() / a.abs());
            defect = defect.max(cell_defect(SchemeKind::Wave, &sep, x, y, h, h)?.abs() / u[1][1].abs());
        }
    }
    Ok((jgap, defect))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_solutions() {
        let p = SolutionParams::default();
        assert!((named_solution("s1", &p).unwrap().eval(0.0, 0.0) - 1.0 / 18.0).abs() < 1e-16);
        assert!(named_solution("s4", &p).is_err());
    }

    #[test]
    fn caption_swap_moves_grids() {
        let p = SolutionParams::default();
        let plain = table_experiments(&p, false).unwrap();
        let swapped = table_experiments(&p, true).unwrap();
        assert_eq!(plain[1].solution.name(), "s2");
        assert_eq!((plain[1].m, plain[1].x0), (60, -1.5));
        assert_eq!(swapped[1].solution.name(), "s2");
        assert_eq!((swapped[1].m, swapped[1].x0), (180, -3.0));
        assert_eq!((swapped[2].m, swapped[2].solution.name()), (60, "s3"));
    }

    #[test]
    fn consistency_on_s2() {
        let s2 = make_s2(12.8397, 3.86233).unwrap();
        let r = consistency_study(&s2, -1.5, -1.0, 0.48, &[0.04, 0.02, 0.01]).unwrap();
        assert!(r.invariant_defect_order >= 3.5, "{r:?}");
        assert!(r.standard_global_order >= 0.9, "{r:?}");
    }

    #[test]
    fn separable_wave_is_exact() {
        let (jgap, defect) = separable_wave_check(0.05, 10).unwrap();
        assert!(jgap <= 1e-14 && defect <= 1e-14, "{jgap} {defect}");
    }
}
