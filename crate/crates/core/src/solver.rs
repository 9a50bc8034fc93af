//! Marching solver: fills the quadrant `m, n ≥ 1` of an orthogonal lattice
//! from data on the two axes, one cell at a time, each cell's top-right
//! value computed from its other three corners.

use crate::error::{Error, ErrorKind, Result};
use crate::lattice::{stencil_from_grid, GridField, OrthogonalLattice};
use crate::schemes::SchemeKind;
use crate::solutions::ExactSolution;

/// Values on the axes: `row0[m] = u(m, 0)`, `col0[n] = u(0, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    row0: Vec<f64>,
    col0: Vec<f64>,
}

impl BoundaryData {
    pub fn new(row0: Vec<f64>, col0: Vec<f64>) -> Result<Self> {
        if row0.is_empty() || col0.is_empty() {
            return Err(Error::invalid("boundary rows must be non-empty"));
        }
        if let Some(v) = row0.iter().chain(&col0).find(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("non-finite boundary value {v}")));
        }
        if row0[0] != col0[0] {
            return Err(Error::invalid(format!(
                "corner mismatch: row0[0] = {} but col0[0] = {}",
                row0[0], col0[0]
            )));
        }
        Ok(BoundaryData { row0, col0 })
    }

    pub fn row0(&self) -> &[f64] {
        &self.row0
    }

    pub fn col0(&self) -> &[f64] {
        &self.col0
    }

    /// Boundary nodes `(m, n)` whose value is not strictly positive.
    pub fn non_positive(&self) -> Vec<(usize, usize, f64)> {
        let rows = self.row0.iter().enumerate().map(|(m, &v)| (m, 0, v));
        let cols = self.col0.iter().enumerate().skip(1).map(|(n, &v)| (0, n, v));
        rows.chain(cols).filter(|t| !(t.2 > 0.0)).collect()
    }
}

/// Samples `sol` on the two axes of `lat`.
pub fn boundary_from_solution(sol: &ExactSolution, lat: &OrthogonalLattice) -> Result<BoundaryData> {
    let (xs, ys) = (lat.xs(), lat.ys());
    let row0 = xs.iter().map(|&x| sol.try_eval(x, ys[0])).collect::<Result<Vec<_>>>()?;
    let col0 = ys.iter().map(|&y| sol.try_eval(xs[0], y)).collect::<Result<Vec<_>>>()?;
    BoundaryData::new(row0, col0)
}

/// Sweep order of the fill. All orders respect the dependencies and give
/// bit-identical fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FillOrder {
    #[default]
    Rows,
    Columns,
    AntiDiagonals,
}

/// A cell that could not be filled.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    pub m: usize,
    pub n: usize,
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub field: GridField,
    pub scheme: SchemeKind,
    pub failures: Vec<CellFailure>,
    pub min_u: f64,
    pub max_u: f64,
    pub cells_computed: usize,
    /// Interior cells left empty because a dependency was missing.
    pub cells_skipped: usize,
}

impl SolveReport {
    pub fn is_complete(&self) -> bool {
        self.failures.is_empty() && self.field.filled_count() == self.field.lattice().len()
    }

    pub fn coverage(&self) -> f64 {
        self.field.coverage()
    }
}

pub fn solve_bvp(lat: &OrthogonalLattice, bd: &BoundaryData, scheme: SchemeKind) -> Result<SolveReport> {
    solve_bvp_with_order(lat, bd, scheme, FillOrder::Rows)
}

fn interior_cells(rows: usize, cols: usize, order: FillOrder) -> Vec<(usize, usize)> {
    let mut cells = Vec::with_capacity(rows.saturating_sub(1) * cols.saturating_sub(1));
    match order {
        FillOrder::Rows => {
            for m in 1..rows {
                for n in 1..cols {
                    cells.push((m, n));
                }
            }
        }
        FillOrder::Columns => {
            for n in 1..cols {
                for m in 1..rows {
                    cells.push((m, n));
                }
            }
        }
        FillOrder::AntiDiagonals => {
            for d in 2..rows + cols - 1 {
                for m in 1..rows {
                    if d > m && d - m >= 1 && d - m < cols {
                        cells.push((m, d - m));
                    }
                }
            }
        }
    }
    cells
}

pub fn solve_bvp_with_order(
    lat: &OrthogonalLattice,
    bd: &BoundaryData,
    scheme: SchemeKind,
    order: FillOrder,
) -> Result<SolveReport> {
    scheme.validate()?;
    if bd.row0.len() != lat.rows() || bd.col0.len() != lat.cols() {
        return Err(Error::invalid(format!(
            "boundary sizes {}×{} do not match lattice {}×{}",
            bd.row0.len(),
            bd.col0.len(),
            lat.rows(),
            lat.cols()
        )));
    }
    let mut field = GridField::empty(lat.clone());
    let mut failures = Vec::new();
    for (m, &v) in bd.row0.iter().enumerate() {
        field.set(m, 0, v)?;
    }
    for (n, &v) in bd.col0.iter().enumerate() {
        field.set(0, n, v)?;
    }
    if scheme.requires_positive() {
        for (m, n, v) in bd.non_positive() {
            failures.push(CellFailure {
                m,
                n,
                kind: ErrorKind::Positivity,
                message: Error::Positivity { value: v }.to_string(),
            });
        }
    }

    let (xs, ys) = (lat.xs(), lat.ys());
    let (mut computed, mut skipped) = (0, 0);
    for (m, n) in interior_cells(lat.rows(), lat.cols(), order) {
        let deps = [(m - 1, n - 1), (m - 1, n), (m, n - 1)];
        if !deps.iter().all(|&(i, j)| field.is_filled(i, j)) {
            skipped += 1;
            continue;
        }
        let u00 = field.get(m - 1, n - 1).unwrap_or(f64::NAN);
        let u01 = field.get(m - 1, n).unwrap_or(f64::NAN);
        let u10 = field.get(m, n - 1).unwrap_or(f64::NAN);
        let (h, k) = (xs[m] - xs[m - 1], ys[n] - ys[n - 1]);
        let outcome = scheme.step(u00, u01, u10, h, k).and_then(|v| {
            if !v.is_finite() {
                Err(Error::Breakdown(format!("non-finite value {v}")))
            } else if scheme.requires_positive() && v <= 0.0 {
                Err(Error::Positivity { value: v })
            } else {
                Ok(v)
            }
        });
        match outcome {
            Ok(v) => {
                field.set(m, n, v)?;
                computed += 1;
            }
            Err(e) => failures.push(CellFailure {
                m,
                n,
                kind: e.kind(),
                message: format!("cell ({m}, {n}): {e}"),
            }),
        }
    }

    let (mut min_u, mut max_u) = (f64::INFINITY, f64::NEG_INFINITY);
    for (_, _, _, _, u) in field.iter_filled() {
        min_u = min_u.min(u);
        max_u = max_u.max(u);
    }
    Ok(SolveReport {
        field,
        scheme,
        failures,
        min_u,
        max_u,
        cells_computed: computed,
        cells_skipped: skipped,
    })
}

/// Largest `|residual| / scale` of the scheme over all cells whose four
/// corners are filled.
pub fn audit_residuals(field: &GridField, scheme: SchemeKind) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for m in 0..field.rows().saturating_sub(1) {
        for n in 0..field.cols().saturating_sub(1) {
            if !field.is_filled(m + 1, n + 1) {
                continue;
            }
            let s = match stencil_from_grid(field, m, n) {
                Ok(s) => s,
                Err(_) => continue,
            };
            let r = scheme.residual(&s)?;
            worst = worst.max(r.abs() / scheme.residual_scale(&s));
        }
    }
    Ok(worst)
}
