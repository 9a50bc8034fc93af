//! Lattices, four-point stencils and grid fields.
//!
//! Corner `(i, j)` of a stencil is stored at index `[i][j]`: `i` steps along
//! the first lattice direction (mostly `x`), `j` along the second.
//!
//! ```text
//!   (0,1) ------- (1,1)
//!     |             |
//!   (0,0) ------- (1,0)
//! ```

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilSample {
    pub x: [[f64; 2]; 2],
    pub y: [[f64; 2]; 2],
    pub u: [[f64; 2]; 2],
}

impl StencilSample {
    pub fn new(x: [[f64; 2]; 2], y: [[f64; 2]; 2], u: [[f64; 2]; 2]) -> Self {
        StencilSample { x, y, u }
    }

    /// Stencil on an orthogonal lattice: `x_{i,j} = xs[i]`, `y_{i,j} = ys[j]`.
    pub fn orthogonal(xs: [f64; 2], ys: [f64; 2], u: [[f64; 2]; 2]) -> Self {
        StencilSample {
            x: [[xs[0], xs[0]], [xs[1], xs[1]]],
            y: [[ys[0], ys[1]], [ys[0], ys[1]]],
            u,
        }
    }

    /// Uniform orthogonal stencil anchored at `(x, y)`.
    pub fn uniform(x: f64, y: f64, h: f64, k: f64, u: [[f64; 2]; 2]) -> Self {
        Self::orthogonal([x, x + h], [y, y + k], u)
    }

    /// Rebuilds the corners from the reference point and the difference
    /// coordinates `h10, k01, eps01, eps11, del10, del11`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_differences(
        x: f64,
        y: f64,
        h10: f64,
        k01: f64,
        eps01: f64,
        eps11: f64,
        del10: f64,
        del11: f64,
        u: [[f64; 2]; 2],
    ) -> Self {
        StencilSample {
            x: [[x, x + eps01], [x + h10, x + h10 + eps11]],
            y: [[y, y + k01], [y + del10, y + k01 + del11]],
            u,
        }
    }

    pub fn h10(&self) -> f64 {
        self.x[1][0] - self.x[0][0]
    }

    pub fn k01(&self) -> f64 {
        self.y[0][1] - self.y[0][0]
    }

    pub fn eps01(&self) -> f64 {
        self.x[0][1] - self.x[0][0]
    }

    pub fn eps11(&self) -> f64 {
        self.x[1][1] - self.x[1][0]
    }

    pub fn del10(&self) -> f64 {
        self.y[1][0] - self.y[0][0]
    }

    pub fn del11(&self) -> f64 {
        self.y[1][1] - self.y[0][1]
    }

    pub fn u00(&self) -> f64 {
        self.u[0][0]
    }

    pub fn u10(&self) -> f64 {
        self.u[1][0]
    }

    pub fn u01(&self) -> f64 {
        self.u[0][1]
    }

    pub fn u11(&self) -> f64 {
        self.u[1][1]
    }

    pub fn with_u11(mut self, u11: f64) -> Self {
        self.u[1][1] = u11;
        self
    }

    pub fn is_orthogonal(&self) -> bool {
        self.eps01() == 0.0 && self.eps11() == 0.0 && self.del10() == 0.0 && self.del11() == 0.0
    }

    /// Applies `f` to each corner `(x, y, u)`.
    pub fn try_map_corners<F>(&self, mut f: F) -> Result<StencilSample>
    where
        F: FnMut(f64, f64, f64) -> Result<(f64, f64, f64)>,
    {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                let (x, y, u) = f(self.x[i][j], self.y[i][j], self.u[i][j])?;
                out.x[i][j] = x;
                out.y[i][j] = y;
                out.u[i][j] = u;
            }
        }
        Ok(out)
    }
}

/// Separable coordinates `x_{m,n} = xs[m]`, `y_{m,n} = ys[n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalLattice {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl OrthogonalLattice {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        check_axis(&xs, "xs")?;
        check_axis(&ys, "ys")?;
        Ok(OrthogonalLattice { xs, ys })
    }

    /// `xs[m] = x0 + m·h`, `ys[n] = y0 + n·k`.
    pub fn uniform(x0: f64, y0: f64, h: f64, k: f64, m: usize, n: usize) -> Result<Self> {
        if !(h > 0.0 && k > 0.0) {
            return Err(Error::invalid(format!(
                "lattice steps must be positive (h = {h}, k = {k})"
            )));
        }
        let xs = (0..m).map(|i| x0 + i as f64 * h).collect();
        let ys = (0..n).map(|j| y0 + j as f64 * k).collect();
        Self::new(xs, ys)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn rows(&self) -> usize {
        self.xs.len()
    }

    pub fn cols(&self) -> usize {
        self.ys.len()
    }

    pub fn len(&self) -> usize {
        self.xs.len() * self.ys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn check_axis(v: &[f64], name: &str) -> Result<()> {
    if v.len() < 2 {
        return Err(Error::invalid(format!("{name} needs at least 2 points")));
    }
    if v.iter().any(|c| !c.is_finite()) {
        return Err(Error::invalid(format!("{name} has non-finite entries")));
    }
    if v.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(format!("{name} must be strictly increasing")));
    }
    Ok(())
}

/// Values on an [`OrthogonalLattice`] with an explicit fill mask. Storage is
/// `m`-major: cell `(m, n)` lives at `m·N + n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    lattice: OrthogonalLattice,
    u: Vec<f64>,
    filled: Vec<bool>,
}

impl GridField {
    pub fn empty(lattice: OrthogonalLattice) -> Self {
        let n = lattice.len();
        GridField {
            lattice,
            u: vec![f64::NAN; n],
            filled: vec![false; n],
        }
    }

    /// Every cell filled from `f(x, y)`.
    pub fn from_fn(lattice: OrthogonalLattice, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let mut g = Self::empty(lattice);
        for m in 0..g.rows() {
            for n in 0..g.cols() {
                let v = f(g.lattice.xs[m], g.lattice.ys[n]);
                g.set(m, n, v)?;
            }
        }
        Ok(g)
    }

    pub fn lattice(&self) -> &OrthogonalLattice {
        &self.lattice
    }

    pub fn rows(&self) -> usize {
        self.lattice.rows()
    }

    pub fn cols(&self) -> usize {
        self.lattice.cols()
    }

    fn index(&self, m: usize, n: usize) -> Result<usize> {
        if m >= self.rows() || n >= self.cols() {
            return Err(Error::OutOfRange {
                m,
                n,
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        Ok(m * self.cols() + n)
    }

    /// Stores a finite value and marks the cell filled.
    pub fn set(&mut self, m: usize, n: usize, value: f64) -> Result<()> {
        let i = self.index(m, n)?;
        if !value.is_finite() {
            return Err(Error::domain(format!(
                "non-finite value {value} at ({m}, {n})"
            )));
        }
        self.u[i] = value;
        self.filled[i] = true;
        Ok(())
    }

    pub fn get(&self, m: usize, n: usize) -> Option<f64> {
        let i = self.index(m, n).ok()?;
        self.filled[i].then_some(self.u[i])
    }

    pub fn is_filled(&self, m: usize, n: usize) -> bool {
        self.get(m, n).is_some()
    }

    pub fn filled_count(&self) -> usize {
        self.filled.iter().filter(|f| **f).count()
    }

    pub fn coverage(&self) -> f64 {
        self.filled_count() as f64 / self.u.len() as f64
    }

    /// `(m, n, x, y, u)` for every filled cell in storage order.
    pub fn iter_filled(&self) -> impl Iterator<Item = (usize, usize, f64, f64, f64)> + '_ {
        let cols = self.cols();
        self.u
            .iter()
            .zip(&self.filled)
            .enumerate()
            .filter(|(_, (_, f))| **f)
            .map(move |(i, (u, _))| {
                let (m, n) = (i / cols, i % cols);
                (m, n, self.lattice.xs[m], self.lattice.ys[n], *u)
            })
    }

    /// Raw values; unfilled cells hold NaN.
    pub fn values(&self) -> &[f64] {
        &self.u
    }
}

/// The stencil whose lower-left corner is `(m, n)`. `u11` is NaN when the
/// top-right cell is not yet filled.
pub fn stencil_from_grid(field: &GridField, m: usize, n: usize) -> Result<StencilSample> {
    if m + 1 >= field.rows() || n + 1 >= field.cols() {
        return Err(Error::OutOfRange {
            m: m + 1,
            n: n + 1,
            rows: field.rows(),
            cols: field.cols(),
        });
    }
    let corner = |dm: usize, dn: usize| {
        field.get(m + dm, n + dn).ok_or(Error::Unfilled {
            m: m + dm,
            n: n + dn,
        })
    };
    let u = [
        [corner(0, 0)?, corner(0, 1)?],
        [corner(1, 0)?, field.get(m + 1, n + 1).unwrap_or(f64::NAN)],
    ];
    let xs = field.lattice().xs();
    let ys = field.lattice().ys();
    Ok(StencilSample::orthogonal(
        [xs[m], xs[m + 1]],
        [ys[n], ys[n + 1]],
        u,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(xs: Vec<f64>, ys: Vec<f64>) -> GridField {
        GridField::empty(OrthogonalLattice::new(xs, ys).unwrap())
    }

    #[test]
    fn stencil_on_uniform_lattice() {
        let mut g = grid(vec![0.0, 0.1], vec![0.0, 0.1]);
        g.set(0, 0, 1.0).unwrap();
        g.set(1, 0, 1.0).unwrap();
        g.set(0, 1, 1.0).unwrap();
        let s = stencil_from_grid(&g, 0, 0).unwrap();
        assert_eq!(s.h10(), 0.1);
        assert_eq!(s.k01(), 0.1);
        assert_eq!(s.eps01(), 0.0);
        assert_eq!(s.del10(), 0.0);
        assert!(s.u11().is_nan());
    }

    #[test]
    fn stencil_direct_indexing() {
        let mut g = grid(vec![0.0, 1.0, 2.0], vec![0.0, 1.0]);
        for m in 0..3 {
            for n in 0..2 {
                g.set(m, n, 1.0).unwrap();
            }
        }
        let s = stencil_from_grid(&g, 1, 0).unwrap();
        assert_eq!((s.x[0][0], s.x[1][0], s.y[0][0], s.y[0][1]), (1.0, 2.0, 0.0, 1.0));
        assert_eq!(s.u11(), 1.0);
    }

    #[test]
    fn s1_lattice_has_constant_step() {
        let lat = OrthogonalLattice::uniform(-2.5, -2.5, 0.02, 0.02, 260, 260).unwrap();
        let g = GridField::from_fn(lat, |_, _| 1.0).unwrap();
        for m in 0..259 {
            let s = stencil_from_grid(&g, m, 0).unwrap();
            assert!((s.h10() - 0.02).abs() < 1e-14);
            assert!(s.is_orthogonal());
        }
    }

    #[test]
    fn stencil_errors() {
        let mut g = grid(vec![0.0, 1.0], vec![0.0, 1.0]);
        assert!(matches!(
            stencil_from_grid(&g, 1, 0),
            Err(Error::OutOfRange { .. })
        ));
        g.set(0, 0, 1.0).unwrap();
        g.set(1, 0, 1.0).unwrap();
        assert!(matches!(
            stencil_from_grid(&g, 0, 0),
            Err(Error::Unfilled { m: 0, n: 1 })
        ));
    }

    #[test]
    fn lattice_validation() {
        assert!(OrthogonalLattice::new(vec![0.0], vec![0.0, 1.0]).is_err());
        assert!(OrthogonalLattice::new(vec![0.0, 0.0], vec![0.0, 1.0]).is_err());
        assert!(OrthogonalLattice::new(vec![1.0, 0.0], vec![0.0, 1.0]).is_err());
        assert!(OrthogonalLattice::uniform(0.0, 0.0, -0.1, 0.1, 3, 3).is_err());
    }

    #[test]
    fn mask_distinguishes_unfilled_from_values() {
        let mut g = grid(vec![0.0, 1.0], vec![0.0, 1.0]);
        assert_eq!(g.get(0, 0), None);
        assert!(g.set(0, 0, f64::NAN).is_err());
        assert!(!g.is_filled(0, 0));
        g.set(0, 0, 2.0).unwrap();
        assert_eq!(g.get(0, 0), Some(2.0));
        assert_eq!(g.filled_count(), 1);
    }

    #[test]
    fn difference_coordinates_reconstruct_corners() {
        let s = StencilSample::new(
            [[0.1, 0.3], [1.2, 1.0]],
            [[-0.5, 0.4], [-0.2, 0.9]],
            [[1.0; 2]; 2],
        );
        let r = StencilSample::from_differences(
            s.x[0][0],
            s.y[0][0],
            s.h10(),
            s.k01(),
            s.eps01(),
            s.eps11(),
            s.del10(),
            s.del11(),
            s.u,
        );
        for i in 0..2 {
            for j in 0..2 {
                assert!((r.x[i][j] - s.x[i][j]).abs() < 1e-15);
                assert!((r.y[i][j] - s.y[i][j]).abs() < 1e-15);
            }
        }
    }
}
