/// A point of the second-order jet space over `(x, y, u)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet2 {
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub ux: f64,
    pub uy: f64,
    pub uxx: f64,
    pub uxy: f64,
    pub uyy: f64,
}

impl Jet2 {
    /// Jet with the given `u` and all derivatives zero.
    pub fn constant(x: f64, y: f64, u: f64) -> Self {
        Jet2 {
            x,
            y,
            u,
            ..Default::default()
        }
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn transposed(&self) -> Self {
        Jet2 {
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

    pub fn is_finite(&self) -> bool {
        [
            self.x, self.y, self.u, self.ux, self.uy, self.uxx, self.uxy, self.uyy,
        ]
        .iter()
        .all(|v| v.is_finite())
    }
}
