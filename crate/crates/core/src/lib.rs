//! Symmetry-preserving discretizations of the algebraic Liouville equation
//! `u u_xy − u_x u_y = u³`.
//!
//! The crate provides the point symmetries and their Möbius group action,
//! difference invariants on four-point stencils, several one-cell schemes,
//! closed-form solutions used as oracles, a marching boundary-value solver
//! and error metrics. The `liouville` binary wraps these as experiments.

pub mod cli;
pub mod experiments;
pub mod error;
pub mod invariants;
pub mod jet;
pub mod lattice;
pub mod metrics;
pub mod moebius;
pub mod schemes;
pub mod smooth;
pub mod solutions;
pub mod solver;
pub mod suite;
pub mod symmetry;

pub use error::{Error, ErrorKind, Result};
pub use jet::Jet2;
pub use lattice::{stencil_from_grid, GridField, OrthogonalLattice, StencilSample};
pub use metrics::{chi, convergence_order, Chi};
pub use moebius::MoebiusMap;
pub use schemes::{InvariantCoefficients, SchemeKind};
pub use smooth::SmoothFn1D;
pub use solutions::ExactSolution;
pub use solver::{boundary_from_solution, solve_bvp, BoundaryData, SolveReport};
