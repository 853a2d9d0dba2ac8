//! Knot Floer homology of knots in the 3-sphere from grid diagrams, over Z/2.
//!
//! A [`GridDiagram`] is turned into the graded pieces of its grid complex,
//! each piece is reduced to homology ([`HomologyComputation`]), and the
//! factor `(1 + q^-1 t^-1)^(n-1)` contributed by the grid size is divided
//! out. [`spectral`] adds the first differential of the filtration spectral
//! sequence, the E2 page and tau; [`moves`] implements grid moves.
//!
//! ```
//! use gridhfk::{AlexanderRange, GridDiagram, HomologyComputation};
//!
//! let trefoil = GridDiagram::torus(2, 3).unwrap();
//! let comp = HomologyComputation::run(&trefoil, AlexanderRange::NonNegative).unwrap();
//! assert_eq!(comp.hfk().unwrap().to_string(), "t^{-1}+q+q^2t");
//! ```

pub mod cli;
pub mod complex;
pub mod fixtures;
pub mod grid;
pub mod homology;
pub mod moves;
pub mod poly;
pub mod spectral;

pub use complex::{AlexanderRange, DiffMode, GradedComplex, Generator, GridComplex};
pub use grid::{GridDiagram, GridError, Mark, WindingTable};
pub use homology::{HomologyComputation, HomologyError};
pub use moves::{apply_move, legal_moves, simplify, Corner, Move, MoveError};
pub use poly::{BigradedPoly, LaurentPoly, PolyError};
pub use spectral::{e2_page, SpectralPages, TauResult};
