//! Intrinsic volumes, coordinate projections and sections of convex bodies,
//! with checkers for reverse and dual Loomis-Whitney-type inequalities.

pub mod coord_ops;
pub mod error;
pub mod explorer;
pub mod geom;
pub mod io;
pub mod lab;
pub mod measures;
pub mod par;

pub use error::{Error, Result};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 8;
