//! Convex-body representations, hulls, Minkowski sums and the cube group.

mod ball;
mod body;
pub(crate) mod hull;
pub mod linalg;
mod polytope;
mod symmetry;
mod zonotope;

pub use ball::Ball;
pub use body::{
    affine_dim, apply_symmetry, convex_hull, cross_polytope, is_invariant_under, k1_polytope,
    k1_support, minkowski_sum, Body, Named, BALL_POLYTOPE_RESOLUTION, K1_DEFAULT_DISK_VERTICES,
};
pub use linalg::Frame;
pub(crate) use polytope::lex_cmp;
pub use polytope::{Facet, VPolytope, DEDUP_TOL, HULL_EPS, RANK_TOL};
pub use symmetry::{hyperoctahedral_group, SignedPermutation};
pub use zonotope::{Zonotope, ZERO_GENERATOR};
