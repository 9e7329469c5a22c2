//! Coordinate projections and sections, the G-symmetral, and Steiner
//! symmetrization.

mod project;
mod section;
mod steiner;
mod symmetral;

pub use project::{project, project_along, project_polytope, project_reduced};
pub use section::{section, section_body, ON_PLANE_TOL};
pub use steiner::{steiner_symmetrize, SteinerResult, MIN_SLABS};
pub use symmetral::{g_symmetral, is_g_symmetric, merge_parallel, orbit_hull, G_SYMMETRAL_MAX_DIM};
