//! Functionals on bodies, reproductions of the reference numbers, and a
//! seeded search harness for the open problems.

mod functionals;
mod repro;
mod search;

pub use functionals::{
    chebyshev_check, check_cube_symmetry, functional_f, j_curve, j_function_n3, p_function,
    ChebyshevOutcome, SYMMETRY_PROBES,
};
pub use repro::{
    cross3_v1_closed_form, k1_inner_closed_form, k1_v1_reduced_1d, k1_v1_reduced_2d,
    k2_v1_closed_form, repro_rows, reproduce_eq1_falsification, reproduce_k1, Eq1Report, K1Report,
    ReproRow, K1_NODES, REPRO_TARGETS,
};
pub use search::{
    search, search_with, Problem, SearchConfig, SearchFamily, SearchResult, Stamp,
    TrajectoryWindow, TRAJECTORY_WINDOW,
};
