//! Balanced, cycle, noose and q-separators.

mod cycle;
mod qsep;
mod triangulate;

pub use cycle::{balanced_cycle_separator, component_face_weights, noose_separator, Noose, NooseSeparator, NooseStep};
pub use qsep::{
    is_inclusion_minimal, is_q_separator, low_tw_q_separator, max_component_without, minimalize_q_separator,
    nominal_size_bound, q_separator, vertex_balanced_separator, BalancedSeparator, LowTwDiagnostics,
    SeparatorResult, TraceRecord, EXACT_DIAGNOSTIC_LIMIT, LT_CONSTANT,
};
pub use triangulate::{is_triangulation, triangulate, Triangulation};
