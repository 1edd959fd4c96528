//! Rewrites that preserve the perfect-matching sum up to a recorded
//! factor, and the scripted `G_n -> G_{n-1}` reduction built from them.

pub mod ops;
pub mod reduce;
pub mod sites;
pub mod trace;

pub use ops::{
    class_count_is_uniform, fill_dents, gauge_scale_vertex, geometric_side, scale_edge_class, split_vertex_three,
    strip_forced_edges, Axis, DentFill, Stripped, AUX, DENT,
};
pub use reduce::{
    expected_factor, reduce_gn_once, reduce_gn_once_with, triple_vertices, ReduceOptions, Reduction, Square,
};
pub use sites::{apply_urban_renewal, find_renewal_sites, renewal_weights, site_at, RenewalSite};
pub use trace::{apply_step, replay, ReductionTrace, Replay, StepOp, TraceStep};
