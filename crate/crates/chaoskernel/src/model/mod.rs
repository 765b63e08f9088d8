//! Monte Carlo ground truth: the Dudley diffusion in the smooth coordinates `(λ, μ, x, y, z)`,
//! its second-chaos tangent process, the bracket-generating frame and statistical probes.

mod fields;
mod probe;
mod sim;
mod stats;

pub use fields::{bracket_basis, hormander_rank, lie_bracket_numeric, matrix_rank, vector_fields, FieldVector, PhasePoint};
pub use probe::{remainder_probe, RemainderRow, RemainderTable, MIN_PROBE_PATHS};
pub use sim::{
    hitting_time, hitting_times, integrate_dudley, simulate_dudley, simulate_tangent, summarize, tangent_ensemble,
    DudleySample, Moment, PathConfig, Scheme, DEFAULT_STEPS_PER_UNIT, LAMBDA_GUARD,
};
pub use stats::{kolmogorov_survival, ks_two_sample, log_log_slope, KsResult};
