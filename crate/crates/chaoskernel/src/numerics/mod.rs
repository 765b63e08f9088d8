//! Principal square root, bracketed root finding and adaptive quadrature on [0, ∞).

mod complex;
mod quadrature;
mod roots;

pub use complex::{ensure_finite, principal_sqrt};
pub use quadrature::{
    gauss_legendre, integrate_interval, integrate_semiline, integrate_semiline_with,
    EnvelopeKind, DecayEnvelope, PhaseHint, QuadOptions, QuadResult,
};
pub use roots::{find_root_bracketed, find_root_bracketed_newton, ROOT_ITERATION_CAP};
