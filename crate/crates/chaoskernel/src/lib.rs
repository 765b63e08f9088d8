//! Exact and asymptotic transition density of the second-chaos tangent process
//! `(w_s, β_s, A_s, ζ_s, z̄_s)` to the Dudley relativistic diffusion, with Monte Carlo
//! ground truth for every closed form.
//!
//! The analytic core (`numerics`, `special`, `transforms`, `alpha`, `density`) is generic
//! over [`Real`]; the simulation layer and the command line work in `f64`.

// `!(a > b)` rejects NaN together with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod alpha;
pub mod cli;
pub mod density;
pub mod error;
pub mod model;
pub mod numerics;
pub mod scalar;
pub mod special;
pub mod transforms;
pub mod validation;

pub use error::{Error, Result};
pub use scalar::Real;

/// Complex number over the scalar type.
pub type ComplexValue<T> = num_complex::Complex<T>;

pub type Complex64 = ComplexValue<f64>;
pub type QuadResult64 = numerics::QuadResult<f64>;
pub type DecayEnvelope64 = numerics::DecayEnvelope<f64>;
pub type AuxValues64 = special::AuxValues<f64>;
pub type RegularizedAux64 = special::RegularizedAux<f64>;
pub type ChaosPoint64 = density::ChaosPoint<f64>;
pub type ScaleParams64 = density::ScaleParams<f64>;
pub type MarginalPoint64 = transforms::MarginalPoint<f64>;
pub type AlphaEval64 = alpha::AlphaEval<f64>;
pub type DensityEstimate64 = density::DensityEstimate<f64>;
