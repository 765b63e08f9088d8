//! The auxiliary real functions `F_r, F_i, U_r, U_i, V_r, V_i` of the inversion integrand
//! and the pole sequences of the Laplace kernels.

mod aux;
mod coeffs;
mod roots;

pub use aux::{aux_eval, aux_eval_regularized, AuxValues, RegularizedAux, SERIES_CROSSOVER};
pub(crate) use aux::{horner_complex, horner_real, shifted_aux};
pub(crate) use coeffs::{
    C_COEFFS, G_COEFFS, SH2_HALF_OVER_X2_CH, TH_OVER_X, U_COEFFS, X_MINUS_TH_OVER_X3,
};
pub use roots::{
    sh2cos2, sh2cos2_relative_residual, sh2cos2_zeros, tan_fixed_points, TanFixedPoint,
    TAN_FIXED_POINT_CAP,
};
