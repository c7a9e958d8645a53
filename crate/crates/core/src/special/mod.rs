//! Complex special functions: gamma family, `ζ'/ζ`, the Mellin kernel.

mod cmath;
mod gamma;
mod mellin;
mod zeta;

pub use cmath::{ccot, cexpm1, ctan, pow_real};
pub use gamma::{
    digamma, gamma, gamma_ratio, log_gamma, recip_gamma, recip_gamma_deriv, recip_gamma_real,
};
pub use mellin::{mellin_kernel_exact, mellin_kernel_numeric, mellin_kernel_truncated};
pub use zeta::{
    constants, functional_g, zeta_logderiv, zeta_logderiv_at_integer, zeta_logderiv_with_delta,
    zeta_with_derivative, Constants, DEFAULT_DELTA, EULER_GAMMA, LOG_TWO_PI,
};

pub(crate) use cmath::{c, is_finite};
pub(crate) use gamma::digamma_unchecked;
pub(crate) use zeta::zeta_logderiv_unchecked;
