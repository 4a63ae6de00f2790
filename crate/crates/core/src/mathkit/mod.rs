//! Special functions and the finite-blocklength latency map.

mod blocklength;
mod gamma;
mod probability;
mod special;

pub use blocklength::{phi, phi_inverse, RateProfile};
pub use gamma::{
    gamma_params_from_shadowed_rician, ln_gamma, regularized_lower_gamma,
    regularized_upper_gamma,
};
pub use probability::Probability;
pub use special::{q_function, q_inverse};
