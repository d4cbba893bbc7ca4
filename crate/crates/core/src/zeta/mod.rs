//! ϑ, ζ, Z, S and S₁.

mod arg;
mod euler_maclaurin;
mod riemann_siegel;
mod rs_coeffs;
mod theta;
mod zeros;

pub use arg::{s_of_t, ArgTrace};
pub use euler_maclaurin::{zeta, zeta_real, EmEvaluator};
pub(crate) use euler_maclaurin::EmPanelKernel;
pub use riemann_siegel::{hardy_z, hardy_z_complex};
pub use theta::{theta, theta_deriv};
pub use zeros::{s1_of_t, S1Profile, ZeroTable};

pub(crate) use theta::{theta_deriv_unchecked, theta_unchecked};
