//! Numerical laboratory for Hardy's Z, Gram sums, Jacob's-ladder iterates and
//! the limit functionals built from them.

pub mod cache;
pub mod config;
pub mod error;
pub mod fermat;
pub mod functionals;
pub mod gram;
pub mod lab;
pub mod ladders;
pub mod moments;
pub mod quadrature;
pub mod report;
pub mod summation;
pub mod sums;
pub mod zeta;

pub use config::{Height, PrecisionConfig};
pub use error::{Result, ZlabError};
pub use lab::Lab;
