//! Arithmetic of multizeta values over F_q[θ].

pub mod acceptance;
pub mod anderson;
pub mod error;
pub mod index;
pub mod indices;
pub mod laurent;
mod nested;
pub mod relations;
pub mod scalar;
pub mod store;
pub mod zeta;

pub use error::{Error, Result};
pub use index::{Index, SignVector};
pub use laurent::LaurentApprox;
