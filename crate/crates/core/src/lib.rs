pub mod cli;
pub mod error;
pub mod lifetime;
pub mod minkowski;
pub mod overlap;
pub mod quadrature;
pub mod spectral;
pub mod statespace;
pub mod survival;
pub mod twopoint;
pub mod velocity;

pub use error::{Error, Result};
