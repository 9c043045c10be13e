pub mod catalog;
pub mod coeffs;
pub mod cohomology;
pub mod connection;
pub mod deform;
pub mod error;
pub mod exterior;
pub mod lie;
pub mod linalg;
pub mod pksolver;

pub use error::{Error, Result};
