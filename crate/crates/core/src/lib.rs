pub mod chaos;
pub mod cli;
pub mod error;
pub mod quadrature;
pub mod semigroup;
pub mod space;
pub mod special;
pub mod spherical;
pub mod transform;

pub use error::{Error, Result};
