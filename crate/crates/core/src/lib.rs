pub mod error;
pub mod fock;
pub mod grassmann;
pub mod linalg;
pub mod oracle;
pub mod partition;
pub mod poly;
pub mod scalar;
pub mod symfunc;
pub mod xxz;

pub use error::{Error, Result};
pub use scalar::{Cplx, Field, Rat, Ring, DEFAULT_PREC};
