//! Exact computations with the Burnside category, Mackey functors and Green
//! functors of a finite group.

pub mod abgroup;
pub mod burnside;
pub mod convolution;
pub mod error;
pub mod group;
pub mod gset;
pub mod homalg;
pub mod int;
pub mod io;
pub mod ktheory;
pub mod linalg;
pub mod mackey;
pub mod matrix;

pub use error::{Error, Result};
pub use int::Int;
pub use matrix::Matrix;
