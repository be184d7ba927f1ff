pub mod error;
pub mod finite_quotients;
pub mod fp_matrix;
pub mod fp_poly;
pub mod json;
pub mod poly_matrix;
pub mod rigidity;
pub mod rp_module;
pub mod wreath;

pub use error::{Error, Result};
