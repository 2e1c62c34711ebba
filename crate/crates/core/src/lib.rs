#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constitutive;
pub mod error;
pub mod fields;
pub mod models;
pub mod reduction;
pub mod timestep;

pub use error::{Error, Result};
