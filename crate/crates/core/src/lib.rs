pub mod cli;
pub mod endo;
pub mod error;
pub mod fixed;
pub mod free;
pub mod group;
pub mod index;
pub mod intersect;
pub mod lattice;
pub mod text;
pub mod whitehead;
pub mod whp;

pub use error::{Error, Result};
