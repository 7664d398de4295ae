pub mod cli;
pub mod error;
pub mod family;
pub mod pencil;
pub mod reduce;
pub mod ring;
pub mod selftest;

pub use error::{Error, Result};
