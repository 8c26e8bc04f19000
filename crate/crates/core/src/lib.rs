pub mod bfm;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod mirror;
pub mod qh;
pub mod rootdata;
pub mod toda;

pub use error::{Error, Result};
