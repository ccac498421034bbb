// error variants carry exact rationals
#![allow(clippy::result_large_err)]

pub mod algebra;
pub mod cli;
pub mod deform;
pub mod error;
pub mod gram;
pub mod laguerre;
pub mod measure;
pub mod numeric;
pub mod series;
pub mod verify;
pub mod weighted;

pub use error::{Error, Result};
