pub mod brace;
pub mod cli;
pub mod error;
pub mod group;
pub mod nearring;
pub mod report;
pub mod verify;
pub mod worked;
pub mod ybe;

pub use error::{Error, Result};
