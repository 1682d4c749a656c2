pub mod c2;
pub mod catalog;
pub mod coeff;
pub mod counting;
pub mod error;
pub mod gf;
pub mod graph;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
