pub mod arith;
pub mod error;
pub mod forms;
pub mod geometry;
pub mod milnor;
pub mod pipeline;
pub mod poly;
pub mod report;

pub use arith::Rat;
pub use error::{Error, Result};
