pub mod atlas;
pub mod circle;
pub mod consistency;
pub mod error;
pub mod grassmann;
pub mod jet;
pub mod json;
pub mod lagrangian;
pub mod laurent;
pub mod reference;
pub mod report;
pub mod ring;
pub mod scalar;

pub use error::{Error, Result};
