pub mod balls;
pub mod cli;
pub mod complex;
pub mod error;
pub mod hull;
pub mod lp;
pub mod sampler;
pub mod tropical;
pub mod volume;

pub use error::{Result, TropError};
