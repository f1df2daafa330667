pub mod channel_sim;
pub mod cli;
pub mod codec;
pub mod construction;
pub mod error;
pub mod ga_kernel;
pub mod oracles;

pub use error::{Error, Result};
