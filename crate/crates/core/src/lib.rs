pub mod circuit;
pub mod cli;
pub mod code;
pub mod error;
pub mod gf;
pub mod gf2;
pub mod lfsr;
pub mod poly;
pub mod presets;
pub mod sim;
pub mod synth;

pub use error::{Error, Result};
