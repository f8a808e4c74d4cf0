//! File formats and the benchmark harness around [`fexdiff_core`]. The
//! `fexdiff` binary is a thin command line over this library.

pub mod bench;
pub mod cache;
mod error;
pub mod functions;
pub mod io;
pub mod manifest;
pub mod method;
pub mod metrics;
pub mod noise;
pub mod plotdata;

pub use error::{Error, Result};
pub use fexdiff_core as core;
