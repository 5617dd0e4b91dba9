//! Landscape analysis toolkit for the job shop scheduling problem (JSP):
//! exact branch and bound solving, the standard random instance and
//! schedule distributions, and experiment drivers measuring backbone size,
//! clustering of near-optimal schedules, neighborhood exactness, and random
//! schedule quality as functions of the job-to-machine ratio.

pub mod core;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod generate;
pub mod landscape;

pub use error::{Error, Result};
pub mod cli;
