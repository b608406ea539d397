//! Command-line harness: tournament file I/O, the structural certificate
//! chain, and reproducible experiment sweeps.

pub mod certify;
pub mod experiments;
pub mod format;
pub mod report;
