//! Exact construction and certification of planar line arrangements with
//! multiplicities: Baker-Akhiezer conditions, quasi-invariant Hilbert series
//! and Darboux-Wronskian identities.

pub mod certify;
pub mod config;
pub mod darboux;
pub mod error;
pub mod exact;
pub mod qi;

pub use error::{Error, Result};
