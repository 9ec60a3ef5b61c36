//! Simulator and optimizer for a multi-target, multi-user dual-function
//! radar-communication system under channel aging.
//!
//! The crate is organized around the system lifecycle:
//! - [`config`]: static system scalars and the configuration file format.
//! - [`model`]: domain types, steering vectors, link budgets, and the radar
//!   and communication channel-aging models.
//! - [`scenario`]: random scenario generation.
//! - [`radar`]: DFT-domain radar measurements and periodogram estimators.
//! - [`bounds`]: block-1 CRLBs, the numeric Fisher route, and aged bounds.
//! - [`comm`]: MMSE channel estimation, beamforming, SINR/rate models.
//! - [`alloc`]: re-estimation interval and power/bandwidth allocation.
//! - [`harness`]: Monte Carlo experiments with CSV output.

pub mod bounds;
pub mod config;
pub mod error;
pub mod model;
pub mod rng;
pub mod scenario;

pub use config::SystemConfig;
pub use error::{Error, Result};
