//! Variance-constrained stochastic combinatorial semi-bandits.
//!
//! The crate covers the full pipeline: instance modelling and safety
//! classification ([`model`]), LIL confidence bounds ([`confidence`]), the
//! PASCombUCB and CombUCB1 algorithms ([`engine`]), closed-form regret and
//! hardness evaluators ([`hardness`]), and a seeded Monte-Carlo harness
//! ([`lab`]). Configuration and file formats live in [`config`] and [`io`].

pub mod confidence;
pub mod config;
pub mod engine;
pub mod error;
pub mod hardness;
pub mod io;
pub mod lab;
pub mod model;

pub use error::{Error, Result};
