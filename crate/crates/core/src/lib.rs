//! Stallings subgroup-graph algebra for free groups of finite rank, and its
//! application to splittings of the triangle Artin groups `Art_{2MN}`.

pub mod error;
pub mod fiber;
pub mod graph;
pub mod presentation;
pub mod rf;
pub mod splitting;
pub mod subgroup;
pub mod word;

pub use error::{Error, Result};
