//! Exact enumeration of planar quadrangulations and triangulations through
//! their peeling trees.
//!
//! The crate is organised bottom-up: [`series`] provides truncated power
//! series over big integers, [`trees`] the labeled peeling trees with their
//! counting oracles, [`lastcar`] the marked-leaf decomposition of those
//! trees, [`maps`] the half-edge maps they encode, and [`enumerate`] the
//! solvers and identity checks built on top.

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod lastcar;
pub mod maps;
pub mod par;
pub mod series;
pub mod trees;

pub use error::{Error, Result};
pub use par::ExecMode;
pub use series::{exact_divide, BiSeries, Integer, UniSeries};
pub use trees::{Family, LabeledTree, Mark, Side};
