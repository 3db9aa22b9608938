//! Subword segmentation and evaluation for code-switched Egyptian Arabic-English text.
//!
//! The crate is split along the life of an experiment:
//!
//! - [`corpus`]: preprocessing, script classification, gold annotations, statistics
//!   and sentence categories.
//! - [`segment`]: BPE, MDL (Morfessor-baseline style), rule-based English and
//!   Arabic clitic segmenters, composition and per-script routing, model files.
//! - [`metrics`]: EMMA, chrF2++, OOV rate and over/under-segmentation counts.
//! - [`analysis`]: the experiment harness built on top of the above.

pub mod analysis;
pub mod corpus;
pub mod error;
pub mod metrics;
pub mod segment;
pub mod translit;

pub use error::{Error, Result};
