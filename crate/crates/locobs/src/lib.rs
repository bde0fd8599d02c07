//! Exact checks of localisation observables built from the conformal
//! generators, with independent matrix, phase-space and spin-ladder oracles
//! and a classical ray-pair geometry module.
//!
//! The guide in `book/` walks through each layer; its code blocks run as
//! doc-tests of this crate.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
pub mod error;
pub mod filter;
pub mod geometry;
pub mod observables;
pub mod oracles;
pub mod polarization;
pub mod report;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/expressions.md")]
    mod expressions {}
    #[doc = include_str!("../../../book/src/observables.md")]
    mod observables {}
    #[doc = include_str!("../../../book/src/polarisation.md")]
    mod polarisation {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
