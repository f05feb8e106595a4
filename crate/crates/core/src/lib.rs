//! Exact symbolic workbench for finitely presented Hopf *-algebras,
//! their comodule algebras and Hopf-Galois extensions over `Q(q)`.

#![allow(clippy::needless_range_loop)]

pub mod characters;
pub mod comodules;
pub mod cotensor;
pub mod error;
pub mod galois;
pub mod haar;
pub mod linalg;
pub mod ncpoly;
pub mod parse;
pub mod presentations;
pub mod report;
pub mod rewrite;
pub mod scalars;

pub use error::{Error, Result};

/// The guide's chapters, compiled and run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    mod scalars {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    mod presentations {}
    #[doc = include_str!("../../../book/src/hopf.md")]
    mod hopf {}
    #[doc = include_str!("../../../book/src/galois.md")]
    mod galois {}
    #[doc = include_str!("../../../book/src/haar.md")]
    mod haar {}
    #[doc = include_str!("../../../book/src/cotensor.md")]
    mod cotensor {}
    #[doc = include_str!("../../../book/src/characters.md")]
    mod characters {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
