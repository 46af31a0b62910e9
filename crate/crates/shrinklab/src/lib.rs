//! Exact computational algebra around the shrinking of cohomological
//! obstructions: finite groups as explicit tables, modules over group
//! algebras 𝔽_p[G], Tate cohomology in degrees −2..2, truncated free
//! pro-p operator groups with Hall-basis normal forms, and solvers that
//! annihilate prescribed classes by shrinking a free operator group of
//! large rank onto one of small rank.
//!
//! The guide in `book/` walks through the concepts chapter by chapter;
//! its code snippets are compiled and run as doc-tests (see
//! [`guide`]).

pub mod cohom;
pub mod fgroup;
pub mod gmod;
pub mod profree;
pub mod shrink;

pub mod cli;

mod guide;

pub use fgroup::{FiniteGroup, FilterIndex, Subgroup};
pub use gmod::{FpGModule, FpMatrix, ModuleHom};
