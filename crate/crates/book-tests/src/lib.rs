//! Runs every Rust code block of the guide as a doctest.
//!
//! mdBook renders `book/src/*.md` but does not execute the snippets; this
//! crate includes each chapter as module documentation so `cargo test
//! --doc` compiles and runs them against the real library. One module per
//! chapter keeps failures attributable to a file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/worm-geometry.md")]
pub mod worm_geometry {}

#[doc = include_str!("../../../book/src/special-functions.md")]
pub mod special_functions {}

#[doc = include_str!("../../../book/src/monomials.md")]
pub mod monomials {}

#[doc = include_str!("../../../book/src/oracles.md")]
pub mod oracles {}

#[doc = include_str!("../../../book/src/diagnostics.md")]
pub mod diagnostics {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
