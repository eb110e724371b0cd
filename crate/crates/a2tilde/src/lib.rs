//! Exact computations around Ã2 buildings and their lattices.
//!
//! - [`algebra`]: finite fields, integer Smith forms, matrices over F_q[[t]].
//! - [`plane`], [`diffset`]: projective planes, projectivity groups, Singer
//!   difference sets and nested pairs of them.
//! - [`apartment`], [`building`]: shapes and the Weyl group, balls in the
//!   building of SL3(F_q((t))), sectors, flats and horofunctions.
//! - [`measure`]: visual measures on cylinder cells and their identities.
//! - [`presentation`], [`group`]: presentations of panel-regular lattices,
//!   lattice morphisms, coset enumeration and Reidemeister-Schreier.
//!
//! All arithmetic is exact. The `a2tilde` binary in [`cli`] exposes each
//! capability as a subcommand that prints JSON.

pub mod algebra;
pub mod apartment;
pub mod building;
pub mod cli;
pub mod diffset;
pub mod error;
pub mod group;
pub mod measure;
pub mod plane;
pub mod presentation;

pub use error::{Error, Result};
