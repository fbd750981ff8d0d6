//! Finite Coxeter groups, W-metric buildings, codistances, and the
//! construction of a twin building from a single codistance.
//!
//! Everything here works on finite, fully enumerated objects so that the
//! building and twinning axioms can be checked exhaustively.

#![no_std]

extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

pub mod coxeter;
pub mod catalog;
pub mod chambersys;
pub mod codistance;
pub mod homotopy;
pub mod panelcalc;
pub mod twinner;
mod violation;

pub use violation::{LemmaStats, Violation};
