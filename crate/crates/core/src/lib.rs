//! Computational toolkit for length spectra of arithmetic locally symmetric
//! spaces.
//!
//! * [`rootsys`]: root systems of every Killing–Cartan type, Weyl-group
//!   orders and conjugacy classes, root values of torus elements and the
//!   geodesic-length functional.
//! * [`galmod`]: character lattices as integer lattices with finite group
//!   actions.
//! * [`algnum`]: exact (multi-)quadratic arithmetic, certified intervals and
//!   integer-relation detection.
//! * [`quatarith`]: quaternion algebras over ℚ, Hilbert symbols, norm-one
//!   enumeration and trace spectra.
//! * [`etale`]: local-global embedding criteria for étale algebras in central
//!   simple algebras, and reciprocal characteristic polynomials.

pub mod algnum;
pub mod arith;
mod error;
pub mod etale;
pub mod galmod;
pub mod intmat;
pub mod linalg;
pub mod poly;
pub mod quatarith;
pub mod rootsys;
pub mod ser;

pub use error::{Error, Result};
