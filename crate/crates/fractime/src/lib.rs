//! Numerics for convolution-type derivatives taken with respect to Bernstein
//! functions, laws of inverse subordinators, and the distributional calculus
//! of Poisson and Skellam processes run on those random clocks.
//!
//! The crate is organized around a small set of layers:
//!
//! * [`bernstein`] — Bernstein functions (stable, tempered-stable, custom)
//!   with their Lévy densities and tails.
//! * [`convderiv`] — generalized Caputo-Djrbashian and Riemann-Liouville
//!   derivatives with singular-kernel-aware quadrature, plus the classical
//!   Caputo derivative as an independent oracle.
//! * [`laplace`] — numerical Laplace inversion with a dual-method
//!   cross-check (deformed contour vs accelerated real-axis sampling).
//! * [`invsub`] — the law of an inverse subordinator: density, Laplace
//!   transform, governing-equation residuals, and exact-increment path
//!   simulation.
//! * [`poisson`] / [`skellam`] — time-changed counting processes: pmfs,
//!   moments, moment generating functions, arrival times, and residuals of
//!   their governing equations.
//! * [`montecarlo`] — reproducible parallel simulation and goodness-of-fit
//!   against the quadrature laws.

pub mod error;
pub mod quad;
pub mod special;

pub use error::{Error, Result};
