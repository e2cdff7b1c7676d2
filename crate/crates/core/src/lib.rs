//! Bishop frames of space curves, the four Bishop-frame Smarandache curves
//! (`TN1`, `TN2`, `N1N2`, `TN1N2`) with their closed-form invariants, and
//! curvature/osculating spheres, each cross-checked against a numeric oracle.
//!
//! The pipeline is:
//!
//! 1. sample a position function ([`curve::sample_curve`]) or read a CSV
//!    ([`curve::csv`]) and reparametrize it by arc length
//!    ([`curve::arc_length_reparam`]);
//! 2. compute the Frenet apparatus ([`frames::frenet_frame`]) and derive the
//!    Bishop frame from it ([`frames::bishop_from_frenet`]);
//! 3. build a Smarandache curve ([`smarandache::construct`]) and evaluate its
//!    closed-form invariants ([`smarandache::invariants`]), then compare them
//!    with the oracle ([`smarandache::oracle_invariants`],
//!    [`smarandache::compare`]);
//! 4. solve for curvature and osculating spheres ([`spheres`]).

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod builtin;
pub mod curve;
pub mod error;
pub mod exec;
pub mod expr;
pub mod format;
pub mod frames;
pub mod pipeline;
pub mod smarandache;
pub mod spheres;

pub use error::{Error, Result};

/// Euclidean 3-vector used throughout the crate.
pub type Vec3 = nalgebra::Vector3<f64>;
