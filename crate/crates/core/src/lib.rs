//! Skeletal signatures of finite group actions on closed Riemann surfaces.
//!
//! A group `G` acting on a surface of genus `σ ≥ 2` with signature
//! `(h; n_1, …, n_r)` has skeletal signature `(h, r)`. This crate provides
//! exact Riemann–Hurwitz arithmetic, the line/triangle/gap geometry of the
//! `(h, r)`-plane, finite groups as multiplication tables, generating-vector
//! search, and the assembly of all of these into per-genus reports.

pub mod error;
pub mod genvec;
pub mod groups;
pub mod numtheory;
pub mod plane;
pub mod rational;
pub mod rh;
pub mod skeleton;

pub use error::{Error, Result};
pub use rational::Rational;
pub use rh::{OrbifoldSignature, SearchVerdict, SkeletalSignature};
