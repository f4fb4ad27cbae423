//! Exact rational toolkit for distinct-volume point configurations.
//!
//! Everything runs over arbitrary-precision rationals, so equality of
//! volumes is decided exactly rather than numerically. The modules:
//!
//! - [`geometry`]: squared volumes via Gram determinants, an independent
//!   bordered-distance-determinant route, degeneracy, and affine rank.
//! - [`rainbow`]: distinct-volume checks at three strengths with explicit
//!   witnesses, maximum-subset search, random generators, and a classifier
//!   for partitioned configurations.
//! - [`ramsey`]: subset colorings, volume-induced colorings, homogeneous-set
//!   extraction (plain and relative to a parameter set), and an exhaustive
//!   arrow check.
//! - [`pattern`]: ordered partitions, convexification, and
//!   pattern-homogeneous subset extraction with certificates.
//! - [`skew`]: skew sets of binary words, order types, and canonical
//!   colorings.
//! - [`combin`]: shared lexicographic subset ranking.
//!
//! Search results are deterministic: scans run in lexicographic order, and
//! the parallel code paths only split work whose outcome is
//! order-independent. The `parallel` feature (on by default) enables them;
//! sequential twins stay available either way.

pub mod combin;
pub mod geometry;
pub mod pattern;
pub mod rainbow;
pub mod ramsey;
pub mod skew;
