//! Exact convertor dynamics on finite families of polytopes.
//!
//! A [`Scene`] fixes a finite vertex universe with rational coordinates. A
//! polytope is the convex hull of some of those vertices, stored as its
//! extreme points. The convertor `F` sends a family of polytopes to the hulls
//! of their supporting faces over every direction; `F'` does the same over
//! tie-free directions only; `G_tau` is the purely combinatorial version
//! driven by a family of vertex orders.
//!
//! Everything is exact. Directions are handled as finitely many classes
//! (weak and total orders of the vertices) rather than as vectors.

#![no_std]

extern crate alloc;

pub mod combinatorics;
pub mod directions;
pub mod dynamics;
mod error;
pub mod family;
pub mod geometry;
pub mod lp;
pub mod rational;
pub mod scene;
mod vertex_set;

pub use combinatorics::{Coverage, OscillatorVerdict, SetFamily};
pub use directions::{OrderFamily, TotalOrder, WeakOrder};
pub use dynamics::{Convertor, Operator, DEFAULT_MAX_ITER};
pub use error::{Error, Result};
pub use family::{Family, Trace};
pub use geometry::{Direction, Polytope};
pub use rational::Rational;
pub use scene::Scene;
pub use vertex_set::{VertexSet, MAX_VERTICES};
