//! Polytopes as extreme-point subsets of a scene, and their supporting faces.

use alloc::vec::Vec;

use crate::directions::{TotalOrder, WeakOrder};
use crate::error::{Error, Result};
use crate::lp::{LinearSystem, Relation};
use crate::rational::Rational;
use crate::scene::Scene;
use crate::vertex_set::VertexSet;

/// The convex hull of a set of scene vertices, stored as exactly its extreme
/// points. Two polytopes are equal iff their vertex sets are equal.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Polytope(VertexSet);

impl Polytope {
    /// Wraps a set already known to be in canonical form.
    pub(crate) fn from_canonical(vertices: VertexSet) -> Self {
        debug_assert!(!vertices.is_empty());
        Polytope(vertices)
    }

    pub fn vertices(self) -> VertexSet {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains(self, index: usize) -> bool {
        self.0.contains(index)
    }
}

impl From<Polytope> for VertexSet {
    fn from(p: Polytope) -> VertexSet {
        p.0
    }
}

/// A direction in either of its two forms.
#[derive(Clone, Copy, Debug)]
pub enum Direction<'a> {
    Vector(&'a [Rational]),
    Weak(&'a WeakOrder),
    Total(&'a TotalOrder),
}

impl<'a> From<&'a WeakOrder> for Direction<'a> {
    fn from(w: &'a WeakOrder) -> Self {
        Direction::Weak(w)
    }
}

impl<'a> From<&'a TotalOrder> for Direction<'a> {
    fn from(t: &'a TotalOrder) -> Self {
        Direction::Total(t)
    }
}

impl<'a> From<&'a [Rational]> for Direction<'a> {
    fn from(v: &'a [Rational]) -> Self {
        Direction::Vector(v)
    }
}

/// Whether the vertex `index` is a convex combination of the other members
/// of `set`. Vertices outside `set` are tested against all of `set`.
pub fn in_hull_of_others(index: usize, set: VertexSet, scene: &Scene) -> bool {
    let mut others = set;
    others.remove(index);
    if others.is_empty() {
        return false;
    }
    let members: Vec<usize> = others.to_vec();
    let mut system = LinearSystem::non_negative(members.len());
    let target = scene.point(index);
    for (axis, t) in target.iter().enumerate() {
        let coeffs = members
            .iter()
            .map(|&m| scene.point(m)[axis].clone())
            .collect();
        system.push(coeffs, Relation::Eq, t.clone());
    }
    system.push(
        alloc::vec![Rational::one(); members.len()],
        Relation::Eq,
        Rational::one(),
    );
    system.is_feasible()
}

/// True iff vertex `index` is not a convex combination of the other members
/// of `set`.
pub fn is_extreme(index: usize, set: VertexSet, scene: &Scene) -> Result<bool> {
    scene.check_set(set.union(VertexSet::singleton(index)))?;
    if !set.contains(index) {
        return Err(Error::UnknownVertex(index));
    }
    Ok(!in_hull_of_others(index, set, scene))
}

/// Label-level form of [`is_extreme`].
pub fn is_extreme_label<S: AsRef<str>>(
    label: &str,
    labels: impl IntoIterator<Item = S>,
    scene: &Scene,
) -> Result<bool> {
    let index = scene.index_of(label)?;
    let set = scene.set_of(labels)?;
    is_extreme(index, set, scene)
}

/// The extreme points of `Conv(set)`.
pub fn canonicalize(set: VertexSet, scene: &Scene) -> Result<Polytope> {
    if set.is_empty() {
        return Err(Error::EmptyLabelSet);
    }
    scene.check_set(set)?;
    let extreme = set
        .iter()
        .filter(|&v| !in_hull_of_others(v, set, scene))
        .collect();
    Ok(Polytope(extreme))
}

pub fn canonicalize_labels<S: AsRef<str>>(
    labels: impl IntoIterator<Item = S>,
    scene: &Scene,
) -> Result<Polytope> {
    canonicalize(scene.set_of(labels)?, scene)
}

/// `P_d`: the vertices of `polytope` maximizing `<x, d>`.
///
/// For a weak order this is the first block that meets the polytope; for a
/// total order it is the first ranked vertex of the polytope.
pub fn supporting_face<'a>(
    polytope: Polytope,
    direction: impl Into<Direction<'a>>,
    scene: &Scene,
) -> Result<Polytope> {
    scene.check_set(polytope.0)?;
    let face = match direction.into() {
        Direction::Vector(d) => {
            if d.len() != scene.dim() {
                return Err(Error::DimensionMismatch {
                    expected: scene.dim(),
                    found: d.len(),
                });
            }
            if d.iter().all(Rational::is_zero) {
                return Err(Error::ZeroDirection);
            }
            max_face_by_vector(polytope.0, d, scene)
        }
        Direction::Weak(w) => {
            if w.universe() != scene.universe() {
                return Err(Error::MismatchedUniverse);
            }
            w.top_block_in(polytope.0)
        }
        Direction::Total(t) => {
            if t.len() != scene.len() {
                return Err(Error::MismatchedUniverse);
            }
            VertexSet::singleton(t.max_in(polytope.0))
        }
    };
    Ok(Polytope(face))
}

/// Vertices of `set` attaining the maximum projection onto `d`.
pub(crate) fn max_face_by_vector(set: VertexSet, d: &[Rational], scene: &Scene) -> VertexSet {
    let mut best: Option<Rational> = None;
    let mut face = VertexSet::EMPTY;
    for v in set {
        let value = scene.project(v, d);
        match &best {
            Some(b) if value < *b => {}
            Some(b) if value == *b => face.insert(v),
            _ => {
                best = Some(value);
                face = VertexSet::singleton(v);
            }
        }
    }
    face
}

/// `C = Conv(union of members)`.
pub fn global_hull<I>(members: I, scene: &Scene) -> Result<Polytope>
where
    I: IntoIterator,
    I::Item: Into<VertexSet>,
{
    let mut union = VertexSet::EMPTY;
    let mut any = false;
    for m in members {
        union = union.union(m.into());
        any = true;
    }
    if !any {
        return Err(Error::EmptyFamily);
    }
    canonicalize(union, scene)
}

/// Canonical forms of every subset of a small scene, indexed by bitmask.
#[derive(Clone, Debug)]
pub struct HullTable {
    hulls: Vec<VertexSet>,
}

impl HullTable {
    /// Largest scene the table is built for (2^12 entries).
    pub const MAX_VERTICES: usize = 12;

    pub fn new(scene: &Scene) -> Result<Self> {
        let n = scene.len();
        if n > Self::MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "vertices for hull table",
                limit: Self::MAX_VERTICES,
                actual: n,
            });
        }
        let size = 1usize << n;
        let mut hulls = alloc::vec![VertexSet::EMPTY; size];
        // A vertex inside the hull of a subset stays inside for every superset,
        // so only vertices extreme in every immediate subset need a fresh test.
        for bits in 1..size {
            let set = VertexSet::from_bits(bits as u64);
            if set.len() <= 2 {
                hulls[bits] = set;
                continue;
            }
            let mut candidates = set;
            for v in set {
                let mut sub = set;
                sub.remove(v);
                let sub_hull = hulls[sub.bits() as usize];
                candidates = candidates.difference(sub.difference(sub_hull));
            }
            hulls[bits] = candidates
                .iter()
                .filter(|&v| !in_hull_of_others(v, set, scene))
                .collect();
        }
        Ok(HullTable { hulls })
    }

    pub fn hull(&self, set: VertexSet) -> Polytope {
        Polytope(self.hulls[set.bits() as usize])
    }
}
