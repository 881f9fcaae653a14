//! Direction classes of a scene.
//!
//! A direction `d` orders the vertices by `<v, d>`, furthest first. Directions
//! with no ties give a [`TotalOrder`]; every direction gives a [`WeakOrder`]
//! (an ordered partition into tie blocks). Two directions in the same class
//! expose identical supporting faces of every polytope on the scene, so the
//! realizable classes are a finite stand-in for the whole sphere.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::lp::{LinearSystem, Relation};
use crate::rational::Rational;
use crate::scene::{orthogonal_vector, Scene};
use crate::vertex_set::VertexSet;

/// Largest scene for which total orders are enumerated (8! candidates).
pub const TOTAL_ORDER_CAP: usize = 8;
/// Largest scene for which weak orders are enumerated (4683 candidates at 6).
pub const WEAK_ORDER_CAP: usize = 6;

/// A permutation of the vertex indices `0..n`, furthest first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TotalOrder {
    ranking: Vec<usize>,
}

impl TotalOrder {
    /// Checks that `ranking` is a permutation of `0..n`.
    pub fn new(ranking: Vec<usize>, n: usize) -> Result<Self> {
        if ranking.len() != n {
            return Err(Error::NotAPermutation);
        }
        let mut seen = VertexSet::EMPTY;
        for &v in &ranking {
            if v >= n || seen.contains(v) {
                return Err(Error::NotAPermutation);
            }
            seen.insert(v);
        }
        Ok(TotalOrder { ranking })
    }

    pub fn from_labels<S: AsRef<str>>(
        labels: impl IntoIterator<Item = S>,
        scene: &Scene,
    ) -> Result<Self> {
        let ranking = labels
            .into_iter()
            .map(|l| scene.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::NotAPermutation)?;
        TotalOrder::new(ranking, scene.len())
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.ranking.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranking.is_empty()
    }

    pub fn universe(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    /// The first-ranked member of `set`. `set` must meet the universe.
    pub fn max_in(&self, set: VertexSet) -> usize {
        *self
            .ranking
            .iter()
            .find(|&&v| set.contains(v))
            .expect("max_in on a set disjoint from the order")
    }

    pub fn reversed(&self) -> TotalOrder {
        let mut ranking = self.ranking.clone();
        ranking.reverse();
        TotalOrder { ranking }
    }

    pub fn to_weak(&self) -> WeakOrder {
        WeakOrder {
            blocks: self
                .ranking
                .iter()
                .map(|&v| VertexSet::singleton(v))
                .collect(),
        }
    }
}

/// An ordered partition of the vertex indices, highest-projection block first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WeakOrder {
    blocks: Vec<VertexSet>,
}

impl WeakOrder {
    /// Checks that `blocks` partition `0..n`. Realizability is a property of
    /// a scene and is checked by [`realizes_weak`].
    pub fn new(blocks: Vec<VertexSet>, n: usize) -> Result<Self> {
        let mut seen = VertexSet::EMPTY;
        for &b in &blocks {
            if b.is_empty() || b.intersects(seen) {
                return Err(Error::NotAPartition);
            }
            seen = seen.union(b);
        }
        if seen != VertexSet::full(n) || blocks.is_empty() {
            return Err(Error::NotAPartition);
        }
        Ok(WeakOrder { blocks })
    }

    /// Partition check plus realizability on `scene`.
    pub fn realized(blocks: Vec<VertexSet>, scene: &Scene) -> Result<Self> {
        let order = WeakOrder::new(blocks, scene.len())?;
        if realizes_weak(&order, scene)? {
            Ok(order)
        } else {
            Err(Error::Unrealizable)
        }
    }

    /// The class of a concrete direction vector.
    pub fn from_direction(direction: &[Rational], scene: &Scene) -> Result<Self> {
        if direction.len() != scene.dim() {
            return Err(Error::DimensionMismatch {
                expected: scene.dim(),
                found: direction.len(),
            });
        }
        if direction.iter().all(Rational::is_zero) {
            return Err(Error::ZeroDirection);
        }
        let mut projected: Vec<(Rational, usize)> = (0..scene.len())
            .map(|v| (scene.project(v, direction), v))
            .collect();
        projected.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut blocks: Vec<VertexSet> = Vec::new();
        let mut last: Option<&Rational> = None;
        for (value, v) in &projected {
            if last == Some(value) {
                blocks.last_mut().unwrap().insert(*v);
            } else {
                blocks.push(VertexSet::singleton(*v));
                last = Some(value);
            }
        }
        Ok(WeakOrder { blocks })
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn universe(&self) -> VertexSet {
        self.blocks
            .iter()
            .fold(VertexSet::EMPTY, |acc, &b| acc.union(b))
    }

    pub fn is_total(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn to_total(&self) -> Option<TotalOrder> {
        self.is_total().then(|| TotalOrder {
            ranking: self.blocks.iter().map(|b| b.first().unwrap()).collect(),
        })
    }

    /// `set` intersected with the first block that meets it.
    pub fn top_block_in(&self, set: VertexSet) -> VertexSet {
        self.blocks
            .iter()
            .map(|&b| b.intersection(set))
            .find(|b| !b.is_empty())
            .unwrap_or(VertexSet::EMPTY)
    }

    pub fn reversed(&self) -> WeakOrder {
        let mut blocks = self.blocks.clone();
        blocks.reverse();
        WeakOrder { blocks }
    }
}

/// A nonempty duplicate-free set of total orders over one vertex set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderFamily {
    n: usize,
    orders: Vec<TotalOrder>,
}

impl OrderFamily {
    pub fn new(orders: impl IntoIterator<Item = TotalOrder>) -> Result<Self> {
        let set: BTreeSet<TotalOrder> = orders.into_iter().collect();
        let n = match set.first() {
            Some(first) => first.len(),
            None => {
                return Err(Error::InvalidArgument(
                    "order family must be nonempty".into(),
                ))
            }
        };
        if set.iter().any(|o| o.len() != n) {
            return Err(Error::MismatchedUniverse);
        }
        Ok(OrderFamily {
            n,
            orders: set.into_iter().collect(),
        })
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn orders(&self) -> &[TotalOrder] {
        &self.orders
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }
}

/// A direction separating consecutive vertices with margin 1, if one exists.
pub fn total_order_witness(order: &TotalOrder, scene: &Scene) -> Result<Option<Vec<Rational>>> {
    if order.len() != scene.len() {
        return Err(Error::NotAPermutation);
    }
    let mut system = LinearSystem::free(scene.dim());
    for pair in order.ranking.windows(2) {
        system.push(
            scene.difference(pair[0], pair[1]),
            Relation::Ge,
            Rational::one(),
        );
    }
    let witness = system.solve();
    // A single vertex has no constraints; any nonzero direction works.
    Ok(witness.map(|d| {
        if d.iter().all(Rational::is_zero) {
            let mut e = vec![Rational::zero(); scene.dim()];
            e[0] = Rational::one();
            e
        } else {
            d
        }
    }))
}

/// True iff some direction strictly separates each consecutive pair of `order`.
pub fn realizes_total(order: &TotalOrder, scene: &Scene) -> Result<bool> {
    Ok(total_order_witness(order, scene)?.is_some())
}

/// A nonzero direction realizing `order`, if one exists.
pub fn weak_order_witness(order: &WeakOrder, scene: &Scene) -> Result<Option<Vec<Rational>>> {
    if order.universe() != scene.universe() {
        return Err(Error::NotAPartition);
    }
    let reps: Vec<usize> = order.blocks.iter().map(|b| b.first().unwrap()).collect();
    if order.blocks.len() == 1 {
        let diffs: Vec<Vec<Rational>> = order.blocks[0]
            .iter()
            .skip(1)
            .map(|v| scene.difference(v, reps[0]))
            .collect();
        return Ok(orthogonal_vector(&diffs, scene.dim()));
    }
    let mut system = LinearSystem::free(scene.dim());
    for (block, &rep) in order.blocks.iter().zip(&reps) {
        for v in block.iter().skip(1) {
            system.push(scene.difference(v, rep), Relation::Eq, Rational::zero());
        }
    }
    for pair in reps.windows(2) {
        system.push(
            scene.difference(pair[0], pair[1]),
            Relation::Ge,
            Rational::one(),
        );
    }
    Ok(system.solve())
}

/// True iff some nonzero direction ties exactly the blocks of `order` and
/// ranks earlier blocks strictly higher.
pub fn realizes_weak(order: &WeakOrder, scene: &Scene) -> Result<bool> {
    Ok(weak_order_witness(order, scene)?.is_some())
}

fn check_cap(scene: &Scene, limit: usize, what: &'static str) -> Result<()> {
    if scene.len() > limit {
        return Err(Error::CapExceeded {
            what,
            limit,
            actual: scene.len(),
        });
    }
    Ok(())
}

/// All realizable total orders, sorted. Planar scenes use the rotational
/// sweep; other dimensions filter every permutation through the LP.
pub fn enumerate_total_orders(scene: &Scene) -> Result<Vec<TotalOrder>> {
    if scene.dim() == 2 {
        enumerate_total_orders_sweep(scene)
    } else {
        enumerate_total_orders_lp(scene)
    }
}

/// Filters all `n!` permutations through [`realizes_total`].
pub fn enumerate_total_orders_lp(scene: &Scene) -> Result<Vec<TotalOrder>> {
    check_cap(
        scene,
        TOTAL_ORDER_CAP,
        "vertices for total-order enumeration",
    )?;
    let mut out = Vec::new();
    for ranking in permutations(scene.len()) {
        let order = TotalOrder { ranking };
        if realizes_total(&order, scene)? {
            out.push(order);
        }
    }
    out.sort();
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: VertexSet, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n {
            if !used.contains(v) {
                prefix.push(v);
                extend(prefix, used.union(VertexSet::singleton(v)), n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), VertexSet::EMPTY, n, &mut out);
    out
}

/// Exact comparison of planar direction angles in `[0, 2pi)`.
fn angle_cmp(a: &[Rational; 2], b: &[Rational; 2]) -> Ordering {
    let half = |v: &[Rational; 2]| -> u8 {
        if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
            0
        } else {
            1
        }
    };
    half(a)
        .cmp(&half(b))
        .then_with(|| cross(b, a).cmp(&Rational::zero()))
}

fn cross(a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Normals to every vertex difference, both orientations, sorted by angle
/// and deduplicated by ray.
pub fn critical_directions(scene: &Scene) -> Result<Vec<[Rational; 2]>> {
    if scene.dim() != 2 {
        return Err(Error::InvalidArgument(
            "sweep requires a planar scene".into(),
        ));
    }
    let mut rays: Vec<[Rational; 2]> = Vec::new();
    for i in 0..scene.len() {
        for j in i + 1..scene.len() {
            let d = scene.difference(i, j);
            let normal = [-&d[1], d[0].clone()];
            let opposite = [-&normal[0], -&normal[1]];
            rays.push(normal);
            rays.push(opposite);
        }
    }
    rays.sort_by(angle_cmp);
    rays.dedup_by(|a, b| angle_cmp(a, b) == Ordering::Equal);
    Ok(rays)
}

/// One direction strictly inside each open arc between consecutive critical
/// directions.
pub fn generic_directions(scene: &Scene) -> Result<Vec<[Rational; 2]>> {
    let rays = critical_directions(scene)?;
    if rays.is_empty() {
        return Ok(vec![[Rational::one(), Rational::zero()]]);
    }
    let mut out = Vec::with_capacity(rays.len());
    for (k, a) in rays.iter().enumerate() {
        let b = &rays[(k + 1) % rays.len()];
        if cross(a, b).is_positive() {
            out.push([&a[0] + &b[0], &a[1] + &b[1]]);
        } else {
            // Gap of exactly pi: rotate a by a quarter turn.
            out.push([-&a[1], a[0].clone()]);
        }
    }
    Ok(out)
}

/// Planar enumeration: sort the vertices along one direction in every arc of
/// the circle cut out by the critical directions.
pub fn enumerate_total_orders_sweep(scene: &Scene) -> Result<Vec<TotalOrder>> {
    check_cap(
        scene,
        TOTAL_ORDER_CAP,
        "vertices for total-order enumeration",
    )?;
    let mut out = BTreeSet::new();
    for d in generic_directions(scene)? {
        let weak = WeakOrder::from_direction(&d, scene)?;
        let order = weak
            .to_total()
            .expect("arc directions are not orthogonal to any vertex difference");
        out.insert(order);
    }
    Ok(out.into_iter().collect())
}

/// Every ordered set partition of `0..n`, in generation order.
pub fn ordered_partitions(n: usize) -> Vec<Vec<VertexSet>> {
    fn extend(prefix: &mut Vec<VertexSet>, remaining: VertexSet, out: &mut Vec<Vec<VertexSet>>) {
        if remaining.is_empty() {
            out.push(prefix.clone());
            return;
        }
        // Enumerate nonempty submasks of `remaining`.
        let full = remaining.bits();
        let mut sub = full;
        while sub != 0 {
            prefix.push(VertexSet::from_bits(sub));
            extend(prefix, VertexSet::from_bits(full & !sub), out);
            prefix.pop();
            sub = (sub - 1) & full;
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    extend(&mut Vec::new(), VertexSet::full(n), &mut out);
    out
}

/// All realizable weak orders, sorted by blocks.
pub fn enumerate_weak_orders(scene: &Scene) -> Result<Vec<WeakOrder>> {
    check_cap(scene, WEAK_ORDER_CAP, "vertices for weak-order enumeration")?;
    let mut out = Vec::new();
    for blocks in ordered_partitions(scene.len()) {
        let order = WeakOrder { blocks };
        if realizes_weak(&order, scene)? {
            out.push(order);
        }
    }
    out.sort();
    Ok(out)
}

/// The order family `tau` of a geometric scene.
pub fn orders_from_scene(scene: &Scene) -> Result<OrderFamily> {
    OrderFamily::new(enumerate_total_orders(scene)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;

    fn triangle() -> Scene {
        Scene::from_integers(2, [("A", vec![0, 0]), ("B", vec![2, 0]), ("C", vec![1, 2])]).unwrap()
    }

    fn collinear() -> Scene {
        Scene::from_integers(2, [("A", vec![0, 0]), ("B", vec![1, 0]), ("C", vec![2, 0])]).unwrap()
    }

    fn words(orders: &[TotalOrder], scene: &Scene) -> Vec<String> {
        orders
            .iter()
            .map(|o| o.ranking().iter().map(|&v| scene.label(v)).collect())
            .collect()
    }

    fn set(scene: &Scene, labels: &[&str]) -> VertexSet {
        scene.set_of(labels.iter().copied()).unwrap()
    }

    #[test]
    fn realizes_total_examples() {
        let s = collinear();
        let cba = TotalOrder::from_labels(["C", "B", "A"], &s).unwrap();
        let acb = TotalOrder::from_labels(["A", "C", "B"], &s).unwrap();
        assert!(realizes_total(&cba, &s).unwrap());
        assert!(!realizes_total(&acb, &s).unwrap());
        let t = triangle();
        for ranking in permutations(3) {
            assert!(realizes_total(&TotalOrder::new(ranking, 3).unwrap(), &t).unwrap());
        }
    }

    #[test]
    fn total_order_validation() {
        assert_eq!(TotalOrder::new(vec![0, 0], 2), Err(Error::NotAPermutation));
        assert_eq!(TotalOrder::new(vec![0], 2), Err(Error::NotAPermutation));
        assert_eq!(TotalOrder::new(vec![0, 2], 2), Err(Error::NotAPermutation));
        let t = triangle();
        let short = TotalOrder::new(vec![0, 1], 2).unwrap();
        assert_eq!(realizes_total(&short, &t), Err(Error::NotAPermutation));
    }

    #[test]
    fn realizes_weak_examples() {
        let seg = Scene::from_integers(2, [("A", vec![0, 0]), ("B", vec![2, 0])]).unwrap();
        let tie = WeakOrder::new(vec![seg.universe()], 2).unwrap();
        assert!(realizes_weak(&tie, &seg).unwrap());

        let t = triangle();
        let all = WeakOrder::new(vec![t.universe()], 3).unwrap();
        assert!(!realizes_weak(&all, &t).unwrap());

        let edge = WeakOrder::new(vec![set(&t, &["A", "B"]), set(&t, &["C"])], 3).unwrap();
        let d = weak_order_witness(&edge, &t).unwrap().unwrap();
        assert_eq!(WeakOrder::from_direction(&d, &t).unwrap(), edge);

        assert_eq!(
            WeakOrder::new(vec![set(&t, &["A"]), set(&t, &["A", "B"])], 3),
            Err(Error::NotAPartition)
        );
        assert_eq!(
            WeakOrder::new(vec![set(&t, &["A"])], 3),
            Err(Error::NotAPartition)
        );
    }

    #[test]
    fn counts_of_small_scenes() {
        assert_eq!(enumerate_total_orders(&triangle()).unwrap().len(), 6);
        assert_eq!(enumerate_total_orders(&collinear()).unwrap().len(), 2);
        let quad = Scene::from_integers(
            2,
            [
                ("A", vec![0, 0]),
                ("B", vec![5, 1]),
                ("C", vec![2, 7]),
                ("D", vec![-3, 4]),
            ],
        )
        .unwrap();
        assert_eq!(enumerate_total_orders(&quad).unwrap().len(), 12);
        assert_eq!(enumerate_total_orders_lp(&quad).unwrap().len(), 12);

        assert_eq!(enumerate_weak_orders(&triangle()).unwrap().len(), 12);
        let line = Scene::from_integers(1, [("A", vec![0]), ("B", vec![3])]).unwrap();
        assert_eq!(enumerate_weak_orders(&line).unwrap().len(), 2);
        let seg = Scene::from_integers(2, [("A", vec![0, 0]), ("B", vec![2, 0])]).unwrap();
        assert_eq!(enumerate_weak_orders(&seg).unwrap().len(), 3);
    }

    #[test]
    fn triangle_tau_matches_worked_example() {
        let t = triangle();
        let tau = orders_from_scene(&t).unwrap();
        let mut got = words(tau.orders(), &t);
        got.sort();
        let mut expected: Vec<String> = ["ACB", "ABC", "BCA", "BAC", "CAB", "CBA"]
            .iter()
            .map(|s| String::from(*s))
            .collect();
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn single_point_scene_has_one_order() {
        let s = Scene::from_integers(2, [("A", vec![1, 1])]).unwrap();
        let tau = orders_from_scene(&s).unwrap();
        assert_eq!(tau.len(), 1);
        assert_eq!(tau.orders()[0].ranking(), [0]);
        assert_eq!(enumerate_total_orders_lp(&s).unwrap().len(), 1);
        assert_eq!(enumerate_weak_orders(&s).unwrap().len(), 1);
    }

    #[test]
    fn ordered_partition_counts() {
        // Fubini numbers.
        let counts: Vec<usize> = (1..=6).map(|n| ordered_partitions(n).len()).collect();
        assert_eq!(counts, [1, 3, 13, 75, 541, 4683]);
    }

    #[test]
    fn caps_are_enforced() {
        let big =
            Scene::from_integers(1, (0..9).map(|i| (alloc::format!("v{i}"), vec![i]))).unwrap();
        assert!(matches!(
            enumerate_total_orders(&big),
            Err(Error::CapExceeded { limit: 8, .. })
        ));
        let seven =
            Scene::from_integers(1, (0..7).map(|i| (alloc::format!("v{i}"), vec![i]))).unwrap();
        assert!(matches!(
            enumerate_weak_orders(&seven),
            Err(Error::CapExceeded { limit: 6, .. })
        ));
    }

    #[test]
    fn weak_orders_close_under_reversal() {
        let t = triangle();
        let orders = enumerate_weak_orders(&t).unwrap();
        for w in &orders {
            assert!(orders.contains(&w.reversed()));
        }
    }
}
