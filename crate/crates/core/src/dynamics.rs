//! The convertor maps `F` (all direction classes) and `F'` (tie-free
//! directions only), their iteration, and checks of the structural facts
//! relating them.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::directions::{
    enumerate_total_orders, enumerate_weak_orders, realizes_weak, TotalOrder, WeakOrder,
    TOTAL_ORDER_CAP, WEAK_ORDER_CAP,
};
use crate::error::{Error, Result};
use crate::family::{iterate_until_repeat, Family, Trace};
use crate::geometry::{canonicalize, HullTable, Polytope};
use crate::scene::Scene;
use crate::vertex_set::VertexSet;

/// Default iteration budget for [`Convertor::iterate`].
pub const DEFAULT_MAX_ITER: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    /// Every direction class, ties included.
    F,
    /// Tie-free directions only.
    FPrime,
}

/// A scene together with its direction classes and the canonical form of
/// every vertex subset. Built once, then shared by every step on that scene.
#[derive(Clone, Debug)]
pub struct Convertor<'s> {
    scene: &'s Scene,
    hulls: HullTable,
    total: Vec<TotalOrder>,
    weak: Option<Vec<WeakOrder>>,
}

impl<'s> Convertor<'s> {
    /// Supports both maps; the scene must be within the weak-order cap.
    pub fn new(scene: &'s Scene) -> Result<Self> {
        let mut c = Self::restricted(scene)?;
        c.weak = Some(enumerate_weak_orders(scene)?);
        Ok(c)
    }

    /// Supports only `F'`; the scene must be within the total-order cap.
    pub fn restricted(scene: &'s Scene) -> Result<Self> {
        if scene.len() > TOTAL_ORDER_CAP {
            return Err(Error::CapExceeded {
                what: "vertices for total-order enumeration",
                limit: TOTAL_ORDER_CAP,
                actual: scene.len(),
            });
        }
        Ok(Convertor {
            scene,
            hulls: HullTable::new(scene)?,
            total: enumerate_total_orders(scene)?,
            weak: None,
        })
    }

    pub fn scene(&self) -> &'s Scene {
        self.scene
    }

    pub fn total_orders(&self) -> &[TotalOrder] {
        &self.total
    }

    pub fn weak_orders(&self) -> Result<&[WeakOrder]> {
        self.weak.as_deref().ok_or(Error::CapExceeded {
            what: "vertices for weak-order enumeration",
            limit: WEAK_ORDER_CAP,
            actual: self.scene.len(),
        })
    }

    pub fn hull(&self, set: VertexSet) -> Polytope {
        self.hulls.hull(set)
    }

    /// Canonicalizes every member.
    pub fn polytope_family(&self, sets: impl IntoIterator<Item = VertexSet>) -> Result<Family> {
        let mut members = Vec::new();
        for set in sets {
            if set.is_empty() {
                return Err(Error::EmptyLabelSet);
            }
            self.scene.check_set(set)?;
            members.push(self.hull(set).vertices());
        }
        Family::new(members)
    }

    /// Fails unless every member is a canonical polytope of the scene.
    pub fn check_family(&self, family: &Family) -> Result<()> {
        for m in family.iter() {
            self.scene.check_set(m)?;
            if self.hull(m).vertices() != m {
                return Err(Error::InvalidArgument(
                    "family member is not in canonical form".into(),
                ));
            }
        }
        Ok(())
    }

    /// `Omega(d) = Conv(union of P_d)` for a class known to be realizable.
    pub fn omega(&self, family: &Family, direction: &WeakOrder) -> Polytope {
        let union = family.iter().fold(VertexSet::EMPTY, |acc, p| {
            acc.union(direction.top_block_in(p))
        });
        self.hull(union)
    }

    /// `Omega(d)` for a tie-free direction.
    pub fn omega_total(&self, family: &Family, direction: &TotalOrder) -> Polytope {
        let union = family.iter().fold(VertexSet::EMPTY, |acc, p| {
            acc.union(VertexSet::singleton(direction.max_in(p)))
        });
        self.hull(union)
    }

    pub fn apply_f(&self, family: &Family) -> Result<Family> {
        let weak = self.weak_orders()?;
        Family::new(weak.iter().map(|w| self.omega(family, w)))
    }

    pub fn apply_fprime(&self, family: &Family) -> Family {
        Family::new(self.total.iter().map(|t| self.omega_total(family, t)))
            .expect("a scene always has at least one total order")
    }

    pub fn apply(&self, op: Operator, family: &Family) -> Result<Family> {
        match op {
            Operator::F => self.apply_f(family),
            Operator::FPrime => Ok(self.apply_fprime(family)),
        }
    }

    pub fn iterate(&self, start: &Family, op: Operator, max_iter: usize) -> Result<Trace> {
        if max_iter == 0 {
            return Err(Error::InvalidArgument("max_iter must be positive".into()));
        }
        self.check_family(start)?;
        if op == Operator::F {
            self.weak_orders()?;
        }
        iterate_until_repeat(start.clone(), max_iter, |f| self.apply(op, f))
    }

    /// The first `steps + 1` states of the orbit (may revisit states).
    pub fn run(&self, start: &Family, op: Operator, steps: usize) -> Result<Vec<Family>> {
        self.check_family(start)?;
        let mut out = Vec::with_capacity(steps + 1);
        out.push(start.clone());
        for _ in 0..steps {
            let next = self.apply(op, out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn global_hull(&self, family: &Family) -> Polytope {
        self.hull(family.union())
    }

    /// Distinct faces `C_w` of `hull` over every realizable weak order.
    pub fn exposed_faces(&self, hull: Polytope) -> Result<Vec<Polytope>> {
        let faces: BTreeSet<Polytope> = self
            .weak_orders()?
            .iter()
            .map(|w| Polytope::from_canonical(w.top_block_in(hull.vertices())))
            .collect();
        Ok(faces.into_iter().collect())
    }

    /// First step `i < steps` where `F(fpr_i) != F(om_i)` or
    /// `F'(fpr_i) != F'(om_i)`, along `om_{i+1} = F(om_i)`,
    /// `fpr_{i+1} = F'(om_i)`, `fpr_0 = om_0 = start`.
    pub fn interleaving_failure(&self, start: &Family, steps: usize) -> Result<Option<usize>> {
        self.check_family(start)?;
        let mut full = start.clone();
        let mut restricted = start.clone();
        for i in 0..steps {
            let next_full = self.apply_f(&full)?;
            let next_restricted = self.apply_fprime(&full);
            if self.apply_f(&restricted)? != next_full
                || self.apply_fprime(&restricted) != next_restricted
            {
                return Ok(Some(i));
            }
            full = next_full;
            restricted = next_restricted;
        }
        Ok(None)
    }

    pub fn check_interleaving(&self, start: &Family, steps: usize) -> Result<bool> {
        Ok(self.interleaving_failure(start, steps)?.is_none())
    }

    /// `Conv(Omega_i)` is the same for every state of the first `steps` `F`-steps.
    pub fn check_conv_invariance(&self, start: &Family, steps: usize) -> Result<bool> {
        let states = self.run(start, Operator::F, steps)?;
        let hull = self.global_hull(&states[0]);
        Ok(states.iter().all(|s| self.global_hull(s) == hull))
    }

    /// For every proper exposed face `C_w` of the global hull: once
    /// `C_w` is in `Omega_n` it is in `Omega_{n+2}`, within `steps` steps.
    pub fn check_face_persistence(&self, start: &Family, steps: usize) -> Result<bool> {
        let states = self.run(start, Operator::F, steps)?;
        let hull = self.global_hull(start);
        for face in self.exposed_faces(hull)? {
            if face == hull {
                continue;
            }
            let v = face.vertices();
            for n in 0..states.len().saturating_sub(2) {
                if states[n].contains(v) && !states[n + 2].contains(v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `P_d ⊆ Conv(union of (P_i)_d)` for `P = Conv(union of P_i)`, over
    /// every realizable class.
    pub fn check_support_inclusion(&self, family: &Family) -> Result<bool> {
        let whole = self.global_hull(family);
        for w in self.weak_orders()? {
            let face = w.top_block_in(whole.vertices());
            let combined = self.omega(family, w);
            if !self.contained(face, combined) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Conv(set) ⊆ Conv(polytope)`.
    pub fn contained(&self, set: VertexSet, polytope: Polytope) -> bool {
        self.hull(set.union(polytope.vertices())) == polytope
    }

    /// Members of `full` that are not the hull of a union of members of
    /// `restricted`.
    ///
    /// The members of `restricted` inside a target form the largest
    /// admissible sub-collection; any other admissible choice is a subset of
    /// it with a hull no larger, so the target decomposes iff that largest
    /// union reproduces it.
    pub fn decomposition_failures(&self, full: &Family, restricted: &Family) -> Vec<Polytope> {
        full.iter()
            .map(|m| self.hull(m))
            .filter(|&target| {
                let union = restricted
                    .iter()
                    .filter(|&q| self.contained(q, target))
                    .fold(VertexSet::EMPTY, |acc, q| acc.union(q));
                union.is_empty() || self.hull(union) != target
            })
            .collect()
    }

    /// Every member of `F(start)` is the hull of a union of members of
    /// `F'(start)`.
    pub fn check_decomposition(&self, start: &Family) -> Result<bool> {
        self.check_family(start)?;
        let full = self.apply_f(start)?;
        let restricted = self.apply_fprime(start);
        Ok(self.decomposition_failures(&full, &restricted).is_empty())
    }

    /// Membership of every proper exposed face is eventually 2-periodic.
    pub fn check_face_membership_periodic(&self, trace: &Trace) -> Result<bool> {
        let hull = self.global_hull(&trace.history()[0]);
        for face in self.exposed_faces(hull)? {
            if face == hull {
                continue;
            }
            if !eventually_two_periodic(face, trace) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `Omega(d)` with a realizability check on `d`.
pub fn omega_of_direction(
    family: &Family,
    direction: &WeakOrder,
    scene: &Scene,
) -> Result<Polytope> {
    if !realizes_weak(direction, scene)? {
        return Err(Error::Unrealizable);
    }
    let union = family.iter().fold(VertexSet::EMPTY, |acc, p| {
        acc.union(direction.top_block_in(p))
    });
    canonicalize(union, scene)
}

pub fn apply_f(family: &Family, scene: &Scene) -> Result<Family> {
    let c = Convertor::new(scene)?;
    c.check_family(family)?;
    c.apply_f(family)
}

pub fn apply_fprime(family: &Family, scene: &Scene) -> Result<Family> {
    let c = Convertor::restricted(scene)?;
    c.check_family(family)?;
    Ok(c.apply_fprime(family))
}

pub fn iterate(start: &Family, op: Operator, scene: &Scene, max_iter: usize) -> Result<Trace> {
    let c = match op {
        Operator::F => Convertor::new(scene)?,
        Operator::FPrime => Convertor::restricted(scene)?,
    };
    c.iterate(start, op, max_iter)
}

/// Whether `polytope` is a member of each stored state.
pub fn membership_trace(polytope: Polytope, trace: &Trace) -> Vec<bool> {
    trace
        .history()
        .iter()
        .map(|f| f.contains(polytope.vertices()))
        .collect()
}

/// Membership in `X_i` equals membership in `X_{i+2}` for all `i` past the
/// transient.
pub fn eventually_two_periodic(polytope: Polytope, trace: &Trace) -> bool {
    let v = polytope.vertices();
    let mu = trace.transient();
    (0..trace.period())
        .all(|j| trace.state(mu + j).contains(v) == trace.state(mu + j + 2).contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn triangle() -> Scene {
        Scene::from_integers(2, [("A", vec![0, 0]), ("B", vec![2, 0]), ("C", vec![1, 2])]).unwrap()
    }

    fn fam(scene: &Scene, members: &[&[&str]]) -> Family {
        Family::new(
            members
                .iter()
                .map(|m| scene.set_of(m.iter().copied()).unwrap()),
        )
        .unwrap()
    }

    fn words(scene: &Scene, family: &Family) -> Vec<alloc::string::String> {
        family.iter().map(|m| scene.labels_of(m).concat()).collect()
    }

    #[test]
    fn fprime_reproduces_worked_example() {
        let s = triangle();
        let c = Convertor::new(&s).unwrap();
        let omega0 = fam(&s, &[&["A", "B"], &["C"]]);
        let omega1 = c.apply_fprime(&omega0);
        assert_eq!(words(&s, &omega1), ["AC", "BC"]);
        let omega2 = c.apply_fprime(&omega1);
        assert_eq!(words(&s, &omega2), ["AB", "AC", "BC", "C"]);
        let omega3 = c.apply_fprime(&omega2);
        assert_eq!(words(&s, &omega3), ["ABC", "AC", "BC"]);
        assert_eq!(c.apply_fprime(&omega3), omega2);

        let trace = c.iterate(&omega0, Operator::FPrime, 100).unwrap();
        assert_eq!((trace.transient(), trace.period()), (2, 2));
    }

    #[test]
    fn omega_of_direction_examples() {
        let s = triangle();
        let omega0 = fam(&s, &[&["A", "B"], &["C"]]);
        let acb = TotalOrder::from_labels(["A", "C", "B"], &s)
            .unwrap()
            .to_weak();
        let p = omega_of_direction(&omega0, &acb, &s).unwrap();
        assert_eq!(s.labels_of(p.vertices()), ["A", "C"]);

        // The edge AB is the whole face; hull of AB and C is the triangle.
        let tie = WeakOrder::new(
            vec![s.set_of(["A", "B"]).unwrap(), s.set_of(["C"]).unwrap()],
            3,
        )
        .unwrap();
        let p = omega_of_direction(&omega0, &tie, &s).unwrap();
        assert_eq!(s.labels_of(p.vertices()), ["A", "B", "C"]);

        let all = WeakOrder::new(vec![s.universe()], 3).unwrap();
        assert_eq!(
            omega_of_direction(&omega0, &all, &s),
            Err(Error::Unrealizable)
        );

        let single = fam(&s, &[&["B"]]);
        let p = omega_of_direction(&single, &acb, &s).unwrap();
        assert_eq!(s.labels_of(p.vertices()), ["B"]);
    }

    #[test]
    fn singleton_family_is_fixed() {
        let s = triangle();
        let f = fam(&s, &[&["A"]]);
        assert_eq!(apply_f(&f, &s).unwrap(), f);
        let trace = iterate(&f, Operator::F, &s, 10).unwrap();
        assert_eq!((trace.transient(), trace.period()), (0, 1));
        assert_eq!(
            membership_trace(Polytope::from_canonical(f.members()[0]), &trace),
            [true]
        );
    }

    #[test]
    fn f_of_whole_triangle_is_every_face() {
        let s = triangle();
        let whole = fam(&s, &[&["A", "B", "C"]]);
        let image = apply_f(&whole, &s).unwrap();
        // A planar triangle has no direction tying all three corners.
        assert_eq!(words(&s, &image), ["A", "AB", "AC", "B", "BC", "C"]);
    }

    #[test]
    fn f_contains_fprime_members_on_example() {
        let s = triangle();
        let c = Convertor::new(&s).unwrap();
        let omega1 = fam(&s, &[&["A", "C"], &["B", "C"]]);
        let full = c.apply_f(&omega1).unwrap();
        let restricted = c.apply_fprime(&omega1);
        for m in restricted.iter() {
            assert!(full.contains(m));
        }
        let weak = c.weak_orders().unwrap();
        for m in full.iter() {
            assert!(weak.iter().any(|w| c.omega(&omega1, w).vertices() == m));
        }
    }

    #[test]
    fn f_and_fprime_periods_agree_on_example() {
        let s = triangle();
        let c = Convertor::new(&s).unwrap();
        let omega0 = fam(&s, &[&["A", "B"], &["C"]]);
        let tf = c.iterate(&omega0, Operator::F, 100).unwrap();
        let tp = c.iterate(&omega0, Operator::FPrime, 100).unwrap();
        assert_eq!(tf.period(), tp.period());
        assert!(tf.period() <= 2);
        assert!(c.check_interleaving(&omega0, 4).unwrap());
        assert!(c.check_conv_invariance(&omega0, 4).unwrap());
        assert!(c.check_face_persistence(&omega0, 6).unwrap());
        assert!(c.check_decomposition(&omega0).unwrap());
        assert!(c.check_support_inclusion(&omega0).unwrap());
        assert!(c.check_face_membership_periodic(&tf).unwrap());
    }

    #[test]
    fn abc_membership_alternates_in_fprime_cycle() {
        let s = triangle();
        let c = Convertor::new(&s).unwrap();
        let omega0 = fam(&s, &[&["A", "B"], &["C"]]);
        let trace = c.iterate(&omega0, Operator::FPrime, 100).unwrap();
        let abc = c.hull(s.universe());
        assert_eq!(membership_trace(abc, &trace), [false, false, false, true]);
        assert!(eventually_two_periodic(abc, &trace));
        let ac = c.hull(s.set_of(["A", "C"]).unwrap());
        assert_eq!(membership_trace(ac, &trace), [false, true, true, true]);
    }

    #[test]
    fn non_canonical_start_is_rejected() {
        let s = Scene::from_integers(2, [("A", vec![0, 0]), ("B", vec![2, 0]), ("M", vec![1, 0])])
            .unwrap();
        let c = Convertor::new(&s).unwrap();
        let bad = fam(&s, &[&["A", "B", "M"]]);
        assert!(c.iterate(&bad, Operator::F, 10).is_err());
        let good = c.polytope_family(bad.iter()).unwrap();
        assert_eq!(words(&s, &good), ["AB"]);
    }

    #[test]
    fn restricted_convertor_refuses_f() {
        let s = Scene::from_integers(1, (0..7).map(|i| (alloc::format!("v{i}"), vec![i]))).unwrap();
        assert!(matches!(Convertor::new(&s), Err(Error::CapExceeded { .. })));
        let c = Convertor::restricted(&s).unwrap();
        let f = c.polytope_family([s.universe()]).unwrap();
        assert!(matches!(c.apply_f(&f), Err(Error::CapExceeded { .. })));
        assert!(c.iterate(&f, Operator::FPrime, 10).is_ok());
    }
}
