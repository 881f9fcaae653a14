//! The abstract map `G_tau` on collections of subsets of a finite set.
//!
//! Given a family `tau` of total orders on `V`, each order `t` sends a
//! collection `X` to the set of per-member maxima `D_t(X)`, and `G_tau(X)`
//! collects `D_t(X)` over all of `tau`. No convex-hull reduction happens
//! here; [`gtau_vs_fprime`] measures where that differs from the geometric
//! `F'`.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::directions::{orders_from_scene, OrderFamily, TotalOrder};
use crate::dynamics::Convertor;
use crate::error::{Error, Result};
use crate::family::{iterate_until_repeat, Family, Trace};
use crate::scene::Scene;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A collection of nonempty subsets of `V`, with no convexity requirement.
pub type SetFamily = Family;

/// Largest `|V|` for exhaustive oscillator checks (`2^15 - 1` start families).
pub const EXHAUSTIVE_CAP: usize = 4;

/// `max{S}` under `t`: the first element of `t`'s ranking lying in `S`.
pub fn max_under(set: VertexSet, order: &TotalOrder) -> Result<usize> {
    if set.is_empty() {
        return Err(Error::EmptyLabelSet);
    }
    if let Some(v) = set.difference(order.universe()).first() {
        return Err(Error::UnknownVertex(v));
    }
    Ok(order.max_in(set))
}

/// `D_t(X) = { max_t(S) : S in X }`.
pub fn d_image(family: &SetFamily, order: &TotalOrder) -> VertexSet {
    family.iter().fold(VertexSet::EMPTY, |acc, s| {
        acc.union(VertexSet::singleton(order.max_in(s)))
    })
}

fn check_universe(family: &SetFamily, tau: &OrderFamily) -> Result<()> {
    if !family
        .union()
        .is_subset(VertexSet::full(tau.universe_size()))
    {
        return Err(Error::MismatchedUniverse);
    }
    Ok(())
}

/// `G_tau(X) = { D_t(X) : t in tau }`.
pub fn g_tau(family: &SetFamily, tau: &OrderFamily) -> Result<SetFamily> {
    check_universe(family, tau)?;
    Ok(step(family, tau))
}

fn step(family: &SetFamily, tau: &OrderFamily) -> SetFamily {
    Family::new(tau.orders().iter().map(|t| d_image(family, t)))
        .expect("order families are nonempty")
}

pub fn iterate_g(start: &SetFamily, tau: &OrderFamily, max_iter: usize) -> Result<Trace> {
    if max_iter == 0 {
        return Err(Error::InvalidArgument("max_iter must be positive".into()));
    }
    check_universe(start, tau)?;
    iterate_until_repeat(start.clone(), max_iter, |f| Ok(step(f, tau)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    /// Every nonempty collection of nonempty subsets.
    Exhaustive,
    /// `count` random start collections from a seeded generator.
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OscillatorVerdict {
    pub is_oscillator: bool,
    /// The first start collection whose orbit has period above 2.
    pub witness: Option<(SetFamily, Trace)>,
    pub coverage: Coverage,
    /// Number of start collections simulated.
    pub checked: usize,
}

/// Families of nonempty subsets of `0..n` encoded by a bitmask over the
/// `2^n - 1` nonempty subsets.
fn family_from_code(code: u64, n: usize) -> SetFamily {
    let subsets = (1u64 << n) - 1;
    Family::new(
        (0..subsets)
            .filter(|i| code & (1 << i) != 0)
            .map(|i| VertexSet::from_bits(i + 1)),
    )
    .expect("code is nonzero")
}

/// Whether every (or every sampled) orbit of `G_tau` has period at most 2.
pub fn is_oscillator(
    tau: &OrderFamily,
    coverage: Coverage,
    max_iter: usize,
) -> Result<OscillatorVerdict> {
    let n = tau.universe_size();
    let mut checked = 0;
    let mut check = |start: SetFamily| -> Result<Option<(SetFamily, Trace)>> {
        checked += 1;
        let trace = iterate_g(&start, tau, max_iter)?;
        Ok((trace.period() > 2).then_some((start, trace)))
    };
    let mut witness = None;
    match coverage {
        Coverage::Exhaustive => {
            if n > EXHAUSTIVE_CAP {
                return Err(Error::CapExceeded {
                    what: "vertices for exhaustive oscillator check",
                    limit: EXHAUSTIVE_CAP,
                    actual: n,
                });
            }
            let codes = 1u64 << ((1u64 << n) - 1);
            for code in 1..codes {
                if let Some(w) = check(family_from_code(code, n))? {
                    witness = Some(w);
                    break;
                }
            }
        }
        Coverage::Sampled { count, seed } => {
            if n > MAX_VERTICES {
                return Err(Error::CapExceeded {
                    what: "vertices for sampled oscillator check",
                    limit: MAX_VERTICES,
                    actual: n,
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                if let Some(w) = check(random_set_family(&mut rng, n))? {
                    witness = Some(w);
                    break;
                }
            }
        }
    }
    Ok(OscillatorVerdict {
        is_oscillator: witness.is_none(),
        witness,
        coverage,
        checked,
    })
}

/// Between 1 and `2n` uniformly random nonempty subsets of `0..n`.
pub fn random_set_family(rng: &mut impl RngCore, n: usize) -> SetFamily {
    let full = VertexSet::full(n).bits();
    let size = 1 + (rng.next_u64() % (2 * n as u64)) as usize;
    let members = (0..size).map(|_| loop {
        let bits = rng.next_u64() & full;
        if bits != 0 {
            break VertexSet::from_bits(bits);
        }
    });
    Family::new(members.collect::<Vec<_>>()).expect("size is positive")
}

/// A maximizer set that canonicalization changed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullReduction {
    pub step: usize,
    pub order: TotalOrder,
    pub raw: VertexSet,
    pub canonical: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeStep {
    /// `X_{i+1}` under `G_tau`.
    pub gtau: SetFamily,
    /// `Omega'_{i+1}` under the geometric `F'`.
    pub fprime: Family,
    pub identical: bool,
    pub reductions: Vec<HullReduction>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeReport {
    pub tau: OrderFamily,
    pub steps: Vec<BridgeStep>,
}

impl BridgeReport {
    pub fn identical(&self) -> bool {
        self.steps.iter().all(|s| s.identical)
    }

    pub fn flag_count(&self) -> usize {
        self.steps.iter().map(|s| s.reductions.len()).sum()
    }
}

/// Runs `G_tau` with `tau` the scene's realizable total orders alongside the
/// geometric `F'` from the same start, step by step.
pub fn gtau_vs_fprime(start: &Family, scene: &Scene, steps: usize) -> Result<BridgeReport> {
    let convertor = Convertor::restricted(scene)?;
    convertor.check_family(start)?;
    let tau = orders_from_scene(scene)?;
    let mut abstract_state = start.clone();
    let mut geometric_state = start.clone();
    let mut out = Vec::with_capacity(steps);
    for step_index in 0..steps {
        let mut reductions = Vec::new();
        for order in tau.orders() {
            let raw = d_image(&geometric_state, order);
            let canonical = convertor.hull(raw).vertices();
            if raw != canonical {
                reductions.push(HullReduction {
                    step: step_index,
                    order: order.clone(),
                    raw,
                    canonical,
                });
            }
        }
        abstract_state = step(&abstract_state, &tau);
        geometric_state = convertor.apply_fprime(&geometric_state);
        out.push(BridgeStep {
            identical: abstract_state == geometric_state,
            gtau: abstract_state.clone(),
            fprime: geometric_state.clone(),
            reductions,
        });
    }
    Ok(BridgeReport { tau, steps: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;
    use alloc::vec;

    /// V = {A, B, C} = {0, 1, 2}.
    fn order(word: &str) -> TotalOrder {
        let ranking = word.bytes().map(|b| (b - b'A') as usize).collect();
        TotalOrder::new(ranking, 3).unwrap()
    }

    fn triangle_tau() -> OrderFamily {
        OrderFamily::new(["ACB", "ABC", "BCA", "BAC", "CAB", "CBA"].map(order)).unwrap()
    }

    fn set(word: &str) -> VertexSet {
        word.bytes().map(|b| (b - b'A') as usize).collect()
    }

    fn fam(words: &[&str]) -> SetFamily {
        Family::new(words.iter().map(|w| set(w))).unwrap()
    }

    fn words(f: &SetFamily) -> Vec<String> {
        f.iter()
            .map(|s| s.iter().map(|i| (b'A' + i as u8) as char).collect())
            .collect()
    }

    #[test]
    fn max_under_examples() {
        assert_eq!(max_under(set("AB"), &order("ACB")).unwrap(), 0);
        assert_eq!(max_under(set("C"), &order("BAC")).unwrap(), 2);
        assert_eq!(max_under(set("BC"), &order("CAB")).unwrap(), 2);
        assert_eq!(
            max_under(VertexSet::EMPTY, &order("ABC")),
            Err(Error::EmptyLabelSet)
        );
        assert_eq!(
            max_under(VertexSet::singleton(3), &order("ABC")),
            Err(Error::UnknownVertex(3))
        );
    }

    #[test]
    fn d_image_examples() {
        assert_eq!(d_image(&fam(&["AB", "C"]), &order("ACB")), set("AC"));
        assert_eq!(d_image(&fam(&["B"]), &order("ACB")), set("B"));
        assert_eq!(d_image(&fam(&["AC", "BC"]), &order("CAB")), set("C"));
    }

    #[test]
    fn g_tau_reproduces_worked_example() {
        let tau = triangle_tau();
        let x1 = g_tau(&fam(&["AB", "C"]), &tau).unwrap();
        assert_eq!(words(&x1), ["AC", "BC"]);
        let x2 = g_tau(&x1, &tau).unwrap();
        assert_eq!(words(&x2), ["AB", "AC", "BC", "C"]);
        let x3 = g_tau(&x2, &tau).unwrap();
        assert_eq!(words(&x3), ["ABC", "AC", "BC"]);
        let x4 = g_tau(&x3, &tau).unwrap();
        assert_eq!(x4, x2);

        let trace = iterate_g(&fam(&["AB", "C"]), &tau, 100).unwrap();
        assert_eq!((trace.transient(), trace.period()), (2, 2));
    }

    #[test]
    fn single_order_collapses_to_fixed_point() {
        let tau = OrderFamily::new([order("BCA")]).unwrap();
        let trace = iterate_g(&fam(&["AB", "C", "ABC"]), &tau, 10).unwrap();
        assert_eq!(trace.period(), 1);
        assert!(trace.transient() <= 2);
        let v = iterate_g(&fam(&["B"]), &tau, 10).unwrap();
        assert_eq!((v.transient(), v.period()), (0, 1));
    }

    #[test]
    fn mismatched_universe_is_rejected() {
        let tau = triangle_tau();
        let f = Family::new([VertexSet::singleton(5)]).unwrap();
        assert_eq!(g_tau(&f, &tau), Err(Error::MismatchedUniverse));
    }

    #[test]
    fn exhaustive_oscillator_on_worked_example() {
        let verdict = is_oscillator(&triangle_tau(), Coverage::Exhaustive, 1000).unwrap();
        assert!(verdict.is_oscillator);
        assert_eq!(verdict.checked, 127);
        assert!(verdict.witness.is_none());
    }

    #[test]
    fn single_order_is_an_oscillator_and_caps_apply() {
        let tau = OrderFamily::new([order("CAB")]).unwrap();
        assert!(
            is_oscillator(&tau, Coverage::Exhaustive, 100)
                .unwrap()
                .is_oscillator
        );
        let five = OrderFamily::new([TotalOrder::new(vec![0, 1, 2, 3, 4], 5).unwrap()]).unwrap();
        assert!(matches!(
            is_oscillator(&five, Coverage::Exhaustive, 100),
            Err(Error::CapExceeded { .. })
        ));
        let sampled = is_oscillator(&five, Coverage::Sampled { count: 50, seed: 7 }, 100).unwrap();
        assert!(sampled.is_oscillator);
        assert_eq!(sampled.checked, 50);
    }

    #[test]
    fn family_codes_cover_every_collection_once() {
        let mut seen = alloc::collections::BTreeSet::new();
        for code in 1u64..(1 << 7) {
            assert!(seen.insert(family_from_code(code, 3)));
        }
        assert_eq!(seen.len(), 127);
    }

    #[test]
    fn bridge_on_worked_example_has_no_flags() {
        let s = Scene::from_integers(2, [("A", vec![0, 0]), ("B", vec![2, 0]), ("C", vec![1, 2])])
            .unwrap();
        let report = gtau_vs_fprime(&fam(&["AB", "C"]), &s, 4).unwrap();
        assert!(report.identical());
        assert_eq!(report.flag_count(), 0);
        assert_eq!(report.tau.len(), 6);
    }

    #[test]
    fn bridge_flags_dropped_collinear_maximizer() {
        let s = Scene::from_integers(
            2,
            [
                ("A", vec![0, 0]),
                ("B", vec![1, 0]),
                ("C", vec![2, 0]),
                ("D", vec![1, 3]),
            ],
        )
        .unwrap();
        let report = gtau_vs_fprime(&fam(&["A", "B", "C"]), &s, 3).unwrap();
        assert!(report.flag_count() > 0);
        let first = &report.steps[0];
        assert!(!first.identical);
        assert!(first
            .reductions
            .iter()
            .all(|r| r.raw == set("ABC") && r.canonical == set("AC")));
        let two = Scene::from_integers(1, [("A", vec![0]), ("B", vec![1])]).unwrap();
        let r = gtau_vs_fprime(&fam(&["A", "B"]), &two, 3).unwrap();
        assert!(r.identical());
        assert_eq!(r.flag_count(), 0);
    }
}
