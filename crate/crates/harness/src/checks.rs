//! Property suites over seeded random instances.

use std::collections::BTreeSet;

use convertor_core::directions::{
    enumerate_total_orders_lp, enumerate_total_orders_sweep, weak_order_witness,
};
use convertor_core::geometry::supporting_face;
use convertor_core::{Convertor, Family, Operator, Polytope, Scene};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::instance::{random_scene, random_sets, trial_rng, Position};
use crate::json::{family_to_doc, FamilyDoc, SceneDoc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    /// `F(Omega'_i) = F(Omega_i)`, `F'(Omega'_i) = F'(Omega_i)`, and equal periods.
    Interleaving,
    /// The global hull is constant along `F` and `F'` runs.
    ConvInvariance,
    /// Supporting faces are idempotent and agree between vector and order form.
    SupportIdempotence,
    /// The face of a hull lies in the hull of the members' faces.
    SupportInclusion,
    /// Every `F` member is the hull of a union of `F'` members.
    Decomposition,
    /// Proper exposed faces of the hull, once present, recur two steps later.
    FacePersistence,
    /// Membership of proper exposed faces is eventually 2-periodic.
    #[value(name = "membership-2periodic")]
    #[serde(rename = "membership-2periodic")]
    Membership2Periodic,
    /// Planar sweep and permutation filter enumerate the same orders.
    SweepVsLp,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Interleaving,
        Property::ConvInvariance,
        Property::SupportIdempotence,
        Property::SupportInclusion,
        Property::Decomposition,
        Property::FacePersistence,
        Property::Membership2Periodic,
        Property::SweepVsLp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Interleaving => "interleaving",
            Property::ConvInvariance => "conv-invariance",
            Property::SupportIdempotence => "support-idempotence",
            Property::SupportInclusion => "support-inclusion",
            Property::Decomposition => "decomposition",
            Property::FacePersistence => "face-persistence",
            Property::Membership2Periodic => "membership-2periodic",
            Property::SweepVsLp => "sweep-vs-lp",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub dim: usize,
    /// Each trial draws `|V|` uniformly from `min(3, max_vertices)..=max_vertices`.
    pub max_vertices: usize,
    pub num_polytopes: usize,
    pub coordinate_bound: i64,
    pub seed: u64,
    pub trials: usize,
    /// Steps of the run examined by step-wise properties.
    pub steps: usize,
    pub position: Position,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            dim: 2,
            max_vertices: 5,
            num_polytopes: 3,
            coordinate_bound: 6,
            seed: 0,
            trials: 100,
            steps: 6,
            position: Position::Any,
        }
    }
}

impl CheckConfig {
    pub fn validate(&self, property: Property) -> Result<()> {
        let bad = |m: &str| Err(HarnessError::InvalidConfig(m.to_string()));
        if self.trials == 0 {
            return bad("trials must be positive");
        }
        if self.dim == 0 || self.max_vertices == 0 || self.num_polytopes == 0 {
            return bad("dim, max_vertices and num_polytopes must be positive");
        }
        if self.coordinate_bound <= 0 {
            return bad("coordinate_bound must be positive");
        }
        if property == Property::SweepVsLp && self.dim != 2 {
            return bad("sweep-vs-lp needs dim = 2");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: Option<usize>,
    pub scene: SceneDoc,
    pub start: FamilyDoc,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub property: Property,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Runs `property` once on a given instance; `Some(detail)` on failure.
pub fn check_instance(
    property: Property,
    scene: &Scene,
    start: &Family,
    steps: usize,
) -> Result<Option<String>> {
    let fail = |detail: String| Ok(Some(detail));
    match property {
        Property::SweepVsLp => {
            let sweep = enumerate_total_orders_sweep(scene)?;
            let lp = enumerate_total_orders_lp(scene)?;
            if sweep != lp {
                return fail(format!(
                    "sweep found {} orders, LP filter {}",
                    sweep.len(),
                    lp.len()
                ));
            }
            Ok(None)
        }
        _ => {
            let c = Convertor::new(scene)?;
            check_with_convertor(property, &c, start, steps)
        }
    }
}

fn check_with_convertor(
    property: Property,
    c: &Convertor<'_>,
    start: &Family,
    steps: usize,
) -> Result<Option<String>> {
    let scene = c.scene();
    Ok(match property {
        Property::Interleaving => {
            if let Some(step) = c.interleaving_failure(start, steps)? {
                Some(format!("interleaving breaks at step {step}"))
            } else {
                let full = c.iterate(start, Operator::F, convertor_core::DEFAULT_MAX_ITER)?;
                let restricted =
                    c.iterate(start, Operator::FPrime, convertor_core::DEFAULT_MAX_ITER)?;
                (full.period() != restricted.period()).then(|| {
                    format!(
                        "F period {} but F' period {}",
                        full.period(),
                        restricted.period()
                    )
                })
            }
        }
        Property::ConvInvariance => {
            let hull = c.global_hull(start);
            let mut bad = None;
            for op in [Operator::F, Operator::FPrime] {
                for (i, state) in c.run(start, op, steps)?.iter().enumerate() {
                    if c.global_hull(state) != hull {
                        bad = Some(format!("{op:?} hull changes at step {i}"));
                        break;
                    }
                }
                if bad.is_some() {
                    break;
                }
            }
            bad
        }
        Property::SupportIdempotence => {
            let mut bad = None;
            'outer: for w in c.weak_orders()? {
                let d = weak_order_witness(w, scene)?.expect("enumerated orders are realizable");
                for p in start.iter().chain([c.hull(scene.universe()).vertices()]) {
                    let p = c.hull(p);
                    let face = supporting_face(p, w, scene)?;
                    let again = supporting_face(face, w, scene)?;
                    let by_vector = supporting_face(p, &d[..], scene)?;
                    if again != face || by_vector != face {
                        bad = Some(format!("support of {:?} misbehaves under {:?}", p, w));
                        break 'outer;
                    }
                }
            }
            bad
        }
        Property::SupportInclusion => {
            let mut bad = None;
            for (i, state) in c.run(start, Operator::F, steps)?.iter().enumerate() {
                if !c.check_support_inclusion(state)? {
                    bad = Some(format!("support inclusion fails at step {i}"));
                    break;
                }
            }
            bad
        }
        Property::Decomposition => {
            let mut bad = None;
            for (i, state) in c.run(start, Operator::F, steps)?.iter().enumerate() {
                let full = c.apply_f(state)?;
                let restricted = c.apply_fprime(state);
                let failures: Vec<Polytope> = c.decomposition_failures(&full, &restricted);
                if let Some(p) = failures.first() {
                    bad = Some(format!(
                        "member {:?} of step {} does not decompose",
                        p,
                        i + 1
                    ));
                    break;
                }
            }
            bad
        }
        Property::FacePersistence => (!c.check_face_persistence(start, steps)?)
            .then(|| "exposed face vanished two steps later".to_string()),
        Property::Membership2Periodic => {
            let trace = c.iterate(start, Operator::F, convertor_core::DEFAULT_MAX_ITER)?;
            (!c.check_face_membership_periodic(&trace)?)
                .then(|| format!("face membership not 2-periodic, period {}", trace.period()))
        }
        Property::SweepVsLp => unreachable!("handled without a convertor"),
    })
}

/// The random instance checked in trial `index`.
pub fn generate_check_instance(config: &CheckConfig, index: usize) -> Result<(Scene, Family)> {
    let mut rng = trial_rng(config.seed, index as u64);
    let lo = config.max_vertices.min(3);
    let n = rand::Rng::random_range(&mut rng, lo..=config.max_vertices);
    let scene = random_scene(
        &mut rng,
        config.dim,
        n,
        config.coordinate_bound,
        config.position,
    )?;
    let sets = random_sets(&mut rng, n, config.num_polytopes);
    let start = Convertor::restricted(&scene)?.polytope_family(sets)?;
    Ok((scene, start))
}

/// Runs `property` over `config.trials` seeded instances.
pub fn run_check(property: Property, config: &CheckConfig) -> Result<CheckReport> {
    config.validate(property)?;
    let results = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            let (scene, start) = generate_check_instance(config, i)?;
            let outcome = check_instance(property, &scene, &start, config.steps)?;
            Ok(outcome.map(|detail| Counterexample {
                trial: Some(i),
                scene: SceneDoc::from_scene(&scene),
                start: family_to_doc(&start, scene.labels()),
                detail,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let failed = results.iter().filter(|r| r.is_some()).count();
    Ok(CheckReport {
        property,
        trials: config.trials,
        passed: config.trials - failed,
        failed,
        first_counterexample: results.into_iter().flatten().next(),
    })
}

/// Runs `property` on one explicit instance.
pub fn run_check_on(
    property: Property,
    scene: &Scene,
    start: &Family,
    steps: usize,
) -> Result<CheckReport> {
    let outcome = check_instance(property, scene, start, steps)?;
    let failed = usize::from(outcome.is_some());
    Ok(CheckReport {
        property,
        trials: 1,
        passed: 1 - failed,
        failed,
        first_counterexample: outcome.map(|detail| Counterexample {
            trial: None,
            scene: SceneDoc::from_scene(scene),
            start: family_to_doc(start, scene.labels()),
            detail,
        }),
    })
}

/// Every realizable total order count of a generic planar scene is
/// `|V|(|V| - 1)`; returns the scenes' counts.
pub fn total_order_counts(scenes: &[Scene]) -> Result<Vec<(usize, usize)>> {
    scenes
        .iter()
        .map(|s| Ok((s.len(), enumerate_total_orders_sweep(s)?.len())))
        .collect()
}

/// Distinct property names, for CLI help and reports.
pub fn property_names() -> BTreeSet<&'static str> {
    Property::ALL.iter().map(|p| p.name()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_match_cli_values() {
        use clap::ValueEnum;
        for p in Property::ALL {
            let v = p.to_possible_value().unwrap();
            assert_eq!(v.get_name(), p.name());
            assert_eq!(
                serde_json::to_string(&p).unwrap(),
                format!("\"{}\"", p.name())
            );
        }
        assert_eq!(property_names().len(), 8);
    }

    #[test]
    fn small_runs_pass() {
        let config = CheckConfig {
            trials: 8,
            max_vertices: 4,
            steps: 4,
            ..CheckConfig::default()
        };
        for p in Property::ALL {
            let report = run_check(p, &config).unwrap();
            assert!(
                report.all_passed(),
                "{p:?}: {:?}",
                report.first_counterexample
            );
        }
    }

    #[test]
    fn single_polytope_support_inclusion_is_equality() {
        let scene =
            Scene::from_integers(2, [("A", vec![0, 0]), ("B", vec![3, 1]), ("C", vec![1, 4])])
                .unwrap();
        let c = Convertor::new(&scene).unwrap();
        let f = c.polytope_family([scene.universe()]).unwrap();
        let report = run_check_on(Property::SupportInclusion, &scene, &f, 3).unwrap();
        assert!(report.all_passed());
        for w in c.weak_orders().unwrap() {
            let whole = c.hull(scene.universe());
            assert_eq!(c.omega(&f, w).vertices(), w.top_block_in(whole.vertices()));
        }
    }

    #[test]
    fn sweep_vs_lp_needs_planar_scenes() {
        let config = CheckConfig {
            dim: 3,
            ..CheckConfig::default()
        };
        assert!(run_check(Property::SweepVsLp, &config).is_err());
    }
}
