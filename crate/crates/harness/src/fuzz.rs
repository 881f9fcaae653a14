//! Seeded experiment runs: random scenes and start families, iterated to
//! their first repetition, with period histograms and replayable bundles for
//! every orbit of period above 2.

use std::collections::BTreeMap;

use convertor_core::combinatorics::iterate_g;
use convertor_core::directions::{orders_from_scene, TOTAL_ORDER_CAP, WEAK_ORDER_CAP};
use convertor_core::dynamics::eventually_two_periodic;
use convertor_core::{Convertor, Error as CoreError, Family, Operator, Scene, Trace};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{HarnessError, Result};
use crate::instance::{random_scene, random_sets, random_simplex_scene, trial_rng, Position};
use crate::json::{family_from_doc, family_to_doc, FamilyDoc, SceneDoc, TraceDoc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    F,
    Fprime,
    Gtau,
}

impl OperatorKind {
    /// Largest scene the operator can run on.
    pub fn vertex_cap(self) -> usize {
        match self {
            OperatorKind::F => WEAK_ORDER_CAP,
            OperatorKind::Fprime | OperatorKind::Gtau => TOTAL_ORDER_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct FuzzConfig {
    pub dim: usize,
    pub num_vertices: usize,
    pub num_polytopes: usize,
    pub coordinate_bound: i64,
    pub seed: u64,
    pub trials: usize,
    pub operator: OperatorKind,
    pub simplex_mode: bool,
    pub position: Position,
    pub max_iter: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            dim: 2,
            num_vertices: 5,
            num_polytopes: 3,
            coordinate_bound: 6,
            seed: 0,
            trials: 100,
            operator: OperatorKind::F,
            simplex_mode: false,
            position: Position::Any,
            max_iter: convertor_core::DEFAULT_MAX_ITER,
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(HarnessError::InvalidConfig(m));
        if self.trials == 0 {
            return bad("trials must be positive".into());
        }
        if self.dim == 0 || self.num_vertices == 0 || self.num_polytopes == 0 {
            return bad("dim, num_vertices and num_polytopes must be positive".into());
        }
        if self.coordinate_bound <= 0 {
            return bad("coordinate_bound must be positive".into());
        }
        if self.max_iter == 0 {
            return bad("max_iter must be positive".into());
        }
        if self.simplex_mode && self.num_vertices != self.dim + 1 {
            return bad(format!(
                "simplex mode needs dim + 1 = {} vertices, got {}",
                self.dim + 1,
                self.num_vertices
            ));
        }
        let cap = self.operator.vertex_cap();
        if self.num_vertices > cap {
            return Err(CoreError::CapExceeded {
                what: "vertices for the chosen operator",
                limit: cap,
                actual: self.num_vertices,
            }
            .into());
        }
        Ok(())
    }
}

/// One generated instance and its orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub index: usize,
    pub scene_digest: String,
    pub start: FamilyDoc,
    pub transient: usize,
    pub period: usize,
}

/// Everything needed to replay one orbit independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    pub operator: OperatorKind,
    pub scene: SceneDoc,
    pub start: FamilyDoc,
    pub trace: TraceDoc,
    pub seed: Option<u64>,
    pub trial: Option<usize>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: FuzzConfig,
    pub trials: Vec<TrialRecord>,
    /// period -> number of trials
    pub histogram: BTreeMap<usize, usize>,
    pub findings: Vec<Bundle>,
    pub tallies: BTreeMap<String, Tally>,
}

impl RunReport {
    pub fn max_period(&self) -> usize {
        self.histogram.keys().copied().max().unwrap_or(0)
    }

    /// Names of tallies with at least one failure.
    pub fn failed_checks(&self) -> Vec<&str> {
        self.tallies
            .iter()
            .filter(|(_, t)| t.failed > 0)
            .map(|(name, _)| name.as_str())
            .collect()
    }
}

pub fn scene_digest(scene: &Scene) -> String {
    let text = serde_json::to_string(&SceneDoc::from_scene(scene)).expect("scene serializes");
    hex::encode(&Sha256::digest(text.as_bytes())[..8])
}

/// Scene and canonical start family of trial `index`.
pub fn generate_instance(config: &FuzzConfig, index: usize) -> Result<(Scene, Family)> {
    let mut rng = trial_rng(config.seed, index as u64);
    let scene = if config.simplex_mode {
        random_simplex_scene(&mut rng, config.dim, config.coordinate_bound)?
    } else {
        random_scene(
            &mut rng,
            config.dim,
            config.num_vertices,
            config.coordinate_bound,
            config.position,
        )?
    };
    let sets = random_sets(&mut rng, scene.len(), config.num_polytopes);
    let convertor = Convertor::restricted(&scene)?;
    let start = convertor.polytope_family(sets)?;
    Ok((scene, start))
}

/// The orbit of `start` under the chosen operator.
pub fn run_instance(
    scene: &Scene,
    start: &Family,
    operator: OperatorKind,
    max_iter: usize,
) -> Result<Trace> {
    Ok(match operator {
        OperatorKind::F => Convertor::new(scene)?.iterate(start, Operator::F, max_iter)?,
        OperatorKind::Fprime => {
            Convertor::restricted(scene)?.iterate(start, Operator::FPrime, max_iter)?
        }
        OperatorKind::Gtau => {
            Convertor::restricted(scene)?.check_family(start)?;
            iterate_g(start, &orders_from_scene(scene)?, max_iter)?
        }
    })
}

/// Re-runs a bundle from its scene and start family alone.
pub fn replay(bundle: &Bundle, max_iter: usize) -> Result<TraceDoc> {
    let scene = bundle.scene.to_scene()?;
    let start = family_from_doc(&bundle.start, scene.labels())?;
    let trace = run_instance(&scene, &start, bundle.operator, max_iter)?;
    Ok(TraceDoc::from_trace(&trace, scene.labels()))
}

struct TrialOutcome {
    record: TrialRecord,
    finding: Option<Bundle>,
    checks: Vec<(&'static str, bool)>,
}

fn run_trial(config: &FuzzConfig, index: usize) -> Result<TrialOutcome> {
    let (scene, start) = generate_instance(config, index)?;
    let trace = run_instance(&scene, &start, config.operator, config.max_iter)?;
    let labels = scene.labels();
    let mut checks = Vec::new();
    if config.operator != OperatorKind::Gtau {
        let convertor = Convertor::restricted(&scene)?;
        let hull = convertor.global_hull(&start);
        checks.push((
            "hull_conserved",
            trace
                .history()
                .iter()
                .all(|f| convertor.global_hull(f) == hull),
        ));
    }
    if config.operator == OperatorKind::F {
        let convertor = Convertor::new(&scene)?;
        let hull = convertor.global_hull(&start);
        let faces = convertor.exposed_faces(hull)?;
        checks.push((
            "face_membership_2periodic",
            faces
                .iter()
                .filter(|&&f| f != hull)
                .all(|&f| eventually_two_periodic(f, &trace)),
        ));
        let restricted = convertor.iterate(&start, Operator::FPrime, config.max_iter)?;
        checks.push((
            "period_matches_fprime",
            restricted.period() == trace.period(),
        ));
    }
    if config.simplex_mode {
        checks.push(("simplex_period_le_2", trace.period() <= 2));
    }
    let finding = (trace.period() > 2).then(|| Bundle {
        operator: config.operator,
        scene: SceneDoc::from_scene(&scene),
        start: family_to_doc(&start, labels),
        trace: TraceDoc::from_trace(&trace, labels),
        seed: Some(config.seed),
        trial: Some(index),
    });
    Ok(TrialOutcome {
        record: TrialRecord {
            index,
            scene_digest: scene_digest(&scene),
            start: family_to_doc(&start, labels),
            transient: trace.transient(),
            period: trace.period(),
        },
        finding,
        checks,
    })
}

/// Runs every trial (in parallel) and aggregates in trial order.
pub fn run_fuzz(config: &FuzzConfig) -> Result<RunReport> {
    config.validate()?;
    let outcomes = (0..config.trials)
        .into_par_iter()
        .map(|i| run_trial(config, i))
        .collect::<Result<Vec<_>>>()?;
    let mut report = RunReport {
        config: config.clone(),
        trials: Vec::with_capacity(outcomes.len()),
        histogram: BTreeMap::new(),
        findings: Vec::new(),
        tallies: BTreeMap::new(),
    };
    for outcome in outcomes {
        *report.histogram.entry(outcome.record.period).or_default() += 1;
        for (name, ok) in outcome.checks {
            report
                .tallies
                .entry(name.to_string())
                .or_default()
                .record(ok);
        }
        report.findings.extend(outcome.finding);
        report.trials.push(outcome.record);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_is_invalid() {
        let config = FuzzConfig {
            trials: 0,
            ..FuzzConfig::default()
        };
        assert_eq!(run_fuzz(&config).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn caps_and_simplex_shape_are_checked() {
        let config = FuzzConfig {
            num_vertices: 7,
            ..FuzzConfig::default()
        };
        assert_eq!(config.validate().unwrap_err().exit_code(), 3);
        let config = FuzzConfig {
            simplex_mode: true,
            num_vertices: 4,
            ..FuzzConfig::default()
        };
        assert_eq!(config.validate().unwrap_err().exit_code(), 2);
    }

    #[test]
    fn histogram_counts_every_trial() {
        let config = FuzzConfig {
            trials: 12,
            num_vertices: 4,
            seed: 5,
            ..FuzzConfig::default()
        };
        let report = run_fuzz(&config).unwrap();
        assert_eq!(report.histogram.values().sum::<usize>(), 12);
        assert_eq!(report.trials.len(), 12);
        assert!(report.trials.iter().enumerate().all(|(i, t)| t.index == i));
        for finding in &report.findings {
            assert!(finding.trace.period > 2);
        }
        assert_eq!(report, run_fuzz(&config).unwrap());
    }

    #[test]
    fn gtau_operator_runs() {
        let config = FuzzConfig {
            trials: 5,
            operator: OperatorKind::Gtau,
            ..FuzzConfig::default()
        };
        assert_eq!(run_fuzz(&config).unwrap().trials.len(), 5);
    }
}
