//! The subcommands, as functions from input files to JSON documents.

use std::path::Path;

use convertor_core::combinatorics::{gtau_vs_fprime, is_oscillator, iterate_g, Coverage};
use convertor_core::directions::{enumerate_total_orders, enumerate_weak_orders};
use convertor_core::Family;
use serde::{Deserialize, Serialize};

use crate::checks::{run_check, run_check_on, CheckConfig, CheckReport, Property};
use crate::error::{HarnessError, Result};
use crate::fuzz::{replay, run_fuzz, run_instance, Bundle, FuzzConfig, OperatorKind, RunReport};
use crate::json::{
    family_from_doc, family_to_doc, read_json, read_scene, set_to_doc, tau_from_doc, tau_to_doc,
    total_order_to_doc, weak_order_to_doc, FamilyDoc, TotalOrderDoc, TraceDoc, VerdictDoc,
    WeakOrderDoc,
};
use crate::render::{render_family, render_trace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Total,
    Weak,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrdersDoc {
    Total(Vec<TotalOrderDoc>),
    Weak(Vec<WeakOrderDoc>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionsDoc {
    pub kind: OrderKind,
    pub count: usize,
    pub orders: OrdersDoc,
}

pub fn read_family(path: &Path, labels: &[String]) -> Result<Family> {
    family_from_doc(&read_json::<FamilyDoc>(path)?, labels)
}

pub fn run(scene: &Path, family: &Path, mode: OperatorKind, max_iter: usize) -> Result<TraceDoc> {
    let scene = read_scene(scene)?;
    let start = read_family(family, scene.labels())?;
    let trace = run_instance(&scene, &start, mode, max_iter)?;
    Ok(TraceDoc::from_trace(&trace, scene.labels()))
}

pub fn directions(scene: &Path, kind: OrderKind) -> Result<DirectionsDoc> {
    let scene = read_scene(scene)?;
    let labels = scene.labels();
    let orders = match kind {
        OrderKind::Total => OrdersDoc::Total(
            enumerate_total_orders(&scene)?
                .iter()
                .map(|o| total_order_to_doc(o, labels))
                .collect(),
        ),
        OrderKind::Weak => OrdersDoc::Weak(
            enumerate_weak_orders(&scene)?
                .iter()
                .map(|o| weak_order_to_doc(o, labels))
                .collect(),
        ),
    };
    let count = match &orders {
        OrdersDoc::Total(v) => v.len(),
        OrdersDoc::Weak(v) => v.len(),
    };
    Ok(DirectionsDoc {
        kind,
        count,
        orders,
    })
}

/// Runs a fuzz campaign. In simplex mode a period above 2 is a failure, but
/// the report is still returned so it can be written first.
pub fn fuzz(config: &FuzzConfig) -> Result<(RunReport, Option<HarnessError>)> {
    let report = run_fuzz(config)?;
    let failure = (config.simplex_mode && !report.findings.is_empty()).then(|| {
        HarnessError::PropertyFailure(format!(
            "{} simplex trials have period above 2",
            report.findings.len()
        ))
    });
    Ok((report, failure))
}

/// Runs a property suite, over seeded instances or one given instance.
pub fn check(
    property: Property,
    config: &CheckConfig,
    instance: Option<(&Path, &Path)>,
) -> Result<CheckReport> {
    match instance {
        Some((scene, family)) => {
            let scene = read_scene(scene)?;
            let start = read_family(family, scene.labels())?;
            run_check_on(property, &scene, &start, config.steps)
        }
        None => run_check(property, config),
    }
}

pub fn check_failure(report: &CheckReport) -> Option<HarnessError> {
    (!report.all_passed()).then(|| {
        HarnessError::PropertyFailure(format!(
            "{}: {} of {} instances failed",
            report.property.name(),
            report.failed,
            report.trials
        ))
    })
}

/// What `render` draws.
pub enum RenderSource<'a> {
    Family(&'a Path),
    Trace(&'a Path),
}

pub fn render(scene: &Path, source: RenderSource<'_>) -> Result<String> {
    let scene = read_scene(scene)?;
    match source {
        RenderSource::Family(path) => render_family(&scene, &read_family(path, scene.labels())?),
        RenderSource::Trace(path) => {
            let doc: TraceDoc = read_json(path)?;
            let trace = doc.to_trace(scene.labels())?;
            render_trace(&scene, trace.history())
        }
    }
}

/// Iterates `G_tau`; labels are those of the first order in `tau`.
pub fn gtau(tau: &Path, family: &Path, max_iter: usize) -> Result<TraceDoc> {
    let tau = tau_from_doc(&read_json::<Vec<TotalOrderDoc>>(tau)?)?;
    let start = read_family(family, &tau.labels)?;
    let trace = iterate_g(&start, &tau.tau, max_iter)?;
    Ok(TraceDoc::from_trace(&trace, &tau.labels))
}

/// Exhaustive when `samples` is `None`.
pub fn oscillator(
    tau: &Path,
    samples: Option<usize>,
    seed: u64,
    max_iter: usize,
) -> Result<VerdictDoc> {
    let tau = tau_from_doc(&read_json::<Vec<TotalOrderDoc>>(tau)?)?;
    let coverage = match samples {
        None => Coverage::Exhaustive,
        Some(count) => Coverage::Sampled { count, seed },
    };
    let verdict = is_oscillator(&tau.tau, coverage, max_iter)?;
    Ok(VerdictDoc::from_verdict(&verdict, &tau.labels))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionDoc {
    pub order: TotalOrderDoc,
    pub raw: Vec<String>,
    pub canonical: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeStepDoc {
    pub gtau: FamilyDoc,
    pub fprime: FamilyDoc,
    pub identical: bool,
    pub reductions: Vec<ReductionDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeDoc {
    pub tau: Vec<TotalOrderDoc>,
    pub identical: bool,
    pub flag_count: usize,
    pub steps: Vec<BridgeStepDoc>,
}

/// `G_tau` with the scene's own orders, step by step against `F'`.
pub fn bridge(scene: &Path, family: &Path, steps: usize) -> Result<BridgeDoc> {
    let scene = read_scene(scene)?;
    let labels = scene.labels();
    let start = read_family(family, labels)?;
    let report = gtau_vs_fprime(&start, &scene, steps)?;
    Ok(BridgeDoc {
        tau: tau_to_doc(&report.tau, labels),
        identical: report.identical(),
        flag_count: report.flag_count(),
        steps: report
            .steps
            .iter()
            .map(|s| BridgeStepDoc {
                gtau: family_to_doc(&s.gtau, labels),
                fprime: family_to_doc(&s.fprime, labels),
                identical: s.identical,
                reductions: s
                    .reductions
                    .iter()
                    .map(|r| ReductionDoc {
                        order: total_order_to_doc(&r.order, labels),
                        raw: set_to_doc(r.raw, labels),
                        canonical: set_to_doc(r.canonical, labels),
                    })
                    .collect(),
            })
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayDoc {
    pub identical: bool,
    pub trace: TraceDoc,
}

/// Re-runs a bundle and compares against its recorded trace.
pub fn replay_bundle(bundle: &Path, max_iter: usize) -> Result<ReplayDoc> {
    let bundle: Bundle = read_json(bundle)?;
    let trace = replay(&bundle, max_iter)?;
    Ok(ReplayDoc {
        identical: trace == bundle.trace,
        trace,
    })
}
