//! JSON documents for scenes, families, orders, traces and verdicts.
//!
//! Coordinates are exact strings (`"3"`, `"-1/2"`, `"0.25"`). Families are
//! arrays of sorted label arrays in canonical order.

use std::collections::BTreeMap;
use std::path::Path;

use convertor_core::combinatorics::Coverage;
use convertor_core::{
    Family, OrderFamily, OscillatorVerdict, Rational, Scene, TotalOrder, Trace, VertexSet,
    WeakOrder,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

/// `{"dim": 2, "vertices": {"A": ["0", "0"], ...}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SceneDoc {
    pub dim: usize,
    pub vertices: BTreeMap<String, Vec<String>>,
}

impl SceneDoc {
    pub fn from_scene(scene: &Scene) -> Self {
        let vertices = scene
            .labels()
            .iter()
            .zip(scene.points())
            .map(|(l, p)| (l.clone(), p.iter().map(Rational::to_string).collect()))
            .collect();
        SceneDoc {
            dim: scene.dim(),
            vertices,
        }
    }

    pub fn to_scene(&self) -> Result<Scene> {
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (label, coords) in &self.vertices {
            let point = coords
                .iter()
                .map(|c| {
                    c.parse::<Rational>()
                        .map_err(|e| HarnessError::Parse(format!("vertex `{label}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            vertices.push((label.clone(), point));
        }
        Ok(Scene::new(self.dim, vertices)?)
    }
}

/// Array of label arrays.
pub type FamilyDoc = Vec<Vec<String>>;
/// Labels, furthest first.
pub type TotalOrderDoc = Vec<String>;
/// Blocks of labels, highest first.
pub type WeakOrderDoc = Vec<Vec<String>>;

/// Label lookup for a sorted vertex universe.
pub fn index_of(labels: &[String], label: &str) -> Result<usize> {
    labels
        .binary_search_by(|l| l.as_str().cmp(label))
        .map_err(|_| HarnessError::Parse(format!("unknown label `{label}`")))
}

pub fn set_to_doc(set: VertexSet, labels: &[String]) -> Vec<String> {
    set.iter().map(|i| labels[i].clone()).collect()
}

pub fn set_from_doc(doc: &[String], labels: &[String]) -> Result<VertexSet> {
    if doc.is_empty() {
        return Err(HarnessError::Parse("empty label set".into()));
    }
    doc.iter().map(|l| index_of(labels, l)).collect()
}

pub fn family_to_doc(family: &Family, labels: &[String]) -> FamilyDoc {
    family.iter().map(|m| set_to_doc(m, labels)).collect()
}

/// Member sets as written; callers canonicalize polytope families.
pub fn sets_from_doc(doc: &FamilyDoc, labels: &[String]) -> Result<Vec<VertexSet>> {
    if doc.is_empty() {
        return Err(HarnessError::Parse("empty family".into()));
    }
    doc.iter().map(|m| set_from_doc(m, labels)).collect()
}

pub fn family_from_doc(doc: &FamilyDoc, labels: &[String]) -> Result<Family> {
    Ok(Family::new(sets_from_doc(doc, labels)?)?)
}

pub fn total_order_to_doc(order: &TotalOrder, labels: &[String]) -> TotalOrderDoc {
    order.ranking().iter().map(|&i| labels[i].clone()).collect()
}

pub fn total_order_from_doc(doc: &TotalOrderDoc, labels: &[String]) -> Result<TotalOrder> {
    let ranking = doc
        .iter()
        .map(|l| index_of(labels, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(TotalOrder::new(ranking, labels.len())?)
}

pub fn weak_order_to_doc(order: &WeakOrder, labels: &[String]) -> WeakOrderDoc {
    order
        .blocks()
        .iter()
        .map(|&b| set_to_doc(b, labels))
        .collect()
}

pub fn weak_order_from_doc(doc: &WeakOrderDoc, labels: &[String]) -> Result<WeakOrder> {
    let blocks = doc
        .iter()
        .map(|b| set_from_doc(b, labels))
        .collect::<Result<Vec<_>>>()?;
    Ok(WeakOrder::new(blocks, labels.len())?)
}

/// An order family read from JSON together with its sorted label universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauDoc {
    pub labels: Vec<String>,
    pub tau: OrderFamily,
}

/// Reads `[["A","C","B"], ...]`; the universe is the label set of the first order.
pub fn tau_from_doc(doc: &[TotalOrderDoc]) -> Result<TauDoc> {
    let first = doc
        .first()
        .ok_or_else(|| HarnessError::Parse("empty order family".into()))?;
    let mut labels = first.clone();
    labels.sort();
    labels.dedup();
    let orders = doc
        .iter()
        .map(|o| total_order_from_doc(o, &labels))
        .collect::<Result<Vec<_>>>()?;
    Ok(TauDoc {
        labels,
        tau: OrderFamily::new(orders)?,
    })
}

pub fn tau_to_doc(tau: &OrderFamily, labels: &[String]) -> Vec<TotalOrderDoc> {
    tau.orders()
        .iter()
        .map(|o| total_order_to_doc(o, labels))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub history: Vec<FamilyDoc>,
    pub transient: usize,
    pub period: usize,
}

impl TraceDoc {
    pub fn from_trace(trace: &Trace, labels: &[String]) -> Self {
        TraceDoc {
            history: trace
                .history()
                .iter()
                .map(|f| family_to_doc(f, labels))
                .collect(),
            transient: trace.transient(),
            period: trace.period(),
        }
    }

    pub fn to_trace(&self, labels: &[String]) -> Result<Trace> {
        let history = self
            .history
            .iter()
            .map(|f| family_from_doc(f, labels))
            .collect::<Result<Vec<_>>>()?;
        Ok(Trace::from_parts(history, self.transient, self.period)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum CoverageDoc {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub start: FamilyDoc,
    pub trace: TraceDoc,
}

/// `{"oscillator": true, "coverage": {"mode": "exhaustive"}, "witness": null}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub oscillator: bool,
    pub coverage: CoverageDoc,
    pub witness: Option<WitnessDoc>,
    pub checked: usize,
}

impl VerdictDoc {
    pub fn from_verdict(verdict: &OscillatorVerdict, labels: &[String]) -> Self {
        VerdictDoc {
            oscillator: verdict.is_oscillator,
            coverage: match verdict.coverage {
                Coverage::Exhaustive => CoverageDoc::Exhaustive,
                Coverage::Sampled { count, seed } => CoverageDoc::Sampled { count, seed },
            },
            witness: verdict.witness.as_ref().map(|(start, trace)| WitnessDoc {
                start: family_to_doc(start, labels),
                trace: TraceDoc::from_trace(trace, labels),
            }),
            checked: verdict.checked,
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| HarnessError::Parse(format!("{}: {e}", path.display())))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json(value)).map_err(|e| HarnessError::io(path, e))
}

pub fn read_scene(path: &Path) -> Result<Scene> {
    read_json::<SceneDoc>(path)?.to_scene()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Scene {
        SceneDoc {
            dim: 2,
            vertices: [("A", ["0", "0"]), ("B", ["2", "0"]), ("C", ["1", "2"])]
                .into_iter()
                .map(|(l, p)| (l.to_string(), p.iter().map(|s| s.to_string()).collect()))
                .collect(),
        }
        .to_scene()
        .unwrap()
    }

    #[test]
    fn scene_json_shape() {
        let text = r#"{"dim": 2, "vertices": {"A": ["0","0"], "B": ["2","0"], "C": ["1","2"]}}"#;
        let doc: SceneDoc = serde_json::from_str(text).unwrap();
        let scene = doc.to_scene().unwrap();
        assert_eq!(scene, triangle());
        assert_eq!(SceneDoc::from_scene(&scene), doc);
    }

    #[test]
    fn exact_decimal_coordinates() {
        let text = r#"{"dim": 1, "vertices": {"A": ["0.1"], "B": ["-3/9"]}}"#;
        let scene = serde_json::from_str::<SceneDoc>(text)
            .unwrap()
            .to_scene()
            .unwrap();
        assert_eq!(scene.point(0)[0], Rational::new(1, 10));
        assert_eq!(SceneDoc::from_scene(&scene).vertices["B"], ["-1/3"]);
    }

    #[test]
    fn bad_inputs_are_parse_errors() {
        let bad = r#"{"dim": 1, "vertices": {"A": ["x"]}}"#;
        let err = serde_json::from_str::<SceneDoc>(bad)
            .unwrap()
            .to_scene()
            .unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let scene = triangle();
        let err = family_from_doc(&vec![vec!["Z".into()]], scene.labels()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(family_from_doc(&vec![], scene.labels()).is_err());
        assert!(family_from_doc(&vec![vec![]], scene.labels()).is_err());
    }

    #[test]
    fn orders_and_weak_orders() {
        let scene = triangle();
        let labels = scene.labels();
        let t = total_order_from_doc(&vec!["A".into(), "C".into(), "B".into()], labels).unwrap();
        assert_eq!(t.ranking(), [0, 2, 1]);
        assert_eq!(
            serde_json::to_string(&total_order_to_doc(&t, labels)).unwrap(),
            r#"["A","C","B"]"#
        );
        let w = weak_order_from_doc(
            &vec![vec!["A".into(), "B".into()], vec!["C".into()]],
            labels,
        )
        .unwrap();
        assert_eq!(
            serde_json::to_string(&weak_order_to_doc(&w, labels)).unwrap(),
            r#"[["A","B"],["C"]]"#
        );
        assert!(total_order_from_doc(&vec!["A".into(), "A".into(), "B".into()], labels).is_err());
    }

    #[test]
    fn tau_universe_from_labels() {
        let doc: Vec<TotalOrderDoc> = serde_json::from_str(r#"[["B","A"],["A","B"]]"#).unwrap();
        let tau = tau_from_doc(&doc).unwrap();
        assert_eq!(tau.labels, ["A", "B"]);
        assert_eq!(tau.tau.len(), 2);
        let bad: Vec<TotalOrderDoc> = serde_json::from_str(r#"[["B","A"],["A","C"]]"#).unwrap();
        assert!(tau_from_doc(&bad).is_err());
    }

    #[test]
    fn verdict_json_shape() {
        let v = VerdictDoc {
            oscillator: true,
            coverage: CoverageDoc::Exhaustive,
            witness: None,
            checked: 127,
        };
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"oscillator":true,"coverage":{"mode":"exhaustive"},"witness":null,"checked":127}"#
        );
    }
}
