use convertor_core::{Convertor, Operator, Rational, Scene, TotalOrder, VertexSet, WeakOrder};
use convertor_harness::json::{
    family_from_doc, family_to_doc, total_order_from_doc, total_order_to_doc, weak_order_from_doc,
    weak_order_to_doc, FamilyDoc, SceneDoc, TotalOrderDoc, TraceDoc, WeakOrderDoc,
};
use proptest::prelude::*;

fn through_json<T: serde::Serialize + serde::de::DeserializeOwned>(value: &T) -> T {
    serde_json::from_str(&serde_json::to_string(value).unwrap()).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=7).prop_map(|(p, q)| Rational::new(p, q))
}

fn scene() -> impl Strategy<Value = Scene> {
    (1usize..=3).prop_flat_map(|dim| {
        prop::collection::btree_set(prop::collection::vec(rational(), dim), 1..=5).prop_map(
            move |pts| {
                let labels = ["P", "Q", "R", "S", "T"];
                Scene::new(
                    dim,
                    pts.into_iter().enumerate().map(|(i, p)| (labels[i], p)),
                )
                .unwrap()
            },
        )
    })
}

fn instance() -> impl Strategy<Value = (Scene, Vec<u64>, Vec<usize>, Vec<i64>)> {
    scene().prop_flat_map(|s| {
        let n = s.len();
        let dim = s.dim();
        let full = s.universe().bits();
        (
            Just(s),
            prop::collection::vec(1u64..=full, 1..=4),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec(-3i64..=3, dim)
                .prop_filter("nonzero", |d| d.iter().any(|&x| x != 0)),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn documents_round_trip((s, codes, perm, d) in instance()) {
        let labels = s.labels();
        let doc = SceneDoc::from_scene(&s);
        prop_assert_eq!(through_json(&doc).to_scene().unwrap(), s.clone());

        let c = Convertor::new(&s).unwrap();
        let family = c.polytope_family(codes.into_iter().map(VertexSet::from_bits)).unwrap();
        let fdoc: FamilyDoc = through_json(&family_to_doc(&family, labels));
        prop_assert_eq!(family_from_doc(&fdoc, labels).unwrap(), family.clone());

        let order = TotalOrder::new(perm, s.len()).unwrap();
        let odoc: TotalOrderDoc = through_json(&total_order_to_doc(&order, labels));
        prop_assert_eq!(total_order_from_doc(&odoc, labels).unwrap(), order);

        let d: Vec<Rational> = d.into_iter().map(Rational::from_integer).collect();
        let weak = WeakOrder::from_direction(&d, &s).unwrap();
        let wdoc: WeakOrderDoc = through_json(&weak_order_to_doc(&weak, labels));
        prop_assert_eq!(weak_order_from_doc(&wdoc, labels).unwrap(), weak);

        let trace = c.iterate(&family, Operator::F, 1000).unwrap();
        let tdoc: TraceDoc = through_json(&TraceDoc::from_trace(&trace, labels));
        prop_assert_eq!(tdoc.to_trace(labels).unwrap(), trace);
    }
}
