use std::path::Path;
use std::sync::Arc;

use proptest::prelude::*;
use serde_json::Value;

use fundament_cli::expr::{argument_location, parse_cover};
use fundament_cli::json::{GroupData, HomData, SubgroupData};
use fundament_cli::{run, Command, Report, Workspace};
use fundament_core::fprod::fiber_product;
use fundament_core::fundament::{decompose_fundamental, fundament_series};
use fundament_core::{Cover, DEFAULT_ORDER_CAP};

fn workspace() -> Workspace {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/covers.grp");
    Workspace::parse_files(&[path], DEFAULT_ORDER_CAP).unwrap()
}

fn cover(ws: &Workspace, text: &str) -> Cover {
    ws.eval_cover(&parse_cover(text, &argument_location(1)).unwrap()).unwrap()
}

fn s(x: &str) -> String {
    x.to_string()
}

fn exec(ws: &Workspace, cmd: Command) -> Report {
    run(ws, &cmd).unwrap_or_else(|e| panic!("{cmd:?}: {e}"))
}

/// Serializes a result and reads it back, as a consumer of the JSON would.
fn reparse(r: &Report) -> Value {
    serde_json::from_str(&serde_json::to_string(&r.result).unwrap()).unwrap()
}

fn hom_from(v: &Value) -> fundament_core::GroupHom {
    serde_json::from_value::<HomData>(v.clone()).unwrap().build().unwrap()
}

#[test]
fn isomorphic_intro_example() {
    let ws = workspace();
    let r = exec(&ws, Command::Isomorphic { first: s("fprod(eta1,eta1)"), second: s("fprod(eta0,eta1)") });
    assert_eq!(r.text().lines().last(), Some("true"));
    let r = exec(&ws, Command::Isomorphic { first: s("eta0"), second: s("eta1") });
    assert_eq!(r.text().lines().last(), Some("false"));
}

#[test]
fn isomorphic_falls_back_to_search_for_non_fundamental_covers() {
    let ws = workspace();
    let r = exec(&ws, Command::Isomorphic { first: s("C4->1"), second: s("then(eta1, C2->1)") });
    assert_eq!(r.result["method"], "search");
    assert_eq!(r.decision, Some(true));
    let r = exec(&ws, Command::Isomorphic { first: s("C4->1"), second: s("V4->1") });
    assert_eq!(r.decision, Some(false));
}

#[test]
fn series_of_c4_to_trivial() {
    let ws = workspace();
    let r = exec(&ws, Command::Series { cover: s("C4->1") });
    assert!(r.lines.contains(&s("kernel sizes: [4, 2, 1]")));
    assert_eq!(r.result["sizes"], serde_json::json!([4, 2, 1]));
    let r = exec(&ws, Command::Series { cover: s("S3->1") });
    assert_eq!(r.result["sizes"], serde_json::json!([6, 3, 1]));
}

#[test]
fn h2_dimensions() {
    let ws = workspace();
    let cases =
        [("C2", "F2triv", 1), ("C2xC2", "F2triv", 3), ("C3", "F2triv", 0), ("1", "F2triv", 0), ("C2", "ker(sign)", 0)];
    for (g, m, dim) in cases {
        let r = exec(&ws, Command::H2 { group: s(g), module: s(m) });
        assert_eq!(r.lines.last(), Some(&format!("dim_F = {dim}")), "{g} {m}");
        assert_eq!(r.result["dim_F"], dim);
    }
    let r = exec(&ws, Command::H2 { group: s("C3"), module: s("ker(tet)") });
    assert_eq!(r.result["field"]["order"], 4);
    let mut labels: Vec<String> = serde_json::from_value(r.result["field"]["elements"].clone()).unwrap();
    labels.sort();
    assert_eq!(labels, ["0", "1", "w", "w^2"]);
}

#[test]
fn cocycle_classes_of_the_intro_covers() {
    let ws = workspace();
    let r = exec(&ws, Command::Cocycle { cover: s("eta1") });
    assert_eq!(r.result["split"], false);
    assert_eq!(r.result["class"], serde_json::json!(["1"]));
    let r = exec(&ws, Command::Cocycle { cover: s("eta0") });
    assert_eq!(r.result["split"], true);
    let r = exec(&ws, Command::Cocycle { cover: s("fprod(eta0,eta1)") });
    assert_eq!(r.result["class"], Value::Null);
    assert!(run(&ws, &Command::Cocycle { cover: s("S3->1") }).is_err());
}

#[test]
fn fundament_of_c4_to_trivial() {
    let ws = workspace();
    let r = reparse(&exec(&ws, Command::Fundament { cover: s("C4->1") }));
    assert_eq!(r["kernel"]["order"], 2);
    assert_eq!(r["fundamental"], false);
    let bar = hom_from(&r["fundament"]);
    assert_eq!((bar.source().order(), bar.target().order()), (2, 1));
}

#[test]
fn invariants_report_multiplicities_and_supports() {
    let ws = workspace();
    // A split factor adds to the multiplicity; the support stays spanned by the non-split class.
    let r = reparse(&exec(&ws, Command::Invariants { cover: s("fprod(eta0, eta1, eta1)") }));
    assert_eq!(r["multiplicities"], serde_json::json!({ "ab1": 2 }));
    assert_eq!(r["abelian"][0]["supp"], serde_json::json!([["1"]]));
    let r = reparse(&exec(&ws, Command::Invariants { cover: s("id(C2)") }));
    assert_eq!(r["multiplicities"], serde_json::json!({}));
    let r = reparse(&exec(&ws, Command::Invariants { cover: s("A5->1") }));
    assert_eq!(r["multiplicities"], serde_json::json!({ "na1": 1 }));
    assert!(run(&ws, &Command::Invariants { cover: s("C4->1") }).is_err());
}

#[test]
fn decisions_end_with_a_bare_boolean() {
    let ws = workspace();
    let cases = [
        (Command::Dominates { smaller: s("eta1"), larger: s("eta1^2") }, true),
        (Command::Dominates { smaller: s("eta1"), larger: s("eta0") }, false),
        (Command::Lift { pi: s("id(C2)"), tau: s("eta1"), tau2: s("eta1^2") }, false),
        (Command::Lift { pi: s("id(C2)"), tau: s("eta1^2"), tau2: s("eta1") }, true),
        (Command::Lift { pi: s("eta1"), tau: s("id(C4)"), tau2: s("eta1") }, false),
    ];
    for (cmd, want) in cases {
        let r = exec(&ws, cmd.clone());
        assert_eq!(r.text().lines().last(), Some(if want { "true" } else { "false" }), "{cmd:?}");
        assert_eq!(r.result["value"], want);
    }
}

#[test]
fn check_square_properties() {
    let ws = workspace();
    let square = |top: &str, left: &str, bottom: &str, right: &str, property| Command::CheckSquare {
        top: s(top),
        left: s(left),
        bottom: s(bottom),
        right: s(right),
        property,
    };
    use fundament_cli::commands::SquareProperty::*;
    let r = exec(&ws, square("eta1", "eta1", "id(C2)", "id(C2)", Cartesian));
    assert_eq!(
        (r.result["cartesian"].clone(), r.result["semi_cartesian"].clone()),
        (Value::Bool(false), Value::Bool(true))
    );
    assert_eq!(r.decision, Some(false));
    let r = exec(&ws, square("eta1", "eta1", "id(C2)", "id(C2)", SemiCartesian));
    assert_eq!(r.decision, Some(true));
    let r = exec(&ws, square("id(C4)", "eta1", "id(C2)", "eta1", Compact));
    assert_eq!((r.result["cartesian"].clone(), r.decision), (Value::Bool(true), Some(true)));
    assert!(run(&ws, &square("eta1", "eta0", "id(C2)", "id(C2)", Cartesian)).is_err());
}

#[test]
fn decompose_intro_example() {
    let ws = workspace();
    let r = reparse(&exec(&ws, Command::Decompose { cover: s("fprod(eta1,eta1)") }));
    let factors: Vec<_> = r["factors"].as_array().unwrap().iter().map(hom_from).collect();
    assert_eq!(factors.len(), 2);
    let iso = hom_from(&r["iso"]);
    assert!(iso.is_bijective());
    let lib = decompose_fundamental(&cover(&ws, "fprod(eta1,eta1)")).unwrap();
    assert_eq!(iso, lib.iso);
}

#[test]
fn series_json_round_trips() {
    let ws = workspace();
    for text in ["C4->1", "S3->1", "A4->1", "fprod(eta0,eta1)", "then(E, C2->1)"] {
        let pi = cover(&ws, text);
        let lib = fundament_series(&pi);
        let r = reparse(&exec(&ws, Command::Series { cover: s(text) }));
        let kernels: Vec<_> = r["kernels"]
            .as_array()
            .unwrap()
            .iter()
            .map(|k| serde_json::from_value::<SubgroupData>(k.clone()).unwrap().build(pi.source()).unwrap())
            .collect();
        assert_eq!(kernels, lib.kernels(), "{text}");
        let stages: Vec<_> = r["stages"].as_array().unwrap().iter().map(hom_from).collect();
        let want: Vec<_> = lib.stages().iter().map(|c| c.hom().clone()).collect();
        assert_eq!(stages, want, "{text}");
    }
}

fn pool(i: usize) -> &'static str {
    ["eta0", "eta1", "sign"][i]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The carrier, projections and kernels emitted by `fprod` rebuild the
    /// objects the library constructs.
    #[test]
    fn fprod_json_round_trips(word in proptest::collection::vec(0usize..3, 1..=3)) {
        let ws = workspace();
        let names: Vec<String> = word.iter().map(|&i| s(pool(i))).collect();
        let covers: Vec<Cover> = names.iter().map(|n| cover(&ws, n)).collect();
        let fp = fiber_product(covers[0].target(), &covers).unwrap();
        let r = reparse(&exec(&ws, Command::Fprod { covers: names }));

        let carrier = Arc::new(serde_json::from_value::<GroupData>(r["carrier"].clone()).unwrap().build().unwrap());
        prop_assert_eq!(carrier.as_ref(), fp.carrier().as_ref());
        prop_assert_eq!(hom_from(&r["structure_map"]), fp.structure_map().hom().clone());
        let projections: Vec<_> = r["projections"].as_array().unwrap().iter().map(hom_from).collect();
        let want: Vec<_> = fp.projections().iter().map(|c| c.hom().clone()).collect();
        prop_assert_eq!(projections, want);
        let axes: Vec<_> = r["axis_kernels"]
            .as_array()
            .unwrap()
            .iter()
            .map(|k| serde_json::from_value::<SubgroupData>(k.clone()).unwrap().build(&carrier).unwrap())
            .collect();
        prop_assert_eq!(axes, fp.axis_kernels().to_vec());
    }

    /// Text and JSON agree on every decision.
    #[test]
    fn decisions_agree_across_formats(a in proptest::collection::vec(0usize..2, 1..=3), b in proptest::collection::vec(0usize..2, 1..=3)) {
        let ws = workspace();
        let expr = |w: &[usize]| format!("fprod({})", w.iter().map(|&i| pool(i)).collect::<Vec<_>>().join(","));
        for cmd in [
            Command::Dominates { smaller: expr(&a), larger: expr(&b) },
            Command::Isomorphic { first: expr(&a), second: expr(&b) },
        ] {
            let r = exec(&ws, cmd);
            let last = r.text().lines().last().unwrap().to_string();
            prop_assert_eq!(Value::Bool(last == "true"), reparse(&r)["value"].clone());
        }
    }
}
