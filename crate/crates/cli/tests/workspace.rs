use std::path::Path;

use fundament_cli::expr::{argument_location, parse_cover};
use fundament_cli::{CliError, Location, Object, Workspace};
use fundament_core::{Cover, DEFAULT_ORDER_CAP};

fn parse(text: &str) -> Result<Workspace, CliError> {
    parse_capped(text, DEFAULT_ORDER_CAP)
}

fn parse_capped(text: &str, cap: usize) -> Result<Workspace, CliError> {
    Workspace::parse_sources(&[("test.grp".to_string(), text.to_string())], cap)
}

fn at(line: usize, column: usize) -> Location {
    Location { source: "test.grp".into(), line, column }
}

fn cover(ws: &Workspace, text: &str) -> Cover {
    ws.eval_cover(&parse_cover(text, &argument_location(1)).unwrap()).unwrap()
}

#[test]
fn intro_example_has_five_objects() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/intro.grp");
    let ws = Workspace::parse_files(&[path], DEFAULT_ORDER_CAP).unwrap();
    let kinds: Vec<(&str, &str)> = ws.objects().map(|(n, o)| (n, o.kind())).collect();
    assert_eq!(kinds, [("C2", "group"), ("V4", "group"), ("C4", "group"), ("eta0", "hom"), ("eta1", "hom")]);
    let orders: Vec<usize> = ws
        .objects()
        .filter_map(|(_, o)| match o {
            Object::Group(g) => Some(g.order()),
            _ => None,
        })
        .collect();
    assert_eq!(orders, [2, 4, 4]);
    let eta0 = cover(&ws, "eta0");
    let eta1 = cover(&ws, "eta1");
    assert!(eta0.source().is_abelian() && eta0.source().elements().all(|x| eta0.source().element_order(x) <= 2));
    assert!(eta1.source().elements().any(|x| eta1.source().element_order(x) == 4));
}

#[test]
fn c4_and_eta1_make_two_objects() {
    let ws = parse("group C4\ngen a = (1 2 3 4)\n\nhom eta1 : C4 -> C4\na -> a a\n").unwrap();
    assert_eq!(ws.len(), 2);
    let Some(Object::Hom(h)) = ws.get("eta1") else { panic!("eta1 is a hom") };
    assert_eq!(h.table(), [0, 2, 0, 2]);
}

#[test]
fn undefined_hom_target_is_an_unknown_reference() {
    let err = parse("group C4\ngen a = (1 2 3 4)\n\nhom eta1 : C4 -> C2\na -> t\n").unwrap_err();
    match err {
        CliError::UnknownReference { at: loc, name } => {
            assert_eq!(name, "C2");
            assert_eq!(loc, at(4, 18));
        }
        e => panic!("unexpected {e}"),
    }
}

#[test]
fn unknown_generators_are_unknown_references() {
    let base = "group C2\ngen t = (1 2)\n\nhom f : C2 -> C2\n";
    let err = parse(&format!("{base}s -> t\n")).unwrap_err();
    assert!(matches!(err, CliError::UnknownReference { ref name, .. } if name == "s"), "{err}");
    let err = parse(&format!("{base}t -> u\n")).unwrap_err();
    assert!(matches!(err, CliError::UnknownReference { ref name, ref at } if name == "u" && at.column == 6), "{err}");
}

#[test]
fn parse_errors_carry_line_and_column() {
    let cases = [
        ("group C4\ngen a = (1 2 3 4 1)\n", at(2, 18)),
        ("group C4\ngen a = (1 2 x)\n", at(2, 14)),
        ("group C4\ngen a = (1 2\n", at(2, 13)),
        ("group C4\ngen a = (0 1)\n", at(2, 10)),
        ("groop C4\n", at(1, 1)),
        ("  hom f C4 -> C4\n", at(1, 9)),
        ("group C2\ngen t = (1 2)\ngen t = ()\n", at(3, 1)),
        ("group C2\ngen t = (1 2)\n\ngroup C2\n", at(4, 7)),
    ];
    for (text, want) in cases {
        match parse(text) {
            Err(CliError::Parse { at, .. }) => assert_eq!(at, want, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}

#[test]
fn every_generator_needs_an_image() {
    let err = parse("group V4\ngen a = (1 2)\ngen b = (3 4)\n\nhom f : V4 -> V4\na -> b\n").unwrap_err();
    assert!(matches!(err, CliError::Parse { ref message, .. } if message.contains("`b`")), "{err}");
}

#[test]
fn inconsistent_images_are_library_errors_with_context() {
    let err = parse("group C2\ngen t = (1 2)\n\ngroup C3\ngen z = (1 2 3)\n\nhom f : C2 -> C3\nt -> z\n").unwrap_err();
    assert!(matches!(err, CliError::Library { ref context, .. } if context.contains("hom f")), "{err}");
}

#[test]
fn order_cap_applies_to_declared_groups() {
    let text = "group S5\ngen a = (1 2)\ngen b = (1 2 3 4 5)\n";
    assert!(matches!(parse_capped(text, 100), Err(CliError::OrderCapExceeded { cap: 100, .. })));
    assert_eq!(parse_capped(text, 120).unwrap().len(), 1);
}

#[test]
fn comments_blank_lines_and_word_syntax() {
    let ws = parse(
        "# header\ngroup C4   # cyclic\ngen a = (1 2 3 4)\n\n\nhom inv : C4 -> C4\na -> a^-1\n\nhom sq : C4 -> C4\na -> a*a^5\n",
    )
    .unwrap();
    let Some(Object::Hom(inv)) = ws.get("inv") else { panic!() };
    let Some(Object::Hom(sq)) = ws.get("sq") else { panic!() };
    let g = inv.source();
    let a = g.generators()[0];
    assert_eq!(inv.apply(a), g.inv(a));
    assert_eq!(sq.apply(a), g.pow(a, 6));
}

#[test]
fn declared_fiber_products_are_groups_and_covers() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/covers.grp");
    let ws = Workspace::parse_files(&[path], DEFAULT_ORDER_CAP).unwrap();
    let e = ws.fiber_product("E").unwrap();
    assert_eq!(e.carrier().order(), 8);
    assert_eq!(cover(&ws, "E"), e.structure_map().clone());
    assert_eq!(ws.group("E", &argument_location(1)).unwrap().order(), 8);
}

#[test]
fn cover_expressions() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/intro.grp");
    let ws = Workspace::parse_files(&[path], DEFAULT_ORDER_CAP).unwrap();
    assert_eq!(cover(&ws, "C4->1").kernel().order(), 4);
    assert!(cover(&ws, "id(V4)").is_isomorphism());
    assert_eq!(cover(&ws, "eta1^3").source().order(), 16);
    assert!(cover(&ws, "eta1^0").is_isomorphism());
    assert_eq!(cover(&ws, "fprod(eta0, eta1^2)").source().order(), 16);
    assert_eq!(cover(&ws, "then(eta1, C2->1)"), Cover::to_trivial(cover(&ws, "eta1").source()));
    assert_eq!(cover(&ws, "S4->1").source().order(), 24);
    assert_eq!(cover(&ws, "C2xC2xC3->1").source().order(), 12);

    let bad = |text: &str| ws.eval_cover(&parse_cover(text, &argument_location(1))?);
    assert!(matches!(bad("eta2"), Err(CliError::UnknownReference { .. })));
    assert!(matches!(bad("C4"), Err(CliError::Parse { .. })));
    assert!(matches!(bad("fprod(eta0,"), Err(CliError::Parse { .. })));
    assert!(matches!(bad("fprod(eta0, C4->1)"), Err(CliError::Library { .. })));
    assert!(matches!(bad("S9->1"), Err(CliError::OrderCapExceeded { .. })));
}
