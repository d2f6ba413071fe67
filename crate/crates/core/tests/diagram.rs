use affa::diagram::{Diagram, Morphism, Side};
use affa::theory::{BoxKind, Family, Label, Theory};
use affa::Error;

fn shaded(n: u32) -> Theory {
    Theory::with_root_exp(Family::ShadedAOdd, n, 1).unwrap()
}

fn arrow(n: u32) -> Theory {
    Theory::with_root_exp(Family::ArrowAOdd, n, 1).unwrap()
}

fn color(n: u32) -> Theory {
    Theory::with_root_exp(Family::ColorAOdd, n, 1).unwrap()
}

#[test]
fn identity_is_valid() {
    let th = shaded(2);
    Diagram::identity(th, &[Label::Red]).validate().unwrap();
    Diagram::identity(th, &[Label::Red, Label::Blue, Label::Red])
        .validate()
        .unwrap();
    let th = arrow(2);
    Diagram::identity(th, &[Label::Up, Label::Down, Label::Plain])
        .validate()
        .unwrap();
}

#[test]
fn generators_are_valid() {
    for th in [
        shaded(1),
        shaded(2),
        shaded(3),
        arrow(1),
        arrow(2),
        color(2),
    ] {
        for &k in th.box_kinds() {
            let d = Diagram::generator(th, k).unwrap();
            d.validate().unwrap_or_else(|e| panic!("{th} {k}: {e}"));
        }
    }
    let even = Theory::with_root_exp(Family::ArrowAEven, 1, 1).unwrap();
    for &k in even.box_kinds() {
        Diagram::generator(even, k).unwrap().validate().unwrap();
    }
}

#[test]
fn wrong_leg_count_is_rejected() {
    let text = r#"{"theory":{"family":"shaded-a-odd","n":2,"root":{"order":1,"exp":0}},
        "bottom":["Blue","Red"],"top":["Red","Blue"],
        "boxes":[{"kind":"U","rot":0}],
        "strands":[{"a":{"bnd":"top","i":0},"b":{"box":0,"leg":0},"label":"Red"},
                   {"a":{"bnd":"top","i":1},"b":{"box":0,"leg":1},"label":"Blue"},
                   {"a":{"bnd":"bottom","i":1},"b":{"box":0,"leg":2},"label":"Red"},
                   {"a":{"bnd":"bottom","i":0},"b":{"box":0,"leg":4},"label":"Blue"}]}"#;
    assert!(matches!(Morphism::parse(text), Err(Error::LegCount(_))));
}

#[test]
fn crossing_strands_are_rejected() {
    // top 0 - bottom 1 and top 1 - bottom 0 must cross
    let text = r#"{"theory":{"family":"color-a-odd","n":1,"root":{"order":1,"exp":0}},
        "bottom":["Red","Red"],"top":["Red","Red"],
        "strands":[{"a":{"bnd":"top","i":0},"b":{"bnd":"bottom","i":1},"label":"Red"},
                   {"a":{"bnd":"top","i":1},"b":{"bnd":"bottom","i":0},"label":"Red"}]}"#;
    assert!(matches!(Morphism::parse(text), Err(Error::Planarity(_))));
}

#[test]
fn missing_theory_is_a_parse_error() {
    assert!(matches!(Morphism::parse("{}"), Err(Error::Parse(_))));
    assert!(matches!(Morphism::parse("[1,"), Err(Error::Parse(_))));
}

#[test]
fn json_round_trip() {
    let th = shaded(2);
    let u = Morphism::generator(th, BoxKind::U).unwrap();
    let ustar = Morphism::generator(th, BoxKind::Ustar).unwrap();
    let m = ustar.compose(&u).unwrap().trace_close(Side::Right).unwrap();
    assert_eq!(m.len(), 1);
    for x in [
        u.clone(),
        ustar,
        m,
        Morphism::zero(th, vec![Label::Red], vec![Label::Red]),
    ] {
        let back = Morphism::parse(&x.to_json_string()).unwrap();
        assert_eq!(back, x);
    }
    let zero = Morphism::zero(th, vec![], vec![]);
    assert_eq!(zero.to_json()["terms"].as_array().unwrap().len(), 0);
}

#[test]
fn rot_field_renumbers_legs() {
    let th = arrow(1);
    let u = Diagram::generator(th, BoxKind::U).unwrap();
    let mut v = u.to_json();
    v["boxes"][0]["rot"] = serde_json::json!(1);
    for s in v["strands"].as_array_mut().unwrap() {
        for key in ["a", "b"] {
            if let Some(leg) = s[key].get("leg").and_then(|x| x.as_u64()) {
                s[key]["leg"] = serde_json::json!((leg + 1) % 2);
            }
        }
    }
    v.as_object_mut().unwrap().remove("embedding");
    let (d, _) = Diagram::from_json_term(&v, "$").unwrap();
    assert_eq!(d.canonical(), u.canonical());
}

#[test]
fn color_disagreement_composes_to_zero() {
    let th = shaded(2);
    let p = Morphism::identity(th, &[Label::Red]);
    let q = Morphism::identity(th, &[Label::Blue]);
    assert!(p.compose(&q).unwrap().is_zero());
    assert_eq!(p.compose(&p).unwrap(), p);
    let up = Morphism::identity(arrow(2), &[Label::Up]);
    let down = Morphism::identity(arrow(2), &[Label::Down]);
    assert!(up.compose(&down).unwrap().is_zero());
}

#[test]
fn plain_strand_absorbs_labels() {
    let th = color(2);
    let x = Morphism::identity(th, &[Label::Plain]);
    let red = Morphism::identity(th, &[Label::Red]);
    let glued = x.compose(&red).unwrap();
    assert_eq!(glued.bottom, vec![Label::Red]);
    assert_eq!(glued.top, vec![Label::Plain]);
    assert_eq!(glued.len(), 1);
    let d = glued.terms.keys().next().unwrap();
    assert_eq!(d.strands[0].label, Label::Red);
}

#[test]
fn tensor_with_zero_and_unit() {
    let th = shaded(1);
    let r = Morphism::identity(th, &[Label::Red]);
    let b = Morphism::identity(th, &[Label::Blue]);
    let rb = r.tensor(&b).unwrap();
    assert_eq!(rb, Morphism::identity(th, &[Label::Red, Label::Blue]));
    let unit = Morphism::identity(th, &[]);
    assert_eq!(unit.tensor(&rb).unwrap(), rb);
    assert_eq!(rb.tensor(&unit).unwrap(), rb);
    let z = Morphism::zero(th, vec![Label::Red], vec![Label::Red]);
    assert!(z.tensor(&rb).unwrap().is_zero());
}

#[test]
fn adjoint_swaps_generators() {
    for th in [shaded(2), arrow(2), color(3)] {
        for &k in th.box_kinds() {
            let g = Morphism::generator(th, k).unwrap();
            assert_eq!(
                g.adjoint(),
                Morphism::generator(th, k.adjoint()).unwrap(),
                "{th} {k}"
            );
            assert_eq!(g.adjoint().adjoint(), g);
        }
    }
}

#[test]
fn click_round_trips() {
    let th = shaded(2);
    let red = Morphism::identity(th, &[Label::Red]);
    assert_eq!(red.click(2), red);
    let u = Morphism::generator(th, BoxKind::U).unwrap();
    for k in -5..5 {
        assert_eq!(u.click(k).click(-k), u);
    }
    assert_eq!(u.click(8), u);
    assert_ne!(u.click(1), u);
    u.click(3).validate().unwrap();
    let a = Morphism::generator(arrow(2), BoxKind::U).unwrap();
    assert_eq!(a.click(4), a);
    a.click(1).validate().unwrap();
    assert_eq!(a.click(1).bottom, a.bottom);
}

#[test]
fn trace_of_strand_is_a_loop() {
    let th = shaded(1);
    let red = Morphism::identity(th, &[Label::Red]);
    for side in [Side::Left, Side::Right] {
        let t = red.trace_close(side).unwrap();
        assert!(t.is_closed());
        let d = t.terms.keys().next().unwrap();
        assert_eq!(d.anchors, 1);
        assert_eq!(d.strands[0].label, Label::Red);
        d.validate().unwrap();
    }
    let x = Morphism::identity(arrow(1), &[Label::Plain])
        .trace_close(Side::Right)
        .unwrap();
    assert_eq!(
        x.terms.keys().next().unwrap().strands[0].label,
        Label::Plain
    );
    let e = x.expand_plain();
    assert_eq!(e.len(), 2);
}

#[test]
fn stacked_boxes_are_structural() {
    let th = shaded(2);
    let u = Morphism::generator(th, BoxKind::U).unwrap();
    let us = Morphism::generator(th, BoxKind::Ustar).unwrap();
    let m = us.compose(&u).unwrap();
    assert_eq!(m.len(), 1);
    let d = m.terms.keys().next().unwrap();
    assert_eq!(d.boxes.len(), 2);
    d.validate().unwrap();
    let t = m.trace_close(Side::Right).unwrap();
    t.validate().unwrap();
    let tl = m.trace_close(Side::Left).unwrap();
    tl.validate().unwrap();
}

#[test]
fn nested_loops_are_distinguished() {
    let th = shaded(1);
    let red = Morphism::identity(th, &[Label::Red]);
    // two loops side by side versus one inside the other
    let side = red
        .trace_close(Side::Right)
        .unwrap()
        .tensor(&red.trace_close(Side::Right).unwrap())
        .unwrap();
    let cup = Morphism::cup(th, Label::Red, Label::Red);
    let cap = Morphism::cap(th, Label::Red, Label::Red);
    let inner = cup.compose(&red.trace_close(Side::Right).unwrap()).unwrap();
    let nested = cap
        .compose(
            &Morphism::identity(th, &[Label::Red])
                .tensor(&Morphism::identity(th, &[Label::Red]))
                .unwrap()
                .compose(&inner)
                .unwrap(),
        )
        .unwrap();
    assert!(side.is_closed() && nested.is_closed());
    let ds = side.terms.keys().next().unwrap();
    let dn = nested.terms.keys().next().unwrap();
    assert_eq!(ds.anchors, 2);
    assert_eq!(dn.anchors, 2);
    assert_eq!(
        ds, dn,
        "a loop between a cup and a cap is beside, not inside"
    );
    // closing to the left wraps the strand around the loop beside it
    let enclosed = red
        .trace_close(Side::Right)
        .unwrap()
        .tensor(&red)
        .unwrap()
        .trace_close(Side::Left)
        .unwrap();
    let de = enclosed.terms.keys().next().unwrap();
    assert_eq!(de.anchors, 2);
    assert_ne!(de, ds);
    de.validate().unwrap();
}
