use affa::diagram::{Morphism, Side};
use affa::evaluate::{eval_closed, inner_product, morphism_eq};
use affa::theory::{BoxKind, Family, Label, Theory};
use affa::CycloScalar;

fn int(v: i64) -> CycloScalar {
    CycloScalar::from_int(v)
}

#[test]
fn bubbles() {
    let th = Theory::with_root_exp(Family::ShadedAOdd, 2, 1).unwrap();
    let red = Morphism::identity(th, &[Label::Red])
        .trace_close(Side::Right)
        .unwrap();
    assert_eq!(eval_closed(&red).unwrap(), int(1));
    let plain = Morphism::identity(th, &[Label::Plain])
        .trace_close(Side::Right)
        .unwrap();
    assert_eq!(eval_closed(&plain).unwrap(), int(2));
    let arrow = Theory::with_root_exp(Family::ArrowAOdd, 2, 1).unwrap();
    let up = Morphism::identity(arrow, &[Label::Up])
        .trace_close(Side::Left)
        .unwrap();
    assert_eq!(eval_closed(&up).unwrap(), int(1));
}

#[test]
fn unitary_trace_is_one() {
    for (fam, n) in [
        (Family::ShadedAOdd, 2),
        (Family::ArrowAOdd, 2),
        (Family::ArrowAEven, 1),
        (Family::ColorAOdd, 3),
    ] {
        let th = Theory::with_root_exp(fam, n, 1).unwrap();
        for &k in th.box_kinds() {
            let g = Morphism::generator(th, k).unwrap();
            assert_eq!(inner_product(&g, &g).unwrap(), int(1), "{th} {k}");
            let t = g
                .compose(&g.adjoint())
                .unwrap()
                .trace_close(Side::Right)
                .unwrap();
            assert_eq!(eval_closed(&t).unwrap(), int(1), "{th} {k}");
        }
    }
}

#[test]
fn colour_disagreement_is_orthogonal() {
    let th = Theory::with_root_exp(Family::ShadedAOdd, 2, 1).unwrap();
    let p = Morphism::projection(th, &[Label::Red]);
    let q = Morphism::projection(th, &[Label::Blue]);
    assert_eq!(inner_product(&p, &p).unwrap(), int(1));
    let diff = p.sub(&q).unwrap();
    assert_eq!(inner_product(&diff, &diff).unwrap(), int(2));
    let x = Morphism::identity(th, &[Label::Plain]);
    assert!(morphism_eq(&x, &p.add(&q).unwrap()).unwrap());
    assert_eq!(inner_product(&p, &q).unwrap(), int(0));
    assert!(!morphism_eq(&p, &q).unwrap());
    assert!(morphism_eq(&p, &p).unwrap());
}

#[test]
fn shaded_click_relation() {
    for n in 1..=4 {
        for k in 0..n as i64 {
            let th = Theory::with_root_exp(Family::ShadedAOdd, n, k).unwrap();
            let s = th.root_value();
            let u = Morphism::generator(th, BoxKind::U).unwrap();
            let vs = Morphism::generator(th, BoxKind::Vstar).unwrap();
            assert!(morphism_eq(&u.click(1), &vs.scale(&s)).unwrap(), "{th}");
            assert!(morphism_eq(&u.click(-1), &vs).unwrap(), "{th}");
        }
    }
}

#[test]
fn arrow_click_relation() {
    for n in 1..=3 {
        for k in 0..2 * n as i64 {
            let th = Theory::with_root_exp(Family::ArrowAOdd, n, k).unwrap();
            let w = th.root_value();
            let u = Morphism::generator(th, BoxKind::U).unwrap();
            assert!(morphism_eq(&u.click(1), &u.scale(&w)).unwrap(), "{th}");
            assert!(
                !morphism_eq(&u.click(1), &u.scale(&w.mul_ref(&w))).unwrap()
                    || n == 1
                    || w.mul_ref(&w) == w
            );
        }
    }
}
