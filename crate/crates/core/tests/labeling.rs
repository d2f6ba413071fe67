use affa::diagram::{Corner, Morphism, Side, Vertex};
use affa::evaluate::eval_closed;
use affa::labeling::{
    calibrated_sign, invariant, invariant_with, label_regions, label_regions_from, left_mul,
    regions,
};
use affa::theory::{Family, Label, Theory};

/// Closed diagrams pairing a clicked generator with every generator of the
/// same shape, closed on either side.
fn calibration_suite(th: Theory) -> Vec<Morphism> {
    let mut out = Vec::new();
    for &k in th.box_kinds() {
        let g = Morphism::generator(th, k).unwrap();
        let l = (g.bottom.len() + g.top.len()) as i64;
        for s in 0..l {
            let c = g.click(s);
            for &k2 in th.box_kinds() {
                let h = Morphism::generator(th, k2).unwrap();
                if h.bottom.len() != c.bottom.len() || h.top.len() != c.top.len() {
                    continue;
                }
                // pairs whose shadings disagree cannot be composed
                let Ok(prod) = c.adjoint().compose(&h) else {
                    continue;
                };
                if prod.bottom != prod.top {
                    continue;
                }
                for side in [Side::Left, Side::Right] {
                    let t = prod.trace_close(side).unwrap();
                    if !t.is_zero() {
                        out.push(t);
                    }
                }
            }
        }
    }
    out
}

fn theories() -> Vec<Theory> {
    let mut v = Vec::new();
    for n in 1..=4u32 {
        for (fam, modulus) in [
            (Family::ShadedAOdd, n),
            (Family::ArrowAOdd, 2 * n),
            (Family::ColorAOdd, n),
            (Family::ArrowAEven, 2 * n + 1),
        ] {
            for k in 0..modulus as i64 {
                v.push(Theory::with_root_exp(fam, n, k).unwrap());
            }
        }
    }
    v
}

#[test]
fn calibrated_convention_matches_evaluator() {
    for th in theories() {
        let suite = calibration_suite(th);
        assert!(suite.len() >= 4, "{th}: suite too small");
        for m in &suite {
            let e = eval_closed(m).unwrap();
            let f = invariant(m).unwrap();
            assert_eq!(e, f, "{th}");
        }
    }
}

#[test]
fn opposite_sign_is_rejected() {
    // with a non-real root the other sign must disagree somewhere
    for (fam, n, k) in [
        (Family::ArrowAOdd, 2, 1),
        (Family::ArrowAEven, 1, 1),
        (Family::ShadedAOdd, 3, 1),
        (Family::ColorAOdd, 3, 1),
    ] {
        let th = Theory::with_root_exp(fam, n, k).unwrap();
        let sign = calibrated_sign(fam);
        let suite = calibration_suite(th);
        let disagree = suite
            .iter()
            .any(|m| eval_closed(m).unwrap() != invariant_with(m, -sign).unwrap());
        assert!(disagree, "{th}: both signs fit");
    }
}

#[test]
fn region_examples() {
    let th = Theory::with_root_exp(Family::ShadedAOdd, 2, 1).unwrap();
    let id = Morphism::identity(th, &[Label::Red]);
    assert_eq!(regions(id.terms.keys().next().unwrap()).len(), 2);
    let red = id.trace_close(Side::Right).unwrap();
    let d = red.terms.keys().next().unwrap();
    assert_eq!(regions(d).len(), 2);
    let lab = label_regions(d).unwrap();
    let inner = 1 - lab.star_face;
    assert_eq!(lab.labels[lab.star_face].word(), "1");
    // the region inside a red loop is r = ρ b = b(rb)^{n-1}
    assert_eq!(lab.labels[inner].word(), "brb");
    let empty = Morphism::scalar(th, affa::CycloScalar::one());
    let lab = label_regions(empty.terms.keys().next().unwrap()).unwrap();
    assert_eq!(lab.labels.len(), 1);

    let arrow = Theory::with_root_exp(Family::ArrowAOdd, 2, 1).unwrap();
    let up = Morphism::identity(arrow, &[Label::Up])
        .trace_close(Side::Right)
        .unwrap();
    let lab = label_regions(up.terms.keys().next().unwrap()).unwrap();
    let inner = lab.labels[1 - lab.star_face].word();
    assert!(inner == "u" || inner == "u^3", "{inner}");
}

#[test]
fn labels_are_unique_up_to_translation() {
    for th in theories().into_iter().step_by(3) {
        for m in calibration_suite(th).into_iter().take(6) {
            for d0 in m.terms.keys() {
                for d in d0.expand_plain() {
                    let lab = label_regions(&d).unwrap();
                    let idx_total = regions(&d).iter().map(|f| f.len()).sum::<usize>();
                    assert!(idx_total > 0);
                    for (f, corners) in lab.faces.iter().enumerate() {
                        let start = corners[0];
                        let rel = label_regions_from(&d, start).unwrap();
                        for (g, x) in rel.iter().enumerate() {
                            assert_eq!(left_mul(lab.labels[f], *x), lab.labels[g]);
                        }
                    }
                }
            }
        }
    }
    let _ = Corner::new(Vertex::Bnd, 0);
}

#[test]
fn box_free_diagrams_evaluate_to_coefficient() {
    let th = Theory::with_root_exp(Family::ColorAOdd, 3, 1).unwrap();
    let loops = Morphism::identity(th, &[Label::Red, Label::Blue])
        .trace_close(Side::Right)
        .unwrap();
    let c = affa::CycloScalar::root_power(affa::cyclotomic::RootSpec { order: 3 }, 2);
    let m = loops.scale(&c);
    assert_eq!(invariant(&m).unwrap(), c);
    assert_eq!(eval_closed(&m).unwrap(), c);
}
