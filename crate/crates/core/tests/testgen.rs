use affa::diagram::Flow;
use affa::evaluate::eval_closed;
use affa::labeling::invariant;
use affa::testgen::{random_closed, Coverage};
use affa::theory::{Family, Label, Theory};
use affa::{CycloScalar, Morphism};

fn finite(n_max: u32) -> Vec<Theory> {
    let mut out = Vec::new();
    for f in [
        Family::ShadedAOdd,
        Family::ArrowAOdd,
        Family::ColorAOdd,
        Family::ArrowAEven,
    ] {
        for n in 1..=n_max {
            let modulus = Theory::with_root_exp(f, n, 0).unwrap().root_modulus();
            for k in 0..modulus as i64 {
                out.push(Theory::with_root_exp(f, n, k).unwrap());
            }
        }
    }
    out
}

#[test]
fn deterministic_and_valid() {
    let th = Theory::with_root_exp(Family::ArrowAOdd, 2, 1).unwrap();
    let a = random_closed(th, 2, 3, 7);
    assert_eq!(a, random_closed(th, 2, 3, 7));
    assert!(a.is_closed());
    a.validate().unwrap();
    let powers: Vec<CycloScalar> = (0..4).map(|k| th.root_value().pow(k)).collect();
    for seed in 0..200 {
        let d = random_closed(th, 2, 3, seed);
        if d.strands.iter().any(|s| s.label == Label::Plain) {
            continue;
        }
        let v = eval_closed(&Morphism::from_diagram(d)).unwrap();
        assert!(v.is_zero() || powers.contains(&v), "seed {seed}: {v}");
    }
}

#[test]
fn box_free_draws_are_loops() {
    for f in [Family::ColorAOdd, Family::ArrowAInf] {
        let th = if f.is_infinite() {
            Theory::infinite(f)
        } else {
            Theory::with_root_exp(f, 2, 0).unwrap()
        };
        for seed in 0..50 {
            let d = random_closed(th, 0, 4, seed);
            assert!(d.boxes.is_empty());
            assert_eq!(d.strands.len(), d.anchors);
        }
    }
}

#[test]
fn coverage_over_1000_draws() {
    for th in [
        Theory::with_root_exp(Family::ShadedAOdd, 2, 1).unwrap(),
        Theory::with_root_exp(Family::ArrowAEven, 1, 1).unwrap(),
    ] {
        let mut cov = Coverage::default();
        for seed in 0..1000 {
            cov.record(&random_closed(th, 3, 3, seed));
        }
        for k in th.box_kinds() {
            assert!(
                cov.boxes.get(k).copied().unwrap_or(0) > 0,
                "{th}: {k} never drawn"
            );
        }
        assert!(cov.nested > 0 && cov.outer > 0, "{cov:?}");
        if th.family.is_oriented() {
            assert!(
                cov.loops.keys().any(|k| k.1 == Flow::AtoB)
                    && cov.loops.keys().any(|k| k.1 == Flow::BtoA),
                "{cov:?}"
            );
        }
    }
}

#[test]
fn evaluator_agrees_with_labeling_small() {
    for th in finite(2) {
        for seed in 0..100 {
            let d = random_closed(th, 4, 3, seed);
            let m = Morphism::from_diagram(d);
            assert_eq!(
                eval_closed(&m).unwrap(),
                invariant(&m).unwrap(),
                "{th} seed {seed}"
            );
        }
    }
}
