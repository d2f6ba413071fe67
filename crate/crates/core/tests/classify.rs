use affa::classify::{
    are_isomorphic, classify, click_eigenvalue, count_classes, enumerate_presentations,
    relabeled_eigenvalues, GraphClass,
};
use affa::theory::{Family, Theory};
use affa::CycloScalar;

#[test]
fn enumeration_sizes() {
    assert_eq!(
        enumerate_presentations(GraphClass::UnshadedAOdd, 2)
            .unwrap()
            .len(),
        6
    );
    assert_eq!(
        enumerate_presentations(GraphClass::UnshadedAEven, 1)
            .unwrap()
            .len(),
        3
    );
    assert_eq!(
        enumerate_presentations(GraphClass::ShadedAOdd, 3)
            .unwrap()
            .len(),
        3
    );
    assert_eq!(
        enumerate_presentations(GraphClass::UnshadedAInf, 7)
            .unwrap()
            .len(),
        2
    );
    assert!(enumerate_presentations(GraphClass::ShadedAOdd, 0).is_err());
}

#[test]
fn eigenvalue_examples() {
    let a = Theory::with_root_exp(Family::ArrowAOdd, 1, 0).unwrap();
    assert!(click_eigenvalue(&a).unwrap().is_one());
    let a = Theory::with_root_exp(Family::ArrowAOdd, 2, 1).unwrap();
    assert_eq!(click_eigenvalue(&a).unwrap(), a.root_value());
    let c = Theory::with_root_exp(Family::ColorAOdd, 2, 0).unwrap();
    assert!(click_eigenvalue(&c).unwrap().is_one());
    assert!(click_eigenvalue(&Theory::infinite(Family::ArrowAInf)).is_err());
}

#[test]
fn eigenvalues_recover_declared_roots() {
    for class in [
        GraphClass::ShadedAOdd,
        GraphClass::UnshadedAOdd,
        GraphClass::UnshadedAEven,
    ] {
        for n in 1..=4 {
            for t in enumerate_presentations(class, n).unwrap() {
                assert_eq!(click_eigenvalue(&t).unwrap(), t.root_value(), "{t}");
                for e in relabeled_eigenvalues(&t).unwrap() {
                    assert_eq!(e, t.root_value(), "{t}");
                }
            }
        }
    }
}

#[test]
fn isomorphism_examples() {
    let t = Theory::with_root_exp(Family::ArrowAOdd, 2, 1).unwrap();
    assert!(are_isomorphic(&t, &t).unwrap().isomorphic);
    let t2 = Theory::with_root_exp(Family::ArrowAOdd, 2, 3).unwrap();
    let v = are_isomorphic(&t, &t2).unwrap();
    assert!(!v.isomorphic);
    assert!(v.reason.contains("both relabelings"), "{}", v.reason);
    let c = Theory::with_root_exp(Family::ColorAOdd, 2, 0).unwrap();
    let v = are_isomorphic(&Theory::with_root_exp(Family::ArrowAOdd, 2, 0).unwrap(), &c).unwrap();
    assert!(!v.isomorphic);
    assert!(v.reason.contains("duality"));
    let e = Theory::with_root_exp(Family::ArrowAEven, 2, 0).unwrap();
    assert!(!are_isomorphic(&t, &e).unwrap().isomorphic);
}

#[test]
fn counts_match_the_theorems() {
    for n in 1..=5u32 {
        assert_eq!(
            count_classes(GraphClass::ShadedAOdd, n).unwrap(),
            n as usize
        );
        assert_eq!(
            count_classes(GraphClass::UnshadedAOdd, n).unwrap(),
            3 * n as usize
        );
        assert_eq!(
            count_classes(GraphClass::UnshadedAEven, n).unwrap(),
            2 * n as usize + 1
        );
    }
    assert_eq!(count_classes(GraphClass::UnshadedAInf, 0).unwrap(), 2);
    assert_eq!(count_classes(GraphClass::ShadedAInf, 0).unwrap(), 1);
}

#[test]
fn classification_report() {
    let c = classify(GraphClass::UnshadedAOdd, 2).unwrap();
    let j = c.to_json();
    assert_eq!(j["count"], 6);
    assert_eq!(j["theories"].as_array().unwrap().len(), 6);
    assert_eq!(c.eigenvalues[0], Some(CycloScalar::one()));
    assert_eq!(
        GraphClass::parse("arrow-a-odd").unwrap(),
        GraphClass::UnshadedAOdd
    );
}
