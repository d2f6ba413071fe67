use affa::relations::{check_relations, defining_relations, theories_up_to};
use affa::theory::{Family, Theory};

const TARGETS: [Family; 7] = [
    Family::ShadedAOdd,
    Family::ArrowAOdd,
    Family::ArrowAEven,
    Family::ColorAOdd,
    Family::ShadedAInf,
    Family::ArrowAInf,
    Family::ColorAInf,
];

#[test]
fn every_relation_holds_up_to_n4() {
    for fam in TARGETS {
        for th in theories_up_to(fam, 4) {
            for r in check_relations(&th).unwrap() {
                assert!(r.holds, "{th}: ({}) {}", r.group, r.name);
            }
        }
    }
}

#[test]
fn relation_groups_present() {
    let th = Theory::with_root_exp(Family::ShadedAOdd, 2, 1).unwrap();
    let groups: std::collections::BTreeSet<_> = defining_relations(&th)
        .unwrap()
        .iter()
        .map(|r| r.group)
        .collect();
    assert_eq!(groups.len(), 6);
    let inf = defining_relations(&Theory::infinite(Family::ArrowAInf)).unwrap();
    assert!(inf
        .iter()
        .all(|r| ["i", "ii", "iii", "iv"].contains(&r.group)));
}

#[test]
fn wrong_root_breaks_the_click_relation() {
    let th = Theory::with_root_exp(Family::ArrowAOdd, 2, 1).unwrap();
    let other = Theory::with_root_exp(Family::ArrowAOdd, 2, 3).unwrap();
    let rels = defining_relations(&th).unwrap();
    let click = rels.iter().find(|r| r.group == "vi").unwrap();
    // the same pictures read in the conjugate theory
    let mut lhs = click.lhs.clone();
    let mut rhs = click.rhs.clone();
    lhs.theory = other;
    rhs.theory = other;
    let relabel = |m: &mut affa::Morphism| {
        m.terms = std::mem::take(&mut m.terms)
            .into_iter()
            .map(|(mut d, c)| {
                d.theory = other;
                (d, c)
            })
            .collect();
    };
    relabel(&mut lhs);
    relabel(&mut rhs);
    assert!(!affa::evaluate::morphism_eq(&lhs, &rhs).unwrap());
}
