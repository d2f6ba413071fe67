use affa::fusion::{
    bratteli, grading, gram_matrix, hom_dim, identity_grade, principal_graph, simple_decompose,
    spanning_diagrams, trace_of_word, Grade,
};
use affa::relations::theories_up_to;
use affa::theory::{Family, Label, Theory};
use affa::CycloScalar;

use Label::{Blue, Down, Plain, Red, Up};

fn arrow(n: u32, k: i64) -> Theory {
    Theory::with_root_exp(Family::ArrowAOdd, n, k).unwrap()
}

#[test]
fn grading_examples() {
    let th = arrow(2, 1);
    assert_eq!(grading(&th, &[]).unwrap(), Grade::Cyclic(0));
    assert_eq!(grading(&th, &[Down; 4]).unwrap(), Grade::Cyclic(0));
    assert_eq!(grading(&th, &[Up, Down]).unwrap(), Grade::Cyclic(0));
    assert_eq!(grading(&th, &[Down]).unwrap(), Grade::Cyclic(1));
    assert!(grading(&th, &[Plain]).is_err());
    let col = Theory::with_root_exp(Family::ColorAOdd, 3, 0).unwrap();
    assert_eq!(grading(&col, &[Red, Red]).unwrap(), identity_grade(&col));
    assert_eq!(
        grading(&col, &[Red, Blue, Red, Blue, Red, Blue]).unwrap(),
        identity_grade(&col)
    );
    assert_ne!(grading(&col, &[Red, Blue]).unwrap(), identity_grade(&col));
}

#[test]
fn hom_dim_examples() {
    for n in 1..=3 {
        let th = arrow(n, 0);
        let m = 2 * n as usize;
        assert_eq!(hom_dim(&th, &vec![Down; m], &[]).unwrap(), 1);
        assert_eq!(hom_dim(&th, &[Down], &[]).unwrap(), 0);
        assert_eq!(
            hom_dim(&th, &[Up, Down, Down], &[Up, Down, Down]).unwrap(),
            1
        );
    }
}

#[test]
fn simple_classes() {
    let th = arrow(2, 0);
    assert!(simple_decompose(&th, &[Up, Down]).unwrap().word.is_empty());
    assert!(simple_decompose(&th, &[Up; 4]).unwrap().word.is_empty());
    assert_eq!(
        simple_decompose(&th, &[Up; 2]).unwrap(),
        simple_decompose(&th, &[Down; 2]).unwrap()
    );
    let th = Theory::with_root_exp(Family::ArrowAEven, 1, 0).unwrap();
    assert_eq!(simple_decompose(&th, &[Down, Down]).unwrap().word, vec![Up]);
}

#[test]
fn principal_graphs_are_cycles() {
    for n in 1..=5u32 {
        for (fam, size) in [
            (Family::ArrowAOdd, 2 * n),
            (Family::ShadedAOdd, 2 * n),
            (Family::ColorAOdd, 2 * n),
            (Family::ArrowAEven, 2 * n + 1),
        ] {
            let th = Theory::with_root_exp(fam, n, 1).unwrap();
            let g = principal_graph(&th, None).unwrap();
            assert_eq!(g.vertices.len(), size as usize, "{th}");
            assert!(g.is_cycle(), "{th}");
            assert!(g.trace_formula_holds(), "{th}");
            assert!(g.vertices.iter().all(|v| v.trace.is_one()), "{th}");
        }
    }
    let g = principal_graph(&arrow(1, 0), None).unwrap();
    assert_eq!(g.edges.len(), 1);
    assert_eq!(g.edges[0].mult, 2);
    assert!(g.to_dot().contains("v0 -- v1"));
}

#[test]
fn infinite_graphs_are_paths() {
    for fam in [Family::ArrowAInf, Family::ColorAInf, Family::ShadedAInf] {
        let th = Theory::infinite(fam);
        assert!(principal_graph(&th, None).is_err());
        let g = principal_graph(&th, Some(3)).unwrap();
        assert_eq!(g.vertices.len(), 7, "{fam}");
        assert!(!g.complete);
        assert_eq!(g.interior().len(), 5);
        assert!(g.trace_formula_holds());
    }
}

#[test]
fn bratteli_rows() {
    let th = arrow(3, 0);
    let b = bratteli(&th, 3).unwrap();
    assert_eq!(b.rows[0].len(), 1);
    assert_eq!(
        b.rows[1].iter().map(|r| r.1).collect::<Vec<_>>(),
        vec![1, 1]
    );
    // X ⊗ X = P_2 ⊕ Q_2 ⊕ 2 ∅
    let row2: Vec<(String, u64)> = b.rows[2]
        .iter()
        .map(|(s, m)| (affa::fusion::word_string(&s.word), *m))
        .collect();
    assert_eq!(
        row2,
        vec![
            ("∅".to_string(), 2),
            ("Up Up".into(), 1),
            ("Down Down".into(), 1)
        ]
    );
    for k in 0..=3 {
        // the rows sum to 2^k and the squares give dim End(X^k)
        assert_eq!(b.rows[k].iter().map(|r| r.1).sum::<u64>(), 1 << k);
    }
    assert_eq!(b.dim(2), 6);
    assert_eq!(bratteli(&th, 0).unwrap().rows.len(), 1);
}

#[test]
fn traces_of_words() {
    let th = arrow(2, 1);
    assert!(trace_of_word(&th, &[Up]).unwrap().is_one());
    assert!(trace_of_word(&th, &[]).unwrap().is_one());
    assert_eq!(
        trace_of_word(&th, &[Plain; 3]).unwrap(),
        CycloScalar::from_int(8)
    );
    assert!(trace_of_word(&th, &[Up, Down, Down]).unwrap().is_one());
}

#[test]
fn gram_examples() {
    let th = arrow(2, 1);
    let g = gram_matrix(&th, &[], 0).unwrap();
    assert_eq!((g.rank, g.matrix.len()), (1, 1));
    let g = gram_matrix(&th, &[Down; 4], 1).unwrap();
    assert_eq!(g.rank, 1);
    assert!(g.psd && g.hermitian);
    let g = gram_matrix(&th, &[Down], 1).unwrap();
    assert_eq!((g.rank, g.matrix.len()), (0, 0));
    // three plain strands pairs: two matchings, each a sum of labelled ones
    let g = gram_matrix(&th, &[Plain; 4], 0).unwrap();
    assert_eq!(g.rank, 2);
    assert!(g.psd);
}

fn check_theory(th: &Theory, len: usize) {
    for c in affa::fusion::check_hom_dims(th, len).unwrap() {
        assert!(c.ok(), "{th}: {c:?}");
    }
}

#[test]
fn gram_ranks_match_small() {
    for fam in [
        Family::ArrowAOdd,
        Family::ArrowAEven,
        Family::ShadedAOdd,
        Family::ColorAOdd,
    ] {
        for th in theories_up_to(fam, 2).into_iter().step_by(2) {
            check_theory(&th, 6);
        }
    }
    for fam in [Family::ArrowAInf, Family::ColorAInf, Family::ShadedAInf] {
        check_theory(&Theory::infinite(fam), 6);
    }
}

#[test]
fn spanning_sets_respect_box_budget() {
    let th = arrow(1, 1);
    assert!(spanning_diagrams(&th, &[Down; 4], 1, false)
        .unwrap()
        .iter()
        .all(|d| d.boxes.len() <= 1));
    assert!(spanning_diagrams(&th, &[Down; 4], 2, false)
        .unwrap()
        .iter()
        .any(|d| d.boxes.len() == 2));
    let sh = Theory::with_root_exp(Family::ShadedAOdd, 1, 0).unwrap();
    assert!(!spanning_diagrams(&sh, &[Red, Blue], 1, false)
        .unwrap()
        .is_empty());
}
