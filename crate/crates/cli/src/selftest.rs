use affa::evaluate::{eval_closed, measure_stats};
use affa::relations::{check_relations, theories_up_to};
use affa::testgen::random_closed;
use affa::{labeling, Family, Morphism, Theory};
use rayon::prelude::*;
use serde_json::{json, Value};

const FAMILIES: [Family; 7] = [
    Family::ShadedAOdd,
    Family::ArrowAOdd,
    Family::ColorAOdd,
    Family::ArrowAEven,
    Family::ShadedAInf,
    Family::ArrowAInf,
    Family::ColorAInf,
];

pub struct TheoryResult {
    theory: Theory,
    relations: usize,
    failed_relations: Vec<String>,
    draws: usize,
    /// Seeds where the evaluator and the labeling invariant disagree.
    mismatches: Vec<u64>,
}

pub struct Report {
    results: Vec<TheoryResult>,
    pub measure_violations: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results
            .iter()
            .all(|r| r.failed_relations.is_empty() && r.mismatches.is_empty())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "theories": self.results.iter().map(|r| json!({
                "theory": r.theory.to_string(),
                "relations": r.relations,
                "failed_relations": r.failed_relations,
                "draws": r.draws,
                "mismatches": r.mismatches,
            })).collect::<Vec<_>>(),
            "measure_violations": self.measure_violations,
        })
    }
}

pub fn run(max_n: u32, count: usize, max_boxes: usize, seed: u64) -> anyhow::Result<Report> {
    let theories: Vec<Theory> = FAMILIES
        .iter()
        .flat_map(|&f| theories_up_to(f, max_n))
        .collect();
    let before = measure_stats().1;
    let results = crate::pool()?.install(|| {
        theories
            .par_iter()
            .map(|&th| one(th, count, max_boxes, seed))
            .collect::<affa::Result<Vec<_>>>()
    })?;
    Ok(Report {
        results,
        measure_violations: measure_stats().1 - before,
    })
}

fn one(th: Theory, count: usize, max_boxes: usize, seed: u64) -> affa::Result<TheoryResult> {
    let outcomes = check_relations(&th)?;
    let failed_relations = outcomes
        .iter()
        .filter(|o| !o.holds)
        .map(|o| format!("{} {}", o.group, o.name))
        .collect();
    let mut mismatches = Vec::new();
    for i in 0..count as u64 {
        let s = seed.wrapping_add(i);
        let m = Morphism::from_diagram(random_closed(th, max_boxes, 4, s));
        if eval_closed(&m)? != labeling::invariant(&m)? {
            mismatches.push(s);
        }
    }
    Ok(TheoryResult {
        theory: th,
        relations: outcomes.len(),
        failed_relations,
        draws: count,
        mismatches,
    })
}
