//! Criterion benchmarks for the evaluator, the labeling invariant, the
//! random generator and Gram matrices. Run with `cargo bench -p affa-bench`.
