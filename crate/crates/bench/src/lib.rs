//! Criterion benchmarks for `qtrig-core`; run with `cargo bench -p qtrig-bench`.
