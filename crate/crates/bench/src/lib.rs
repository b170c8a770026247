//! Criterion benchmarks for `lightspan`; see `benches/`.
