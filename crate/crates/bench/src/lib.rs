//! Criterion benchmarks for the nullray workspace live in `benches/`.
