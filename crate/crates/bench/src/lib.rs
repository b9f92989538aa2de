//! Criterion benchmarks for the cluster kernel live under `benches/`.
