//! Criterion benchmarks for `fourfold-core`; see `benches/`.
