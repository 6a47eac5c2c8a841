//! Criterion benchmarks for skidsim; see `benches/`.
