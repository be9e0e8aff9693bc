//! Criterion benchmarks for the cuntzlab engine; see `benches/`.
