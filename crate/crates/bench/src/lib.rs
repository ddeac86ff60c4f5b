//! Criterion benchmarks for the pairing engines; see `benches/`.
