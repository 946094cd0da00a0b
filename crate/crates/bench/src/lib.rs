//! Criterion benchmarks for the seaflux core; see `benches/`.
