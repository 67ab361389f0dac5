//! Criterion benchmarks for doxlogic; see `benches/`.
