//! Benchmarks for the coordinate ring pipeline live in `benches/`.
