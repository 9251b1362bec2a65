//! Benchmarks for cusp-core live in `benches/`.
