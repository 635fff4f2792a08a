//! Criterion benchmarks for `skelsig-core`; see `benches/`.
