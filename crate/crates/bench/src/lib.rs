//! Criterion benchmarks for `fracwave`; see `benches/`.
