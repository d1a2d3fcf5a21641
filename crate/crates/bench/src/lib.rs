//! Benchmarks live under `benches/`.
pub use hyperlin_core as core;
