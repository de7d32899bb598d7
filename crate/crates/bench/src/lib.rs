//! Benchmarks live in `benches/`.

pub use facet_kernel;
