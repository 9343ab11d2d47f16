//! Criterion benchmarks for the hot kernels of `coarse-core`; see
//! `benches/kernels.rs`.
