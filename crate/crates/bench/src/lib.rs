//! Criterion benchmarks for the `subordkit` sweeps live in `benches/`.
//!
//! `cargo bench -p subordkit-bench`
