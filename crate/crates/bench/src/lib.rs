//! Criterion benchmarks for flux assembly, the `Lambda_gamma` solve and RK4 steps.
//! Run with `cargo bench -p korteweg-bench`.
