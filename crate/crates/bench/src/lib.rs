//! Criterion benchmarks for the hot kernels live under benches/.
