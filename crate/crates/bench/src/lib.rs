//! Criterion benchmarks for the doubling solvers.
