//! Criterion benchmarks for `conormal-core`; see `benches/`.
