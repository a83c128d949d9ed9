//! Benchmarks live in `benches/`; run them with `cargo bench -p sk1-bench`.
