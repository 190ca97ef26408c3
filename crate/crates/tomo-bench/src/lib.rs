//! Benchmark-only crate; see benches/projectors.rs.
