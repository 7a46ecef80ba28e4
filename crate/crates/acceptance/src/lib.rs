//! Acceptance checks for `ogr-core`; everything lives in `tests/acceptance.rs`.
//! Run with `cargo test -p ogr-verify --test acceptance`.
