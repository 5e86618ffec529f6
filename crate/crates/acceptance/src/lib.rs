//! Exit criteria live in `tests/acceptance.rs`.
