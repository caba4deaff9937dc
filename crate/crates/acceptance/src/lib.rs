//! Acceptance harness for `lga`; the criteria live in `tests/acceptance.rs`.
