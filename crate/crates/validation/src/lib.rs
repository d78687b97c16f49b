//! Acceptance criteria for knsub live in `tests/acceptance.rs`:
//! `cargo test -p knsub-validation -- --nocapture` prints one PASS/FAIL line per criterion.
