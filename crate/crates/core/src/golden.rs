//! Reference coefficient tables. Placeholder while the crate is scaffolded.
