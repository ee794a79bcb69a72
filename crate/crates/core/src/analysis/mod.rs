//! Polynomial analytics. Placeholder while the crate is scaffolded.
pub mod roots;
