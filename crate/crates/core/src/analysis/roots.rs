//! Exact real-root machinery. Placeholder while the crate is scaffolded.
