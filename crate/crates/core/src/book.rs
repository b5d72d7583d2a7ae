//! Doc-test anchors for the guide: every Rust code block in the book runs
//! under `cargo test --doc`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
