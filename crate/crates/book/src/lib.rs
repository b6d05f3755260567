//! Runs the code blocks of the guide in `book/` as doc-tests.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}

#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}

#[doc = include_str!("../../../book/src/formal-groups.md")]
pub mod formal_groups {}

#[doc = include_str!("../../../book/src/quadrics.md")]
pub mod quadrics {}

#[doc = include_str!("../../../book/src/motives.md")]
pub mod motives {}

#[doc = include_str!("../../../book/src/schubert.md")]
pub mod schubert {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
