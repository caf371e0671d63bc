//! Library half of the `eb` command line tool: report shapes, corpus
//! handling, and the lemma-verification suites. Kept as a library so the
//! integration tests can drive the same code paths the binary does.

pub mod corpus;
pub mod report;
pub mod suites;
