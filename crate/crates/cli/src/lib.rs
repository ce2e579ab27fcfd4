//! Library surface of the `recurseq` CLI: the sequence-spec document
//! format and the report documents, shared with the integration tests.

pub mod report;
pub mod seqspec;
