use std::fmt;

use crate::seqcode::FinSeq;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("rejected input: {0}")]
    Rejected(String),

    #[error("not prefix-closed: {0}")]
    NotClosed(ClosureReport),

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("sequence code overflows 64 bits")]
    Overflow,

    #[error("element {index}: {source}")]
    Element { index: usize, source: Box<Error> },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn rejected(msg: impl Into<String>) -> Self {
        Error::Rejected(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}

/// One entry per node whose immediate prefix is absent, together with every
/// prefix of that node that is absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub violations: Vec<(FinSeq, Vec<FinSeq>)>,
}

impl fmt::Display for ClosureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (node, missing)) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{node} missing")?;
            for m in missing {
                write!(f, " {m}")?;
            }
        }
        Ok(())
    }
}
