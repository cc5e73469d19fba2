use std::fmt;
use std::sync::Arc;

use serde::Serialize;

/// A byte range in a source file, with the 1-based line and column of its
/// first character. `length` is in bytes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SourceSpan {
    pub file: Arc<str>,
    #[serde(skip)]
    pub offset: usize,
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl SourceSpan {
    /// From the start of `self` to the end of `end`.
    pub fn to(&self, end: &SourceSpan) -> SourceSpan {
        let stop = (end.offset + end.length as usize).max(self.offset + self.length as usize);
        SourceSpan {
            length: (stop - self.offset) as u32,
            ..self.clone()
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

/// A syntax node and where it came from. Equality looks at the node only,
/// so trees parsed from differently formatted text compare equal.
#[derive(Debug, Clone)]
pub struct Spanned<T> {
    pub node: T,
    pub span: SourceSpan,
}

impl<T> Spanned<T> {
    pub fn new(node: T, span: SourceSpan) -> Self {
        Spanned { node, span }
    }
}

impl<T: PartialEq> PartialEq for Spanned<T> {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl<T: Eq> Eq for Spanned<T> {}

impl<T> std::ops::Deref for Spanned<T> {
    type Target = T;
    fn deref(&self) -> &T {
        &self.node
    }
}
