use std::fmt;
use std::sync::Arc;

use crate::dsl::span::SourceSpan;
use crate::dsl::DslError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Keyword {
    Set,
    Rel,
    Attr,
    Antichain,
    Substrate,
    States,
    Process,
    Task,
    Candidate,
    Constructor,
    Via,
    Check,
    Possible,
    With,
    Coarse,
    On,
}

impl Keyword {
    pub const ALL: [Keyword; 16] = [
        Keyword::Set,
        Keyword::Rel,
        Keyword::Attr,
        Keyword::Antichain,
        Keyword::Substrate,
        Keyword::States,
        Keyword::Process,
        Keyword::Task,
        Keyword::Candidate,
        Keyword::Constructor,
        Keyword::Via,
        Keyword::Check,
        Keyword::Possible,
        Keyword::With,
        Keyword::Coarse,
        Keyword::On,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::Set => "set",
            Keyword::Rel => "rel",
            Keyword::Attr => "attr",
            Keyword::Antichain => "antichain",
            Keyword::Substrate => "substrate",
            Keyword::States => "states",
            Keyword::Process => "process",
            Keyword::Task => "task",
            Keyword::Candidate => "candidate",
            Keyword::Constructor => "constructor",
            Keyword::Via => "via",
            Keyword::Check => "check",
            Keyword::Possible => "possible",
            Keyword::With => "with",
            Keyword::Coarse => "coarse",
            Keyword::On => "on",
        }
    }

    fn from_word(w: &str) -> Option<Keyword> {
        Keyword::ALL.into_iter().find(|k| k.as_str() == w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Number(String),
    /// A double-quoted label, unescaped.
    Quoted(String),
    Keyword(Keyword),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Colon,
    Semi,
    Star,
    Eq,
    Arrow,
    MapsTo,
    Transpose,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "identifier `{s}`"),
            TokenKind::Number(s) => write!(f, "number `{s}`"),
            TokenKind::Quoted(s) => write!(f, "label {s:?}"),
            TokenKind::Keyword(k) => write!(f, "`{}`", k.as_str()),
            TokenKind::Eof => f.write_str("end of input"),
            other => write!(f, "`{}`", other.punct()),
        }
    }
}

impl TokenKind {
    fn punct(&self) -> &'static str {
        match self {
            TokenKind::LBrace => "{",
            TokenKind::RBrace => "}",
            TokenKind::LParen => "(",
            TokenKind::RParen => ")",
            TokenKind::Comma => ",",
            TokenKind::Colon => ":",
            TokenKind::Semi => ";",
            TokenKind::Star => "*",
            TokenKind::Eq => "=",
            TokenKind::Arrow => "->",
            TokenKind::MapsTo => "|->",
            TokenKind::Transpose => "^T",
            _ => "",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Splits `source` into tokens. `//` starts a comment running to the end of
/// the line. The stream always ends with an `Eof` token.
pub fn tokenize(file: &str, source: &str) -> Result<Vec<Token>, DslError> {
    let file: Arc<str> = Arc::from(file);
    let chars: Vec<(usize, char)> = source.char_indices().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1u32, 1u32);
    let mut i = 0;
    let span = |offset: usize, line: u32, col: u32, len: usize| SourceSpan {
        file: file.clone(),
        offset,
        line,
        column: col,
        length: len as u32,
    };
    while i < chars.len() {
        let (off, c) = chars[i];
        let end_of = |j: usize| chars.get(j).map_or(source.len(), |&(o, _)| o);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c == '/' && chars.get(i + 1).map(|p| p.1) == Some('/') {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let kind = if is_ident_start(c) {
            while i < chars.len() && is_ident_continue(chars[i].1) {
                i += 1;
            }
            let word = &source[off..end_of(i)];
            match Keyword::from_word(word) {
                Some(k) => TokenKind::Keyword(k),
                None => TokenKind::Ident(word.to_string()),
            }
        } else if c.is_ascii_digit() {
            while i < chars.len() && is_ident_continue(chars[i].1) {
                i += 1;
            }
            TokenKind::Number(source[off..end_of(i)].to_string())
        } else if c == '"' {
            i += 1;
            let mut text = String::new();
            loop {
                match chars.get(i) {
                    None | Some((_, '\n')) => {
                        return Err(DslError::Lex {
                            message: "unterminated quoted label".into(),
                            span: span(off, line, col, end_of(i) - off),
                        })
                    }
                    Some((_, '"')) => {
                        i += 1;
                        break;
                    }
                    Some((_, '\\')) if matches!(chars.get(i + 1), Some((_, '"' | '\\'))) => {
                        text.push(chars[i + 1].1);
                        i += 2;
                    }
                    Some(&(_, ch)) => {
                        text.push(ch);
                        i += 1;
                    }
                }
            }
            TokenKind::Quoted(text)
        } else {
            let next = chars.get(i + 1).map(|p| p.1);
            let (kind, width) = match (c, next) {
                ('-', Some('>')) => (TokenKind::Arrow, 2),
                ('^', Some('T')) => (TokenKind::Transpose, 2),
                ('|', Some('-')) if chars.get(i + 2).map(|p| p.1) == Some('>') => {
                    (TokenKind::MapsTo, 3)
                }
                ('{', _) => (TokenKind::LBrace, 1),
                ('}', _) => (TokenKind::RBrace, 1),
                ('(', _) => (TokenKind::LParen, 1),
                (')', _) => (TokenKind::RParen, 1),
                (',', _) => (TokenKind::Comma, 1),
                (':', _) => (TokenKind::Colon, 1),
                (';', _) => (TokenKind::Semi, 1),
                ('*', _) => (TokenKind::Star, 1),
                ('=', _) => (TokenKind::Eq, 1),
                _ => {
                    return Err(DslError::Lex {
                        message: format!("unexpected character {c:?}"),
                        span: span(off, line, col, c.len_utf8()),
                    })
                }
            };
            i += width;
            kind
        };
        let width = i - start;
        out.push(Token {
            kind,
            span: span(off, line, col, end_of(i) - off),
        });
        col += width as u32;
    }
    out.push(Token {
        kind: TokenKind::Eof,
        span: span(source.len(), line, col, 0),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize("t.ct", src)
            .unwrap()
            .into_iter()
            .map(|t| t.kind)
            .collect()
    }

    #[test]
    fn declaration_tokens() {
        assert_eq!(
            kinds("set X = {a, b}"),
            vec![
                TokenKind::Keyword(Keyword::Set),
                TokenKind::Ident("X".into()),
                TokenKind::Eq,
                TokenKind::LBrace,
                TokenKind::Ident("a".into()),
                TokenKind::Comma,
                TokenKind::Ident("b".into()),
                TokenKind::RBrace,
                TokenKind::Eof,
            ]
        );
    }

    #[test]
    fn operators() {
        assert_eq!(
            kinds("A ; B * C^T x |-> y ->"),
            vec![
                TokenKind::Ident("A".into()),
                TokenKind::Semi,
                TokenKind::Ident("B".into()),
                TokenKind::Star,
                TokenKind::Ident("C".into()),
                TokenKind::Transpose,
                TokenKind::Ident("x".into()),
                TokenKind::MapsTo,
                TokenKind::Ident("y".into()),
                TokenKind::Arrow,
                TokenKind::Eof,
            ]
        );
    }

    #[test]
    fn spans_track_lines_and_columns() {
        let toks = tokenize("f.ct", "// note\n  set X").unwrap();
        assert_eq!(
            (toks[0].span.line, toks[0].span.column, toks[0].span.length),
            (2, 3, 3)
        );
        assert_eq!((toks[1].span.line, toks[1].span.column), (2, 7));
        assert_eq!(&*toks[1].span.file, "f.ct");
    }

    #[test]
    fn stray_character() {
        match tokenize("f.ct", "set X = {a}\nrel @") {
            Err(DslError::Lex { span, .. }) => {
                assert_eq!((span.line, span.column, span.length), (2, 5, 1))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn quoted_labels() {
        assert_eq!(
            kinds(r#""a b" "q\"""#)[..2],
            [
                TokenKind::Quoted("a b".into()),
                TokenKind::Quoted("q\"".into())
            ]
        );
        assert!(matches!(
            tokenize("f.ct", "\"open"),
            Err(DslError::Lex { .. })
        ));
    }

    #[test]
    fn numbers_are_labels() {
        assert_eq!(
            kinds("0 10")[..2],
            [
                TokenKind::Number("0".into()),
                TokenKind::Number("10".into())
            ]
        );
    }
}
