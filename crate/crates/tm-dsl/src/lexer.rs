//! Tokenizer for the textual model format. Line/column positions are
//! tracked per token so errors point at sources precisely. Lexical problems
//! become `Error` tokens rather than aborting, so the parser can keep
//! recovering statement by statement.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    /// 1-based line.
    pub line: u32,
    /// 1-based column, in characters.
    pub col: u32,
    pub len: u32,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Str(String),
    Int(u64),
    Arrow,
    DotDot,
    LBrace,
    RBrace,
    LParen,
    RParen,
    At,
    EqEq,
    BangEq,
    /// A lexical error, carrying its description.
    Error(String),
    Eof,
}

impl TokenKind {
    /// Short description used in "found ..." halves of error messages.
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("`{s}`"),
            TokenKind::Str(s) => format!("\"{s}\""),
            TokenKind::Int(n) => format!("`{n}`"),
            TokenKind::Arrow => "`->`".into(),
            TokenKind::DotDot => "`..`".into(),
            TokenKind::LBrace => "`{`".into(),
            TokenKind::RBrace => "`}`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::At => "`@`".into(),
            TokenKind::EqEq => "`==`".into(),
            TokenKind::BangEq => "`!=`".into(),
            TokenKind::Error(msg) => msg.clone(),
            TokenKind::Eof => "end of file".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

/// Tokenize the whole source. Always ends with an `Eof` token. Accepts both
/// LF and CRLF line endings; `//` starts a comment running to end of line.
pub fn lex(src: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut line: u32 = 1;
    let mut col: u32 = 1;

    macro_rules! push {
        ($kind:expr, $start_col:expr, $len:expr) => {
            tokens.push(Token {
                kind: $kind,
                span: SourceSpan {
                    line,
                    col: $start_col,
                    len: $len,
                },
            })
        };
    }

    while i < chars.len() {
        let c = chars[i];
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                i += 1;
                col += 1;
            }
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '{' => {
                push!(TokenKind::LBrace, col, 1);
                i += 1;
                col += 1;
            }
            '}' => {
                push!(TokenKind::RBrace, col, 1);
                i += 1;
                col += 1;
            }
            '(' => {
                push!(TokenKind::LParen, col, 1);
                i += 1;
                col += 1;
            }
            ')' => {
                push!(TokenKind::RParen, col, 1);
                i += 1;
                col += 1;
            }
            '@' => {
                push!(TokenKind::At, col, 1);
                i += 1;
                col += 1;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                push!(TokenKind::Arrow, col, 2);
                i += 2;
                col += 2;
            }
            '.' if chars.get(i + 1) == Some(&'.') => {
                push!(TokenKind::DotDot, col, 2);
                i += 2;
                col += 2;
            }
            '=' if chars.get(i + 1) == Some(&'=') => {
                push!(TokenKind::EqEq, col, 2);
                i += 2;
                col += 2;
            }
            '!' if chars.get(i + 1) == Some(&'=') => {
                push!(TokenKind::BangEq, col, 2);
                i += 2;
                col += 2;
            }
            '"' => {
                let start_col = col;
                let mut text = String::new();
                i += 1;
                col += 1;
                let mut closed = false;
                while i < chars.len() {
                    let c = chars[i];
                    if c == '"' {
                        i += 1;
                        col += 1;
                        closed = true;
                        break;
                    }
                    if c == '\n' || c == '\r' {
                        break;
                    }
                    text.push(c);
                    i += 1;
                    col += 1;
                }
                if closed {
                    let len = text.chars().count() as u32 + 2;
                    push!(TokenKind::Str(text), start_col, len);
                } else {
                    push!(
                        TokenKind::Error("unterminated string".into()),
                        start_col,
                        col - start_col
                    );
                }
            }
            c if c.is_ascii_digit() => {
                let start_col = col;
                let mut text = String::new();
                while i < chars.len() && chars[i].is_ascii_digit() {
                    text.push(chars[i]);
                    i += 1;
                    col += 1;
                }
                match text.parse::<u64>() {
                    Ok(n) => push!(TokenKind::Int(n), start_col, text.len() as u32),
                    Err(_) => push!(
                        TokenKind::Error(format!("integer `{text}` out of range")),
                        start_col,
                        text.len() as u32
                    ),
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start_col = col;
                let mut text = String::new();
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    text.push(chars[i]);
                    i += 1;
                    col += 1;
                }
                let len = text.len() as u32;
                push!(TokenKind::Ident(text), start_col, len);
            }
            other => {
                push!(
                    TokenKind::Error(format!("unexpected character `{other}`")),
                    col,
                    1
                );
                i += 1;
                col += 1;
            }
        }
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        span: SourceSpan { line, col, len: 0 },
    });
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        lex(src).into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn lexes_statement_shapes() {
        assert_eq!(
            kinds("flow a -> b"),
            vec![
                TokenKind::Ident("flow".into()),
                TokenKind::Ident("a".into()),
                TokenKind::Arrow,
                TokenKind::Ident("b".into()),
                TokenKind::Eof,
            ]
        );
        assert_eq!(
            kinds("time 1..20"),
            vec![
                TokenKind::Ident("time".into()),
                TokenKind::Int(1),
                TokenKind::DotDot,
                TokenKind::Int(20),
                TokenKind::Eof,
            ]
        );
    }

    #[test]
    fn strings_take_anything_but_quotes() {
        assert_eq!(
            kinds("\"café -> 100% (ok)\""),
            vec![TokenKind::Str("café -> 100% (ok)".into()), TokenKind::Eof]
        );
    }

    #[test]
    fn unterminated_string_is_an_error_token() {
        let toks = kinds("\"oops\nx");
        assert!(matches!(toks[0], TokenKind::Error(_)));
        assert_eq!(toks[1], TokenKind::Ident("x".into()));
    }

    #[test]
    fn comments_and_crlf_are_skipped() {
        let toks = lex("// header\r\nmodel m\r\n");
        assert_eq!(toks[0].kind, TokenKind::Ident("model".into()));
        assert_eq!(toks[0].span.line, 2);
        assert_eq!(toks[1].kind, TokenKind::Ident("m".into()));
    }

    #[test]
    fn positions_are_one_based() {
        let toks = lex("ab cd");
        assert_eq!((toks[0].span.line, toks[0].span.col), (1, 1));
        assert_eq!((toks[1].span.line, toks[1].span.col), (1, 4));
    }
}
