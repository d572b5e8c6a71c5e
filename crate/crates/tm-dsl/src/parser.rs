//! Recursive-descent parser with statement-level recovery: a malformed
//! statement produces one error and parsing resumes at the next statement
//! keyword, so independent mistakes each get their own diagnostic instead
//! of the first one masking the rest.

use std::collections::HashMap;
use std::fmt;

use tm_core::{ActionKind, CancelSpec, Guard, GuardOp, Model, ModelBuilder};

use crate::lexer::{lex, SourceSpan, Token, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: String,
    pub found: String,
    /// For duplicate declarations: where the id first appeared.
    pub previous: Option<SourceSpan>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: expected {}, found {}",
            self.span, self.expected, self.found
        )?;
        if let Some(prev) = &self.previous {
            write!(f, " (previously declared at {prev})")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// Parse source text into a model. On failure, returns every error found;
/// statement declaration order is preserved exactly in the returned model.
pub fn parse(src: &str) -> Result<Model, Vec<ParseError>> {
    Parser::new(src).run()
}

const STATEMENT_KEYWORDS: [&str; 8] = [
    "model", "thimac", "store", "action", "flow", "trigger", "event", "behavior",
];

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    errors: Vec<ParseError>,
    builder: ModelBuilder,
    thimac_spans: HashMap<String, SourceSpan>,
    action_spans: HashMap<String, SourceSpan>,
    store_spans: HashMap<String, SourceSpan>,
    event_spans: HashMap<String, SourceSpan>,
}

impl Parser {
    fn new(src: &str) -> Parser {
        Parser {
            tokens: lex(src),
            pos: 0,
            errors: Vec::new(),
            // Placeholder name until the header is parsed.
            builder: ModelBuilder::new("unnamed").expect("static name"),
            thimac_spans: HashMap::new(),
            action_spans: HashMap::new(),
            store_spans: HashMap::new(),
            event_spans: HashMap::new(),
        }
    }

    fn run(mut self) -> Result<Model, Vec<ParseError>> {
        self.header();
        while !self.at_eof() {
            self.top_statement();
        }
        if self.errors.is_empty() {
            Ok(self.builder.build())
        } else {
            Err(self.errors)
        }
    }

    // -- token helpers ----------------------------------------------------

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn at_eof(&self) -> bool {
        self.peek().kind == TokenKind::Eof
    }

    fn peek_keyword(&self) -> Option<&str> {
        match &self.peek().kind {
            TokenKind::Ident(s) if STATEMENT_KEYWORDS.contains(&s.as_str()) => Some(s),
            _ => None,
        }
    }

    fn error_here(&mut self, expected: &str) {
        let tok = self.peek().clone();
        self.errors.push(ParseError {
            span: tok.span,
            expected: expected.into(),
            found: tok.kind.describe(),
            previous: None,
        });
    }

    /// Skip tokens until the next plausible statement start. `}` is kept for
    /// the enclosing block parser to consume.
    fn resync(&mut self) {
        loop {
            match &self.peek().kind {
                TokenKind::Eof | TokenKind::RBrace => return,
                TokenKind::Ident(_) if self.peek_keyword().is_some() => return,
                _ => {
                    self.bump();
                }
            }
        }
    }

    fn expect_ident(&mut self, expected: &str) -> Option<(String, SourceSpan)> {
        match &self.peek().kind {
            TokenKind::Ident(s) => {
                let s = s.clone();
                let span = self.peek().span;
                self.bump();
                Some((s, span))
            }
            _ => {
                self.error_here(expected);
                None
            }
        }
    }

    fn expect_token(&mut self, kind: TokenKind, expected: &str) -> bool {
        if self.peek().kind == kind {
            self.bump();
            true
        } else {
            self.error_here(expected);
            false
        }
    }

    fn eat_keyword(&mut self, word: &str) -> bool {
        if matches!(&self.peek().kind, TokenKind::Ident(s) if s == word) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_string(&mut self, expected: &str) -> Option<String> {
        match &self.peek().kind {
            TokenKind::Str(s) => {
                let s = s.clone();
                self.bump();
                Some(s)
            }
            _ => {
                self.error_here(expected);
                None
            }
        }
    }

    fn expect_int(&mut self, expected: &str) -> Option<u64> {
        match &self.peek().kind {
            TokenKind::Int(n) => {
                let n = *n;
                self.bump();
                Some(n)
            }
            _ => {
                self.error_here(expected);
                None
            }
        }
    }

    fn opt_string(&mut self) -> Option<String> {
        match &self.peek().kind {
            TokenKind::Str(s) => {
                let s = s.clone();
                self.bump();
                Some(s)
            }
            _ => None,
        }
    }

    /// Check a freshly declared id against its namespace; reports the clash
    /// with both spans and returns false if it is a duplicate.
    fn declare(
        namespace: &'static str,
        spans: &mut HashMap<String, SourceSpan>,
        errors: &mut Vec<ParseError>,
        id: &str,
        span: SourceSpan,
    ) -> bool {
        if let Some(previous) = spans.get(id) {
            errors.push(ParseError {
                span,
                expected: format!("a fresh {namespace} id"),
                found: format!("duplicate `{id}`"),
                previous: Some(*previous),
            });
            false
        } else {
            spans.insert(id.to_owned(), span);
            true
        }
    }

    // -- grammar ----------------------------------------------------------

    fn header(&mut self) {
        if self.eat_keyword("model") {
            if let Some((name, _)) = self.expect_ident("model name") {
                match ModelBuilder::new(&name) {
                    Ok(b) => {
                        let mut fresh = b;
                        std::mem::swap(&mut self.builder, &mut fresh);
                    }
                    Err(_) => self.error_here("a valid model name"),
                }
            } else {
                self.resync();
            }
        } else {
            self.error_here("keyword `model` to open the file");
            self.resync();
        }
    }

    fn top_statement(&mut self) {
        match self.peek_keyword() {
            Some("thimac") => self.thimac(None),
            Some("flow") => self.flow(),
            Some("trigger") => self.trigger(),
            Some("event") => self.event(),
            Some("behavior") => self.behavior(),
            Some("model") => {
                self.error_here("a statement (the model header already appeared)");
                self.bump();
                self.resync();
            }
            Some(other) => {
                // `store`/`action` only make sense inside a thimac block.
                let other = other.to_owned();
                let tok = self.peek().clone();
                self.errors.push(ParseError {
                    span: tok.span,
                    expected: "a top-level statement".into(),
                    found: format!("`{other}` (only allowed inside a thimac block)"),
                    previous: None,
                });
                self.bump();
                self.resync();
            }
            None => {
                self.error_here("a statement keyword");
                self.bump();
                self.resync();
            }
        }
    }

    fn thimac(&mut self, parent: Option<String>) {
        self.bump(); // `thimac`
        let Some((id, span)) = self.expect_ident("thimac id") else {
            self.resync();
            return;
        };
        let name = self.opt_string();
        let declared = Self::declare(
            "thimac",
            &mut self.thimac_spans,
            &mut self.errors,
            &id,
            span,
        );
        if declared {
            if let Err(e) = self.builder.thimac(&id, name.as_deref(), parent.as_deref()) {
                self.errors.push(ParseError {
                    span,
                    expected: "a well-formed thimac declaration".into(),
                    found: e.to_string(),
                    previous: None,
                });
            }
        }
        if !self.expect_token(TokenKind::LBrace, "`{`") {
            self.resync();
            return;
        }
        loop {
            match self.peek_keyword() {
                Some("store") => self.store_decl(&id),
                Some("action") => self.action(&id),
                Some("thimac") => self.thimac(Some(id.clone())),
                _ => match &self.peek().kind {
                    TokenKind::RBrace => {
                        self.bump();
                        return;
                    }
                    TokenKind::Eof => {
                        self.error_here("`}` to close the thimac block");
                        return;
                    }
                    _ => {
                        self.error_here("`store`, `action`, `thimac`, or `}`");
                        self.bump();
                        self.resync();
                        // A top-level keyword here means the closing brace
                        // was forgotten; bail out of the block.
                        if matches!(
                            self.peek_keyword(),
                            Some("flow" | "trigger" | "event" | "behavior" | "model")
                        ) {
                            return;
                        }
                    }
                },
            }
        }
    }

    fn store_decl(&mut self, owner: &str) {
        self.bump(); // `store`
        let Some((id, span)) = self.expect_ident("store id") else {
            self.resync();
            return;
        };
        if Self::declare("store", &mut self.store_spans, &mut self.errors, &id, span) {
            // Owner may be missing if its declaration was itself a duplicate;
            // the builder then targets the first declaration, which exists.
            let _ = self.builder.store(&id, owner);
        }
    }

    fn action(&mut self, owner: &str) {
        self.bump(); // `action`
        let Some((id, span)) = self.expect_ident("action id") else {
            self.resync();
            return;
        };
        let kind = match self.expect_ident("action kind (create, process, release, transfer, receive)") {
            Some((word, kspan)) => match ActionKind::from_keyword(&word) {
                Some(kind) => kind,
                None => {
                    self.errors.push(ParseError {
                        span: kspan,
                        expected: "action kind (create, process, release, transfer, receive)"
                            .into(),
                        found: format!("`{word}`"),
                        previous: None,
                    });
                    self.resync();
                    return;
                }
            },
            None => {
                self.resync();
                return;
            }
        };
        let mut store = None;
        if self.peek().kind == TokenKind::At {
            self.bump();
            if !self.eat_keyword("store") {
                self.error_here("`store` after `@`");
                self.resync();
                return;
            }
            if !self.expect_token(TokenKind::LParen, "`(`") {
                self.resync();
                return;
            }
            match self.expect_ident("store id") {
                Some((sid, _)) => store = Some(sid),
                None => {
                    self.resync();
                    return;
                }
            }
            if !self.expect_token(TokenKind::RParen, "`)`") {
                self.resync();
                return;
            }
        }
        let label = self.opt_string();
        if Self::declare("action", &mut self.action_spans, &mut self.errors, &id, span) {
            let _ = self
                .builder
                .action(&id, kind, owner, store.as_deref(), label.as_deref());
        }
    }

    fn edge(&mut self, what: &str) -> Option<(String, String, SourceSpan)> {
        self.bump(); // keyword
        let (src, src_span) = self.expect_ident(&format!("{what} source id"))?;
        if !self.expect_token(TokenKind::Arrow, "`->`") {
            return None;
        }
        let (dst, dst_span) = self.expect_ident(&format!("{what} destination id"))?;
        if src == dst {
            self.errors.push(ParseError {
                span: dst_span,
                expected: "distinct endpoints".into(),
                found: format!("`{src}` on both ends"),
                previous: Some(src_span),
            });
            return None;
        }
        Some((src, dst, dst_span))
    }

    fn flow(&mut self) {
        match self.edge("flow") {
            Some((src, dst, _)) => {
                let _ = self.builder.flow(&src, &dst);
            }
            None => self.resync(),
        }
    }

    fn trigger(&mut self) {
        let Some((src, dst, _)) = self.edge("trigger") else {
            self.resync();
            return;
        };
        let mut guard = None;
        if self.eat_keyword("if") {
            let Some((store, _)) = self.expect_ident("guard store id") else {
                self.resync();
                return;
            };
            let op = match &self.peek().kind {
                TokenKind::EqEq => {
                    self.bump();
                    GuardOp::Equals
                }
                TokenKind::BangEq => {
                    self.bump();
                    GuardOp::NotEquals
                }
                _ => {
                    self.error_here("`==` or `!=`");
                    self.resync();
                    return;
                }
            };
            let Some(value) = self.expect_string("quoted guard value") else {
                self.resync();
                return;
            };
            guard = Some(Guard { store, op, value });
        }
        let _ = self.builder.trigger(&src, &dst, guard);
    }

    fn event(&mut self) {
        self.bump(); // `event`
        let Some((id, span)) = self.expect_ident("event id") else {
            self.resync();
            return;
        };
        let Some(name) = self.expect_string("quoted event name") else {
            self.resync();
            return;
        };
        if !self.eat_keyword("region") {
            self.error_here("keyword `region`");
            self.resync();
            return;
        }
        if !self.expect_token(TokenKind::LBrace, "`{`") {
            self.resync();
            return;
        }
        let mut region: Vec<String> = Vec::new();
        loop {
            match &self.peek().kind {
                TokenKind::Ident(member) => {
                    let member = member.clone();
                    let mspan = self.peek().span;
                    self.bump();
                    if region.contains(&member) {
                        self.errors.push(ParseError {
                            span: mspan,
                            expected: "distinct region members".into(),
                            found: format!("duplicate `{member}`"),
                            previous: None,
                        });
                    } else {
                        region.push(member);
                    }
                }
                TokenKind::RBrace => {
                    self.bump();
                    break;
                }
                _ => {
                    self.error_here("a region member id or `}`");
                    self.resync();
                    return;
                }
            }
        }
        let mut window = None;
        if self.eat_keyword("time") {
            let Some(start) = self.expect_int("window start tick") else {
                self.resync();
                return;
            };
            if !self.expect_token(TokenKind::DotDot, "`..`") {
                self.resync();
                return;
            }
            let Some(end) = self.expect_int("window end tick") else {
                self.resync();
                return;
            };
            window = Some((start, end));
        }
        let mut cancels = None;
        if self.eat_keyword("cancels") {
            if self.eat_keyword("all") {
                cancels = Some(CancelSpec::All);
            } else if self.peek().kind == TokenKind::LBrace {
                self.bump();
                let mut targets: Vec<String> = Vec::new();
                loop {
                    match &self.peek().kind {
                        TokenKind::Ident(target) => {
                            let target = target.clone();
                            let tspan = self.peek().span;
                            self.bump();
                            if targets.contains(&target) {
                                self.errors.push(ParseError {
                                    span: tspan,
                                    expected: "distinct cancel targets".into(),
                                    found: format!("duplicate `{target}`"),
                                    previous: None,
                                });
                            } else {
                                targets.push(target);
                            }
                        }
                        TokenKind::RBrace => {
                            self.bump();
                            break;
                        }
                        _ => {
                            self.error_here("a cancel target id or `}`");
                            self.resync();
                            return;
                        }
                    }
                }
                if targets.is_empty() {
                    self.errors.push(ParseError {
                        span,
                        expected: "at least one cancel target".into(),
                        found: "an empty cancel list".into(),
                        previous: None,
                    });
                    return;
                }
                cancels = Some(CancelSpec::Events(targets));
            } else {
                self.error_here("`all` or `{` after `cancels`");
                self.resync();
                return;
            }
        }
        if Self::declare("event", &mut self.event_spans, &mut self.errors, &id, span) {
            let refs: Vec<&str> = region.iter().map(String::as_str).collect();
            let _ = self.builder.event(&id, &name, &refs, window, cancels);
        }
    }

    fn behavior(&mut self) {
        match self.edge("behavior") {
            Some((from, to, _)) => {
                let _ = self.builder.behavior(&from, &to);
            }
            None => self.resync(),
        }
    }
}
