//! Textual form of thimac models: a lexer and recovering parser from source
//! text to [`tm_core::Model`], and a canonical serializer back. Parsing
//! preserves declaration order (which the simulator uses for tie-breaking);
//! serializing normalizes it away, so equality of serialized text coincides
//! with structural equality of models.

mod lexer;
mod parser;
mod serializer;

pub use lexer::{lex, SourceSpan, Token, TokenKind};
pub use parser::{parse, ParseError};
pub use serializer::{serialize, SerializeError};
