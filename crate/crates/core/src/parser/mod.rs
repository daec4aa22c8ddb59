//! Lexer and recursive-descent parsers for Cisco and Yamaha configuration
//! text. The grammars are documented in `grammar/cisco.g` and
//! `grammar/yamaha.g`.

mod cisco;
mod cursor;
mod lexer;
mod token;
mod tree;
mod yamaha;

use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub use cursor::ParseError;
pub use lexer::{tokenize, LexError};
pub use token::{Token, TokenKind};
pub use tree::{Node, ParseTree, RuleNode};

use crate::Vendor;
use cursor::Cursor;

/// Reference grammar for Cisco `show` output.
pub const CISCO_GRAMMAR: &str = include_str!("../../grammar/cisco.g");
/// Reference grammar for Yamaha `show config` output.
pub const YAMAHA_GRAMMAR: &str = include_str!("../../grammar/yamaha.g");

/// Parses a token stream. The whole stream must be consumed.
pub fn parse(tokens: &[Token], vendor: Vendor) -> Result<ParseTree, ParseError> {
    let mut c = Cursor::new(tokens);
    let root = match vendor {
        Vendor::Cisco => cisco::file(&mut c)?,
        Vendor::Yamaha => yamaha::file(&mut c)?,
    };
    Ok(ParseTree { root, vendor })
}

#[derive(Debug, Error)]
pub enum SyntaxError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("lex error at {0}")]
    Lex(#[from] LexError),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
}

impl SyntaxError {
    /// 1-based position of the offending input, if any.
    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            SyntaxError::Io { .. } => None,
            SyntaxError::Lex(e) => Some((e.line, e.column)),
            SyntaxError::Parse(e) => Some((e.line, e.column)),
        }
    }
}

/// Tokenizes and parses configuration text.
pub fn parse_text(text: &str, vendor: Vendor) -> Result<ParseTree, SyntaxError> {
    let tokens = tokenize(text, vendor)?;
    Ok(parse(&tokens, vendor)?)
}

pub fn parse_file(path: &Path, vendor: Vendor) -> Result<ParseTree, SyntaxError> {
    let text = std::fs::read_to_string(path).map_err(|source| SyntaxError::Io { path: path.to_owned(), source })?;
    parse_text(&text, vendor)
}
