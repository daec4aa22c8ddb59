use std::fmt;

use thiserror::Error;

use super::token::{Token, TokenKind};
use super::tree::{Node, RuleNode};

/// First syntax error in a token stream; parsing stops there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    /// `None` at end of input.
    pub found: Option<Token>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: expected {}, found ", self.line, self.column, self.expected.join(" or "))?;
        match &self.found {
            Some(t) => write!(f, "{t}"),
            None => f.write_str("end of input"),
        }
    }
}

pub(crate) type PResult<T> = Result<T, ParseError>;

/// Token cursor shared by the vendor grammars.
pub(crate) struct Cursor<'t> {
    tokens: &'t [Token],
    pos: usize,
}

impl<'t> Cursor<'t> {
    pub fn new(tokens: &'t [Token]) -> Self {
        Cursor { tokens, pos: 0 }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    pub fn kind(&self) -> Option<TokenKind> {
        self.peek().map(|t| t.kind)
    }

    pub fn kind2(&self) -> Option<TokenKind> {
        self.tokens.get(self.pos + 1).map(|t| t.kind)
    }

    pub fn at(&self, kind: TokenKind) -> bool {
        self.kind() == Some(kind)
    }

    /// True when the next token has `kind` and sits on `line`.
    pub fn at_on_line(&self, kind: TokenKind, line: usize) -> bool {
        self.peek().is_some_and(|t| t.kind == kind && t.line == line)
    }

    /// Line of the most recently consumed token.
    pub fn last_line(&self) -> usize {
        self.pos.checked_sub(1).map_or(1, |i| self.tokens[i].line)
    }

    pub fn bump(&mut self) -> Node {
        let t = self.tokens[self.pos].clone();
        self.pos += 1;
        Node::Token(t)
    }

    pub fn expect(&mut self, kind: TokenKind) -> PResult<Node> {
        if self.at(kind) {
            Ok(self.bump())
        } else {
            Err(self.error(&[kind.name()]))
        }
    }

    /// `rule: TOKEN`
    pub fn token_rule(&mut self, name: &'static str, kind: TokenKind) -> PResult<RuleNode> {
        Ok(RuleNode::new(name, vec![self.expect(kind)?]))
    }

    pub fn error(&self, expected: &[&str]) -> ParseError {
        let (line, column) = match (self.peek(), self.tokens.last()) {
            (Some(t), _) => (t.line, t.column),
            (None, Some(last)) => (last.line, last.end_column()),
            (None, None) => (1, 1),
        };
        ParseError {
            line,
            column,
            expected: expected.iter().map(|s| (*s).to_owned()).collect(),
            found: self.peek().cloned(),
        }
    }
}
