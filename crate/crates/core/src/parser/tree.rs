use std::fmt::Write as _;

use super::token::Token;
use crate::Vendor;

/// A parse tree node: either a rule application or a token leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Rule(RuleNode),
    Token(Token),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleNode {
    pub name: &'static str,
    pub children: Vec<Node>,
}

impl Node {
    /// Rule name, or token kind name for leaves.
    pub fn symbol(&self) -> &'static str {
        match self {
            Node::Rule(r) => r.name,
            Node::Token(t) => t.kind.name(),
        }
    }

    pub fn as_rule(&self) -> Option<&RuleNode> {
        match self {
            Node::Rule(r) => Some(r),
            Node::Token(_) => None,
        }
    }

    pub fn first_token(&self) -> Option<&Token> {
        match self {
            Node::Token(t) => Some(t),
            Node::Rule(r) => r.first_token(),
        }
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Token>) {
        match self {
            Node::Token(t) => out.push(t),
            Node::Rule(r) => r.children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Source text covered by the node: leaf texts joined with a single
    /// space where the source had whitespace between them, and nothing
    /// where the tokens were adjacent (`campus` + `1` gives `campus1`).
    pub fn text(&self) -> String {
        let mut leaves = Vec::new();
        self.collect_leaves(&mut leaves);
        let mut out = String::new();
        let mut prev: Option<&Token> = None;
        for t in leaves {
            if let Some(p) = prev {
                if p.line != t.line || p.end_column() != t.column {
                    out.push(' ');
                }
            }
            out.push_str(&t.text);
            prev = Some(t);
        }
        out
    }
}

impl RuleNode {
    pub fn new(name: &'static str, children: Vec<Node>) -> Self {
        RuleNode { name, children }
    }

    pub fn first_token(&self) -> Option<&Token> {
        self.children.iter().find_map(Node::first_token)
    }

    /// Token leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<&Token> {
        let mut out = Vec::new();
        self.children.iter().for_each(|c| c.collect_leaves(&mut out));
        out
    }

    /// Direct children that are rule nodes named `name`.
    pub fn rules_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a RuleNode> + 'a {
        self.children.iter().filter_map(Node::as_rule).filter(move |r| r.name == name)
    }

    fn walk<'a>(&'a self, f: &mut impl FnMut(&'a RuleNode)) {
        f(self);
        for c in &self.children {
            if let Node::Rule(r) = c {
                r.walk(f);
            }
        }
    }
}

/// The tree produced by parsing one configuration file. The root rule is
/// always `file`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseTree {
    pub root: RuleNode,
    pub vendor: Vendor,
}

impl ParseTree {
    pub fn leaves(&self) -> Vec<&Token> {
        self.root.leaves()
    }

    /// Every rule node in pre-order.
    pub fn rule_nodes(&self) -> Vec<&RuleNode> {
        let mut out = Vec::new();
        self.root.walk(&mut |r| out.push(r));
        out
    }

    /// Leaf texts joined by single spaces, one line per `category`.
    pub fn print_leaves(&self) -> String {
        let mut out = String::new();
        for cat in &self.root.children {
            let texts: Vec<_> = match cat {
                Node::Rule(r) => r.leaves().into_iter().map(|t| t.text.as_str()).collect(),
                Node::Token(t) => vec![t.text.as_str()],
            };
            out.push_str(&texts.join(" "));
            out.push('\n');
        }
        out
    }

    /// Debug rendering: one node per line, two spaces of indentation per
    /// level, `rule:` for rule nodes and `tok KIND 'text'` for leaves.
    pub fn dump(&self) -> String {
        fn go(rule: &RuleNode, depth: usize, out: &mut String) {
            let _ = writeln!(out, "{}{}:", "  ".repeat(depth), rule.name);
            for child in &rule.children {
                match child {
                    Node::Rule(r) => go(r, depth + 1, out),
                    Node::Token(t) => {
                        let _ = writeln!(out, "{}tok {} '{}'", "  ".repeat(depth + 1), t.kind, t.text);
                    }
                }
            }
        }
        let mut out = String::new();
        go(&self.root, 0, &mut out);
        out
    }
}
