//! The specification item / syntax element mapping table that drives
//! extraction.
//!
//! A table is an 8-column TSV file:
//!
//! ```text
//! subtree_root  parent  target  presence  original  replaced  group  item
//! ```
//!
//! Lines starting with `#` are comments. The header row is required.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use regex::Regex;
use thiserror::Error;

use crate::metamodel::{builtin_metamodel, Metamodel, CONFIG_GROUP};
use crate::parser::TokenKind;
use crate::Vendor;

pub const COLUMNS: [&str; 8] =
    ["subtree_root", "parent", "target", "presence", "original", "replaced", "group", "item"];

/// The root rule of every parse tree.
pub const FILE_RULE: &str = "file";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Presence {
    Present,
    Absent,
}

impl Presence {
    pub fn as_str(self) -> &'static str {
        match self {
            Presence::Present => "Present",
            Presence::Absent => "Absent",
        }
    }
}

impl fmt::Display for Presence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Presence {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "Present" => Ok(Presence::Present),
            "Absent" => Ok(Presence::Absent),
            _ => Err(()),
        }
    }
}

/// One row of the table.
#[derive(Debug, Clone)]
pub struct MappingRule {
    pub subtree_root: String,
    pub parent: String,
    /// Rule name or token kind name.
    pub target: String,
    pub presence: Presence,
    /// Full-match regex; empty means pass the text through.
    pub original: String,
    pub replaced: String,
    pub group: String,
    pub item: String,
    pattern: Option<Regex>,
}

impl PartialEq for MappingRule {
    fn eq(&self, other: &Self) -> bool {
        self.subtree_root == other.subtree_root
            && self.parent == other.parent
            && self.target == other.target
            && self.presence == other.presence
            && self.original == other.original
            && self.replaced == other.replaced
            && self.group == other.group
            && self.item == other.item
    }
}

impl Eq for MappingRule {}

impl MappingRule {
    /// Builds a rule, compiling `original`.
    pub fn new(
        [subtree_root, parent, target]: [&str; 3],
        presence: Presence,
        original: &str,
        replaced: &str,
        [group, item]: [&str; 2],
    ) -> Result<Self, regex::Error> {
        let pattern = if original.is_empty() { None } else { Some(Regex::new(&format!("^(?:{original})$"))?) };
        Ok(MappingRule {
            subtree_root: subtree_root.into(),
            parent: parent.into(),
            target: target.into(),
            presence,
            original: original.into(),
            replaced: replaced.into(),
            group: group.into(),
            item: item.into(),
            pattern,
        })
    }

    /// `(subtree_root, parent, target)`
    pub fn key(&self) -> (&str, &str, &str) {
        (&self.subtree_root, &self.parent, &self.target)
    }

    /// Slot value for a Present rule whose target text is `text`. A full
    /// match of `original` is rewritten to `replaced` (`$1` and friends
    /// expand); anything else passes through unchanged.
    pub fn rewrite(&self, text: &str) -> String {
        match &self.pattern {
            Some(re) if re.is_match(text) => re.replace(text, self.replaced.as_str()).into_owned(),
            _ => text.to_owned(),
        }
    }

    fn to_tsv_row(&self) -> String {
        [
            self.subtree_root.as_str(),
            &self.parent,
            &self.target,
            self.presence.as_str(),
            &self.original,
            &self.replaced,
            &self.group,
            &self.item,
        ]
        .join("\t")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RowErrorKind {
    #[error("expected 8 columns, found {0}")]
    ColumnCount(usize),
    #[error("header must be '{}'", COLUMNS.join("\\t"))]
    BadHeader,
    #[error("presence must be Present or Absent, not '{0}'")]
    BadPresence(String),
    #[error("unknown specification item group '{0}'")]
    UnknownGroup(String),
    #[error("specification item group '{0}' is abstract")]
    AbstractGroup(String),
    #[error("specification item group '{group}' belongs to {found}, not {expected}")]
    VendorMismatch { group: String, found: Vendor, expected: Vendor },
    #[error("unknown specification item '{item}' on group '{group}'")]
    UnknownItem { group: String, item: String },
    #[error("unknown token kind '{0}'")]
    UnknownToken(String),
    #[error("bad regex '{pattern}': {message}")]
    BadRegex { pattern: String, message: String },
    #[error("original and replaced must both be empty or both be set")]
    RewriteMismatch,
    #[error("Absent rule needs a replaced value")]
    AbsentWithoutReplacement,
    #[error("duplicate {0} rule for this subtree root, parent and target")]
    DuplicateKey(Presence),
    #[error("Absent rule has no matching Present rule")]
    OrphanAbsent,
    #[error("subtree root '{root}' already opens group '{first}'")]
    RootGroupConflict { root: String, first: String },
    #[error("rules rooted at 'file' must target group 'Config'")]
    FileRootNotConfig,
}

/// A diagnostic for one row of a mapping file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at line {line}")]
pub struct RowError {
    pub line: usize,
    pub kind: RowErrorKind,
}

#[derive(Debug, Error)]
pub enum MappingError {
    #[error("cannot read mapping table: {0}")]
    Io(#[from] std::io::Error),
    #[error("{}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))]
    Rows(Vec<RowError>),
}

impl MappingError {
    pub fn rows(&self) -> &[RowError] {
        match self {
            MappingError::Io(_) => &[],
            MappingError::Rows(r) => r,
        }
    }
}

/// An ordered, validated list of mapping rules for one vendor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingTable {
    pub vendor: Vendor,
    rules: Vec<MappingRule>,
}

impl MappingTable {
    /// Validates `rules` as if they were rows 2.. of a file.
    pub fn new(vendor: Vendor, rules: Vec<MappingRule>, mm: &Metamodel) -> Result<Self, MappingError> {
        let lines: Vec<usize> = (2..rules.len() + 2).collect();
        let mut errors = Vec::new();
        for (rule, &line) in rules.iter().zip(&lines) {
            check_rule(rule, vendor, mm, line, &mut errors);
        }
        check_table(&rules, &lines, &mut errors);
        finish(MappingTable { vendor, rules }, errors)
    }

    pub fn parse(text: &str, vendor: Vendor, mm: &Metamodel) -> Result<Self, MappingError> {
        let mut reader = csv::ReaderBuilder::new()
            .delimiter(b'\t')
            .quoting(false)
            .has_headers(false)
            .flexible(true)
            .from_reader(text.as_bytes());
        let mut errors = Vec::new();
        let mut rules = Vec::new();
        let mut lines = Vec::new();
        let mut seen_header = false;
        for record in reader.records() {
            let record = record.map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
            let line = record.position().map_or(0, |p| p.line() as usize);
            let fields: Vec<&str> = record.iter().collect();
            if fields.first().is_some_and(|f| f.starts_with('#')) || fields.iter().all(|f| f.trim().is_empty()) {
                continue;
            }
            if !seen_header {
                seen_header = true;
                if fields != COLUMNS {
                    errors.push(RowError { line, kind: RowErrorKind::BadHeader });
                }
                continue;
            }
            if fields.len() != COLUMNS.len() {
                errors.push(RowError { line, kind: RowErrorKind::ColumnCount(fields.len()) });
                continue;
            }
            let Ok(presence) = fields[3].parse::<Presence>() else {
                let kind = RowErrorKind::BadPresence(fields[3].to_owned());
                errors.push(RowError { line, kind });
                continue;
            };
            match MappingRule::new(
                [fields[0], fields[1], fields[2]],
                presence,
                fields[4],
                fields[5],
                [fields[6], fields[7]],
            ) {
                Ok(rule) => {
                    check_rule(&rule, vendor, mm, line, &mut errors);
                    rules.push(rule);
                    lines.push(line);
                }
                Err(e) => {
                    let kind = RowErrorKind::BadRegex { pattern: fields[4].to_owned(), message: e.to_string() };
                    errors.push(RowError { line, kind });
                }
            }
        }
        if !seen_header {
            errors.push(RowError { line: 1, kind: RowErrorKind::BadHeader });
        }
        check_table(&rules, &lines, &mut errors);
        errors.sort_by_key(|e| e.line);
        finish(MappingTable { vendor, rules }, errors)
    }

    pub fn load(path: &Path, vendor: Vendor, mm: &Metamodel) -> Result<Self, MappingError> {
        Self::parse(&std::fs::read_to_string(path)?, vendor, mm)
    }

    /// The embedded table for `vendor`.
    pub fn builtin(vendor: Vendor) -> &'static MappingTable {
        static CISCO: OnceLock<MappingTable> = OnceLock::new();
        static YAMAHA: OnceLock<MappingTable> = OnceLock::new();
        let (cell, text) = match vendor {
            Vendor::Cisco => (&CISCO, CISCO_TSV),
            Vendor::Yamaha => (&YAMAHA, YAMAHA_TSV),
        };
        cell.get_or_init(|| {
            MappingTable::parse(text, vendor, builtin_metamodel()).expect("builtin mapping table is valid")
        })
    }

    pub fn rules(&self) -> &[MappingRule] {
        &self.rules
    }

    /// Names of every rule that opens a group value, with that group.
    pub fn subtree_roots(&self) -> HashMap<&str, &str> {
        self.rules.iter().map(|r| (r.subtree_root.as_str(), r.group.as_str())).collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = COLUMNS.join("\t");
        out.push('\n');
        for rule in &self.rules {
            out.push_str(&rule.to_tsv_row());
            out.push('\n');
        }
        out
    }
}

pub const CISCO_TSV: &str = include_str!("../../mappings/cisco.tsv");
pub const YAMAHA_TSV: &str = include_str!("../../mappings/yamaha.tsv");

pub fn builtin_cisco_table() -> &'static MappingTable {
    MappingTable::builtin(Vendor::Cisco)
}

pub fn builtin_yamaha_table() -> &'static MappingTable {
    MappingTable::builtin(Vendor::Yamaha)
}

fn finish(table: MappingTable, errors: Vec<RowError>) -> Result<MappingTable, MappingError> {
    if errors.is_empty() {
        Ok(table)
    } else {
        Err(MappingError::Rows(errors))
    }
}

fn check_rule(rule: &MappingRule, vendor: Vendor, mm: &Metamodel, line: usize, errors: &mut Vec<RowError>) {
    let mut push = |kind| errors.push(RowError { line, kind });
    match mm.group(&rule.group) {
        None => push(RowErrorKind::UnknownGroup(rule.group.clone())),
        Some(def) => {
            if def.is_abstract {
                push(RowErrorKind::AbstractGroup(rule.group.clone()));
            }
            if let Some(found) = def.vendor.filter(|v| *v != vendor) {
                push(RowErrorKind::VendorMismatch { group: rule.group.clone(), found, expected: vendor });
            }
            if mm.resolve_item(&rule.group, &rule.item).is_none() {
                push(RowErrorKind::UnknownItem { group: rule.group.clone(), item: rule.item.clone() });
            }
        }
    }
    let looks_like_token = rule.target.bytes().all(|b| b.is_ascii_uppercase() || b == b'_');
    if looks_like_token && TokenKind::from_name(&rule.target).is_none() {
        push(RowErrorKind::UnknownToken(rule.target.clone()));
    }
    match rule.presence {
        Presence::Present if rule.original.is_empty() != rule.replaced.is_empty() => {
            push(RowErrorKind::RewriteMismatch)
        }
        Presence::Absent if rule.replaced.is_empty() => push(RowErrorKind::AbsentWithoutReplacement),
        _ => {}
    }
    if rule.subtree_root == FILE_RULE && rule.group != CONFIG_GROUP {
        push(RowErrorKind::FileRootNotConfig);
    }
}

fn check_table(rules: &[MappingRule], lines: &[usize], errors: &mut Vec<RowError>) {
    let mut seen = HashSet::new();
    let mut root_groups: HashMap<&str, &str> = HashMap::new();
    for (rule, &line) in rules.iter().zip(lines) {
        if !seen.insert((rule.key(), rule.presence)) {
            errors.push(RowError { line, kind: RowErrorKind::DuplicateKey(rule.presence) });
        }
        let first = *root_groups.entry(&rule.subtree_root).or_insert(&rule.group);
        if first != rule.group {
            let kind = RowErrorKind::RootGroupConflict { root: rule.subtree_root.clone(), first: first.to_owned() };
            errors.push(RowError { line, kind });
        }
    }
    for (rule, &line) in rules.iter().zip(lines) {
        if rule.presence == Presence::Absent && !seen.contains(&(rule.key(), Presence::Present)) {
            errors.push(RowError { line, kind: RowErrorKind::OrphanAbsent });
        }
    }
}
