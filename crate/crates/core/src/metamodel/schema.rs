use std::collections::{HashMap, HashSet};
use std::fmt;
use std::net::Ipv4Addr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Vendor;

/// Lexical kind of a slot value. Slot values are always stored as strings;
/// the kind only constrains their spelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValueKind {
    String,
    Integer,
    Boolean,
    IpAddress,
    /// Dotted-quad mask (or wildcard) or a prefix length `0..=32`.
    IpMask,
}

impl ValueKind {
    pub fn accepts(self, value: &str) -> bool {
        match self {
            ValueKind::String => !value.is_empty(),
            ValueKind::Integer => !value.is_empty() && value.bytes().all(|b| b.is_ascii_digit()),
            ValueKind::Boolean => value == "true" || value == "false",
            ValueKind::IpAddress => value.parse::<Ipv4Addr>().is_ok(),
            ValueKind::IpMask => {
                value.parse::<Ipv4Addr>().is_ok()
                    || (ValueKind::Integer.accepts(value)
                        && value.len() <= 2
                        && value.parse::<u8>().is_ok_and(|n| n <= 32))
            }
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ValueKind::String => "string",
            ValueKind::Integer => "integer",
            ValueKind::Boolean => "boolean",
            ValueKind::IpAddress => "ip-address",
            ValueKind::IpMask => "ip-mask",
        }
    }
}

impl fmt::Display for ValueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A specification item: one attribute of a specification item group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemDef {
    pub name: String,
    pub kind: ValueKind,
    /// Reported by the device (e.g. hardware model) rather than configured.
    pub read_only: bool,
}

impl ItemDef {
    pub fn new(name: impl Into<String>, kind: ValueKind) -> Self {
        ItemDef { name: name.into(), kind, read_only: false }
    }

    pub fn read_only(mut self) -> Self {
        self.read_only = true;
        self
    }
}

/// A specification item group (a class of the metamodel).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDef {
    pub name: String,
    pub items: Vec<ItemDef>,
    pub is_abstract: bool,
    /// `None` for vendor-neutral groups.
    pub vendor: Option<Vendor>,
}

impl GroupDef {
    pub fn item(&self, name: &str) -> Option<&ItemDef> {
        self.items.iter().find(|i| i.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Multiplicity {
    pub lower: u32,
    pub upper: Option<u32>,
}

impl Multiplicity {
    pub const ONE: Multiplicity = Multiplicity { lower: 1, upper: Some(1) };
    pub const ZERO_OR_MORE: Multiplicity = Multiplicity { lower: 0, upper: None };
    pub const ONE_OR_MORE: Multiplicity = Multiplicity { lower: 1, upper: None };
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lower, self.upper) {
            (l, Some(u)) if l == u => write!(f, "{l}"),
            (0, None) => f.write_str("*"),
            (l, None) => write!(f, "{l}..*"),
            (l, Some(u)) => write!(f, "{l}..{u}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Association {
    pub a: String,
    pub b: String,
    pub multiplicity_a: Multiplicity,
    pub multiplicity_b: Multiplicity,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetamodelError {
    #[error("group '{0}' is defined more than once")]
    DuplicateGroup(String),
    #[error("{context} references undefined group '{group}'")]
    UndefinedGroup { group: String, context: String },
    #[error("generalization hierarchy has a cycle through '{0}'")]
    Cycle(String),
    #[error("item '{item}' appears more than once in the closure of group '{group}'")]
    DuplicateItem { group: String, item: String },
}

/// The network configuration metamodel: specification item groups, their
/// generalization hierarchy and the associations that links may follow.
#[derive(Debug, Clone)]
pub struct Metamodel {
    groups: Vec<GroupDef>,
    index: HashMap<String, usize>,
    generalizations: Vec<(String, String)>,
    associations: Vec<Association>,
    parents: HashMap<String, Vec<String>>,
}

impl Metamodel {
    pub fn new(
        groups: Vec<GroupDef>,
        generalizations: Vec<(String, String)>,
        associations: Vec<Association>,
    ) -> Result<Self, MetamodelError> {
        let mut index = HashMap::new();
        for (i, g) in groups.iter().enumerate() {
            if index.insert(g.name.clone(), i).is_some() {
                return Err(MetamodelError::DuplicateGroup(g.name.clone()));
            }
        }
        let undefined =
            |group: &str, context: String| MetamodelError::UndefinedGroup { group: group.to_owned(), context };
        let mut parents: HashMap<String, Vec<String>> = HashMap::new();
        for (sub, sup) in &generalizations {
            for g in [sub, sup] {
                if !index.contains_key(g) {
                    return Err(undefined(g, format!("generalization {sub} -> {sup}")));
                }
            }
            parents.entry(sub.clone()).or_default().push(sup.clone());
        }
        for a in &associations {
            for g in [&a.a, &a.b] {
                if !index.contains_key(g) {
                    return Err(undefined(g, format!("association {} - {}", a.a, a.b)));
                }
            }
        }
        let mm = Metamodel { groups, index, generalizations, associations, parents };
        mm.check_acyclic()?;
        for g in &mm.groups {
            mm.check_closure(&g.name)?;
        }
        Ok(mm)
    }

    fn check_acyclic(&self) -> Result<(), MetamodelError> {
        // 0 = unvisited, 1 = on stack, 2 = done
        fn visit<'a>(mm: &'a Metamodel, g: &'a str, state: &mut HashMap<&'a str, u8>) -> Result<(), MetamodelError> {
            match state.get(g) {
                Some(1) => return Err(MetamodelError::Cycle(g.to_owned())),
                Some(2) => return Ok(()),
                _ => {}
            }
            state.insert(g, 1);
            for p in mm.parents.get(g).into_iter().flatten() {
                visit(mm, p, state)?;
            }
            state.insert(g, 2);
            Ok(())
        }
        let mut state = HashMap::new();
        for g in &self.groups {
            visit(self, &g.name, &mut state)?;
        }
        Ok(())
    }

    fn check_closure(&self, group: &str) -> Result<(), MetamodelError> {
        let mut seen = HashSet::new();
        for (_, item) in self.item_closure(group) {
            if !seen.insert(item.name.as_str()) {
                return Err(MetamodelError::DuplicateItem { group: group.to_owned(), item: item.name.clone() });
            }
        }
        Ok(())
    }

    pub fn groups(&self) -> &[GroupDef] {
        &self.groups
    }

    pub fn group(&self, name: &str) -> Option<&GroupDef> {
        self.index.get(name).map(|&i| &self.groups[i])
    }

    pub fn generalizations(&self) -> &[(String, String)] {
        &self.generalizations
    }

    pub fn associations(&self) -> &[Association] {
        &self.associations
    }

    /// The group followed by all of its supergroups, nearest first, each
    /// listed once.
    pub fn lineage<'a>(&'a self, group: &'a str) -> Vec<&'a str> {
        let mut out: Vec<&str> = Vec::new();
        let mut queue = std::collections::VecDeque::from([group]);
        while let Some(g) = queue.pop_front() {
            if out.contains(&g) {
                continue;
            }
            out.push(g);
            for p in self.parents.get(g).into_iter().flatten() {
                queue.push_back(p);
            }
        }
        out
    }

    pub fn is_subgroup_of(&self, sub: &str, sup: &str) -> bool {
        self.lineage(sub).contains(&sup)
    }

    /// All items visible on `group` with the group that defines each one.
    /// Items reached through more than one path appear once.
    pub fn item_closure(&self, group: &str) -> Vec<(&str, &ItemDef)> {
        let mut out = Vec::new();
        for g in self.lineage(group) {
            if let Some(def) = self.group(g) {
                out.extend(def.items.iter().map(|i| (def.name.as_str(), i)));
            }
        }
        out
    }

    /// Looks up an item on `group` or any supergroup; returns the defining
    /// group name alongside the definition.
    pub fn resolve_item(&self, group: &str, item: &str) -> Option<(&str, &ItemDef)> {
        self.lineage(group)
            .into_iter()
            .filter_map(|g| self.group(g))
            .find_map(|def| def.item(item).map(|i| (def.name.as_str(), i)))
    }

    /// The association (if any) allowing a link between values of groups
    /// `a` and `b`, in either orientation, considering supergroups.
    pub fn association_between(&self, a: &str, b: &str) -> Option<&Association> {
        let la = self.lineage(a);
        let lb = self.lineage(b);
        self.associations.iter().find(|assoc| {
            (la.contains(&assoc.a.as_str()) && lb.contains(&assoc.b.as_str()))
                || (la.contains(&assoc.b.as_str()) && lb.contains(&assoc.a.as_str()))
        })
    }
}
