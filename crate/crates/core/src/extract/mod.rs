//! Depth-first extraction of a [`DeviceModel`] from a parse tree.

mod stats;

use std::collections::HashMap;

use thiserror::Error;

use crate::mapping::{MappingRule, MappingTable, Presence, FILE_RULE};
use crate::metamodel::{validate_model, DeviceModel, GroupValue, Link, Metamodel, Violation, CONFIG_GROUP};
use crate::parser::{Node, ParseTree, RuleNode};
use crate::Vendor;

pub use stats::{corpus_stats, item_kinds, model_stats, ModelStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("{line}:{column}: {group_value}.{item} is already '{existing}', cannot set '{value}'")]
    SlotConflict { group_value: String, item: String, existing: String, value: String, line: usize, column: usize },
    #[error("{line}:{column}: {target} under {parent} has no open group value to receive it")]
    NoOpenGroup { parent: String, target: String, line: usize, column: usize },
    #[error("{line}:{column}: subtree root '{rule}' is nested inside another '{rule}'")]
    NestedRoot { rule: String, line: usize, column: usize },
    #[error("{table} mapping table cannot extract a {tree} parse tree")]
    VendorMismatch { tree: Vendor, table: Vendor },
    #[error("extracted model is invalid: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

/// Short name prefix for group values of `group`: `Cf1`, `CES2`, ...
pub fn group_abbrev(group: &str) -> String {
    let fixed = match group {
        "Config" => "Cf",
        "Hostname" => "Hn",
        "CiscoEthernetSetting" => "CES",
        "CiscoVlanSetting" => "CVS",
        "CiscoStaticRouteSetting" => "CSR",
        "CiscoStpSetting" => "CST",
        "CiscoOspfSetting" => "COS",
        "CiscoAccessList" => "CAL",
        "OspfNetwork" => "ON",
        "OspfVirtualLink" => "OVL",
        "YamahaEthernetSetting" => "YES",
        "YamahaVlanSetting" => "YVS",
        "YamahaStaticRouteSetting" => "YSR",
        other => return other.chars().filter(char::is_ascii_uppercase).collect(),
    };
    fixed.to_owned()
}

struct Extractor<'a> {
    roots: HashMap<&'a str, &'a str>,
    by_parent: HashMap<&'a str, Vec<&'a MappingRule>>,
    /// Open subtree roots, outermost first: (rule name, group value index).
    open: Vec<(&'a str, usize)>,
    counters: HashMap<String, usize>,
    model: DeviceModel,
}

fn position(node: &RuleNode) -> (usize, usize) {
    node.first_token().map_or((0, 0), |t| (t.line, t.column))
}

impl<'a> Extractor<'a> {
    fn new(table: &'a MappingTable) -> Self {
        let mut by_parent: HashMap<&str, Vec<&MappingRule>> = HashMap::new();
        for rule in table.rules() {
            by_parent.entry(rule.parent.as_str()).or_default().push(rule);
        }
        Extractor {
            roots: table.subtree_roots(),
            by_parent,
            open: Vec::new(),
            counters: HashMap::new(),
            model: DeviceModel::default(),
        }
    }

    fn open_value(&mut self, node: &'a RuleNode, group: &str) -> Result<(), ExtractError> {
        if self.open.iter().any(|(r, _)| *r == node.name) {
            let (line, column) = position(node);
            return Err(ExtractError::NestedRoot { rule: node.name.to_owned(), line, column });
        }
        let n = self.counters.entry(group.to_owned()).or_insert(0);
        *n += 1;
        let name = format!("{}{}", group_abbrev(group), n);
        if let Some(&(_, outer)) = self.open.last() {
            let outer = self.model.group_values[outer].name.clone();
            self.model.links.push(Link::new(outer, name.clone()));
        }
        self.model.group_values.push(GroupValue::new(name, group));
        self.open.push((node.name, self.model.group_values.len() - 1));
        Ok(())
    }

    /// Index of the group value opened by the innermost open `root`.
    fn open_index(&self, root: &str) -> Option<(usize, usize)> {
        self.open.iter().enumerate().rev().find(|(_, (r, _))| *r == root).map(|(depth, &(_, gv))| (depth, gv))
    }

    fn store(&mut self, gv: usize, rule: &MappingRule, value: String, at: &RuleNode) -> Result<(), ExtractError> {
        let target = &mut self.model.group_values[gv];
        match target.slots.get(&rule.item) {
            Some(existing) if *existing != value => {
                let (line, column) = position(at);
                Err(ExtractError::SlotConflict {
                    group_value: target.name.clone(),
                    item: rule.item.clone(),
                    existing: existing.clone(),
                    value,
                    line,
                    column,
                })
            }
            _ => {
                target.slots.insert(rule.item.clone(), value);
                Ok(())
            }
        }
    }

    fn visit(&mut self, node: &'a RuleNode) -> Result<(), ExtractError> {
        let group = if node.name == FILE_RULE { Some(CONFIG_GROUP) } else { self.roots.get(node.name).copied() };
        if let Some(group) = group {
            self.open_value(node, group)?;
        }

        let mut absent = Vec::new();
        if let Some(rules) = self.by_parent.get(node.name).cloned() {
            let mut targets: Vec<&str> = rules.iter().map(|r| r.target.as_str()).collect();
            targets.sort_unstable();
            targets.dedup();
            for target in targets {
                let child = node.children.iter().find(|c| c.symbol() == target);
                // rules for this target whose root is open; the innermost root wins
                let best = rules
                    .iter()
                    .filter(|r| r.target == target)
                    .filter_map(|r| self.open_index(&r.subtree_root).map(|(depth, gv)| (depth, gv, *r)))
                    .max_by_key(|(depth, _, _)| *depth);
                let Some((_, gv, _)) = best else {
                    if child.is_some() {
                        let (line, column) = position(node);
                        return Err(ExtractError::NoOpenGroup {
                            parent: node.name.to_owned(),
                            target: target.to_owned(),
                            line,
                            column,
                        });
                    }
                    continue;
                };
                let root = best.map(|(_, _, r)| r.subtree_root.as_str()).unwrap_or_default();
                let pick = |presence| {
                    rules.iter().find(|r| r.target == target && r.subtree_root == root && r.presence == presence)
                };
                match child {
                    Some(child) => {
                        if let Some(rule) = pick(Presence::Present) {
                            let value = rule.rewrite(&child.text());
                            self.store(gv, rule, value, node)?;
                        }
                    }
                    None => {
                        if let Some(rule) = pick(Presence::Absent) {
                            absent.push((gv, *rule));
                        }
                    }
                }
            }
        }

        for child in &node.children {
            if let Node::Rule(r) = child {
                self.visit(r)?;
            }
        }

        // absence is settled once the parent's subtree has been searched
        for (gv, rule) in absent {
            self.store(gv, rule, rule.replaced.clone(), node)?;
        }

        if group.is_some() {
            self.open.pop();
        }
        Ok(())
    }
}

/// Extracts the device configuration model from `tree`.
///
/// Every rule node named as a subtree root in `table` opens a new group
/// value, linked to the innermost group value still open; the `file` root
/// opens the `Config` value. Within an open subtree, a node named as a
/// parent of target has its direct children checked for the target: a
/// Present rule stores the (rewritten) target text, an Absent rule stores
/// its replacement when no such child exists.
pub fn extract(tree: &ParseTree, table: &MappingTable, mm: &Metamodel) -> Result<DeviceModel, ExtractError> {
    if tree.vendor != table.vendor {
        return Err(ExtractError::VendorMismatch { tree: tree.vendor, table: table.vendor });
    }
    let mut ex = Extractor::new(table);
    ex.visit(&tree.root)?;
    let model = ex.model;
    let violations = validate_model(&model, mm);
    if violations.is_empty() {
        Ok(model)
    } else {
        Err(ExtractError::Invalid(violations))
    }
}
