//! Command generation from a device configuration model, and the
//! extract / generate / re-extract round trip.

mod roundtrip;
mod script;
mod template;

use std::collections::HashSet;

use thiserror::Error;

use crate::metamodel::{validate_model, DeviceModel, GroupValue, Metamodel, Violation};
use crate::util::natural_cmp;
use crate::Vendor;

pub use roundtrip::{
    canonical_model, model_diff, roundtrip_check, roundtrip_check_with, roundtrip_model, RoundTrip, RoundTripError,
};
pub use script::{BalanceError, CommandScript, LineRole, ScriptLine};
pub use template::{
    BlockTemplate, Category, ChildTemplate, LinePattern, PatternError, Segment, TemplateError, Templates, Trigger,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("model is invalid: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("{group_value}: no {vendor} template for group '{group}'")]
    UnknownGroup { group_value: String, group: String, vendor: Vendor },
    #[error("{group_value}: group '{group}' is not a {expected} group")]
    VendorMismatch { group_value: String, group: String, expected: Vendor },
    #[error("{group_value}: required item '{item}' is empty")]
    MissingRequiredSlot { group_value: String, item: String },
    #[error("{0} is not reachable from the Config group value")]
    UnlinkedGroupValue(String),
}

/// The vendor of the first vendor-specific group in `m`, if any.
pub fn model_vendor(m: &DeviceModel, mm: &Metamodel) -> Option<Vendor> {
    m.group_values.iter().find_map(|gv| mm.group(&gv.group).and_then(|g| g.vendor))
}

/// Generates commands with the builtin templates of the model's vendor
/// (Cisco when the model has no vendor-specific group).
pub fn generate(m: &DeviceModel, mm: &Metamodel) -> Result<CommandScript, GenerateError> {
    let vendor = model_vendor(m, mm).unwrap_or(Vendor::Cisco);
    generate_with(m, mm, &Templates::builtin(vendor, mm))
}

struct Emitter<'a> {
    m: &'a DeviceModel,
    vendor: Vendor,
    lines: Vec<ScriptLine>,
}

impl<'a> Emitter<'a> {
    fn push(&mut self, text: String, role: LineRole, owner: Option<&GroupValue>, depth: usize) {
        let owner = owner.map(|g| g.name.clone());
        self.lines.push(ScriptLine { text, role, session: owner.is_none(), owner, depth });
    }

    /// Values linked to `name` of `group`, in natural name order.
    fn linked(&self, name: &str, group: &str) -> Vec<&'a GroupValue> {
        let mut out: Vec<&GroupValue> =
            self.m.neighbors(name).filter_map(|n| self.m.group_value(n)).filter(|gv| gv.group == group).collect();
        out.sort_by(|a, b| natural_cmp(&a.name, &b.name));
        out.dedup_by(|a, b| a.name == b.name);
        out
    }
}

fn missing_item(pattern: &LinePattern, gv: &GroupValue) -> GenerateError {
    let item = pattern.items().into_iter().find(|i| gv.slot(i).is_none()).unwrap_or_default();
    GenerateError::MissingRequiredSlot { group_value: gv.name.clone(), item: item.to_owned() }
}

/// Generates commands with explicit templates.
///
/// Group values linked to `Config` are emitted by category (hostname,
/// VLAN declarations, interfaces, static routes, STP, OSPF, ACL), each
/// category in template order and each group in natural name order.
/// Lines whose slots are empty are left out; an empty required item is
/// an error.
pub fn generate_with(m: &DeviceModel, mm: &Metamodel, t: &Templates) -> Result<CommandScript, GenerateError> {
    let violations = validate_model(m, mm);
    if !violations.is_empty() {
        return Err(GenerateError::Invalid(violations));
    }
    let config = m.config().expect("validated model has a Config value");

    let values = || m.group_values.iter().filter(|g| g.name != config.name);
    if let Some(gv) = values().find(|gv| mm.group(&gv.group).and_then(|g| g.vendor).is_some_and(|v| v != t.vendor)) {
        return Err(GenerateError::VendorMismatch {
            group_value: gv.name.clone(),
            group: gv.group.clone(),
            expected: t.vendor,
        });
    }
    for gv in values() {
        if !t.knows(&gv.group) {
            return Err(GenerateError::UnknownGroup {
                group_value: gv.name.clone(),
                group: gv.group.clone(),
                vendor: t.vendor,
            });
        }
        if let Some(item) = t.required_items(&gv.group).iter().find(|i| gv.slot(i).is_none()) {
            return Err(GenerateError::MissingRequiredSlot { group_value: gv.name.clone(), item: item.clone() });
        }
    }

    let mut em = Emitter { m, vendor: t.vendor, lines: Vec::new() };
    for (text, enters) in &t.prologue {
        let role = if *enters { LineRole::Enter } else { LineRole::Command };
        em.push(text.clone(), role, None, 0);
    }

    let mut reached: HashSet<&str> = HashSet::from([config.name.as_str()]);
    let mut blocks: Vec<&BlockTemplate> = t.blocks.iter().collect();
    blocks.sort_by_key(|b| b.category);
    for block in blocks {
        for gv in em.linked(&config.name, &block.group) {
            reached.insert(&gv.name);
            if !block.trigger.fires(gv) {
                continue;
            }
            let depth = usize::from(block.enter.is_some());
            if let Some(enter) = &block.enter {
                let text = enter.render(gv).ok_or_else(|| missing_item(enter, gv))?;
                em.push(text, LineRole::Enter, Some(gv), 0);
            }
            for line in &block.body {
                if let Some(text) = line.render(gv) {
                    em.push(text, LineRole::Command, Some(gv), depth);
                }
            }
            for child_group in &block.children {
                let Some(child_t) = t.child_template(child_group) else { continue };
                for child in em.linked(&gv.name, child_group) {
                    reached.insert(&child.name);
                    for line in &child_t.lines {
                        if let Some(text) = line.render(child) {
                            em.push(text, LineRole::Command, Some(child), depth);
                        }
                    }
                }
            }
            if block.enter.is_some() {
                em.push("exit".to_owned(), LineRole::Exit, Some(gv), 0);
            }
        }
    }
    if let Some(gv) = m.group_values.iter().find(|g| !reached.contains(g.name.as_str())) {
        return Err(GenerateError::UnlinkedGroupValue(gv.name.clone()));
    }

    for (text, leaves) in &t.epilogue {
        let role = if *leaves { LineRole::Exit } else { LineRole::Command };
        em.push(text.clone(), role, None, 0);
    }
    Ok(CommandScript { vendor: em.vendor, lines: em.lines })
}
