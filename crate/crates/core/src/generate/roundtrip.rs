use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use super::{generate_with, CommandScript, GenerateError, Templates};
use crate::extract::{extract, ExtractError};
use crate::mapping::MappingTable;
use crate::metamodel::{DeviceModel, GroupValue, Link, Metamodel};
use crate::parser::{parse_text, SyntaxError};
use crate::Vendor;

/// Outcome of one round trip.
#[derive(Debug, Clone)]
pub struct RoundTrip {
    pub equal: bool,
    /// Slot-level differences, empty when `equal`.
    pub diff: Vec<String>,
    pub original: DeviceModel,
    pub script: CommandScript,
    /// The script printed as device configuration text.
    pub printed: String,
    pub regenerated: DeviceModel,
}

#[derive(Debug, Error)]
pub enum RoundTripError {
    #[error(transparent)]
    Source(SyntaxError),
    #[error(transparent)]
    Extract(ExtractError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error("generated configuration does not parse: {error}")]
    Reparse { error: SyntaxError, printed: String },
    #[error("generated configuration does not extract: {0}")]
    Reextract(ExtractError),
}

/// Parses and extracts `text`, then runs [`roundtrip_model`] with the
/// builtin templates.
pub fn roundtrip_check(
    text: &str,
    vendor: Vendor,
    table: &MappingTable,
    mm: &Metamodel,
) -> Result<RoundTrip, RoundTripError> {
    roundtrip_check_with(text, vendor, table, mm, &Templates::builtin(vendor, mm))
}

pub fn roundtrip_check_with(
    text: &str,
    vendor: Vendor,
    table: &MappingTable,
    mm: &Metamodel,
    templates: &Templates,
) -> Result<RoundTrip, RoundTripError> {
    let tree = parse_text(text, vendor).map_err(RoundTripError::Source)?;
    let model = extract(&tree, table, mm).map_err(RoundTripError::Extract)?;
    roundtrip_model(model, table, mm, templates)
}

/// Generates from `model`, prints the script as configuration text,
/// re-parses and re-extracts it, and compares the result with `model`.
pub fn roundtrip_model(
    model: DeviceModel,
    table: &MappingTable,
    mm: &Metamodel,
    templates: &Templates,
) -> Result<RoundTrip, RoundTripError> {
    let script = generate_with(&model, mm, templates)?;
    let printed = script.to_config_text();
    let tree = parse_text(&printed, table.vendor)
        .map_err(|error| RoundTripError::Reparse { error, printed: printed.clone() })?;
    let regenerated = extract(&tree, table, mm).map_err(RoundTripError::Reextract)?;
    let equal = canonical_model(&model, mm) == canonical_model(&regenerated, mm);
    let mut diff = model_diff(&model, &regenerated, mm);
    if !equal && diff.is_empty() {
        diff.push("models differ in link structure".to_owned());
    }
    Ok(RoundTrip { equal, diff, original: model, script, printed, regenerated })
}

type SlotList = Vec<(String, String)>;

fn writable_slots(gv: &GroupValue, mm: &Metamodel) -> SlotList {
    gv.slots
        .iter()
        .filter(|(item, _)| !mm.resolve_item(&gv.group, item).is_some_and(|(_, def)| def.read_only))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect()
}

/// Canonical names, `Group#n`, assigned in content order within each group.
fn canonical_names(m: &DeviceModel, mm: &Metamodel) -> HashMap<String, String> {
    let content: HashMap<&str, (&str, SlotList)> =
        m.group_values.iter().map(|g| (g.name.as_str(), (g.group.as_str(), writable_slots(g, mm)))).collect();
    let mut keyed: Vec<_> = m
        .group_values
        .iter()
        .map(|g| {
            let mut around: Vec<_> = m.neighbors(&g.name).filter_map(|n| content.get(n)).cloned().collect();
            around.sort();
            (content[g.name.as_str()].clone(), around, g.name.as_str())
        })
        .collect();
    keyed.sort();
    let mut counters: HashMap<&str, usize> = HashMap::new();
    let mut names = HashMap::new();
    for ((group, _), _, name) in keyed {
        let n = counters.entry(group).or_insert(0);
        *n += 1;
        names.insert(name.to_owned(), format!("{group}#{n}"));
    }
    names
}

/// `m` with read-only slots dropped, group values renamed by content and
/// sorted, and links as a sorted set of ordered pairs.
pub fn canonical_model(m: &DeviceModel, mm: &Metamodel) -> DeviceModel {
    let names = canonical_names(m, mm);
    let mut group_values: Vec<GroupValue> = m
        .group_values
        .iter()
        .map(|g| GroupValue {
            name: names[&g.name].clone(),
            group: g.group.clone(),
            slots: writable_slots(g, mm).into_iter().collect(),
        })
        .collect();
    group_values.sort_by(|a, b| a.name.cmp(&b.name));
    let links: BTreeSet<Link> = m
        .links
        .iter()
        .filter_map(|l| {
            let (a, b) = (names.get(&l.0)?.clone(), names.get(&l.1)?.clone());
            Some(if a <= b { Link(a, b) } else { Link(b, a) })
        })
        .collect();
    DeviceModel { group_values, links: links.into_iter().collect() }
}

/// Human-readable differences between `original` and `regenerated`,
/// using canonical names of `original`. Group values of the same group
/// are paired by the number of equal slots.
pub fn model_diff(original: &DeviceModel, regenerated: &DeviceModel, mm: &Metamodel) -> Vec<String> {
    let a = canonical_model(original, mm);
    let b = canonical_model(regenerated, mm);
    let mut out = Vec::new();
    let mut taken: BTreeSet<&str> = BTreeSet::new();
    let mut b_to_a: BTreeMap<&str, &str> = BTreeMap::new();
    for ga in &a.group_values {
        let best =
            b.group_values.iter().filter(|gb| gb.group == ga.group && !taken.contains(gb.name.as_str())).max_by_key(
                |gb| {
                    let same = ga.slots.iter().filter(|(k, v)| gb.slots.get(*k) == Some(v)).count();
                    // prefer the earliest candidate on ties
                    (same, std::cmp::Reverse(gb.name.clone()))
                },
            );
        let Some(gb) = best else {
            out.push(format!("{} only in original", ga.name));
            continue;
        };
        taken.insert(&gb.name);
        b_to_a.insert(&gb.name, &ga.name);
        let items: BTreeSet<&String> = ga.slots.keys().chain(gb.slots.keys()).collect();
        for item in items {
            let (va, vb) = (ga.slots.get(item), gb.slots.get(item));
            if va != vb {
                let show = |v: Option<&String>| v.map_or("<unset>".to_owned(), |v| format!("'{v}'"));
                out.push(format!("{}.{item}: {} != {}", ga.name, show(va), show(vb)));
            }
        }
    }
    for gb in b.group_values.iter().filter(|g| !taken.contains(g.name.as_str())) {
        out.push(format!("{} only in regenerated", gb.name));
    }
    let rename = |l: &Link| -> Option<(String, String)> {
        let x = (*b_to_a.get(l.0.as_str())?).to_owned();
        let y = (*b_to_a.get(l.1.as_str())?).to_owned();
        Some(if x <= y { (x, y) } else { (y, x) })
    };
    let links_a: BTreeSet<(String, String)> = a.links.iter().map(|l| (l.0.clone(), l.1.clone())).collect();
    let links_b: BTreeSet<(String, String)> = b.links.iter().filter_map(rename).collect();
    for (x, y) in links_a.difference(&links_b) {
        out.push(format!("link {x} -- {y} only in original"));
    }
    for (x, y) in links_b.difference(&links_a) {
        out.push(format!("link {x} -- {y} only in regenerated"));
    }
    out
}
