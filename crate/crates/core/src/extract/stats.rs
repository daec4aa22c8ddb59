use std::collections::BTreeSet;

use serde::Serialize;

use crate::metamodel::{DeviceModel, Metamodel};

/// Counts over one model or a whole corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModelStats {
    /// Populated slots.
    pub slot_value_count: usize,
    /// Distinct populated items, each resolved to the group defining it.
    pub distinct_item_kinds: usize,
    pub group_value_count: usize,
    pub link_count: usize,
}

/// Populated item kinds as `(defining group, item)`. An inherited item
/// such as `CiscoVlanSetting.ipAddress` counts as `VlanSetting.ipAddress`.
pub fn item_kinds(m: &DeviceModel, mm: &Metamodel) -> BTreeSet<(String, String)> {
    let mut out = BTreeSet::new();
    for gv in &m.group_values {
        for item in gv.slots.keys() {
            let owner = mm.resolve_item(&gv.group, item).map_or(gv.group.as_str(), |(g, _)| g);
            out.insert((owner.to_owned(), item.clone()));
        }
    }
    out
}

pub fn model_stats(m: &DeviceModel, mm: &Metamodel) -> ModelStats {
    corpus_stats([m], mm)
}

/// Sums over `models`; item kinds are counted once across the corpus.
pub fn corpus_stats<'a>(models: impl IntoIterator<Item = &'a DeviceModel>, mm: &Metamodel) -> ModelStats {
    let mut stats = ModelStats::default();
    let mut kinds = BTreeSet::new();
    for m in models {
        stats.slot_value_count += m.group_values.iter().map(|g| g.slots.len()).sum::<usize>();
        stats.group_value_count += m.group_values.len();
        stats.link_count += m.links.len();
        kinds.extend(item_kinds(m, mm));
    }
    stats.distinct_item_kinds = kinds.len();
    stats
}
