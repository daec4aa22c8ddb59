use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::builtin::CONFIG_GROUP;
use super::schema::Metamodel;
use crate::util::{line_column, natural_cmp};

/// An instance of a specification item group, e.g. `Cf1:Config`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupValue {
    pub name: String,
    pub group: String,
    #[serde(default)]
    pub slots: BTreeMap<String, String>,
}

impl GroupValue {
    pub fn new(name: impl Into<String>, group: impl Into<String>) -> Self {
        GroupValue { name: name.into(), group: group.into(), slots: BTreeMap::new() }
    }

    pub fn with_slot(mut self, item: impl Into<String>, value: impl Into<String>) -> Self {
        self.slots.insert(item.into(), value.into());
        self
    }

    pub fn slot(&self, item: &str) -> Option<&str> {
        self.slots.get(item).map(String::as_str)
    }
}

/// A link between two group values, by name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Link(pub String, pub String);

impl Link {
    pub fn new(a: impl Into<String>, b: impl Into<String>) -> Self {
        Link(a.into(), b.into())
    }

    pub fn touches(&self, name: &str) -> bool {
        self.0 == name || self.1 == name
    }

    /// The other endpoint when `name` is one end of the link.
    pub fn other(&self, name: &str) -> Option<&str> {
        if self.0 == name {
            Some(&self.1)
        } else if self.1 == name {
            Some(&self.0)
        } else {
            None
        }
    }
}

/// The network device configuration model of one device.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DeviceModel {
    pub group_values: Vec<GroupValue>,
    #[serde(default)]
    pub links: Vec<Link>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelFormatError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}:{column}: unknown specification item group '{group}'")]
    UnknownGroup { group: String, line: usize, column: usize },
}

impl DeviceModel {
    pub fn group_value(&self, name: &str) -> Option<&GroupValue> {
        self.group_values.iter().find(|g| g.name == name)
    }

    pub fn group_value_mut(&mut self, name: &str) -> Option<&mut GroupValue> {
        self.group_values.iter_mut().find(|g| g.name == name)
    }

    pub fn config(&self) -> Option<&GroupValue> {
        self.group_values.iter().find(|g| g.group == CONFIG_GROUP)
    }

    pub fn values_of<'a>(&'a self, group: &'a str) -> impl Iterator<Item = &'a GroupValue> + 'a {
        self.group_values.iter().filter(move |g| g.group == group)
    }

    /// Names of the group values linked to `name`, in link order.
    pub fn neighbors<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.links.iter().filter_map(move |l| l.other(name))
    }

    /// Group values sorted by name (`CES2` before `CES10`), links sorted.
    pub fn normalized(&self) -> DeviceModel {
        let mut out = self.clone();
        out.group_values.sort_by(|a, b| natural_cmp(&a.name, &b.name));
        out.links.sort();
        out
    }

    /// Serializes the normalized model as pretty-printed JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.normalized()).expect("model serializes") + "\n"
    }

    /// Parses the JSON model format and checks that every group exists in
    /// `mm`. Semantic validation is left to [`validate_model`](super::validate_model).
    pub fn from_json(text: &str, mm: &Metamodel) -> Result<DeviceModel, ModelFormatError> {
        let model: DeviceModel = serde_json::from_str(text).map_err(|e| ModelFormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if let Some(gv) = model.group_values.iter().find(|g| mm.group(&g.group).is_none()) {
            let (line, column) = locate_group(text, &gv.group);
            return Err(ModelFormatError::UnknownGroup { group: gv.group.clone(), line, column });
        }
        Ok(model)
    }
}

/// Position of the first `"group": "<name>"` member in a JSON text.
fn locate_group(text: &str, group: &str) -> (usize, usize) {
    let quoted = serde_json::to_string(group).expect("string serializes");
    let mut from = 0;
    while let Some(pos) = text[from..].find("\"group\"") {
        let key_at = from + pos;
        let rest = text[key_at + 7..].trim_start();
        if let Some(value) = rest.strip_prefix(':') {
            let value = value.trim_start();
            if value.starts_with(&quoted) {
                let at = text.len() - value.len();
                return line_column(text, at);
            }
        }
        from = key_at + 7;
    }
    (1, 1)
}
