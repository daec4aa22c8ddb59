use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::builtin::CONFIG_GROUP;
use super::model::DeviceModel;
use super::schema::Metamodel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ViolationCode {
    MissingConfig,
    MultipleConfig,
    DuplicateGroupValueName,
    UnknownGroup,
    AbstractGroup,
    UnknownItem,
    BadSlotValue,
    DanglingLink,
    IllegalLink,
}

/// One broken model invariant. Violations are data: validation never fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    /// The offending group value (or link, rendered `A-B`).
    pub element: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({}): {}", self.code, self.element, self.message)
    }
}

/// Checks a device model against the metamodel. Returns an empty list iff
/// the model is valid.
pub fn validate_model(m: &DeviceModel, mm: &Metamodel) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push =
        |code, element: &str, message: String| out.push(Violation { code, element: element.to_owned(), message });

    let configs: Vec<_> = m.values_of(CONFIG_GROUP).collect();
    match configs.len() {
        0 => push(ViolationCode::MissingConfig, CONFIG_GROUP, "model has no Config group value".into()),
        1 => {}
        n => push(ViolationCode::MultipleConfig, &configs[1].name, format!("model has {n} Config group values")),
    }

    let mut seen: HashMap<&str, usize> = HashMap::new();
    for gv in &m.group_values {
        let count = seen.entry(gv.name.as_str()).or_default();
        *count += 1;
        if *count == 2 {
            push(
                ViolationCode::DuplicateGroupValueName,
                &gv.name,
                format!("group value name '{}' is used more than once", gv.name),
            );
        }

        let Some(def) = mm.group(&gv.group) else {
            push(ViolationCode::UnknownGroup, &gv.name, format!("unknown group '{}'", gv.group));
            continue;
        };
        if def.is_abstract {
            push(
                ViolationCode::AbstractGroup,
                &gv.name,
                format!("group '{}' is abstract and cannot be instantiated", gv.group),
            );
        }
        for (item, value) in &gv.slots {
            match mm.resolve_item(&gv.group, item) {
                None => {
                    push(ViolationCode::UnknownItem, &gv.name, format!("group '{}' has no item '{item}'", gv.group))
                }
                Some((_, def)) if !def.kind.accepts(value) => push(
                    ViolationCode::BadSlotValue,
                    &gv.name,
                    format!("slot {item} = '{value}' is not a valid {}", def.kind),
                ),
                Some(_) => {}
            }
        }
    }

    for link in &m.links {
        let element = format!("{}-{}", link.0, link.1);
        let (Some(a), Some(b)) = (m.group_value(&link.0), m.group_value(&link.1)) else {
            let missing = if m.group_value(&link.0).is_none() { &link.0 } else { &link.1 };
            push(
                ViolationCode::DanglingLink,
                &element,
                format!("link endpoint '{missing}' does not name a group value"),
            );
            continue;
        };
        if mm.group(&a.group).is_some()
            && mm.group(&b.group).is_some()
            && mm.association_between(&a.group, &b.group).is_none()
        {
            push(ViolationCode::IllegalLink, &element, format!("no association between {} and {}", a.group, b.group));
        }
    }
    out
}
