//! Emit templates: how each group value turns into command lines.
//!
//! A line pattern is text with placeholders:
//!
//! | syntax                    | meaning                                           |
//! |---------------------------|---------------------------------------------------|
//! | `{item}`                  | slot value                                        |
//! | `{item:a=x,b=y}`          | `x` when the slot is `a`, `y` when it is `b`      |
//! | `[ ... ]`                 | optional clause, dropped when a slot in it is empty |
//! | `<alt1\|alt2>`            | first alternative whose slots are all present     |
//!
//! A line whose unbracketed slots are not all present is omitted.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::metamodel::{GroupValue, Metamodel};
use crate::Vendor;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    Text(String),
    Slot(String),
    Case { item: String, arms: Vec<(String, String)> },
    Optional(Vec<Segment>),
    Choice(Vec<Vec<Segment>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad line pattern '{pattern}' at byte {offset}: {message}")]
pub struct PatternError {
    pub pattern: String,
    pub offset: usize,
    pub message: &'static str,
}

/// A parsed line pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinePattern {
    source: String,
    segments: Vec<Segment>,
}

impl LinePattern {
    pub fn parse(source: &str) -> Result<Self, PatternError> {
        let mut p = PatternParser { src: source, pos: 0 };
        let segments = p.sequence(&[])?;
        if p.pos < source.len() {
            return Err(p.error("unbalanced closing bracket"));
        }
        Ok(LinePattern { source: source.to_owned(), segments })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// The line for `gv`, or `None` when a mandatory slot is empty.
    pub fn render(&self, gv: &GroupValue) -> Option<String> {
        render_seq(&self.segments, gv)
    }

    /// Every item the pattern mentions.
    pub fn items(&self) -> BTreeSet<&str> {
        fn go<'a>(segs: &'a [Segment], out: &mut BTreeSet<&'a str>) {
            for s in segs {
                match s {
                    Segment::Text(_) => {}
                    Segment::Slot(i) | Segment::Case { item: i, .. } => {
                        out.insert(i);
                    }
                    Segment::Optional(inner) => go(inner, out),
                    Segment::Choice(alts) => alts.iter().for_each(|a| go(a, out)),
                }
            }
        }
        let mut out = BTreeSet::new();
        go(&self.segments, &mut out);
        out
    }
}

impl fmt::Display for LinePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

fn render_seq(segs: &[Segment], gv: &GroupValue) -> Option<String> {
    let mut out = String::new();
    for s in segs {
        match s {
            Segment::Text(t) => out.push_str(t),
            Segment::Slot(item) => out.push_str(gv.slot(item)?),
            Segment::Case { item, arms } => {
                let v = gv.slot(item)?;
                out.push_str(&arms.iter().find(|(k, _)| k == v)?.1);
            }
            Segment::Optional(inner) => out.push_str(&render_seq(inner, gv).unwrap_or_default()),
            Segment::Choice(alts) => out.push_str(&alts.iter().find_map(|a| render_seq(a, gv))?),
        }
    }
    Some(out)
}

struct PatternParser<'s> {
    src: &'s str,
    pos: usize,
}

impl PatternParser<'_> {
    fn error(&self, message: &'static str) -> PatternError {
        PatternError { pattern: self.src.to_owned(), offset: self.pos, message }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    /// Segments up to (not including) one of `stops` or the end.
    fn sequence(&mut self, stops: &[char]) -> Result<Vec<Segment>, PatternError> {
        let mut out = Vec::new();
        let mut text = String::new();
        while let Some(c) = self.rest().chars().next() {
            if stops.contains(&c) {
                break;
            }
            if matches!(c, ']' | '>' | '|' | '}') {
                return Err(self.error("unexpected closing character"));
            }
            if matches!(c, '{' | '[' | '<') && !text.is_empty() {
                out.push(Segment::Text(std::mem::take(&mut text)));
            }
            self.pos += c.len_utf8();
            match c {
                '{' => out.push(self.placeholder()?),
                '[' => {
                    let inner = self.sequence(&[']'])?;
                    self.close(']')?;
                    out.push(Segment::Optional(inner));
                }
                '<' => {
                    let mut alts = vec![self.sequence(&['|', '>'])?];
                    while self.rest().starts_with('|') {
                        self.pos += 1;
                        alts.push(self.sequence(&['|', '>'])?);
                    }
                    self.close('>')?;
                    out.push(Segment::Choice(alts));
                }
                c => text.push(c),
            }
        }
        if !text.is_empty() {
            out.push(Segment::Text(text));
        }
        Ok(out)
    }

    fn close(&mut self, c: char) -> Result<(), PatternError> {
        if self.rest().starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error("missing closing bracket"))
        }
    }

    fn placeholder(&mut self) -> Result<Segment, PatternError> {
        let Some(end) = self.rest().find('}') else {
            return Err(self.error("missing '}'"));
        };
        let body = &self.rest()[..end];
        let segment = match body.split_once(':') {
            None => Segment::Slot(body.to_owned()),
            Some((item, arms)) => {
                let arms = arms
                    .split(',')
                    .map(|arm| arm.split_once('=').map(|(k, v)| (k.to_owned(), v.to_owned())))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| self.error("case arm needs '='"))?;
                Segment::Case { item: item.to_owned(), arms }
            }
        };
        let name_ok = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric());
        match &segment {
            Segment::Slot(i) | Segment::Case { item: i, .. } if !name_ok(i) => {
                return Err(self.error("bad item name"));
            }
            _ => {}
        }
        self.pos += end + 1;
        Ok(segment)
    }
}

/// Output sections, in emission order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    Hostname,
    VlanDeclaration,
    Interface,
    StaticRoute,
    Stp,
    Ospf,
    AccessList,
}

/// When a block is emitted for a group value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Trigger {
    Always,
    AnyPresent(Vec<String>),
    NonePresent(Vec<String>),
    Either(Box<Trigger>, Box<Trigger>),
}

impl Trigger {
    pub fn fires(&self, gv: &GroupValue) -> bool {
        match self {
            Trigger::Always => true,
            Trigger::AnyPresent(items) => items.iter().any(|i| gv.slot(i).is_some()),
            Trigger::NonePresent(items) => items.iter().all(|i| gv.slot(i).is_none()),
            Trigger::Either(a, b) => a.fires(gv) || b.fires(gv),
        }
    }
}

/// Commands emitted for one group value. With an `enter` line the body
/// runs inside a configuration mode closed by `exit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTemplate {
    pub group: String,
    pub category: Category,
    pub trigger: Trigger,
    pub enter: Option<LinePattern>,
    pub body: Vec<LinePattern>,
    /// Linked group values emitted inside the body, in this group order.
    pub children: Vec<String>,
}

/// Lines for a group value that only appears inside a parent block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChildTemplate {
    pub group: String,
    pub lines: Vec<LinePattern>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("template group '{0}' is not in the metamodel")]
    UnknownGroup(String),
    #[error("template for '{group}' uses unknown item '{item}'")]
    UnknownItem { group: String, item: String },
}

/// The complete set of templates for one vendor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Templates {
    pub vendor: Vendor,
    /// Session lines before the configuration: `(text, enters a mode)`.
    pub prologue: Vec<(String, bool)>,
    /// Session lines after the configuration: `(text, leaves a mode)`.
    pub epilogue: Vec<(String, bool)>,
    pub blocks: Vec<BlockTemplate>,
    pub child_templates: Vec<ChildTemplate>,
    /// Items a group value must carry to be emitted at all.
    pub required: Vec<(String, Vec<String>)>,
}

impl Templates {
    pub fn builtin(vendor: Vendor, mm: &Metamodel) -> Templates {
        let t = match vendor {
            Vendor::Cisco => cisco(),
            Vendor::Yamaha => yamaha(),
        };
        t.expect("builtin templates are well-formed").checked(mm).expect("builtin templates match the metamodel")
    }

    /// Checks every group and item reference against `mm`.
    pub fn checked(self, mm: &Metamodel) -> Result<Templates, TemplateError> {
        let mut refs: Vec<(&str, BTreeSet<&str>)> = Vec::new();
        for b in &self.blocks {
            let mut items: BTreeSet<&str> = b.body.iter().flat_map(LinePattern::items).collect();
            items.extend(b.enter.iter().flat_map(LinePattern::items));
            if let Trigger::AnyPresent(v) | Trigger::NonePresent(v) = &b.trigger {
                items.extend(v.iter().map(String::as_str));
            }
            refs.push((&b.group, items));
            refs.extend(b.children.iter().map(|c| (c.as_str(), BTreeSet::new())));
        }
        for c in &self.child_templates {
            refs.push((&c.group, c.lines.iter().flat_map(LinePattern::items).collect()));
        }
        for (g, items) in &self.required {
            refs.push((g, items.iter().map(String::as_str).collect()));
        }
        for (group, items) in refs {
            if mm.group(group).is_none() {
                return Err(TemplateError::UnknownGroup(group.to_owned()));
            }
            if let Some(item) = items.into_iter().find(|i| mm.resolve_item(group, i).is_none()) {
                return Err(TemplateError::UnknownItem { group: group.to_owned(), item: item.to_owned() });
            }
        }
        Ok(self)
    }

    pub fn required_items(&self, group: &str) -> &[String] {
        self.required.iter().find(|(g, _)| g == group).map_or(&[], |(_, items)| items)
    }

    pub fn blocks_for<'a>(&'a self, group: &'a str) -> impl Iterator<Item = &'a BlockTemplate> + 'a {
        self.blocks.iter().filter(move |b| b.group == group)
    }

    pub fn child_template(&self, group: &str) -> Option<&ChildTemplate> {
        self.child_templates.iter().find(|c| c.group == group)
    }

    /// Whether `group` has any template.
    pub fn knows(&self, group: &str) -> bool {
        self.blocks_for(group).next().is_some() || self.child_template(group).is_some()
    }

    /// Replaces the first line pattern equal to `from` (test helper for
    /// corrupting a template).
    pub fn replace_line(&mut self, from: &str, to: &str) -> Result<bool, PatternError> {
        let to = LinePattern::parse(to)?;
        let lines = self
            .blocks
            .iter_mut()
            .flat_map(|b| b.enter.iter_mut().chain(b.body.iter_mut()))
            .chain(self.child_templates.iter_mut().flat_map(|c| c.lines.iter_mut()));
        for line in lines {
            if line.source == from {
                *line = to;
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn lines(patterns: &[&str]) -> Result<Vec<LinePattern>, PatternError> {
    patterns.iter().map(|p| LinePattern::parse(p)).collect()
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| (*s).to_owned()).collect()
}

fn block(
    group: &str,
    category: Category,
    trigger: Trigger,
    enter: Option<&str>,
    body: &[&str],
) -> Result<BlockTemplate, PatternError> {
    Ok(BlockTemplate {
        group: group.to_owned(),
        category,
        trigger,
        enter: enter.map(LinePattern::parse).transpose()?,
        body: lines(body)?,
        children: Vec::new(),
    })
}

const CISCO_VLAN_INTERFACE_ITEMS: [&str; 5] =
    ["ipAddress", "subnetMask", "shutdown", "accessListNumber", "accessListDirection"];

const SHUTDOWN_LINE: &str = "{shutdown:true=shutdown,false=no shutdown}";

fn cisco() -> Result<Templates, PatternError> {
    use Category::*;
    let mut ospf =
        block("CiscoOspfSetting", Ospf, Trigger::Always, Some("router ospf {processId}"), &["router-id {routerId}"])?;
    ospf.children = strings(&["OspfVirtualLink", "OspfNetwork"]);
    Ok(Templates {
        vendor: Vendor::Cisco,
        prologue: vec![("enable".into(), false), ("configure terminal".into(), true)],
        epilogue: vec![("exit".into(), true), ("copy running-config startup-config".into(), false)],
        blocks: vec![
            block("Hostname", Hostname, Trigger::Always, None, &["hostname {name}"])?,
            block(
                "CiscoVlanSetting",
                VlanDeclaration,
                Trigger::Either(
                    Box::new(Trigger::AnyPresent(strings(&["vlanName"]))),
                    Box::new(Trigger::NonePresent(strings(&CISCO_VLAN_INTERFACE_ITEMS))),
                ),
                Some("vlan {vlanNum}"),
                &["name {vlanName}"],
            )?,
            block(
                "CiscoEthernetSetting",
                Interface,
                Trigger::Always,
                Some("interface fastethernet [[{stack}/]{slot}/]{port}"),
                &[
                    SHUTDOWN_LINE,
                    "switchport mode {mode}",
                    "switchport access vlan {accessVlan}",
                    "ip address {ipAddress} {subnetMask}",
                    "ip access-group {accessListNumber} {accessListDirection}",
                ],
            )?,
            block(
                "CiscoVlanSetting",
                Interface,
                Trigger::AnyPresent(strings(&CISCO_VLAN_INTERFACE_ITEMS)),
                Some("interface vlan {vlanNum}"),
                &[
                    "ip address {ipAddress} {subnetMask}",
                    "ip access-group {accessListNumber} {accessListDirection}",
                    SHUTDOWN_LINE,
                ],
            )?,
            block(
                "CiscoStaticRouteSetting",
                StaticRoute,
                Trigger::Always,
                None,
                &["ip route {destination} {mask} {nextHop}[ {distance}]"],
            )?,
            block(
                "CiscoStpSetting",
                Stp,
                Trigger::Always,
                None,
                &["spanning-tree mode {stpMode}", "spanning-tree vlan {vlanNum}[ priority {priority}]"],
            )?,
            ospf,
            block(
                "CiscoAccessList",
                AccessList,
                Trigger::Always,
                None,
                &["access-list {number} {action}[ {protocol}] {sourceAddress} {sourceWildcard}\
                   [ {destinationAddress} {destinationWildcard}][ {portOperator} {portNumber}]"],
            )?,
        ],
        child_templates: vec![
            ChildTemplate { group: "OspfVirtualLink".into(), lines: lines(&["area {area} virtual-link {routerId}"])? },
            ChildTemplate { group: "OspfNetwork".into(), lines: lines(&["network {address} {wildcard} area {area}"])? },
        ],
        required: vec![
            ("Hostname".into(), strings(&["name"])),
            ("CiscoVlanSetting".into(), strings(&["vlanNum"])),
            ("CiscoEthernetSetting".into(), strings(&["port"])),
            ("CiscoStaticRouteSetting".into(), strings(&["destination", "mask", "nextHop"])),
            ("CiscoOspfSetting".into(), strings(&["processId"])),
            ("OspfVirtualLink".into(), strings(&["area", "routerId"])),
            ("OspfNetwork".into(), strings(&["address", "wildcard", "area"])),
            ("CiscoAccessList".into(), strings(&["number", "action", "sourceAddress", "sourceWildcard"])),
        ],
    })
}

fn yamaha() -> Result<Templates, PatternError> {
    use Category::*;
    Ok(Templates {
        vendor: Vendor::Yamaha,
        prologue: vec![],
        epilogue: vec![("save".into(), false)],
        blocks: vec![
            block(
                "YamahaVlanSetting",
                VlanDeclaration,
                Trigger::Always,
                None,
                &["vlan lan{lanInterface}/{vlanInterface} 802.1q vid={vlanNum}"],
            )?,
            block(
                "YamahaEthernetSetting",
                Interface,
                Trigger::Always,
                None,
                &["ip lan{port} address {ipAddress}/{subnetMask}"],
            )?,
            block(
                "YamahaStaticRouteSetting",
                StaticRoute,
                Trigger::Always,
                None,
                &["ip route <{destination}/{mask}|{destination:0.0.0.0=default}> gateway {nextHop}"],
            )?,
        ],
        child_templates: vec![],
        required: vec![
            ("YamahaVlanSetting".into(), strings(&["lanInterface", "vlanInterface", "vlanNum"])),
            ("YamahaEthernetSetting".into(), strings(&["port", "ipAddress", "subnetMask"])),
            ("YamahaStaticRouteSetting".into(), strings(&["destination", "nextHop"])),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metamodel::builtin_metamodel;

    fn gv(slots: &[(&str, &str)]) -> GroupValue {
        slots.iter().fold(GroupValue::new("X1", "CiscoAccessList"), |g, (k, v)| g.with_slot(*k, *v))
    }

    #[test]
    fn segments() {
        let p = LinePattern::parse("a {x}[ b {y}]<{z}|c>{s:true=on,false=off}").unwrap();
        assert_eq!(
            p.segments,
            [
                Segment::Text("a ".into()),
                Segment::Slot("x".into()),
                Segment::Optional(vec![Segment::Text(" b ".into()), Segment::Slot("y".into())]),
                Segment::Choice(vec![vec![Segment::Slot("z".into())], vec![Segment::Text("c".into())]]),
                Segment::Case {
                    item: "s".into(),
                    arms: vec![("true".into(), "on".into()), ("false".into(), "off".into())]
                },
            ]
        );
        assert_eq!(p.items().into_iter().collect::<Vec<_>>(), ["s", "x", "y", "z"]);
    }

    #[test]
    fn pattern_errors() {
        for bad in ["a [b", "a b]", "{x", "<a|b", "{x:y}", "{}", "{a b}"] {
            assert!(LinePattern::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn render_rules() {
        let p = LinePattern::parse(
            "access-list {number} {action}[ {protocol}] {sourceAddress}[ {portOperator} {portNumber}]",
        )
        .unwrap();
        let full = gv(&[
            ("number", "100"),
            ("action", "permit"),
            ("protocol", "tcp"),
            ("sourceAddress", "10.0.0.0"),
            ("portOperator", "eq"),
            ("portNumber", "80"),
        ]);
        assert_eq!(p.render(&full).unwrap(), "access-list 100 permit tcp 10.0.0.0 eq 80");
        let partial =
            gv(&[("number", "100"), ("action", "deny"), ("sourceAddress", "10.0.0.0"), ("portOperator", "eq")]);
        assert_eq!(p.render(&partial).unwrap(), "access-list 100 deny 10.0.0.0");
        assert_eq!(p.render(&gv(&[("number", "100")])), None);
    }

    #[test]
    fn choice_and_case() {
        let p = LinePattern::parse("ip route <{destination}/{mask}|{destination:0.0.0.0=default}> gateway {nextHop}")
            .unwrap();
        let base = GroupValue::new("YSR1", "YamahaStaticRouteSetting").with_slot("nextHop", "10.0.0.1");
        assert_eq!(
            p.render(&base.clone().with_slot("destination", "0.0.0.0")).unwrap(),
            "ip route default gateway 10.0.0.1"
        );
        assert_eq!(
            p.render(&base.clone().with_slot("destination", "10.1.0.0").with_slot("mask", "16")).unwrap(),
            "ip route 10.1.0.0/16 gateway 10.0.0.1"
        );
        assert_eq!(p.render(&base.with_slot("destination", "10.1.0.0")), None);
    }

    #[test]
    fn builtin_templates_check_out() {
        for vendor in Vendor::ALL {
            let t = Templates::builtin(vendor, builtin_metamodel());
            for (group, items) in &t.required {
                assert!(t.knows(group), "{group}");
                assert!(!items.is_empty());
            }
        }
    }

    #[test]
    fn unknown_items_are_rejected() {
        let mut t = cisco().unwrap();
        assert!(t.replace_line("hostname {name}", "hostname {nome}").unwrap());
        assert_eq!(
            t.checked(builtin_metamodel()).unwrap_err(),
            TemplateError::UnknownItem { group: "Hostname".into(), item: "nome".into() }
        );
    }
}
