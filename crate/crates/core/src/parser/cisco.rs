//! Recursive-descent parser for the Cisco grammar (`grammar/cisco.g`).

use super::cursor::{Cursor, PResult};
use super::token::TokenKind as K;
use super::tree::{Node, RuleNode};

pub(crate) fn file(c: &mut Cursor) -> PResult<RuleNode> {
    let mut children = vec![Node::Rule(category(c)?)];
    while !c.at_end() {
        children.push(Node::Rule(category(c)?));
    }
    Ok(RuleNode::new("file", children))
}

fn category(c: &mut Cursor) -> PResult<RuleNode> {
    let inner = match c.kind() {
        Some(K::ShowCommand) => c.token_rule("show_command", K::ShowCommand)?,
        Some(K::Hostname) => hostname(c)?,
        Some(K::Interface) => interface(c)?,
        Some(K::Ip) if c.kind2() == Some(K::Route) => static_route(c)?,
        Some(K::SpanningTree) => stp(c)?,
        Some(K::Router) => ospf(c)?,
        Some(K::AccessList) => acl(c)?,
        Some(K::Vlan | K::Num) => vlan_decl(c)?,
        Some(K::Cisco) => version_info(c)?,
        _ => return Err(c.error(&["category"])),
    };
    Ok(RuleNode::new("category", vec![Node::Rule(inner)]))
}

/// `any: (NUM|CHAR)+`, bounded to `line`.
fn any(c: &mut Cursor, line: usize) -> PResult<RuleNode> {
    let mut children = Vec::new();
    while c.at_on_line(K::Num, line) || c.at_on_line(K::Char, line) {
        children.push(c.bump());
    }
    if children.is_empty() {
        return Err(c.error(&["NUM", "CHAR"]));
    }
    Ok(RuleNode::new("any", children))
}

fn hostname(c: &mut Cursor) -> PResult<RuleNode> {
    let kw = c.expect(K::Hostname)?;
    let line = c.last_line();
    Ok(RuleNode::new("hostname", vec![kw, Node::Rule(any(c, line)?)]))
}

fn interface(c: &mut Cursor) -> PResult<RuleNode> {
    let kw = c.expect(K::Interface)?;
    let name = match c.kind() {
        Some(K::Ethernet) => ethernet(c)?,
        Some(K::IfVlan | K::Vlan) => if_vlan(c)?,
        _ => return Err(c.error(&["ETHERNET", "IF_VLAN"])),
    };
    let interface_name = RuleNode::new("interface_name", vec![Node::Rule(name)]);
    Ok(RuleNode::new("interface", vec![kw, Node::Rule(interface_name)]))
}

/// `ethernet: ETHERNET ((stack '/')? slot '/')? port interface_setting`
fn ethernet(c: &mut Cursor) -> PResult<RuleNode> {
    let mut children = vec![c.expect(K::Ethernet)?];
    let mut path = vec![c.expect(K::Num)?];
    let mut slashes = Vec::new();
    while path.len() < 3 && c.at(K::Slash) {
        slashes.push(c.bump());
        path.push(c.expect(K::Num)?);
    }
    let names: &[&'static str] = match path.len() {
        1 => &["port"],
        2 => &["slot", "port"],
        _ => &["stack", "slot", "port"],
    };
    let mut slashes = slashes.into_iter();
    for (i, (num, name)) in path.into_iter().zip(names).enumerate() {
        if i > 0 {
            children.push(slashes.next().expect("one slash per path separator"));
        }
        children.push(Node::Rule(RuleNode::new(name, vec![num])));
    }
    children.push(Node::Rule(interface_setting(c)?));
    Ok(RuleNode::new("ethernet", children))
}

/// `if_vlan: (IF_VLAN | VLAN) NUM interface_setting`
fn if_vlan(c: &mut Cursor) -> PResult<RuleNode> {
    let kw = if c.at(K::IfVlan) { c.bump() } else { c.expect(K::Vlan)? };
    let num = c.expect(K::Num)?;
    Ok(RuleNode::new("if_vlan", vec![kw, num, Node::Rule(interface_setting(c)?)]))
}

/// `interface_setting: (if_ip_address | switchport_setting | SHUTDOWN | no_shutdown | access_group)*`
fn interface_setting(c: &mut Cursor) -> PResult<RuleNode> {
    let mut children = Vec::new();
    loop {
        let node = match (c.kind(), c.kind2()) {
            (Some(K::Ip), Some(K::Address)) | (Some(K::No), Some(K::Ip)) => Node::Rule(if_ip_address(c)?),
            (Some(K::Ip), Some(K::AccessGroup)) => Node::Rule(access_group(c)?),
            (Some(K::No), Some(K::Shutdown)) => Node::Rule(RuleNode::new("no_shutdown", vec![c.bump(), c.bump()])),
            (Some(K::Switchport), _) => Node::Rule(switchport_setting(c)?),
            (Some(K::Shutdown), _) => c.bump(),
            _ => break,
        };
        children.push(node);
    }
    Ok(RuleNode::new("interface_setting", children))
}

/// `if_ip_address: NO? IP ADDRESS ip_address subnet_mask`
fn if_ip_address(c: &mut Cursor) -> PResult<RuleNode> {
    let mut children = Vec::new();
    if c.at(K::No) {
        children.push(c.bump());
    }
    children.push(c.expect(K::Ip)?);
    children.push(c.expect(K::Address)?);
    children.push(Node::Rule(c.token_rule("ip_address", K::IpAddressNum)?));
    children.push(Node::Rule(c.token_rule("subnet_mask", K::IpAddressNum)?));
    Ok(RuleNode::new("if_ip_address", children))
}

/// `access_group: IP ACCESS_GROUP NUM DIRECTION`
fn access_group(c: &mut Cursor) -> PResult<RuleNode> {
    let children = vec![c.expect(K::Ip)?, c.expect(K::AccessGroup)?, c.expect(K::Num)?, c.expect(K::Direction)?];
    Ok(RuleNode::new("access_group", children))
}

/// `switchport_setting: SWITCHPORT (port_mode | access_vlan)`
fn switchport_setting(c: &mut Cursor) -> PResult<RuleNode> {
    let kw = c.expect(K::Switchport)?;
    let inner = match c.kind() {
        Some(K::Mode) => RuleNode::new("port_mode", vec![c.bump(), c.expect(K::ModeSetting)?]),
        Some(K::ModeSetting) => {
            let setting = c.bump();
            RuleNode::new("access_vlan", vec![setting, Node::Rule(vlan_num(c)?)])
        }
        _ => return Err(c.error(&["MODE", "MODE_SETTING"])),
    };
    Ok(RuleNode::new("switchport_setting", vec![kw, Node::Rule(inner)]))
}

/// `vlan_num: VLAN NUM`
fn vlan_num(c: &mut Cursor) -> PResult<RuleNode> {
    Ok(RuleNode::new("vlan_num", vec![c.expect(K::Vlan)?, c.expect(K::Num)?]))
}

/// `static_route: IP ROUTE route_destination route_mask next_hop distance?`
fn static_route(c: &mut Cursor) -> PResult<RuleNode> {
    let mut children = vec![c.expect(K::Ip)?, c.expect(K::Route)?];
    let line = c.last_line();
    children.push(Node::Rule(c.token_rule("route_destination", K::IpAddressNum)?));
    children.push(Node::Rule(c.token_rule("route_mask", K::IpAddressNum)?));
    children.push(Node::Rule(c.token_rule("next_hop", K::IpAddressNum)?));
    if c.at_on_line(K::Num, line) {
        children.push(Node::Rule(c.token_rule("distance", K::Num)?));
    }
    Ok(RuleNode::new("static_route", children))
}

/// `stp: SPANNING_TREE (stp_mode | vlan_num stp_priority?)`
fn stp(c: &mut Cursor) -> PResult<RuleNode> {
    let mut children = vec![c.expect(K::SpanningTree)?];
    match c.kind() {
        Some(K::Mode) => {
            let mode = RuleNode::new("stp_mode", vec![c.bump(), c.expect(K::StpModeSetting)?]);
            children.push(Node::Rule(mode));
        }
        Some(K::Vlan) => {
            children.push(Node::Rule(vlan_num(c)?));
            if c.at(K::Priority) {
                let prio = RuleNode::new("stp_priority", vec![c.bump(), c.expect(K::Num)?]);
                children.push(Node::Rule(prio));
            }
        }
        _ => return Err(c.error(&["MODE", "VLAN"])),
    }
    Ok(RuleNode::new("stp", children))
}

/// `ospf: ROUTER OSPF NUM (router_id | ospf_network | ospf_virtual_link)*`
fn ospf(c: &mut Cursor) -> PResult<RuleNode> {
    let mut children = vec![c.expect(K::Router)?, c.expect(K::Ospf)?, c.expect(K::Num)?];
    loop {
        let node = match c.kind() {
            Some(K::RouterId) => RuleNode::new("router_id", vec![c.bump(), c.expect(K::IpAddressNum)?]),
            Some(K::Network) => {
                let kw = c.bump();
                let addr = c.token_rule("network_address", K::IpAddressNum)?;
                let wildcard = c.token_rule("wildcard_mask", K::IpAddressNum)?;
                let area = area_id(c)?;
                RuleNode::new("ospf_network", vec![kw, Node::Rule(addr), Node::Rule(wildcard), Node::Rule(area)])
            }
            Some(K::Area) => {
                let area = area_id(c)?;
                RuleNode::new(
                    "ospf_virtual_link",
                    vec![Node::Rule(area), c.expect(K::VirtualLink)?, c.expect(K::IpAddressNum)?],
                )
            }
            _ => break,
        };
        children.push(Node::Rule(node));
    }
    Ok(RuleNode::new("ospf", children))
}

/// `area_id: AREA NUM`
fn area_id(c: &mut Cursor) -> PResult<RuleNode> {
    Ok(RuleNode::new("area_id", vec![c.expect(K::Area)?, c.expect(K::Num)?]))
}

/// `acl: ACCESS_LIST NUM ACL_ACTION protocol? source_address source_wildcard
///       (destination_address destination_wildcard)? acl_port?`
fn acl(c: &mut Cursor) -> PResult<RuleNode> {
    let mut children = vec![c.expect(K::AccessList)?, c.expect(K::Num)?, c.expect(K::AclAction)?];
    if matches!(c.kind(), Some(K::Protocol | K::Ip)) {
        children.push(Node::Rule(RuleNode::new("protocol", vec![c.bump()])));
    }
    children.push(Node::Rule(c.token_rule("source_address", K::IpAddressNum)?));
    children.push(Node::Rule(c.token_rule("source_wildcard", K::IpAddressNum)?));
    if c.at(K::IpAddressNum) {
        children.push(Node::Rule(c.token_rule("destination_address", K::IpAddressNum)?));
        children.push(Node::Rule(c.token_rule("destination_wildcard", K::IpAddressNum)?));
    }
    if c.at(K::PortOperator) {
        let port = RuleNode::new("acl_port", vec![c.bump(), c.expect(K::Num)?]);
        children.push(Node::Rule(port));
    }
    Ok(RuleNode::new("acl", children))
}

/// `vlan_decl: VLAN vlan_id vlan_name? | vlan_id vlan_name VLAN_STATUS vlan_ports?`
///
/// The second form is a `show vlan-switch` row.
fn vlan_decl(c: &mut Cursor) -> PResult<RuleNode> {
    let mut children = Vec::new();
    if c.at(K::Vlan) {
        children.push(c.bump());
        children.push(Node::Rule(c.token_rule("vlan_id", K::Num)?));
        if c.at(K::Name) {
            children.push(Node::Rule(vlan_name(c)?));
        }
    } else {
        children.push(Node::Rule(c.token_rule("vlan_id", K::Num)?));
        children.push(Node::Rule(vlan_name(c)?));
        children.push(c.expect(K::VlanStatus)?);
        if c.at(K::Char) {
            children.push(Node::Rule(vlan_ports(c)?));
        }
    }
    Ok(RuleNode::new("vlan_decl", children))
}

/// `vlan_name: NAME? any`
fn vlan_name(c: &mut Cursor) -> PResult<RuleNode> {
    let mut children = Vec::new();
    if c.at(K::Name) {
        children.push(c.bump());
    }
    let line = c.last_line();
    children.push(Node::Rule(any(c, line)?));
    Ok(RuleNode::new("vlan_name", children))
}

/// `vlan_ports: port_ref (COMMA port_ref)*` with `port_ref: CHAR NUM (SLASH NUM)*`
fn vlan_ports(c: &mut Cursor) -> PResult<RuleNode> {
    let mut children = Vec::new();
    loop {
        let mut port = vec![c.expect(K::Char)?, c.expect(K::Num)?];
        while c.at(K::Slash) {
            port.push(c.bump());
            port.push(c.expect(K::Num)?);
        }
        children.push(Node::Rule(RuleNode::new("port_ref", port)));
        if !c.at(K::Comma) {
            break;
        }
        children.push(c.bump());
    }
    Ok(RuleNode::new("vlan_ports", children))
}

/// `version_info: CISCO DEVICE_MODEL VERSION_DETAIL`
fn version_info(c: &mut Cursor) -> PResult<RuleNode> {
    let children = vec![c.expect(K::Cisco)?, c.expect(K::DeviceModel)?, c.expect(K::VersionDetail)?];
    Ok(RuleNode::new("version_info", children))
}
