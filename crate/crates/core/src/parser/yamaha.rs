//! Recursive-descent parser for the Yamaha grammar (`grammar/yamaha.g`).

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
    let inner = match (c.kind(), c.kind2()) {
        (Some(K::Ip), Some(K::Lan)) => lan_address(c)?,
        (Some(K::Ip), Some(K::Route)) => static_route(c)?,
        (Some(K::Vlan), _) => vlan_decl(c)?,
        _ => return Err(c.error(&["category"])),
    };
    Ok(RuleNode::new("category", vec![Node::Rule(inner)]))
}

/// `lan_interface: LAN NUM`
fn lan_interface(c: &mut Cursor) -> PResult<RuleNode> {
    Ok(RuleNode::new("lan_interface", vec![c.expect(K::Lan)?, c.expect(K::Num)?]))
}

/// `lan_address: IP lan_interface ADDRESS ip_address SLASH prefix_length`
fn lan_address(c: &mut Cursor) -> PResult<RuleNode> {
    let children = vec![
        c.expect(K::Ip)?,
        Node::Rule(lan_interface(c)?),
        c.expect(K::Address)?,
        Node::Rule(c.token_rule("ip_address", K::IpAddressNum)?),
        c.expect(K::Slash)?,
        Node::Rule(c.token_rule("prefix_length", K::Num)?),
    ];
    Ok(RuleNode::new("lan_address", children))
}

/// `static_route: IP ROUTE route_destination GATEWAY next_hop`
fn static_route(c: &mut Cursor) -> PResult<RuleNode> {
    let mut children = vec![c.expect(K::Ip)?, c.expect(K::Route)?];
    let dest = match c.kind() {
        Some(K::Default) => vec![c.bump()],
        Some(K::IpAddressNum) => vec![
            Node::Rule(c.token_rule("destination_address", K::IpAddressNum)?),
            c.expect(K::Slash)?,
            Node::Rule(c.token_rule("prefix_length", K::Num)?),
        ],
        _ => return Err(c.error(&["DEFAULT", "IP_ADDRESS_NUM"])),
    };
    children.push(Node::Rule(RuleNode::new("route_destination", dest)));
    children.push(c.expect(K::Gateway)?);
    children.push(Node::Rule(c.token_rule("next_hop", K::IpAddressNum)?));
    Ok(RuleNode::new("static_route", children))
}

/// `vlan_decl: VLAN lan_interface SLASH vlan_index DOT1Q VID EQUALS vlan_id`
fn vlan_decl(c: &mut Cursor) -> PResult<RuleNode> {
    let children = vec![
        c.expect(K::Vlan)?,
        Node::Rule(lan_interface(c)?),
        c.expect(K::Slash)?,
        Node::Rule(c.token_rule("vlan_index", K::Num)?),
        c.expect(K::Dot1q)?,
        c.expect(K::Vid)?,
        c.expect(K::Equals)?,
        Node::Rule(c.token_rule("vlan_id", K::Num)?),
    ];
    Ok(RuleNode::new("vlan_decl", children))
}
