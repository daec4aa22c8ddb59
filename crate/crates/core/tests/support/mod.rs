//! Random grammar-conforming configurations for property tests.
//!
//! Each generated file comes with the facts the extracted model must
//! show, so properties can be checked without a second extractor.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::sample::select;

pub type Ip = String;

pub fn ip() -> impl Strategy<Value = Ip> {
    (any::<u8>(), any::<u8>(), any::<u8>(), any::<u8>()).prop_map(|(a, b, c, d)| format!("{a}.{b}.{c}.{d}"))
}

#[derive(Debug, Clone)]
pub enum IfSetting {
    Shutdown,
    NoShutdown,
    Mode(&'static str),
    AccessVlan(u32),
    Address(Ip, Ip),
    AccessGroup(u32, &'static str),
}

impl IfSetting {
    fn render(&self) -> String {
        match self {
            IfSetting::Shutdown => "shutdown".into(),
            IfSetting::NoShutdown => "no shutdown".into(),
            IfSetting::Mode(m) => format!("switchport mode {m}"),
            IfSetting::AccessVlan(v) => format!("switchport access vlan {v}"),
            IfSetting::Address(a, m) => format!("ip address {a} {m}"),
            IfSetting::AccessGroup(n, d) => format!("ip access-group {n} {d}"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum OspfLine {
    Network(Ip, Ip, u32),
    VirtualLink(u32, Ip),
}

#[derive(Debug, Clone)]
pub enum Block {
    Hostname(String),
    Ethernet {
        path: Vec<u32>,
        settings: Vec<IfSetting>,
    },
    VlanIf {
        num: u32,
        settings: Vec<IfSetting>,
    },
    VlanDecl {
        id: u32,
        name: Option<String>,
    },
    Route {
        dest: Ip,
        mask: Ip,
        next_hop: Ip,
        distance: Option<u32>,
    },
    StpMode(&'static str),
    StpVlan {
        vlan: u32,
        priority: Option<u32>,
    },
    Ospf {
        process: u32,
        router_id: Option<Ip>,
        body: Vec<OspfLine>,
    },
    Acl {
        number: u32,
        action: &'static str,
        protocol: Option<&'static str>,
        src: (Ip, Ip),
        dst: Option<(Ip, Ip)>,
        port: Option<(&'static str, u32)>,
    },
}

impl Block {
    /// Lines of the block: the head line first, body lines after it.
    pub fn lines(&self) -> (String, Vec<String>) {
        let settings = |s: &[IfSetting]| s.iter().map(IfSetting::render).collect();
        match self {
            Block::Hostname(n) => (format!("hostname {n}"), vec![]),
            Block::Ethernet { path, settings: s } => {
                let p: Vec<_> = path.iter().map(u32::to_string).collect();
                (format!("interface FastEthernet{}", p.join("/")), settings(s))
            }
            Block::VlanIf { num, settings: s } => (format!("interface Vlan{num}"), settings(s)),
            Block::VlanDecl { id, name } => (format!("vlan {id}"), name.iter().map(|n| format!("name {n}")).collect()),
            Block::Route { dest, mask, next_hop, distance } => {
                let d = distance.map(|d| format!(" {d}")).unwrap_or_default();
                (format!("ip route {dest} {mask} {next_hop}{d}"), vec![])
            }
            Block::StpMode(m) => (format!("spanning-tree mode {m}"), vec![]),
            Block::StpVlan { vlan, priority } => {
                let p = priority.map(|p| format!(" priority {p}")).unwrap_or_default();
                (format!("spanning-tree vlan {vlan}{p}"), vec![])
            }
            Block::Ospf { process, router_id, body } => {
                let mut lines: Vec<String> = router_id.iter().map(|r| format!("router-id {r}")).collect();
                lines.extend(body.iter().map(|l| match l {
                    OspfLine::Network(a, w, area) => format!("network {a} {w} area {area}"),
                    OspfLine::VirtualLink(area, r) => format!("area {area} virtual-link {r}"),
                }));
                (format!("router ospf {process}"), lines)
            }
            Block::Acl { number, action, protocol, src, dst, port } => {
                let mut s = format!("access-list {number} {action}");
                if let Some(p) = protocol {
                    s += &format!(" {p}");
                }
                s += &format!(" {} {}", src.0, src.1);
                if let Some((a, w)) = dst {
                    s += &format!(" {a} {w}");
                }
                if let Some((op, n)) = port {
                    s += &format!(" {op} {n}");
                }
                (s, vec![])
            }
        }
    }

    /// `(group, expected shutdown slot)` of the group value the block opens.
    pub fn opened(&self) -> Option<(&'static str, Option<bool>)> {
        let shut = |s: &[IfSetting]| Some(s.iter().any(|x| matches!(x, IfSetting::Shutdown)));
        match self {
            Block::Ethernet { settings, .. } => Some(("CiscoEthernetSetting", shut(settings))),
            Block::VlanIf { settings, .. } => Some(("CiscoVlanSetting", shut(settings))),
            Block::VlanDecl { .. } => Some(("CiscoVlanSetting", None)),
            _ => None,
        }
    }
}

fn shutdown_state() -> impl Strategy<Value = Vec<IfSetting>> {
    prop_oneof![
        Just(vec![]),
        Just(vec![IfSetting::Shutdown]),
        Just(vec![IfSetting::Shutdown, IfSetting::Shutdown]),
        Just(vec![IfSetting::NoShutdown]),
    ]
}

fn access_group() -> impl Strategy<Value = IfSetting> {
    (1..200u32, select(&["in", "out"][..])).prop_map(|(n, d)| IfSetting::AccessGroup(n, d))
}

fn ethernet() -> BoxedStrategy<Block> {
    let mode = proptest::option::of(select(&["access", "trunk", "dynamic auto", "dynamic desirable"][..]));
    (
        prop::collection::vec(0..16u32, 1..=3),
        shutdown_state(),
        mode,
        proptest::option::of(1..4095u32),
        proptest::option::of((ip(), ip())),
        proptest::option::of(access_group()),
    )
        .prop_flat_map(|(path, shut, mode, vlan, addr, group)| {
            let mut s = shut;
            s.extend(mode.map(IfSetting::Mode));
            // the access vlan row also writes mode = access
            if matches!(mode, None | Some("access")) {
                s.extend(vlan.map(IfSetting::AccessVlan));
            }
            s.extend(addr.map(|(a, m)| IfSetting::Address(a, m)));
            s.extend(group);
            Just(s).prop_shuffle().prop_map(move |settings| Block::Ethernet { path: path.clone(), settings })
        })
        .boxed()
}

fn vlan_if() -> BoxedStrategy<Block> {
    (1..4095u32, shutdown_state(), proptest::option::of((ip(), ip())), proptest::option::of(access_group()))
        .prop_flat_map(|(num, shut, addr, group)| {
            let mut s = shut;
            s.extend(addr.map(|(a, m)| IfSetting::Address(a, m)));
            s.extend(group);
            Just(s).prop_shuffle().prop_map(move |settings| Block::VlanIf { num, settings })
        })
        .boxed()
}

fn word() -> impl Strategy<Value = String> {
    (
        select(&["core", "edge", "campus", "branch", "Router", "lab", "SERVERS", "VLAN"][..]),
        proptest::option::of(0..10_000u32),
    )
        .prop_map(|(w, n)| match n {
            Some(n) => format!("{w}{n}"),
            None => w.to_owned(),
        })
}

fn ospf() -> BoxedStrategy<Block> {
    let line = prop_oneof![
        (ip(), ip(), 0..100u32).prop_map(|(a, w, area)| OspfLine::Network(a, w, area)),
        (0..100u32, ip()).prop_map(|(area, r)| OspfLine::VirtualLink(area, r)),
    ];
    (1..65_536u32, proptest::option::of(ip()), prop::collection::vec(line, 0..5))
        .prop_map(|(process, router_id, body)| Block::Ospf { process, router_id, body })
        .boxed()
}

fn acl() -> BoxedStrategy<Block> {
    (
        1..200u32,
        select(&["permit", "deny"][..]),
        proptest::option::of(select(&["tcp", "udp", "icmp", "ip"][..])),
        (ip(), ip()),
        proptest::option::of((ip(), ip())),
        proptest::option::of((select(&["eq", "neq", "lt", "gt"][..]), 0..65_536u32)),
    )
        .prop_map(|(number, action, protocol, src, dst, port)| Block::Acl { number, action, protocol, src, dst, port })
        .boxed()
}

/// Any block except `Hostname`.
pub fn block() -> BoxedStrategy<Block> {
    prop_oneof![
        3 => ethernet(),
        2 => vlan_if(),
        1 => (1..4095u32, proptest::option::of(word())).prop_map(|(id, name)| Block::VlanDecl { id, name }),
        1 => (ip(), ip(), ip(), proptest::option::of(1..256u32))
            .prop_map(|(dest, mask, next_hop, distance)| Block::Route { dest, mask, next_hop, distance }),
        1 => select(&["pvst", "rapid-pvst", "mst"][..]).prop_map(Block::StpMode),
        1 => (1..4095u32, proptest::option::of(0..61_441u32)).prop_map(|(vlan, priority)| Block::StpVlan { vlan, priority }),
        1 => ospf(),
        2 => acl(),
    ]
    .boxed()
}

/// A generated Cisco running configuration.
#[derive(Debug, Clone)]
pub struct CiscoConfig {
    pub blocks: Vec<Block>,
    /// Bang separators after each block.
    pub bangs: Vec<bool>,
    /// Indentation of body lines.
    pub indent: usize,
}

impl CiscoConfig {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for (b, bang) in self.blocks.iter().zip(&self.bangs) {
            let (head, body) = b.lines();
            out += &head;
            out.push('\n');
            for l in body {
                out += &" ".repeat(self.indent);
                out += &l;
                out.push('\n');
            }
            if *bang {
                out += "!\n";
            }
        }
        out
    }

    pub fn ospf_blocks(&self) -> impl Iterator<Item = (&Option<Ip>, &Vec<OspfLine>)> {
        self.blocks.iter().filter_map(|b| match b {
            Block::Ospf { router_id, body, .. } => Some((router_id, body)),
            _ => None,
        })
    }
}

pub fn cisco_config() -> impl Strategy<Value = CiscoConfig> {
    (proptest::option::of(word()), prop::collection::vec(block(), 1..10), 1..3usize)
        .prop_flat_map(|(host, rest, indent)| {
            let mut blocks: Vec<Block> = host.map(Block::Hostname).into_iter().collect();
            blocks.extend(rest);
            let n = blocks.len();
            (Just(blocks), prop::collection::vec(any::<bool>(), n), Just(indent))
        })
        .prop_map(|(blocks, bangs, indent)| CiscoConfig { blocks, bangs, indent })
}

/// A generated Yamaha configuration.
pub fn yamaha_config() -> impl Strategy<Value = String> {
    let line = prop_oneof![
        (1..4u32, ip(), 0..=32u32).prop_map(|(l, a, p)| format!("ip lan{l} address {a}/{p}")),
        (ip(), 0..=32u32, ip()).prop_map(|(a, p, g)| format!("ip route {a}/{p} gateway {g}")),
        ip().prop_map(|g| format!("ip route default gateway {g}")),
        (1..4u32, 1..9u32, 1..4095u32).prop_map(|(l, i, v)| format!("vlan lan{l}/{i} 802.1q vid={v}")),
    ];
    (prop::collection::vec(line, 1..12), any::<bool>()).prop_map(|(lines, comment)| {
        let head = if comment { "# RTX1210 Rev.14.01.38\n" } else { "" };
        head.to_owned() + &lines.iter().map(|l| format!("{l}\n")).collect::<String>()
    })
}
