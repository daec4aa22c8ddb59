use std::sync::OnceLock;

use super::schema::{Association, GroupDef, ItemDef, Metamodel, Multiplicity, ValueKind};
use crate::Vendor;

use ValueKind::{Boolean, Integer, IpAddress, IpMask, String as Str};

/// Name of the root group; exactly one value of it exists per model.
pub const CONFIG_GROUP: &str = "Config";

/// Top-level setting groups, each associated with `Config`.
const SETTING_GROUPS: [&str; 7] = [
    "Hostname",
    "EthernetSetting",
    "VlanSetting",
    "StaticRouteSetting",
    "StpSetting",
    "OspfSetting",
    "AccessListSetting",
];

fn items(spec: &[(&str, ValueKind)]) -> Vec<ItemDef> {
    spec.iter().map(|&(n, k)| ItemDef::new(n, k)).collect()
}

fn concrete(name: &str, vendor: Option<Vendor>, spec: &[(&str, ValueKind)]) -> GroupDef {
    GroupDef { name: name.into(), items: items(spec), is_abstract: false, vendor }
}

fn abstract_group(name: &str, spec: &[(&str, ValueKind)]) -> GroupDef {
    GroupDef { name: name.into(), items: items(spec), is_abstract: true, vendor: None }
}

fn build() -> Metamodel {
    let cisco = Some(Vendor::Cisco);
    let yamaha = Some(Vendor::Yamaha);

    let mut config = concrete(CONFIG_GROUP, None, &[]);
    config.items.push(ItemDef::new("deviceModel", Str).read_only());

    let groups = vec![
        config,
        concrete("Hostname", None, &[("name", Str)]),
        // interfaces
        abstract_group("EthernetSetting", &[("port", Integer), ("ipAddress", IpAddress), ("subnetMask", IpMask)]),
        concrete(
            "CiscoEthernetSetting",
            cisco,
            &[
                ("stack", Integer),
                ("slot", Integer),
                ("shutdown", Boolean),
                ("mode", Str),
                ("accessVlan", Integer),
                ("accessListNumber", Integer),
                ("accessListDirection", Str),
            ],
        ),
        concrete("YamahaEthernetSetting", yamaha, &[]),
        abstract_group("VlanSetting", &[("vlanNum", Integer), ("ipAddress", IpAddress), ("subnetMask", IpMask)]),
        concrete(
            "CiscoVlanSetting",
            cisco,
            &[("vlanName", Str), ("shutdown", Boolean), ("accessListNumber", Integer), ("accessListDirection", Str)],
        ),
        concrete("YamahaVlanSetting", yamaha, &[("lanInterface", Integer), ("vlanInterface", Integer)]),
        // routing
        abstract_group("StaticRouteSetting", &[("destination", IpAddress), ("mask", IpMask), ("nextHop", IpAddress)]),
        concrete("CiscoStaticRouteSetting", cisco, &[("distance", Integer)]),
        concrete("YamahaStaticRouteSetting", yamaha, &[]),
        abstract_group("StpSetting", &[("vlanNum", Integer), ("priority", Integer)]),
        concrete("CiscoStpSetting", cisco, &[("stpMode", Str)]),
        abstract_group("OspfSetting", &[("routerId", IpAddress)]),
        concrete("CiscoOspfSetting", cisco, &[("processId", Integer)]),
        concrete("OspfNetwork", None, &[("address", IpAddress), ("wildcard", IpMask), ("area", Integer)]),
        concrete("OspfVirtualLink", None, &[("area", Integer), ("routerId", IpAddress)]),
        // filters
        abstract_group(
            "AccessListSetting",
            &[
                ("number", Integer),
                ("action", Str),
                ("protocol", Str),
                ("sourceAddress", IpAddress),
                ("destinationAddress", IpAddress),
                ("portNumber", Integer),
            ],
        ),
        concrete(
            "CiscoAccessList",
            cisco,
            &[("sourceWildcard", IpMask), ("destinationWildcard", IpMask), ("portOperator", Str), ("direction", Str)],
        ),
    ];

    let generalizations = [
        ("CiscoEthernetSetting", "EthernetSetting"),
        ("YamahaEthernetSetting", "EthernetSetting"),
        ("CiscoVlanSetting", "VlanSetting"),
        ("YamahaVlanSetting", "VlanSetting"),
        ("CiscoStaticRouteSetting", "StaticRouteSetting"),
        ("YamahaStaticRouteSetting", "StaticRouteSetting"),
        ("CiscoStpSetting", "StpSetting"),
        ("CiscoOspfSetting", "OspfSetting"),
        ("CiscoAccessList", "AccessListSetting"),
    ]
    .map(|(a, b)| (a.to_owned(), b.to_owned()))
    .to_vec();

    let assoc = |a: &str, b: &str| Association {
        a: a.into(),
        b: b.into(),
        multiplicity_a: Multiplicity::ONE,
        multiplicity_b: Multiplicity::ZERO_OR_MORE,
    };
    let mut associations: Vec<_> = SETTING_GROUPS.iter().map(|g| assoc(CONFIG_GROUP, g)).collect();
    associations.push(assoc("OspfSetting", "OspfNetwork"));
    associations.push(assoc("OspfSetting", "OspfVirtualLink"));

    Metamodel::new(groups, generalizations, associations).expect("builtin metamodel is well-formed")
}

/// The fixed metamodel covering hostname, Ethernet, VLAN, VLAN interface,
/// static route, STP, OSPF and ACL settings for Cisco and Yamaha.
pub fn builtin_metamodel() -> &'static Metamodel {
    static MM: OnceLock<Metamodel> = OnceLock::new();
    MM.get_or_init(build)
}
