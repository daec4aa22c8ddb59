//! Extraction, generation and mapping-table properties over random
//! grammar-conforming configurations.

mod support;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use confmodel::generate::{generate_with, Templates};
use confmodel::{
    builtin_metamodel, extract, generate, parse_text, roundtrip_check, tokenize, DeviceModel, MappingTable, Token,
    Vendor,
};
use support::{cisco_config, yamaha_config, CiscoConfig, OspfLine};

fn kinds(tokens: &[Token]) -> Vec<(String, String)> {
    tokens.iter().map(|t| (t.kind.name().to_owned(), t.text.clone())).collect()
}

fn extract_text(text: &str, vendor: Vendor) -> DeviceModel {
    let tree = parse_text(text, vendor).unwrap_or_else(|e| panic!("{e}\n{text}"));
    extract(&tree, MappingTable::builtin(vendor), builtin_metamodel()).unwrap_or_else(|e| panic!("{e}\n{text}"))
}

fn values_in_order<'a>(m: &'a DeviceModel, group: &'a str) -> Vec<&'a confmodel::GroupValue> {
    let mut v: Vec<_> = m.values_of(group).collect();
    v.sort_by_key(|g| g.name[group_prefix_len(&g.name)..].parse::<usize>().unwrap());
    v
}

fn group_prefix_len(name: &str) -> usize {
    name.trim_end_matches(|c: char| c.is_ascii_digit()).len()
}

/// Every text a slot may hold verbatim: concatenations of adjacent tokens
/// on one line.
fn token_runs(tokens: &[Token]) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for (i, t) in tokens.iter().enumerate() {
        let mut s = String::new();
        for u in tokens[i..].iter().take_while(|u| u.line == t.line) {
            s += &u.text;
            out.insert(s.clone());
        }
    }
    out
}

/// Tokens of the script lines owned by each group value, split at
/// blanks and slashes.
fn owner_tokens(script: &confmodel::CommandScript) -> BTreeMap<String, Vec<String>> {
    let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for l in &script.lines {
        if let Some(o) = &l.owner {
            out.entry(o.clone())
                .or_default()
                .extend(l.text.split([' ', '/']).filter(|t| !t.is_empty()).map(str::to_owned));
        }
    }
    out
}

fn is_subsequence(small: &[String], big: &[String]) -> bool {
    let mut it = big.iter();
    small.iter().all(|s| it.any(|b| b == s))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn leaves_retokenize(cfg in cisco_config()) {
        let text = cfg.text();
        let tokens = tokenize(&text, Vendor::Cisco).unwrap();
        let tree = parse_text(&text, Vendor::Cisco).unwrap();
        let leaves: Vec<Token> = tree.leaves().into_iter().cloned().collect();
        prop_assert_eq!(kinds(&tokens), kinds(&leaves));
        let again = tokenize(&tree.print_leaves(), Vendor::Cisco).unwrap();
        prop_assert_eq!(kinds(&again), kinds(&leaves));
    }

    #[test]
    fn yamaha_leaves_retokenize(text in yamaha_config()) {
        let tree = parse_text(&text, Vendor::Yamaha).unwrap();
        let leaves: Vec<Token> = tree.leaves().into_iter().cloned().collect();
        let again = tokenize(&tree.print_leaves(), Vendor::Yamaha).unwrap();
        prop_assert_eq!(kinds(&again), kinds(&leaves));
    }

    #[test]
    fn shutdown_fires_exactly_once(cfg in cisco_config()) {
        let m = extract_text(&cfg.text(), Vendor::Cisco);
        for group in ["CiscoEthernetSetting", "CiscoVlanSetting"] {
            let expected: Vec<Option<bool>> =
                cfg.blocks.iter().filter_map(|b| b.opened()).filter(|(g, _)| *g == group).map(|(_, s)| s).collect();
            let values = values_in_order(&m, group);
            prop_assert_eq!(values.len(), expected.len());
            for (gv, shut) in values.iter().zip(expected) {
                prop_assert_eq!(gv.slot("shutdown"), shut.map(|b| if b { "true" } else { "false" }), "{}", gv.name);
            }
        }
    }

    #[test]
    fn links_follow_associations(cfg in cisco_config()) {
        let mm = builtin_metamodel();
        let m = extract_text(&cfg.text(), Vendor::Cisco);
        prop_assert!(confmodel::validate_model(&m, mm).is_empty());
        for l in &m.links {
            let a = &m.group_value(&l.0).unwrap().group;
            let b = &m.group_value(&l.1).unwrap().group;
            prop_assert!(mm.association_between(a, b).is_some(), "{} -- {}", a, b);
        }
    }

    #[test]
    fn extraction_is_idempotent(cfg in cisco_config()) {
        let tree = parse_text(&cfg.text(), Vendor::Cisco).unwrap();
        let table = MappingTable::builtin(Vendor::Cisco);
        let mm = builtin_metamodel();
        prop_assert_eq!(extract(&tree, table, mm).unwrap(), extract(&tree, table, mm).unwrap());
    }

    #[test]
    fn ospf_children_link_to_their_block(cfg in cisco_config()) {
        let m = extract_text(&cfg.text(), Vendor::Cisco);
        let processes = values_in_order(&m, "CiscoOspfSetting");
        let blocks: Vec<_> = cfg.ospf_blocks().collect();
        prop_assert_eq!(processes.len(), blocks.len());
        for (cos, (router_id, body)) in processes.iter().zip(blocks) {
            prop_assert_eq!(cos.slot("routerId"), router_id.as_deref());
            let mut want_net = Vec::new();
            let mut want_vl = Vec::new();
            for l in body {
                match l {
                    OspfLine::Network(a, w, area) => want_net.push(vec![a.clone(), w.clone(), area.to_string()]),
                    OspfLine::VirtualLink(area, r) => want_vl.push(vec![area.to_string(), r.clone()]),
                }
            }
            let mut got_net = Vec::new();
            let mut got_vl = Vec::new();
            for n in m.neighbors(&cos.name).filter_map(|n| m.group_value(n)) {
                let s = |i: &str| n.slot(i).unwrap_or_default().to_owned();
                match n.group.as_str() {
                    "OspfNetwork" => got_net.push(vec![s("address"), s("wildcard"), s("area")]),
                    "OspfVirtualLink" => got_vl.push(vec![s("area"), s("routerId")]),
                    other => prop_assert_eq!(other, "Config"),
                }
            }
            want_net.sort();
            got_net.sort();
            want_vl.sort();
            got_vl.sort();
            prop_assert_eq!(got_net, want_net);
            prop_assert_eq!(got_vl, want_vl);
        }
        // children never hang off Config directly
        let config = m.config().unwrap();
        for n in m.neighbors(&config.name).filter_map(|n| m.group_value(n)) {
            prop_assert!(n.group != "OspfNetwork" && n.group != "OspfVirtualLink");
        }
    }

    #[test]
    fn slots_come_from_tokens_or_rewrites(cfg in cisco_config()) {
        let text = cfg.text();
        let tokens = tokenize(&text, Vendor::Cisco).unwrap();
        let runs = token_runs(&tokens);
        let m = extract_text(&text, Vendor::Cisco);
        let table = MappingTable::builtin(Vendor::Cisco);
        for gv in &m.group_values {
            for (item, value) in &gv.slots {
                let rewritten = table
                    .rules()
                    .iter()
                    .filter(|r| r.group == gv.group && &r.item == item && !r.replaced.is_empty())
                    .any(|r| r.rewrite("") == *value || runs.iter().any(|t| r.rewrite(t) == *value));
                prop_assert!(runs.contains(value) || rewritten, "{}.{} = {:?}", gv.name, item, value);
            }
        }
    }

    #[test]
    fn generation_is_deterministic(cfg in cisco_config()) {
        let mm = builtin_metamodel();
        let m = extract_text(&cfg.text(), Vendor::Cisco);
        let mut shuffled = m.clone();
        shuffled.group_values.reverse();
        shuffled.links.reverse();
        for l in &mut shuffled.links {
            *l = confmodel::Link(l.1.clone(), l.0.clone());
        }
        let a = generate(&m, mm).unwrap();
        prop_assert_eq!(&a, &generate(&m, mm).unwrap());
        prop_assert_eq!(&a, &generate(&shuffled, mm).unwrap());
        prop_assert!(a.check_mode_balance().is_ok());
    }

    #[test]
    fn omitting_optional_slots_only_drops_tokens(cfg in cisco_config()) {
        let mm = builtin_metamodel();
        let t = Templates::builtin(Vendor::Cisco, mm);
        let m = extract_text(&cfg.text(), Vendor::Cisco);
        let full = owner_tokens(&generate_with(&m, mm, &t).unwrap());
        for gv in &m.group_values {
            for item in gv.slots.keys() {
                if t.required_items(&gv.group).contains(item) {
                    continue;
                }
                let mut reduced = m.clone();
                reduced.group_value_mut(&gv.name).unwrap().slots.remove(item);
                let script = generate_with(&reduced, mm, &t);
                prop_assert!(script.is_ok(), "{} without {}: {:?}", gv.name, item, script);
                let script = script.unwrap();
                prop_assert!(script.check_mode_balance().is_ok());
                let less = owner_tokens(&script);
                let empty = Vec::new();
                let (small, big) = (less.get(&gv.name).unwrap_or(&empty), full.get(&gv.name).unwrap_or(&empty));
                prop_assert!(is_subsequence(small, big), "{} without {}: {:?} vs {:?}", gv.name, item, small, big);
            }
        }
    }

    #[test]
    fn random_configs_round_trip(cfg in cisco_config()) {
        let text = cfg.text();
        let rt = roundtrip_check(&text, Vendor::Cisco, MappingTable::builtin(Vendor::Cisco), builtin_metamodel()).unwrap();
        prop_assert!(rt.equal, "{:?}\n{}\n---\n{}", rt.diff, text, rt.printed);
    }

    #[test]
    fn random_yamaha_configs_round_trip(text in yamaha_config()) {
        let rt = roundtrip_check(&text, Vendor::Yamaha, MappingTable::builtin(Vendor::Yamaha), builtin_metamodel()).unwrap();
        prop_assert!(rt.equal, "{:?}\n{}\n---\n{}", rt.diff, text, rt.printed);
    }

    #[test]
    fn validator_catches_single_breaches(cfg in cisco_config(), pick in any::<prop::sample::Index>()) {
        use confmodel::{Link, ViolationCode};

        let mm = builtin_metamodel();
        let m = extract_text(&cfg.text(), Vendor::Cisco);
        let config = m.config().unwrap().name.clone();
        let victim = m.group_values[pick.index(m.group_values.len())].name.clone();
        let mut mutants = Vec::new();

        let mut dup = m.clone();
        dup.group_values.push(confmodel::GroupValue::new(&victim, "Hostname"));
        mutants.push((ViolationCode::DuplicateGroupValueName, dup));
        let mut group = m.clone();
        group.group_value_mut(&victim).unwrap().group = "NoSuchGroup".into();
        mutants.push((ViolationCode::UnknownGroup, group));
        let mut item = m.clone();
        item.group_value_mut(&victim).unwrap().slots.insert("noSuchItem".into(), "1".into());
        mutants.push((ViolationCode::UnknownItem, item));
        let mut dangling = m.clone();
        dangling.links.push(Link::new(&victim, "Ghost1"));
        mutants.push((ViolationCode::DanglingLink, dangling));
        let mut illegal = m.clone();
        illegal.links.push(Link::new(&config, &config));
        mutants.push((ViolationCode::IllegalLink, illegal));

        for (code, mutant) in mutants {
            let found = confmodel::validate_model(&mutant, mm);
            prop_assert!(found.iter().any(|v| v.code == code), "{:?} not reported: {:?}", code, found);
        }
    }

    #[test]
    fn mapping_tsv_round_trips(keep in prop::collection::vec(any::<bool>(), 64), vendor in prop::sample::select(&Vendor::ALL[..])) {
        let mm = builtin_metamodel();
        let builtin = MappingTable::builtin(vendor);
        let mut rules: Vec<_> = builtin.rules().iter().zip(keep.iter().cycle()).filter(|(_, k)| **k).map(|(r, _)| r.clone()).collect();
        // an Absent row needs its Present twin
        let present: BTreeSet<_> = rules
            .iter()
            .filter(|r| r.presence == confmodel::Presence::Present)
            .map(|r| (r.subtree_root.clone(), r.parent.clone(), r.target.clone()))
            .collect();
        rules.retain(|r| {
            r.presence == confmodel::Presence::Present
                || present.contains(&(r.subtree_root.clone(), r.parent.clone(), r.target.clone()))
        });
        let table = MappingTable::new(vendor, rules, mm).unwrap();
        let back = MappingTable::parse(&table.to_tsv(), vendor, mm).unwrap();
        prop_assert_eq!(back.rules(), table.rules());
    }
}

#[test]
fn generator_covers_every_block_kind() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;

    let mut runner = TestRunner::deterministic();
    let mut seen = BTreeSet::new();
    for _ in 0..200 {
        let cfg: CiscoConfig = cisco_config().new_tree(&mut runner).unwrap().current();
        for b in &cfg.blocks {
            seen.insert(format!("{b:?}").split([' ', '(']).next().unwrap().to_owned());
        }
    }
    assert_eq!(seen.len(), 9, "{seen:?}");
}
