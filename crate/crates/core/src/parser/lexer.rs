use thiserror::Error;

use super::token::{Token, TokenKind};
use crate::Vendor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: no lexer rule matches '{text}'")]
pub struct LexError {
    pub line: usize,
    pub column: usize,
    pub text: String,
}

#[derive(Debug, Clone, Copy)]
enum Pattern {
    Words(&'static [&'static str]),
    /// `NUM '.' NUM '.' NUM '.' NUM`
    DottedQuad,
    /// `[0-9]+`
    Digits,
    /// `[a-zA-Z]+`
    Letters,
}

impl Pattern {
    /// Byte length of the match at the start of `input`, if any.
    fn match_len(self, input: &str) -> Option<usize> {
        let digits = |s: &str| s.bytes().take_while(u8::is_ascii_digit).count();
        let n = match self {
            Pattern::Words(words) => words.iter().filter(|w| input.starts_with(**w)).map(|w| w.len()).max()?,
            Pattern::Digits => digits(input),
            Pattern::Letters => input.bytes().take_while(u8::is_ascii_alphabetic).count(),
            Pattern::DottedQuad => {
                let mut at = 0;
                for part in 0..4 {
                    if part > 0 {
                        if input.as_bytes().get(at) != Some(&b'.') {
                            return None;
                        }
                        at += 1;
                    }
                    let d = digits(&input[at..]);
                    if d == 0 {
                        return None;
                    }
                    at += d;
                }
                at
            }
        };
        (n > 0).then_some(n)
    }
}

type Rule = (TokenKind, Pattern);

use Pattern::Words;
use TokenKind as K;

/// Cisco keyword rules, in declaration order. Earlier rules win ties.
const CISCO_KEYWORDS: &[Rule] = &[
    (K::Interface, Words(&["interface"])),
    (
        K::Ethernet,
        Words(&[
            "FastEthernet",
            "GigabitEthernet",
            "TenGigabitEthernet",
            "fastethernet",
            "gigabitethernet",
            "tengigabitethernet",
        ]),
    ),
    (K::Hostname, Words(&["hostname"])),
    (K::Ip, Words(&["ip"])),
    (K::Address, Words(&["address"])),
    (K::Shutdown, Words(&["shutdown"])),
    (K::Switchport, Words(&["switchport"])),
    (K::No, Words(&["no"])),
    (K::ModeSetting, Words(&["access", "trunk", "dynamic auto", "dynamic desirable"])),
    (K::IfVlan, Words(&["Vlan"])),
    (K::Vlan, Words(&["vlan"])),
    (K::Mode, Words(&["mode"])),
    (K::Name, Words(&["name"])),
    (K::Route, Words(&["route"])),
    (K::SpanningTree, Words(&["spanning-tree"])),
    (K::Priority, Words(&["priority"])),
    (K::StpModeSetting, Words(&["pvst", "rapid-pvst", "mst"])),
    (K::Router, Words(&["router"])),
    (K::Ospf, Words(&["ospf"])),
    (K::RouterId, Words(&["router-id"])),
    (K::Network, Words(&["network"])),
    (K::Area, Words(&["area"])),
    (K::VirtualLink, Words(&["virtual-link"])),
    (K::AccessList, Words(&["access-list"])),
    (K::AccessGroup, Words(&["access-group"])),
    (K::Direction, Words(&["in", "out"])),
    (K::AclAction, Words(&["permit", "deny"])),
    (K::Protocol, Words(&["tcp", "udp", "icmp"])),
    (K::PortOperator, Words(&["eq", "neq", "lt", "gt"])),
    (K::Slash, Words(&["/"])),
];

/// Extra rules for rows of `show vlan-switch`.
const VLAN_SWITCH_ROW: &[Rule] =
    &[(K::VlanStatus, Words(&["active", "act/unsup", "suspended"])), (K::Comma, Words(&[","]))];

const YAMAHA_KEYWORDS: &[Rule] = &[
    (K::Ip, Words(&["ip"])),
    (K::Address, Words(&["address"])),
    (K::Route, Words(&["route"])),
    (K::Vlan, Words(&["vlan"])),
    (K::Lan, Words(&["lan"])),
    (K::Gateway, Words(&["gateway"])),
    (K::Default, Words(&["default"])),
    (K::Dot1q, Words(&["802.1q"])),
    (K::Vid, Words(&["vid"])),
    (K::Equals, Words(&["="])),
    (K::Slash, Words(&["/"])),
];

const GENERIC: &[Rule] =
    &[(K::IpAddressNum, Pattern::DottedQuad), (K::Num, Pattern::Digits), (K::Char, Pattern::Letters)];

/// Tokenizes one line with longest-match; on equal length the rule from
/// the earlier table (then earlier within the table) wins.
fn scan_line(line: &str, line_no: usize, tables: &[&[Rule]], out: &mut Vec<Token>) -> Result<(), LexError> {
    let mut pos = 0;
    while pos < line.len() {
        let rest = &line[pos..];
        let ws = rest.len() - rest.trim_start().len();
        if ws > 0 {
            pos += ws;
            continue;
        }
        let mut best: Option<(TokenKind, usize)> = None;
        for &(kind, pattern) in tables.iter().copied().flatten() {
            if let Some(n) = pattern.match_len(rest) {
                if best.is_none_or(|(_, b)| n > b) {
                    best = Some((kind, n));
                }
            }
        }
        let column = line[..pos].chars().count() + 1;
        let Some((kind, n)) = best else {
            let bad: String = rest.chars().take_while(|c| !c.is_whitespace()).collect();
            return Err(LexError { line: line_no, column, text: bad });
        };
        out.push(Token::new(kind, &rest[..n], line_no, column));
        pos += n;
    }
    Ok(())
}

fn indent_columns(line: &str) -> usize {
    line[..line.len() - line.trim_start().len()].chars().count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    RunningConfig,
    Version,
    VlanSwitch { second_table: bool },
    Unsupported,
}

/// Recognizes an echoed prompt such as `campus1#show version` and returns
/// the section it introduces.
fn show_command(trimmed: &str) -> Option<Section> {
    let (prompt, command) = trimmed.split_once('#')?;
    if prompt.is_empty() || prompt.contains(char::is_whitespace) {
        return None;
    }
    let mut words = command.split_whitespace();
    if !matches!(words.next(), Some("show" | "sh")) {
        return None;
    }
    let section = match words.next().unwrap_or("") {
        w if w.starts_with("run") => Section::RunningConfig,
        w if w.starts_with("ver") => Section::Version,
        w if w.starts_with("vlan-sw") => Section::VlanSwitch { second_table: false },
        _ => Section::Unsupported,
    };
    Some(section)
}

/// `Cisco 1812-J (MPC8500) processor (revision 0x400) with ...`
fn version_line(trimmed: &str, line_no: usize, indent: usize, out: &mut Vec<Token>) -> bool {
    let Some(after) = trimmed.strip_prefix("Cisco") else { return false };
    if !after.starts_with(char::is_whitespace) {
        return false;
    }
    let model_start = trimmed.len() - after.trim_start().len();
    let model_len = trimmed[model_start..].find(char::is_whitespace).unwrap_or(trimmed.len() - model_start);
    let detail_part = &trimmed[model_start + model_len..];
    let detail_start = trimmed.len() - detail_part.trim_start().len();
    let detail = trimmed[detail_start..].trim_end();
    if model_len == 0 || !detail.contains("processor") {
        return false;
    }
    let col = |byte: usize| indent + trimmed[..byte].chars().count() + 1;
    out.push(Token::new(K::Cisco, "Cisco", line_no, col(0)));
    out.push(Token::new(K::DeviceModel, &trimmed[model_start..model_start + model_len], line_no, col(model_start)));
    out.push(Token::new(K::VersionDetail, detail, line_no, col(detail_start)));
    true
}

fn is_default_vlan(id: &str) -> bool {
    matches!(id.parse::<u32>(), Ok(1 | 1002..=1005))
}

fn tokenize_cisco(text: &str) -> Result<Vec<Token>, LexError> {
    let mut out = Vec::new();
    let mut section = Section::RunningConfig;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('!') {
            continue;
        }
        if let Some(next) = show_command(trimmed) {
            section = next;
            let column = indent_columns(line) + 1;
            out.push(Token::new(K::ShowCommand, trimmed, line_no, column));
            continue;
        }
        match &mut section {
            Section::RunningConfig => {
                scan_line(line, line_no, &[CISCO_KEYWORDS, GENERIC], &mut out)?;
            }
            Section::Version => {
                // every other line of show version output is informational
                version_line(trimmed, line_no, indent_columns(line), &mut out);
            }
            Section::VlanSwitch { second_table } => {
                if trimmed.starts_with("VLAN Type") {
                    *second_table = true;
                }
                let first = trimmed.split_whitespace().next().unwrap_or("");
                let is_row = !*second_table
                    && !line.starts_with(char::is_whitespace)
                    && first.bytes().all(|b| b.is_ascii_digit())
                    && !is_default_vlan(first);
                if is_row {
                    scan_line(line, line_no, &[VLAN_SWITCH_ROW, CISCO_KEYWORDS, GENERIC], &mut out)?;
                }
            }
            Section::Unsupported => {}
        }
    }
    Ok(out)
}

fn tokenize_yamaha(text: &str) -> Result<Vec<Token>, LexError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        scan_line(line, i + 1, &[YAMAHA_KEYWORDS, GENERIC], &mut out)?;
    }
    Ok(out)
}

/// Splits configuration text into tokens. Comment lines (`!` for Cisco,
/// `#` for Yamaha) and blank lines are skipped; newlines separate tokens.
///
/// Cisco input may concatenate several `show` outputs, each introduced by
/// its echoed prompt (`Router#show version`). Only the processor line of
/// `show version` and the user VLAN rows of `show vlan-switch` are
/// tokenized; the rest of those outputs is skipped.
pub fn tokenize(text: &str, vendor: Vendor) -> Result<Vec<Token>, LexError> {
    match vendor {
        Vendor::Cisco => tokenize_cisco(text),
        Vendor::Yamaha => tokenize_yamaha(text),
    }
}
