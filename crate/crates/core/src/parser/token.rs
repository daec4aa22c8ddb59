use std::fmt;

macro_rules! token_kinds {
    ($($variant:ident => $name:literal,)*) => {
        /// Token kinds of both vendors' lexers.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum TokenKind {
            $($variant,)*
        }

        impl TokenKind {
            pub const ALL: &'static [TokenKind] = &[$(TokenKind::$variant,)*];

            /// Upper-case rule name, as used in grammar files and mapping tables.
            pub fn name(self) -> &'static str {
                match self {
                    $(TokenKind::$variant => $name,)*
                }
            }

            pub fn from_name(name: &str) -> Option<TokenKind> {
                match name {
                    $($name => Some(TokenKind::$variant),)*
                    _ => None,
                }
            }
        }
    };
}

token_kinds! {
    Interface => "INTERFACE",
    Ethernet => "ETHERNET",
    Hostname => "HOSTNAME",
    Ip => "IP",
    Address => "ADDRESS",
    Shutdown => "SHUTDOWN",
    Switchport => "SWITCHPORT",
    No => "NO",
    ModeSetting => "MODE_SETTING",
    IfVlan => "IF_VLAN",
    Vlan => "VLAN",
    Mode => "MODE",
    Name => "NAME",
    Route => "ROUTE",
    SpanningTree => "SPANNING_TREE",
    Priority => "PRIORITY",
    StpModeSetting => "STP_MODE_SETTING",
    Router => "ROUTER",
    Ospf => "OSPF",
    RouterId => "ROUTER_ID",
    Network => "NETWORK",
    Area => "AREA",
    VirtualLink => "VIRTUAL_LINK",
    AccessList => "ACCESS_LIST",
    AccessGroup => "ACCESS_GROUP",
    Direction => "DIRECTION",
    AclAction => "ACL_ACTION",
    Protocol => "PROTOCOL",
    PortOperator => "PORT_OPERATOR",
    ShowCommand => "SHOW_COMMAND",
    Cisco => "CISCO",
    DeviceModel => "DEVICE_MODEL",
    VersionDetail => "VERSION_DETAIL",
    VlanStatus => "VLAN_STATUS",
    Comma => "COMMA",
    Lan => "LAN",
    Gateway => "GATEWAY",
    Default => "DEFAULT",
    Dot1q => "DOT1Q",
    Vid => "VID",
    Equals => "EQUALS",
    Slash => "SLASH",
    IpAddressNum => "IP_ADDRESS_NUM",
    Num => "NUM",
    Char => "CHAR",
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A lexed token with its 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub line: usize,
    pub column: usize,
}

impl Token {
    pub fn new(kind: TokenKind, text: impl Into<String>, line: usize, column: usize) -> Self {
        Token { kind, text: text.into(), line, column }
    }

    /// Column just past the last character of the token.
    pub fn end_column(&self) -> usize {
        self.column + self.text.chars().count()
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} '{}'", self.kind, self.text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for &k in TokenKind::ALL {
            assert_eq!(TokenKind::from_name(k.name()), Some(k));
        }
        assert_eq!(TokenKind::from_name("any"), None);
    }
}
