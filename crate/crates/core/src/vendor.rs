use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Device vendor. Selects the lexer/parser rule set, the mapping table
/// and the command templates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Vendor {
    Cisco,
    Yamaha,
}

impl Vendor {
    pub const ALL: [Vendor; 2] = [Vendor::Cisco, Vendor::Yamaha];

    pub fn as_str(self) -> &'static str {
        match self {
            Vendor::Cisco => "cisco",
            Vendor::Yamaha => "yamaha",
        }
    }
}

impl fmt::Display for Vendor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Vendor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cisco" => Ok(Vendor::Cisco),
            "yamaha" => Ok(Vendor::Yamaha),
            other => Err(format!("unknown vendor '{other}' (expected cisco or yamaha)")),
        }
    }
}
