//! Round-trip conversion between network device configurations and a
//! UML-style device configuration model.
//!
//! The pipeline has three stages:
//!
//! 1. [`parser`] turns `show running-config` / `show version` /
//!    `show vlan-switch` output (Cisco) or `show config` output (Yamaha)
//!    into a [`ParseTree`].
//! 2. [`extract`] walks the tree depth-first and, driven by a
//!    [`MappingTable`], builds a [`DeviceModel`]: one group value per
//!    subtree root, slot values from presence-conditioned regex rewrites,
//!    and links from subtree containment.
//! 3. [`generate`] turns a model back into device configuration commands.
//!
//! ```
//! use confmodel::{Pipeline, Vendor};
//!
//! let text = "hostname Router\n!\ninterface FastEthernet3\n shutdown\n";
//! let pipeline = Pipeline::builtin();
//! let model = pipeline.extract_text(text, Vendor::Cisco).unwrap();
//! assert_eq!(model.group_value("Hn1").unwrap().slot("name"), Some("Router"));
//! ```

pub mod extract;
pub mod fixtures;
pub mod generate;
pub mod mapping;
pub mod metamodel;
pub mod parser;

mod pipeline;
mod util;
mod vendor;

pub use extract::{extract, model_stats, ExtractError, ModelStats};
pub use generate::{generate, roundtrip_check, CommandScript, GenerateError, RoundTrip};
pub use mapping::{MappingRule, MappingTable, Presence};
pub use metamodel::{
    builtin_metamodel, validate_model, DeviceModel, GroupDef, GroupValue, ItemDef, Link, Metamodel, ValueKind,
    Violation, ViolationCode,
};
pub use parser::{parse, parse_file, parse_text, tokenize, Node, ParseTree, RuleNode, SyntaxError, Token, TokenKind};
pub use pipeline::{DeviceExtraction, Pipeline, PipelineError};
pub use vendor::Vendor;
