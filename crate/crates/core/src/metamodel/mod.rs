//! The network configuration metamodel (schema) and the device
//! configuration model (instances) it types.

mod builtin;
mod model;
mod schema;
mod validate;

pub use builtin::{builtin_metamodel, CONFIG_GROUP};
pub use model::{DeviceModel, GroupValue, Link, ModelFormatError};
pub use schema::{Association, GroupDef, ItemDef, Metamodel, MetamodelError, Multiplicity, ValueKind};
pub use validate::{validate_model, Violation, ViolationCode};
