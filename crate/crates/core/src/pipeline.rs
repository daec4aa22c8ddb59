use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::extract::{extract, ExtractError};
use crate::generate::{roundtrip_model, RoundTrip, RoundTripError, Templates};
use crate::mapping::MappingTable;
use crate::metamodel::{builtin_metamodel, DeviceModel, Metamodel};
use crate::parser::{parse, tokenize, LexError, ParseError, ParseTree};
use crate::Vendor;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("lex error at {0}")]
    Lex(#[from] LexError),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("extraction failed: {0}")]
    Extract(#[from] ExtractError),
}

impl PipelineError {
    /// 1-based source position of the error, when it has one.
    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            PipelineError::Io { .. } | PipelineError::Extract(ExtractError::Invalid(_)) => None,
            PipelineError::Lex(e) => Some((e.line, e.column)),
            PipelineError::Parse(e) => Some((e.line, e.column)),
            PipelineError::Extract(
                ExtractError::SlotConflict { line, column, .. }
                | ExtractError::NoOpenGroup { line, column, .. }
                | ExtractError::NestedRoot { line, column, .. },
            ) => Some((*line, *column)),
            PipelineError::Extract(ExtractError::VendorMismatch { .. }) => None,
        }
    }
}

/// One device extracted by [`Pipeline::extract_multi`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviceExtraction {
    /// The `Hostname` name slot, or the file stem when there is none.
    pub device: String,
    pub source: PathBuf,
    pub model: DeviceModel,
}

/// Parser, mapping tables and metamodel wired together.
#[derive(Debug, Clone)]
pub struct Pipeline {
    mm: &'static Metamodel,
    cisco: MappingTable,
    yamaha: MappingTable,
}

impl Pipeline {
    /// The builtin metamodel and mapping tables.
    pub fn builtin() -> Pipeline {
        Pipeline {
            mm: builtin_metamodel(),
            cisco: MappingTable::builtin(Vendor::Cisco).clone(),
            yamaha: MappingTable::builtin(Vendor::Yamaha).clone(),
        }
    }

    /// Replaces the mapping table for `table.vendor`.
    pub fn with_mapping(mut self, table: MappingTable) -> Pipeline {
        match table.vendor {
            Vendor::Cisco => self.cisco = table,
            Vendor::Yamaha => self.yamaha = table,
        }
        self
    }

    pub fn metamodel(&self) -> &'static Metamodel {
        self.mm
    }

    pub fn table(&self, vendor: Vendor) -> &MappingTable {
        match vendor {
            Vendor::Cisco => &self.cisco,
            Vendor::Yamaha => &self.yamaha,
        }
    }

    pub fn parse_text(&self, text: &str, vendor: Vendor) -> Result<ParseTree, PipelineError> {
        let tokens = tokenize(text, vendor)?;
        Ok(parse(&tokens, vendor)?)
    }

    pub fn extract_text(&self, text: &str, vendor: Vendor) -> Result<DeviceModel, PipelineError> {
        let tree = self.parse_text(text, vendor)?;
        Ok(extract(&tree, self.table(vendor), self.mm)?)
    }

    pub fn extract_file(&self, path: &Path, vendor: Vendor) -> Result<DeviceModel, PipelineError> {
        self.extract_text(&read(path)?, vendor)
    }

    /// Extracts every input on its own thread. Results come back in input
    /// order; a failing file does not stop the others.
    pub fn extract_multi(&self, inputs: &[(PathBuf, Vendor)]) -> Vec<Result<DeviceExtraction, PipelineError>> {
        std::thread::scope(|s| {
            let handles: Vec<_> = inputs
                .iter()
                .map(|(path, vendor)| {
                    s.spawn(move || {
                        let model = self.extract_file(path, *vendor)?;
                        Ok(DeviceExtraction { device: device_name(&model, path), source: path.clone(), model })
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("extraction thread panicked")).collect()
        })
    }

    /// Extracts `text`, then generates, prints, re-parses and re-extracts
    /// it with the builtin templates.
    pub fn roundtrip_text(&self, text: &str, vendor: Vendor) -> Result<RoundTrip, RoundTripError> {
        let model = match self.extract_text(text, vendor) {
            Ok(m) => m,
            Err(PipelineError::Extract(e)) => return Err(RoundTripError::Extract(e)),
            Err(PipelineError::Lex(e)) => return Err(RoundTripError::Source(e.into())),
            Err(PipelineError::Parse(e)) => return Err(RoundTripError::Source(e.into())),
            Err(PipelineError::Io { .. }) => unreachable!("text input"),
        };
        roundtrip_model(model, self.table(vendor), self.mm, &Templates::builtin(vendor, self.mm))
    }
}

impl Default for Pipeline {
    fn default() -> Self {
        Pipeline::builtin()
    }
}

fn read(path: &Path) -> Result<String, PipelineError> {
    std::fs::read_to_string(path).map_err(|source| PipelineError::Io { path: path.to_owned(), source })
}

/// Device name for a model read from `path`.
pub fn device_name(model: &DeviceModel, path: &Path) -> String {
    model
        .values_of("Hostname")
        .find_map(|h| h.slot("name"))
        .map(str::to_owned)
        .unwrap_or_else(|| path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default())
}
