//! Inputs for the pipeline benchmarks in `benches/`.

use confmodel::fixtures::corpus;
use confmodel::Vendor;

/// A positive fixture loaded into memory.
pub struct Input {
    pub name: String,
    pub vendor: Vendor,
    pub text: String,
}

/// Positive fixtures carrying `tag`, in manifest order.
pub fn inputs(tag: &str) -> Vec<Input> {
    corpus()
        .into_iter()
        .filter(|f| f.is_positive() && f.has_tag(tag))
        .map(|f| Input { text: f.config_text().expect("fixture config is readable"), name: f.name, vendor: f.vendor })
        .collect()
}

/// The configuration of `n` concatenated copies of a running config, for
/// scaling runs. Hostname lines after the first are dropped.
pub fn repeated(text: &str, n: usize) -> String {
    let body: String = text.lines().filter(|l| !l.starts_with("hostname ")).map(|l| format!("{l}\n")).collect();
    let head: String = text.lines().filter(|l| l.starts_with("hostname ")).take(1).map(|l| format!("{l}\n")).collect();
    head + &body.repeat(n)
}
