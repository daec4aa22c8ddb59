use std::cmp::Ordering;

/// Splits a group value name such as `CES12` into its prefix and trailing
/// ordinal so that `CES2` sorts before `CES10`.
pub(crate) fn natural_key(name: &str) -> (&str, Option<u64>, &str) {
    let digits = name.bytes().rev().take_while(u8::is_ascii_digit).count();
    let (prefix, suffix) = name.split_at(name.len() - digits);
    (prefix, suffix.parse().ok(), name)
}

pub(crate) fn natural_cmp(a: &str, b: &str) -> Ordering {
    natural_key(a).cmp(&natural_key(b))
}

/// 1-based line and column of a byte offset in `text`.
pub(crate) fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, before[line_start..].chars().count() + 1)
}
