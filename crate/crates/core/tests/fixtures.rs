//! Fixture corpus against its golden models and scripts.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the golden files from the current
//! output.

use std::path::Path;

use confmodel::fixtures::{corpus, ErrorKind, Fixture};
use confmodel::{generate, DeviceModel, ExtractError, Pipeline, PipelineError};

fn bless() -> bool {
    std::env::var_os("UPDATE_GOLDEN").is_some()
}

fn check_golden(path: &Path, actual: &str) {
    if bless() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {}", path.display());
}

fn extract(f: &Fixture) -> Result<DeviceModel, PipelineError> {
    Pipeline::builtin().extract_file(&f.config, f.vendor)
}

#[test]
fn positive_fixtures_match_golden_models() {
    let mm = confmodel::builtin_metamodel();
    for f in corpus().iter().filter(|f| f.is_positive()) {
        let model = extract(f).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        assert!(confmodel::validate_model(&model, mm).is_empty(), "{}", f.name);
        check_golden(f.model.as_ref().expect("positive fixture has a model"), &model.to_json());
    }
}

#[test]
fn positive_fixtures_match_golden_scripts() {
    let mm = confmodel::builtin_metamodel();
    for f in corpus().iter().filter(|f| f.is_positive()) {
        let model = extract(f).unwrap();
        let script = generate(&model, mm).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        assert_eq!(script.check_mode_balance(), Ok(()), "{}", f.name);
        check_golden(f.script.as_ref().expect("positive fixture has a script"), &script.to_text());
    }
}

#[test]
fn golden_models_load_back() {
    let mm = confmodel::builtin_metamodel();
    for f in corpus().iter().filter(|f| f.is_positive()) {
        let text = std::fs::read_to_string(f.model.as_ref().unwrap()).unwrap();
        let model = DeviceModel::from_json(&text, mm).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        assert_eq!(model.to_json(), text, "{}", f.name);
    }
}

#[test]
fn negative_fixtures_fail_where_expected() {
    for f in corpus().iter().filter(|f| !f.is_positive()) {
        let want = f.error.as_ref().unwrap();
        let err = extract(f).expect_err(&f.name);
        let kind_ok = match want.kind {
            ErrorKind::Lex => matches!(err, PipelineError::Lex(_)),
            ErrorKind::Parse => matches!(err, PipelineError::Parse(_)),
            ErrorKind::SlotConflict => matches!(err, PipelineError::Extract(ExtractError::SlotConflict { .. })),
        };
        assert!(kind_ok, "{}: unexpected error {err}", f.name);
        assert_eq!(err.position(), Some((want.line, want.column)), "{}: {err}", f.name);
    }
}

#[test]
fn tagged_fixtures_round_trip() {
    let p = Pipeline::builtin();
    let tagged: Vec<_> = corpus().into_iter().filter(|f| f.has_tag("roundtrip")).collect();
    assert!(tagged.len() >= 10);
    for f in tagged {
        let rt = p.roundtrip_text(&f.config_text().unwrap(), f.vendor).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        assert!(rt.equal, "{}: {:?}\n{}", f.name, rt.diff, rt.printed);
    }
}
