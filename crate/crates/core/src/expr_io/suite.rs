//! Identity-suite files: JSON lists of `lhs = rhs` identities, each checked by
//! normal ordering `lhs − rhs` in a named preset.
//!
//! ```json
//! { "suite": "relations/gl", "description": "...",
//!   "entries": [ { "name": "ab = qba", "preset": "GLq2",
//!                  "lhs": "a*b", "rhs": "q*b*a", "paper_ref": "ab = qba, ..." } ] }
//! ```
//!
//! Optional per-entry fields: `flag` (a documented discrepancy: a failing
//! entry is reported as flagged with this explanation) and `realize`
//! (`"variation"`: the sides are written with `del_x` for `x δ` and are
//! realized through the transformation table before comparing). An optional
//! file-level `bindings` object `{ "from": PRESET, "map": { gen: expr } }`
//! parses both sides in `from` and substitutes the map into the entry preset.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::LoadError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteFile {
    pub suite: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bindings: Option<Bindings>,
    pub entries: Vec<SuiteEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bindings {
    pub from: String,
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteEntry {
    pub name: String,
    pub preset: String,
    pub lhs: String,
    pub rhs: String,
    pub paper_ref: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realize: Option<Realize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Realize {
    Variation,
}

impl SuiteFile {
    /// Parses suite JSON; `origin` names the source in error messages.
    pub fn from_json(text: &str, origin: &str) -> Result<Self, LoadError> {
        let file: SuiteFile =
            serde_json::from_str(text).map_err(|e| LoadError::Malformed { name: origin.into(), msg: e.to_string() })?;
        if file.suite.trim().is_empty() {
            return Err(LoadError::Malformed { name: origin.into(), msg: "empty suite name".into() });
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite serializes")
    }
}

const BUILTIN: &[(&str, &str)] = &[
    ("cq_plane", include_str!("../../../../suites/relations/cq_plane.json")),
    ("differentials", include_str!("../../../../suites/relations/differentials.json")),
    ("dotted", include_str!("../../../../suites/relations/dotted.json")),
    ("gauss", include_str!("../../../../suites/relations/gauss.json")),
    ("gauss_forms", include_str!("../../../../suites/relations/gauss_forms.json")),
    ("gauss_g", include_str!("../../../../suites/relations/gauss_g.json")),
    ("gl", include_str!("../../../../suites/relations/gl.json")),
    ("matched", include_str!("../../../../suites/relations/matched.json")),
    ("sl_forms", include_str!("../../../../suites/relations/sl_forms.json")),
    ("sl_real", include_str!("../../../../suites/relations/sl_real.json")),
    ("unitary", include_str!("../../../../suites/relations/unitary.json")),
    ("variational", include_str!("../../../../suites/relations/variational.json")),
    ("variational_cr", include_str!("../../../../suites/relations/variational_cr.json")),
    ("vector_fields", include_str!("../../../../suites/relations/vector_fields.json")),
];

/// The relation suites shipped in `suites/relations`, compiled in.
pub fn builtin() -> Vec<SuiteFile> {
    BUILTIN
        .iter()
        .map(|(file, text)| SuiteFile::from_json(text, file).expect("built-in suite is well-formed"))
        .collect()
}

/// A built-in suite by its `suite` name, e.g. `relations/gl`.
pub fn builtin_named(name: &str) -> Result<SuiteFile, LoadError> {
    builtin()
        .into_iter()
        .find(|s| s.suite == name)
        .ok_or_else(|| LoadError::UnknownSuite(name.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load_with_unique_names() {
        let all = builtin();
        assert_eq!(all.len(), BUILTIN.len());
        let mut names: Vec<_> = all.iter().map(|s| s.suite.clone()).collect();
        names.dedup();
        assert_eq!(names.len(), all.len());
        for s in &all {
            let mut entries: Vec<_> = s.entries.iter().map(|e| &e.name).collect();
            entries.sort();
            entries.dedup();
            assert_eq!(entries.len(), s.entries.len(), "duplicate entry name in {}", s.suite);
        }
    }

    #[test]
    fn rejects_unknown_fields() {
        let text = r#"{"suite": "x", "entries": [{"name": "n", "preset": "GLq2", "lhs": "a", "rhs": "a", "paper_ref": "r", "oops": 1}]}"#;
        assert!(matches!(SuiteFile::from_json(text, "x"), Err(LoadError::Malformed { .. })));
    }

    #[test]
    fn round_trips_through_json() {
        for s in builtin() {
            assert_eq!(SuiteFile::from_json(&s.to_json(), "rt").unwrap(), s);
        }
    }
}
