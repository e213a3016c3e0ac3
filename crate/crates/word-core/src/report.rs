use std::collections::BTreeMap;

use serde::Serialize;

use crate::Word;

/// Outcome of checking one claim on one input. A claim that fails is a
/// report with `holds = false`, not an error.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub claim: String,
    pub inputs: BTreeMap<String, String>,
    pub holds: bool,
    pub normalization: Option<String>,
    pub witness_words: BTreeMap<String, Word>,
}

impl CheckReport {
    pub fn new(claim: &str) -> Self {
        CheckReport {
            claim: claim.to_string(),
            inputs: BTreeMap::new(),
            holds: false,
            normalization: None,
            witness_words: BTreeMap::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn witness(mut self, key: &str, w: &Word) -> Self {
        self.witness_words.insert(key.to_string(), w.clone());
        self
    }
}
