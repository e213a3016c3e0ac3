use std::path::{Path, PathBuf};

use farey_combinatorics::{calibrate_gilman_keen, gilman_keen_cases, GkCalibration, GkConvention, GkNormalization};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use trace_algebra::{check_composition, GmReading};
use word_core::{w, Word};

use crate::CliError;

/// The calibrated conventions every command runs under.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub trailing_fibonacci: bool,
    pub gk_normalization: GkNormalization,
    pub fseq_digit_offset: u64,
    pub gm_reading: GmReading,
    pub calibrated_on: String,
}

pub const FROZEN_GM_READING: GmReading = GmReading::GammaHG;

/// Good-word pairs used to decide the Gehring-Martin reading.
pub fn gm_calibration_pairs() -> Vec<(Word, Word)> {
    [
        ("A b a", "a B A b^2 a"),
        ("a b A", "A b a"),
        ("A b^2 a", "a B A"),
        ("a B A b a", "A b a"),
        ("A b a", "a b^-2 A"),
    ]
    .iter()
    .map(|(x, y)| (w(x), w(y)))
    .collect()
}

pub fn gk_calibration_cases() -> Vec<farey_combinatorics::FSequence> {
    gilman_keen_cases(3, 3)
}

/// sha256 over the calibration corpus, so a changed corpus forces recalibration.
pub fn corpus_hash() -> String {
    let mut h = Sha256::new();
    for s in gk_calibration_cases() {
        h.update(format!("gk {s}\n"));
    }
    for (x, y) in gm_calibration_pairs() {
        h.update(format!("gm {x} | {y}\n"));
    }
    format!("sha256:{:x}", h.finalize())
}

impl Conventions {
    pub fn frozen() -> Self {
        let gk = GkConvention::FROZEN;
        Conventions {
            trailing_fibonacci: gk.trailing_fibonacci,
            gk_normalization: gk.normalization,
            fseq_digit_offset: gk.digit_offset,
            gm_reading: FROZEN_GM_READING,
            calibrated_on: corpus_hash(),
        }
    }

    pub fn gk(&self) -> GkConvention {
        GkConvention {
            trailing_fibonacci: self.trailing_fibonacci,
            digit_offset: self.fseq_digit_offset,
            normalization: self.gk_normalization,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GmPairRow {
    pub w1: Word,
    pub w2: Word,
    pub holding: Vec<GmReading>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Calibration {
    pub gk_rows: Vec<(String, usize, usize)>,
    pub gk_chosen: Option<GkConvention>,
    pub gm_rows: Vec<GmPairRow>,
    /// The reading satisfied by every pair and by no other reading, if any.
    pub gm_chosen: Option<GmReading>,
}

pub fn gm_determination(pairs: &[(Word, Word)]) -> (Vec<GmPairRow>, Option<GmReading>) {
    let rows: Vec<GmPairRow> = pairs
        .iter()
        .map(|(x, y)| GmPairRow {
            w1: x.clone(),
            w2: y.clone(),
            holding: GmReading::ALL
                .into_iter()
                .filter(|&r| matches!(check_composition(x, y, r), Ok(rep) if rep.holds))
                .collect(),
        })
        .collect();
    let stable = rows.first().map(|r| r.holding.clone()).filter(|h| h.len() == 1 && rows.iter().all(|r| r.holding == *h));
    (rows, stable.map(|h| h[0]))
}

pub fn calibrate() -> Calibration {
    let cal: GkCalibration = calibrate_gilman_keen(&gk_calibration_cases());
    let gk_rows = cal
        .rows
        .iter()
        .map(|r| {
            let c = r.convention;
            (format!("offset={} trailing={} {}", c.digit_offset, c.trailing_fibonacci, c.normalization.name()), r.passed, r.failed)
        })
        .collect();
    let (gm_rows, gm_chosen) = gm_determination(&gm_calibration_pairs());
    Calibration { gk_rows, gk_chosen: cal.chosen, gm_rows, gm_chosen }
}

/// Calibration outcome as a lockfile, when both conventions were determined.
pub fn lockfile_from(cal: &Calibration) -> Option<Conventions> {
    let gk = cal.gk_chosen?;
    Some(Conventions {
        trailing_fibonacci: gk.trailing_fibonacci,
        gk_normalization: gk.normalization,
        fseq_digit_offset: gk.digit_offset,
        gm_reading: cal.gm_chosen?,
        calibrated_on: corpus_hash(),
    })
}

/// `--conventions`, else `./conventions.json`, else the workspace copy.
pub fn lockfile_path(explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    let local = PathBuf::from("conventions.json");
    if local.exists() {
        return local;
    }
    let ws = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../conventions.json");
    ws.canonicalize().unwrap_or(ws)
}

/// Load the lockfile and check it against the compiled-in conventions.
pub fn load_and_check(path: &Path) -> Result<Conventions, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Conventions(format!("cannot read {}: {e}; run `infowords calibrate`", path.display())))?;
    let locked: Conventions = serde_json::from_str(&text)
        .map_err(|e| CliError::Conventions(format!("{} is not a convention lockfile: {e}", path.display())))?;
    let frozen = Conventions::frozen();
    if locked != frozen {
        return Err(CliError::Conventions(format!(
            "lockfile {} does not match the built-in conventions\n  lockfile: {}\n  built-in: {}",
            path.display(),
            serde_json::to_string(&locked).unwrap_or_default(),
            serde_json::to_string(&frozen).unwrap_or_default()
        )));
    }
    Ok(locked)
}
