//! Reference classification of location/scale focus parameters, checked by
//! sampled search.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::parameters::sampled::{classify_location_scale, FocusFormula, LocationScaleGroup, SamplingConfig, Verdict};

use FocusFormula as F;
use LocationScaleGroup as G;

/// `(formula, group, expected verdict)`.
pub const REFERENCE: [(FocusFormula, LocationScaleGroup, Verdict); 11] = [
    (F::Mu, G::TranslationScale, Verdict::Natural),
    (F::Sigma, G::TranslationScale, Verdict::Natural),
    (F::MuCubed, G::TranslationScale, Verdict::Natural),
    (F::MuPlusSigma, G::TranslationScale, Verdict::Natural),
    (F::MuPlus3Sigma, G::TranslationScale, Verdict::Natural),
    (F::MuPlusSigmaSquared, G::TranslationScale, Verdict::Counterexample),
    (F::SigmaExpMu, G::TranslationScale, Verdict::Counterexample),
    (F::TanMuOverSinSigma, G::TranslationScale, Verdict::Counterexample),
    (F::CoefficientOfVariation, G::PureScale, Verdict::Natural),
    (F::MuPlusSigmaSquared, G::PureTranslation, Verdict::Natural),
    (F::SigmaExpMu, G::PureTranslation, Verdict::Natural),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub formula: String,
    pub group: String,
    pub expected: Verdict,
    pub observed: Verdict,
    pub samples_used: usize,
    pub agrees: bool,
}

/// Runs every reference case with the same sampling configuration.
pub fn naturalness_suite(config: &SamplingConfig) -> Result<Vec<SuiteRow>> {
    REFERENCE
        .iter()
        .map(|&(formula, group, expected)| {
            let report = classify_location_scale::<f64>(formula, group, config)?;
            Ok(SuiteRow {
                formula: formula.id().to_string(),
                group: group.id().to_string(),
                expected,
                observed: report.verdict,
                samples_used: report.samples_used,
                agrees: report.verdict == expected,
            })
        })
        .collect()
}
