//! The claim-fixture table: expected coefficient combinations for every
//! verified identity, shipped as a human-auditable JSON file and parsed with
//! the same expression grammar the CLI uses.

use serde::Deserialize;

use crate::basisreduce::BasisCombo;
use crate::parse::parse_coeff;

use super::PipelineError;

/// Reduction stage at which an expected display holds exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// Holds before any reduction.
    Raw,
    /// Holds after the b/c/d/e/f eliminations.
    DerivedEliminated,
    /// Holds on the core basis {p₁, q₁, a₁, r₁, s₁}.
    Core,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Raw => "raw",
            Stage::DerivedEliminated => "derived_eliminated",
            Stage::Core => "core",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClaimFixture {
    pub id: String,
    pub stage: Stage,
    pub expected: BasisCombo,
    pub note: Option<String>,
}

#[derive(Deserialize)]
struct RawFixtureFile {
    version: u32,
    #[allow(dead_code)]
    description: String,
    claims: Vec<RawClaim>,
}

#[derive(Deserialize)]
struct RawClaim {
    id: String,
    stage: String,
    terms: Vec<(String, String)>,
    #[serde(default)]
    note: Option<String>,
}

pub(super) const FIXTURES_JSON: &str = include_str!("../../fixtures/claims.json");

pub(super) fn load_fixtures() -> Result<Vec<ClaimFixture>, PipelineError> {
    let raw: RawFixtureFile = serde_json::from_str(FIXTURES_JSON)
        .map_err(|e| PipelineError::Fixture(format!("fixture file is not valid JSON: {e}")))?;
    if raw.version != 1 {
        return Err(PipelineError::Fixture(format!(
            "unsupported fixture file version {}",
            raw.version
        )));
    }
    let mut out = Vec::with_capacity(raw.claims.len());
    let mut seen = std::collections::HashSet::new();
    for claim in raw.claims {
        if !seen.insert(claim.id.clone()) {
            return Err(PipelineError::Fixture(format!("duplicate claim id {}", claim.id)));
        }
        let stage = match claim.stage.as_str() {
            "raw" => Stage::Raw,
            "derived_eliminated" => Stage::DerivedEliminated,
            "core" => Stage::Core,
            other => {
                return Err(PipelineError::Fixture(format!(
                    "claim {}: unknown stage '{other}'",
                    claim.id
                )))
            }
        };
        let mut expected = BasisCombo::new();
        for (basis, coeff) in &claim.terms {
            let b = basis.parse().map_err(|e| {
                PipelineError::Fixture(format!("claim {}: {e}", claim.id))
            })?;
            let c = parse_coeff(coeff).map_err(|e| {
                PipelineError::Fixture(format!("claim {}: bad coefficient '{coeff}': {e}", claim.id))
            })?;
            expected.insert(b, c);
        }
        out.push(ClaimFixture {
            id: claim.id,
            stage,
            expected,
            note: claim.note,
        });
    }
    Ok(out)
}
