//! JSON model files.
//!
//! ```json
//! {
//!   "numerator": [{"z": 0, "w": 0, "coeff": "1"}],
//!   "factors": [{"a": "1/3", "b": "2/3"}, {"a": "2/3", "b": "1/3"}]
//! }
//! ```
//!
//! `numerator` may be omitted, meaning `P = 1`. Unknown keys are rejected.

use std::collections::BTreeSet;
use std::path::Path;

use diagasym::model::{parse_rational, LinearFactor, Poly2};
use diagasym::GFModel;
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum ModelFileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed model file: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("numerator term z^{z} w^{w} given twice")]
    DuplicateTerm { z: u32, w: u32 },
    #[error(transparent)]
    Model(#[from] diagasym::Error),
}

impl ModelFileError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::Io { .. } => "Io",
            Self::Syntax(_) => "Syntax",
            Self::DuplicateTerm { .. } => "DuplicateTerm",
            Self::Model(e) => e.code(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    numerator: Option<Vec<RawTerm>>,
    factors: Vec<RawFactor>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    z: u32,
    w: u32,
    coeff: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFactor {
    a: String,
    b: String,
}

pub fn parse_model(text: &str) -> Result<GFModel, ModelFileError> {
    let raw: RawModel = serde_json::from_str(text)?;
    let numerator = match raw.numerator {
        None => Poly2::one(),
        Some(terms) => {
            let mut seen = BTreeSet::new();
            let mut p = Poly2::zero();
            for t in terms {
                if !seen.insert((t.z, t.w)) {
                    return Err(ModelFileError::DuplicateTerm { z: t.z, w: t.w });
                }
                p.add_term(t.z, t.w, parse_rational(&t.coeff)?);
            }
            p
        }
    };
    let factors = raw
        .factors
        .iter()
        .map(|f| Ok(LinearFactor::new(parse_rational(&f.a)?, parse_rational(&f.b)?)))
        .collect::<Result<Vec<_>, diagasym::Error>>()?;
    Ok(GFModel::new(numerator, factors)?)
}

pub fn read_model(path: &Path) -> Result<GFModel, ModelFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| ModelFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_model(&text)
}
