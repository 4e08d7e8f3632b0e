//! JSON control polygons: `{"points": [[0,0],[1,2]], "weights": [1,1]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use qtrig_core::{ControlPolygon, WeightVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonFile {
    pub points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

impl PolygonFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let file: PolygonFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
            path: origin.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        file.validate(origin)?;
        Ok(file)
    }

    fn validate(&self, origin: &str) -> Result<()> {
        let invalid = |message: String| CliError::Parse {
            path: origin.to_string(),
            line: 0,
            column: 0,
            message,
        };
        if self.points.is_empty() {
            return Err(invalid("\"points\" must not be empty".into()));
        }
        let dim = self.points[0].len();
        if dim == 0 || self.points.iter().any(|p| p.len() != dim) {
            return Err(invalid("all points must have the same nonzero dimension".into()));
        }
        if let Some(w) = &self.weights {
            if w.len() != self.points.len() {
                return Err(invalid(format!(
                    "{} weights given for {} points",
                    w.len(),
                    self.points.len()
                )));
            }
        }
        Ok(())
    }

    pub fn polygon(&self) -> Result<ControlPolygon> {
        Ok(ControlPolygon::new(self.points.clone())?)
    }

    /// File weights, replaced by `override_weights` when given, else all ones.
    pub fn weights(&self, override_weights: Option<&[f64]>) -> Result<WeightVector> {
        let n = self.points.len() - 1;
        match override_weights.or(self.weights.as_deref()) {
            Some(w) if w.len() != n + 1 => Err(CliError::Core(qtrig_core::Error::LengthMismatch {
                expected: n + 1,
                found: w.len(),
            })),
            Some(w) => Ok(WeightVector::new(w.to_vec())?),
            None => Ok(WeightVector::uniform(n)),
        }
    }
}
