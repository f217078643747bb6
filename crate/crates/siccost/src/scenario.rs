//! The scenario file: one JSON document describing a production
//! configuration plus named overlays, attack profiles, loss models and
//! security assessments.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use siccost_core::{
    apply_overlay, AttackProfile, DieSpec, LossModel, RoundingMode, SecurityOverlay, WaferSpec,
};

use crate::emit::Format;
use crate::error::{join_path, CliError};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema_version: String,
    pub wafer: WaferSpec,
    pub die: DieSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub price: Option<PriceSection>,
    #[serde(default)]
    pub overlays: BTreeMap<String, SecurityOverlay>,
    #[serde(default)]
    pub attacks: BTreeMap<String, AttackProfile>,
    #[serde(default)]
    pub losses: BTreeMap<String, LossModel>,
    #[serde(default)]
    pub assessments: BTreeMap<String, Assessment>,
    #[serde(default)]
    pub options: Options,
}

/// Markup fractions; the component cost is the computed total chip cost.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PriceSection {
    pub direct_cost_fraction: f64,
    pub gross_margin_fraction: f64,
    pub average_discount_fraction: f64,
}

/// Inputs of a security-worth-it evaluation; losses are referenced by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assessment {
    pub security_added_cost: f64,
    pub loss_without: String,
    pub loss_with: String,
    pub success_prob_without: f64,
    pub success_prob_with: f64,
    pub acceptable_risk: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rounding_mode: Option<RoundingMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rationality_threshold: Option<f64>,
}

/// Parses and fully validates a scenario document.
pub fn parse_scenario(bytes: &[u8]) -> Result<ScenarioFile, CliError> {
    let mut de = serde_json::Deserializer::from_slice(bytes);
    let file: ScenarioFile = serde_path_to_error::deserialize(&mut de).map_err(|err| {
        let path = err.path().to_string();
        let inner = err.into_inner();
        CliError::Parse {
            path,
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        }
    })?;
    de.end().map_err(|err| CliError::Parse {
        path: ".".into(),
        line: err.line(),
        column: err.column(),
        message: err.to_string(),
    })?;
    file.validate()?;
    Ok(file)
}

/// Canonical serialization of a scenario (pretty JSON, sorted section names).
pub fn to_canonical_json(file: &ScenarioFile) -> String {
    let mut out = serde_json::to_string_pretty(file).expect("scenario serializes");
    out.push('\n');
    out
}

fn require(path: String, ok: bool, message: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::validation(path, message))
    }
}

impl ScenarioFile {
    pub fn validate(&self) -> Result<(), CliError> {
        require(
            "schema_version".into(),
            self.schema_version == SCHEMA_VERSION,
            "unsupported schema version; expected \"1\"",
        )?;
        self.wafer
            .validate()
            .map_err(|e| CliError::from_invalid("wafer", e))?;
        self.die
            .validate_for(&self.wafer)
            .map_err(|e| CliError::from_invalid("die", e))?;

        if let Some(price) = &self.price {
            for (field, value) in [
                ("direct_cost_fraction", price.direct_cost_fraction),
                ("gross_margin_fraction", price.gross_margin_fraction),
                ("average_discount_fraction", price.average_discount_fraction),
            ] {
                require(
                    format!("price.{field}"),
                    value.is_finite() && value >= 0.0,
                    "must be a finite fraction >= 0",
                )?;
            }
            require(
                "price.gross_margin_fraction".into(),
                price.direct_cost_fraction + price.gross_margin_fraction < 1.0,
                "direct_cost_fraction + gross_margin_fraction must be < 1",
            )?;
            require(
                "price.average_discount_fraction".into(),
                price.average_discount_fraction < 1.0,
                "must be < 1",
            )?;
        }

        for (name, overlay) in &self.overlays {
            let prefix = format!("overlays.{name}");
            overlay
                .validate()
                .map_err(|e| CliError::from_invalid(&prefix, e))?;
            if let Err(err) = apply_overlay(&self.wafer, &self.die, overlay) {
                let field = match &err {
                    siccost_core::Error::InvalidParameter { field, .. } => {
                        overlay_field_for(field)
                    }
                    _ => "area_increase_fraction",
                };
                return Err(CliError::validation(
                    join_path(&prefix, field),
                    format!("overlay leaves an invalid die: {err}"),
                ));
            }
        }

        for (name, attack) in &self.attacks {
            let prefix = format!("attacks.{name}");
            for (i, item) in attack.equipment_items.iter().enumerate() {
                require(
                    format!("{prefix}.equipment_items[{i}].cost"),
                    item.cost.is_finite() && item.cost >= 0.0,
                    "must be >= 0",
                )?;
            }
            attack
                .validate()
                .map_err(|e| CliError::from_invalid(&prefix, e))?;
        }

        for (name, loss) in &self.losses {
            let prefix = format!("losses.{name}");
            if let Some(event) = &loss.replacement {
                event
                    .validate()
                    .map_err(|e| CliError::from_invalid(&format!("{prefix}.replacement"), e))?;
            }
            loss.validate()
                .map_err(|e| CliError::from_invalid(&prefix, e))?;
        }

        for (name, a) in &self.assessments {
            let prefix = format!("assessments.{name}");
            for (field, value) in [
                ("security_added_cost", a.security_added_cost),
                ("acceptable_risk", a.acceptable_risk),
            ] {
                require(
                    join_path(&prefix, field),
                    value.is_finite() && value >= 0.0,
                    "must be >= 0",
                )?;
            }
            for (field, value) in [
                ("success_prob_without", a.success_prob_without),
                ("success_prob_with", a.success_prob_with),
            ] {
                require(
                    join_path(&prefix, field),
                    (0.0..=1.0).contains(&value),
                    "must lie in [0, 1]",
                )?;
            }
            for (field, target) in [("loss_without", &a.loss_without), ("loss_with", &a.loss_with)]
            {
                require(
                    join_path(&prefix, field),
                    self.losses.contains_key(target),
                    "does not name a section under `losses`",
                )?;
            }
        }

        if let Some(t) = self.options.rationality_threshold {
            require(
                "options.rationality_threshold".into(),
                t.is_finite() && t >= 0.0,
                "must be >= 0",
            )?;
        }
        Ok(())
    }
}

fn overlay_field_for(die_field: &str) -> &'static str {
    match die_field {
        "testing_cost" => "testing_cost_delta",
        "packaging_cost" => "packaging_cost_delta",
        "final_test_yield" => "final_test_yield_delta",
        _ => "area_increase_fraction",
    }
}

/// A parsed scenario together with where it came from.
#[derive(Debug, Clone)]
pub struct LoadedScenario {
    /// File stem, e.g. `paper_300mm`.
    pub name: String,
    /// SHA-256 of the file bytes, hex.
    pub digest: String,
    pub path: Option<PathBuf>,
    pub file: ScenarioFile,
}

impl LoadedScenario {
    pub fn from_bytes(name: impl Into<String>, bytes: &[u8]) -> Result<Self, CliError> {
        Ok(LoadedScenario {
            name: name.into(),
            digest: hex::encode(Sha256::digest(bytes)),
            path: None,
            file: parse_scenario(bytes)?,
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let bytes = std::fs::read(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "scenario".into());
        let mut loaded = Self::from_bytes(name, &bytes)?;
        loaded.path = Some(path.to_path_buf());
        Ok(loaded)
    }

    /// Resolves a transition target: an existing path, or the name of a
    /// `<name>.scenario` file next to this one.
    pub fn resolve_sibling(&self, target: &str) -> Result<LoadedScenario, CliError> {
        let direct = PathBuf::from(target);
        if direct.is_file() {
            return Self::load(&direct);
        }
        let dir = self
            .path
            .as_deref()
            .and_then(Path::parent)
            .unwrap_or_else(|| Path::new("."));
        let sibling = dir.join(format!("{target}.scenario"));
        if sibling.is_file() {
            return Self::load(&sibling);
        }
        Err(CliError::Usage(format!(
            "transition target `{target}` is neither a file nor a sibling scenario"
        )))
    }
}
