//! Rounding policy shared by the cost and scenario models.

use core::fmt;
use core::str::FromStr;

/// How intermediate money values are rounded.
///
/// `Exact` keeps full `f64` precision end to end. `Paper` rounds the die cost
/// to 0.001 EUR before it enters the total, and rounds totals to whole cents
/// wherever they are reported or compared, which reproduces the printed
/// worked examples (0.365 -> 0.5997984 -> 60 cents).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum RoundingMode {
    #[default]
    Exact,
    Paper,
}

impl RoundingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            RoundingMode::Exact => "exact",
            RoundingMode::Paper => "paper",
        }
    }
}

impl fmt::Display for RoundingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RoundingMode {
    type Err = UnknownRoundingMode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(RoundingMode::Exact),
            "paper" => Ok(RoundingMode::Paper),
            _ => Err(UnknownRoundingMode),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnknownRoundingMode;

impl fmt::Display for UnknownRoundingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("rounding mode must be `exact` or `paper`")
    }
}

/// Round half away from zero to `decimals` fractional digits.
pub fn round_to(value: f64, decimals: i32) -> f64 {
    let scale = libm::pow(10.0, decimals as f64);
    libm::round(value * scale) / scale
}

/// Round to whole euro cents.
pub fn round_cents(value: f64) -> f64 {
    round_to(value, 2)
}

/// Round to 0.001 EUR (a tenth of a cent).
pub fn round_mills(value: f64) -> f64 {
    round_to(value, 3)
}
