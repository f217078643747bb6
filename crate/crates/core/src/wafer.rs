//! Wafer geometry, die yield and fab throughput.

use core::f64::consts::PI;

use crate::error::{
    require_non_negative, require_positive, require_unit_interval, Error, Result,
};

/// A wafer and the process it runs through.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct WaferSpec {
    /// Wafer diameter in mm.
    pub diameter: f64,
    /// Processed wafer cost in EUR.
    pub wafer_cost: f64,
    /// Fraction of wafers that survive processing.
    pub wafer_yield: f64,
    /// Defects per mm².
    pub defect_density: f64,
    /// Manufacturing complexity: the number of masking levels.
    pub masking_levels: u32,
    #[cfg_attr(feature = "serde", serde(default))]
    pub test_dice_per_wafer: u32,
    #[cfg_attr(feature = "serde", serde(default))]
    pub wafers_per_week_min: u64,
    #[cfg_attr(feature = "serde", serde(default))]
    pub wafers_per_week_max: u64,
}

impl WaferSpec {
    pub fn validate(&self) -> Result<()> {
        require_positive("diameter", self.diameter)?;
        require_non_negative("wafer_cost", self.wafer_cost)?;
        require_unit_interval("wafer_yield", self.wafer_yield)?;
        require_non_negative("defect_density", self.defect_density)?;
        if self.masking_levels < 1 {
            return Err(Error::invalid(
                "masking_levels",
                self.masking_levels as f64,
                "must be >= 1",
            ));
        }
        if self.wafers_per_week_min > self.wafers_per_week_max {
            return Err(Error::invalid(
                "wafers_per_week_min",
                self.wafers_per_week_min as f64,
                "must be <= wafers_per_week_max",
            ));
        }
        Ok(())
    }

    /// Area of the wafer disc in mm².
    pub fn circle_area(&self) -> f64 {
        let r = self.diameter / 2.0;
        PI * r * r
    }
}

/// One die and its back-end costs.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct DieSpec {
    /// Die area in mm².
    pub die_area: f64,
    /// EUR per die.
    pub testing_cost: f64,
    /// EUR per die.
    pub packaging_cost: f64,
    pub final_test_yield: f64,
}

impl DieSpec {
    pub fn validate(&self) -> Result<()> {
        require_positive("die_area", self.die_area)?;
        require_non_negative("testing_cost", self.testing_cost)?;
        require_non_negative("packaging_cost", self.packaging_cost)?;
        require_unit_interval("final_test_yield", self.final_test_yield)?;
        if self.final_test_yield == 0.0 {
            return Err(Error::invalid(
                "final_test_yield",
                self.final_test_yield,
                "must lie in (0, 1]",
            ));
        }
        Ok(())
    }

    /// Validates the die on its own and against the wafer it is cut from.
    pub fn validate_for(&self, wafer: &WaferSpec) -> Result<()> {
        self.validate()?;
        if self.die_area >= wafer.circle_area() {
            return Err(Error::invalid(
                "die_area",
                self.die_area,
                "must be smaller than the wafer area",
            ));
        }
        Ok(())
    }
}

/// Real-valued dice count before flooring:
/// `π(d/2)²/A − πd/√(2A) − test dice`.
pub fn dice_per_wafer_exact(wafer: &WaferSpec, die: &DieSpec) -> Result<f64> {
    require_positive("diameter", wafer.diameter)?;
    require_positive("die_area", die.die_area)?;
    let d = wafer.diameter;
    let a = die.die_area;
    let gross = wafer.circle_area() / a;
    let edge_loss = PI * d / libm::sqrt(2.0 * a);
    Ok(gross - edge_loss - wafer.test_dice_per_wafer as f64)
}

/// Usable dice per wafer. The floor is taken once, after the test dice have
/// been subtracted.
pub fn dice_per_wafer(wafer: &WaferSpec, die: &DieSpec) -> Result<u64> {
    let count = dice_per_wafer_exact(wafer, die)?;
    if count < 0.0 {
        return Err(Error::DieTooLarge {
            die_area: die.die_area,
            diameter: wafer.diameter,
            count,
        });
    }
    Ok(libm::floor(count) as u64)
}

/// Negative-binomial die yield: `wafer_yield · (1 + D·A/a)^(−a)`.
///
/// Evaluated as `exp(−a·ln(1 + D·A/a))` so very large `a` stays accurate and
/// converges on the Poisson form `wafer_yield · e^(−D·A)`.
pub fn die_yield(wafer: &WaferSpec, die: &DieSpec) -> Result<f64> {
    require_unit_interval("wafer_yield", wafer.wafer_yield)?;
    require_non_negative("defect_density", wafer.defect_density)?;
    require_positive("die_area", die.die_area)?;
    if wafer.masking_levels < 1 {
        return Err(Error::invalid(
            "masking_levels",
            wafer.masking_levels as f64,
            "must be >= 1",
        ));
    }
    let levels = wafer.masking_levels as f64;
    let defects = wafer.defect_density * die.die_area;
    Ok(wafer.wafer_yield * libm::exp(-levels * libm::log1p(defects / levels)))
}

/// Working chips per wafer after die yield and final test:
/// `floor(dice · die_yield · final_test_yield)`.
pub fn good_chips_per_wafer(wafer: &WaferSpec, die: &DieSpec) -> Result<u64> {
    let dice = dice_per_wafer(wafer, die)?;
    let yield_ = die_yield(wafer, die)?;
    require_unit_interval("final_test_yield", die.final_test_yield)?;
    Ok(libm::floor(dice as f64 * yield_ * die.final_test_yield) as u64)
}

/// Chips per week for one fab over its wafer-start range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WeeklyOutput {
    pub min: u64,
    pub max: u64,
}

pub fn weekly_output(good_chips: u64, wafer: &WaferSpec) -> WeeklyOutput {
    WeeklyOutput {
        min: good_chips * wafer.wafers_per_week_min,
        max: good_chips * wafer.wafers_per_week_max,
    }
}

/// Weekly output with the good-chip count first floored to a whole hundred
/// (6121 is quoted as "more than 6100").
pub fn weekly_output_paper_convention(good_chips: u64, wafer: &WaferSpec) -> WeeklyOutput {
    weekly_output(good_chips / 100 * 100, wafer)
}
