//! Security overlays, scenario comparisons, wafer transitions and
//! one-at-a-time sensitivity sweeps.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::cost::{full_breakdown, CostBreakdown};
use crate::error::{require_non_negative, require_finite, Error, Result};
use crate::rounding::{round_cents, RoundingMode};
use crate::wafer::{weekly_output_paper_convention, DieSpec, WaferSpec, WeeklyOutput};

/// Changes to a die when security features are added.
///
/// `rd_additional_cost` and `time_to_market_delay_months` are carried through
/// to reports only; there is no rule for amortizing them into a chip cost.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields, default))]
pub struct SecurityOverlay {
    pub area_increase_fraction: f64,
    pub testing_cost_delta: f64,
    pub packaging_cost_delta: f64,
    pub final_test_yield_delta: f64,
    pub rd_additional_cost: f64,
    pub time_to_market_delay_months: f64,
}

impl SecurityOverlay {
    pub fn validate(&self) -> Result<()> {
        require_non_negative("area_increase_fraction", self.area_increase_fraction)?;
        require_finite("testing_cost_delta", self.testing_cost_delta)?;
        require_finite("packaging_cost_delta", self.packaging_cost_delta)?;
        require_finite("final_test_yield_delta", self.final_test_yield_delta)?;
        require_non_negative("rd_additional_cost", self.rd_additional_cost)?;
        require_non_negative(
            "time_to_market_delay_months",
            self.time_to_market_delay_months,
        )
    }
}

/// Applies an overlay to a die. The wafer is returned unchanged.
pub fn apply_overlay(
    wafer: &WaferSpec,
    die: &DieSpec,
    overlay: &SecurityOverlay,
) -> Result<(WaferSpec, DieSpec)> {
    overlay.validate()?;
    let die = DieSpec {
        die_area: die.die_area * (1.0 + overlay.area_increase_fraction),
        testing_cost: die.testing_cost + overlay.testing_cost_delta,
        packaging_cost: die.packaging_cost + overlay.packaging_cost_delta,
        final_test_yield: die.final_test_yield + overlay.final_test_yield_delta,
    };
    die.validate_for(wafer)?;
    Ok((wafer.clone(), die))
}

/// Baseline against variant.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ScenarioComparison {
    pub baseline: CostBreakdown,
    pub variant: CostBreakdown,
    /// Totals the deltas were taken from (cent-rounded in paper mode).
    pub baseline_total: f64,
    pub variant_total: f64,
    pub absolute_delta: f64,
    pub relative_delta: f64,
    /// Relative cost change over relative area change; only set when the
    /// variant came from an overlay that grows the die.
    pub magnitude_transfer_ratio: Option<f64>,
    pub rounding: RoundingMode,
}

pub fn compare(
    baseline: &CostBreakdown,
    variant: &CostBreakdown,
    rounding: RoundingMode,
) -> Result<ScenarioComparison> {
    let (base_total, var_total) = match rounding {
        RoundingMode::Exact => (baseline.total_chip_cost, variant.total_chip_cost),
        RoundingMode::Paper => (
            round_cents(baseline.total_chip_cost),
            round_cents(variant.total_chip_cost),
        ),
    };
    if base_total == 0.0 {
        return Err(Error::ZeroBaseline);
    }
    let absolute_delta = match rounding {
        RoundingMode::Exact => var_total - base_total,
        // difference of two cent values, snapped back onto the cent grid
        RoundingMode::Paper => round_cents(var_total - base_total),
    };
    Ok(ScenarioComparison {
        baseline: baseline.clone(),
        variant: variant.clone(),
        baseline_total: base_total,
        variant_total: var_total,
        absolute_delta,
        relative_delta: absolute_delta / base_total,
        magnitude_transfer_ratio: None,
        rounding,
    })
}

/// Breakdown of the configuration with and without the overlay, compared.
pub fn overlay_comparison(
    wafer: &WaferSpec,
    die: &DieSpec,
    overlay: &SecurityOverlay,
    rounding: RoundingMode,
) -> Result<ScenarioComparison> {
    let baseline = full_breakdown(wafer, die, rounding)?;
    let (v_wafer, v_die) = apply_overlay(wafer, die, overlay)?;
    let variant = full_breakdown(&v_wafer, &v_die, rounding)?;
    let mut comparison = compare(&baseline, &variant, rounding)?;
    if overlay.area_increase_fraction > 0.0 {
        comparison.magnitude_transfer_ratio =
            Some(comparison.relative_delta / overlay.area_increase_fraction);
    }
    Ok(comparison)
}

/// A move between two wafer technologies, e.g. 300 mm to 450 mm.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct WaferTransition {
    pub comparison: ScenarioComparison,
    pub baseline_weekly: WeeklyOutput,
    pub variant_weekly: WeeklyOutput,
    /// Weekly output with good chips per wafer floored to hundreds.
    pub baseline_weekly_rounded: WeeklyOutput,
    pub variant_weekly_rounded: WeeklyOutput,
}

impl WaferTransition {
    pub fn weekly_delta(&self) -> (i128, i128) {
        (
            self.variant_weekly.min as i128 - self.baseline_weekly.min as i128,
            self.variant_weekly.max as i128 - self.baseline_weekly.max as i128,
        )
    }

    /// Variant over baseline weekly output at each end of the range; `None`
    /// where the baseline produces nothing.
    pub fn weekly_ratio(&self) -> (Option<f64>, Option<f64>) {
        let ratio = |v: u64, b: u64| (b > 0).then(|| v as f64 / b as f64);
        (
            ratio(self.variant_weekly.min, self.baseline_weekly.min),
            ratio(self.variant_weekly.max, self.baseline_weekly.max),
        )
    }
}

pub fn wafer_transition(
    baseline: (&WaferSpec, &DieSpec),
    variant: (&WaferSpec, &DieSpec),
    rounding: RoundingMode,
) -> Result<WaferTransition> {
    let base = full_breakdown(baseline.0, baseline.1, rounding)?;
    let var = full_breakdown(variant.0, variant.1, rounding)?;
    let comparison = compare(&base, &var, rounding)?;
    Ok(WaferTransition {
        baseline_weekly: base.weekly_output(),
        variant_weekly: var.weekly_output(),
        baseline_weekly_rounded: weekly_output_paper_convention(
            base.good_chips_per_wafer,
            baseline.0,
        ),
        variant_weekly_rounded: weekly_output_paper_convention(
            var.good_chips_per_wafer,
            variant.0,
        ),
        comparison,
    })
}

/// Inputs a sensitivity sweep can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParameter {
    DieArea,
    WaferCost,
    WaferYield,
    DefectDensity,
    MaskingLevels,
    TestingCost,
    PackagingCost,
    FinalTestYield,
    Diameter,
}

impl SweepParameter {
    pub const ALL: [SweepParameter; 9] = [
        SweepParameter::DieArea,
        SweepParameter::WaferCost,
        SweepParameter::WaferYield,
        SweepParameter::DefectDensity,
        SweepParameter::MaskingLevels,
        SweepParameter::TestingCost,
        SweepParameter::PackagingCost,
        SweepParameter::FinalTestYield,
        SweepParameter::Diameter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::DieArea => "die_area",
            SweepParameter::WaferCost => "wafer_cost",
            SweepParameter::WaferYield => "wafer_yield",
            SweepParameter::DefectDensity => "defect_density",
            SweepParameter::MaskingLevels => "masking_levels",
            SweepParameter::TestingCost => "testing_cost",
            SweepParameter::PackagingCost => "packaging_cost",
            SweepParameter::FinalTestYield => "final_test_yield",
            SweepParameter::Diameter => "diameter",
        }
    }

    /// Current value of the parameter in a configuration.
    pub fn get(self, wafer: &WaferSpec, die: &DieSpec) -> f64 {
        match self {
            SweepParameter::DieArea => die.die_area,
            SweepParameter::WaferCost => wafer.wafer_cost,
            SweepParameter::WaferYield => wafer.wafer_yield,
            SweepParameter::DefectDensity => wafer.defect_density,
            SweepParameter::MaskingLevels => wafer.masking_levels as f64,
            SweepParameter::TestingCost => die.testing_cost,
            SweepParameter::PackagingCost => die.packaging_cost,
            SweepParameter::FinalTestYield => die.final_test_yield,
            SweepParameter::Diameter => wafer.diameter,
        }
    }

    /// Copy of the configuration with this parameter set to `value`.
    pub fn set(self, wafer: &WaferSpec, die: &DieSpec, value: f64) -> Result<(WaferSpec, DieSpec)> {
        let mut wafer = wafer.clone();
        let mut die = die.clone();
        match self {
            SweepParameter::DieArea => die.die_area = value,
            SweepParameter::WaferCost => wafer.wafer_cost = value,
            SweepParameter::WaferYield => wafer.wafer_yield = value,
            SweepParameter::DefectDensity => wafer.defect_density = value,
            SweepParameter::MaskingLevels => {
                if !(value >= 1.0 && value <= u32::MAX as f64 && libm::trunc(value) == value) {
                    return Err(Error::invalid(
                        "masking_levels",
                        value,
                        "must be a positive integer",
                    ));
                }
                wafer.masking_levels = value as u32;
            }
            SweepParameter::TestingCost => die.testing_cost = value,
            SweepParameter::PackagingCost => die.packaging_cost = value,
            SweepParameter::FinalTestYield => die.final_test_yield = value,
            SweepParameter::Diameter => wafer.diameter = value,
        }
        Ok((wafer, die))
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnknownSweepParameter;

impl fmt::Display for UnknownSweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown sweep parameter; expected one of ")?;
        for (i, p) in SweepParameter::ALL.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(p.name())?;
        }
        Ok(())
    }
}

impl FromStr for SweepParameter {
    type Err = UnknownSweepParameter;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        SweepParameter::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or(UnknownSweepParameter)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SweepRow {
    pub value: f64,
    pub breakdown: CostBreakdown,
    /// Change of the (reported) total relative to the first row; `None` when
    /// the first row's total is zero.
    pub relative_delta: Option<f64>,
    /// `relative_delta` over the relative change of the input; `None` when the
    /// input did not move or the baseline input is zero.
    pub elasticity: Option<f64>,
}

/// Evaluates the configuration once per value, in input order. The first
/// value is the baseline for deltas and elasticities.
pub fn sensitivity_sweep(
    wafer: &WaferSpec,
    die: &DieSpec,
    parameter: SweepParameter,
    values: &[f64],
    rounding: RoundingMode,
) -> Result<Vec<SweepRow>> {
    let point = |value: f64| -> Result<CostBreakdown> {
        let wrap = |e: Error| Error::SweepPoint {
            parameter: parameter.name(),
            value,
            source: Box::new(e),
        };
        let (w, d) = parameter.set(wafer, die, value).map_err(wrap)?;
        full_breakdown(&w, &d, rounding).map_err(wrap)
    };

    let mut rows: Vec<SweepRow> = Vec::with_capacity(values.len());
    let mut base: Option<(f64, f64)> = None;
    for &value in values {
        let breakdown = point(value)?;
        let total = breakdown.reported_total();
        let (base_value, base_total) = *base.get_or_insert((value, total));
        let relative_delta = (base_total != 0.0).then(|| (total - base_total) / base_total);
        let input_delta = if base_value != 0.0 && value != base_value {
            Some((value - base_value) / base_value)
        } else {
            None
        };
        let elasticity = match (relative_delta, input_delta) {
            (Some(out), Some(inp)) => Some(out / inp),
            _ => None,
        };
        rows.push(SweepRow {
            value,
            breakdown,
            relative_delta,
            elasticity,
        });
    }
    Ok(rows)
}
