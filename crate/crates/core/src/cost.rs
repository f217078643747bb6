//! Die cost, total chip cost and the cost-to-list-price chain.

use crate::error::{require_non_negative, require_unit_interval, Error, Result};
use crate::rounding::{round_cents, round_mills, RoundingMode};
use crate::wafer::{
    dice_per_wafer, die_yield, good_chips_per_wafer, weekly_output,
    weekly_output_paper_convention, DieSpec, WaferSpec, WeeklyOutput,
};

/// `wafer_cost / (dice_per_wafer · die_yield)`.
pub fn die_cost(wafer_cost: f64, dice_per_wafer: u64, die_yield: f64) -> Result<f64> {
    require_non_negative("wafer_cost", wafer_cost)?;
    if dice_per_wafer == 0 {
        return Err(Error::ZeroDice);
    }
    require_unit_interval("die_yield", die_yield)?;
    if die_yield == 0.0 {
        return Err(Error::ZeroYield);
    }
    Ok(wafer_cost / (dice_per_wafer as f64 * die_yield))
}

/// `(die_cost + testing_cost + packaging_cost) / final_test_yield`.
pub fn total_chip_cost(die_cost: f64, die: &DieSpec) -> Result<f64> {
    require_non_negative("die_cost", die_cost)?;
    require_non_negative("testing_cost", die.testing_cost)?;
    require_non_negative("packaging_cost", die.packaging_cost)?;
    if !(die.final_test_yield > 0.0 && die.final_test_yield <= 1.0) {
        return Err(Error::invalid(
            "final_test_yield",
            die.final_test_yield,
            "must lie in (0, 1]",
        ));
    }
    Ok((die_cost + die.testing_cost + die.packaging_cost) / die.final_test_yield)
}

/// Every intermediate of one production configuration.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CostBreakdown {
    pub dice_per_wafer: u64,
    pub die_yield: f64,
    /// Unrounded die cost, EUR.
    pub die_cost: f64,
    pub testing_cost: f64,
    pub packaging_cost: f64,
    pub final_test_yield: f64,
    /// Total cost per chip, EUR. In paper mode this is computed from the die
    /// cost rounded to 0.001 EUR.
    pub total_chip_cost: f64,
    pub good_chips_per_wafer: u64,
    pub weekly_output_min: u64,
    pub weekly_output_max: u64,
    pub rounding: RoundingMode,
}

impl CostBreakdown {
    /// Die cost as it entered the total.
    pub fn die_cost_applied(&self) -> f64 {
        match self.rounding {
            RoundingMode::Exact => self.die_cost,
            RoundingMode::Paper => round_mills(self.die_cost),
        }
    }

    /// Total as quoted in a report: whole cents in paper mode.
    pub fn reported_total(&self) -> f64 {
        match self.rounding {
            RoundingMode::Exact => self.total_chip_cost,
            RoundingMode::Paper => round_cents(self.total_chip_cost),
        }
    }

    pub fn weekly_output(&self) -> WeeklyOutput {
        WeeklyOutput {
            min: self.weekly_output_min,
            max: self.weekly_output_max,
        }
    }
}

/// Runs the whole chain for one wafer/die pairing.
pub fn full_breakdown(
    wafer: &WaferSpec,
    die: &DieSpec,
    rounding: RoundingMode,
) -> Result<CostBreakdown> {
    wafer.validate()?;
    die.validate()?;
    let dice = dice_per_wafer(wafer, die)?;
    let yield_ = die_yield(wafer, die)?;
    let die_cost = die_cost(wafer.wafer_cost, dice, yield_)?;
    let applied = match rounding {
        RoundingMode::Exact => die_cost,
        RoundingMode::Paper => round_mills(die_cost),
    };
    let total = total_chip_cost(applied, die)?;
    let good = good_chips_per_wafer(wafer, die)?;
    let weekly = weekly_output(good, wafer);
    Ok(CostBreakdown {
        dice_per_wafer: dice,
        die_yield: yield_,
        die_cost,
        testing_cost: die.testing_cost,
        packaging_cost: die.packaging_cost,
        final_test_yield: die.final_test_yield,
        total_chip_cost: total,
        good_chips_per_wafer: good,
        weekly_output_min: weekly.min,
        weekly_output_max: weekly.max,
        rounding,
    })
}

/// Weekly output of a breakdown with the good-chip count floored to hundreds.
pub fn paper_weekly_output(breakdown: &CostBreakdown, wafer: &WaferSpec) -> WeeklyOutput {
    weekly_output_paper_convention(breakdown.good_chips_per_wafer, wafer)
}

/// Component cost plus the direct-cost, gross-margin and discount categories.
///
/// Direct cost and gross margin are fractions of the average selling price;
/// the discount is a fraction of the list price.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PriceModel {
    pub component_cost: f64,
    pub direct_cost_fraction: f64,
    pub gross_margin_fraction: f64,
    pub average_discount_fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriceQuote {
    pub average_selling_price: f64,
    pub list_price: f64,
}

pub fn list_price(price: &PriceModel) -> Result<PriceQuote> {
    require_non_negative("component_cost", price.component_cost)?;
    require_non_negative("direct_cost_fraction", price.direct_cost_fraction)?;
    require_non_negative("gross_margin_fraction", price.gross_margin_fraction)?;
    require_non_negative("average_discount_fraction", price.average_discount_fraction)?;
    let asp_share = 1.0 - price.direct_cost_fraction - price.gross_margin_fraction;
    if asp_share <= 0.0 {
        return Err(Error::NonPositiveDenominator {
            what: "1 - direct_cost_fraction - gross_margin_fraction",
            value: asp_share,
        });
    }
    let list_share = 1.0 - price.average_discount_fraction;
    if list_share <= 0.0 {
        return Err(Error::NonPositiveDenominator {
            what: "1 - average_discount_fraction",
            value: list_share,
        });
    }
    let average_selling_price = price.component_cost / asp_share;
    Ok(PriceQuote {
        average_selling_price,
        list_price: average_selling_price / list_share,
    })
}
