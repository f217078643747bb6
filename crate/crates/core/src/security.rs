//! Attack development cost, expected losses and risk verdicts.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{require_non_negative, require_unit_interval, Error, Result};

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct EquipmentItem {
    pub label: String,
    /// EUR.
    pub cost: f64,
}

/// What it takes to develop an attack against a chip.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields, default))]
pub struct AttackProfile {
    pub equipment_items: Vec<EquipmentItem>,
    pub expert_count: u32,
    /// EUR per expert per year.
    pub expert_annual_salary: f64,
    pub duration_years: f64,
    /// EUR per sample chip bought for the attack.
    pub target_chip_unit_cost: f64,
    pub target_chips_needed: u64,
    pub infrastructure_cost: f64,
}

impl AttackProfile {
    pub fn validate(&self) -> Result<()> {
        for item in &self.equipment_items {
            require_non_negative("equipment_items.cost", item.cost)?;
        }
        require_non_negative("expert_annual_salary", self.expert_annual_salary)?;
        require_non_negative("duration_years", self.duration_years)?;
        require_non_negative("target_chip_unit_cost", self.target_chip_unit_cost)?;
        require_non_negative("infrastructure_cost", self.infrastructure_cost)
    }

    pub fn equipment_total(&self) -> f64 {
        self.equipment_items.iter().map(|i| i.cost).sum()
    }

    pub fn labour_cost(&self) -> f64 {
        self.expert_count as f64 * self.expert_annual_salary * self.duration_years
    }

    pub fn materials_cost(&self) -> f64 {
        self.target_chips_needed as f64 * self.target_chip_unit_cost
    }
}

/// Equipment + labour + sample chips + infrastructure, in EUR.
pub fn attack_cost(profile: &AttackProfile) -> Result<f64> {
    profile.validate()?;
    Ok(profile.equipment_total()
        + profile.labour_cost()
        + profile.materials_cost()
        + profile.infrastructure_cost)
}

/// Worst-case response to a broken card system: reissue, downtime and
/// terminal replacement.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields, default))]
pub struct ReplacementEvent {
    pub units_to_reissue: u64,
    pub reissue_cost_per_unit: f64,
    pub downtime_months: f64,
    pub revenue_loss_per_month: f64,
    pub terminal_replacement_cost: f64,
}

impl ReplacementEvent {
    pub fn validate(&self) -> Result<()> {
        require_non_negative("reissue_cost_per_unit", self.reissue_cost_per_unit)?;
        require_non_negative("downtime_months", self.downtime_months)?;
        require_non_negative("revenue_loss_per_month", self.revenue_loss_per_month)?;
        require_non_negative("terminal_replacement_cost", self.terminal_replacement_cost)
    }
}

pub fn replacement_event_cost(event: &ReplacementEvent) -> Result<f64> {
    event.validate()?;
    Ok(event.units_to_reissue as f64 * event.reissue_cost_per_unit
        + event.downtime_months * event.revenue_loss_per_month
        + event.terminal_replacement_cost)
}

/// Losses from a deployed population of chips when an attack succeeds.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct LossModel {
    pub deployed_units: u64,
    pub exploited_fraction: f64,
    /// EUR per exploited unit; any brand damage has to be folded in here.
    pub loss_per_exploited_unit: f64,
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub replacement: Option<ReplacementEvent>,
}

impl LossModel {
    pub fn validate(&self) -> Result<()> {
        require_unit_interval("exploited_fraction", self.exploited_fraction)?;
        require_non_negative("loss_per_exploited_unit", self.loss_per_exploited_unit)?;
        if let Some(event) = &self.replacement {
            event.validate()?;
        }
        Ok(())
    }

    pub fn direct_loss(&self) -> f64 {
        self.deployed_units as f64 * self.exploited_fraction * self.loss_per_exploited_unit
    }
}

pub fn expected_loss(model: &LossModel) -> Result<f64> {
    model.validate()?;
    let replacement = match &model.replacement {
        Some(event) => replacement_event_cost(event)?,
        None => 0.0,
    };
    Ok(model.direct_loss() + replacement)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum AttackVerdict {
    AttackRational,
    AttackIrrational,
}

impl AttackVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            AttackVerdict::AttackRational => "attack_rational",
            AttackVerdict::AttackIrrational => "attack_irrational",
        }
    }
}

impl fmt::Display for AttackVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of an attack or security assessment.
///
/// [`break_even`] fills the attacker side (cost, ratio, verdict);
/// [`security_worth_it`] fills the defender side (residual risk,
/// acceptability). `expected_gain_or_loss` is the attacker's expected gain in
/// the first case and the defender's net benefit of security in the second.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RiskVerdict {
    pub attack_total_cost: Option<f64>,
    pub expected_gain_or_loss: f64,
    pub feasibility_ratio: Option<f64>,
    pub verdict: Option<AttackVerdict>,
    pub residual_risk: Option<f64>,
    pub risk_acceptable: Option<bool>,
}

/// Default for the `rationality_threshold` of [`break_even`].
pub const DEFAULT_RATIONALITY_THRESHOLD: f64 = 1.0;

/// Attack is rational iff `expected_gain / attack_cost > threshold`.
pub fn break_even(
    attack: &AttackProfile,
    expected_gain: f64,
    rationality_threshold: f64,
) -> Result<RiskVerdict> {
    require_non_negative("expected_gain", expected_gain)?;
    require_non_negative("rationality_threshold", rationality_threshold)?;
    let cost = attack_cost(attack)?;
    if cost == 0.0 {
        return Err(Error::ZeroAttackCost);
    }
    let ratio = expected_gain / cost;
    let verdict = if ratio > rationality_threshold {
        AttackVerdict::AttackRational
    } else {
        AttackVerdict::AttackIrrational
    };
    Ok(RiskVerdict {
        attack_total_cost: Some(cost),
        expected_gain_or_loss: expected_gain,
        feasibility_ratio: Some(ratio),
        verdict: Some(verdict),
        residual_risk: None,
        risk_acceptable: None,
    })
}

/// Inputs to [`security_worth_it`].
#[derive(Debug, Clone, PartialEq)]
pub struct WorthItInputs {
    /// EUR spent on the security feature.
    pub security_added_cost: f64,
    pub loss_without: LossModel,
    pub loss_with: LossModel,
    pub success_prob_without: f64,
    pub success_prob_with: f64,
    /// Largest residual risk, in EUR, the issuer is willing to carry.
    pub acceptable_risk: f64,
}

/// Residual risk with the feature, and whether the risk it removes pays for it.
pub fn security_worth_it(inputs: &WorthItInputs) -> Result<RiskVerdict> {
    require_non_negative("security_added_cost", inputs.security_added_cost)?;
    require_unit_interval("success_prob_without", inputs.success_prob_without)?;
    require_unit_interval("success_prob_with", inputs.success_prob_with)?;
    require_non_negative("acceptable_risk", inputs.acceptable_risk)?;
    let risk_without = inputs.success_prob_without * expected_loss(&inputs.loss_without)?;
    let residual_risk = inputs.success_prob_with * expected_loss(&inputs.loss_with)?;
    let risk_reduction = risk_without - residual_risk;
    Ok(RiskVerdict {
        attack_total_cost: None,
        expected_gain_or_loss: risk_reduction - inputs.security_added_cost,
        feasibility_ratio: None,
        verdict: None,
        residual_risk: Some(residual_risk),
        risk_acceptable: Some(residual_risk <= inputs.acceptable_risk),
    })
}
