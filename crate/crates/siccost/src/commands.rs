//! Subcommands: each turns a loaded scenario into a [`Report`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use siccost_core::cost::paper_weekly_output;
use siccost_core::security::DEFAULT_RATIONALITY_THRESHOLD;
use siccost_core::{
    attack_cost, break_even, expected_loss, full_breakdown, list_price, overlay_comparison,
    replacement_event_cost, security_worth_it, sensitivity_sweep, wafer_transition,
    CostBreakdown, LossModel, PriceModel, RoundingMode, SweepParameter, WorthItInputs,
};

use crate::error::CliError;
use crate::report::{Cell, Provenance, Report, Table};
use crate::scenario::LoadedScenario;
use crate::TOOL_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Cost,
    Overlay,
    Transition,
    Sweep,
    Attack,
    WorthIt,
}

impl Subcommand {
    pub const ALL: [Subcommand; 6] = [
        Subcommand::Cost,
        Subcommand::Overlay,
        Subcommand::Transition,
        Subcommand::Sweep,
        Subcommand::Attack,
        Subcommand::WorthIt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Cost => "cost",
            Subcommand::Overlay => "overlay",
            Subcommand::Transition => "transition",
            Subcommand::Sweep => "sweep",
            Subcommand::Attack => "attack",
            Subcommand::WorthIt => "worth-it",
        }
    }
}

impl fmt::Display for Subcommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Subcommand {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Subcommand::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown subcommand `{s}`")))
    }
}

/// Command-line options that shape a run.
#[derive(Debug, Clone, Default)]
pub struct Flags {
    pub rounding: Option<RoundingMode>,
    /// Selects one named overlay/attack/assessment, or the transition target.
    pub variant: Option<String>,
    pub sweep_parameter: Option<String>,
    pub sweep_values: Vec<f64>,
    pub rationality_threshold: Option<f64>,
}

pub fn run_subcommand(
    command: Subcommand,
    scenario: &LoadedScenario,
    flags: &Flags,
) -> Result<Report, CliError> {
    let rounding = flags
        .rounding
        .or(scenario.file.options.rounding_mode)
        .unwrap_or_default();
    let mut ctx = Context {
        report: Report {
            title: format!("siccost {command}: {}", scenario.name),
            provenance: Provenance {
                subcommand: command.name().into(),
                scenario: scenario.name.clone(),
                input_digests: vec![scenario.digest.clone()],
                tool_version: TOOL_VERSION.into(),
                rounding_mode: rounding,
            },
            tables: Vec::new(),
            assumptions: Vec::new(),
            notes: Vec::new(),
        },
        scenario,
        flags,
        rounding,
        command,
    };
    match command {
        Subcommand::Cost => ctx.cost()?,
        Subcommand::Overlay => ctx.overlay()?,
        Subcommand::Transition => ctx.transition()?,
        Subcommand::Sweep => ctx.sweep()?,
        Subcommand::Attack => ctx.attack()?,
        Subcommand::WorthIt => ctx.worth_it()?,
    }
    if rounding == RoundingMode::Paper {
        ctx.report.notes.push(
            "paper rounding: die cost rounded to 0.001 EUR before the total; totals compared in whole cents"
                .into(),
        );
    }
    Ok(ctx.report)
}

const BREAKDOWN_COLUMNS: [&str; 13] = [
    "config",
    "dice_per_wafer",
    "die_yield",
    "die_cost_eur",
    "die_cost_applied_eur",
    "testing_cost_eur",
    "packaging_cost_eur",
    "final_test_yield",
    "total_chip_cost_eur",
    "total_chip_cost_reported_eur",
    "good_chips_per_wafer",
    "weekly_output_min",
    "weekly_output_max",
];

fn breakdown_row(config: &str, b: &CostBreakdown) -> Vec<Cell> {
    let reported = match b.rounding {
        RoundingMode::Exact => Cell::Money(b.reported_total()),
        RoundingMode::Paper => Cell::Cents(b.reported_total()),
    };
    vec![
        Cell::text(config),
        Cell::int(b.dice_per_wafer),
        Cell::Fraction(b.die_yield),
        Cell::Money(b.die_cost),
        Cell::Money(b.die_cost_applied()),
        Cell::Money(b.testing_cost),
        Cell::Money(b.packaging_cost),
        Cell::Fraction(b.final_test_yield),
        Cell::Money(b.total_chip_cost),
        reported,
        Cell::int(b.good_chips_per_wafer),
        Cell::int(b.weekly_output_min),
        Cell::int(b.weekly_output_max),
    ]
}

/// Select entries of a named section: all of them, or the one `--variant` names.
fn select<'a, T>(
    section: &'a BTreeMap<String, T>,
    section_name: &str,
    variant: Option<&str>,
) -> Result<Vec<(&'a String, &'a T)>, CliError> {
    match variant {
        Some(name) => section
            .get_key_value(name)
            .map(|kv| vec![kv])
            .ok_or_else(|| {
                CliError::Usage(format!("no entry `{name}` under `{section_name}`"))
            }),
        None if section.is_empty() => Err(CliError::Usage(format!(
            "scenario has no `{section_name}` section"
        ))),
        None => Ok(section.iter().collect()),
    }
}

struct Context<'a> {
    report: Report,
    scenario: &'a LoadedScenario,
    flags: &'a Flags,
    rounding: RoundingMode,
    command: Subcommand,
}

impl Context<'_> {
    fn domain(&self, what: &str, err: siccost_core::Error) -> CliError {
        CliError::domain(format!("{} ({what})", self.command), err)
    }

    fn baseline(&self) -> Result<CostBreakdown, CliError> {
        let f = &self.scenario.file;
        full_breakdown(&f.wafer, &f.die, self.rounding).map_err(|e| self.domain("baseline", e))
    }

    fn cost(&mut self) -> Result<(), CliError> {
        let f = &self.scenario.file;
        let b = self.baseline()?;
        let mut table = Table::new("cost_breakdown", &BREAKDOWN_COLUMNS);
        table.push(breakdown_row(&self.scenario.name, &b));
        self.report.tables.push(table);

        let rounded = paper_weekly_output(&b, &f.wafer);
        let mut weekly = Table::new(
            "weekly_output",
            &["convention", "good_chips_per_wafer", "weekly_output_min", "weekly_output_max"],
        );
        weekly.push(vec![
            Cell::text("exact"),
            Cell::int(b.good_chips_per_wafer),
            Cell::int(b.weekly_output_min),
            Cell::int(b.weekly_output_max),
        ]);
        weekly.push(vec![
            Cell::text("floor_to_hundred"),
            Cell::int(b.good_chips_per_wafer / 100 * 100),
            Cell::int(rounded.min),
            Cell::int(rounded.max),
        ]);
        self.report.tables.push(weekly);
        self.report.notes.push(format!(
            "floor_to_hundred quotes {} good chips per wafer as {}",
            b.good_chips_per_wafer,
            b.good_chips_per_wafer / 100 * 100
        ));

        if let Some(price) = &f.price {
            let model = PriceModel {
                component_cost: b.reported_total(),
                direct_cost_fraction: price.direct_cost_fraction,
                gross_margin_fraction: price.gross_margin_fraction,
                average_discount_fraction: price.average_discount_fraction,
            };
            let quote = list_price(&model).map_err(|e| self.domain("list_price", e))?;
            let mut t = Table::new(
                "price",
                &[
                    "component_cost_eur",
                    "direct_cost_fraction",
                    "gross_margin_fraction",
                    "average_discount_fraction",
                    "average_selling_price_eur",
                    "list_price_eur",
                ],
            );
            t.push(vec![
                Cell::Money(model.component_cost),
                Cell::Fraction(model.direct_cost_fraction),
                Cell::Fraction(model.gross_margin_fraction),
                Cell::Fraction(model.average_discount_fraction),
                Cell::Money(quote.average_selling_price),
                Cell::Money(quote.list_price),
            ]);
            self.report.tables.push(t);
            self.report.assumptions.push(
                "price fractions (direct cost, gross margin, average discount) are user-supplied and unvalidated"
                    .into(),
            );
        }
        Ok(())
    }

    fn overlay(&mut self) -> Result<(), CliError> {
        let f = &self.scenario.file;
        let selected = select(&f.overlays, "overlays", self.flags.variant.as_deref())?;
        let baseline = self.baseline()?;
        let mut breakdowns = Table::new("cost_breakdown", &BREAKDOWN_COLUMNS);
        breakdowns.push(breakdown_row("baseline", &baseline));
        let mut comparisons = Table::new(
            "overlay_comparison",
            &[
                "overlay",
                "area_increase_fraction",
                "baseline_total_eur",
                "variant_total_eur",
                "absolute_delta_eur",
                "relative_delta",
                "magnitude_transfer_ratio",
                "rd_additional_cost_eur",
                "time_to_market_delay_months",
            ],
        );
        let total_cell = |v: f64| match self.rounding {
            RoundingMode::Exact => Cell::Money(v),
            RoundingMode::Paper => Cell::Cents(v),
        };
        for (name, overlay) in selected {
            let c = overlay_comparison(&f.wafer, &f.die, overlay, self.rounding)
                .map_err(|e| self.domain(&format!("overlay `{name}`"), e))?;
            breakdowns.push(breakdown_row(name, &c.variant));
            comparisons.push(vec![
                Cell::text(name.as_str()),
                Cell::Fraction(overlay.area_increase_fraction),
                total_cell(c.baseline_total),
                total_cell(c.variant_total),
                total_cell(c.absolute_delta),
                Cell::Number(c.relative_delta),
                Cell::number_opt(c.magnitude_transfer_ratio),
                Cell::Money(overlay.rd_additional_cost),
                Cell::Number(overlay.time_to_market_delay_months),
            ]);
        }
        self.report.tables.push(breakdowns);
        self.report.tables.push(comparisons);
        self.report.notes.push(
            "R&D lump sums and time-to-market delays are reported as given and not amortized into the chip cost"
                .into(),
        );
        Ok(())
    }

    fn transition(&mut self) -> Result<(), CliError> {
        let target_name = self.flags.variant.as_deref().ok_or_else(|| {
            CliError::Usage("transition needs --variant <scenario path or name>".into())
        })?;
        let target = self.scenario.resolve_sibling(target_name)?;
        self.report.provenance.input_digests.push(target.digest.clone());
        self.report.title = format!(
            "siccost transition: {} -> {}",
            self.scenario.name, target.name
        );
        let base = &self.scenario.file;
        let var = &target.file;
        let t = wafer_transition(
            (&base.wafer, &base.die),
            (&var.wafer, &var.die),
            self.rounding,
        )
        .map_err(|e| self.domain("wafer_transition", e))?;
        let c = &t.comparison;

        let mut breakdowns = Table::new("cost_breakdown", &BREAKDOWN_COLUMNS);
        breakdowns.push(breakdown_row(&self.scenario.name, &c.baseline));
        breakdowns.push(breakdown_row(&target.name, &c.variant));
        self.report.tables.push(breakdowns);

        let total_cell = |v: f64| match self.rounding {
            RoundingMode::Exact => Cell::Money(v),
            RoundingMode::Paper => Cell::Cents(v),
        };
        let mut cmp = Table::new(
            "transition",
            &[
                "baseline_total_eur",
                "variant_total_eur",
                "absolute_delta_eur",
                "relative_delta",
            ],
        );
        cmp.push(vec![
            total_cell(c.baseline_total),
            total_cell(c.variant_total),
            total_cell(c.absolute_delta),
            Cell::Number(c.relative_delta),
        ]);
        self.report.tables.push(cmp);

        let mut weekly = Table::new(
            "weekly_output",
            &[
                "convention",
                "baseline_min",
                "baseline_max",
                "variant_min",
                "variant_max",
                "ratio_min",
                "ratio_max",
            ],
        );
        let ratio = |v: u64, b: u64| (b > 0).then(|| v as f64 / b as f64);
        for (label, b, v) in [
            ("exact", t.baseline_weekly, t.variant_weekly),
            (
                "floor_to_hundred",
                t.baseline_weekly_rounded,
                t.variant_weekly_rounded,
            ),
        ] {
            weekly.push(vec![
                Cell::text(label),
                Cell::int(b.min),
                Cell::int(b.max),
                Cell::int(v.min),
                Cell::int(v.max),
                Cell::number_opt(ratio(v.min, b.min)),
                Cell::number_opt(ratio(v.max, b.max)),
            ]);
        }
        self.report.tables.push(weekly);
        self.report
            .notes
            .push("fab retooling cost for the wafer-size transition is not modeled".into());
        Ok(())
    }

    fn sweep(&mut self) -> Result<(), CliError> {
        let name = self
            .flags
            .sweep_parameter
            .as_deref()
            .ok_or_else(|| CliError::Usage("sweep needs --param <name>".into()))?;
        let parameter: SweepParameter = name
            .parse()
            .map_err(|e: siccost_core::scenario::UnknownSweepParameter| {
                CliError::Usage(e.to_string())
            })?;
        if self.flags.sweep_values.is_empty() {
            return Err(CliError::Usage("sweep needs --values v1,v2,...".into()));
        }
        let f = &self.scenario.file;
        let rows = sensitivity_sweep(
            &f.wafer,
            &f.die,
            parameter,
            &self.flags.sweep_values,
            self.rounding,
        )
        .map_err(|e| self.domain("sensitivity_sweep", e))?;
        let mut table = Table::new(
            "sweep",
            &[
                "parameter",
                "value",
                "total_chip_cost_eur",
                "relative_delta",
                "elasticity",
            ],
        );
        for row in &rows {
            table.push(vec![
                Cell::text(parameter.name()),
                Cell::Number(row.value),
                Cell::Money(row.breakdown.total_chip_cost),
                Cell::number_opt(row.relative_delta),
                Cell::number_opt(row.elasticity),
            ]);
        }
        self.report.tables.push(table);
        self.report.notes.push(format!(
            "deltas and elasticities are relative to the first swept value ({})",
            Cell::Number(self.flags.sweep_values[0]).render()
        ));
        Ok(())
    }

    fn loss_table(&mut self, losses: &[(&String, &LossModel)]) -> Result<(), CliError> {
        let mut table = Table::new(
            "expected_loss",
            &[
                "loss",
                "deployed_units",
                "exploited_fraction",
                "loss_per_exploited_unit",
                "direct_loss",
                "replacement_cost",
                "expected_loss",
            ],
        );
        for (name, model) in losses {
            let replacement = match &model.replacement {
                Some(e) => Some(
                    replacement_event_cost(e)
                        .map_err(|err| self.domain(&format!("loss `{name}`"), err))?,
                ),
                None => None,
            };
            let total =
                expected_loss(model).map_err(|e| self.domain(&format!("loss `{name}`"), e))?;
            table.push(vec![
                Cell::text(name.as_str()),
                Cell::int(model.deployed_units),
                Cell::Fraction(model.exploited_fraction),
                Cell::Money(model.loss_per_exploited_unit),
                Cell::Money(model.direct_loss()),
                Cell::money_opt(replacement),
                Cell::Money(total),
            ]);
            self.report.assumptions.push(format!(
                "losses.{name}: loss per exploited unit ({} EUR) is a user-supplied assumption",
                Cell::Money(model.loss_per_exploited_unit).render()
            ));
        }
        self.report.tables.push(table);
        Ok(())
    }

    fn attack(&mut self) -> Result<(), CliError> {
        let f = &self.scenario.file;
        let attacks = select(&f.attacks, "attacks", self.flags.variant.as_deref())?;
        let threshold = self
            .flags
            .rationality_threshold
            .or(f.options.rationality_threshold)
            .unwrap_or(DEFAULT_RATIONALITY_THRESHOLD);

        let mut costs = Table::new(
            "attack_cost",
            &[
                "attack",
                "equipment_eur",
                "labour_eur",
                "materials_eur",
                "infrastructure_eur",
                "attack_total_cost",
            ],
        );
        for (name, profile) in &attacks {
            let total =
                attack_cost(profile).map_err(|e| self.domain(&format!("attack `{name}`"), e))?;
            costs.push(vec![
                Cell::text(name.as_str()),
                Cell::Money(profile.equipment_total()),
                Cell::Money(profile.labour_cost()),
                Cell::Money(profile.materials_cost()),
                Cell::Money(profile.infrastructure_cost),
                Cell::Money(total),
            ]);
        }
        self.report.tables.push(costs);

        let losses: Vec<_> = f.losses.iter().collect();
        self.loss_table(&losses)?;

        let mut verdicts = Table::new(
            "break_even",
            &[
                "attack",
                "loss",
                "attack_total_cost",
                "expected_gain_or_loss",
                "feasibility_ratio",
                "rationality_threshold",
                "verdict",
            ],
        );
        for (attack_name, profile) in &attacks {
            for (loss_name, model) in &losses {
                // replacement costs fall on the issuer, not the attacker
                let gain = model.direct_loss();
                let v = break_even(profile, gain, threshold)
                    .map_err(|e| self.domain(&format!("attack `{attack_name}`"), e))?;
                verdicts.push(vec![
                    Cell::text(attack_name.as_str()),
                    Cell::text(loss_name.as_str()),
                    Cell::money_opt(v.attack_total_cost),
                    Cell::Money(v.expected_gain_or_loss),
                    Cell::number_opt(v.feasibility_ratio),
                    Cell::Number(threshold),
                    v.verdict
                        .map_or(Cell::Undefined, |v| Cell::text(v.as_str())),
                ]);
            }
        }
        self.report.tables.push(verdicts);
        self.report.assumptions.push(format!(
            "an attack counts as rational only when expected gain / attack cost exceeds {} (configurable)",
            Cell::Number(threshold).render()
        ));
        self.report.notes.push(
            "the attacker's expected gain is the direct fraud loss of each loss model; replacement costs are excluded".into(),
        );
        Ok(())
    }

    fn worth_it(&mut self) -> Result<(), CliError> {
        let f = &self.scenario.file;
        let selected = select(&f.assessments, "assessments", self.flags.variant.as_deref())?;
        let mut referenced: BTreeMap<&String, &LossModel> = BTreeMap::new();
        for (_, a) in &selected {
            for name in [&a.loss_without, &a.loss_with] {
                let (k, v) = f.losses.get_key_value(name).ok_or_else(|| {
                    CliError::validation(format!("losses.{name}"), "missing loss section")
                })?;
                referenced.insert(k, v);
            }
        }
        let losses: Vec<_> = referenced.into_iter().collect();
        self.loss_table(&losses)?;

        let mut table = Table::new(
            "security_assessment",
            &[
                "assessment",
                "security_added_cost",
                "risk_without",
                "residual_risk",
                "risk_reduction",
                "expected_gain_or_loss",
                "acceptable_risk",
                "risk_acceptable",
            ],
        );
        for (name, a) in selected {
            let inputs = WorthItInputs {
                security_added_cost: a.security_added_cost,
                loss_without: f.losses[&a.loss_without].clone(),
                loss_with: f.losses[&a.loss_with].clone(),
                success_prob_without: a.success_prob_without,
                success_prob_with: a.success_prob_with,
                acceptable_risk: a.acceptable_risk,
            };
            let v = security_worth_it(&inputs)
                .map_err(|e| self.domain(&format!("assessment `{name}`"), e))?;
            let residual = v.residual_risk.unwrap_or(0.0);
            let risk_without = a.success_prob_without
                * expected_loss(&inputs.loss_without)
                    .map_err(|e| self.domain(&format!("assessment `{name}`"), e))?;
            let risk_reduction = risk_without - residual;
            table.push(vec![
                Cell::text(name.as_str()),
                Cell::Money(a.security_added_cost),
                Cell::Money(risk_without),
                Cell::Money(residual),
                Cell::Money(risk_reduction),
                Cell::Money(v.expected_gain_or_loss),
                Cell::Money(a.acceptable_risk),
                v.risk_acceptable.map_or(Cell::Undefined, Cell::Bool),
            ]);
            self.report.assumptions.push(format!(
                "assessments.{name}: attack success probabilities ({} without, {} with) are user-supplied point estimates",
                Cell::Fraction(a.success_prob_without).render(),
                Cell::Fraction(a.success_prob_with).render()
            ));
        }
        self.report.tables.push(table);
        Ok(())
    }
}
