//! Production-cost and attack-economics models for smart-card integrated circuits.
//!
//! The crate is `no_std` (it needs `alloc` for sweeps and attack profiles) and
//! contains only pure functions over value types:
//!
//! - [`wafer`]: dice-per-wafer geometry, negative-binomial die yield, fab output
//! - [`cost`]: die cost, total chip cost, full breakdowns and the list-price chain
//! - [`scenario`]: security overlays, baseline/variant comparisons, wafer
//!   transitions and one-at-a-time sensitivity sweeps
//! - [`security`]: attack development cost, expected losses, break-even and
//!   residual-risk verdicts
//!
//! Units are fixed throughout: millimetres, mm², defects per mm² and EUR.
#![no_std]

extern crate alloc;

pub mod cost;
pub mod error;
pub mod rounding;
pub mod scenario;
pub mod security;
pub mod wafer;

pub use cost::{
    die_cost, full_breakdown, list_price, total_chip_cost, CostBreakdown, PriceModel, PriceQuote,
};
pub use error::{Error, Result};
pub use rounding::RoundingMode;
pub use scenario::{
    apply_overlay, compare, overlay_comparison, sensitivity_sweep, wafer_transition,
    ScenarioComparison, SecurityOverlay, SweepParameter, SweepRow, WaferTransition,
};
pub use security::{
    attack_cost, break_even, expected_loss, replacement_event_cost, security_worth_it,
    AttackProfile, AttackVerdict, EquipmentItem, LossModel, ReplacementEvent, RiskVerdict,
    WorthItInputs,
};
pub use wafer::{
    dice_per_wafer, dice_per_wafer_exact, die_yield, good_chips_per_wafer, weekly_output,
    weekly_output_paper_convention, DieSpec, WaferSpec, WeeklyOutput,
};
