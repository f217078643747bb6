mod common;

use common::*;
use proptest::prelude::*;
use siccost_core::*;

fn wafer_strategy() -> impl Strategy<Value = WaferSpec> {
    (
        100.0..=450.0f64,
        0.0..=5000.0f64,
        0.05..=1.0f64,
        1e-5..=0.5f64,
        1u32..=40,
        0u32..=100,
        0u64..=5000,
        0u64..=5000,
    )
        .prop_map(|(diameter, cost, wy, d, a, test, w0, extra)| WaferSpec {
            diameter,
            wafer_cost: cost,
            wafer_yield: wy,
            defect_density: d,
            masking_levels: a,
            test_dice_per_wafer: test,
            wafers_per_week_min: w0,
            wafers_per_week_max: w0 + extra,
        })
}

fn die_strategy() -> impl Strategy<Value = DieSpec> {
    (1.0..=200.0f64, 0.0..=1.0f64, 0.0..=1.0f64, 0.5..=1.0f64).prop_map(
        |(area, t, p, fty)| DieSpec {
            die_area: area,
            testing_cost: t,
            packaging_cost: p,
            final_test_yield: fty,
        },
    )
}

fn area_grid() -> Vec<f64> {
    // 100 points over [1, 500] mm²
    (0..100).map(|i| 1.0 + 499.0 * i as f64 / 99.0).collect()
}

#[test]
fn dice_count_non_increasing_in_area() {
    for diameter in [200.0, 300.0, 450.0] {
        let mut w = wafer_300();
        w.diameter = diameter;
        let counts: Vec<u64> = area_grid()
            .into_iter()
            .map(|a| {
                dice_per_wafer(
                    &w,
                    &DieSpec {
                        die_area: a,
                        ..die_300()
                    },
                )
                .unwrap()
            })
            .collect();
        assert!(counts.windows(2).all(|p| p[1] <= p[0]), "{diameter} mm");
    }
}

#[test]
fn total_cost_non_decreasing_in_area() {
    for mode in [RoundingMode::Exact, RoundingMode::Paper] {
        let rows = sensitivity_sweep(
            &wafer_300(),
            &die_300(),
            SweepParameter::DieArea,
            &area_grid(),
            mode,
        )
        .unwrap();
        assert_eq!(rows.len(), 100);
        assert!(rows
            .windows(2)
            .all(|p| p[1].breakdown.total_chip_cost >= p[0].breakdown.total_chip_cost));
    }
}

#[test]
fn paper_and_exact_totals_are_close() {
    for (w, d) in [
        (wafer_300(), die_300()),
        (wafer_300(), die_300_secure()),
        (wafer_450(), die_450()),
    ] {
        let exact = full_breakdown(&w, &d, RoundingMode::Exact).unwrap();
        let paper = full_breakdown(&w, &d, RoundingMode::Paper).unwrap();
        assert!((exact.total_chip_cost - paper.total_chip_cost).abs() < 0.001);
    }
}

#[test]
fn weekly_output_more_than_doubles() {
    let t = wafer_transition(
        (&wafer_300(), &die_300()),
        (&wafer_450(), &die_450()),
        RoundingMode::Paper,
    )
    .unwrap();
    let (lo, hi) = t.weekly_ratio();
    assert!(lo.unwrap() > 2.0 && hi.unwrap() > 2.0);
    let r = t.variant_weekly_rounded.min as f64 / t.baseline_weekly_rounded.min as f64;
    assert!(r > 2.0);
}

proptest! {
    #[test]
    fn yield_strictly_decreasing_in_defects_and_area(
        w in wafer_strategy(), d in die_strategy(), step in 1.01..3.0f64,
    ) {
        let y = die_yield(&w, &d).unwrap();
        let denser = WaferSpec { defect_density: w.defect_density * step, ..w.clone() };
        prop_assert!(die_yield(&denser, &d).unwrap() < y);
        let bigger = DieSpec { die_area: d.die_area * step, ..d.clone() };
        prop_assert!(die_yield(&w, &bigger).unwrap() < y);
        prop_assert!(y > 0.0 && y <= w.wafer_yield);
    }

    #[test]
    fn yield_non_increasing_in_masking_levels(
        w in wafer_strategy(), d in die_strategy(), extra in 1u32..100,
    ) {
        let more = WaferSpec { masking_levels: w.masking_levels + extra, ..w.clone() };
        prop_assert!(die_yield(&more, &d).unwrap() <= die_yield(&w, &d).unwrap());
    }

    /// (d, A) -> (k·d, k²·A) leaves the closed-form dice count unchanged.
    #[test]
    fn dice_count_scale_invariant(w in wafer_strategy(), d in die_strategy(), k in 0.25..4.0f64) {
        let scaled_w = WaferSpec { diameter: w.diameter * k, ..w.clone() };
        let scaled_d = DieSpec { die_area: d.die_area * k * k, ..d.clone() };
        let a = dice_per_wafer_exact(&w, &d).unwrap();
        let b = dice_per_wafer_exact(&scaled_w, &scaled_d).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
    }

    #[test]
    fn good_chips_never_exceed_dice(w in wafer_strategy(), d in die_strategy()) {
        if let Ok(dice) = dice_per_wafer(&w, &d) {
            prop_assert!(good_chips_per_wafer(&w, &d).unwrap() <= dice);
        }
    }

    #[test]
    fn die_cost_homogeneous(cost in 1.0..5000.0f64, dice in 1u64..100_000, y in 0.01..1.0f64, k in 0.01..100.0f64) {
        let base = die_cost(cost, dice, y).unwrap();
        let scaled = die_cost(k * cost, dice, y).unwrap();
        prop_assert!(((scaled - k * base) / (k * base)).abs() < 1e-14);
    }

    #[test]
    fn total_cost_monotone(dc in 0.0..2.0f64, d in die_strategy(), bump in 0.001..0.5f64) {
        let t = total_chip_cost(dc, &d).unwrap();
        if d.final_test_yield > 0.5 + bump {
            let worse = DieSpec { final_test_yield: d.final_test_yield - bump, ..d.clone() };
            prop_assert!(total_chip_cost(dc, &worse).unwrap() > t);
        }
        prop_assert!(total_chip_cost(dc + bump, &d).unwrap() > t);
        let tc = DieSpec { testing_cost: d.testing_cost + bump, ..d.clone() };
        prop_assert!(total_chip_cost(dc, &tc).unwrap() > t);
        let pc = DieSpec { packaging_cost: d.packaging_cost + bump, ..d.clone() };
        prop_assert!(total_chip_cost(dc, &pc).unwrap() > t);
        prop_assert!(t >= dc);
    }

    #[test]
    fn exact_breakdown_is_manual_composition(w in wafer_strategy(), d in die_strategy()) {
        if let Ok(b) = full_breakdown(&w, &d, RoundingMode::Exact) {
            let dice = dice_per_wafer(&w, &d).unwrap();
            let y = die_yield(&w, &d).unwrap();
            let dc = die_cost(w.wafer_cost, dice, y).unwrap();
            let total = total_chip_cost(dc, &d).unwrap();
            prop_assert_eq!(b.dice_per_wafer, dice);
            prop_assert_eq!(b.die_yield.to_bits(), y.to_bits());
            prop_assert_eq!(b.die_cost.to_bits(), dc.to_bits());
            prop_assert_eq!(b.total_chip_cost.to_bits(), total.to_bits());
            prop_assert!(b.total_chip_cost >= b.die_cost);
        }
    }

    #[test]
    fn list_price_ordering(c in 0.0..10.0f64, direct in 0.0..0.45f64, margin in 0.0..0.45f64, disc in 0.0..0.9f64) {
        let q = list_price(&PriceModel {
            component_cost: c,
            direct_cost_fraction: direct,
            gross_margin_fraction: margin,
            average_discount_fraction: disc,
        }).unwrap();
        prop_assert!(q.list_price >= q.average_selling_price);
        prop_assert!(q.average_selling_price >= c);
    }

    #[test]
    fn zero_overlay_identity(w in wafer_strategy(), d in die_strategy()) {
        let (w2, d2) = apply_overlay(&w, &d, &SecurityOverlay::default()).unwrap();
        prop_assert_eq!(w2, w);
        prop_assert_eq!(d2, d);
    }

    #[test]
    fn compare_antisymmetric(a1 in 0.1..1.0f64, a2 in 0.1..1.0f64, paper in any::<bool>()) {
        let mode = if paper { RoundingMode::Paper } else { RoundingMode::Exact };
        let mk = |area: f64| full_breakdown(&wafer_300(), &DieSpec { die_area: area * 20.0, ..die_300() }, mode).unwrap();
        let (x, y) = (mk(a1), mk(a2));
        let ab = compare(&x, &y, mode).unwrap();
        let ba = compare(&y, &x, mode).unwrap();
        prop_assert_eq!(ab.absolute_delta, -ba.absolute_delta);
    }

    #[test]
    fn sweep_independent_of_order(values in proptest::collection::vec(2.0..50.0f64, 1..12)) {
        let run = |vals: &[f64]| {
            let mut rows: Vec<(f64, CostBreakdown)> = sensitivity_sweep(
                &wafer_300(), &die_300(), SweepParameter::DieArea, vals, RoundingMode::Exact,
            )
            .unwrap()
            .into_iter()
            .map(|r| (r.value, r.breakdown))
            .collect();
            rows.sort_by(|a, b| a.0.total_cmp(&b.0));
            rows
        };
        let mut reversed = values.clone();
        reversed.reverse();
        prop_assert_eq!(run(&values), run(&reversed));
    }

    #[test]
    fn attack_cost_additive(equip in 0.0..1e6f64, experts in 0u32..10, salary in 0.0..1e5f64,
                            years in 0.0..5.0f64, unit in 0.0..100.0f64, chips in 0u64..100_000, infra in 0.0..1e6f64) {
        let equipment = AttackProfile {
            equipment_items: vec![EquipmentItem { label: "kit".into(), cost: equip }],
            ..Default::default()
        };
        let labour = AttackProfile { expert_count: experts, expert_annual_salary: salary, duration_years: years, ..Default::default() };
        let materials = AttackProfile { target_chip_unit_cost: unit, target_chips_needed: chips, ..Default::default() };
        let infrastructure = AttackProfile { infrastructure_cost: infra, ..Default::default() };
        let merged = AttackProfile {
            equipment_items: equipment.equipment_items.clone(),
            expert_count: experts,
            expert_annual_salary: salary,
            duration_years: years,
            target_chip_unit_cost: unit,
            target_chips_needed: chips,
            infrastructure_cost: infra,
        };
        let parts: f64 = [&equipment, &labour, &materials, &infrastructure]
            .iter()
            .map(|p| attack_cost(p).unwrap())
            .sum();
        let whole = attack_cost(&merged).unwrap();
        prop_assert!((whole - parts).abs() <= 1e-9 * whole.max(1.0));
    }

    #[test]
    fn expected_loss_linear(units in 0u64..1_000_000_000, frac in 0.0..0.5f64, loss in 0.0..100.0f64, k in 1u64..3) {
        let m = LossModel { deployed_units: units, exploited_fraction: frac, loss_per_exploited_unit: loss, replacement: None };
        let base = expected_loss(&m).unwrap();
        let tol = |x: f64| 1e-12 * x.max(1.0);
        let kf = k as f64;
        let u = expected_loss(&LossModel { deployed_units: units * k, ..m.clone() }).unwrap();
        prop_assert!((u - kf * base).abs() <= tol(u));
        let f = expected_loss(&LossModel { exploited_fraction: frac * kf, ..m.clone() }).unwrap();
        prop_assert!((f - kf * base).abs() <= tol(f));
        let l = expected_loss(&LossModel { loss_per_exploited_unit: loss * kf, ..m.clone() }).unwrap();
        prop_assert!((l - kf * base).abs() <= tol(l));
        prop_assert!(base >= 0.0);
    }

    #[test]
    fn break_even_scale_invariant(cost in 1.0..1e7f64, gain in 0.0..1e8f64, k in prop::sample::select(vec![0.5, 2.0, 4.0, 1024.0])) {
        // power-of-two scalings keep the ratio bit-identical
        let p = |c: f64| AttackProfile { infrastructure_cost: c, ..Default::default() };
        let a = break_even(&p(cost), gain, 1.0).unwrap();
        let b = break_even(&p(cost * k), gain * k, 1.0).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert!(a.feasibility_ratio.unwrap() >= 0.0);
    }

    #[test]
    fn worth_it_monotone_in_success_probability(p_with in 0.0..1.0f64, bump in 0.0..1.0f64, budget in 0.0..1e8f64, loss in 0.0..1e8f64) {
        let model = LossModel { deployed_units: 1, exploited_fraction: 1.0, loss_per_exploited_unit: loss, replacement: None };
        let inputs = WorthItInputs {
            security_added_cost: 1e6,
            loss_without: model.clone(),
            loss_with: model,
            success_prob_without: 1.0,
            success_prob_with: p_with,
            acceptable_risk: budget,
        };
        let low = security_worth_it(&inputs).unwrap();
        let high = security_worth_it(&WorthItInputs { success_prob_with: (p_with + bump).min(1.0), ..inputs }).unwrap();
        prop_assert!(!(low.risk_acceptable == Some(false) && high.risk_acceptable == Some(true)));
        prop_assert!(low.residual_risk.unwrap() >= 0.0);
    }
}
