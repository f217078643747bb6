#![allow(dead_code)]

use siccost_core::{DieSpec, WaferSpec};

pub fn wafer_300() -> WaferSpec {
    WaferSpec {
        diameter: 300.0,
        wafer_cost: 2250.0,
        wafer_yield: 0.9,
        defect_density: 1e-7,
        masking_levels: 4,
        test_dice_per_wafer: 0,
        wafers_per_week_min: 5000,
        wafers_per_week_max: 8000,
    }
}

pub fn die_300() -> DieSpec {
    DieSpec {
        die_area: 10.0,
        testing_cost: 0.15,
        packaging_cost: 0.08,
        final_test_yield: 0.992,
    }
}

pub fn die_300_secure() -> DieSpec {
    DieSpec {
        die_area: 11.0,
        ..die_300()
    }
}

pub fn wafer_450() -> WaferSpec {
    WaferSpec {
        diameter: 450.0,
        wafer_cost: 3000.0,
        wafer_yield: 0.875,
        defect_density: 1.25e-7,
        ..wafer_300()
    }
}

pub fn die_450() -> DieSpec {
    DieSpec {
        die_area: 10.0,
        testing_cost: 0.2,
        packaging_cost: 0.1,
        final_test_yield: 0.985,
    }
}
