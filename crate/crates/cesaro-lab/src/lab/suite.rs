//! The built-in verification battery: one scenario per theorem direction
//! with measures chosen on either side of the required Carleson exponent.

use super::config::{
    Direction, Expected, Exponent, GridParams, ScenarioConfig, SpaceParams, TheoremId, Tolerances,
};
use super::report::{ExperimentReport, SuiteReport};
use super::scenario::{run_scenario, LabError};
use crate::measure::RadialMeasure;
use rayon::prelude::*;

fn beta(s: f64, gamma: f64) -> RadialMeasure {
    RadialMeasure::beta_log(s, gamma, 1.0).expect("suite parameters are valid")
}

fn scenario(
    name: &str,
    theorem: TheoremId,
    direction: Direction,
    expected: Expected,
    params: SpaceParams,
    measure: RadialMeasure,
) -> ScenarioConfig {
    ScenarioConfig {
        name: Some(name.to_string()),
        theorem,
        direction,
        expected,
        params,
        measure,
        truncation: 1024,
        grid: GridParams::default(),
        tolerances: Tolerances::default(),
    }
}

/// The canonical battery run by `verify` and by the acceptance suite.
pub fn builtin_suite() -> Vec<ScenarioConfig> {
    let inf = Some(Exponent(f64::INFINITY));
    let mut suite = Vec::new();

    // Hardy -> Morrey characterization, p = ∞ endpoints at λ ∈ {1/2, 1}.
    for (lam, tag) in [(0.5f64, "l05"), (1.0, "l10")] {
        let s_star = (1.0 + lam) / 2.0;
        let params = SpaceParams {
            p: inf,
            lambda: Some(lam),
            ..Default::default()
        };
        suite.push(scenario(
            &format!("t1_1_pinf_{tag}_exact"),
            TheoremId::T1_1,
            Direction::Both,
            Expected::Bounded,
            params,
            beta(s_star, 0.0),
        ));
        suite.push(scenario(
            &format!("t1_1_pinf_{tag}_stronger"),
            TheoremId::T1_1,
            Direction::Sufficiency,
            Expected::Bounded,
            params,
            beta(s_star + 0.25, 0.0),
        ));
        suite.push(scenario(
            &format!("t1_1_pinf_{tag}_weak"),
            TheoremId::T1_1,
            Direction::Necessity,
            Expected::Growing,
            params,
            beta(s_star - 0.25, 0.0),
        ));
    }

    // Same pattern at p = 2, λ = 1/2 (required exponent 1.25).
    {
        let params = SpaceParams {
            p: Some(Exponent(2.0)),
            lambda: Some(0.5),
            ..Default::default()
        };
        suite.push(scenario(
            "t1_1_p2_l05_exact",
            TheoremId::T1_1,
            Direction::Both,
            Expected::Bounded,
            params,
            beta(1.25, 0.0),
        ));
        suite.push(scenario(
            "t1_1_p2_l05_weak",
            TheoremId::T1_1,
            Direction::Necessity,
            Expected::Growing,
            params,
            beta(1.0, 0.0),
        ));
    }

    // Bloch-domain -> mean-Lipschitz characterization at p = 1, q = 2.
    {
        let params = SpaceParams {
            p: Some(Exponent(1.0)),
            q: Some(2.0),
            ..Default::default()
        };
        suite.push(scenario(
            "t1_2_p1_q2_exact",
            TheoremId::T1_2,
            Direction::Both,
            Expected::Bounded,
            params,
            beta(2.0, 0.0),
        ));
        suite.push(scenario(
            "t1_2_p1_q2_weak",
            TheoremId::T1_2,
            Direction::Necessity,
            Expected::Growing,
            params,
            beta(1.75, 0.0),
        ));
        let part2 = SpaceParams {
            p: Some(Exponent(1.0)),
            part: Some(2),
            ..Default::default()
        };
        suite.push(scenario(
            "t1_2_part2_p1_log",
            TheoremId::T1_2,
            Direction::Sufficiency,
            Expected::Bounded,
            part2,
            beta(2.0, 1.0),
        ));
    }

    // Logarithmic sensitivity: Carleson-but-not-log measures must trip the
    // log-kernel witness; the γ = 1 versions pass.
    {
        let params = SpaceParams {
            lambda: Some(0.5),
            ..Default::default()
        };
        suite.push(scenario(
            "t1_3_l05_gamma1",
            TheoremId::T1_3,
            Direction::Both,
            Expected::Bounded,
            params,
            beta(0.75, 1.0),
        ));
        suite.push(scenario(
            "t1_3_l05_gamma0",
            TheoremId::T1_3,
            Direction::Necessity,
            Expected::Growing,
            params,
            beta(0.75, 0.0),
        ));
        suite.push(scenario(
            "t1_4_gamma1",
            TheoremId::T1_4,
            Direction::Both,
            Expected::Bounded,
            SpaceParams::default(),
            beta(1.0, 1.0),
        ));
        suite.push(scenario(
            "t1_4_gamma0",
            TheoremId::T1_4,
            Direction::Necessity,
            Expected::Growing,
            SpaceParams::default(),
            beta(1.0, 0.0),
        ));
    }

    // Morrey-to-Morrey: moment witness at two (λ1, λ2) pairs.
    for (l1, l2, tag) in [(0.5f64, 0.5f64, "l0505"), (0.25, 0.75, "l025075")] {
        let s_star = 1.0 + (l2 - l1) / 2.0;
        let params = SpaceParams {
            lambda1: Some(l1),
            lambda2: Some(l2),
            ..Default::default()
        };
        suite.push(scenario(
            &format!("t1_5_{tag}_exact"),
            TheoremId::T1_5,
            Direction::Both,
            Expected::Bounded,
            params,
            beta(s_star, 0.0),
        ));
        suite.push(scenario(
            &format!("t1_5_{tag}_weak"),
            TheoremId::T1_5,
            Direction::Necessity,
            Expected::Growing,
            params,
            beta(s_star - 0.25, 0.0),
        ));
    }

    // Cubic tail-sum condition vs 2-Carleson.
    suite.push(scenario(
        "r3_7_beta2_bounded",
        TheoremId::R3_7,
        Direction::Both,
        Expected::Bounded,
        SpaceParams::default(),
        beta(2.0, 0.0),
    ));
    suite.push(scenario(
        "r3_7_lebesgue_growing",
        TheoremId::R3_7,
        Direction::Both,
        Expected::Growing,
        SpaceParams::default(),
        RadialMeasure::Lebesgue,
    ));

    // Bounded-range remark at α = 0.4.
    suite.push(scenario(
        "r3_4_alpha04",
        TheoremId::R3_4,
        Direction::Sufficiency,
        Expected::Bounded,
        SpaceParams {
            alpha: Some(0.4),
            ..Default::default()
        },
        beta(0.4, 0.0),
    ));

    // Corollary endpoints: the classical Cesàro measure.
    suite.push(scenario(
        "c3_5_p4_lebesgue",
        TheoremId::C3_5,
        Direction::Sufficiency,
        Expected::Bounded,
        SpaceParams {
            p: Some(Exponent(4.0)),
            ..Default::default()
        },
        RadialMeasure::Lebesgue,
    ));
    suite.push(scenario(
        "c3_10_l05_lebesgue",
        TheoremId::C3_10,
        Direction::Both,
        Expected::Bounded,
        SpaceParams {
            lambda: Some(0.5),
            ..Default::default()
        },
        RadialMeasure::Lebesgue,
    ));

    suite
}

/// Run a batch of scenarios (in parallel, deterministically ordered).
pub fn run_suite(configs: &[ScenarioConfig]) -> Result<SuiteReport, LabError> {
    let reports: Vec<ExperimentReport> = configs
        .par_iter()
        .map(run_scenario)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SuiteReport::new(reports))
}
