//! Machine-readable solve and bench reports.
//!
//! Reports serialize to JSON with keys in sorted order (fields are declared
//! alphabetically), so repeated runs diff cleanly.

use std::time::Duration;

use serde::Serialize;

use crate::instrument::{BoundCheck, CallStats};
use crate::pgsolver::NamedGame;
use crate::solvers::{Regions, SolverConfig};

#[derive(Debug, Clone, Serialize)]
pub struct ReportFlags {
    pub clamp: bool,
    pub exact_flag: bool,
    pub guard: bool,
    pub strategy: bool,
}

impl From<&SolverConfig> for ReportFlags {
    fn from(config: &SolverConfig) -> Self {
        ReportFlags {
            clamp: config.opt_clamp_precision,
            exact_flag: config.opt_exactness_flag,
            guard: config.opt_attractor_guard,
            strategy: config.collect_strategy,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportBound {
    /// Decimal string; the bound outgrows every fixed-width integer.
    pub bound: String,
    pub h: u32,
    pub l: u32,
    pub n: u64,
    pub observed: u64,
    pub ok: bool,
}

impl From<&BoundCheck> for ReportBound {
    fn from(check: &BoundCheck) -> Self {
        ReportBound {
            bound: check.bound.to_string(),
            h: check.h,
            l: check.l,
            n: check.n,
            observed: check.observed,
            ok: check.ok,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportStats {
    pub max_depth: u32,
    pub nontrivial_calls: u64,
}

impl From<&CallStats> for ReportStats {
    fn from(stats: &CallStats) -> Self {
        ReportStats { max_depth: stats.max_depth, nontrivial_calls: stats.nontrivial_calls }
    }
}

/// One solve of one input, with regions by external node id.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub algorithm: String,
    pub bound: Option<ReportBound>,
    pub flags: ReportFlags,
    pub input: String,
    pub stats: ReportStats,
    pub wall_time_us: u64,
    pub win_even: Vec<u64>,
    pub win_odd: Vec<u64>,
}

impl SolveReport {
    pub fn new(
        input: &str,
        named: &NamedGame,
        config: &SolverConfig,
        regions: &Regions,
        stats: &CallStats,
        wall: Duration,
        bound: Option<&BoundCheck>,
    ) -> Self {
        SolveReport {
            algorithm: config.algorithm.to_string(),
            bound: bound.map(ReportBound::from),
            flags: ReportFlags::from(config),
            input: input.to_string(),
            stats: ReportStats::from(stats),
            wall_time_us: wall.as_micros() as u64,
            win_even: named.external_ids(&regions.win_even),
            win_odd: named.external_ids(&regions.win_odd),
        }
    }
}

/// Single report as a JSON document.
pub fn emit_report(report: &SolveReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

/// Report array as a JSON document; callers order entries by input name.
pub fn emit_reports(reports: &[SolveReport]) -> String {
    let mut out = serde_json::to_string_pretty(reports).expect("reports serialize");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instrument::{check_call_bound, run_instrumented};
    use crate::testutil::g1;

    fn g1_report(config: &SolverConfig) -> SolveReport {
        let game = g1();
        let named = NamedGame::from_game(game.clone());
        let (outcome, wall) = run_instrumented(&game, config).unwrap();
        let bound = check_call_bound(&outcome.stats, 2, 2);
        SolveReport::new(
            "g1.gm",
            &named,
            config,
            &outcome.regions,
            &outcome.stats,
            wall,
            matches!(config.algorithm, crate::solvers::Algorithm::Qpt).then_some(&bound),
        )
    }

    #[test]
    fn classic_report_fields() {
        let report = g1_report(&SolverConfig::classic());
        assert_eq!(report.win_even, vec![0, 1]);
        assert!(report.win_odd.is_empty());
        assert!(report.bound.is_none());
        let json = emit_report(&report);
        assert!(json.contains("\"algorithm\": \"classic\""));
    }

    #[test]
    fn qpt_report_has_bound_verdict() {
        let report = g1_report(&SolverConfig::qpt());
        let bound = report.bound.as_ref().unwrap();
        assert!(bound.ok);
        assert!(report.stats.nontrivial_calls >= 1);
    }

    #[test]
    fn keys_are_sorted_and_emission_is_stable() {
        let report = g1_report(&SolverConfig::qpt());
        let json = emit_reports(&[report.clone()]);
        assert_eq!(json, emit_reports(&[report]));
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let object = value.as_array().unwrap()[0].as_object().unwrap();
        let keys: Vec<&String> = object.keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
