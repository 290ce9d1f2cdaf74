//! Call counting, recursion-depth tracking, and the quasi-polynomial
//! call-count bound check.

use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::game::Game;
use crate::solvers::{SolveError, SolveOutcome, SolverConfig, solve};

/// Counters collected during one solver run.
///
/// An execution is nontrivial when it passes the base case (nonempty view
/// and, for the precision-bounded solver, a budget above 1); only those are
/// counted. Depth is zero-based: the initial procedure execution has depth 0.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CallStats {
    pub nontrivial_calls: u64,
    pub max_depth: u32,
    /// Nontrivial executions per `h` value, indexed by `h`.
    pub per_level: Vec<u64>,
}

impl CallStats {
    pub(crate) fn record(&mut self, h: i64, depth: u32) {
        debug_assert!(h >= 0, "nontrivial execution with negative h");
        self.nontrivial_calls += 1;
        self.max_depth = self.max_depth.max(depth);
        let h = h as usize;
        if self.per_level.len() <= h {
            self.per_level.resize(h + 1, 0);
        }
        self.per_level[h] += 1;
    }
}

/// Verdict of comparing an observed call count against the closed-form
/// bound `n^l * C(h+l, l) - 1` with `l = 2 * floor(log2 n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub n: u64,
    pub h: u32,
    pub l: u32,
    pub bound: BigUint,
    pub observed: u64,
    pub ok: bool,
}

/// Exact-arithmetic bound check for a precision-bounded run started at
/// precision `(n, n)` with top-level priority bound `h`.
pub fn check_call_bound(stats: &CallStats, n: u64, h: u32) -> BoundCheck {
    let l = 2 * floor_log2(n);
    let bound = BigUint::from(n).pow(l) * binomial(h + l, l) - 1u32;
    let observed = stats.nontrivial_calls;
    let ok = BigUint::from(observed) <= bound;
    BoundCheck { n, h, l, bound, observed, ok }
}

/// `floor(log2 n)`; zero for `n <= 1`.
pub fn floor_log2(n: u64) -> u32 {
    if n <= 1 { 0 } else { 63 - n.leading_zeros() }
}

/// Exact binomial coefficient.
pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 1..=k {
        // Division is exact at every step: acc holds C(n-k+i, i) after it.
        acc = acc * (n - k + i) / i;
    }
    acc
}

/// Runs the configured solver with a monotonic wall clock around it.
pub fn run_instrumented(
    game: &Game,
    config: &SolverConfig,
) -> Result<(SolveOutcome, Duration), SolveError> {
    let start = Instant::now();
    let outcome = solve(game, config)?;
    Ok((outcome, start.elapsed()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::build_game;
    use crate::solvers::Algorithm;
    use crate::testutil::g1;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        assert_eq!(binomial(3, 5), BigUint::ZERO);
        assert_eq!(binomial(76, 12), binomial(76, 64));
    }

    #[test]
    fn floor_log2_values() {
        assert_eq!(floor_log2(0), 0);
        assert_eq!(floor_log2(1), 0);
        assert_eq!(floor_log2(2), 1);
        assert_eq!(floor_log2(7), 2);
        assert_eq!(floor_log2(8), 3);
    }

    #[test]
    fn bound_example_small() {
        let stats = CallStats { nontrivial_calls: 5, ..Default::default() };
        let check = check_call_bound(&stats, 2, 2);
        assert_eq!(check.l, 2);
        assert_eq!(check.bound, BigUint::from(23u32));
        assert!(check.ok);
    }

    #[test]
    fn bound_degenerate_single_node() {
        // l = 0 forces the bound to C(h,0) - 1 = 0; only a zero count passes.
        let check = check_call_bound(&CallStats::default(), 1, 4);
        assert_eq!(check.l, 0);
        assert_eq!(check.bound, BigUint::ZERO);
        assert!(check.ok);
    }

    #[test]
    fn empty_game_runs_zero_calls() {
        let game = build_game(&[]).unwrap();
        let (outcome, _) = run_instrumented(&game, &SolverConfig::qpt()).unwrap();
        assert_eq!(outcome.stats.nontrivial_calls, 0);
        assert!(check_call_bound(&outcome.stats, 0, 0).ok);
    }

    #[test]
    fn g1_qpt_within_bound() {
        let game = g1();
        let (outcome, _) = run_instrumented(&game, &SolverConfig::qpt()).unwrap();
        assert!(outcome.stats.nontrivial_calls >= 1);
        let check = check_call_bound(&outcome.stats, 2, 2);
        assert!(check.ok, "observed {} > bound {}", check.observed, check.bound);
    }

    #[test]
    fn per_level_counts_sum_to_total() {
        let game = g1();
        let (outcome, _) = run_instrumented(
            &game,
            &SolverConfig { algorithm: Algorithm::Classic, ..Default::default() },
        )
        .unwrap();
        let sum: u64 = outcome.stats.per_level.iter().sum();
        assert_eq!(sum, outcome.stats.nontrivial_calls);
    }
}
