//! The recursive attractor-decomposition solver (Zielonka's algorithm), its
//! precision-bounded variant with a quasi-polynomial call bound, and
//! positional strategy extraction.

use std::fmt;

use thiserror::Error;

use crate::attractor::attractor;
use crate::game::{Game, NodeId, Owner, Priority, SubgameView};
use crate::instrument::CallStats;
use crate::node_set::NodeSet;
use crate::oracle::{self, OracleError};

/// Which solving procedure to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// Recursive attractor decomposition.
    Classic,
    /// Precision-bounded variant with a quasi-polynomial call bound.
    Qpt,
    /// Brute-force positional-strategy enumeration; small games only.
    Oracle,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Classic => write!(f, "classic"),
            Algorithm::Qpt => write!(f, "qpt"),
            Algorithm::Oracle => write!(f, "oracle"),
        }
    }
}

/// Solver selection plus the optional optimizations.
///
/// `opt_attractor_guard` only affects Classic; `opt_clamp_precision` and
/// `opt_exactness_flag` only affect Qpt. Strategies are collected through
/// the Classic extraction path regardless of the chosen algorithm.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    /// Exit the peeling loop once the opponent's region equals its own
    /// attractor, instead of waiting for it to come back empty.
    pub opt_attractor_guard: bool,
    /// Clamp both precision budgets to the live node count on entry.
    pub opt_clamp_precision: bool,
    /// Track result exactness and skip the full-precision retry when the
    /// reduced-precision stage ended with an exact empty result.
    pub opt_exactness_flag: bool,
    pub collect_strategy: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            algorithm: Algorithm::Classic,
            opt_attractor_guard: false,
            opt_clamp_precision: false,
            opt_exactness_flag: false,
            collect_strategy: false,
        }
    }
}

impl SolverConfig {
    pub fn classic() -> Self {
        SolverConfig::default()
    }

    pub fn qpt() -> Self {
        SolverConfig { algorithm: Algorithm::Qpt, ..Default::default() }
    }

    pub fn oracle() -> Self {
        SolverConfig { algorithm: Algorithm::Oracle, ..Default::default() }
    }
}

/// Size budgets for the dominions the precision-bounded solver must find:
/// `p_self` bounds the solving player's dominions, `p_opp` the opponent's.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    pub p_self: usize,
    pub p_opp: usize,
}

impl Precision {
    pub fn full(n: usize) -> Self {
        Precision { p_self: n, p_opp: n }
    }

    /// Budgets seen by the callee: the opponent's budget (possibly halved)
    /// becomes its own, ours is passed through unchanged.
    fn for_opponent(self, halve: bool) -> Self {
        Precision {
            p_self: if halve { self.p_opp / 2 } else { self.p_opp },
            p_opp: self.p_self,
        }
    }
}

/// The partition of a game's nodes into the two winning regions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regions {
    pub win_even: NodeSet,
    pub win_odd: NodeSet,
}

impl Regions {
    pub fn from_even(n: usize, win_even: NodeSet) -> Self {
        let win_odd = win_even.complement();
        debug_assert_eq!(win_even.len() + win_odd.len(), n);
        Regions { win_even, win_odd }
    }

    pub fn region_of(&self, player: Owner) -> &NodeSet {
        match player {
            Owner::Even => &self.win_even,
            Owner::Odd => &self.win_odd,
        }
    }
}

/// Positional strategy: one chosen successor per node of `player` inside
/// its winning region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    pub player: Owner,
    moves: Vec<Option<NodeId>>,
}

impl Strategy {
    pub fn new(player: Owner, n: usize) -> Self {
        Strategy { player, moves: vec![None; n] }
    }

    fn from_moves(player: Owner, moves: Vec<Option<NodeId>>) -> Self {
        Strategy { player, moves }
    }

    pub fn set(&mut self, from: NodeId, to: NodeId) {
        self.moves[from.index()] = Some(to);
    }

    pub fn get(&self, from: NodeId) -> Option<NodeId> {
        self.moves[from.index()]
    }

    pub fn moves(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.moves
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.map(|to| (NodeId::new(i), to)))
    }

    pub fn len(&self) -> usize {
        self.moves.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.iter().all(Option::is_none)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("priority bound {h} does not have {player}'s parity")]
    ParityMismatch { h: i64, player: Owner },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Result of a top-level solve.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub regions: Regions,
    pub strategies: Option<(Strategy, Strategy)>,
    pub stats: CallStats,
}

fn parity_matches(h: i64, player: Owner) -> bool {
    (h.rem_euclid(2) == 0) == player.is_even()
}

/// Smallest value `>= max_priority` with `player`'s parity.
pub fn top_priority_bound(game: &Game, player: Owner) -> i64 {
    let h = game.max_priority().value() as i64;
    if parity_matches(h, player) { h } else { h + 1 }
}

/// Live nodes with priority exactly `h`; empty when `h` is negative or
/// above every live priority.
fn nodes_at(view: &SubgameView<'_>, h: i64) -> NodeSet {
    if h < 0 {
        NodeSet::new(view.game().node_count())
    } else {
        view.nodes_with_priority(Priority::new(h as u32))
    }
}

/// Solves `game` with the configured algorithm.
///
/// The winning region of Even is computed directly; Odd's region is its
/// complement, which is justified by determinacy and cross-checked against
/// an Odd-rooted run in debug builds.
pub fn solve(game: &Game, config: &SolverConfig) -> Result<SolveOutcome, SolveError> {
    let n = game.node_count();
    let mut stats = CallStats::default();
    let regions = match config.algorithm {
        Algorithm::Classic => {
            let mut solver = ClassicSolver::new(game, config.opt_attractor_guard);
            let h = top_priority_bound(game, Owner::Even);
            let win_even = solver.solve(game.full_view(), h, Owner::Even)?;
            stats = solver.into_stats();
            Regions::from_even(n, win_even)
        }
        Algorithm::Qpt => {
            let mut solver =
                QptSolver::new(game, config.opt_clamp_precision, config.opt_exactness_flag);
            let h = top_priority_bound(game, Owner::Even);
            let (win_even, _) =
                solver.solve(game.full_view(), h, Precision::full(n), Owner::Even)?;
            stats = solver.into_stats();
            let regions = Regions::from_even(n, win_even);
            #[cfg(debug_assertions)]
            {
                let mut odd_solver =
                    QptSolver::new(game, config.opt_clamp_precision, config.opt_exactness_flag);
                let h_odd = top_priority_bound(game, Owner::Odd);
                let (win_odd, _) = odd_solver
                    .solve(game.full_view(), h_odd, Precision::full(n), Owner::Odd)?;
                debug_assert_eq!(
                    win_odd, regions.win_odd,
                    "Odd-rooted run disagrees with the Even complement"
                );
            }
            regions
        }
        Algorithm::Oracle => oracle::solve_bruteforce(game)?,
    };

    let strategies = if config.collect_strategy {
        let (extracted, even, odd) = extract_strategy_classic(game);
        debug_assert_eq!(extracted, regions, "strategy extraction disagrees on regions");
        Some((even, odd))
    } else {
        None
    };

    Ok(SolveOutcome { regions, strategies, stats })
}

/// The classic recursive solver, parametrized by the solving player.
pub struct ClassicSolver<'a> {
    game: &'a Game,
    guard: bool,
    stats: CallStats,
}

impl<'a> ClassicSolver<'a> {
    pub fn new(game: &'a Game, guard: bool) -> Self {
        ClassicSolver { game, guard, stats: CallStats::default() }
    }

    pub fn stats(&self) -> &CallStats {
        &self.stats
    }

    pub fn into_stats(self) -> CallStats {
        self.stats
    }

    /// Returns `player`'s winning region of the live subgame.
    ///
    /// `h` must have `player`'s parity and dominate every live priority.
    pub fn solve(
        &mut self,
        view: SubgameView<'a>,
        h: i64,
        player: Owner,
    ) -> Result<NodeSet, SolveError> {
        if !parity_matches(h, player) {
            return Err(SolveError::ParityMismatch { h, player });
        }
        debug_assert!(
            view.live_nodes().all(|v| (self.game.priority(v).value() as i64) <= h),
            "h must dominate every live priority"
        );
        Ok(self.recurse(view, h, player, 0))
    }

    fn recurse(&mut self, view: SubgameView<'a>, h: i64, player: Owner, depth: u32) -> NodeSet {
        if view.is_empty() {
            return NodeSet::new(self.game.node_count());
        }
        self.stats.record(h, depth);
        let mut view = view;
        loop {
            // Peel the opponent's region of the subgame in which reaching
            // priority h counts as a win for `player`.
            let top = nodes_at(&view, h);
            let own_attr = attractor(&view, player, &top).expect("priority nodes are live");
            let sub = view.restrict(&own_attr).expect("attractor removal is closed");
            let w_opp = self.recurse(sub, h - 1, player.opponent(), depth + 1);
            let opp_attr =
                attractor(&view, player.opponent(), &w_opp).expect("solver result is live");
            let done = if self.guard { opp_attr == w_opp } else { w_opp.is_empty() };
            view = view.restrict(&opp_attr).expect("attractor removal is closed");
            if done {
                break;
            }
        }
        view.live_set()
    }
}

/// Per-execution record for recurrence-shape checks; children are counted
/// only when they pass the base case.
#[derive(Debug, Clone, Copy)]
pub struct QptCallRecord {
    pub h: i64,
    pub live_at_entry: usize,
    pub reduced_children: u32,
    pub full_children: u32,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    /// Looking for opponent regions within the halved budget.
    EarlyReduced,
    /// The one retry with the full budget.
    Full,
    /// Halved budget again; everything large has already been found.
    LateReduced,
}

/// The precision-bounded solver.
///
/// Returns a set that contains every dominion of the solving player of size
/// at most `p_self` and excludes every opponent dominion of size at most
/// `p_opp`; at full precision `(n, n)` that set is exactly the winning
/// region. Each recursive call halves the opponent budget except for one
/// full-budget retry per loop.
pub struct QptSolver<'a> {
    game: &'a Game,
    clamp: bool,
    exactness: bool,
    stats: CallStats,
    trace: Option<Vec<QptCallRecord>>,
}

impl<'a> QptSolver<'a> {
    pub fn new(game: &'a Game, clamp: bool, exactness: bool) -> Self {
        QptSolver { game, clamp, exactness, stats: CallStats::default(), trace: None }
    }

    /// Enables per-execution trace records.
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn stats(&self) -> &CallStats {
        &self.stats
    }

    pub fn into_stats(self) -> CallStats {
        self.stats
    }

    pub fn trace(&self) -> Option<&[QptCallRecord]> {
        self.trace.as_deref()
    }

    /// Solves the live subgame for `player` under the given budgets.
    ///
    /// The boolean is the exactness verdict: true when no precision budget
    /// cut anything off anywhere in the recursion, i.e. the returned set is
    /// known to be the full winning region.
    pub fn solve(
        &mut self,
        view: SubgameView<'a>,
        h: i64,
        prec: Precision,
        player: Owner,
    ) -> Result<(NodeSet, bool), SolveError> {
        if !parity_matches(h, player) {
            return Err(SolveError::ParityMismatch { h, player });
        }
        debug_assert!(
            view.live_nodes().all(|v| (self.game.priority(v).value() as i64) <= h),
            "h must dominate every live priority"
        );
        Ok(self.recurse(view, h, prec, player, 0))
    }

    fn recurse(
        &mut self,
        view: SubgameView<'a>,
        h: i64,
        prec: Precision,
        player: Owner,
        depth: u32,
    ) -> (NodeSet, bool) {
        let n = self.game.node_count();
        if view.is_empty() {
            return (NodeSet::new(n), true);
        }
        if prec.p_self <= 1 {
            // A nonempty dominion needs two nodes, so nothing of size <= 1
            // exists; the empty answer is still precision-limited.
            return (NodeSet::new(n), false);
        }
        self.stats.record(h, depth);
        let live_at_entry = view.live_count();
        let prec = if self.clamp {
            Precision {
                p_self: prec.p_self.min(live_at_entry),
                p_opp: prec.p_opp.min(live_at_entry),
            }
        } else {
            prec
        };

        let mut view = view;
        let mut exact = true;
        let mut phase = Phase::EarlyReduced;
        let mut reduced_children = 0u32;
        let mut full_children = 0u32;
        loop {
            let halve = phase != Phase::Full;
            let callee = prec.for_opponent(halve);
            let top = nodes_at(&view, h);
            let own_attr = attractor(&view, player, &top).expect("priority nodes are live");
            let sub = view.restrict(&own_attr).expect("attractor removal is closed");
            if !sub.is_empty() && callee.p_self > 1 {
                if halve {
                    reduced_children += 1;
                } else {
                    full_children += 1;
                }
            }
            let (w_opp, child_exact) =
                self.recurse(sub, h - 1, callee, player.opponent(), depth + 1);
            exact &= child_exact;
            let opp_attr =
                attractor(&view, player.opponent(), &w_opp).expect("solver result is live");
            view = view.restrict(&opp_attr).expect("attractor removal is closed");
            if w_opp.is_empty() {
                match phase {
                    Phase::EarlyReduced => {
                        if self.exactness && child_exact {
                            // The reduced-budget probe was exact and found
                            // nothing, so the full-budget retry cannot find
                            // anything either.
                            break;
                        }
                        phase = Phase::Full;
                    }
                    Phase::Full | Phase::LateReduced => break,
                }
            } else if phase == Phase::Full {
                phase = Phase::LateReduced;
            }
        }
        if let Some(trace) = &mut self.trace {
            trace.push(QptCallRecord { h, live_at_entry, reduced_children, full_children });
        }
        (view.live_set(), exact)
    }
}

/// Attractor worklist that records, for each newly attracted node of
/// `player`, the successor that pulled it in. Following the recorded moves
/// strictly decreases insertion time, so play reaches `targets`.
fn attract_with_moves(
    view: &SubgameView<'_>,
    player: Owner,
    targets: &NodeSet,
) -> (NodeSet, Vec<Option<NodeId>>) {
    let game = view.game();
    let n = game.node_count();
    let mut attracted = targets.clone();
    let mut moves = vec![None; n];
    let mut worklist: Vec<NodeId> = targets.iter().collect();
    let mut remaining = vec![u32::MAX; n];

    while let Some(v) = worklist.pop() {
        for u in view.live_predecessors(v) {
            if attracted.contains(u) {
                continue;
            }
            let pulled = if game.owner(u) == player {
                moves[u.index()] = Some(v);
                true
            } else {
                if remaining[u.index()] == u32::MAX {
                    remaining[u.index()] = view.live_successors(u).count() as u32;
                }
                remaining[u.index()] -= 1;
                remaining[u.index()] == 0
            };
            if pulled {
                attracted.insert(u);
                worklist.push(u);
            }
        }
    }
    (attracted, moves)
}

/// Solves `game` with the classic recursion while recording positional
/// strategies for both players on their winning regions.
pub fn extract_strategy_classic(game: &Game) -> (Regions, Strategy, Strategy) {
    let parts = extract_rec(game, game.full_view());
    let regions = Regions { win_even: parts.win_even, win_odd: parts.win_odd };
    debug_assert!(regions.win_even.is_disjoint_from(&regions.win_odd));
    (
        regions,
        Strategy::from_moves(Owner::Even, parts.moves_even),
        Strategy::from_moves(Owner::Odd, parts.moves_odd),
    )
}

struct ExtractParts {
    win_even: NodeSet,
    win_odd: NodeSet,
    moves_even: Vec<Option<NodeId>>,
    moves_odd: Vec<Option<NodeId>>,
}

impl ExtractParts {
    fn empty(n: usize) -> Self {
        ExtractParts {
            win_even: NodeSet::new(n),
            win_odd: NodeSet::new(n),
            moves_even: vec![None; n],
            moves_odd: vec![None; n],
        }
    }

    fn of(&mut self, player: Owner) -> (&mut NodeSet, &mut Vec<Option<NodeId>>) {
        match player {
            Owner::Even => (&mut self.win_even, &mut self.moves_even),
            Owner::Odd => (&mut self.win_odd, &mut self.moves_odd),
        }
    }
}

fn extract_rec(game: &Game, view: SubgameView<'_>) -> ExtractParts {
    let n = game.node_count();
    if view.is_empty() {
        return ExtractParts::empty(n);
    }
    let h = view.max_priority().expect("view is nonempty");
    let player = h.favors();
    let top = view.nodes_with_priority(h);
    let (own_attr, attr_moves) = attract_with_moves(&view, player, &top);
    let sub = view.restrict(&own_attr).expect("attractor removal is closed");
    let mut inner = extract_rec(game, sub);

    if inner.of(player.opponent()).0.is_empty() {
        // `player` wins the whole view: recursive moves inside the subgame,
        // attractor moves toward the top nodes, any live successor on the
        // top nodes themselves.
        let mut parts = ExtractParts::empty(n);
        let (win, moves) = parts.of(player);
        *win = view.live_set();
        *moves = std::mem::take(inner.of(player).1);
        for v in own_attr.iter() {
            if game.owner(v) == player && !top.contains(v) {
                moves[v.index()] = attr_moves[v.index()];
            }
        }
        for v in top.iter() {
            if game.owner(v) == player {
                moves[v.index()] = view.live_successors(v).next();
            }
        }
        parts
    } else {
        let opponent = player.opponent();
        let w_opp = inner.of(opponent).0.clone();
        let (opp_attr, opp_attr_moves) = attract_with_moves(&view, opponent, &w_opp);
        let rest = view.restrict(&opp_attr).expect("attractor removal is closed");
        let mut parts = extract_rec(game, rest);

        let (win, moves) = parts.of(opponent);
        win.union_with(&opp_attr);
        for v in opp_attr.iter() {
            if game.owner(v) != opponent {
                continue;
            }
            moves[v.index()] = if w_opp.contains(v) {
                // Keep the strategy computed for the opponent's region of
                // the inner subgame; the solving player cannot leave it.
                inner.of(opponent).1[v.index()]
            } else {
                opp_attr_moves[v.index()]
            };
        }
        parts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{GenParams, random_game};
    use crate::instrument::check_call_bound;
    use crate::oracle;
    use crate::testutil::{g1, g2, g2_odd_owned, g3};

    fn ids(universe: usize, ids: &[usize]) -> NodeSet {
        NodeSet::from_ids(universe, ids.iter().map(|&i| NodeId::new(i)))
    }

    #[test]
    fn classic_solves_g1() {
        let game = g1();
        let outcome = solve(&game, &SolverConfig::classic()).unwrap();
        assert_eq!(outcome.regions.win_even, NodeSet::full(2));
        assert!(outcome.regions.win_odd.is_empty());
    }

    #[test]
    fn qpt_solves_g2() {
        let game = g2();
        let outcome = solve(&game, &SolverConfig::qpt()).unwrap();
        assert!(outcome.regions.win_even.is_empty());
        assert_eq!(outcome.regions.win_odd, NodeSet::full(2));
    }

    #[test]
    fn qpt_solves_g3() {
        let game = g3();
        let outcome = solve(&game, &SolverConfig::qpt()).unwrap();
        assert_eq!(outcome.regions.win_even, NodeSet::full(3));
    }

    #[test]
    fn classic_empty_view_returns_empty() {
        let game = g1();
        let view = game.full_view().restrict(&NodeSet::full(2)).unwrap();
        let mut solver = ClassicSolver::new(&game, false);
        let win = solver.solve(view, 4, Owner::Even).unwrap();
        assert!(win.is_empty());
        assert_eq!(solver.stats().nontrivial_calls, 0);
    }

    #[test]
    fn classic_rejects_parity_mismatch() {
        let game = g1();
        let mut solver = ClassicSolver::new(&game, false);
        let err = solver.solve(game.full_view(), 3, Owner::Even).unwrap_err();
        assert_eq!(err, SolveError::ParityMismatch { h: 3, player: Owner::Even });
    }

    #[test]
    fn qpt_base_case_on_low_budget() {
        let game = g1();
        let mut solver = QptSolver::new(&game, false, false);
        for p_self in [0, 1] {
            let (win, exact) = solver
                .solve(game.full_view(), 2, Precision { p_self, p_opp: 2 }, Owner::Even)
                .unwrap();
            assert!(win.is_empty());
            assert!(!exact);
        }
        assert_eq!(solver.stats().nontrivial_calls, 0);
    }

    #[test]
    fn qpt_full_precision_on_g1() {
        let game = g1();
        let mut solver = QptSolver::new(&game, false, false);
        let (win, exact) = solver
            .solve(game.full_view(), 2, Precision::full(2), Owner::Even)
            .unwrap();
        assert_eq!(win, NodeSet::full(2));
        assert!(exact);
    }

    #[test]
    fn qpt_excludes_small_opponent_dominions_on_g2() {
        let game = g2();
        let mut solver = QptSolver::new(&game, false, false);
        let (win, _) = solver
            .solve(game.full_view(), 2, Precision::full(2), Owner::Even)
            .unwrap();
        assert!(win.is_empty());
        // The only Odd dominion of size <= 2 is {0, 1}; it must be disjoint
        // from the returned set.
        let doms = oracle::enumerate_dominions(&game, Owner::Odd, 2).unwrap();
        assert_eq!(doms, vec![NodeSet::full(2)]);
        for d in doms {
            assert!(d.is_disjoint_from(&win));
        }
    }

    #[test]
    fn strategy_extraction_on_fixtures() {
        let (regions, even, odd) = extract_strategy_classic(&g1());
        assert_eq!(regions.win_even, NodeSet::full(2));
        assert_eq!(even.get(NodeId::new(0)), Some(NodeId::new(1)));
        assert_eq!(even.get(NodeId::new(1)), Some(NodeId::new(0)));
        assert!(odd.is_empty());

        let (regions, even, _) = extract_strategy_classic(&g3());
        assert_eq!(regions.win_even, NodeSet::full(3));
        assert_eq!(even.get(NodeId::new(0)), Some(NodeId::new(1)));
        assert!(oracle::verify_strategy(&g3(), Owner::Even, &regions.win_even, &even));
        let mut bad = Strategy::new(Owner::Even, 3);
        bad.set(NodeId::new(0), NodeId::new(2));
        assert!(!oracle::verify_strategy(&g3(), Owner::Even, &regions.win_even, &bad));

        let (regions, even, odd) = extract_strategy_classic(&g2_odd_owned());
        assert_eq!(regions.win_odd, NodeSet::full(2));
        assert_eq!(odd.get(NodeId::new(0)), Some(NodeId::new(1)));
        assert_eq!(odd.get(NodeId::new(1)), Some(NodeId::new(0)));
        assert!(even.is_empty());

        let (_, even, odd) = extract_strategy_classic(&g2());
        assert!(even.is_empty());
        assert!(odd.is_empty());
    }

    #[test]
    fn solve_with_strategies_attaches_verified_pair() {
        let game = g3();
        let config = SolverConfig { collect_strategy: true, ..SolverConfig::classic() };
        let outcome = solve(&game, &config).unwrap();
        let (even, odd) = outcome.strategies.unwrap();
        assert!(oracle::verify_strategy(&game, Owner::Even, &outcome.regions.win_even, &even));
        assert!(oracle::verify_strategy(&game, Owner::Odd, &outcome.regions.win_odd, &odd));
    }

    fn sweep_params(seed: u64, max_nodes: usize) -> GenParams {
        let n = 2 + (seed % (max_nodes as u64 - 1)) as usize;
        GenParams {
            nodes: n,
            max_priority: 6,
            min_out: 1,
            max_out: 3.min(n - 1),
            owner_bias: 0.5,
            seed,
        }
    }

    #[test]
    fn classic_matches_oracle_on_random_games() {
        for seed in 0..500 {
            let game = random_game(&sweep_params(seed, 8)).unwrap();
            let classic = solve(&game, &SolverConfig::classic()).unwrap();
            let expected = oracle::solve_bruteforce(&game).unwrap();
            assert_eq!(classic.regions, expected, "seed {seed}");
        }
    }

    #[test]
    fn flags_change_stats_not_regions() {
        for seed in 0..200 {
            let game = random_game(&sweep_params(seed, 8)).unwrap();
            let baseline = solve(&game, &SolverConfig::qpt()).unwrap();
            for bits in 0..8u32 {
                let config = SolverConfig {
                    algorithm: Algorithm::Qpt,
                    opt_attractor_guard: bits & 1 != 0,
                    opt_clamp_precision: bits & 2 != 0,
                    opt_exactness_flag: bits & 4 != 0,
                    collect_strategy: false,
                };
                let outcome = solve(&game, &config).unwrap();
                assert_eq!(outcome.regions, baseline.regions, "seed {seed} bits {bits}");
            }
            let classic = SolverConfig { opt_attractor_guard: true, ..SolverConfig::classic() };
            let guarded = solve(&game, &classic).unwrap();
            assert_eq!(guarded.regions, baseline.regions, "seed {seed} classic guard");
        }
    }

    #[test]
    fn depth_stays_under_priority_bound() {
        for seed in 0..300 {
            let game = random_game(&sweep_params(seed, 8)).unwrap();
            let h_max = game.max_priority().value();
            for config in [SolverConfig::classic(), SolverConfig::qpt()] {
                let outcome = solve(&game, &config).unwrap();
                assert!(
                    outcome.stats.max_depth <= h_max + 1,
                    "seed {seed}: depth {} exceeds {}",
                    outcome.stats.max_depth,
                    h_max + 1
                );
            }
        }
    }

    #[test]
    fn qpt_recurrence_shape_holds_on_traces() {
        for seed in 0..100 {
            let game = random_game(&sweep_params(seed, 6)).unwrap();
            let n = game.node_count();
            let mut solver = QptSolver::new(&game, false, false).with_trace();
            let h = top_priority_bound(&game, Owner::Even);
            solver.solve(game.full_view(), h, Precision::full(n), Owner::Even).unwrap();
            for record in solver.trace().unwrap() {
                assert!(
                    record.reduced_children as usize <= record.live_at_entry + 1,
                    "seed {seed}: {record:?}"
                );
                assert!(record.full_children <= 1, "seed {seed}: {record:?}");
            }
        }
    }

    #[test]
    fn qpt_call_counts_within_bound_on_sweep() {
        for seed in 0..300 {
            let game = random_game(&sweep_params(seed, 8)).unwrap();
            let outcome = solve(&game, &SolverConfig::qpt()).unwrap();
            let h = top_priority_bound(&game, Owner::Even) as u32;
            let check = check_call_bound(&outcome.stats, game.node_count() as u64, h);
            assert!(check.ok, "seed {seed}: {} > {}", check.observed, check.bound);
        }
    }

    #[test]
    fn lemma_contract_for_reduced_precision_on_g2() {
        // With p_opp = 2 every Odd dominion of size <= 2 must be excluded
        // even though p_self cuts the search short.
        let game = g2();
        let mut solver = QptSolver::new(&game, false, false);
        let (win, _) = solver
            .solve(game.full_view(), 2, Precision { p_self: 2, p_opp: 2 }, Owner::Even)
            .unwrap();
        assert!(win.is_disjoint_from(&ids(2, &[0, 1])));
    }
}
