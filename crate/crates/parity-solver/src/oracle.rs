//! Ground-truth machinery kept independent of the solvers: brute-force
//! solving by positional-strategy enumeration, dominion checking and
//! enumeration, and strategy verification.

use itertools::Itertools;
use thiserror::Error;

use crate::attractor::attractor;
use crate::game::{Game, NodeId, NodeSpec, Owner, build_game};
use crate::node_set::NodeSet;
use crate::solvers::{Regions, Strategy};

/// Upper bound on the number of positional strategies the brute-force
/// solver will enumerate per player.
pub const STRATEGY_GUARD: u64 = 10_000_000;

/// Largest node count for which subsets are enumerated.
pub const SUBSET_GUARD: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{strategies} positional strategies for {player} exceed the enumeration guard")]
    TooLarge { player: Owner, strategies: u64 },
    #[error("subset enumeration is limited to {SUBSET_GUARD} nodes, game has {0}")]
    TooManyNodes(usize),
}

/// A set queried for being a dominion of `player`.
#[derive(Debug, Clone)]
pub struct DominionQuery {
    pub set: NodeSet,
    pub player: Owner,
}

/// A successor-restricted graph over a subset of a game's nodes, as produced
/// by fixing a positional strategy.
#[derive(Debug, Clone)]
pub struct Restriction {
    priorities: Vec<u32>,
    succs: Vec<Vec<NodeId>>,
    live: NodeSet,
}

impl Restriction {
    /// `succs` must only mention live nodes, and every live node must keep
    /// at least one successor.
    pub fn new(priorities: Vec<u32>, succs: Vec<Vec<NodeId>>, live: NodeSet) -> Self {
        debug_assert!(live.iter().all(|v| !succs[v.index()].is_empty()));
        Restriction { priorities, succs, live }
    }
}

/// True when some cycle of the restriction has a maximum priority of
/// `player`'s opponent's parity.
///
/// For each opponent-parity priority p this looks for a cycle through a
/// priority-p node inside the subgraph of priorities at most p; any such
/// cycle has maximum exactly p.
pub fn has_bad_cycle(restriction: &Restriction, player: Owner) -> bool {
    !bad_cycle_cores(restriction, player).is_empty()
}

/// Nodes that lie on a cycle whose maximum priority favors the opponent.
fn bad_cycle_cores(restriction: &Restriction, player: Owner) -> NodeSet {
    let n = restriction.priorities.len();
    let mut cores = NodeSet::new(n);
    for w in restriction.live.iter() {
        let p = restriction.priorities[w.index()];
        if Owner::of_priority(p) == player {
            continue;
        }
        if cycle_through(restriction, w, p) {
            cores.insert(w);
        }
    }
    cores
}

/// Depth-first search for a path back to `w` using only live nodes of
/// priority at most `cap`.
fn cycle_through(restriction: &Restriction, w: NodeId, cap: u32) -> bool {
    let n = restriction.priorities.len();
    let eligible = |v: NodeId| {
        restriction.live.contains(v) && restriction.priorities[v.index()] <= cap
    };
    let mut seen = NodeSet::new(n);
    let mut stack: Vec<NodeId> = restriction.succs[w.index()]
        .iter()
        .copied()
        .filter(|&v| eligible(v))
        .collect();
    while let Some(v) = stack.pop() {
        if v == w {
            return true;
        }
        if !seen.insert(v) {
            continue;
        }
        stack.extend(restriction.succs[v.index()].iter().copied().filter(|&t| eligible(t)));
    }
    false
}

/// Nodes from which a bad cycle is reachable in the restriction.
fn reach_bad_cycle(restriction: &Restriction, player: Owner) -> NodeSet {
    let n = restriction.priorities.len();
    let cores = bad_cycle_cores(restriction, player);
    let mut preds: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for v in restriction.live.iter() {
        for &t in &restriction.succs[v.index()] {
            preds[t.index()].push(v);
        }
    }
    let mut reach = cores.clone();
    let mut worklist: Vec<NodeId> = cores.iter().collect();
    while let Some(v) = worklist.pop() {
        for &u in &preds[v.index()] {
            if reach.insert(u) {
                worklist.push(u);
            }
        }
    }
    reach
}

/// Winning regions by enumerating each player's positional strategies and
/// cross-checking that the two enumerations are complementary.
///
/// A node is won by a player as soon as one of their strategies leaves no
/// reachable cycle with an opponent-parity maximum.
pub fn solve_bruteforce(game: &Game) -> Result<Regions, OracleError> {
    let raw = RawGame::from_game(game);
    solve_bruteforce_raw(&raw)
}

/// Brute-force solve over raw specs. Unlike [`build_game`], this tolerates
/// self-loops (a loop is a cycle of its node's priority), which makes it
/// usable as the reference semantics for loop normalization.
pub fn solve_bruteforce_specs(specs: &[NodeSpec]) -> Result<Regions, OracleError> {
    let raw = RawGame::from_specs(specs);
    solve_bruteforce_raw(&raw)
}

struct RawGame {
    owners: Vec<Owner>,
    priorities: Vec<u32>,
    succs: Vec<Vec<NodeId>>,
}

impl RawGame {
    fn from_game(game: &Game) -> Self {
        RawGame {
            owners: game.nodes().map(|v| game.owner(v)).collect(),
            priorities: game.nodes().map(|v| game.priority(v).value()).collect(),
            succs: game.nodes().map(|v| game.successors(v).to_vec()).collect(),
        }
    }

    fn from_specs(specs: &[NodeSpec]) -> Self {
        RawGame {
            owners: specs.iter().map(|s| s.owner).collect(),
            priorities: specs.iter().map(|s| s.priority).collect(),
            succs: specs
                .iter()
                .map(|s| s.successors.iter().map(|&t| NodeId::new(t as usize)).collect())
                .collect(),
        }
    }
}

fn solve_bruteforce_raw(raw: &RawGame) -> Result<Regions, OracleError> {
    let win_even = winners(raw, Owner::Even)?;
    let win_odd = winners(raw, Owner::Odd)?;
    assert!(
        win_even == win_odd.complement(),
        "oracle self-check failed: enumerations are not complementary"
    );
    Ok(Regions { win_even, win_odd })
}

fn winners(raw: &RawGame, player: Owner) -> Result<NodeSet, OracleError> {
    let n = raw.owners.len();
    let choosers: Vec<NodeId> = (0..n)
        .map(NodeId::new)
        .filter(|&v| raw.owners[v.index()] == player)
        .collect();

    let mut strategies: u64 = 1;
    for &v in &choosers {
        debug_assert!(!raw.succs[v.index()].is_empty());
        strategies = strategies.saturating_mul(raw.succs[v.index()].len() as u64);
        if strategies > STRATEGY_GUARD {
            return Err(OracleError::TooLarge { player, strategies });
        }
    }

    let mut won = NodeSet::new(n);
    let mut choice = vec![0usize; choosers.len()];
    loop {
        let succs: Vec<Vec<NodeId>> = (0..n)
            .map(NodeId::new)
            .map(|v| {
                if let Some(k) = choosers.iter().position(|&c| c == v) {
                    vec![raw.succs[v.index()][choice[k]]]
                } else {
                    raw.succs[v.index()].clone()
                }
            })
            .collect();
        let restriction = Restriction::new(raw.priorities.clone(), succs, NodeSet::full(n));
        let losing = reach_bad_cycle(&restriction, player);
        won.union_with(&losing.complement());

        // Odometer over the strategy space.
        let mut k = 0;
        loop {
            if k == choosers.len() {
                return Ok(won);
            }
            choice[k] += 1;
            if choice[k] < raw.succs[choosers[k].index()].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Checks the operational dominion conditions: the opponent cannot leave
/// the set, the player can always stay, and the player wins everywhere in
/// the induced subgame where their moves are restricted to the set.
pub fn is_dominion(game: &Game, query: &DominionQuery) -> bool {
    let s = &query.set;
    if s.is_empty() {
        return true;
    }
    for v in s.iter() {
        let succs = game.successors(v);
        if game.owner(v) == query.player {
            if !succs.iter().any(|t| s.contains(*t)) {
                return false;
            }
        } else if !succs.iter().all(|t| s.contains(*t)) {
            return false;
        }
    }

    let ids: Vec<NodeId> = s.iter().collect();
    let mut dense = vec![u32::MAX; game.node_count()];
    for (i, &v) in ids.iter().enumerate() {
        dense[v.index()] = i as u32;
    }
    let specs: Vec<NodeSpec> = ids
        .iter()
        .map(|&v| {
            let keep = |t: &&NodeId| s.contains(**t);
            let succs: Vec<u32> = if game.owner(v) == query.player {
                game.successors(v).iter().filter(keep).map(|t| dense[t.index()]).collect()
            } else {
                game.successors(v).iter().map(|t| dense[t.index()]).collect()
            };
            NodeSpec::new(game.owner(v), game.priority(v).value(), succs)
        })
        .collect();
    let induced = build_game(&specs).expect("closure conditions keep the induced game valid");
    let regions = solve_bruteforce(&induced).expect("induced dominion game is small");
    regions.region_of(query.player).len() == ids.len()
}

/// All dominions of `player` with between 2 and `max_size` nodes, ordered
/// by size and then lexicographically.
pub fn enumerate_dominions(
    game: &Game,
    player: Owner,
    max_size: usize,
) -> Result<Vec<NodeSet>, OracleError> {
    let n = game.node_count();
    if n > SUBSET_GUARD {
        return Err(OracleError::TooManyNodes(n));
    }
    let mut out = Vec::new();
    for size in 2..=max_size.min(n) {
        for combo in (0..n).combinations(size) {
            let set = NodeSet::from_ids(n, combo.into_iter().map(NodeId::new));
            if is_dominion(game, &DominionQuery { set: set.clone(), player }) {
                out.push(set);
            }
        }
    }
    Ok(out)
}

/// True when `region` is closed under the strategy-restricted dynamics and
/// the restriction contains no cycle won by the opponent.
pub fn verify_strategy(game: &Game, player: Owner, region: &NodeSet, strat: &Strategy) -> bool {
    if strat.player != player {
        return false;
    }
    for (from, _) in strat.moves() {
        if !region.contains(from) || game.owner(from) != player {
            return false;
        }
    }
    let n = game.node_count();
    let mut succs: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for v in region.iter() {
        if game.owner(v) == player {
            let Some(to) = strat.get(v) else { return false };
            if !game.successors(v).contains(&to) || !region.contains(to) {
                return false;
            }
            succs[v.index()].push(to);
        } else {
            // Any opponent edge leaving the region falsifies the claim.
            if game.successors(v).iter().any(|t| !region.contains(*t)) {
                return false;
            }
            succs[v.index()] = game.successors(v).to_vec();
        }
    }
    let priorities = game.nodes().map(|v| game.priority(v).value()).collect();
    let restriction = Restriction::new(priorities, succs, region.clone());
    !has_bad_cycle(&restriction, player)
}

/// One counterexample found by [`check_facts`].
#[derive(Debug, Clone)]
pub struct FactViolation {
    pub fact: u8,
    pub player: Owner,
    pub dominion: Vec<usize>,
    pub removed_seed: Vec<usize>,
}

/// Outcome of sweeping the two dominion preservation facts.
#[derive(Debug, Clone, Default)]
pub struct FactsReport {
    pub fact1_checked: usize,
    pub fact2_checked: usize,
    pub violations: Vec<FactViolation>,
}

impl FactsReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every dominion S of either player and every sample set X, checks
/// that S minus the player's attractor of X stays a dominion after that
/// attractor is removed, and that an S disjoint from X survives removal of
/// the opponent's attractor of X unchanged.
pub fn check_facts(game: &Game, samples: &[NodeSet]) -> Result<FactsReport, OracleError> {
    let n = game.node_count();
    let mut report = FactsReport::default();
    for player in [Owner::Even, Owner::Odd] {
        let dominions = enumerate_dominions(game, player, n)?;
        for s in &dominions {
            for x in samples {
                check_fact1(game, player, s, x, &mut report);
                if s.is_disjoint_from(x) {
                    check_fact2(game, player, s, x, &mut report);
                }
            }
        }
    }
    Ok(report)
}

fn violation(fact: u8, player: Owner, s: &NodeSet, x: &NodeSet) -> FactViolation {
    FactViolation {
        fact,
        player,
        dominion: s.iter().map(|v| v.index()).collect(),
        removed_seed: x.iter().map(|v| v.index()).collect(),
    }
}

fn check_fact1(game: &Game, player: Owner, s: &NodeSet, x: &NodeSet, report: &mut FactsReport) {
    let view = game.full_view();
    let attr = attractor(&view, player, x).expect("samples are live in the full view");
    let rest = view.restrict(&attr).expect("attractor removal is closed");
    let (sub, ids) = rest.materialize();
    let surviving = NodeSet::from_ids(
        sub.node_count(),
        ids.iter()
            .enumerate()
            .filter(|(_, old)| s.contains(**old))
            .map(|(dense, _)| NodeId::new(dense)),
    );
    report.fact1_checked += 1;
    if !is_dominion(&sub, &DominionQuery { set: surviving, player }) {
        report.violations.push(violation(1, player, s, x));
    }
}

fn check_fact2(game: &Game, player: Owner, s: &NodeSet, x: &NodeSet, report: &mut FactsReport) {
    let view = game.full_view();
    let attr = attractor(&view, player.opponent(), x).expect("samples are live");
    report.fact2_checked += 1;
    if !s.is_disjoint_from(&attr) {
        // The dominion must survive the removal untouched.
        report.violations.push(violation(2, player, s, x));
        return;
    }
    let rest = view.restrict(&attr).expect("attractor removal is closed");
    let (sub, ids) = rest.materialize();
    let surviving = NodeSet::from_ids(
        sub.node_count(),
        ids.iter()
            .enumerate()
            .filter(|(_, old)| s.contains(**old))
            .map(|(dense, _)| NodeId::new(dense)),
    );
    debug_assert_eq!(surviving.len(), s.len());
    if !is_dominion(&sub, &DominionQuery { set: surviving, player }) {
        report.violations.push(violation(2, player, s, x));
    }
}
