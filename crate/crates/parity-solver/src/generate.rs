//! Seeded game generators for differential testing and benchmarking.
//!
//! Generation is a pure function of its parameters. The pseudo-random
//! generator is the SplitMix64 recurrence, pinned here so that a given seed
//! produces the same game on every platform and in every future version;
//! changing it would invalidate recorded test corpora and is a breaking
//! format change.

use thiserror::Error;

use crate::game::{Game, NodeSpec, Owner, build_game};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

/// Parameters for [`random_game`].
#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub nodes: usize,
    pub max_priority: u32,
    pub min_out: usize,
    pub max_out: usize,
    /// Fraction of Even-owned nodes, in `[0, 1]`.
    pub owner_bias: f64,
    pub seed: u64,
}

/// SplitMix64: `state += 0x9E3779B97F4A7C15`, output mixed with two
/// xor-multiply rounds. Word-exact on every platform.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` via rejection sampling; `bound` must be
    /// nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        let zone = (u64::MAX / bound) * bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    /// Uniform value in `[0, 1)` with 53 bits of precision.
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Deterministic random game: uniform priorities in `0..=max_priority`,
/// owners by bias, and per node a uniform out-degree in `min_out..=max_out`
/// of distinct non-self successors.
pub fn random_game(params: &GenParams) -> Result<Game, GenError> {
    let n = params.nodes;
    if n < 2 {
        return Err(GenError::InvalidParams(format!("need at least 2 nodes, got {n}")));
    }
    if params.min_out < 1 || params.min_out > params.max_out || params.max_out > n - 1 {
        return Err(GenError::InvalidParams(format!(
            "need 1 <= min_out <= max_out <= {}, got {}..{}",
            n - 1,
            params.min_out,
            params.max_out
        )));
    }
    if !(0.0..=1.0).contains(&params.owner_bias) {
        return Err(GenError::InvalidParams(format!(
            "owner bias {} outside [0, 1]",
            params.owner_bias
        )));
    }

    let mut rng = SplitMix64::new(params.seed);
    let mut specs = Vec::with_capacity(n);
    for v in 0..n {
        let priority = rng.below(params.max_priority as u64 + 1) as u32;
        let owner = if rng.unit_f64() < params.owner_bias { Owner::Even } else { Owner::Odd };
        let out = params.min_out + rng.below((params.max_out - params.min_out + 1) as u64) as usize;

        // Partial Fisher-Yates over all candidate targets.
        let mut candidates: Vec<u32> =
            (0..n as u32).filter(|&t| t != v as u32).collect();
        for i in 0..out {
            let j = i + rng.below((candidates.len() - i) as u64) as usize;
            candidates.swap(i, j);
        }
        candidates.truncate(out);
        specs.push(NodeSpec::new(owner, priority, candidates));
    }
    Ok(build_game(&specs).expect("generated specs satisfy the game invariants"))
}

/// Ladder of `2k` nodes walking both directions, with priorities `0..k`
/// each appearing twice and owners alternating. The priority tower makes
/// the recursive solvers peel roughly `k` levels.
pub fn family_chain(k: usize) -> Result<Game, GenError> {
    if k < 1 {
        return Err(GenError::InvalidParams("chain needs k >= 1".into()));
    }
    let n = 2 * k;
    let specs: Vec<NodeSpec> = (0..n)
        .map(|j| {
            let mut succs = Vec::new();
            if j > 0 {
                succs.push(j as u32 - 1);
            }
            if j + 1 < n {
                succs.push(j as u32 + 1);
            }
            let owner = if j % 2 == 0 { Owner::Even } else { Owner::Odd };
            NodeSpec::new(owner, (j / 2) as u32, succs)
        })
        .collect();
    Ok(build_game(&specs).expect("chain specs are valid"))
}

/// Complete directed graph on `n` nodes with priorities `0..n` and owners
/// alternating.
pub fn family_clique(n: usize) -> Result<Game, GenError> {
    if n < 2 {
        return Err(GenError::InvalidParams("clique needs n >= 2".into()));
    }
    let specs: Vec<NodeSpec> = (0..n)
        .map(|i| {
            let succs: Vec<u32> = (0..n as u32).filter(|&t| t != i as u32).collect();
            let owner = if i % 2 == 0 { Owner::Even } else { Owner::Odd };
            NodeSpec::new(owner, i as u32, succs)
        })
        .collect();
    Ok(build_game(&specs).expect("clique specs are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::pgsolver::{NamedGame, emit_pgsolver};
    use crate::solvers::{SolverConfig, solve};

    #[test]
    fn rejects_bad_params() {
        let base = GenParams {
            nodes: 4,
            max_priority: 3,
            min_out: 1,
            max_out: 2,
            owner_bias: 0.5,
            seed: 1,
        };
        assert!(random_game(&GenParams { nodes: 1, ..base.clone() }).is_err());
        assert!(random_game(&GenParams { min_out: 0, ..base.clone() }).is_err());
        assert!(random_game(&GenParams { max_out: 4, ..base.clone() }).is_err());
        assert!(random_game(&GenParams { owner_bias: 1.5, ..base.clone() }).is_err());
        assert!(family_chain(0).is_err());
        assert!(family_clique(1).is_err());
    }

    #[test]
    fn two_nodes_forced_cycle() {
        let game = random_game(&GenParams {
            nodes: 2,
            max_priority: 1,
            min_out: 1,
            max_out: 1,
            owner_bias: 0.5,
            seed: 7,
        })
        .unwrap();
        // The only self-loop-free option is the two-cycle.
        assert_eq!(game.successors(crate::game::NodeId::new(0)), &[crate::game::NodeId::new(1)]);
        assert_eq!(game.successors(crate::game::NodeId::new(1)), &[crate::game::NodeId::new(0)]);
    }

    #[test]
    fn same_seed_same_bytes() {
        let params = GenParams {
            nodes: 8,
            max_priority: 6,
            min_out: 1,
            max_out: 3,
            owner_bias: 0.5,
            seed: 12345,
        };
        let a = emit_pgsolver(&NamedGame::from_game(random_game(&params).unwrap()));
        let b = emit_pgsolver(&NamedGame::from_game(random_game(&params).unwrap()));
        assert_eq!(a, b);
    }

    #[test]
    fn seed_sweep_builds_valid_games() {
        for seed in 1..=1000 {
            let game = random_game(&GenParams {
                nodes: 8,
                max_priority: 6,
                min_out: 1,
                max_out: 3,
                owner_bias: 0.5,
                seed,
            })
            .unwrap();
            assert_eq!(game.node_count(), 8);
            for v in game.nodes() {
                assert!(!game.successors(v).is_empty());
                assert!(!game.successors(v).contains(&v));
            }
        }
    }

    #[test]
    fn families_agree_across_algorithms() {
        let chain = family_chain(1).unwrap();
        assert_eq!(chain.node_count(), 2);
        let classic = solve(&chain, &SolverConfig::classic()).unwrap().regions;
        let qpt = solve(&chain, &SolverConfig::qpt()).unwrap().regions;
        let expected = oracle::solve_bruteforce(&chain).unwrap();
        assert_eq!(classic, expected);
        assert_eq!(qpt, expected);

        let clique = family_clique(2).unwrap();
        assert_eq!(clique.node_count(), 2);
        assert_eq!(clique.max_priority().value(), 1);

        let clique6 = family_clique(6).unwrap();
        let classic = solve(&clique6, &SolverConfig::classic()).unwrap().regions;
        let qpt = solve(&clique6, &SolverConfig::qpt()).unwrap().regions;
        let expected = oracle::solve_bruteforce(&clique6).unwrap();
        assert_eq!(classic, expected);
        assert_eq!(qpt, expected);
    }

    #[test]
    fn generation_is_not_degenerate() {
        // Both players should win somewhere in a healthy share of games.
        let mut mixed = 0;
        for seed in 1..=1000 {
            let game = random_game(&GenParams {
                nodes: 8,
                max_priority: 6,
                min_out: 1,
                max_out: 3,
                owner_bias: 0.5,
                seed,
            })
            .unwrap();
            let regions = solve(&game, &SolverConfig::classic()).unwrap().regions;
            if !regions.win_even.is_empty() && !regions.win_odd.is_empty() {
                mixed += 1;
            }
        }
        assert!(mixed >= 100, "only {mixed} of 1000 games had both players winning");
    }
}
