//! Batch helpers fanning independent work items out across threads.
//!
//! Games are immutable and solver runs share no state, so sweeps over many
//! game instances are data-parallel. With the `parallel` feature (default)
//! the `map*` functions run on the rayon pool; without it they degrade to
//! the sequential versions. The `*_seq` variants are always sequential and
//! exist so benchmarks can compare both paths in one build.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to every item, in parallel when enabled.
pub fn map<I, T, F>(items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sequential counterpart of [`map`].
pub fn map_seq<I, T, F>(items: &[I], f: F) -> Vec<T>
where
    F: Fn(&I) -> T,
{
    items.iter().map(f).collect()
}

/// Applies `f` to every seed in the range, in parallel when enabled.
pub fn map_seeds<T, F>(seeds: Range<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        seeds.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        seeds.map(f).collect()
    }
}

/// Sequential counterpart of [`map_seeds`].
pub fn map_seeds_seq<T, F>(seeds: Range<u64>, f: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    seeds.map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{GenParams, random_game};
    use crate::solvers::{Regions, SolverConfig, solve};

    fn solve_seed(seed: u64) -> Regions {
        let game = random_game(&GenParams {
            nodes: 6,
            max_priority: 5,
            min_out: 1,
            max_out: 3,
            owner_bias: 0.5,
            seed,
        })
        .unwrap();
        solve(&game, &SolverConfig::classic()).unwrap().regions
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let par = map_seeds(0..64, solve_seed);
        let seq = map_seeds_seq(0..64, solve_seed);
        assert_eq!(par, seq);

        let items: Vec<u64> = (0..32).collect();
        assert_eq!(map(&items, |&s| solve_seed(s)), map_seq(&items, |&s| solve_seed(s)));
    }
}
