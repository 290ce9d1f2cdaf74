//! Shared fixtures for unit tests.

use crate::game::{Game, NodeSpec, Owner, build_game};

/// Two-node cycle with priorities 2 and 1; Even wins everywhere.
pub fn g1() -> Game {
    build_game(&[
        NodeSpec::new(Owner::Even, 2, vec![1]),
        NodeSpec::new(Owner::Even, 1, vec![0]),
    ])
    .unwrap()
}

/// Two-node cycle, both priorities 1; Odd wins everywhere.
pub fn g2() -> Game {
    build_game(&[
        NodeSpec::new(Owner::Even, 1, vec![1]),
        NodeSpec::new(Owner::Even, 1, vec![0]),
    ])
    .unwrap()
}

/// Odd-owned variant of [`g2`].
pub fn g2_odd_owned() -> Game {
    build_game(&[
        NodeSpec::new(Owner::Odd, 1, vec![1]),
        NodeSpec::new(Owner::Odd, 1, vec![0]),
    ])
    .unwrap()
}

/// Three nodes where Even must avoid the cycle through node 2:
/// 0:(Even,1,[1,2]), 1:(Odd,2,[0]), 2:(Odd,3,[0]). Even wins everywhere.
pub fn g3() -> Game {
    build_game(&[
        NodeSpec::new(Owner::Even, 1, vec![1, 2]),
        NodeSpec::new(Owner::Odd, 2, vec![0]),
        NodeSpec::new(Owner::Odd, 3, vec![0]),
    ])
    .unwrap()
}
