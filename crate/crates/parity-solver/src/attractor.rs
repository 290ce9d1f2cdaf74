//! Attractor computation: the set of nodes from which a player can force
//! the play into a target set.

use thiserror::Error;

use crate::game::{NodeId, Owner, SubgameView};
use crate::node_set::NodeSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AttractorError {
    #[error("attractor target {0} is not live in the view")]
    TargetNotLive(NodeId),
}

/// Work counters for the linearity test.
#[derive(Debug, Default, Clone, Copy)]
pub struct AttractorStats {
    pub edge_visits: usize,
}

/// Computes the attractor of `targets` for `player` within `view`.
///
/// The result is the least set `A` with `targets ⊆ A` such that a live node
/// of `player` with some live successor in `A` is in `A`, and a live node of
/// the opponent with all live successors in `A` is in `A`.
pub fn attractor(
    view: &SubgameView<'_>,
    player: Owner,
    targets: &NodeSet,
) -> Result<NodeSet, AttractorError> {
    attractor_detailed(view, player, targets).map(|(set, _)| set)
}

/// [`attractor`] plus work counters.
///
/// Backward worklist with a per-node countdown of live successors for
/// opponent nodes, so the total work is linear in the live subgraph: every
/// live edge is traversed at most twice (once from its head's worklist pop,
/// once during the lazy countdown initialization of its tail).
pub fn attractor_detailed(
    view: &SubgameView<'_>,
    player: Owner,
    targets: &NodeSet,
) -> Result<(NodeSet, AttractorStats), AttractorError> {
    let game = view.game();
    let mut stats = AttractorStats::default();
    let mut attracted = NodeSet::new(game.node_count());
    let mut worklist: Vec<NodeId> = Vec::with_capacity(targets.len());

    for v in targets.iter() {
        if !view.is_live(v) {
            return Err(AttractorError::TargetNotLive(v));
        }
        attracted.insert(v);
        worklist.push(v);
    }

    // Countdown of live successors outside `attracted`, initialized lazily.
    // u32::MAX marks "not yet initialized".
    let mut remaining = vec![u32::MAX; game.node_count()];

    while let Some(v) = worklist.pop() {
        for u in view.live_predecessors(v) {
            stats.edge_visits += 1;
            if attracted.contains(u) {
                continue;
            }
            let pulled = if game.owner(u) == player {
                true
            } else {
                if remaining[u.index()] == u32::MAX {
                    let mut live_succs = 0;
                    for _ in view.live_successors(u) {
                        live_succs += 1;
                        stats.edge_visits += 1;
                    }
                    remaining[u.index()] = live_succs;
                }
                // One decrement per attracted successor: each member of the
                // set is popped exactly once, and we are scanning v's
                // predecessors during its single pop.
                remaining[u.index()] -= 1;
                remaining[u.index()] == 0
            };
            if pulled {
                attracted.insert(u);
                worklist.push(u);
            }
        }
    }

    Ok((attracted, stats))
}
