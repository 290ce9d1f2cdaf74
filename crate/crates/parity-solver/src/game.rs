//! Game graph data model: nodes with owners and priorities, validated
//! construction, self-loop normalization, and mask-based subgame views.

use std::fmt;

use thiserror::Error;

use crate::node_set::NodeSet;

/// Dense index of a node within its owning [`Game`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(u32);

impl NodeId {
    pub fn new(index: usize) -> Self {
        NodeId(u32::try_from(index).expect("node index fits in u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The two players.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Owner {
    Even,
    Odd,
}

impl Owner {
    pub fn opponent(self) -> Owner {
        match self {
            Owner::Even => Owner::Odd,
            Owner::Odd => Owner::Even,
        }
    }

    /// Player favored by a priority value: even values favor Even.
    pub fn of_priority(value: u32) -> Owner {
        if value % 2 == 0 { Owner::Even } else { Owner::Odd }
    }

    pub fn is_even(self) -> bool {
        matches!(self, Owner::Even)
    }

    /// 0 for Even, 1 for Odd; also the on-disk encoding.
    pub fn index(self) -> usize {
        match self {
            Owner::Even => 0,
            Owner::Odd => 1,
        }
    }
}

impl fmt::Display for Owner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Owner::Even => write!(f, "even"),
            Owner::Odd => write!(f, "odd"),
        }
    }
}

/// Non-negative priority label of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Priority(u32);

impl Priority {
    pub fn new(value: u32) -> Self {
        Priority(value)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    /// Player that wins a play whose limsup is this priority.
    pub fn favors(self) -> Owner {
        Owner::of_priority(self.0)
    }
}

impl fmt::Display for Priority {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Raw description of one node, used as input to [`build_game`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSpec {
    pub owner: Owner,
    pub priority: u32,
    pub successors: Vec<u32>,
}

impl NodeSpec {
    pub fn new(owner: Owner, priority: u32, successors: Vec<u32>) -> Self {
        NodeSpec { owner, priority, successors }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("node {0} has no successors")]
    EmptySuccessors(NodeId),
    #[error("node {node} has successor {target} outside the game")]
    DanglingEdge { node: NodeId, target: u32 },
    #[error("node {0} has a self-loop; normalize it first")]
    SelfLoop(NodeId),
    #[error("removal is not attractor-closed: node {0} would lose all successors")]
    NotAttractorClosed(NodeId),
    #[error("operation requires a nonempty view")]
    EmptyView,
}

/// Immutable game graph.
///
/// Construction validates the structural invariants: every node has at least
/// one successor, there are no self-loops, and predecessor lists are the
/// exact inverse of successor lists. Duplicate edges in the input are
/// silently dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    owners: Vec<Owner>,
    priorities: Vec<Priority>,
    successors: Vec<Vec<NodeId>>,
    predecessors: Vec<Vec<NodeId>>,
    max_priority: Priority,
}

/// Validates `specs` and builds a [`Game`].
///
/// Self-loops are rejected; run [`normalize_self_loops`] first when the
/// input may contain them.
pub fn build_game(specs: &[NodeSpec]) -> Result<Game, GameError> {
    let n = specs.len();
    let mut successors = Vec::with_capacity(n);
    for (i, spec) in specs.iter().enumerate() {
        let node = NodeId::new(i);
        if spec.successors.is_empty() {
            return Err(GameError::EmptySuccessors(node));
        }
        let mut succs: Vec<NodeId> = Vec::with_capacity(spec.successors.len());
        for &t in &spec.successors {
            if t as usize >= n {
                return Err(GameError::DanglingEdge { node, target: t });
            }
            if t as usize == i {
                return Err(GameError::SelfLoop(node));
            }
            let t = NodeId::new(t as usize);
            if !succs.contains(&t) {
                succs.push(t);
            }
        }
        successors.push(succs);
    }

    let mut predecessors = vec![Vec::new(); n];
    for (i, succs) in successors.iter().enumerate() {
        for &t in succs {
            predecessors[t.index()].push(NodeId::new(i));
        }
    }

    let max_priority = Priority::new(specs.iter().map(|s| s.priority).max().unwrap_or(0));
    Ok(Game {
        owners: specs.iter().map(|s| s.owner).collect(),
        priorities: specs.iter().map(|s| Priority::new(s.priority)).collect(),
        successors,
        predecessors,
        max_priority,
    })
}

impl Game {
    pub fn node_count(&self) -> usize {
        self.owners.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count()).map(NodeId::new)
    }

    pub fn owner(&self, v: NodeId) -> Owner {
        self.owners[v.index()]
    }

    pub fn priority(&self, v: NodeId) -> Priority {
        self.priorities[v.index()]
    }

    pub fn successors(&self, v: NodeId) -> &[NodeId] {
        &self.successors[v.index()]
    }

    pub fn predecessors(&self, v: NodeId) -> &[NodeId] {
        &self.predecessors[v.index()]
    }

    pub fn edge_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    /// Highest priority in the game; `Priority(0)` for an empty game.
    pub fn max_priority(&self) -> Priority {
        self.max_priority
    }

    /// View with every node live.
    pub fn full_view(&self) -> SubgameView<'_> {
        SubgameView {
            game: self,
            removed: NodeSet::new(self.node_count()),
            live: self.node_count(),
        }
    }

    /// Node specs equivalent to this game, for re-normalization or emission.
    pub fn to_specs(&self) -> Vec<NodeSpec> {
        self.nodes()
            .map(|v| NodeSpec {
                owner: self.owner(v),
                priority: self.priority(v).value(),
                successors: self.successors(v).iter().map(|t| t.index() as u32).collect(),
            })
            .collect()
    }
}

/// Effect of [`normalize_self_loops`] on a spec list.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalizeReport {
    /// `(looping node, inserted relay node)` pairs; original ids are unchanged.
    pub loop_relays: Vec<(u32, u32)>,
    /// Number of duplicate edges dropped.
    pub deduped_edges: usize,
}

/// Removes self-loops by subdividing each loop edge and drops duplicate edges.
///
/// A loop at `v` is replaced by a fresh relay node `v'` with the priority of
/// `v`, owned by Even (irrelevant: it has a single successor), and edges
/// `v -> v' -> v`. Every play through `v'` sees the same limsup of priorities
/// as the original looping play, so winners of all original nodes are
/// preserved. Original node ids are unchanged; relays are appended.
pub fn normalize_self_loops(specs: &[NodeSpec]) -> (Vec<NodeSpec>, NormalizeReport) {
    let mut out: Vec<NodeSpec> = Vec::with_capacity(specs.len());
    let mut report = NormalizeReport::default();
    let mut relays: Vec<NodeSpec> = Vec::new();
    let first_relay_id = specs.len() as u32;

    for (i, spec) in specs.iter().enumerate() {
        let mut succs: Vec<u32> = Vec::with_capacity(spec.successors.len());
        let mut relay: Option<u32> = None;
        for &t in &spec.successors {
            let target = if t as usize == i {
                *relay.get_or_insert_with(|| {
                    let id = first_relay_id + relays.len() as u32;
                    relays.push(NodeSpec::new(Owner::Even, spec.priority, vec![i as u32]));
                    report.loop_relays.push((i as u32, id));
                    id
                })
            } else {
                t
            };
            if succs.contains(&target) {
                report.deduped_edges += 1;
            } else {
                succs.push(target);
            }
        }
        out.push(NodeSpec::new(spec.owner, spec.priority, succs));
    }

    out.extend(relays);
    (out, report)
}

/// A game restricted by a set of removed nodes, without copying the graph.
///
/// Removals are only ever attractor-closed, which keeps the invariant that
/// every live node has at least one live successor. Views only shrink; a
/// view never resurrects nodes.
#[derive(Debug, Clone)]
pub struct SubgameView<'a> {
    game: &'a Game,
    removed: NodeSet,
    live: usize,
}

impl<'a> SubgameView<'a> {
    pub fn game(&self) -> &'a Game {
        self.game
    }

    pub fn live_count(&self) -> usize {
        self.live
    }

    pub fn is_empty(&self) -> bool {
        self.live == 0
    }

    pub fn is_live(&self, v: NodeId) -> bool {
        !self.removed.contains(v)
    }

    pub fn live_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.game.nodes().filter(|&v| self.is_live(v))
    }

    pub fn live_successors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.game.successors(v).iter().copied().filter(|&t| self.is_live(t))
    }

    pub fn live_predecessors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.game.predecessors(v).iter().copied().filter(|&t| self.is_live(t))
    }

    /// The live nodes as a set.
    pub fn live_set(&self) -> NodeSet {
        NodeSet::from_ids(self.game.node_count(), self.live_nodes())
    }

    /// Highest priority among live nodes.
    pub fn max_priority(&self) -> Result<Priority, GameError> {
        self.live_nodes()
            .map(|v| self.game.priority(v))
            .max()
            .ok_or(GameError::EmptyView)
    }

    /// Live nodes carrying exactly priority `p`.
    pub fn nodes_with_priority(&self, p: Priority) -> NodeSet {
        NodeSet::from_ids(
            self.game.node_count(),
            self.live_nodes().filter(|&v| self.game.priority(v) == p),
        )
    }

    /// Removes `to_remove` from the view.
    ///
    /// `to_remove` must be attractor-closed within this view; a live node that
    /// would lose its last live successor signals a caller bug and is
    /// reported as [`GameError::NotAttractorClosed`].
    pub fn restrict(&self, to_remove: &NodeSet) -> Result<SubgameView<'a>, GameError> {
        let mut removed = self.removed.clone();
        let mut live = self.live;
        for v in to_remove.iter() {
            if removed.insert(v) {
                live -= 1;
            }
        }
        let view = SubgameView { game: self.game, removed, live };
        for v in view.live_nodes() {
            if view.live_successors(v).next().is_none() {
                return Err(GameError::NotAttractorClosed(v));
            }
        }
        Ok(view)
    }

    /// Copies the live part into a standalone [`Game`], returning for each
    /// dense node of the copy the id it had in the base game.
    pub fn materialize(&self) -> (Game, Vec<NodeId>) {
        let ids: Vec<NodeId> = self.live_nodes().collect();
        let mut dense = vec![u32::MAX; self.game.node_count()];
        for (i, &v) in ids.iter().enumerate() {
            dense[v.index()] = i as u32;
        }
        let specs: Vec<NodeSpec> = ids
            .iter()
            .map(|&v| NodeSpec {
                owner: self.game.owner(v),
                priority: self.game.priority(v).value(),
                successors: self.live_successors(v).map(|t| dense[t.index()]).collect(),
            })
            .collect();
        let game = build_game(&specs).expect("live subgraph of a valid game is valid");
        (game, ids)
    }
}
