//! Dense bitset over the node ids of one game.

use std::fmt;

use crate::game::NodeId;

/// Set of node ids with O(1) membership tests and ascending iteration.
///
/// Every set is tied to a fixed universe size (the node count of the game it
/// was created for); sets over different universes never compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct NodeSet {
    words: Vec<u64>,
    universe: usize,
    len: usize,
}

impl NodeSet {
    /// Empty set over a universe of `universe` nodes.
    pub fn new(universe: usize) -> Self {
        NodeSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
            len: 0,
        }
    }

    /// Set containing every id in `0..universe`.
    pub fn full(universe: usize) -> Self {
        let mut set = NodeSet::new(universe);
        for v in 0..universe {
            set.insert(NodeId::new(v));
        }
        set
    }

    pub fn from_ids<I: IntoIterator<Item = NodeId>>(universe: usize, ids: I) -> Self {
        let mut set = NodeSet::new(universe);
        for v in ids {
            set.insert(v);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: NodeId) -> bool {
        let i = v.index();
        debug_assert!(i < self.universe);
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    /// Inserts `v`; returns true if it was not already present.
    pub fn insert(&mut self, v: NodeId) -> bool {
        let i = v.index();
        assert!(i < self.universe, "node id {i} outside universe {}", self.universe);
        let mask = 1 << (i % 64);
        let fresh = self.words[i / 64] & mask == 0;
        if fresh {
            self.words[i / 64] |= mask;
            self.len += 1;
        }
        fresh
    }

    /// Removes `v`; returns true if it was present.
    pub fn remove(&mut self, v: NodeId) -> bool {
        let i = v.index();
        debug_assert!(i < self.universe);
        let mask = 1 << (i % 64);
        let present = self.words[i / 64] & mask != 0;
        if present {
            self.words[i / 64] &= !mask;
            self.len -= 1;
        }
        present
    }

    pub fn union_with(&mut self, other: &NodeSet) {
        debug_assert_eq!(self.universe, other.universe);
        let mut len = 0;
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
            len += w.count_ones() as usize;
        }
        self.len = len;
    }

    pub fn is_subset_of(&self, other: &NodeSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(w, o)| w & !o == 0)
    }

    pub fn is_disjoint_from(&self, other: &NodeSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(w, o)| w & o == 0)
    }

    /// Complement within the universe.
    pub fn complement(&self) -> NodeSet {
        let mut out = NodeSet::new(self.universe);
        for v in 0..self.universe {
            let v = NodeId::new(v);
            if !self.contains(v) {
                out.insert(v);
            }
        }
        out
    }

    /// Ascending iteration over members.
    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(NodeId::new(wi * 64 + b))
            })
        })
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.index())).finish()
    }
}
