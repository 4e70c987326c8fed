use std::collections::BTreeMap;

use crate::error::{domain, Result};
use crate::summary::forest::SupernodeId;

/// Polarity of a super-edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    /// p-edge: every subnode pair in the block gains +1.
    Pos,
    /// n-edge: every subnode pair in the block gains -1.
    Neg,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_value(v: i32) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// P+ and P- stored as one signed, symmetric adjacency. A pair holds at most
/// one sign, so P+ and P- are disjoint by construction. Self-loops are stored
/// once under the node's own entry.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuperEdgeSet {
    adj: Vec<BTreeMap<SupernodeId, Sign>>,
    pos: usize,
    neg: usize,
}

impl SuperEdgeSet {
    pub fn new(id_bound: usize) -> Self {
        SuperEdgeSet {
            adj: vec![BTreeMap::new(); id_bound],
            pos: 0,
            neg: 0,
        }
    }

    pub(crate) fn grow(&mut self, id_bound: usize) {
        if self.adj.len() < id_bound {
            self.adj.resize_with(id_bound, BTreeMap::new);
        }
    }

    pub fn pos_count(&self) -> usize {
        self.pos
    }

    pub fn neg_count(&self) -> usize {
        self.neg
    }

    pub fn len(&self) -> usize {
        self.pos + self.neg
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, a: SupernodeId, b: SupernodeId) -> Option<Sign> {
        self.adj.get(a as usize).and_then(|m| m.get(&b).copied())
    }

    /// Edges incident to `a` as `(other endpoint, sign)`; a self-loop lists `a`.
    pub fn incident(&self, a: SupernodeId) -> impl Iterator<Item = (SupernodeId, Sign)> + '_ {
        self.adj
            .get(a as usize)
            .into_iter()
            .flat_map(|m| m.iter().map(|(&b, &s)| (b, s)))
    }

    pub fn degree(&self, a: SupernodeId) -> usize {
        self.adj.get(a as usize).map_or(0, |m| m.len())
    }

    /// Overwrites the pair's sign (or clears it) and returns the previous one.
    pub fn set(&mut self, a: SupernodeId, b: SupernodeId, sign: Option<Sign>) -> Option<Sign> {
        self.grow(a.max(b) as usize + 1);
        let prev = match sign {
            Some(s) => {
                let prev = self.adj[a as usize].insert(b, s);
                if a != b {
                    self.adj[b as usize].insert(a, s);
                }
                prev
            }
            None => {
                let prev = self.adj[a as usize].remove(&b);
                if a != b {
                    self.adj[b as usize].remove(&a);
                }
                prev
            }
        };
        self.bump(prev, -1);
        self.bump(sign, 1);
        prev
    }

    fn bump(&mut self, sign: Option<Sign>, by: isize) {
        match sign {
            Some(Sign::Pos) => self.pos = self.pos.wrapping_add_signed(by),
            Some(Sign::Neg) => self.neg = self.neg.wrapping_add_signed(by),
            None => {}
        }
    }

    /// Adds an edge with cancellation: an opposite edge on the same pair is
    /// removed instead. A second edge of the same sign cannot be represented.
    pub fn add(&mut self, a: SupernodeId, b: SupernodeId, sign: Sign) -> Result<()> {
        match self.get(a, b) {
            None => {
                self.set(a, b, Some(sign));
                Ok(())
            }
            Some(s) if s != sign => {
                self.set(a, b, None);
                Ok(())
            }
            Some(_) => domain(format!("pair ({a}, {b}) already carries a {sign:?} edge")),
        }
    }

    /// All edges as `(a, b, sign)` with `a <= b`, sorted by `(a, b)`.
    pub fn iter(&self) -> impl Iterator<Item = (SupernodeId, SupernodeId, Sign)> + '_ {
        self.adj.iter().enumerate().flat_map(|(a, m)| {
            let a = a as SupernodeId;
            m.range(a..).map(move |(&b, &s)| (a, b, s))
        })
    }
}
