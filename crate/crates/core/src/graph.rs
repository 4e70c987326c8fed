//! Simple undirected input graphs with dense node ids and sorted adjacency.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use rand::seq::index;

use crate::error::{domain, Error, Result};
use crate::rng;

/// Dense subnode index, `0..node_count`.
pub type NodeId = u32;

/// A simple undirected graph: symmetric, loop-free, duplicate-free, with each
/// adjacency list sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct InputGraph {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
    /// External label of each dense id, as read from the source file.
    labels: Vec<i64>,
}

impl InputGraph {
    /// Builds a graph on `node_count` nodes from arbitrary edges. Directions,
    /// duplicates and self-loops are dropped. Labels default to the dense ids.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut adjacency = vec![Vec::new(); node_count];
        for (u, v) in edges {
            if u as usize >= node_count || v as usize >= node_count {
                return domain(format!("edge ({u}, {v}) outside 0..{node_count}"));
            }
            if u != v {
                adjacency[u as usize].push(v);
                adjacency[v as usize].push(u);
            }
        }
        let labels = (0..node_count as i64).collect();
        Ok(Self::normalize(adjacency, labels))
    }

    fn normalize(mut adjacency: Vec<Vec<NodeId>>, labels: Vec<i64>) -> Self {
        let mut total = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            total += list.len();
        }
        InputGraph {
            adjacency,
            edge_count: total / 2,
            labels,
        }
    }

    /// Parses a whitespace-separated edge list. Blank lines and lines starting
    /// with `#` are skipped; any tokens past the first two are ignored.
    /// External ids are densified in order of first appearance.
    pub fn load_edge_list<R: BufRead>(source: R) -> Result<Self> {
        let mut index: HashMap<i64, NodeId> = HashMap::new();
        let mut labels = Vec::new();
        let mut raw = Vec::new();
        let mut intern = |label: i64, labels: &mut Vec<i64>| {
            *index.entry(label).or_insert_with(|| {
                labels.push(label);
                (labels.len() - 1) as NodeId
            })
        };
        for (lineno, line) in source.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let mut next = || -> Result<i64> {
                let tok = tokens.next().ok_or_else(|| Error::Parse {
                    line: lineno + 1,
                    message: "expected two node ids".into(),
                })?;
                tok.parse::<i64>().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    message: format!("malformed node id {tok:?}"),
                })
            };
            let (a, b) = (next()?, next()?);
            let u = intern(a, &mut labels);
            let v = intern(b, &mut labels);
            raw.push((u, v));
        }
        let mut adjacency = vec![Vec::new(); labels.len()];
        for (u, v) in raw {
            if u != v {
                adjacency[u as usize].push(v);
                adjacency[v as usize].push(u);
            }
        }
        Ok(Self::normalize(adjacency, labels))
    }

    /// Writes one `u v` line per edge (`u < v`) using dense ids.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adjacency[u as usize].len()
    }

    /// Sorted neighbors of `u`.
    pub fn neighbors(&self, u: NodeId) -> Result<&[NodeId]> {
        match self.adjacency.get(u as usize) {
            Some(list) => Ok(list),
            None => domain(format!("node {u} out of range 0..{}", self.node_count())),
        }
    }

    /// Unchecked neighbor access for hot loops.
    #[inline]
    pub fn adj(&self, u: NodeId) -> &[NodeId] {
        &self.adjacency[u as usize]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency
            .get(u as usize)
            .is_some_and(|list| list.binary_search(&v).is_ok())
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = u as NodeId;
            list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    /// External label of a dense id.
    pub fn label(&self, u: NodeId) -> i64 {
        self.labels[u as usize]
    }

    /// Edge set expressed in external labels, each pair ordered and the list sorted.
    pub fn labelled_edges(&self) -> Vec<(i64, i64)> {
        let mut out: Vec<_> = self
            .edges()
            .map(|(u, v)| {
                let (a, b) = (self.label(u), self.label(v));
                (a.min(b), a.max(b))
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Induced subgraph on `ceil(fraction * |V|)` nodes drawn uniformly with a
    /// seeded RNG. Sampled nodes keep their relative order when re-densified.
    pub fn induced_sample(&self, fraction: f64, seed: u64) -> Result<InputGraph> {
        if !(fraction > 0.0 && fraction <= 1.0) {
            return domain(format!("sample fraction {fraction} not in (0, 1]"));
        }
        let n = self.node_count();
        let keep = ((fraction * n as f64).ceil() as usize).min(n);
        let mut rng = rng::stream(seed, rng::TAG_SAMPLE, n as u64, keep as u64);
        let mut chosen = index::sample(&mut rng, n, keep).into_vec();
        chosen.sort_unstable();
        let mut remap = vec![NodeId::MAX; n];
        for (new, &old) in chosen.iter().enumerate() {
            remap[old] = new as NodeId;
        }
        let adjacency = chosen
            .iter()
            .map(|&old| {
                self.adjacency[old]
                    .iter()
                    .filter_map(|&w| {
                        let m = remap[w as usize];
                        (m != NodeId::MAX).then_some(m)
                    })
                    .collect()
            })
            .collect();
        let labels = chosen.iter().map(|&old| self.labels[old]).collect();
        Ok(Self::normalize(adjacency, labels))
    }

    /// Full structural scan of the adjacency invariants.
    pub fn check_invariants(&self) -> bool {
        let mut total = 0;
        for (u, list) in self.adjacency.iter().enumerate() {
            total += list.len();
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &v in list {
                if v as usize == u || !self.has_edge(v, u as NodeId) {
                    return false;
                }
            }
        }
        total == 2 * self.edge_count
    }
}
