//! Insertion-only component tracking for `G[D]`.

use crate::graph::{NodeId, WeightedGraph};

/// Union-find over the members of a growing node set `D`. Two members share
/// a root iff they are connected inside `G[D]`.
///
/// Queries take `&self` and never compress paths, so a scan may read the
/// index from several threads. Union by size keeps trees shallow.
#[derive(Debug, Clone)]
pub struct ComponentIndex {
    member: Vec<bool>,
    parent: Vec<usize>,
    size: Vec<usize>,
    members: usize,
    components: usize,
}

impl ComponentIndex {
    pub fn new(n: usize) -> Self {
        ComponentIndex {
            member: vec![false; n],
            parent: (0..n).collect(),
            size: vec![1; n],
            members: 0,
            components: 0,
        }
    }

    pub fn from_set(graph: &WeightedGraph, set: &[NodeId]) -> Self {
        let mut idx = Self::new(graph.node_count());
        idx.insert_all(graph, set);
        idx
    }

    pub fn contains(&self, u: NodeId) -> bool {
        self.member[u]
    }

    /// `p(D)`: number of components of `G[D]`.
    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn len(&self) -> usize {
        self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    /// Component id (root) of a member.
    pub fn find(&self, mut u: NodeId) -> usize {
        debug_assert!(self.member[u]);
        while self.parent[u] != u {
            u = self.parent[u];
        }
        u
    }

    fn find_compress(&mut self, u: NodeId) -> usize {
        let root = self.find(u);
        let mut x = u;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Adds `u` to `D`, merging it with member neighbors. Returns the drop in
    /// component count, which is `-1` when `u` touches no member.
    pub fn insert(&mut self, graph: &WeightedGraph, u: NodeId) -> isize {
        if self.member[u] {
            return 0;
        }
        let before = self.components as isize;
        self.member[u] = true;
        self.members += 1;
        self.components += 1;
        for &v in graph.neighbors(u) {
            if !self.member[v] {
                continue;
            }
            let a = self.find_compress(u);
            let b = self.find_compress(v);
            if a != b {
                let (big, small) = if self.size[a] >= self.size[b] {
                    (a, b)
                } else {
                    (b, a)
                };
                self.parent[small] = big;
                self.size[big] += self.size[small];
                self.components -= 1;
            }
        }
        before - self.components as isize
    }

    pub fn insert_all(&mut self, graph: &WeightedGraph, nodes: &[NodeId]) -> isize {
        nodes.iter().map(|&u| self.insert(graph, u)).sum()
    }

    /// Distinct components of `G[D]` adjacent to `u`, sorted.
    pub fn neighbor_components(&self, graph: &WeightedGraph, u: NodeId) -> Vec<usize> {
        let mut out: Vec<usize> = graph
            .neighbors(u)
            .iter()
            .filter(|&&v| self.member[v])
            .map(|&v| self.find(v))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn members(&self) -> Vec<NodeId> {
        (0..self.member.len()).filter(|&u| self.member[u]).collect()
    }

    pub fn membership(&self) -> &[bool] {
        &self.member
    }
}
