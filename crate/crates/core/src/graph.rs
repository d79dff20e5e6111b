//! Node-weighted undirected graphs and problem instances.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

/// Dense node identifier in `0..n`.
pub type NodeId = usize;

/// Reasons a graph or instance fails validation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("graph must have at least one node")]
    Empty,
    #[error("cost vector has {got} entries, expected {expected}")]
    CostCount { expected: usize, got: usize },
    #[error("non-positive cost {cost} on node {node}")]
    NonPositiveCost { node: NodeId, cost: f64 },
    #[error("edge ({u}, {v}) references a node outside 0..{n}")]
    NodeOutOfRange { u: NodeId, v: NodeId, n: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(NodeId, NodeId),
    #[error("graph is disconnected (node {0} unreachable from node 0)")]
    Disconnected(NodeId),
    #[error("coordinate vector has {got} entries, expected {expected}")]
    CoordCount { expected: usize, got: usize },
    #[error("non-finite coordinate on node {0}")]
    BadCoord(NodeId),
    #[error(
        "unit disk rule violated for pair ({u}, {v}): distance {dist}, edge present: {present}"
    )]
    UnitDiskViolation {
        u: NodeId,
        v: NodeId,
        dist: f64,
        present: bool,
    },
    #[error("fold requirement m must be at least 1")]
    ZeroFold,
}

/// Returns true when two planar points lie within unit distance.
pub fn within_unit_disk(a: (f64, f64), b: (f64, f64)) -> bool {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    dx * dx + dy * dy <= 1.0
}

/// Simple undirected graph with strictly positive node costs.
///
/// Adjacency lists are sorted. When `coords` is present the edge set is
/// exactly the unit disk graph over those points.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    adjacency: Vec<Vec<NodeId>>,
    cost: Vec<f64>,
    coords: Option<Vec<(f64, f64)>>,
    edge_count: usize,
}

impl WeightedGraph {
    /// Builds a validated graph from an edge list. Edge order is irrelevant.
    pub fn new(
        cost: Vec<f64>,
        edges: &[(NodeId, NodeId)],
        coords: Option<Vec<(f64, f64)>>,
    ) -> Result<Self, GraphError> {
        let n = cost.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        for (node, &c) in cost.iter().enumerate() {
            // also rejects NaN
            if !(c.is_finite() && c > 0.0) {
                return Err(GraphError::NonPositiveCost { node, cost: c });
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::NodeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        let graph = WeightedGraph {
            adjacency,
            cost,
            coords,
            edge_count: edges.len(),
        };
        graph.check_coords()?;
        graph.check_connected()?;
        Ok(graph)
    }

    fn check_coords(&self) -> Result<(), GraphError> {
        let Some(coords) = &self.coords else {
            return Ok(());
        };
        let n = self.node_count();
        if coords.len() != n {
            return Err(GraphError::CoordCount {
                expected: n,
                got: coords.len(),
            });
        }
        if let Some(i) = coords
            .iter()
            .position(|&(x, y)| !x.is_finite() || !y.is_finite())
        {
            return Err(GraphError::BadCoord(i));
        }
        for u in 0..n {
            for v in u + 1..n {
                let close = within_unit_disk(coords[u], coords[v]);
                let present = self.has_edge(u, v);
                if close != present {
                    let dx = coords[u].0 - coords[v].0;
                    let dy = coords[u].1 - coords[v].1;
                    return Err(GraphError::UnitDiskViolation {
                        u,
                        v,
                        dist: (dx * dx + dy * dy).sqrt(),
                        present,
                    });
                }
            }
        }
        Ok(())
    }

    fn check_connected(&self) -> Result<(), GraphError> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(u) => Err(GraphError::Disconnected(u)),
            None => Ok(()),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor list of `u`.
    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adjacency[u].len()
    }

    /// Maximum degree, written δ in the analysis.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn cost(&self, u: NodeId) -> f64 {
        self.cost[u]
    }

    pub fn costs(&self) -> &[f64] {
        &self.cost
    }

    /// Sum of node costs, accumulated in the order given.
    pub fn set_cost(&self, nodes: &[NodeId]) -> f64 {
        nodes.iter().map(|&u| self.cost[u]).sum()
    }

    pub fn coords(&self) -> Option<&[(f64, f64)]> {
        self.coords.as_deref()
    }

    pub fn is_udg(&self) -> bool {
        self.coords.is_some()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }
}

/// A problem instance: graph plus fold requirement `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub graph: WeightedGraph,
    m: usize,
    pub label: String,
}

impl Instance {
    pub fn new(
        graph: WeightedGraph,
        m: usize,
        label: impl Into<String>,
    ) -> Result<Self, GraphError> {
        if m == 0 {
            return Err(GraphError::ZeroFold);
        }
        Ok(Instance {
            graph,
            m,
            label: label.into(),
        })
    }

    /// Fold requirement: every node outside the solution needs `m` neighbors in it.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.graph.node_count()
    }
}

/// Labels each member of `members` with a component id of `G[members]`.
///
/// Non-members get `None`. Component ids are dense, numbered in order of
/// the smallest member id they contain. Plain BFS, used as the from-scratch
/// reference for incremental structures.
pub fn induced_components(graph: &WeightedGraph, members: &[bool]) -> (Vec<Option<usize>>, usize) {
    let n = graph.node_count();
    let mut label = vec![None; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if !members[s] || label[s].is_some() {
            continue;
        }
        label[s] = Some(count);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in graph.neighbors(u) {
                if members[v] && label[v].is_none() {
                    label[v] = Some(count);
                    queue.push_back(v);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// Membership mask for a node list.
pub fn mask_of(n: usize, nodes: &[NodeId]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &u in nodes {
        mask[u] = true;
    }
    mask
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub edges: usize,
    pub max_degree: usize,
}

impl From<&WeightedGraph> for GraphStats {
    fn from(g: &WeightedGraph) -> Self {
        GraphStats {
            n: g.node_count(),
            edges: g.edge_count(),
            max_degree: g.max_degree(),
        }
    }
}
