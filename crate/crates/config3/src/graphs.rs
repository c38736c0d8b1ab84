//! Levi and incidence graphs of a configuration, girth, 6-cycle counting,
//! and conversion of girth-6 cubic bipartite graphs back into configurations.
//!
//! The number of triangles in a configuration equals the number of 6-cycles
//! in its Levi graph; the counting here goes edge by edge, using the fact
//! that the 6-cycles through an edge correspond to the edges between the
//! vertices at distance 2 from its two endpoints.

use thiserror::Error;

use crate::config::Configuration;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Undirected simple graph as sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<u32>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Insert the edge `{u, v}`, keeping neighbor lists sorted.
    /// Loops and duplicate edges are rejected.
    pub fn add_edge(&mut self, u: u32, v: u32) {
        assert_ne!(u, v, "loops are not allowed");
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a as usize];
            match list.binary_search(&b) {
                Ok(_) => panic!("duplicate edge {{{a},{b}}}"),
                Err(pos) => list.insert(pos, b),
            }
        }
    }

    pub fn remove_edge(&mut self, u: u32, v: u32) {
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a as usize];
            let pos = list
                .binary_search(&b)
                .unwrap_or_else(|_| panic!("edge {{{a},{b}}} not present"));
            list.remove(pos);
        }
    }

    /// All edges as pairs `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Grow the vertex set to `n`, leaving new vertices isolated.
    pub fn grow(&mut self, n: usize) {
        assert!(n >= self.adj.len());
        self.adj.resize(n, Vec::new());
    }

    /// Two-colour each component, putting its least vertex in `Side::Point`.
    /// Returns `None` for non-bipartite graphs.
    pub fn bipartition(&self) -> Option<Vec<Side>> {
        let n = self.n();
        let mut side = vec![None; n];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(Side::Point);
            queue.push_back(start as u32);
            while let Some(x) = queue.pop_front() {
                let s = side[x as usize].unwrap();
                for &y in self.neighbors(x) {
                    match side[y as usize] {
                        None => {
                            side[y as usize] = Some(s.other());
                            queue.push_back(y);
                        }
                        Some(t) if t == s => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }
}

/// Bipartition class of a Levi graph vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Point,
    Block,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Point => Side::Block,
            Side::Block => Side::Point,
        }
    }
}

/// Errors raised when interpreting a graph as a Levi graph of a
/// configuration.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LeviError {
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: u32, degree: usize },
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("girth {girth} is below 6, so some pair of points is covered twice")]
    GirthTooSmall { girth: u32 },
    #[error("bipartition classes have sizes {points} and {blocks}")]
    UnequalSides { points: usize, blocks: usize },
    #[error("designated cycle is not a 10-cycle: {reason}")]
    InvalidDesignatedCycle { reason: String },
}

/// Cubic bipartite point-block incidence graph of a configuration, with an
/// optional designated 10-cycle carried through the extension pipeline.
#[derive(Clone, Debug)]
pub struct LeviGraph {
    graph: SimpleGraph,
    side: Vec<Side>,
    designated_cycle: Option<Vec<u32>>,
}

impl LeviGraph {
    /// Wrap a cubic bipartite graph. The bipartition is recomputed, placing
    /// the least vertex of each component on the point side.
    pub fn from_graph(graph: SimpleGraph) -> Result<Self, LeviError> {
        for v in 0..graph.n() as u32 {
            if graph.degree(v) != 3 {
                return Err(LeviError::NotCubic {
                    vertex: v,
                    degree: graph.degree(v),
                });
            }
        }
        let side = graph.bipartition().ok_or(LeviError::NotBipartite)?;
        Ok(LeviGraph {
            graph,
            side,
            designated_cycle: None,
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn side(&self, v: u32) -> Side {
        self.side[v as usize]
    }

    pub fn designated_cycle(&self) -> Option<&[u32]> {
        self.designated_cycle.as_deref()
    }

    /// Attach a designated cycle after checking it is a genuine 10-cycle.
    pub fn with_designated_cycle(mut self, cycle: Vec<u32>) -> Result<Self, LeviError> {
        check_ten_cycle(&self.graph, &cycle)
            .map_err(|reason| LeviError::InvalidDesignatedCycle { reason })?;
        self.designated_cycle = Some(cycle);
        Ok(self)
    }

    pub fn girth(&self) -> Girth {
        girth(&self.graph)
    }
}

pub(crate) fn check_ten_cycle(g: &SimpleGraph, cycle: &[u32]) -> Result<(), String> {
    if cycle.len() != 10 {
        return Err(format!("length {} instead of 10", cycle.len()));
    }
    let mut distinct = cycle.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != 10 {
        return Err("repeated vertex".to_string());
    }
    if let Some(&v) = cycle.iter().find(|&&v| v as usize >= g.n()) {
        return Err(format!("vertex {v} out of range"));
    }
    for i in 0..10 {
        let (a, b) = (cycle[i], cycle[(i + 1) % 10]);
        if !g.has_edge(a, b) {
            return Err(format!("missing edge {{{a},{b}}}"));
        }
    }
    Ok(())
}

/// Length of a shortest cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Finite(u32),
    Infinite,
}

impl Girth {
    pub fn at_least(self, k: u32) -> bool {
        match self {
            Girth::Finite(g) => g >= k,
            Girth::Infinite => true,
        }
    }
}

impl std::fmt::Display for Girth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "infinite"),
        }
    }
}

/// Build the Levi graph: vertices `0..v` are the points, `v..2v` the blocks,
/// with an edge whenever a point lies in a block. No designated cycle is set.
pub fn levi_graph(cfg: &Configuration) -> LeviGraph {
    let v = cfg.v();
    let mut graph = SimpleGraph::new(2 * v);
    for (bi, b) in cfg.blocks().iter().enumerate() {
        for &p in b {
            graph.add_edge(p, (v + bi) as u32);
        }
    }
    let side = (0..2 * v)
        .map(|x| if x < v { Side::Point } else { Side::Block })
        .collect();
    LeviGraph {
        graph,
        side,
        designated_cycle: None,
    }
}

/// Build the incidence graph on the points, joining two points exactly when
/// they appear together in some block. 6-regular for a valid configuration.
pub fn incidence_graph(cfg: &Configuration) -> SimpleGraph {
    let mut graph = SimpleGraph::new(cfg.v());
    for b in cfg.blocks() {
        graph.add_edge(b[0], b[1]);
        graph.add_edge(b[0], b[2]);
        graph.add_edge(b[1], b[2]);
    }
    graph
}

/// Girth by breadth-first search from every vertex, pruned by the best
/// cycle found so far. `Infinite` for forests.
pub fn girth(g: &SimpleGraph) -> Girth {
    let n = g.n();
    let mut best = u32::MAX;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![u32::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for root in 0..n as u32 {
        dist.fill(u32::MAX);
        parent.fill(u32::MAX);
        dist[root as usize] = 0;
        queue.clear();
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x as usize];
            // A vertex at depth d can only reveal cycles of length >= 2d.
            if best != u32::MAX && 2 * dx >= best {
                break;
            }
            for &y in g.neighbors(x) {
                if y == parent[x as usize] {
                    continue;
                }
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = dx + 1;
                    parent[y as usize] = x;
                    queue.push_back(y);
                } else {
                    best = best.min(dx + dist[y as usize] + 1);
                }
            }
        }
    }
    if best == u32::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// Number of 6-cycles through the edge `{a, b}`: the edges between the
/// vertices at distance 2 from `b` (via a neighbour other than `a`) and the
/// vertices at distance 2 from `a`. Requires a bipartite graph of girth at
/// least 6.
pub fn six_cycles_through_edge(g: &SimpleGraph, a: u32, b: u32) -> u64 {
    debug_assert!(g.has_edge(a, b));
    let frontier = |near: u32, far: u32| -> Vec<u32> {
        let mut out = Vec::with_capacity(4);
        for &c in g.neighbors(near) {
            if c == far {
                continue;
            }
            for &d in g.neighbors(c) {
                if d != near {
                    out.push(d);
                }
            }
        }
        out
    };
    let via_b = frontier(b, a);
    let via_a = frontier(a, b);
    let mut count = 0u64;
    for &d in &via_b {
        for &e in &via_a {
            if g.has_edge(d, e) {
                count += 1;
            }
        }
    }
    count
}

/// Exact number of 6-cycles in a bipartite graph of girth at least 6,
/// computed per edge and divided by 6.
pub fn six_cycle_count(g: &SimpleGraph) -> u64 {
    #[cfg(feature = "parallel")]
    {
        // The per-edge work is tiny; chunk it so scheduling does not
        // dominate.
        let edges = g.edges();
        let total: u64 = edges
            .par_chunks(512)
            .map(|chunk| {
                chunk
                    .iter()
                    .map(|&(a, b)| six_cycles_through_edge(g, a, b))
                    .sum::<u64>()
            })
            .sum();
        debug_assert_eq!(total % 6, 0);
        total / 6
    }
    #[cfg(not(feature = "parallel"))]
    {
        six_cycle_count_seq(g)
    }
}

/// Sequential version of [`six_cycle_count`].
pub fn six_cycle_count_seq(g: &SimpleGraph) -> u64 {
    let total: u64 = g
        .edges()
        .iter()
        .map(|&(a, b)| six_cycles_through_edge(g, a, b))
        .sum();
    debug_assert_eq!(total % 6, 0);
    total / 6
}

/// Exact number of 6-cycles in a Levi graph. Equals the triangle count of
/// the corresponding configuration.
pub fn count_six_cycles(g: &LeviGraph) -> u64 {
    six_cycle_count(g.graph())
}

/// Read a configuration off a cubic bipartite graph of girth at least 6
/// with equal sides: points are the side containing vertex 0, blocks the
/// other side, block contents the neighbourhoods.
pub fn configuration_from_levi(g: &LeviGraph) -> Result<Configuration, LeviError> {
    match girth(g.graph()) {
        Girth::Finite(gi) if gi < 6 => return Err(LeviError::GirthTooSmall { girth: gi }),
        _ => {}
    }
    let mut points = Vec::new();
    let mut blocks_side = Vec::new();
    for x in 0..g.n() as u32 {
        match g.side(x) {
            Side::Point => points.push(x),
            Side::Block => blocks_side.push(x),
        }
    }
    if points.len() != blocks_side.len() {
        return Err(LeviError::UnequalSides {
            points: points.len(),
            blocks: blocks_side.len(),
        });
    }
    let mut point_index = vec![u32::MAX; g.n()];
    for (i, &p) in points.iter().enumerate() {
        point_index[p as usize] = i as u32;
    }
    let blocks = blocks_side
        .iter()
        .map(|&b| {
            let nbrs = g.graph().neighbors(b);
            [
                point_index[nbrs[0] as usize],
                point_index[nbrs[1] as usize],
                point_index[nbrs[2] as usize],
            ]
        })
        .collect();
    Ok(Configuration::new(points.len(), blocks)
        .expect("cubic bipartite girth-6 graphs always yield valid configurations"))
}

/// DOT rendering of a Levi graph; points are circles, blocks are boxes.
pub fn to_dot(g: &LeviGraph) -> String {
    let mut out = String::from("graph levi {\n");
    for x in 0..g.n() as u32 {
        let shape = match g.side(x) {
            Side::Point => "circle",
            Side::Block => "box",
        };
        out.push_str(&format!("  {x} [shape={shape}];\n"));
    }
    for (u, v) in g.graph().edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

/// Adjacency-list text: one line per vertex, `id: n1 n2 n3`.
pub fn to_adjacency_text(g: &SimpleGraph) -> String {
    let mut out = String::new();
    for x in 0..g.n() as u32 {
        out.push_str(&format!("{x}:"));
        for &y in g.neighbors(x) {
            out.push_str(&format!(" {y}"));
        }
        out.push('\n');
    }
    out
}
