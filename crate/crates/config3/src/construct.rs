//! Constructions: the triangle-free family (a generalised-quadrangle base,
//! embedded girth-8 seeds, and a +5-point extension step), and the cyclic
//! chain of edge-deleted Heawood graphs with many triangles.
//!
//! Triangle-free configurations exist exactly for `v = 15` and `v >= 17`.
//! The builder picks the base of matching residue mod 5 and applies the
//! extension until the requested order is reached; every extension verifies
//! its own postconditions, even in release builds, since the correctness of
//! the whole family rests on them.

use serde::Serialize;
use thiserror::Error;

use crate::config::Configuration;
use crate::cyclic::{cyclic_configuration, CyclicTriple};
use crate::graphs::{
    check_ten_cycle, configuration_from_levi, girth, levi_graph, Girth, LeviGraph, SimpleGraph,
};

/// Errors raised by the construction pipeline.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("no embedded seed with v = {v} and index {index}")]
    NoSuchSeed { v: usize, index: usize },
    #[error("graph contains no 10-cycle")]
    NoTenCycle,
    #[error("not a 10-cycle: {reason}")]
    BadCycle { reason: String },
    #[error("extension postcondition failed: {what}")]
    PostconditionFailed { what: String },
    #[error("no triangle-free configuration exists for v = {v}")]
    NoSuchConfiguration { v: usize },
    #[error("chain needs at least 2 copies, got {n}")]
    NTooSmall { n: usize },
}

/// Record of how a triangle-free configuration was assembled: the base
/// order and the designated 10-cycles consumed by the +5 extensions.
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionTrace {
    pub base_v: usize,
    pub steps: usize,
    pub cycle_history: Vec<Vec<u32>>,
}

/// The unique triangle-free configuration on 15 points: points are the
/// unordered pairs of a 6-set, blocks its perfect matchings. Its Levi
/// graph is the smallest cubic graph of girth 8.
pub fn cremona_richmond() -> Configuration {
    let mut pair_index = [[0u32; 6]; 6];
    let mut idx = 0u32;
    for (i, row) in pair_index.iter_mut().enumerate() {
        for slot in row.iter_mut().skip(i + 1) {
            *slot = idx;
            idx += 1;
        }
    }
    let pair = |x: usize, y: usize| pair_index[x.min(y)][x.max(y)];
    let mut blocks = Vec::with_capacity(15);
    // A matching pairs 0 with some p; the remaining four elements split
    // three ways.
    for p in 1..6usize {
        let rest: Vec<usize> = (1..6).filter(|&x| x != p).collect();
        for k in 1..4usize {
            let others: Vec<usize> = (1..4).filter(|&i| i != k).collect();
            blocks.push([
                pair(0, p),
                pair(rest[0], rest[k]),
                pair(rest[others[0]], rest[others[1]]),
            ]);
        }
    }
    Configuration::new(15, blocks).expect("pairs and matchings of a 6-set form a configuration")
}

const SEED_17: &str = "012 034 056 178 19a 2bc 2de 37b 39d 48e 4af 58c 5df 6ab 6eg 7fg 9cg";
const SEED_18: [&str; 3] = [
    "012 034 056 178 19a 2bc 2de 37b 39d 48c 4af 58g 5ae 6ch 6df 7eh 9gh bfg",
    "012 034 056 178 19a 2bc 2de 37b 39d 48c 4fg 58e 59f 6ch 6dg 7fh abg aeh",
    "012 034 056 178 19a 2bc 2de 37b 39d 48e 4af 57g 5df 68c 69h acg bfh egh",
];
const SEED_19: &str = "012 034 056 178 19a 2bc 2de 37b 39d 48c 4af 57e 5ag 68h 69i bfh cgi dgh efi";
const SEED_21: &str =
    "012 034 056 178 19a 2bc 2de 37b 39d 48c 4af 57e 5gh 68i 6fj 9gk ahi bfg cjk dhj eik";

/// One of the six embedded triangle-free configurations of orders 17, 18
/// (three of them), 19 and 21, whose Levi graphs have girth 8 and contain
/// a 10-cycle. There is none of order 16: no cubic bipartite graph of
/// order 32 has girth 8.
pub fn seed_triangle_free(v: usize, index: usize) -> Result<Configuration, ConstructError> {
    let text = match (v, index) {
        (17, 0) => SEED_17,
        (18, 0..=2) => SEED_18[index],
        (19, 0) => SEED_19,
        (21, 0) => SEED_21,
        _ => return Err(ConstructError::NoSuchSeed { v, index }),
    };
    let cfg = Configuration::parse_compact(text).expect("embedded seed data is valid");
    debug_assert_eq!(cfg.v(), v);
    debug_assert_eq!(levi_graph(&cfg).girth(), Girth::Finite(8));
    Ok(cfg)
}

/// The Levi graph of the unique 7-point configuration: 14 vertices,
/// girth 6, 28 six-cycles, edge-transitive.
pub fn heawood_graph() -> SimpleGraph {
    let fano = cyclic_configuration(&CyclicTriple::new(7, 1, 2, 4).expect("<1,2,4> is valid"));
    levi_graph(&fano).graph().clone()
}

/// Lexicographically least cycle of the given length, as a vertex sequence
/// starting at its least vertex; `None` when the graph has no such cycle.
pub(crate) fn find_cycle_of_length(g: &SimpleGraph, len: usize) -> Option<Vec<u32>> {
    fn extend(g: &SimpleGraph, path: &mut Vec<u32>, on_path: &mut [bool], len: usize) -> bool {
        let start = path[0];
        if path.len() == len {
            let last = *path.last().unwrap();
            return path[1] < last && g.has_edge(last, start);
        }
        let current = *path.last().unwrap();
        for &y in g.neighbors(current) {
            if y <= start || on_path[y as usize] {
                continue;
            }
            path.push(y);
            on_path[y as usize] = true;
            if extend(g, path, on_path, len) {
                return true;
            }
            on_path[y as usize] = false;
            path.pop();
        }
        false
    }

    let mut on_path = vec![false; g.n()];
    for start in 0..g.n() as u32 {
        let mut path = vec![start];
        on_path[start as usize] = true;
        if extend(g, &mut path, &mut on_path, len) {
            return Some(path);
        }
        on_path[start as usize] = false;
    }
    None
}

/// Deterministic 10-cycle of a Levi graph: the lexicographically least one
/// under the vertex order.
pub fn find_ten_cycle(g: &LeviGraph) -> Result<Vec<u32>, ConstructError> {
    find_cycle_of_length(g.graph(), 10).ok_or(ConstructError::NoTenCycle)
}

/// Vertex order of the replacement 10-cycle on the new vertices.
const U_CYCLE_ORDER: [usize; 10] = [0, 3, 4, 7, 8, 1, 2, 5, 6, 9];

/// Extend a cubic bipartite girth-8 graph along a 10-cycle `c0..c9`: the
/// five edges `{c1,c2}, {c3,c4}, {c5,c6}, {c7,c8}, {c9,c0}` are deleted,
/// ten new vertices `u0..u9` are added carrying the cycle
/// `u0,u3,u4,u7,u8,u1,u2,u5,u6,u9` and a spoke `ui-ci` for every `i`.
///
/// The result has ten more vertices, is again cubic, bipartite, of girth
/// exactly 8, and carries the new cycle as its designated 10-cycle; all of
/// this is verified before returning, a failure signalling an
/// implementation bug.
pub fn extend_plus_five(g: &LeviGraph, cycle: &[u32]) -> Result<LeviGraph, ConstructError> {
    check_ten_cycle(g.graph(), cycle).map_err(|reason| ConstructError::BadCycle { reason })?;
    let n = g.n();
    let mut graph = g.graph().clone();
    graph.grow(n + 10);
    for i in 0..5 {
        graph.remove_edge(cycle[2 * i + 1], cycle[(2 * i + 2) % 10]);
    }
    let u = |i: usize| (n + i) as u32;
    for w in 0..10 {
        graph.add_edge(u(U_CYCLE_ORDER[w]), u(U_CYCLE_ORDER[(w + 1) % 10]));
    }
    for (i, &c) in cycle.iter().enumerate() {
        graph.add_edge(u(i), c);
    }
    let postcondition = |what: String| ConstructError::PostconditionFailed { what };
    let levi = LeviGraph::from_graph(graph).map_err(|e| postcondition(e.to_string()))?;
    match levi.girth() {
        Girth::Finite(8) => {}
        other => return Err(postcondition(format!("girth is {other}, expected 8"))),
    }
    let designated: Vec<u32> = U_CYCLE_ORDER.iter().map(|&i| u(i)).collect();
    levi.with_designated_cycle(designated)
        .map_err(|e| postcondition(e.to_string()))
}

/// Build a triangle-free configuration on `v` points, for `v = 15` or
/// `v >= 17`: the base of matching residue mod 5 is extended `(v-b)/5`
/// times, reusing each step's designated cycle for the next.
pub fn triangle_free(v: usize) -> Result<(Configuration, ExtensionTrace), ConstructError> {
    let no_trace = |base_v: usize| ExtensionTrace {
        base_v,
        steps: 0,
        cycle_history: Vec::new(),
    };
    if v == 15 {
        return Ok((cremona_richmond(), no_trace(15)));
    }
    if v < 17 {
        return Err(ConstructError::NoSuchConfiguration { v });
    }
    let base = match v % 5 {
        0 => 15,
        1 => 21,
        2 => 17,
        3 => 18,
        4 => 19,
        _ => unreachable!(),
    };
    let base_cfg = if base == 15 {
        cremona_richmond()
    } else {
        seed_triangle_free(base, 0)?
    };
    let steps = (v - base) / 5;
    if steps == 0 {
        return Ok((base_cfg, no_trace(base)));
    }
    let mut levi = levi_graph(&base_cfg);
    let mut cycle = find_ten_cycle(&levi)?;
    let mut cycle_history = Vec::with_capacity(steps);
    for _ in 0..steps {
        cycle_history.push(cycle.clone());
        levi = extend_plus_five(&levi, &cycle)?;
        cycle = levi
            .designated_cycle()
            .expect("extension always designates the new cycle")
            .to_vec();
    }
    let cfg = configuration_from_levi(&levi)
        .expect("extension output is cubic bipartite with equal sides");
    Ok((
        cfg,
        ExtensionTrace {
            base_v: base,
            steps,
            cycle_history,
        },
    ))
}

/// Join `n >= 2` copies of the edge-deleted Heawood graph cyclically, each
/// copy's exposed block vertex to the next copy's exposed point vertex.
/// The joining edges lie in no 6-cycle, so the result is the Levi graph of
/// a configuration on `7n` points with exactly `20n` triangles.
pub fn heawood_chain(n: usize) -> Result<Configuration, ConstructError> {
    if n < 2 {
        return Err(ConstructError::NTooSmall { n });
    }
    let base = heawood_graph();
    let edges = base.edges();
    let mut graph = SimpleGraph::new(14 * n);
    for c in 0..n {
        let off = (14 * c) as u32;
        for &(x, y) in &edges {
            // The deleted edge is the lexicographically first one; its
            // endpoints 0 (a point) and 7 (a block) become the exposures.
            if (x, y) == (0, 7) {
                continue;
            }
            graph.add_edge(x + off, y + off);
        }
        graph.add_edge(7 + off, (14 * ((c + 1) % n)) as u32);
    }
    debug_assert_eq!(girth(&graph), Girth::Finite(6));
    let levi = LeviGraph::from_graph(graph).expect("the chain is cubic and bipartite");
    Ok(configuration_from_levi(&levi).expect("the chain has girth 6 and equal sides"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::count_triangles;
    use crate::config::is_connected;
    use crate::graphs::{count_six_cycles, six_cycles_through_edge};

    #[test]
    fn cremona_richmond_shape() {
        let cr = cremona_richmond();
        assert_eq!(cr.v(), 15);
        assert_eq!(cr.blocks().len(), 15);
        assert!(is_connected(&cr));
        assert_eq!(count_triangles(&cr), 0);
        let levi = levi_graph(&cr);
        assert_eq!(levi.n(), 30);
        assert_eq!(levi.girth(), Girth::Finite(8));
    }

    #[test]
    fn seeds_are_triangle_free_with_ten_cycles() {
        for (v, index) in [(17, 0), (18, 0), (18, 1), (18, 2), (19, 0), (21, 0)] {
            let cfg = seed_triangle_free(v, index).unwrap();
            assert_eq!(cfg.v(), v);
            assert!(is_connected(&cfg));
            assert_eq!(count_triangles(&cfg), 0, "seed ({v},{index})");
            let levi = levi_graph(&cfg);
            assert_eq!(levi.girth(), Girth::Finite(8));
            let cycle = find_ten_cycle(&levi).unwrap();
            assert_eq!(cycle.len(), 10);
        }
        assert_eq!(
            seed_triangle_free(16, 0),
            Err(ConstructError::NoSuchSeed { v: 16, index: 0 })
        );
        assert_eq!(
            seed_triangle_free(17, 1),
            Err(ConstructError::NoSuchSeed { v: 17, index: 1 })
        );
    }

    #[test]
    fn ten_cycle_search_is_deterministic_and_sound() {
        let levi = levi_graph(&cremona_richmond());
        let cycle = find_ten_cycle(&levi).unwrap();
        assert_eq!(cycle, find_ten_cycle(&levi).unwrap());
        assert_eq!(cycle[0], *cycle.iter().min().unwrap());
        assert!(check_ten_cycle(levi.graph(), &cycle).is_ok());
        // A tree has no cycle of any length.
        let forest = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (2, 4)]);
        assert_eq!(find_cycle_of_length(&forest, 10), None);
    }

    #[test]
    fn extension_grows_by_ten_and_keeps_girth() {
        let levi = levi_graph(&cremona_richmond());
        let cycle = find_ten_cycle(&levi).unwrap();
        let extended = extend_plus_five(&levi, &cycle).unwrap();
        assert_eq!(extended.n(), 40);
        assert_eq!(extended.girth(), Girth::Finite(8));
        let cfg = configuration_from_levi(&extended).unwrap();
        assert_eq!(cfg.v(), 20);
        assert_eq!(count_triangles(&cfg), 0);
        let again = extend_plus_five(&extended, extended.designated_cycle().unwrap()).unwrap();
        assert_eq!(again.n(), 50);
        let cfg = configuration_from_levi(&again).unwrap();
        assert_eq!(cfg.v(), 25);
        assert_eq!(count_triangles(&cfg), 0);
    }

    #[test]
    fn extension_rejects_bad_cycles() {
        let levi = levi_graph(&cremona_richmond());
        let err = extend_plus_five(&levi, &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert!(matches!(err, Err(ConstructError::BadCycle { .. })));
        let err = extend_plus_five(&levi, &[0, 1, 2]);
        assert!(matches!(err, Err(ConstructError::BadCycle { .. })));
    }

    #[test]
    fn triangle_free_basic_orders() {
        let (cr, trace) = triangle_free(15).unwrap();
        assert_eq!(cr, cremona_richmond());
        assert_eq!(trace.steps, 0);
        assert!(matches!(
            triangle_free(16),
            Err(ConstructError::NoSuchConfiguration { v: 16 })
        ));
        assert!(matches!(
            triangle_free(14),
            Err(ConstructError::NoSuchConfiguration { v: 14 })
        ));
        let (cfg, trace) = triangle_free(27).unwrap();
        assert_eq!(trace.base_v, 17);
        assert_eq!(trace.steps, 2);
        assert_eq!(trace.cycle_history.len(), 2);
        assert_eq!(cfg.v(), 27);
        assert!(is_connected(&cfg));
        assert_eq!(count_triangles(&cfg), 0);
        assert!(levi_graph(&cfg).girth().at_least(8));
    }

    #[test]
    fn chain_counts() {
        assert!(matches!(
            heawood_chain(1),
            Err(ConstructError::NTooSmall { n: 1 })
        ));
        let two = heawood_chain(2).unwrap();
        assert_eq!(two.v(), 14);
        assert!(is_connected(&two));
        assert_eq!(count_triangles(&two), 40);
        let three = heawood_chain(3).unwrap();
        assert_eq!(three.v(), 21);
        assert_eq!(count_triangles(&three), 60);
        assert_eq!(count_six_cycles(&levi_graph(&three)), 60);
    }

    #[test]
    fn chain_joining_edges_lie_in_no_six_cycle() {
        let n = 3;
        // Rebuild the chain graph directly to identify the joining edges.
        let base = heawood_graph();
        let mut graph = SimpleGraph::new(14 * n);
        let mut joins = Vec::new();
        for c in 0..n {
            let off = (14 * c) as u32;
            for &(x, y) in &base.edges() {
                if (x, y) == (0, 7) {
                    continue;
                }
                graph.add_edge(x + off, y + off);
            }
            let join = (7 + off, (14 * ((c + 1) % n)) as u32);
            graph.add_edge(join.0, join.1);
            joins.push(join);
        }
        for (a, b) in joins {
            assert_eq!(six_cycles_through_edge(&graph, a, b), 0);
        }
        // The exposed vertices are at distance 5 inside one deleted copy.
        let mut copy = heawood_graph();
        copy.remove_edge(0, 7);
        let mut dist = [usize::MAX; 14];
        dist[0] = 0;
        let mut queue = std::collections::VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for &y in copy.neighbors(x) {
                if dist[y as usize] == usize::MAX {
                    dist[y as usize] = dist[x as usize] + 1;
                    queue.push_back(y);
                }
            }
        }
        assert_eq!(dist[7], 5);
    }
}
