#![allow(dead_code)] // not every test binary uses every helper

//! Shared helpers for the integration tests: reference instances, an
//! independent 6-cycle enumerator and a small deterministic RNG.

use config3::config::Configuration;
use config3::cyclic::{cyclic_configuration, CyclicTriple};
use config3::graphs::SimpleGraph;

pub fn fano() -> Configuration {
    cyclic_configuration(&CyclicTriple::new(7, 1, 2, 4).unwrap())
}

/// Count all simple 6-cycles by depth-first path extension, each cycle
/// found once from its least vertex with a fixed direction. Independent of
/// the per-edge counting rule used by the library.
pub fn six_cycles_by_dfs(g: &SimpleGraph) -> u64 {
    fn extend(g: &SimpleGraph, path: &mut Vec<u32>, on_path: &mut [bool], count: &mut u64) {
        let start = path[0];
        if path.len() == 6 {
            let last = *path.last().unwrap();
            if path[1] < last && g.has_edge(last, start) {
                *count += 1;
            }
            return;
        }
        let current = *path.last().unwrap();
        for &y in g.neighbors(current) {
            if y <= start || on_path[y as usize] {
                continue;
            }
            path.push(y);
            on_path[y as usize] = true;
            extend(g, path, on_path, count);
            on_path[y as usize] = false;
            path.pop();
        }
    }

    let mut count = 0;
    let mut on_path = vec![false; g.n()];
    for start in 0..g.n() as u32 {
        let mut path = vec![start];
        on_path[start as usize] = true;
        extend(g, &mut path, &mut on_path, &mut count);
        on_path[start as usize] = false;
    }
    count
}

/// Small xorshift generator for reproducible shuffles in tests.
pub struct XorShift(u64);

impl XorShift {
    pub fn new(seed: u64) -> Self {
        XorShift(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn next_below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    /// A uniformly-ish random permutation of `0..n` by Fisher-Yates.
    pub fn permutation(&mut self, n: usize) -> Vec<u32> {
        let mut perm: Vec<u32> = (0..n as u32).collect();
        for i in (1..n).rev() {
            let j = self.next_below(i + 1);
            perm.swap(i, j);
        }
        perm
    }
}

/// Relabel the points of a configuration by `perm`.
pub fn relabel(cfg: &Configuration, perm: &[u32]) -> Configuration {
    let blocks = cfg
        .blocks()
        .iter()
        .map(|b| b.map(|p| perm[p as usize]))
        .collect();
    Configuration::new(cfg.v(), blocks).expect("relabeling preserves validity")
}
