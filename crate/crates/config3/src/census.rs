//! Fragment counting: two-block fragments (disjoint and intersecting
//! pairs), the five three-block fragments, and the closed formulas that
//! determine all of them from `v` and the triangle count `t`.
//!
//! The three-block fragments, classified by the pairwise intersection
//! pattern of the blocks:
//!
//! * `B1` (3-PPC): three pairwise disjoint blocks;
//! * `B2` (hut): exactly one intersecting pair;
//! * `B3` (3-star): pairwise intersecting with a common point;
//! * `B4` (3-path): exactly two intersecting pairs;
//! * `B5` (triangle): pairwise intersecting, no common point.
//!
//! Direct classification over all block triples and formula evaluation are
//! kept as independent routes and cross-checked by [`verify_census`].

use serde::Serialize;
use thiserror::Error;

use crate::config::Configuration;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Fragment counts of one configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FragmentCensus {
    pub v: usize,
    /// Triangle count, equal to `b5`.
    pub t: u64,
    /// Disjoint block pairs.
    pub a1: u64,
    /// Intersecting block pairs.
    pub a2: u64,
    /// 3-partial parallel classes.
    pub b1: u64,
    /// Huts.
    pub b2: u64,
    /// 3-stars.
    pub b3: u64,
    /// 3-paths.
    pub b4: u64,
    /// Triangles.
    pub b5: u64,
}

/// Error raised when no configuration can realise a `(v, t)` pair.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CensusError {
    #[error("no configuration with v = {v} can have t = {t}: {reason}")]
    InfeasiblePair { v: usize, t: u64, reason: String },
}

fn choose2(n: u64) -> u64 {
    n * (n - 1) / 2
}

fn choose3(n: u64) -> u64 {
    n * (n - 1) * (n - 2) / 6
}

/// Per-block point bitmasks, `words` words of 64 points each.
struct BlockMasks {
    words: usize,
    bits: Vec<u64>,
}

impl BlockMasks {
    fn build(cfg: &Configuration) -> Self {
        let words = cfg.v().div_ceil(64).max(1);
        let mut bits = vec![0u64; words * cfg.blocks().len()];
        for (bi, b) in cfg.blocks().iter().enumerate() {
            for &p in b {
                bits[bi * words + (p / 64) as usize] |= 1u64 << (p % 64);
            }
        }
        BlockMasks { words, bits }
    }

    fn intersects(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.bits[i * self.words..], &self.bits[j * self.words..]);
        (0..self.words).any(|w| a[w] & b[w] != 0)
    }

    fn common_point(&self, i: usize, j: usize, k: usize) -> bool {
        let a = &self.bits[i * self.words..];
        let b = &self.bits[j * self.words..];
        let c = &self.bits[k * self.words..];
        (0..self.words).any(|w| a[w] & b[w] & c[w] != 0)
    }
}

/// Number of unordered block triples that are pairwise intersecting with no
/// point common to all three. Equals the number of 6-cycles in the Levi
/// graph.
///
/// Counted through the block-intersection graph: every triangle there is
/// either three blocks through one point (exactly `v` of those) or a
/// genuine triangle fragment.
pub fn count_triangles(cfg: &Configuration) -> u64 {
    let v = cfg.v();
    let mut point_blocks = vec![[0u32; 3]; v];
    let mut fill = vec![0usize; v];
    for (bi, b) in cfg.blocks().iter().enumerate() {
        for &p in b {
            let p = p as usize;
            point_blocks[p][fill[p]] = bi as u32;
            fill[p] += 1;
        }
    }
    // Each block intersects exactly six others, two through each point.
    let mut nbrs = vec![[0u32; 6]; v];
    let mut nfill = vec![0usize; v];
    for pb in &point_blocks {
        for &x in pb {
            for &y in pb {
                if x != y {
                    nbrs[x as usize][nfill[x as usize]] = y;
                    nfill[x as usize] += 1;
                }
            }
        }
    }
    let mut triangles = 0u64;
    // Each triangle {i,j,k} of the block graph is counted once, from its
    // least vertex; neighbour lists are unsorted, and each unordered pair
    // appears in exactly one position pair.
    for i in 0..v as u32 {
        let ni = &nbrs[i as usize];
        for a in 0..6 {
            for b in (a + 1)..6 {
                let (x, y) = (ni[a], ni[b]);
                if x.min(y) <= i {
                    continue;
                }
                if nbrs[x as usize].contains(&y) {
                    triangles += 1;
                }
            }
        }
    }
    debug_assert!(triangles >= v as u64);
    triangles - v as u64
}

fn classify_range(cfg: &Configuration, masks: &BlockMasks, lo: usize, hi: usize) -> [u64; 7] {
    let n = cfg.blocks().len();
    // a1, a2, b1, b2, b3, b4, b5
    let mut acc = [0u64; 7];
    for i in lo..hi {
        for j in (i + 1)..n {
            let sij = masks.intersects(i, j);
            if sij {
                acc[1] += 1;
            } else {
                acc[0] += 1;
            }
            for k in (j + 1)..n {
                let sik = masks.intersects(i, k);
                let sjk = masks.intersects(j, k);
                match sij as u8 + sik as u8 + sjk as u8 {
                    0 => acc[2] += 1,
                    1 => acc[3] += 1,
                    2 => acc[5] += 1,
                    _ => {
                        if masks.common_point(i, j, k) {
                            acc[4] += 1;
                        } else {
                            acc[6] += 1;
                        }
                    }
                }
            }
        }
    }
    acc
}

fn census_from_acc(v: usize, acc: [u64; 7]) -> FragmentCensus {
    FragmentCensus {
        v,
        t: acc[6],
        a1: acc[0],
        a2: acc[1],
        b1: acc[2],
        b2: acc[3],
        b3: acc[4],
        b4: acc[5],
        b5: acc[6],
    }
}

/// Classify every pair and triple of blocks by intersection pattern.
/// The counts partition all `C(v,2)` pairs and `C(v,3)` triples.
pub fn count_fragments_direct(cfg: &Configuration) -> FragmentCensus {
    #[cfg(feature = "parallel")]
    {
        let masks = BlockMasks::build(cfg);
        let n = cfg.blocks().len();
        let acc = (0..n)
            .into_par_iter()
            .map(|i| classify_range(cfg, &masks, i, i + 1))
            .reduce(
                || [0u64; 7],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            );
        census_from_acc(cfg.v(), acc)
    }
    #[cfg(not(feature = "parallel"))]
    {
        count_fragments_direct_seq(cfg)
    }
}

/// Sequential version of [`count_fragments_direct`].
pub fn count_fragments_direct_seq(cfg: &Configuration) -> FragmentCensus {
    let masks = BlockMasks::build(cfg);
    let acc = classify_range(cfg, &masks, 0, cfg.blocks().len());
    census_from_acc(cfg.v(), acc)
}

/// Evaluate the closed formulas for the fragment counts of a configuration
/// with `v` points and `t` triangles:
///
/// ```text
/// a1 = v(v-7)/2            a2 = 3v
/// b1 = (v^3 - 21v^2 + 122v - 6t)/6
/// b2 = 3(v(v-11) + t)      b3 = v
/// b4 = 3(4v - t)           b5 = t
/// ```
///
/// A negative count means no configuration with this `(v, t)` can exist.
pub fn census_from_formulas(v: usize, t: u64) -> Result<FragmentCensus, CensusError> {
    let infeasible = |reason: &str| CensusError::InfeasiblePair {
        v,
        t,
        reason: reason.to_string(),
    };
    if v < 7 {
        return Err(infeasible("v is below the minimum order 7"));
    }
    let vi = v as i64;
    let ti = t as i64;
    if ti > 4 * vi {
        return Err(infeasible("t exceeds the upper bound 4v"));
    }
    let b1_num = vi * vi * vi - 21 * vi * vi + 122 * vi - 6 * ti;
    if b1_num < 0 {
        return Err(infeasible("b1 would be negative"));
    }
    if b1_num % 6 != 0 {
        return Err(infeasible("b1 would not be an integer"));
    }
    let b2 = 3 * (vi * (vi - 11) + ti);
    if b2 < 0 {
        return Err(infeasible("b2 would be negative"));
    }
    let b4 = 3 * (4 * vi - ti);
    if b4 < 0 {
        return Err(infeasible("b4 would be negative"));
    }
    Ok(FragmentCensus {
        v,
        t,
        a1: (vi * (vi - 7) / 2) as u64,
        a2: 3 * v as u64,
        b1: (b1_num / 6) as u64,
        b2: b2 as u64,
        b3: v as u64,
        b4: b4 as u64,
        b5: t,
    })
}

/// Cross-check the direct classification against the formulas: true iff
/// they agree field by field for this configuration.
pub fn verify_census(cfg: &Configuration) -> bool {
    let direct = count_fragments_direct(cfg);
    match census_from_formulas(cfg.v(), count_triangles(cfg)) {
        Ok(formula) => direct == formula,
        Err(_) => false,
    }
}

impl FragmentCensus {
    /// The pair counts must partition all block pairs and the triple counts
    /// all block triples.
    pub fn partitions_all_fragments(&self) -> bool {
        let v = self.v as u64;
        self.a1 + self.a2 == choose2(v)
            && self.b1 + self.b2 + self.b3 + self.b4 + self.b5 == choose3(v)
    }
}
