//! Canonical forms and isomorphism testing.
//!
//! The canonical form of a configuration is the lexicographically least
//! block list over all relabelings of its points (blocks ascending, block
//! list sorted). Two configurations are isomorphic exactly when their
//! canonical block lists coincide.
//!
//! The search builds the image block list left to right: at each step only
//! the relabelings achieving the minimal possible next block are explored,
//! and branches whose forced next block already exceeds the best known
//! image are cut. The same engine answers the cheaper question "is this
//! block list already minimal in its orbit?", which the orderly enumeration
//! uses to reject non-canonical partial structures.

use sha2::{Digest, Sha256};

use crate::config::{Block, Configuration};

const UNSET: u32 = u32::MAX;

fn pack(b: [u32; 3]) -> u64 {
    debug_assert!(b[0] < (1 << 21) && b[1] < (1 << 21) && b[2] < (1 << 21));
    ((b[0] as u64) << 42) | ((b[1] as u64) << 21) | b[2] as u64
}

fn unpack(p: u64) -> Block {
    [
        (p >> 42) as u32 & 0x1f_ffff,
        (p >> 21) as u32 & 0x1f_ffff,
        p as u32 & 0x1f_ffff,
    ]
}

/// Label-invariant fingerprint of a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    canonical_blocks: Vec<Block>,
    hash: [u8; 32],
}

impl CanonicalForm {
    /// The lexicographically least relabeled block list.
    pub fn canonical_blocks(&self) -> &[Block] {
        &self.canonical_blocks
    }

    /// SHA-256 digest of the canonical block list.
    pub fn hash(&self) -> &[u8; 32] {
        &self.hash
    }

    pub fn hash_hex(&self) -> String {
        self.hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Compute the canonical form of a configuration: invariant under any
/// relabeling of points and reordering of blocks, minimal over the orbit.
pub fn canonical_form(cfg: &Configuration) -> CanonicalForm {
    let blocks = cfg.sorted_blocks();
    let mut search = Canonicalizer::new();
    let canonical_blocks = search.min_image(cfg.v(), &blocks);
    let mut hasher = Sha256::new();
    hasher.update((cfg.v() as u64).to_le_bytes());
    for b in &canonical_blocks {
        for &p in b {
            hasher.update(p.to_le_bytes());
        }
    }
    CanonicalForm {
        canonical_blocks,
        hash: hasher.finalize().into(),
    }
}

/// True iff some point bijection maps the blocks of `a` onto the blocks of `b`.
pub fn are_isomorphic(a: &Configuration, b: &Configuration) -> bool {
    a.v() == b.v() && canonical_form(a).canonical_blocks == canonical_form(b).canonical_blocks
}

/// Backtracking search for the lexicographically least relabeled block
/// list. Reusable across calls; all scratch space is retained.
pub(crate) struct Canonicalizer {
    old_to_new: Vec<u32>,
    /// Old points in assignment order; the new label of `assigned[i]` is `i`.
    assigned: Vec<u32>,
    used: Vec<bool>,
    image: Vec<u64>,
    bound: Vec<u64>,
    blocks: Vec<Block>,
    /// Tied minimal candidates per depth, retained to avoid reallocation.
    cands: Vec<Vec<u32>>,
    compute: bool,
    found_smaller: bool,
    path_smaller: bool,
}

impl Canonicalizer {
    pub(crate) fn new() -> Self {
        Canonicalizer {
            old_to_new: Vec::new(),
            assigned: Vec::new(),
            used: Vec::new(),
            image: Vec::new(),
            bound: Vec::new(),
            blocks: Vec::new(),
            cands: Vec::new(),
            compute: false,
            found_smaller: false,
            path_smaller: false,
        }
    }

    /// Lexicographically least relabeled block list of `blocks` (which must
    /// be ascending triples in ascending order) under all relabelings of
    /// `0..v`.
    pub(crate) fn min_image(&mut self, v: usize, blocks: &[Block]) -> Vec<Block> {
        self.prepare(v, blocks, true);
        self.search(0);
        self.bound.iter().map(|&p| unpack(p)).collect()
    }

    /// True iff `blocks` is the least element of its relabeling orbit.
    pub(crate) fn is_lex_min(&mut self, v: usize, blocks: &[Block]) -> bool {
        self.prepare(v, blocks, false);
        self.search(0);
        !self.found_smaller
    }

    fn prepare(&mut self, v: usize, blocks: &[Block], compute: bool) {
        debug_assert!(blocks.windows(2).all(|w| w[0] < w[1]));
        self.old_to_new.clear();
        self.old_to_new.resize(v, UNSET);
        self.assigned.clear();
        self.used.clear();
        self.used.resize(blocks.len(), false);
        self.image.clear();
        self.bound.clear();
        self.bound.extend(blocks.iter().map(|&b| pack(b)));
        self.blocks.clear();
        self.blocks.extend_from_slice(blocks);
        while self.cands.len() < blocks.len() {
            self.cands.push(Vec::new());
        }
        self.compute = compute;
        self.found_smaller = false;
        self.path_smaller = false;
    }

    /// Minimal possible image of block `bi` given the current assignment:
    /// mapped points keep their labels, unmapped ones take the smallest
    /// fresh labels. Returns the packed image and the unmapped old points.
    fn block_value(&self, bi: usize) -> (u64, [u32; 3], usize) {
        let next = self.assigned.len() as u32;
        let mut fixed = [0u32; 3];
        let mut nf = 0;
        let mut unmapped = [0u32; 3];
        let mut nu = 0;
        for &p in &self.blocks[bi] {
            let label = self.old_to_new[p as usize];
            if label == UNSET {
                unmapped[nu] = p;
                nu += 1;
            } else {
                fixed[nf] = label;
                nf += 1;
            }
        }
        fixed[..nf].sort_unstable();
        // Fresh labels exceed every assigned label, so the image is the
        // sorted fixed labels followed by next, next+1, ...
        let mut t = [0u32; 3];
        t[..nf].copy_from_slice(&fixed[..nf]);
        for i in 0..nu {
            t[nf + i] = next + i as u32;
        }
        (pack(t), unmapped, nu)
    }

    fn push_assignment(&mut self, points: &[u32]) {
        for &p in points {
            self.old_to_new[p as usize] = self.assigned.len() as u32;
            self.assigned.push(p);
        }
    }

    fn pop_assignment(&mut self, count: usize) {
        for _ in 0..count {
            let p = self.assigned.pop().expect("assignment stack underflow");
            self.old_to_new[p as usize] = UNSET;
        }
    }

    fn search(&mut self, depth: usize) {
        if depth == self.blocks.len() {
            // Sibling branches inside an improving subtree may complete
            // worse than an improvement already recorded, so compare first.
            if self.path_smaller && self.image < self.bound {
                debug_assert!(self.compute);
                self.bound.copy_from_slice(&self.image);
            }
            return;
        }
        let mut cmin = u64::MAX;
        let mut cands = std::mem::take(&mut self.cands[depth]);
        cands.clear();
        for bi in 0..self.blocks.len() {
            if self.used[bi] {
                continue;
            }
            let (value, _, _) = self.block_value(bi);
            if value < cmin {
                cmin = value;
                cands.clear();
                cands.push(bi as u32);
            } else if value == cmin {
                cands.push(bi as u32);
            }
        }
        for &bi in &cands {
            let bi = bi as usize;
            let was_smaller = self.path_smaller;
            if !was_smaller {
                // The bound may have shrunk during earlier siblings, but any
                // improvement found below this node shares the current image
                // prefix, so re-comparing per sibling stays consistent.
                match cmin.cmp(&self.bound[depth]) {
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Less => {
                        if !self.compute {
                            self.found_smaller = true;
                            break;
                        }
                        self.path_smaller = true;
                    }
                    std::cmp::Ordering::Equal => {}
                }
            }
            let (value, unmapped, nu) = self.block_value(bi);
            debug_assert_eq!(value, cmin);
            self.used[bi] = true;
            self.image.push(cmin);
            for perm in permutations(&unmapped[..nu]) {
                self.push_assignment(&perm[..nu]);
                self.search(depth + 1);
                self.pop_assignment(nu);
                if self.found_smaller {
                    break;
                }
            }
            self.image.pop();
            self.used[bi] = false;
            self.path_smaller = was_smaller;
            if self.found_smaller {
                break;
            }
        }
        self.cands[depth] = cands;
    }
}

/// All orderings of up to three items, used to branch over which unmapped
/// point receives which fresh label.
fn permutations(items: &[u32]) -> impl Iterator<Item = [u32; 3]> + '_ {
    const ORDERS: [&[[usize; 3]]; 4] = [
        &[[0, 0, 0]],
        &[[0, 0, 0]],
        &[[0, 1, 0], [1, 0, 0]],
        &[
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ],
    ];
    ORDERS[items.len()].iter().map(move |order| {
        let mut out = [0u32; 3];
        for (slot, &idx) in out.iter_mut().zip(order.iter()).take(items.len()) {
            *slot = items[idx];
        }
        out
    })
}
