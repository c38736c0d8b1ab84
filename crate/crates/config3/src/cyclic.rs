//! Cyclic configurations: generation from starter triples, enumeration of
//! the valid triples for a given `v`, and classification of their triangle
//! counts.
//!
//! A cyclic configuration admits the automorphism `i -> i+1 (mod v)` and is
//! the orbit of the starter block `{0, a, a+b}` with `a + b + c = v`. For
//! `v >= 10` the triangle count is `v`, `4v/3` or `2v`: the base `v`
//! triangles always occur, one bonus of `v` comes from a doubled element of
//! the connection set, and one bonus of `v/3` from `v/3` itself lying in
//! the connection set.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::census::count_triangles;
use crate::config::Configuration;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Errors raised while building or analysing cyclic configurations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CyclicError {
    #[error("invalid triple <{a},{b},{c}> for v = {v}: {reason}")]
    InvalidTriple {
        v: usize,
        a: u32,
        b: u32,
        c: u32,
        reason: String,
    },
    #[error("triple <{a},{b},{c}> has gcd {gcd} > 1, the orbit is disconnected")]
    Disconnected { a: u32, b: u32, c: u32, gcd: u32 },
    #[error("triangle prediction needs v >= 10, got {v}; count directly instead")]
    UnsupportedV { v: usize },
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Cyclically ordered triple `<a,b,c>` with `a+b+c = v`, generating a
/// connected cyclic configuration from the starter block `{0, a, a+b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CyclicTriple {
    v: usize,
    a: u32,
    b: u32,
    c: u32,
}

impl CyclicTriple {
    /// Validate a candidate triple: elements in `1..=v-3`, pairwise
    /// distinct, none equal to `v/2` when `v` is even, summing to `v`, and
    /// with gcd 1 (a larger gcd leaves the orbit disconnected).
    pub fn new(v: usize, a: u32, b: u32, c: u32) -> Result<Self, CyclicError> {
        let invalid = |reason: &str| CyclicError::InvalidTriple {
            v,
            a,
            b,
            c,
            reason: reason.to_string(),
        };
        if (a as u64) + (b as u64) + (c as u64) != v as u64 {
            return Err(invalid("elements must sum to v"));
        }
        if a == 0 || b == 0 || c == 0 {
            return Err(invalid("elements must be positive"));
        }
        if v < 7 {
            return Err(invalid("v must be at least 7"));
        }
        if a as usize > v - 3 || b as usize > v - 3 || c as usize > v - 3 {
            return Err(invalid("elements must be at most v-3"));
        }
        if a == b || b == c || a == c {
            return Err(invalid("elements must be pairwise distinct"));
        }
        if v.is_multiple_of(2) {
            let half = (v / 2) as u32;
            if a == half || b == half || c == half {
                return Err(invalid("no element may equal v/2 when v is even"));
            }
        }
        let g = gcd(gcd(a, b), c);
        if g != 1 {
            return Err(CyclicError::Disconnected { a, b, c, gcd: g });
        }
        Ok(CyclicTriple { v, a, b, c })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn elements(&self) -> (u32, u32, u32) {
        (self.a, self.b, self.c)
    }

    /// The connection set `{±a, ±b, ±c}` as residues mod `v`.
    fn connection_set(&self) -> [u32; 6] {
        let v = self.v as u32;
        [self.a, v - self.a, self.b, v - self.b, self.c, v - self.c]
    }
}

impl std::fmt::Display for CyclicTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<{},{},{}>", self.a, self.b, self.c)
    }
}

/// The orbit of the starter block `{0, a, a+b}` under `i -> i+1 (mod v)`.
/// Always a valid connected configuration for a validated triple; the
/// cyclic automorphism is checked in debug builds.
pub fn cyclic_configuration(triple: &CyclicTriple) -> Configuration {
    let v = triple.v as u32;
    let (a, b, _) = triple.elements();
    let blocks: Vec<[u32; 3]> = (0..v).map(|i| [i, (i + a) % v, (i + a + b) % v]).collect();
    let cfg = Configuration::new(triple.v, blocks)
        .expect("validated cyclic triples always generate valid configurations");
    debug_assert!(crate::config::is_connected(&cfg));
    debug_assert!(admits_shift(&cfg));
    cfg
}

/// True iff `i -> i+1 (mod v)` maps blocks to blocks.
pub fn admits_shift(cfg: &Configuration) -> bool {
    let v = cfg.v() as u32;
    let original = cfg.sorted_blocks();
    let mut shifted: Vec<[u32; 3]> = cfg
        .blocks()
        .iter()
        .map(|b| {
            let mut s = b.map(|p| (p + 1) % v);
            s.sort_unstable();
            s
        })
        .collect();
    shifted.sort_unstable();
    original == shifted
}

/// Predicted triangle count of a connected cyclic configuration with
/// `v >= 10`: `v` plus `v` when some element of the connection set is twice
/// another (excluding the pair `(s, -s)`, which belongs to the second
/// condition), plus `v/3` when `3 | v` and `v/3` lies in the connection
/// set. The result is always `v`, `4v/3` or `2v`.
pub fn predict_cyclic_triangles(triple: &CyclicTriple) -> Result<u64, CyclicError> {
    let v = triple.v;
    if v < 10 {
        return Err(CyclicError::UnsupportedV { v });
    }
    let vu = v as u64;
    let set = triple.connection_set();
    let modulus = v as u32;
    let doubled = set.iter().any(|&s| {
        let twice = (2 * s) % modulus;
        twice != (modulus - s) % modulus && set.contains(&twice)
    });
    let third = v.is_multiple_of(3) && set.contains(&((v / 3) as u32));
    // Both bonuses together only happen for disconnected orbits or v = 9.
    assert!(!(doubled && third), "bonus conditions overlap for {triple}");
    let mut t = vu;
    if doubled {
        t += vu;
    }
    if third {
        t += vu / 3;
    }
    Ok(t)
}

/// All valid connected triples for `v`, deduplicated up to rotation and
/// reversal of the cyclic order. Each class is represented by its
/// lexicographically least member `(a < b < c)`, in ascending order.
pub fn enumerate_cyclic(v: usize) -> Vec<CyclicTriple> {
    let mut out = Vec::new();
    if v < 7 {
        return out;
    }
    for a in 1..=(v as u32) / 3 {
        for b in (a + 1)..(v as u32) {
            let rest = v as u64 - a as u64 - b as u64;
            if rest <= b as u64 {
                break;
            }
            let c = rest as u32;
            if let Ok(triple) = CyclicTriple::new(v, a, b, c) {
                out.push(triple);
            }
        }
    }
    out
}

/// Map each triangle count to the representatives attaining it, by direct
/// count over the generated configurations. For every representative the
/// direct count matches [`predict_cyclic_triangles`].
pub fn classify_cyclic(v: usize) -> Result<BTreeMap<u64, Vec<CyclicTriple>>, CyclicError> {
    if v < 10 {
        return Err(CyclicError::UnsupportedV { v });
    }
    let reps = enumerate_cyclic(v);
    let counted = classify_counts(&reps);
    let mut map: BTreeMap<u64, Vec<CyclicTriple>> = BTreeMap::new();
    for (triple, t) in counted {
        map.entry(t).or_default().push(triple);
    }
    Ok(map)
}

/// Sequential version of [`classify_cyclic`].
pub fn classify_cyclic_seq(v: usize) -> Result<BTreeMap<u64, Vec<CyclicTriple>>, CyclicError> {
    if v < 10 {
        return Err(CyclicError::UnsupportedV { v });
    }
    let reps = enumerate_cyclic(v);
    let mut map: BTreeMap<u64, Vec<CyclicTriple>> = BTreeMap::new();
    for triple in reps {
        let t = count_triangles(&cyclic_configuration(&triple));
        map.entry(t).or_default().push(triple);
    }
    Ok(map)
}

#[cfg(feature = "parallel")]
fn classify_counts(reps: &[CyclicTriple]) -> Vec<(CyclicTriple, u64)> {
    reps.par_iter()
        .map(|triple| (*triple, count_triangles(&cyclic_configuration(triple))))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn classify_counts(reps: &[CyclicTriple]) -> Vec<(CyclicTriple, u64)> {
    reps.iter()
        .map(|triple| (*triple, count_triangles(&cyclic_configuration(triple))))
        .collect()
}
