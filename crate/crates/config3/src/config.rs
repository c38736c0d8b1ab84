//! Configuration data model: validation against the defining axioms,
//! compact and JSON text formats, connectivity.
//!
//! A symmetric configuration `v_3` has `v` points and `v` blocks of size 3
//! such that every point lies in exactly 3 blocks and every pair of points
//! lies in at most one block. Blocks are stored as ascending triples;
//! configuration equality is multiset equality of blocks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A block as an ascending triple of point ids.
pub type Block = [u32; 3];

/// Symbols of the compact text format, in point-id order.
pub const COMPACT_ALPHABET: &[u8; 62] =
    b"0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// Smallest order for which a symmetric configuration exists.
pub const MIN_ORDER: usize = 7;

fn symbol_index(ch: char) -> Option<u32> {
    match ch {
        '0'..='9' => Some(ch as u32 - '0' as u32),
        'a'..='z' => Some(ch as u32 - 'a' as u32 + 10),
        'A'..='Z' => Some(ch as u32 - 'A' as u32 + 36),
        _ => None,
    }
}

fn index_symbol(i: u32) -> char {
    COMPACT_ALPHABET[i as usize] as char
}

/// Identifier of a validation rule, one per defining axiom plus the range
/// checks on `v` and the point ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Axiom (i): every block has exactly 3 distinct points.
    BlockSize,
    /// Axiom (ii): every point lies in exactly 3 blocks.
    PointDegree,
    /// Axiom (iii): every pair of points lies in at most one block.
    PairOnce,
    /// Point ids must lie in `0..v` and `v` must be at least 7.
    Range,
}

/// A single violated rule together with the offending ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A block with fewer than 3 distinct points.
    BlockSize { block: usize },
    /// A point id outside `0..v`.
    Range { block: usize, point: u32 },
    /// `v` below the minimum order 7.
    Order { v: usize },
    /// A point covered by a number of blocks other than 3.
    PointDegree { point: u32, degree: usize },
    /// A pair of points covered by more than one block.
    PairOnce { pair: (u32, u32), count: usize },
}

impl Violation {
    pub fn rule(&self) -> Rule {
        match self {
            Violation::BlockSize { .. } => Rule::BlockSize,
            Violation::Range { .. } | Violation::Order { .. } => Rule::Range,
            Violation::PointDegree { .. } => Rule::PointDegree,
            Violation::PairOnce { .. } => Rule::PairOnce,
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::BlockSize { block } => {
                write!(f, "block {block} does not have 3 distinct points")
            }
            Violation::Range { block, point } => {
                write!(f, "block {block} contains out-of-range point {point}")
            }
            Violation::Order { v } => write!(f, "v = {v} is below the minimum order 7"),
            Violation::PointDegree { point, degree } => {
                write!(f, "point {point} lies in {degree} blocks, expected 3")
            }
            Violation::PairOnce {
                pair: (p, q),
                count,
            } => {
                write!(f, "pair {{{p},{q}}} is covered by {count} blocks")
            }
        }
    }
}

/// Outcome of validating a candidate against the defining axioms.
///
/// Every violated rule is reported, not only the first; a passing candidate
/// is a [`Configuration`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    /// True if some violation of the given rule was recorded.
    pub fn violates(&self, rule: Rule) -> bool {
        self.violations.iter().any(|w| w.rule() == rule)
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.valid() {
            return write!(f, "valid");
        }
        let mut first = true;
        for w in &self.violations {
            if !first {
                write!(f, "; ")?;
            }
            write!(f, "{w}")?;
            first = false;
        }
        Ok(())
    }
}

/// Errors raised while reading a configuration from text.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("unknown symbol {symbol:?} in token {token:?}")]
    UnknownSymbol { token: String, symbol: char },
    #[error("token {token:?} has {len} symbols, expected 3")]
    TokenLength { token: String, len: usize },
    #[error("{points} distinct points but {blocks} blocks; a symmetric configuration needs equal counts")]
    PointCountMismatch { points: usize, blocks: usize },
    #[error("candidate fails validation: {0}")]
    ValidationFailed(ValidationReport),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Error raised when a configuration does not fit the 62-symbol compact
/// alphabet. Callers should use the JSON format instead.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("{v} points exceed the 62-symbol compact alphabet; use the JSON format")]
pub struct TooManyPoints {
    pub v: usize,
}

/// Validate a candidate block list against the defining axioms.
///
/// Violations are data rather than failures; all of them are reported.
/// A candidate with `v < 7` is flagged under the range rule; the axioms
/// already force `v >= 7` whenever any block is present, but the explicit
/// check also rejects degenerate empty candidates.
pub fn validate(v: usize, blocks: &[[u32; 3]]) -> ValidationReport {
    let mut violations = Vec::new();
    if v < MIN_ORDER {
        violations.push(Violation::Order { v });
    }
    for (i, b) in blocks.iter().enumerate() {
        let mut s = *b;
        s.sort_unstable();
        if s[0] == s[1] || s[1] == s[2] {
            violations.push(Violation::BlockSize { block: i });
        }
        for &p in b {
            if p as usize >= v {
                violations.push(Violation::Range { block: i, point: p });
            }
        }
    }
    // Degree and pair counts only over in-range points; out-of-range ids
    // were already reported above.
    let mut degree = vec![0usize; v];
    let mut pair_count = std::collections::BTreeMap::<(u32, u32), usize>::new();
    for b in blocks {
        let mut s = *b;
        s.sort_unstable();
        for &p in &s {
            if (p as usize) < v {
                degree[p as usize] += 1;
            }
        }
        for (x, y) in [(s[0], s[1]), (s[0], s[2]), (s[1], s[2])] {
            if x != y && (x as usize) < v && (y as usize) < v {
                *pair_count.entry((x, y)).or_insert(0) += 1;
            }
        }
    }
    for (p, &d) in degree.iter().enumerate() {
        if d != 3 {
            violations.push(Violation::PointDegree {
                point: p as u32,
                degree: d,
            });
        }
    }
    for (&pair, &count) in &pair_count {
        if count > 1 {
            violations.push(Violation::PairOnce { pair, count });
        }
    }
    ValidationReport { violations }
}

#[derive(Serialize, Deserialize)]
struct ConfigJson {
    v: usize,
    blocks: Vec<[u32; 3]>,
}

/// A validated symmetric configuration `v_3`.
///
/// Immutable after construction; all operations on it are pure functions.
#[derive(Clone, Debug, Eq)]
pub struct Configuration {
    v: usize,
    blocks: Vec<Block>,
}

impl Configuration {
    /// Build a configuration from a candidate block list, normalising each
    /// block to ascending order. Block order is preserved.
    pub fn new(v: usize, blocks: Vec<[u32; 3]>) -> Result<Self, ValidationReport> {
        let report = validate(v, &blocks);
        if !report.valid() {
            return Err(report);
        }
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        Ok(Configuration { v, blocks })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Blocks as a sorted list, the canonical multiset view used for
    /// equality and canonical labelling.
    pub fn sorted_blocks(&self) -> Vec<Block> {
        let mut s = self.blocks.clone();
        s.sort_unstable();
        s
    }

    /// Parse the compact whitespace-separated token format, e.g.
    /// `"012 034 056 135 146 236 245"`. Point ids follow the alphabet
    /// position of their symbol; `v` is inferred from the number of distinct
    /// symbols and must equal the number of tokens.
    pub fn parse_compact(text: &str) -> Result<Self, ParseError> {
        let mut blocks = Vec::new();
        let mut seen = [false; 62];
        for token in text.split_whitespace() {
            let symbols: Vec<char> = token.chars().collect();
            if symbols.len() != 3 {
                return Err(ParseError::TokenLength {
                    token: token.to_string(),
                    len: symbols.len(),
                });
            }
            let mut b = [0u32; 3];
            for (slot, &ch) in b.iter_mut().zip(&symbols) {
                let idx = symbol_index(ch).ok_or_else(|| ParseError::UnknownSymbol {
                    token: token.to_string(),
                    symbol: ch,
                })?;
                seen[idx as usize] = true;
                *slot = idx;
            }
            blocks.push(b);
        }
        let points = seen.iter().filter(|&&s| s).count();
        let cfg = Configuration::new(points, blocks).map_err(ParseError::ValidationFailed)?;
        // A valid configuration has as many blocks as points, so this only
        // guards against future changes to the validation rules.
        if points != cfg.blocks().len() {
            return Err(ParseError::PointCountMismatch {
                points,
                blocks: cfg.blocks().len(),
            });
        }
        Ok(cfg)
    }

    /// Render in the compact format: blocks in stored order, symbols within
    /// a block ascending. Fails for `v > 62`.
    pub fn to_compact(&self) -> Result<String, TooManyPoints> {
        if self.v > 62 {
            return Err(TooManyPoints { v: self.v });
        }
        let mut out = String::with_capacity(self.blocks.len() * 4);
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            for &p in b {
                out.push(index_symbol(p));
            }
        }
        Ok(out)
    }

    /// Parse the JSON object format `{"v": int, "blocks": [[int,int,int], ...]}`.
    /// Unknown keys are ignored.
    pub fn parse_json(text: &str) -> Result<Self, ParseError> {
        let raw: ConfigJson = serde_json::from_str(text)?;
        Configuration::new(raw.v, raw.blocks).map_err(ParseError::ValidationFailed)
    }

    /// Render as the JSON object format.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ConfigJson {
            v: self.v,
            blocks: self.blocks.clone(),
        })
        .expect("configuration serialisation cannot fail")
    }

    /// Parse either format, auto-detected: JSON when the first non-space
    /// byte is `{`, compact otherwise.
    pub fn parse_auto(text: &str) -> Result<Self, ParseError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_compact(text)
        }
    }
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.sorted_blocks() == other.sorted_blocks()
    }
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ConfigJson {
            v: self.v,
            blocks: self.blocks.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ConfigJson::deserialize(deserializer)?;
        Configuration::new(raw.v, raw.blocks)
            .map_err(|report| serde::de::Error::custom(format!("invalid configuration: {report}")))
    }
}

/// True iff the point-block incidence structure is connected, equivalently
/// iff the Levi graph is connected. A disconnected configuration is the
/// union of two configurations on distinct point sets.
pub fn is_connected(cfg: &Configuration) -> bool {
    let v = cfg.v();
    if v == 0 {
        return true;
    }
    // Vertices: points 0..v, blocks v..2v.
    let mut point_blocks = vec![Vec::new(); v];
    for (bi, b) in cfg.blocks().iter().enumerate() {
        for &p in b {
            point_blocks[p as usize].push(bi);
        }
    }
    let mut seen = vec![false; 2 * v];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 0usize;
    while let Some(x) = stack.pop() {
        reached += 1;
        if x < v {
            for &bi in &point_blocks[x] {
                if !seen[v + bi] {
                    seen[v + bi] = true;
                    stack.push(v + bi);
                }
            }
        } else {
            for &p in &cfg.blocks()[x - v] {
                if !seen[p as usize] {
                    seen[p as usize] = true;
                    stack.push(p as usize);
                }
            }
        }
    }
    reached == 2 * v
}
