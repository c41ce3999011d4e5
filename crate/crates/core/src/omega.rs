//! The poset Ω = ℕ × {0,1} and monotone self-maps of it.
//!
//! `(n, a) ⪯ (m, b)` holds iff the points are equal or `n < m`, so each layer
//! is a two-element antichain and every layer lies strictly above all lower
//! layers.
//!
//! Color maps are represented as *eventually affine* functions: a finite table
//! for the layers below a threshold `T`, and above it a translation of the
//! layer by `d` combined with one of the four maps `{0,1} → {0,1}` on the bit.
//! Every map used by the Rope Ladder constructions fits this shape, the class
//! is closed under composition, and monotonicity can be decided by a finite
//! check:
//!
//! For `m ≥ T` the image layer `m + d` is strictly increasing in `m`, so any
//! two tail points with different layers are ordered correctly. For a pair
//! `n < T ≤ m` it suffices to know `f(n, a) ⪯ f(T, b)` for both `b`, because
//! `f(T, b) ⪯ f(m, c)` for every `m > T` and `⪯` is transitive. Hence checking
//! all pairs with `n < m ≤ T + 1` decides monotonicity of the whole map.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("tail image would have a negative layer (threshold {threshold}, shift {shift})")]
    NegativeTail { threshold: u64, shift: i64 },
    #[error("table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("unknown named map `{0}` (expected one of u, v, f0, f1, h)")]
    UnknownName(String),
    #[error("malformed point `{0}`")]
    BadPoint(String),
    #[error("unknown bit map `{0}` (expected id, neg, c0 or c1)")]
    BadBitMap(String),
}

/// An element `(layer, bit)` of Ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OmegaPoint {
    pub layer: u64,
    pub bit: bool,
}

impl OmegaPoint {
    /// `(0, 0)`, where the ant starts.
    pub const ZERO: OmegaPoint = OmegaPoint { layer: 0, bit: false };

    pub const fn new(layer: u64, bit: bool) -> Self {
        OmegaPoint { layer, bit }
    }

    /// The order `⪯` of Ω.
    pub fn leq(self, other: OmegaPoint) -> bool {
        self == other || self.layer < other.layer
    }

    pub fn comparable(self, other: OmegaPoint) -> bool {
        self.leq(other) || other.leq(self)
    }

    fn table_index(self) -> usize {
        2 * self.layer as usize + self.bit as usize
    }
}

/// Shorthand used throughout the tests and fixtures: `pt(1, 0)` is `(1,0)`.
pub fn pt(layer: u64, bit: u8) -> OmegaPoint {
    OmegaPoint::new(layer, bit != 0)
}

impl fmt::Display for OmegaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.layer, self.bit as u8)
    }
}

impl FromStr for OmegaPoint {
    type Err = MapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MapError::BadPoint(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (n, b) = inner.split_once(',').ok_or_else(bad)?;
        let layer = n.trim().parse::<u64>().map_err(|_| bad())?;
        let bit = match b.trim() {
            "0" => false,
            "1" => true,
            _ => return Err(bad()),
        };
        Ok(OmegaPoint { layer, bit })
    }
}

/// One of the four functions `{0,1} → {0,1}`, applied to the bit above the
/// threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BitMap {
    Identity,
    Negate,
    Const0,
    Const1,
}

impl BitMap {
    pub fn apply(self, b: bool) -> bool {
        match self {
            BitMap::Identity => b,
            BitMap::Negate => !b,
            BitMap::Const0 => false,
            BitMap::Const1 => true,
        }
    }

    /// `self ∘ inner`.
    pub fn after(self, inner: BitMap) -> BitMap {
        match (self.apply(inner.apply(false)), self.apply(inner.apply(true))) {
            (false, true) => BitMap::Identity,
            (true, false) => BitMap::Negate,
            (false, false) => BitMap::Const0,
            (true, true) => BitMap::Const1,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            BitMap::Identity => "id",
            BitMap::Negate => "neg",
            BitMap::Const0 => "c0",
            BitMap::Const1 => "c1",
        }
    }
}

impl FromStr for BitMap {
    type Err = MapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "id" => Ok(BitMap::Identity),
            "neg" => Ok(BitMap::Negate),
            "c0" => Ok(BitMap::Const0),
            "c1" => Ok(BitMap::Const1),
            other => Err(MapError::BadBitMap(other.to_string())),
        }
    }
}

/// The five maps drawn in the construction: the two translations `u`, `v`,
/// the two "ladder rungs" `f0`, `f1` and the descent `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedMap {
    U,
    V,
    F0,
    F1,
    H,
}

impl NamedMap {
    pub const ALL: [NamedMap; 5] = [NamedMap::U, NamedMap::V, NamedMap::F0, NamedMap::F1, NamedMap::H];

    pub fn token(self) -> &'static str {
        match self {
            NamedMap::U => "u",
            NamedMap::V => "v",
            NamedMap::F0 => "f0",
            NamedMap::F1 => "f1",
            NamedMap::H => "h",
        }
    }
}

impl FromStr for NamedMap {
    type Err = MapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "u" => Ok(NamedMap::U),
            "v" => Ok(NamedMap::V),
            "f0" => Ok(NamedMap::F0),
            "f1" => Ok(NamedMap::F1),
            "h" => Ok(NamedMap::H),
            other => Err(MapError::UnknownName(other.to_string())),
        }
    }
}

/// An eventually affine map `Ω → Ω`.
///
/// `(n, b) ↦ table[(n, b)]` for `n < threshold`, and
/// `(n, b) ↦ (n + shift, tail(b))` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorMap {
    threshold: u64,
    table: Vec<OmegaPoint>,
    shift: i64,
    tail: BitMap,
    name: Option<String>,
}

impl ColorMap {
    /// Builds a map from its table (indexed `2n + b`). Monotonicity is not
    /// checked here; see [`ColorMap::check_monotone`].
    pub fn new(threshold: u64, table: Vec<OmegaPoint>, shift: i64, tail: BitMap) -> Result<Self, MapError> {
        if (threshold as i64) + shift < 0 {
            return Err(MapError::NegativeTail { threshold, shift });
        }
        let expected = 2 * threshold as usize;
        if table.len() != expected {
            return Err(MapError::TableSize { expected, got: table.len() });
        }
        Ok(ColorMap { threshold, table, shift, tail, name: None })
    }

    pub fn identity() -> Self {
        ColorMap { threshold: 0, table: Vec::new(), shift: 0, tail: BitMap::Identity, name: None }
    }

    pub fn named(which: NamedMap) -> Self {
        let map = match which {
            NamedMap::U => ColorMap { threshold: 0, table: vec![], shift: 1, tail: BitMap::Identity, name: None },
            NamedMap::V => ColorMap { threshold: 0, table: vec![], shift: 1, tail: BitMap::Negate, name: None },
            NamedMap::F0 => ColorMap {
                threshold: 2,
                table: vec![pt(0, 0), pt(0, 1), pt(1, 0), pt(2, 1)],
                shift: 1,
                tail: BitMap::Identity,
                name: None,
            },
            NamedMap::F1 => ColorMap {
                threshold: 2,
                table: vec![pt(0, 0), pt(0, 1), pt(2, 0), pt(1, 1)],
                shift: 1,
                tail: BitMap::Identity,
                name: None,
            },
            NamedMap::H => ColorMap {
                threshold: 2,
                table: vec![pt(0, 0), pt(0, 0), pt(0, 0), pt(0, 0)],
                shift: -1,
                tail: BitMap::Identity,
                name: None,
            },
        };
        map.with_name(which.token())
    }

    /// `(n, b) ↦ (n + 1, b ⊕ I_n)` with `I_n = prefix[n]` for `n < |prefix|`
    /// and `I_n = tail` afterwards.
    pub fn incremental(prefix: &[bool], tail: bool) -> Self {
        let table = prefix
            .iter()
            .enumerate()
            .flat_map(|(n, &flip)| {
                let n = n as u64;
                [OmegaPoint::new(n + 1, flip), OmegaPoint::new(n + 1, !flip)]
            })
            .collect();
        ColorMap {
            threshold: prefix.len() as u64,
            table,
            shift: 1,
            tail: if tail { BitMap::Negate } else { BitMap::Identity },
            name: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn tail(&self) -> BitMap {
        self.tail
    }

    pub fn table(&self) -> &[OmegaPoint] {
        &self.table
    }

    pub fn apply(&self, p: OmegaPoint) -> OmegaPoint {
        if p.layer < self.threshold {
            self.table[p.table_index()]
        } else {
            OmegaPoint {
                layer: (p.layer as i64 + self.shift) as u64,
                bit: self.tail.apply(p.bit),
            }
        }
    }

    /// `self ∘ inner`: apply `inner` first, then `self`.
    pub fn compose(&self, inner: &ColorMap) -> ColorMap {
        let threshold = inner
            .threshold
            .max((self.threshold as i64 - inner.shift).max(0) as u64);
        let table = (0..threshold)
            .flat_map(|n| [OmegaPoint::new(n, false), OmegaPoint::new(n, true)])
            .map(|p| self.apply(inner.apply(p)))
            .collect();
        ColorMap {
            threshold,
            table,
            shift: inner.shift + self.shift,
            tail: self.tail.after(inner.tail),
            name: None,
        }
    }

    /// Decides monotonicity w.r.t. `⪯` by checking all pairs with
    /// `n < m ≤ T + 1` (sufficient, see the module docs).
    pub fn check_monotone(&self) -> bool {
        let top = self.threshold + 1;
        for m in 1..=top {
            for n in 0..m {
                for a in [false, true] {
                    for b in [false, true] {
                        let lo = self.apply(OmegaPoint::new(n, a));
                        let hi = self.apply(OmegaPoint::new(m, b));
                        if !lo.leq(hi) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Largest absolute layer change a single application can cause.
    pub fn step_bound(&self) -> u64 {
        self.layer_deltas().map(i64::unsigned_abs).max().unwrap_or(0)
    }

    /// Largest layer increase a single application can cause (0 if the map
    /// never raises the layer).
    pub fn max_increase(&self) -> u64 {
        self.layer_deltas().max().unwrap_or(0).max(0) as u64
    }

    fn layer_deltas(&self) -> impl Iterator<Item = i64> + '_ {
        self.table
            .iter()
            .enumerate()
            .map(|(i, out)| out.layer as i64 - (i / 2) as i64)
            .chain(std::iter::once(self.shift))
    }
}
