//! Core data types shared by the constructions, the verifier and the
//! document format.
//!
//! Vertices are plain `u32` labels `0..v`. Constructions that place a point
//! at infinity always give it label `0`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type Label = u32;

/// The 4-cycle `(a, b, c, d)` with edges `ab`, `bc`, `cd`, `da`.
///
/// Any of the eight rotations/reflections describe the same block; see
/// [`canonicalize`]. The type does not itself reject repeated labels so that
/// malformed input can reach the verifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle4([Label; 4]);

impl Cycle4 {
    pub const fn new(a: Label, b: Label, c: Label, d: Label) -> Self {
        Cycle4([a, b, c, d])
    }

    pub const fn labels(&self) -> [Label; 4] {
        self.0
    }

    /// The four cycle edges as unordered pairs `(min, max)`.
    pub fn edges(&self) -> [(Label, Label); 4] {
        let l = self.0;
        std::array::from_fn(|i| {
            let (x, y) = (l[i], l[(i + 1) % 4]);
            (x.min(y), x.max(y))
        })
    }

    pub fn contains(&self, x: Label) -> bool {
        self.0.contains(&x)
    }

    pub fn has_distinct_labels(&self) -> bool {
        let l = self.0;
        (0..4).all(|i| (i + 1..4).all(|j| l[i] != l[j]))
    }

    /// Applies `f` to every label, keeping the cyclic order.
    pub fn map(&self, mut f: impl FnMut(Label) -> Label) -> Self {
        Cycle4(self.0.map(&mut f))
    }
}

impl From<[Label; 4]> for Cycle4 {
    fn from(labels: [Label; 4]) -> Self {
        Cycle4(labels)
    }
}

impl fmt::Display for Cycle4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// Returns the representative of the block's dihedral orbit that starts at
/// its smallest label and continues towards the smaller of that label's two
/// cycle neighbours.
pub fn canonicalize(block: Cycle4) -> Result<Cycle4> {
    if !block.has_distinct_labels() {
        return Err(Error::MalformedBlock(block.labels()));
    }
    let l = block.labels();
    let start = (0..4).min_by_key(|&i| l[i]).expect("four labels");
    let next = l[(start + 1) % 4];
    let prev = l[(start + 3) % 4];
    let step = if next < prev { 1 } else { 3 };
    Ok(Cycle4(std::array::from_fn(|i| l[(start + i * step) % 4])))
}

/// A list of 4-cycles on the labels `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSystem {
    pub order: u32,
    pub blocks: Vec<Cycle4>,
}

impl CycleSystem {
    pub fn new(order: u32, blocks: Vec<Cycle4>) -> Self {
        CycleSystem { order, blocks }
    }

    /// Number of blocks a 4-cycle system of this order must have.
    pub fn expected_block_count(&self) -> u64 {
        let v = u64::from(self.order);
        v * v.saturating_sub(1) / 8
    }
}

/// Colour ids `1..=c`, one per block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    pub colours: Vec<u32>,
    pub c: u32,
}

/// Quantities derived from `s` and the order `v = 1 + 8k`.
///
/// Every vertex of a 4-cycle system of order `v` lies in `4k` blocks, and
/// `4k = q*s + r` with `0 <= r < s`. `h` is `k / s` when `s` divides `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    pub s: u32,
    pub h: Option<u32>,
    pub k: u32,
    pub v: u32,
    pub q: u32,
    pub r: u32,
    pub blocks_total: u64,
}

/// Parameters for `k = h*s`.
pub fn derive_params(s: u32, h: u32) -> Result<Params> {
    check_at_least("s", s, 1)?;
    check_at_least("h", h, 1)?;
    let k = h
        .checked_mul(s)
        .filter(|k| k.checked_mul(8).and_then(|x| x.checked_add(1)).is_some())
        .ok_or_else(|| Error::MalformedParts(format!("order overflows for s = {s}, h = {h}")))?;
    Params::for_order(s, 1 + 8 * k)
}

impl Params {
    /// Parameters for an arbitrary admissible order, whether or not `s | k`.
    pub fn for_order(s: u32, v: u32) -> Result<Params> {
        check_at_least("s", s, 1)?;
        if v % 8 != 1 || v < 9 {
            return Err(Error::InvalidOrder(v));
        }
        let k = (v - 1) / 8;
        let per_vertex = 4 * k;
        Ok(Params {
            s,
            h: k.is_multiple_of(s).then_some(k / s),
            k,
            v,
            q: per_vertex / s,
            r: per_vertex % s,
            blocks_total: u64::from(k) * u64::from(v),
        })
    }

    /// Blocks through each vertex.
    pub fn blocks_per_vertex(&self) -> u32 {
        4 * self.k
    }
}

pub(crate) fn check_at_least(name: &'static str, value: u32, min: u32) -> Result<()> {
    if value < min {
        Err(Error::ParameterTooSmall { name, min, value })
    } else {
        Ok(())
    }
}

/// Which of the four constructions produced a colouring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionCase {
    /// `c = s`: cyclic system, colour by starter block.
    Base,
    /// `c = s + 1`: star composition, colour families by residue.
    Splus1,
    /// `s + 2 <= c <= (s^2 + s) / 2`: residue colouring with fresh colours.
    Mid,
    /// Half-part composition coloured along a triangle/quadrilateral
    /// decomposition of `K_2s` minus a 1-factor.
    High,
}

impl ConstructionCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConstructionCase::Base => "base",
            ConstructionCase::Splus1 => "splus1",
            ConstructionCase::Mid => "mid",
            ConstructionCase::High => "high",
        }
    }
}

impl fmt::Display for ConstructionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a block of a constructed system came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Origin {
    /// A translate of the `i`-th starter block (1-based) of a cyclic system.
    Starter { i: u32 },
    /// A block of the `i`-th embedded sub-system.
    Subsystem { i: u32 },
    /// A block of the bipartite family between parts `p < q`.
    Family { p: u32, q: u32 },
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Starter { i } => write!(f, "starter {i}"),
            Origin::Subsystem { i } => write!(f, "sub-system {i}"),
            Origin::Family { p, q } => write!(f, "[A_{p},A_{q}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredSystem {
    pub params: Params,
    pub system: CycleSystem,
    pub colouring: Colouring,
    pub construction_case: ConstructionCase,
    /// Per-block origin, parallel to `system.blocks` when present.
    pub provenance: Option<Vec<Origin>>,
}
