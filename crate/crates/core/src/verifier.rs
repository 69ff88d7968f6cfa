//! Construction-agnostic checks.
//!
//! Everything here is recomputed from the raw block list: edge multiplicities
//! from a triangular table over `K_v`, and per-vertex colour tallies from
//! block incidences. Nothing from the constructors is consulted, and blocks
//! may be given in any orientation.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;

use crate::design::{ColouredSystem, CycleSystem, Label};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    CycleSystem,
    Type,
    Equitable,
    ColourCount,
    Bound,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::CycleSystem => "cycle-system",
            Check::Type => "type",
            Check::Equitable => "equitable",
            Check::ColourCount => "colour-count",
            Check::Bound => "bound",
        })
    }
}

/// The concrete object a failed check points at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Block at `index` repeats a label or uses one outside `0..v`.
    Block {
        index: usize,
        labels: [Label; 4],
    },
    BlockCount {
        expected: u64,
        actual: u64,
    },
    /// Edge `{x, y}` covered `multiplicity` times instead of once.
    Edge {
        x: Label,
        y: Label,
        multiplicity: u32,
    },
    /// Per-colour block counts at vertex `x`, sorted by colour.
    Vertex {
        x: Label,
        classes: Vec<(u32, u32)>,
    },
    /// Colour `id` unused, or used but outside `1..=c`.
    Colour {
        id: u32,
        used: bool,
    },
    ColourTotal {
        expected: u32,
        actual: u32,
    },
    Length {
        blocks: usize,
        colours: usize,
    },
    Bound {
        c: u32,
        bound: Ratio<u64>,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Block { index, labels } => write!(f, "block #{index} {labels:?} is malformed"),
            Witness::BlockCount { expected, actual } => {
                write!(f, "{actual} blocks, expected {expected}")
            }
            Witness::Edge { x, y, multiplicity } => {
                write!(f, "edge {{{x},{y}}} covered {multiplicity} times")
            }
            Witness::Vertex { x, classes } => {
                write!(f, "vertex {x} colour classes")?;
                for (c, n) in classes {
                    write!(f, " {c}:{n}")?;
                }
                Ok(())
            }
            Witness::Colour { id, used: true } => write!(f, "colour {id} is out of range"),
            Witness::Colour { id, used: false } => write!(f, "colour {id} is never used"),
            Witness::ColourTotal { expected, actual } => {
                write!(f, "{actual} colours used, expected {expected}")
            }
            Witness::Length { blocks, colours } => {
                write!(f, "{blocks} blocks but {colours} colours")
            }
            Witness::Bound { c, bound } => write!(f, "c = {c} exceeds bound {bound}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: Check,
    pub witness: Witness,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.check, self.witness)
    }
}

/// `passed` is true exactly when `failures` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub passed: bool,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    fn from_failures(failures: Vec<Failure>) -> Self {
        VerificationReport {
            passed: failures.is_empty(),
            failures,
        }
    }

    pub fn failed(&self, check: Check) -> bool {
        self.failures.iter().any(|f| f.check == check)
    }

    pub fn merge(mut self, other: VerificationReport) -> Self {
        self.failures.extend(other.failures);
        self.passed = self.failures.is_empty();
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SHOWN: usize = 20;
        if self.passed {
            return writeln!(f, "PASS");
        }
        writeln!(f, "FAIL ({} problems)", self.failures.len())?;
        for failure in self.failures.iter().take(SHOWN) {
            writeln!(f, "  {failure}")?;
        }
        if self.failures.len() > SHOWN {
            writeln!(f, "  ... {} more", self.failures.len() - SHOWN)?;
        }
        Ok(())
    }
}

/// Checks that the blocks partition the edges of `K_v`.
pub fn verify_cycle_system(sys: &CycleSystem) -> VerificationReport {
    let v = sys.order as usize;
    let mut failures = Vec::new();
    let fail = |w| Failure {
        check: Check::CycleSystem,
        witness: w,
    };

    let expected = (v as u64) * (v as u64).saturating_sub(1) / 8;
    if sys.blocks.len() as u64 != expected || !(v as u64).saturating_sub(1).is_multiple_of(8) {
        failures.push(fail(Witness::BlockCount {
            expected,
            actual: sys.blocks.len() as u64,
        }));
    }

    // edge {x, y}, x < y, lives at y*(y-1)/2 + x
    let mut table = vec![0u32; v * v.saturating_sub(1) / 2];
    for (index, block) in sys.blocks.iter().enumerate() {
        let labels = block.labels();
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| labels[i] != labels[j]));
        if !distinct || labels.iter().any(|&x| x as usize >= v) {
            failures.push(fail(Witness::Block { index, labels }));
            continue;
        }
        for i in 0..4 {
            let (a, b) = (labels[i] as usize, labels[(i + 1) % 4] as usize);
            let (x, y) = (a.min(b), a.max(b));
            table[y * (y - 1) / 2 + x] += 1;
        }
    }
    for y in 1..v {
        for x in 0..y {
            let m = table[y * (y - 1) / 2 + x];
            if m != 1 {
                failures.push(fail(Witness::Edge {
                    x: x as Label,
                    y: y as Label,
                    multiplicity: m,
                }));
            }
        }
    }
    VerificationReport::from_failures(failures)
}

/// Per-vertex map colour -> number of incident blocks of that colour.
fn colour_tallies(colsys: &ColouredSystem) -> Vec<BTreeMap<u32, u32>> {
    let v = colsys.system.order as usize;
    let mut tallies = vec![BTreeMap::new(); v];
    for (block, &colour) in colsys.system.blocks.iter().zip(&colsys.colouring.colours) {
        let mut labels = block.labels();
        labels.sort_unstable();
        for (i, &x) in labels.iter().enumerate() {
            if (x as usize) < v && (i == 0 || labels[i - 1] != x) {
                *tallies[x as usize].entry(colour).or_insert(0) += 1;
            }
        }
    }
    tallies
}

fn length_failure(colsys: &ColouredSystem, check: Check) -> Option<Failure> {
    let (blocks, colours) = (colsys.system.blocks.len(), colsys.colouring.colours.len());
    (blocks != colours).then_some(Failure {
        check,
        witness: Witness::Length { blocks, colours },
    })
}

fn vertex_witness(x: usize, tally: &BTreeMap<u32, u32>) -> Witness {
    Witness::Vertex {
        x: x as Label,
        classes: tally.iter().map(|(&c, &n)| (c, n)).collect(),
    }
}

/// Checks that every vertex lies on blocks of exactly `s` colours.
pub fn verify_type(colsys: &ColouredSystem, s: u32) -> VerificationReport {
    let mut failures: Vec<Failure> = length_failure(colsys, Check::Type).into_iter().collect();
    for (x, tally) in colour_tallies(colsys).iter().enumerate() {
        if tally.len() != s as usize {
            failures.push(Failure {
                check: Check::Type,
                witness: vertex_witness(x, tally),
            });
        }
    }
    VerificationReport::from_failures(failures)
}

/// With `4k = qs + r`, checks that every vertex has `r` colour classes of
/// size `q + 1` and `s - r` of size `q`.
pub fn verify_equitable(colsys: &ColouredSystem, s: u32) -> VerificationReport {
    let mut failures: Vec<Failure> = length_failure(colsys, Check::Equitable)
        .into_iter()
        .collect();
    let v = u64::from(colsys.system.order);
    if s == 0 || v == 0 {
        failures.push(Failure {
            check: Check::Equitable,
            witness: Witness::ColourTotal {
                expected: s,
                actual: 0,
            },
        });
        return VerificationReport::from_failures(failures);
    }
    let per_vertex = (v - 1) / 2;
    let (q, r) = (
        (per_vertex / u64::from(s)) as u32,
        (per_vertex % u64::from(s)) as usize,
    );
    let mut want: Vec<u32> = std::iter::repeat_n(q + 1, r)
        .chain(std::iter::repeat_n(q, s as usize - r))
        .collect();
    want.sort_unstable();
    for (x, tally) in colour_tallies(colsys).iter().enumerate() {
        let mut sizes: Vec<u32> = tally.values().copied().collect();
        sizes.sort_unstable();
        if sizes != want {
            failures.push(Failure {
                check: Check::Equitable,
                witness: vertex_witness(x, tally),
            });
        }
    }
    VerificationReport::from_failures(failures)
}

/// Checks that the colours used are exactly `1..=c`.
pub fn verify_colour_count(colsys: &ColouredSystem, c: u32) -> VerificationReport {
    let fail = |w| Failure {
        check: Check::ColourCount,
        witness: w,
    };
    let mut used: Vec<u32> = colsys.colouring.colours.clone();
    used.sort_unstable();
    used.dedup();
    let mut failures = Vec::new();
    if used.len() != c as usize {
        failures.push(fail(Witness::ColourTotal {
            expected: c,
            actual: used.len() as u32,
        }));
    }
    for &id in &used {
        if id == 0 || id > c {
            failures.push(fail(Witness::Colour { id, used: true }));
        }
    }
    for id in 1..=c {
        if used.binary_search(&id).is_err() {
            failures.push(fail(Witness::Colour { id, used: false }));
        }
    }
    VerificationReport::from_failures(failures)
}

/// `s^2 v / (v + s - 1)`, the largest number of colours a colouring of type
/// `s` of a 4-cycle system of order `v` can use when `s | (v-1)/8`.
pub fn upper_bound(v: u32, s: u32) -> Ratio<u64> {
    let (v, s) = (u64::from(v), u64::from(s));
    Ratio::new(s * s * v, v + s - 1)
}

/// Checks `c <= upper_bound(v, s)`; only meaningful when `s` divides `k`.
pub fn verify_bound(v: u32, s: u32, c: u32) -> VerificationReport {
    let bound = upper_bound(v, s);
    let failures = if Ratio::from_integer(u64::from(c)) > bound {
        vec![Failure {
            check: Check::Bound,
            witness: Witness::Bound { c, bound },
        }]
    } else {
        Vec::new()
    };
    VerificationReport::from_failures(failures)
}

/// All checks, with `s` from the parameters and `c` from the colouring.
/// The colour bound is applied only when `s` divides `k`.
pub fn verify_all(colsys: &ColouredSystem) -> VerificationReport {
    let s = colsys.params.s;
    let c = colsys.colouring.c;
    let v = colsys.system.order;
    let mut report = verify_cycle_system(&colsys.system)
        .merge(verify_type(colsys, s))
        .merge(verify_equitable(colsys, s))
        .merge(verify_colour_count(colsys, c));
    if s > 0 && v % 8 == 1 && ((v - 1) / 8).is_multiple_of(s) {
        report = report.merge(verify_bound(v, s, c));
    }
    report
}
