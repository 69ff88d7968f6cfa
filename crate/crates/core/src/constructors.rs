//! Uncoloured 4-cycle systems: the cyclic system generated by starter
//! blocks, bipartite families `[A, B]`, and the two ways of gluing smaller
//! systems of order `1 + 8h` around a common point at infinity.

use std::ops::Range;

use crate::design::{canonicalize, check_at_least, Cycle4, CycleSystem, Label, Origin};
use crate::verifier::verify_cycle_system;
use crate::{Error, Result};

/// The `k` starter blocks `(0, i, 4k+1, k+i)`, `1 <= i <= k`, over `Z_{8k+1}`.
///
/// Their edges realise every difference `1..=4k` exactly once.
pub fn starter_blocks(k: u32) -> Result<Vec<Cycle4>> {
    check_at_least("k", k, 1)?;
    Ok((1..=k)
        .map(|i| Cycle4::new(0, i, 4 * k + 1, k + i))
        .collect())
}

/// All `8k+1` translates of every starter block, with the 1-based starter
/// index of each block.
pub fn cyclic_4cs_tagged(k: u32) -> Result<(CycleSystem, Vec<Origin>)> {
    let starters = starter_blocks(k)?;
    let v = 8 * k + 1;
    let mut blocks = Vec::with_capacity(starters.len() * v as usize);
    let mut origins = Vec::with_capacity(blocks.capacity());
    for (idx, starter) in starters.iter().enumerate() {
        for t in 0..v {
            let shifted = starter.map(|x| (x + t) % v);
            blocks.push(canonicalize(shifted)?);
            origins.push(Origin::Starter { i: idx as u32 + 1 });
        }
    }
    Ok((CycleSystem::new(v, blocks), origins))
}

/// The cyclic 4-cycle system of order `8k+1`.
pub fn cyclic_4cs(k: u32) -> Result<CycleSystem> {
    cyclic_4cs_tagged(k).map(|(sys, _)| sys)
}

/// The family `[A, B] = {(a_i, b_j, a_{i+p}, b_{j+q})}` with `|A| = 2p`,
/// `|B| = 2q`. Every edge between `A` and `B` lies in exactly one of its
/// `pq` blocks.
pub fn bipartite_family(a: &[Label], b: &[Label]) -> Result<Vec<Cycle4>> {
    if a.is_empty() || b.is_empty() || !a.len().is_multiple_of(2) || !b.len().is_multiple_of(2) {
        return Err(Error::MalformedParts(format!(
            "part sizes must be even and positive, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if let Some(x) = a.iter().find(|x| b.contains(x)) {
        return Err(Error::MalformedParts(format!(
            "label {x} occurs in both parts"
        )));
    }
    let (p, q) = (a.len() / 2, b.len() / 2);
    let mut out = Vec::with_capacity(p * q);
    for i in 0..p {
        for j in 0..q {
            out.push(Cycle4::new(a[i], b[j], a[i + p], b[j + q]));
        }
    }
    Ok(out)
}

/// The parts `A_1, A_2, ...` of a composed system, as contiguous label
/// ranges, and the label of the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartLayout {
    pub parts: Vec<Range<Label>>,
    pub infinity: Label,
}

impl PartLayout {
    /// `count` parts of `width` labels each, after `infinity = 0`.
    fn contiguous(count: u32, width: u32) -> Self {
        PartLayout {
            parts: (0..count)
                .map(|i| 1 + i * width..1 + (i + 1) * width)
                .collect(),
            infinity: 0,
        }
    }

    /// Labels of `A_i` (1-based).
    pub fn part(&self, i: u32) -> Range<Label> {
        self.parts[i as usize - 1].clone()
    }

    /// 1-based index of the part containing `x`, `None` for infinity.
    pub fn part_of(&self, x: Label) -> Option<u32> {
        self.parts
            .iter()
            .position(|r| r.contains(&x))
            .map(|i| i as u32 + 1)
    }

    pub fn order(&self) -> u32 {
        1 + self.parts.iter().map(|r| r.len() as u32).sum::<u32>()
    }
}

/// A composed system together with how its blocks were obtained.
#[derive(Clone, Debug)]
pub struct Composition {
    pub system: CycleSystem,
    pub layout: PartLayout,
    /// Parallel to `system.blocks`.
    pub provenance: Vec<Origin>,
    /// Index pairs `(p, q)`, `p < q`, of the bipartite families used.
    pub pairs: Vec<(u32, u32)>,
}

fn checked_subsystem<F>(h: u32, factory: F) -> Result<CycleSystem>
where
    F: FnOnce(u32) -> Result<CycleSystem>,
{
    let sub = factory(h)?;
    if sub.order != 1 + 8 * h {
        return Err(Error::MalformedParts(format!(
            "sub-system factory returned order {}, expected {}",
            sub.order,
            1 + 8 * h
        )));
    }
    let report = verify_cycle_system(&sub);
    if !report.passed {
        return Err(Error::InvalidSubsystem(report));
    }
    Ok(sub)
}

fn compose(
    layout: PartLayout,
    sub: &CycleSystem,
    sub_offsets: impl Iterator<Item = (u32, Label)>,
    pairs: Vec<(u32, u32)>,
) -> Result<Composition> {
    let mut blocks = Vec::new();
    let mut provenance = Vec::new();
    for (index, offset) in sub_offsets {
        // sub-system label 0 is infinity, 1..=8h fill consecutive labels
        for b in &sub.blocks {
            let relabelled = b.map(|x| if x == 0 { layout.infinity } else { offset + x });
            blocks.push(canonicalize(relabelled)?);
            provenance.push(Origin::Subsystem { i: index });
        }
    }
    for &(p, q) in &pairs {
        let a: Vec<Label> = layout.part(p).collect();
        let b: Vec<Label> = layout.part(q).collect();
        for blk in bipartite_family(&a, &b)? {
            blocks.push(canonicalize(blk)?);
            provenance.push(Origin::Family { p, q });
        }
    }
    Ok(Composition {
        system: CycleSystem::new(layout.order(), blocks),
        layout,
        provenance,
        pairs,
    })
}

/// `s` copies of a 4-cycle system of order `1 + 8h`, one on each `A_i` plus
/// infinity, together with `[A_p, A_q]` for every `p < q`. Parts have `8h`
/// labels each.
pub fn compose_star<F>(s: u32, h: u32, factory: F) -> Result<Composition>
where
    F: FnOnce(u32) -> Result<CycleSystem>,
{
    check_at_least("s", s, 2)?;
    check_at_least("h", h, 1)?;
    let width = 8 * h;
    let sub = checked_subsystem(h, factory)?;
    let layout = PartLayout::contiguous(s, width);
    let pairs = (1..=s)
        .flat_map(|p| (p + 1..=s).map(move |q| (p, q)))
        .collect();
    compose(layout, &sub, (1..=s).map(|i| (i, (i - 1) * width)), pairs)
}

/// `2s` parts of `4h` labels; a sub-system of order `1 + 8h` on
/// `A_i ∪ A_{i+1} ∪ {∞}` for each odd `i`, and `[A_p, A_q]` for every
/// `p < q` other than the 1-factor pairs `(1,2), (3,4), ..., (2s-1, 2s)`.
pub fn compose_half<F>(s: u32, h: u32, factory: F) -> Result<Composition>
where
    F: FnOnce(u32) -> Result<CycleSystem>,
{
    if s < 3 {
        return Err(Error::CaseNotApplicable {
            case: "half-part composition",
            reason: format!("requires s >= 3, got s = {s}"),
        });
    }
    check_at_least("h", h, 1)?;
    let width = 4 * h;
    let sub = checked_subsystem(h, factory)?;
    let layout = PartLayout::contiguous(2 * s, width);
    let pairs = one_factor_complement(s);
    let offsets = (1..2 * s).step_by(2).map(|i| (i, (i - 1) * width));
    compose(layout, &sub, offsets, pairs)
}

/// The pairs `p < q` of `1..=2s` not in `{(1,2), (3,4), ..., (2s-1,2s)}`.
pub fn one_factor_complement(s: u32) -> Vec<(u32, u32)> {
    (1..=2 * s)
        .flat_map(|p| (p + 1..=2 * s).map(move |q| (p, q)))
        .filter(|&(p, q)| !(p % 2 == 1 && q == p + 1))
        .collect()
}
