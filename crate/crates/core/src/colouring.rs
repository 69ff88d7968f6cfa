//! Equitable `c`-colourings of type `s` for `k = hs`, for every `c` from
//! `s` to `floor((2s^2 + s) / 3)`.
//!
//! [`build`] picks one of four constructions by the value of `c`:
//!
//! | `c`                                       | construction            |
//! |-------------------------------------------|-------------------------|
//! | `s`                                       | [`colour_case_base`]    |
//! | `s + 1`                                   | [`colour_case_splus1`]  |
//! | `s + 2 ..= (s^2 + s) / 2`                 | [`colour_case_mid`]     |
//! | `(s^2 + s) / 2 + 1 ..= (2s^2 + s) / 3`    | [`colour_case_high`]    |

use std::collections::HashMap;
use std::ops::RangeInclusive;

use crate::constructors::{compose_half, compose_star, cyclic_4cs, cyclic_4cs_tagged};
use crate::decomposer::{cycle_edges, decompose};
use crate::design::{check_at_least, derive_params, ColouredSystem, Colouring, Origin};
use crate::{Error, Result};

pub use crate::design::ConstructionCase;

/// `[s, floor((2s^2 + s) / 3)]`.
pub fn spectrum_range(s: u32, h: u32) -> Result<RangeInclusive<u32>> {
    check_at_least("s", s, 1)?;
    check_at_least("h", h, 1)?;
    Ok(s..=(2 * s * s + s) / 3)
}

fn mid_ceiling(s: u32) -> u32 {
    (s * s + s) / 2
}

/// Construction used for `c`, or `None` outside the spectrum.
pub fn case_for(s: u32, c: u32) -> Option<ConstructionCase> {
    if s == 0 || c < s || c > (2 * s * s + s) / 3 {
        return None;
    }
    Some(if c == s {
        ConstructionCase::Base
    } else if c == s + 1 {
        ConstructionCase::Splus1
    } else if c <= mid_ceiling(s) {
        ConstructionCase::Mid
    } else {
        ConstructionCase::High
    })
}

/// Colour in `1..=s+1` of the residue `n mod (s+1)`, with residue 0 mapped
/// to `s + 1`.
pub fn residue_colour(n: u32, s: u32) -> u32 {
    (n + s) % (s + 1) + 1
}

fn finish(
    s: u32,
    h: u32,
    c: u32,
    case: ConstructionCase,
    system: crate::design::CycleSystem,
    provenance: Vec<Origin>,
    colour_of: impl Fn(&Origin) -> u32,
) -> Result<ColouredSystem> {
    let colours = provenance.iter().map(colour_of).collect();
    Ok(ColouredSystem {
        params: derive_params(s, h)?,
        system,
        colouring: Colouring { colours, c },
        construction_case: case,
        provenance: Some(provenance),
    })
}

/// The cyclic system of order `1 + 8hs`; the translates of starter `i` get
/// colour `ceil(i / h)`.
pub fn colour_case_base(s: u32, h: u32) -> Result<ColouredSystem> {
    let params = derive_params(s, h)?;
    let (system, provenance) = cyclic_4cs_tagged(params.k)?;
    finish(
        s,
        h,
        s,
        ConstructionCase::Base,
        system,
        provenance,
        |o| match *o {
            Origin::Starter { i } => i.div_ceil(h),
            _ => unreachable!("cyclic system blocks are tagged by starter"),
        },
    )
}

/// Star composition; sub-system `i` gets colour `i`, family `[A_p, A_q]`
/// the residue colour of `p + q`.
pub fn colour_case_splus1(s: u32, h: u32) -> Result<ColouredSystem> {
    if s < 2 {
        return Err(Error::CaseNotApplicable {
            case: "c = s + 1",
            reason: format!("requires s >= 2, got s = {s}"),
        });
    }
    let comp = compose_star(s, h, cyclic_4cs)?;
    finish(
        s,
        h,
        s + 1,
        ConstructionCase::Splus1,
        comp.system,
        comp.provenance,
        |o| splus1_colour(o, s),
    )
}

fn splus1_colour(origin: &Origin, s: u32) -> u32 {
    match *origin {
        Origin::Subsystem { i } => i,
        Origin::Family { p, q } => residue_colour(p + q, s),
        Origin::Starter { .. } => unreachable!("star composition has no starter blocks"),
    }
}

/// Families given fresh colours by the mid-range construction, in colour
/// order: pairs `p < q` lexicographically, skipping a residue-0 pair
/// whenever it is the last one still carrying colour `s + 1`.
pub fn mid_recoloured_pairs(s: u32, count: u32) -> Result<Vec<(u32, u32)>> {
    let pairs: Vec<(u32, u32)> = (1..=s)
        .flat_map(|p| (p + 1..=s).map(move |q| (p, q)))
        .collect();
    let mut residue_zero_left = pairs.iter().filter(|(p, q)| (p + q) % (s + 1) == 0).count();
    let mut chosen = Vec::with_capacity(count as usize);
    for &(p, q) in &pairs {
        if chosen.len() == count as usize {
            break;
        }
        if (p + q) % (s + 1) == 0 {
            if residue_zero_left == 1 {
                continue;
            }
            residue_zero_left -= 1;
        }
        chosen.push((p, q));
    }
    if chosen.len() != count as usize {
        return Err(Error::ConstructionInfeasible(format!(
            "only {} of {count} families can be recoloured for s = {s}",
            chosen.len()
        )));
    }
    Ok(chosen)
}

/// The `c = s + 1` colouring with `c - s - 1` whole families moved to the
/// fresh colours `s + 2, ..., c`.
pub fn colour_case_mid(s: u32, h: u32, c: u32) -> Result<ColouredSystem> {
    if s < 3 || c < s + 2 || c > mid_ceiling(s) {
        return Err(Error::CaseNotApplicable {
            case: "s + 2 <= c <= (s^2 + s)/2",
            reason: format!("s = {s}, c = {c}"),
        });
    }
    let fresh: HashMap<(u32, u32), u32> = mid_recoloured_pairs(s, c - s - 1)?
        .into_iter()
        .zip(s + 2..)
        .collect();
    let comp = compose_star(s, h, cyclic_4cs)?;
    finish(
        s,
        h,
        c,
        ConstructionCase::Mid,
        comp.system,
        comp.provenance,
        |o| match *o {
            Origin::Family { p, q } => fresh
                .get(&(p, q))
                .copied()
                .unwrap_or_else(|| splus1_colour(o, s)),
            _ => splus1_colour(o, s),
        },
    )
}

/// Half-part composition. Sub-system `i` (odd) gets colour `(i + 1) / 2`;
/// family `[A_p, A_q]` gets `s + m` where `(p, q)` is an edge of the `m`-th
/// cycle of the decomposition of `K_2s - I` with `t = c - (s^2 + s)/2`.
pub fn colour_case_high(s: u32, h: u32, c: u32) -> Result<ColouredSystem> {
    let max = (2 * s * s + s) / 3;
    if s < 3 || c <= mid_ceiling(s) || c > max {
        return Err(Error::CaseNotApplicable {
            case: "(s^2 + s)/2 < c <= (2s^2 + s)/3",
            reason: format!("s = {s}, c = {c}"),
        });
    }
    let decomposition = decompose(s, c - mid_ceiling(s))?;
    let mut pair_colour = HashMap::new();
    for (m, cycle) in decomposition.cycles().enumerate() {
        for edge in cycle_edges(&cycle) {
            pair_colour.insert(edge, s + 1 + m as u32);
        }
    }
    let comp = compose_half(s, h, cyclic_4cs)?;
    if let Some(missing) = comp.pairs.iter().find(|p| !pair_colour.contains_key(p)) {
        return Err(Error::ConstructionInfeasible(format!(
            "family {missing:?} lies in no decomposition cycle"
        )));
    }
    finish(
        s,
        h,
        c,
        ConstructionCase::High,
        comp.system,
        comp.provenance,
        |o| match *o {
            Origin::Subsystem { i } => i.div_ceil(2),
            Origin::Family { p, q } => pair_colour[&(p, q)],
            Origin::Starter { .. } => unreachable!("half composition has no starter blocks"),
        },
    )
}

/// Equitable `c`-colouring of type `s` of a 4-cycle system of order
/// `1 + 8hs`, for any `c` in [`spectrum_range`].
pub fn build(s: u32, h: u32, c: u32) -> Result<ColouredSystem> {
    let range = spectrum_range(s, h)?;
    let case = case_for(s, c).ok_or(Error::OutOfSpectrum {
        s,
        c,
        min: *range.start(),
        max: *range.end(),
    })?;
    match case {
        ConstructionCase::Base => colour_case_base(s, h),
        ConstructionCase::Splus1 => colour_case_splus1(s, h),
        ConstructionCase::Mid => colour_case_mid(s, h, c),
        ConstructionCase::High => colour_case_high(s, h, c),
    }
}
