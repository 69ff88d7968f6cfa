//! JSON interchange format for coloured systems.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "params": { "s": 2, "h": 1, "k": 2, "v": 17, "c": 2, "q": 4, "r": 0 },
//!   "construction_case": "base",
//!   "blocks": [[0, 1, 9, 3], ...],
//!   "colours": [1, ...],
//!   "provenance": [{ "kind": "starter", "i": 1 }, ...]
//! }
//! ```
//!
//! Blocks are written in canonical orientation and sorted, with `colours`
//! and `provenance` kept parallel, so equal systems give identical bytes.
//! Loading a document never verifies it.

use serde::{Deserialize, Serialize};

use crate::design::{
    canonicalize, ColouredSystem, Colouring, ConstructionCase, Cycle4, CycleSystem, Origin, Params,
};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentParams {
    pub s: u32,
    pub h: Option<u32>,
    pub k: u32,
    pub v: u32,
    pub c: u32,
    pub q: u32,
    pub r: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub schema_version: u32,
    pub params: DocumentParams,
    pub construction_case: ConstructionCase,
    pub blocks: Vec<[u32; 4]>,
    pub colours: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Vec<Origin>>,
}

impl SystemDocument {
    pub fn from_system(colsys: &ColouredSystem) -> Self {
        let blocks = &colsys.system.blocks;
        let oriented: Vec<Cycle4> = blocks
            .iter()
            .map(|b| canonicalize(*b).unwrap_or(*b))
            .collect();
        let mut order: Vec<usize> = (0..blocks.len()).collect();
        order.sort_by_key(|&i| (oriented[i], i));
        let colour_at = |i: usize| colsys.colouring.colours.get(i).copied().unwrap_or(0);
        let p = &colsys.params;
        SystemDocument {
            schema_version: SCHEMA_VERSION,
            params: DocumentParams {
                s: p.s,
                h: p.h,
                k: p.k,
                v: p.v,
                c: colsys.colouring.c,
                q: p.q,
                r: p.r,
            },
            construction_case: colsys.construction_case,
            blocks: order.iter().map(|&i| oriented[i].labels()).collect(),
            colours: order.iter().map(|&i| colour_at(i)).collect(),
            provenance: colsys
                .provenance
                .as_ref()
                .filter(|tags| tags.len() == blocks.len())
                .map(|tags| order.iter().map(|&i| tags[i]).collect()),
        }
    }

    /// Checks ranges and internal consistency and rebuilds the system.
    pub fn into_system(self) -> Result<ColouredSystem> {
        let invalid = |location: String, reason: String| Error::Validation { location, reason };
        if self.schema_version != SCHEMA_VERSION {
            return Err(invalid(
                "schema_version".into(),
                format!(
                    "unsupported version {}, expected {SCHEMA_VERSION}",
                    self.schema_version
                ),
            ));
        }
        let dp = &self.params;
        let params =
            Params::for_order(dp.s, dp.v).map_err(|e| invalid("params".into(), e.to_string()))?;
        let derived = [
            ("k", params.k, dp.k),
            ("q", params.q, dp.q),
            ("r", params.r, dp.r),
        ];
        for (name, want, got) in derived {
            if want != got {
                return Err(invalid(
                    format!("params.{name}"),
                    format!(
                        "{got} inconsistent with s = {} and v = {} (expected {want})",
                        dp.s, dp.v
                    ),
                ));
            }
        }
        if dp.h != params.h {
            return Err(invalid(
                "params.h".into(),
                format!("expected {:?}, got {:?}", params.h, dp.h),
            ));
        }
        if self.colours.len() != self.blocks.len() {
            return Err(invalid(
                "colours".into(),
                format!(
                    "{} colours for {} blocks",
                    self.colours.len(),
                    self.blocks.len()
                ),
            ));
        }
        if let Some(tags) = &self.provenance {
            if tags.len() != self.blocks.len() {
                return Err(invalid(
                    "provenance".into(),
                    format!("{} tags for {} blocks", tags.len(), self.blocks.len()),
                ));
            }
        }
        for (i, block) in self.blocks.iter().enumerate() {
            if let Some(j) = block.iter().position(|&x| x >= dp.v) {
                return Err(invalid(
                    format!("blocks[{i}][{j}]"),
                    format!("label {} outside 0..{}", block[j], dp.v),
                ));
            }
        }
        for (i, &colour) in self.colours.iter().enumerate() {
            if colour == 0 || colour > dp.c {
                return Err(invalid(
                    format!("colours[{i}]"),
                    format!("colour {colour} outside 1..={}", dp.c),
                ));
            }
        }
        Ok(ColouredSystem {
            params,
            system: CycleSystem::new(dp.v, self.blocks.into_iter().map(Cycle4::from).collect()),
            colouring: Colouring {
                colours: self.colours,
                c: dp.c,
            },
            construction_case: self.construction_case,
            provenance: self.provenance,
        })
    }
}

pub fn serialize(colsys: &ColouredSystem) -> Vec<u8> {
    let doc = SystemDocument::from_system(colsys);
    let mut out = serde_json::to_vec_pretty(&doc).expect("documents always serialize");
    out.push(b'\n');
    out
}

pub fn deserialize(bytes: &[u8]) -> Result<ColouredSystem> {
    let doc: SystemDocument = serde_json::from_slice(bytes)?;
    doc.into_system()
}
