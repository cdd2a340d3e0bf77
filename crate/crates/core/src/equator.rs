//! The depth-n equator: `∞`, blocks `b_0..b_{m-1}` and the gaps between them.
//!
//! Boundary positions on the equator circle are small integers:
//! `∞ = 0`, `g_i = 2i + 1`, `b_i = 2i + 2`, so the circle has `2m + 2` slots.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEPTH: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EquatorModel {
    depth: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GapId(pub u32);

impl EquatorModel {
    pub fn depth(self) -> u32 {
        self.depth
    }

    pub fn block_count(self) -> u32 {
        1u32 << self.depth
    }

    pub fn gap_count(self) -> u32 {
        self.block_count() + 1
    }

    pub fn last_gap(self) -> u32 {
        self.block_count()
    }

    pub fn gap(self, index: u32) -> Result<GapId> {
        if index <= self.last_gap() {
            Ok(GapId(index))
        } else {
            Err(Error::GapOutOfRange {
                gap: index,
                depth: self.depth,
                last: self.last_gap(),
            })
        }
    }

    /// Length of the boundary circle in position units.
    pub fn circle_len(self) -> u32 {
        2 * self.block_count() + 2
    }

    pub fn gap_pos(self, gap: u32) -> u32 {
        2 * gap + 1
    }

    pub fn block_pos(self, block: u32) -> u32 {
        2 * block + 2
    }

    /// Offset of `target` from `from`, measured in the positive direction.
    pub fn offset(self, from: u32, target: u32) -> u32 {
        let len = self.circle_len();
        (target + len - from) % len
    }
}

/// Builds the depth-`depth` model, refusing depths above [`DEFAULT_MAX_DEPTH`].
pub fn make_model(depth: u32) -> Result<EquatorModel> {
    make_model_with_max(depth, DEFAULT_MAX_DEPTH)
}

pub fn make_model_with_max(depth: u32, max: u32) -> Result<EquatorModel> {
    if depth > max || depth > 30 {
        return Err(Error::DepthLimit { requested: depth, max });
    }
    Ok(EquatorModel { depth })
}

/// Gap map from depth n to depth n+1. Block `b_i` splits into `b_{2i}`, `b_{2i+1}`
/// with the new gap `g_{2i+1}` between them, so old gap `g_i` becomes `g_{2i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementMap {
    pub from_depth: u32,
    pub to_depth: u32,
    pub gap_image: Vec<u32>,
}

impl RefinementMap {
    pub fn image(&self, gap: u32) -> u32 {
        self.gap_image[gap as usize]
    }

    /// Gaps at the finer depth that have no preimage.
    pub fn new_gaps(&self) -> Vec<u32> {
        (0..self.gap_image.len() as u32 - 1).map(|i| 2 * i + 1).collect()
    }
}

pub fn refine(model: EquatorModel) -> Result<RefinementMap> {
    refine_with_max(model, DEFAULT_MAX_DEPTH)
}

pub fn refine_with_max(model: EquatorModel, max: u32) -> Result<RefinementMap> {
    if model.depth >= max {
        return Err(Error::DepthLimit {
            requested: model.depth + 1,
            max,
        });
    }
    Ok(RefinementMap {
        from_depth: model.depth,
        to_depth: model.depth + 1,
        gap_image: (0..model.gap_count()).map(|i| 2 * i).collect(),
    })
}

/// Image of a depth-`from` gap after refining `levels` times.
pub fn embed_gap(gap: u32, levels: u32) -> u32 {
    gap << levels
}

/// Block containing the finer block after refining `levels` times.
pub fn parent_block(block: u32, levels: u32) -> u32 {
    block >> levels
}
