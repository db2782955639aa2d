//! The fixed geometric data every higher-level operation needs.

use std::sync::OnceLock;

use crate::anyon::{align_icosians, PseudoPair, YTilde};
use crate::braid::BraidWord;
use crate::error::Result;
use crate::group::FiniteQuatGroup;
use crate::quat::UnitQuaternion;
use crate::symmetry::{SymmetryGroup, SymmetryOp};

/// Pseudo-generators, the binary icosahedral group in the frame they
/// approximate, its symmetry group G, and the Y~ words.
#[derive(Clone, Debug)]
pub struct Atlas {
    pub pair: PseudoPair,
    /// Rotation carrying the standard group into this frame.
    pub frame: UnitQuaternion,
    pub group: SymmetryGroup,
    pub ytilde: YTilde,
}

impl Atlas {
    pub fn new(pair: PseudoPair) -> Result<Self> {
        let aligned = align_icosians(&pair);
        let ytilde = YTilde::build(&pair, &aligned.group)?;
        let group = SymmetryGroup::new(aligned.group);
        Ok(Atlas {
            pair,
            frame: aligned.rotation,
            group,
            ytilde,
        })
    }

    /// Built once from the reference pseudo-generators.
    pub fn shared() -> &'static Atlas {
        static ATLAS: OnceLock<Atlas> = OnceLock::new();
        ATLAS.get_or_init(|| Atlas::new(PseudoPair::reference()).expect("reference atlas builds"))
    }

    pub fn y(&self) -> &FiniteQuatGroup {
        self.group.y()
    }

    /// Quaternion actually realized by `braid_for_op(op, core)` when the
    /// core evaluates to `core`.
    pub fn realized(&self, op: SymmetryOp, core: UnitQuaternion) -> UnitQuaternion {
        let l = self.ytilde.entry(op.l as usize).achieved;
        let r = self.ytilde.entry(op.r as usize).achieved;
        let c = if op.conjugate { core.conj() } else { core };
        l * c * r
    }

    pub fn braid_for_op(&self, op: SymmetryOp, core: &BraidWord) -> BraidWord {
        self.ytilde.braid_for_op(op, core)
    }

    /// `op` with both multipliers negated; it acts identically.
    pub fn flip_signs(&self, op: SymmetryOp) -> SymmetryOp {
        let y = self.group.y();
        SymmetryOp {
            l: y.neg(op.l as usize) as u8,
            r: y.neg(op.r as usize) as u8,
            conjugate: op.conjugate,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn realized_matches_braid() {
        let a = Atlas::shared();
        let core: BraidWord = "2 1 1 -2".parse().unwrap();
        let op = a.group.op_at(9000);
        for op in [op, a.flip_signs(op)] {
            let w = a.braid_for_op(op, &core);
            let got = w.evaluate_quat();
            let want = a.realized(op, core.evaluate_quat());
            assert!(got.quat().max_abs_diff(want.quat()) < 1e-12);
        }
    }
}
