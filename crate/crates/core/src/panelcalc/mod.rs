//! Parallel panels, compatible paths in the panel graph Γ, and the
//! bijections `β` between the panels of `P^op_s(f)`.

mod bijection;
mod calculus;
mod graph;
mod lemmas;

use alloc::string::String;

pub use bijection::PanelBijection;
pub use calculus::PanelCalculus;
pub use graph::PanelGraph;

use crate::chambersys::{Building, ResidueRef};
use crate::coxeter::WeylElt;
use crate::homotopy::Status;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PanelError {
    #[error("panels are not parallel")]
    NotParallel,
    #[error("panels {0} and {1} of the path are not adjacent in the panel graph")]
    NotAdjacent(usize, usize),
    #[error("residue {0:?} is not a panel")]
    NotAPanel(ResidueRef),
    #[error("panel {0:?} does not meet f^op")]
    NotOpposite(ResidueRef),
    #[error("panels are not equivalent for this element")]
    NotEquivalent,
    #[error("no pair of panels at this distance")]
    NoWitnessPair,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("f^op is not connected")]
    FopDisconnected,
    #[error("f^op is not known to be simply 2-connected ({0:?})")]
    HomotopyInconclusive(Status),
}

pub(crate) fn panel_gen(p: ResidueRef) -> Result<crate::coxeter::Gen, PanelError> {
    p.panel_type().ok_or(PanelError::NotAPanel(p))
}

/// `δ(P, Q) = δ(x, proj_Q x)`, the same for every `x ∈ P`.
pub fn delta_panels(b: &Building, p: ResidueRef, q: ResidueRef) -> Result<WeylElt, PanelError> {
    panel_gen(p)?;
    panel_gen(q)?;
    if !b.are_parallel(p, q) {
        return Err(PanelError::NotParallel);
    }
    Ok(b.residue_distance(p, q))
}
