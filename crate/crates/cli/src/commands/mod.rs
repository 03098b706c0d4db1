pub mod converge;
pub mod eval;
pub mod sample;
pub mod verify;

/// Target limiting spec matching a finite-n potential and frame.
pub fn default_target(
    pot: plasma_core::finite_n::Potential,
    frame: plasma_core::finite_n::FrameKind,
) -> Result<plasma_core::limits::LimitKernelSpec, crate::UsageError> {
    use plasma_core::finite_n::{FrameKind, Potential};
    use plasma_core::limits::LimitKernelSpec;
    match (pot, frame) {
        (_, FrameKind::Bulk) => Ok(LimitKernelSpec::GinibreBulk),
        (Potential::HardEdgeGinibre, FrameKind::Boundary) => Ok(LimitKernelSpec::HardEdge),
        (_, FrameKind::Boundary) => Ok(LimitKernelSpec::free_boundary(0.0)),
        (Potential::Power(l), FrameKind::Singularity) => Ok(LimitKernelSpec::MittagLeffler(l)),
        (p, FrameKind::Singularity) => Err(crate::UsageError(format!("potential {p} has no singular point"))),
    }
}
