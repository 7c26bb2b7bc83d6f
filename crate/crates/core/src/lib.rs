//! Finite-dimensional fusion frames and their duals.
//!
//! The crate covers classical frames ([`frames`]), fusion frames and their
//! direct-sum operators ([`fusion`]), Q-dual fusion frames and the
//! component-preserving duals built from left inverses of the analysis
//! operator ([`duality`]), duals lifted from local frames ([`local_lift`]),
//! fixture generators ([`generators`]) and the JSON file formats ([`io`]).

pub mod duality;
pub mod error;
pub mod frames;
pub mod fusion;
pub mod generators;
pub mod io;
pub mod linalg;
pub mod local_lift;

pub use error::{Error, Result};
pub use frames::{canonical_dual_frame, frame_bounds, is_dual_pair, Frame, FrameBounds};
pub use fusion::{
    analysis, canonical_dual, frame_operator, fusion_coefficients, synthesis_matrix, validate,
    verify_minimal_norm, BlockOp, BlockVec, FusionFrame, FusionReport,
};
pub use duality::{
    bound_diagnostics, dual_from_left_inverse, duality_equivalences, is_component_preserving,
    parametrized_left_inverse, verify_q_dual, BoundDiagnostics, DualityReport, LeftInverse,
    LeftInverseSource,
};
pub use linalg::{Check, Field, Mat, Subspace, Tol, Vector, C64};
pub use local_lift::{
    global_weighted_family, local_duality_check, q_from_local_frames, LocalFrameSystem,
};
