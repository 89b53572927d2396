//! Exact verification of the nearly Kähler geometry of SL(3,ℝ)/(ℝ × SO(2)).
//!
//! The crate is organized bottom-up:
//!
//! - [`exactfield`]: arithmetic in ℚ(√2, √3), which contains every entry of
//!   the basis matrices and all their products;
//! - [`liealg`]: sl(3,ℝ), its reductive splitting, metric and isotropy action;
//! - [`nkgeom`]: the invariant tensors `J`, `J₁`, `F`, the Levi-Civita
//!   connection at the base point and the curvature tensor;
//! - [`surfaces`]: the five totally geodesic almost complex surfaces;
//! - [`classify`]: the case analysis that reduces every such surface to one
//!   of the five.
//!
//! Exhaustive sweeps go through [`par`], which uses rayon when the
//! `parallel` feature is enabled.

pub mod classify;
pub mod error;
pub mod exactfield;
pub mod liealg;
pub mod linalg;
pub mod nkgeom;
pub mod numeric;
pub mod par;
pub mod surfaces;
pub mod sweep;

pub use error::{Error, Result};
pub use exactfield::FieldElem;
pub use liealg::{AlgMat, BasisIndex, FullVec, MVec, SubspaceTag};
