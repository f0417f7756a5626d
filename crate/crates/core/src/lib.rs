//! Finite-truncation toolkit for the paranormed sequence spaces obtained as
//! the matrix domain of generalized means composed with the difference
//! operator of order `m` in the Maddox space `l(p)`.
//!
//! * [`triangles`]: the generalized-mean triangle `A(r,s,t)`, `Delta^(m)`,
//!   their composite and the inverses.
//! * [`spaces`]: transforms, paranorm, BK norm, Schauder basis.
//! * [`duals`]: the `E` matrix, the condition battery for dual spaces and
//!   matrix mappings into `l_inf` and `l_1`.
//! * [`compact`]: associated matrices, operator norms, Hausdorff measure of
//!   noncompactness estimates and compactness classification.
//! * [`cli`]: the batch front-end.

pub mod cli;
pub mod compact;
pub mod duals;
pub mod error;
pub mod scalar;
pub mod sequence;
pub mod spaces;
pub mod triangles;

pub use compact::{associated_matrix, AssociatedMatrix, Compactness, OperatorSpec, Target};
pub use duals::{build_e, dual_membership, DualKind};
pub use error::{Error, Result};
pub use scalar::{NumericMode, Rational, Scalar};
pub use sequence::{ExponentSequence, Preset, SequenceFamily, SpaceParams};
pub use spaces::Space;
pub use triangles::{SpaceWindow, TriangleMatrix};
