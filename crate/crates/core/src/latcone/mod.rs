//! Exact linear algebra and polyhedral kernels.

pub mod cone;
pub mod dd;
pub mod linalg;
pub mod lp;
pub mod snf;

pub use cone::{cone_member, positivity_witness, strict_positive_on_cone, verify_membership, Membership, PositivityClass, RationalCone};
pub use dd::{dual_cone, polyhedral_cone_generators, DD_MAX_DIM};
pub use lp::{feasible_nonneg, Feasibility, LinearSystem, Relation, VarKind};
pub use snf::{smith_normal_form, SmithDecomposition};
