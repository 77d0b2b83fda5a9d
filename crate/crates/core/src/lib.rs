//! Exact invariants of open books presented as plumbing trees of Hopf bands.
//!
//! * [`matrix`] and [`laurent`]: exact integer linear algebra and Laurent
//!   polynomials (determinants, Smith invariants, signatures, Alexander
//!   polynomials, homological monodromy).
//! * [`plumbing`]: trees of Hopf bands and the plumbing moves.
//! * [`plane_fields`]: homotopy bookkeeping for the plane field of an open
//!   book and the stable-equivalence decision.
//! * [`grothendieck`]: the `(μ, λ)` classes and their decompositions.
//! * [`search`]: common-stabilization certificates and their verification.

pub mod error;
pub mod grothendieck;
pub mod laurent;
pub mod matrix;
pub mod plane_fields;
pub mod plumbing;
pub mod search;

pub use error::{HopfError, Result};
pub use grothendieck::{
    decompose_knot_class, decompose_link_class, gk_class, GkClass, KnotBasis, LinkBasis,
};
pub use laurent::LaurentPolynomial;
pub use matrix::{
    alexander_from_seifert, char_poly, det_exact, homological_monodromy, inertia,
    signature_symmetric, smith_invariants, Inertia, IntMatrix,
};
pub use plane_fields::{
    act_pi3, euler_divisibility, obstruction_class, plumb_effect, pontryagin_class,
    relative_framing, stable_equivalence, EquivalenceVerdict, H1Element, ManifoldModel,
    OpenBookClass, PlaneFieldClass, RelativeFraming,
};
pub use plumbing::{
    Band, BandSign, Fingerprint, InvariantReport, KnotKind, PlumbingTree, DEFAULT_MU_CAP,
};
pub use search::{
    common_stabilization, replay, verify_certificate, verify_certificate_with_cap, Move,
    SearchConfig, SearchOutcome, StabilizationCertificate,
};
