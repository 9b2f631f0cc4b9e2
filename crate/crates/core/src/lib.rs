//! Zeta functions of odd-characteristic hyperelliptic curves through the
//! action of a lifted Frobenius on the first cohomology of the curve minus
//! its Weierstrass points, with an independent brute-force point-counting
//! oracle for verification.
//!
//! The pipeline: fixed-point arithmetic in the unramified extension Z_q
//! ([`padic`]), the lifted curve and its differential forms ([`curve`]),
//! series images of the basis differentials under Frobenius
//! ([`frobenius`]), reduction to the basis and the Frobenius matrix
//! ([`reduce`]), and the numerator, counts and group order ([`zeta`]).
//! [`oracle`] counts points by enumeration, sharing no arithmetic with the
//! rest.

pub mod curve;
pub mod error;
pub mod frobenius;
pub mod oracle;
pub mod padic;
pub mod poly;
pub mod precision;
pub mod reduce;
pub mod zeta;

pub use curve::{CurveSpec, LiftedCurve, OddYForm};
pub use error::{Error, Result};
pub use frobenius::{binom_half, frobenius_image, BasisKind};
pub use oracle::{
    find_irreducible, naive_count, quadratic_character, verify_counts, CountingField,
    VerifyEntry, VerifyReport, DEFAULT_BUDGET,
};
pub use padic::{PadicParams, ZqElem};
pub use poly::{BezoutContext, ZqPoly};
pub use precision::{plan_with_overrides, required_precision, GuardOverride, PrecisionPlan};
pub use reduce::{
    exact_differential, frobenius_matrix, reduce_infinity_step, reduce_pole_step,
    reduce_to_basis, BasisVector, FrobMatrix,
};
pub use zeta::{
    assemble_zeta, charpoly_reversed, counts_from_numerator, lift_numerator, q_power_matrix,
    Timings, ZetaResult,
};
