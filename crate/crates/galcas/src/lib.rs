//! Exact symbolic computations in the centrally extended `l`-conformal
//! Galilei algebra and its universal enveloping algebra.
//!
//! The algebra is spanned by an `sl(2)` triple `L_{-1}, L_0, L_1`, spatial
//! rotations `M_ij` (`1 <= i < j <= d`), a tower of vector generators
//! `C_i^(alpha)` with `alpha` running from `-l` to `l` in integer steps, and
//! optionally a central element `Z`. The central extension exists for
//! half-integer `l` in any dimension and for integer `l` in `d = 2`.
//!
//! The crate provides:
//!
//! * [`algebra`]: the structure constants, exact and table-driven, with an
//!   exhaustive Jacobi checker;
//! * [`uea`]: the universal enveloping algebra with Poincare-Birkhoff-Witt
//!   normal ordering over arbitrary-precision rationals;
//! * [`casimir`]: construction of the decoupled generators and the Casimir
//!   invariants built from them (quartic, rotation traces, Pfaffian);
//! * [`verify`]: centrality and commutation-relation checkers, plus the
//!   central-charge-to-zero contraction;
//! * [`count`]: the Beltrametti-Blasi invariant count via generic rank of
//!   the commutator matrix, in fraction-free exact arithmetic.
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod algebra;
pub mod casimir;
pub mod count;
pub mod halfint;
pub mod uea;
pub mod verify;

pub use algebra::{Algebra, AlgebraSpec, EtaKind, GeneratorId, JacobiReport, LieCombo};
pub use casimir::CasimirCatalog;
pub use count::RankReport;
pub use halfint::HalfInt;
pub use uea::{PBWMonomial, UEAElement};
pub use verify::{CentralityReport, RelationReport, ZLimitReport};

/// Scalar type used throughout: arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;

/// Errors produced by configuration, parsing, and domain checks.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The requested algebra does not exist (bad `l`, `d`, or extension).
    #[error("invalid algebra: {0}")]
    Config(String),
    /// An operation was applied outside its domain (unknown generator,
    /// missing central element, out-of-range index, ...).
    #[error("{0}")]
    Domain(String),
    /// A string or JSON form could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Convenience constructor for a rational from an integer pair.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
