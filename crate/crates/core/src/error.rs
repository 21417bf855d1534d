//! Crate-wide error type.

use std::fmt;

/// Errors raised by geometry, section arithmetic, and derivation construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Vector length does not match the ambient rank.
    RankMismatch { expected: usize, found: usize },
    /// A pairing or membership test mixed two vectors of the same space tag.
    SpaceMismatch,
    /// Operation requires a pointed cone but the cone has a nonzero lineality space.
    NotPointed,
    /// The given vector is not an extreme ray of the cone.
    NotARay,
    /// Evaluation point lies outside the dual of the tail cone.
    OutsideDualCone,
    /// Minkowski sum of tailed polyhedra with different tail cones.
    TailMismatch,
    /// No (or more than one) maximal linear piece contains the given face.
    FaceNotCovered,
    /// Degree of a divisor on a non-projective base.
    NotProjective,
    /// Section arithmetic requested on an unsupported base.
    Unsupported(&'static str),
    /// A polynomial factor does not split over the rational ground field.
    IrreducibleFactorOutsideGroundField,
    /// The degree vector is not in S_rho.
    NotInSRho,
    /// The chosen section does not lie in Phi_e.
    PhiNotInPhiE,
    /// The zero section cannot define a derivation.
    ZeroPhi,
    /// Two objects built over different polyhedral divisors were combined.
    ContextMismatch,
    /// A ring product left its graded piece; indicates a bug in the support
    /// function machinery, never expected on valid data.
    MembershipViolation,
    /// A section/degree pair that is not a member of its graded piece.
    NotInGradedPiece,
    /// The marked point is not an interior lattice point of a full-dimensional cone.
    NotInteriorPoint,
    /// The divisor on the base is not big.
    NotBigDivisor,
    /// Post-construction verification of an example divisor failed.
    VerificationFailed(&'static str),
    /// The divisor is not in the standard orthant form.
    NotStandardForm,
    /// Malformed or semantically invalid input data.
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RankMismatch { expected, found } => {
                write!(f, "rank mismatch: expected {expected} coordinates, found {found}")
            }
            Error::SpaceMismatch => write!(f, "space tag mismatch (pairing needs one M and one N vector)"),
            Error::NotPointed => write!(f, "cone is not pointed"),
            Error::NotARay => write!(f, "vector is not an extreme ray of the cone"),
            Error::OutsideDualCone => write!(f, "point lies outside the dual of the tail cone"),
            Error::TailMismatch => write!(f, "tail cones differ"),
            Error::FaceNotCovered => write!(f, "face is not covered by a unique maximal linear piece"),
            Error::NotProjective => write!(f, "divisor degree is only defined on a projective base"),
            Error::Unsupported(what) => write!(f, "unsupported on this base: {what}"),
            Error::IrreducibleFactorOutsideGroundField => {
                write!(f, "a denominator factor does not split over the rational ground field")
            }
            Error::NotInSRho => write!(f, "degree vector is not in S_rho"),
            Error::PhiNotInPhiE => write!(f, "section is not an element of Phi_e"),
            Error::ZeroPhi => write!(f, "the section of a derivation must be nonzero"),
            Error::ContextMismatch => write!(f, "objects belong to different polyhedral divisors"),
            Error::MembershipViolation => write!(f, "product left its graded piece (internal error)"),
            Error::NotInGradedPiece => write!(f, "section is not a member of the graded piece"),
            Error::NotInteriorPoint => {
                write!(f, "point is not an interior lattice point of a full-dimensional cone")
            }
            Error::NotBigDivisor => write!(f, "divisor on the base is not big"),
            Error::VerificationFailed(what) => write!(f, "verification failed: {what}"),
            Error::NotStandardForm => write!(f, "divisor is not in standard orthant form"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
