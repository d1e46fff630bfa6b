//! Polynomial hulls of orbits `Gv` where `G = FT` is a torus `T` extended by a
//! finite group `F` of twisted coordinate permutations, for orbits lying inside
//! a single complexified torus orbit.
//!
//! The hull of such an orbit is carved out of the ambient coordinate space by
//! finitely many monomial inequalities `|z_1|^{s_1} … |z_n|^{s_n} ≤ c`.  The
//! exponent vectors are facet normals of a polyhedron `P = Q + C` in the log
//! coordinates of the torus: `Q` is the convex hull of the (finitely many)
//! log-positions of the orbit and `C` is the recession cone of bounded
//! one-parameter subgroups.  Everything combinatorial (lattices, cones, facet
//! enumeration) is done in exact rational arithmetic; floating point enters
//! only through logarithms of the input moduli.
//!
//! Module map:
//! - [`linalg`]: dense exact linear algebra over any ordered field scalar
//! - [`lp`]: small exact simplex (used for cross-checks and feasibility)
//! - [`dd`]: double description method (V- and H-representations of cones)
//! - [`ratlin`]: integer lattices, saturation, rational subspaces, phase tests
//! - [`cone`]: recession cone, its face lattice and limit idempotents
//! - [`group`]: finite groups of twisted coordinate permutations
//! - [`hull`]: orbit hulls, membership verdicts, separating certificates, strips
//! - [`classify`]: structural classification of pairs (lattice, group)
//! - [`symdom`]: singular-value hulls for isotropy orbits of symmetric domains
//! - [`oracle`]: randomized brute-force verification of emitted hulls

pub mod classify;
pub mod cone;
pub mod dd;
pub mod group;
pub mod hull;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod ratlin;
pub mod symdom;

/// Exact rational scalar used throughout the combinatorial layer.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integer (lattice coordinates, facet normals).
pub type Int = num_bigint::BigInt;
/// Complex double, the numeric type of orbit points.
pub type C64 = num_complex::Complex64;

pub use classify::{MaicoInput, OrbitType, PairReport};
pub use cone::{IdempotentSet, PolyCone};
pub use group::{Angle, MonomialElement, MonomialGroup};
pub use hull::{Certificate, MembershipStatus, MembershipVerdict, OrbitHull, StripDescriptor};
pub use oracle::{VerificationReport, Violation};
pub use ratlin::{RationalSubspace, TorusLattice};
pub use symdom::Sl2Product;

/// Library-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("input is not an integer vector: {0}")]
    NonInteger(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("group closure exceeded the order bound {bound}")]
    GroupTooLarge { bound: usize },
    #[error("element does not preserve the subspace")]
    NotInvariant,
    #[error(
        "generator {index} violates the orbit condition: f·v leaves the complexified torus orbit \
         ({detail})"
    )]
    IncorViolation { index: usize, detail: String },
    #[error("point has a zero component at index {index}; expected a point of the open torus")]
    ZeroComponent { index: usize },
    #[error("point is not on the radial torus orbit of the base point: {0}")]
    NotOnRadialOrbit(String),
    #[error("membership verdict is {verdict}; a separating certificate exists only for Outside")]
    NotOutside { verdict: String },
    #[error("no pure monomial certificate for this verdict: {0}")]
    NoMonomialCertificate(String),
    #[error(
        "rationalization of the separating normal lost the margin within denominator bound {bound}"
    )]
    RationalizationFailed { bound: u64 },
    #[error("pair is inconsistent: {0}")]
    Inconsistent(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn rat_to_f64(q: &Rat) -> f64 {
    num_traits::ToPrimitive::to_f64(q).expect("finite rational fits in f64 range")
}

/// Exact dyadic lift of a finite double.  Every finite f64 is a rational with a
/// power-of-two denominator, so this loses nothing and keeps downstream cone
/// computations deterministic.
pub(crate) fn f64_to_rat(x: f64) -> Rat {
    Rat::from_float(x).expect("finite float")
}
