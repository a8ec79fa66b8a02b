//! Exact-arithmetic verification of orbit-level trace identities attached to
//! double covers of curves over finite fields.
//!
//! The library has three layers:
//!
//! * an algebra kernel, generic over the scalar type: Laurent polynomials in a
//!   formal variable ([`laurent`]) and sparse/dense exact linear algebra
//!   ([`linalg`]);
//! * symmetric-group combinatorics: partitions and cycle types
//!   ([`partitions`]), class functions and characters ([`characters`]), and
//!   operators on the tensor space `(Q^2)^{⊗n}` ([`tensor`]);
//! * the arithmetic side: zeta data for curves and divisor shapes ([`curve`]),
//!   orbit-by-orbit comparison of the two trace distributions ([`orbit`]),
//!   and a finite-field model of the double-coset invariant ([`quad`]).
//!
//! All computations are exact; no floating point is used anywhere. The
//! concrete scalar for the whole crate is [`Rat`] (arbitrary-precision
//! rationals), fixed by the type aliases below.

pub mod characters;
pub mod cli;
pub mod curve;
pub mod error;
pub mod gf;
pub mod laurent;
pub mod linalg;
pub mod orbit;
pub mod partitions;
pub mod quad;
pub mod scalar;
pub mod tensor;

pub use error::Error;

/// Arbitrary-precision integer used for all counts, traces and characters.
pub type Int = num_bigint::BigInt;

/// Exact rational scalar; always stored in lowest terms with positive
/// denominator, so equality is structural.
pub type Rat = num_rational::BigRational;

/// Laurent polynomial in the formal symbol `q^s`, with exact rational
/// coefficients. Exponents are the integer powers of `q^s`.
pub type QsLaurent = laurent::Laurent<Rat>;

/// Exact linear endomorphism of the tensor space, stored sparsely.
pub type Operator = linalg::SparseMat<Rat>;

/// Default cap on the tensor-space size `n` (dimension `2^n`). The brute
/// trace path and projector construction are exponential in `n`; callers may
/// override via the `*_capped` entry points.
pub const DEFAULT_TENSOR_CAP: usize = 8;

/// Default cap on the total degree of enumerated divisor shapes.
pub const DEFAULT_SHAPE_DEGREE_CAP: usize = 12;

/// Default cap on the field size `q` for the double-coset census.
pub const DEFAULT_CENSUS_Q_CAP: u64 = 11;

/// Convert an [`Int`] into a [`Rat`].
pub fn int_to_rat(i: Int) -> Rat {
    Rat::from_integer(i)
}

/// Extract the integer value of a rational known to be integral.
///
/// Panics if the value has a nontrivial denominator; callers use this only
/// where integrality is a proved invariant.
pub fn rat_to_int(r: &Rat) -> Int {
    assert!(
        r.is_integer(),
        "expected integral rational, got {}",
        r
    );
    r.to_integer()
}
