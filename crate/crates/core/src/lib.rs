//! Milnor homotopy invariants of colored string links.
//!
//! A colored string link is given as a word in clasps and claspers over a
//! component decomposition. The crate computes its longitudes in the
//! color-squarefree Magnus algebra, its canonical invariant vector and
//! canonical clasper form, and decides (with certificates) whether the link
//! closures or the G-closures of two such words are equivalent.
//!
//! All algebra is generic over the integer coefficient ring; the aliases at
//! the crate root fix the ring to arbitrary precision integers ([`Int`]) or
//! to checked machine integers ([`Int64`]).

pub mod clifront;
pub mod coefficient;
pub mod decide;
pub mod error;
pub mod hbraid;
pub mod homotopyact;
pub mod rcfalg;
pub mod scheme;
pub mod stringlink;

pub use coefficient::Coefficient;
pub use error::{Error, Result};
pub use scheme::{ComponentDecomposition, ComponentId, IndexSequence};

/// Arbitrary precision coefficients; the default ring of the public surface.
pub type Int = num_bigint::BigInt;
/// Checked 64-bit coefficients; overflow panics instead of wrapping.
pub type Int64 = i64;

pub type Series = rcfalg::TruncatedSeries<Int>;
pub type Series64 = rcfalg::TruncatedSeries<Int64>;
pub type LongitudeSystem = hbraid::Longitudes<Int>;
pub type LongitudeSystem64 = hbraid::Longitudes<Int64>;
pub type InvariantVector = stringlink::InvariantVector<Int>;
pub type InvariantVector64 = stringlink::InvariantVector<Int64>;
