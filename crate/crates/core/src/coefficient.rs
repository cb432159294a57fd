use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

/// Integer coefficient ring of the truncated Magnus algebra.
///
/// Implemented for every exact signed integer type that supports checked
/// arithmetic: `i64`, `i128` and `BigInt`. Floating point types are not
/// coefficient rings here; invariants are integers and exactness matters.
pub trait Coefficient:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Send
    + Sync
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + 'static
{
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("coefficient ring cannot hold an i64 value")
    }

    /// `self += a * b`, panicking on overflow of fixed width rings.
    #[inline]
    fn add_product(&mut self, a: &Self, b: &Self) {
        let p = a.checked_mul(b).expect("coefficient overflow in product");
        *self = self.checked_add(&p).expect("coefficient overflow in sum");
    }

    #[inline]
    fn add_ref(&mut self, a: &Self) {
        *self = self.checked_add(a).expect("coefficient overflow in sum");
    }

    #[inline]
    fn sub_ref(&mut self, a: &Self) {
        *self = self.checked_sub(a).expect("coefficient overflow in difference");
    }

    /// Lossless conversion between rings, `None` when the target is too narrow.
    fn convert<S: Coefficient>(&self) -> Option<S> {
        match self.to_i64() {
            Some(v) => S::from_i64(v),
            None => S::from_str_radix(&self.to_string(), 10).ok(),
        }
    }
}

impl<T> Coefficient for T where
    T: Clone
        + Debug
        + Display
        + Eq
        + Ord
        + Hash
        + Send
        + Sync
        + Integer
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + 'static
{
}
