//! Coefficient fields.
//!
//! Every algorithm in this crate is generic over [`Field`]. Two instances are
//! provided: exact rationals ([`Rational`]) and the one-parameter function
//! field Q(t) ([`ParamRational`]). Values are immutable and normalized, so
//! structural equality is mathematical equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use crate::error::Result;

pub use crate::param::ParamRational;
pub use crate::rational::{rat_make, Rational};

/// An exact, canonically represented field.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Multiplicative inverse; fails with `DivisionByZero` on zero.
    fn inv(&self) -> Result<Self>;

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn from_i64(n: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;

    /// The transcendental parameter `t`, when the field has one.
    fn parameter() -> Option<Self> {
        None
    }

    /// A deterministic total order, used only for canonical sorting.
    fn canonical_cmp(&self, other: &Self) -> Ordering;

    /// Serialized form: `p/q` for rationals, `(num)/(den)` for Q(t).
    fn to_text(&self, param: &str) -> String;

    /// Compact form for embedding in expressions: parenthesized whenever it is
    /// not a plain signed rational.
    fn to_expr_text(&self, param: &str) -> String {
        self.to_text(param)
    }

    /// Best-effort conversion for numeric tests; `None` when the value
    /// depends on the parameter.
    fn to_f64(&self) -> Option<f64> {
        None
    }
}

/// `a^-1`; panics on zero. Only used where the invariant rules zero out.
pub(crate) fn inv_nonzero<F: Field>(a: &F) -> F {
    a.inv().expect("inverse of a value known to be nonzero")
}
