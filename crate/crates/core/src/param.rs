use std::cmp::Ordering;
use std::fmt;

use crate::error::{PfdError, Result};
use crate::field::{Field, Rational};
use crate::poly::{poly_gcd, Poly};

/// Element of Q(t): `numerator / denominator` with a monic denominator and
/// coprime parts. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParamRational {
    num: Poly<Rational>,
    den: Poly<Rational>,
}

impl ParamRational {
    /// Normalizing constructor; fails on a zero denominator.
    pub fn new(num: Poly<Rational>, den: Poly<Rational>) -> Result<Self> {
        if den.is_zero() {
            return Err(PfdError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly<Rational>, den: Poly<Rational>) -> Self {
        if num.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den).expect("nonzero operands");
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.divrem(&g).expect("nonzero gcd").0,
                    den.divrem(&g).expect("nonzero gcd").0,
                )
            }
        };
        let (lc, den) = den.monic_parts();
        let num = if lc.is_one() {
            num
        } else {
            num.scale(&lc.inv().expect("nonzero leading coefficient"))
        };
        ParamRational { num, den }
    }

    pub fn from_poly(num: Poly<Rational>) -> Self {
        ParamRational {
            num,
            den: Poly::one(),
        }
    }

    /// The parameter `t` itself.
    pub fn parameter_value() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn numer(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<Rational> {
        &self.den
    }

    /// Re-normalizes; the identity on values built through the public API.
    pub fn renormalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    /// Substitutes a rational value for `t`; `None` at a pole.
    pub fn eval_at(&self, t: &Rational) -> Option<Rational> {
        let d = self.den.eval(t);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(t).div(&d).expect("nonzero"))
        }
    }
}

impl fmt::Display for ParamRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}

impl Field for ParamRational {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::normalized(&self.num + &rhs.num, self.den.clone());
        }
        Self::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        Self::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    fn neg(&self) -> Self {
        ParamRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(PfdError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    fn from_i64(n: i64) -> Self {
        Self::from_poly(Poly::constant(Rational::from_integer(n)))
    }

    fn from_rational(r: &Rational) -> Self {
        Self::from_poly(Poly::constant(r.clone()))
    }

    fn parameter() -> Option<Self> {
        Some(Self::parameter_value())
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.num
            .canonical_cmp(&other.num)
            .then_with(|| self.den.canonical_cmp(&other.den))
    }

    fn to_text(&self, param: &str) -> String {
        format!(
            "({})/({})",
            self.num.to_text(param, param),
            self.den.to_text(param, param)
        )
    }

    fn to_expr_text(&self, param: &str) -> String {
        if self.den.is_one() {
            format!("({})", self.num.to_text(param, param))
        } else {
            self.to_text(param)
        }
    }
}
