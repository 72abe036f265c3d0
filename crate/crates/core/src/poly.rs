//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored in ascending degree; the zero polynomial is the
//! empty vector and has degree `None`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::budget::checkpoint;
use crate::error::{PfdError, Result};
use crate::field::{inv_nonzero, Field, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The decomposition variable `x`.
    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of coefficients; `deg + 1`, or 0 for the zero polynomial.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Splits off the leading coefficient: `self = lc * monic`.
    /// The zero polynomial yields `(0, 0)`.
    pub fn monic_parts(&self) -> (F, Self) {
        match self.leading() {
            None => (F::zero(), Self::zero()),
            Some(lc) if lc.is_one() => (F::one(), self.clone()),
            Some(lc) => {
                let inv = inv_nonzero(lc);
                (lc.clone(), self.scale(&inv))
            }
        }
    }

    pub fn monic(&self) -> Self {
        self.monic_parts().1
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        poly_divrem(self, d)
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(poly_divrem(self, d)?.1)
    }

    pub fn derivative(&self) -> Self {
        poly_derivative(self)
    }

    pub fn eval(&self, v: &F) -> F {
        poly_eval(self, v)
    }

    /// Lexicographic order on the ascending coefficient vector, shorter first.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                match a.canonical_cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }

    /// Maps coefficients into another field.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Canonical text, ascending powers: `1 + x + x^2`.
    pub fn to_text(&self, var: &str, param: &str) -> String {
        render_terms((0..self.coeffs.len()).map(|k| (k, &self.coeffs[k])), var, param)
    }

    /// Conventional text, descending powers: `x^2 - 2`.
    pub fn to_text_desc(&self, var: &str, param: &str) -> String {
        render_terms(
            (0..self.coeffs.len()).rev().map(|k| (k, &self.coeffs[k])),
            var,
            param,
        )
    }
}

impl Poly<Rational> {
    pub fn from_rationals(coeffs: &[(i64, i64)]) -> Self {
        Self::new(coeffs.iter().map(|&(n, d)| Rational::new(n, d)).collect())
    }
}

fn render_terms<'a, F: Field>(
    terms: impl Iterator<Item = (usize, &'a F)>,
    var: &str,
    param: &str,
) -> String {
    let mut out = String::new();
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let term = if k == 0 {
            c.to_expr_text(param)
        } else if c.is_one() {
            mono
        } else if c.neg().is_one() {
            format!("-{mono}")
        } else {
            format!("{}*{mono}", c.to_expr_text(param))
        };
        if out.is_empty() {
            out = term;
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("x", "t"))
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let (long, short) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = c.add(s);
        }
        Poly::new(coeffs)
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.len().max(rhs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(coeffs)
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); self.len() + rhs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            checkpoint();
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::new(coeffs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl<F: Field> $trait for Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$method(&rhs)
            }
        }
        impl<F: Field> $trait<&Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: &Poly<F>) -> Poly<F> {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

/// Division with remainder: `n = q*d + r`, `deg r < deg d`.
pub fn poly_divrem<F: Field>(n: &Poly<F>, d: &Poly<F>) -> Result<(Poly<F>, Poly<F>)> {
    let dl = d.leading().ok_or(PfdError::ZeroPolynomialDivision)?;
    let dd = d.len() - 1;
    if n.len() < d.len() {
        return Ok((Poly::zero(), n.clone()));
    }
    let lc_inv = inv_nonzero(dl);
    let mut rem = n.coeffs.clone();
    let mut quot = vec![F::zero(); n.len() - dd];
    for k in (0..quot.len()).rev() {
        checkpoint();
        let c = std::mem::replace(&mut rem[k + dd], F::zero());
        if c.is_zero() {
            continue;
        }
        let q = if lc_inv.is_one() { c } else { c.mul(&lc_inv) };
        for (i, dc) in d.coeffs[..dd].iter().enumerate() {
            if !dc.is_zero() {
                rem[k + i] = rem[k + i].sub(&q.mul(dc));
            }
        }
        quot[k] = q;
    }
    rem.truncate(dd);
    Ok((Poly::new(quot), Poly::new(rem)))
}

/// Extended Euclid: `a1*p1 + a2*p2 = g` with `g` the monic gcd.
///
/// When `g = 1` the cofactors satisfy `deg a1 < deg p2` and `deg a2 < deg p1`.
pub fn poly_ext_gcd<F: Field>(p1: &Poly<F>, p2: &Poly<F>) -> Result<(Poly<F>, Poly<F>, Poly<F>)> {
    if p1.is_zero() && p2.is_zero() {
        return Err(PfdError::ZeroGcd);
    }
    let (mut r0, mut r1) = (p1.clone(), p2.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        checkpoint();
        let (q, r) = poly_divrem(&r0, &r1)?;
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = inv_nonzero(r0.leading().expect("nonzero gcd"));
    Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
}

/// Monic gcd by the Euclidean remainder sequence, normalized at each step.
pub fn poly_gcd<F: Field>(p1: &Poly<F>, p2: &Poly<F>) -> Result<Poly<F>> {
    if p1.is_zero() && p2.is_zero() {
        return Err(PfdError::ZeroGcd);
    }
    let (mut a, mut b) = (p1.monic(), p2.monic());
    while !b.is_zero() {
        checkpoint();
        let r = poly_divrem(&a, &b)?.1.monic();
        a = std::mem::replace(&mut b, r);
    }
    Ok(a)
}

pub fn poly_derivative<F: Field>(p: &Poly<F>) -> Poly<F> {
    Poly::new(
        p.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul(&F::from_i64(k as i64)))
            .collect(),
    )
}

/// Horner evaluation.
pub fn poly_eval<F: Field>(p: &Poly<F>, v: &F) -> F {
    p.coeffs
        .iter()
        .rev()
        .fold(F::zero(), |acc, c| acc.mul(v).add(c))
}
