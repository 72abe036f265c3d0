//! Arithmetic in `F[x]/(P)` with `P` monic and squarefree.
//!
//! Elements are coordinate vectors over the power basis `1, α, …, α^(n-1)`
//! where `α` is the class of `x`. Products are reduced with a table of
//! `α^n … α^(2n-2)` built once per modulus. Truncated power series in
//! `h = x - α` with coefficients in `F[α]` carry the local expansions.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::error::PfdError;
use crate::field::{Field, inv_nonzero};
use crate::poly::{poly_ext_gcd, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError<F: Field> {
    #[error("modulus mismatch")]
    ModulusMismatch,
    #[error("series truncation order mismatch")]
    OrderMismatch,
    #[error("modulus is not monic")]
    NotMonic,
    /// The element shares the factor `0` with the modulus.
    #[error("element is not invertible (common factor {0})")]
    NotInvertible(Poly<F>),
}

impl<F: Field> From<AlgError<F>> for PfdError {
    fn from(e: AlgError<F>) -> Self {
        match e {
            AlgError::ModulusMismatch => PfdError::ModulusMismatch,
            AlgError::OrderMismatch => PfdError::OrderMismatch,
            AlgError::NotMonic => PfdError::NotMonic,
            AlgError::NotInvertible(g) => PfdError::NotInvertible { gcd: g.to_string() },
        }
    }
}

pub type AlgResult<T, F> = Result<T, AlgError<F>>;

/// A modulus together with its reduction table.
#[derive(Debug)]
pub struct AlgContext<F> {
    modulus: Poly<F>,
    /// `table[k]` holds the coordinates of `α^(n+k)`.
    table: Vec<Vec<F>>,
}

impl<F: Field> AlgContext<F> {
    /// `modulus` must be monic of degree ≥ 1; squarefreeness is the caller's
    /// responsibility (inversion reports a zero divisor otherwise).
    pub fn new(modulus: Poly<F>) -> Result<Arc<Self>, PfdError> {
        if !modulus.is_monic() {
            return Err(PfdError::NotMonic);
        }
        let n = modulus.degree().expect("monic polynomial is nonzero");
        if n == 0 {
            return Err(PfdError::Internal("constant modulus".into()));
        }
        let mut table: Vec<Vec<F>> = Vec::with_capacity(n.saturating_sub(1));
        // α^n = -(a_0 + a_1 α + … + a_{n-1} α^{n-1})
        let mut cur: Vec<F> = modulus.coeffs()[..n].iter().map(|c| c.neg()).collect();
        for _ in 0..n.saturating_sub(1) {
            let next = mul_alpha_coords(&cur, &modulus);
            table.push(std::mem::replace(&mut cur, next));
        }
        if table.is_empty() {
            table.push(cur);
        }
        Ok(Arc::new(AlgContext { modulus, table }))
    }

    pub fn modulus(&self) -> &Poly<F> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

fn mul_alpha_coords<F: Field>(coords: &[F], modulus: &Poly<F>) -> Vec<F> {
    let n = coords.len();
    let top = coords[n - 1].clone();
    let mut out = Vec::with_capacity(n);
    out.push(F::zero());
    out.extend(coords[..n - 1].iter().cloned());
    if !top.is_zero() {
        for (o, a) in out.iter_mut().zip(modulus.coeffs()) {
            if !a.is_zero() {
                *o = o.sub(&top.mul(a));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct AlgebraicElement<F> {
    coords: Vec<F>,
    ctx: Arc<AlgContext<F>>,
}

impl<F: Field> PartialEq for AlgebraicElement<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.coords == other.coords
    }
}

impl<F: Field> Eq for AlgebraicElement<F> {}

fn same_ctx<F: Field>(a: &Arc<AlgContext<F>>, b: &Arc<AlgContext<F>>) -> bool {
    Arc::ptr_eq(a, b) || a.modulus == b.modulus
}

impl<F: Field> AlgebraicElement<F> {
    pub fn zero(ctx: &Arc<AlgContext<F>>) -> Self {
        AlgebraicElement {
            coords: vec![F::zero(); ctx.degree()],
            ctx: ctx.clone(),
        }
    }

    pub fn from_field(ctx: &Arc<AlgContext<F>>, c: F) -> Self {
        let mut e = Self::zero(ctx);
        e.coords[0] = c;
        e
    }

    pub fn one(ctx: &Arc<AlgContext<F>>) -> Self {
        Self::from_field(ctx, F::one())
    }

    /// Builds from power-basis coordinates (padded with zeros).
    pub fn from_coords(ctx: &Arc<AlgContext<F>>, coords: Vec<F>) -> Self {
        let n = ctx.degree();
        assert!(coords.len() <= n, "too many coordinates for the power basis");
        let mut coords = coords;
        coords.resize(n, F::zero());
        AlgebraicElement {
            coords,
            ctx: ctx.clone(),
        }
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn context(&self) -> &Arc<AlgContext<F>> {
        &self.ctx
    }

    /// The representative polynomial of degree `< n`.
    pub fn lift(&self) -> Poly<F> {
        Poly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &Self) -> AlgResult<(), F> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(AlgError::ModulusMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> AlgResult<Self, F> {
        self.check(other)?;
        Ok(self.zip_with(other, |a, b| a.add(b)))
    }

    pub fn sub(&self, other: &Self) -> AlgResult<Self, F> {
        self.check(other)?;
        Ok(self.zip_with(other, |a, b| a.sub(b)))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        AlgebraicElement {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&F::one().neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        AlgebraicElement {
            coords: self.coords.iter().map(|a| a.mul(c)).collect(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn mul_alpha(&self) -> Self {
        AlgebraicElement {
            coords: mul_alpha_coords(&self.coords, &self.ctx.modulus),
            ctx: self.ctx.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> AlgResult<Self, F> {
        alg_mul(self, other)
    }

    pub fn inverse(&self) -> AlgResult<Self, F> {
        alg_inverse(self)
    }
}

impl<F: Field> fmt::Display for AlgebraicElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.lift().to_text("α", "t"))
    }
}

/// Reduces `n` to the power basis: the remainder of `n` modulo `P`.
pub fn alg_reduce<F: Field>(n: &Poly<F>, ctx: &Arc<AlgContext<F>>) -> AlgebraicElement<F> {
    let r = n.rem(&ctx.modulus).expect("modulus is nonzero");
    AlgebraicElement::from_coords(ctx, r.into_coeffs())
}

pub fn alg_mul<F: Field>(a: &AlgebraicElement<F>, b: &AlgebraicElement<F>) -> AlgResult<AlgebraicElement<F>, F> {
    a.check(b)?;
    let n = a.ctx.degree();
    let mut prod = vec![F::zero(); 2 * n - 1];
    for (i, x) in a.coords.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coords.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] = prod[i + j].add(&x.mul(y));
            }
        }
    }
    let (low, high) = prod.split_at_mut(n);
    for (k, c) in high.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (l, t) in low.iter_mut().zip(&a.ctx.table[k]) {
            if !t.is_zero() {
                *l = l.add(&c.mul(t));
            }
        }
    }
    prod.truncate(n);
    Ok(AlgebraicElement {
        coords: prod,
        ctx: a.ctx.clone(),
    })
}

/// Inverse via extended Euclid; a nontrivial gcd with the modulus is
/// returned as [`AlgError::NotInvertible`].
pub fn alg_inverse<F: Field>(a: &AlgebraicElement<F>) -> AlgResult<AlgebraicElement<F>, F> {
    let lifted = a.lift();
    if lifted.is_zero() {
        return Err(AlgError::NotInvertible(a.ctx.modulus.clone()));
    }
    if lifted.is_constant() {
        return Ok(AlgebraicElement::from_field(&a.ctx, inv_nonzero(&lifted.coeffs()[0])));
    }
    let (g, s, _) = poly_ext_gcd(&lifted, &a.ctx.modulus).expect("nonzero operands");
    if !g.is_one() {
        return Err(AlgError::NotInvertible(g));
    }
    Ok(AlgebraicElement::from_coords(&a.ctx, s.into_coeffs()))
}

/// Taylor coefficients `p^(k)(α)/k!` for `k < order`, by repeated synthetic
/// division of `p` by `x - α` over `F[α]`.
pub fn taylor_at_alpha<F: Field>(p: &Poly<F>, ctx: &Arc<AlgContext<F>>, order: usize) -> Vec<AlgebraicElement<F>> {
    let mut cur: Vec<AlgebraicElement<F>> = p
        .coeffs()
        .iter()
        .map(|c| AlgebraicElement::from_field(ctx, c.clone()))
        .collect();
    let mut out = Vec::with_capacity(order);
    for _ in 0..order {
        crate::budget::checkpoint();
        let Some(top) = cur.pop() else {
            out.push(AlgebraicElement::zero(ctx));
            continue;
        };
        // Horner: quotient coefficients are the running accumulators
        let mut quotient = vec![AlgebraicElement::zero(ctx); cur.len()];
        let mut acc = top;
        for i in (0..cur.len()).rev() {
            let next = cur[i].add(&acc.mul_alpha()).expect("same context");
            quotient[i] = std::mem::replace(&mut acc, next);
        }
        out.push(acc);
        cur = quotient;
    }
    out
}

/// Truncated power series in `h = x - α` over `F[α]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgSeries<F: Field> {
    coeffs: Vec<AlgebraicElement<F>>,
}

impl<F: Field> AlgSeries<F> {
    /// `coeffs[k]` is the coefficient of `h^k`; the truncation order is the
    /// length, which must be at least one.
    pub fn new(coeffs: Vec<AlgebraicElement<F>>) -> Self {
        assert!(!coeffs.is_empty(), "series needs a truncation order of at least 1");
        AlgSeries { coeffs }
    }

    pub fn constant(c: AlgebraicElement<F>, order: usize) -> Self {
        let ctx = c.ctx.clone();
        let mut coeffs = vec![c];
        coeffs.resize(order, AlgebraicElement::zero(&ctx));
        Self::new(coeffs)
    }

    pub fn one(ctx: &Arc<AlgContext<F>>, order: usize) -> Self {
        Self::constant(AlgebraicElement::one(ctx), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[AlgebraicElement<F>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &AlgebraicElement<F> {
        &self.coeffs[k]
    }

    pub fn mul(&self, other: &Self) -> AlgResult<Self, F> {
        series_mul(self, other)
    }

    pub fn inverse(&self) -> AlgResult<Self, F> {
        series_inverse(self)
    }

    pub fn pow(&self, e: u32) -> AlgResult<Self, F> {
        let mut acc = Self::one(self.coeffs[0].context(), self.order());
        for _ in 0..e {
            acc = series_mul(&acc, self)?;
        }
        Ok(acc)
    }
}

/// Cauchy product truncated at the common order.
pub fn series_mul<F: Field>(a: &AlgSeries<F>, b: &AlgSeries<F>) -> AlgResult<AlgSeries<F>, F> {
    if a.order() != b.order() {
        return Err(AlgError::OrderMismatch);
    }
    a.coeffs[0].check(&b.coeffs[0])?;
    let ctx = a.coeffs[0].context();
    let mut out = Vec::with_capacity(a.order());
    for k in 0..a.order() {
        crate::budget::checkpoint();
        let mut acc = AlgebraicElement::zero(ctx);
        for i in 0..=k {
            if a.coeffs[i].is_zero() || b.coeffs[k - i].is_zero() {
                continue;
            }
            acc = acc.add(&alg_mul(&a.coeffs[i], &b.coeffs[k - i])?)?;
        }
        out.push(acc);
    }
    Ok(AlgSeries::new(out))
}

/// Reciprocal series: `a * result = 1 + O(h^order)`.
pub fn series_inverse<F: Field>(a: &AlgSeries<F>) -> AlgResult<AlgSeries<F>, F> {
    let c0_inv = alg_inverse(&a.coeffs[0])?;
    let ctx = c0_inv.context().clone();
    let mut out: Vec<AlgebraicElement<F>> = Vec::with_capacity(a.order());
    out.push(c0_inv.clone());
    for k in 1..a.order() {
        crate::budget::checkpoint();
        let mut acc = AlgebraicElement::zero(&ctx);
        for i in 1..=k {
            if a.coeffs[i].is_zero() || out[k - i].is_zero() {
                continue;
            }
            acc = acc.add(&alg_mul(&a.coeffs[i], &out[k - i])?)?;
        }
        out.push(alg_mul(&acc, &c0_inv)?.neg());
    }
    Ok(AlgSeries::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type P = Poly<Rational>;

    fn ctx(c: &[i64]) -> Arc<AlgContext<Rational>> {
        AlgContext::new(P::from_ints(c)).unwrap()
    }

    fn el(ctx: &Arc<AlgContext<Rational>>, c: &[(i64, i64)]) -> AlgebraicElement<Rational> {
        AlgebraicElement::from_coords(ctx, c.iter().map(|&(n, d)| Rational::new(n, d)).collect())
    }

    #[test]
    fn reduce_examples() {
        let k = ctx(&[1, 1, 1]);
        let x9 = P::monomial(Rational::from(1), 9);
        assert_eq!(alg_reduce(&x9, &k), el(&k, &[(1, 1), (0, 1)]));
        assert_eq!(alg_reduce(&x9.shift(1), &k), el(&k, &[(0, 1), (1, 1)]));
        let i = ctx(&[1, 0, 1]);
        assert_eq!(alg_reduce(&P::x(), &i), el(&i, &[(0, 1), (1, 1)]));
    }

    #[test]
    fn mul_examples() {
        let k = ctx(&[1, 1, 1]);
        let a = el(&k, &[(0, 1), (1, 1)]);
        let a1 = el(&k, &[(1, 1), (1, 1)]);
        let prod = a.mul(&a1).unwrap().mul(&a1).unwrap();
        assert_eq!(prod, el(&k, &[(-1, 1), (-1, 1)]));
        assert_eq!(a.mul(&AlgebraicElement::one(&k)).unwrap(), a);

        let i = ctx(&[1, 0, 1]);
        let alpha = el(&i, &[(0, 1), (1, 1)]);
        assert_eq!(alpha.mul(&alpha).unwrap(), el(&i, &[(-1, 1)]));
        assert_eq!(alpha.mul(&a), Err(AlgError::ModulusMismatch));
    }

    #[test]
    fn inverse_examples() {
        let k = ctx(&[1, 1, 1]);
        let s = el(&k, &[(1, 1), (2, 1)]);
        assert_eq!(s.inverse().unwrap(), el(&k, &[(-1, 3), (-2, 3)]));
        let v = alg_reduce(&P::from_ints(&[1, -1, 1]), &k);
        assert_eq!(v, el(&k, &[(0, 1), (-2, 1)]));
        assert_eq!(v.inverse().unwrap(), el(&k, &[(1, 2), (1, 2)]));
        assert!(AlgebraicElement::one(&k).inverse().unwrap().is_one());
    }

    #[test]
    fn inverse_reports_zero_divisor() {
        // x^2 - 1 is squarefree but reducible; x - 1 is a zero divisor
        let k = ctx(&[-1, 0, 1]);
        let z = el(&k, &[(-1, 1), (1, 1)]);
        assert_eq!(z.inverse(), Err(AlgError::NotInvertible(P::from_ints(&[-1, 1]))));
    }

    #[test]
    fn taylor_examples() {
        let k = ctx(&[1, 1, 1]);
        let t = taylor_at_alpha(&P::from_ints(&[1, -1, 1]), &k, 3);
        assert_eq!(t, vec![el(&k, &[(0, 1), (-2, 1)]), el(&k, &[(-1, 1), (2, 1)]), el(&k, &[(1, 1)])]);

        let t = taylor_at_alpha(&P::from_ints(&[1, 1, 1]), &k, 3);
        assert_eq!(t, vec![AlgebraicElement::zero(&k), el(&k, &[(1, 1), (2, 1)]), el(&k, &[(1, 1)])]);

        let t = taylor_at_alpha(&P::from_ints(&[7]), &k, 2);
        assert_eq!(t, vec![el(&k, &[(7, 1)]), AlgebraicElement::zero(&k)]);
    }

    #[test]
    fn series_examples() {
        let k = ctx(&[1, 1, 1]);
        let one = AlgebraicElement::one(&k);
        let zero = AlgebraicElement::zero(&k);
        let s = |c: Vec<AlgebraicElement<Rational>>| AlgSeries::new(c);

        let a = s(vec![one.clone(), one.clone()]);
        let b = s(vec![one.clone(), one.neg()]);
        assert_eq!(series_mul(&a, &b).unwrap(), AlgSeries::one(&k, 2));

        let h = s(vec![zero.clone(), one.clone()]);
        assert_eq!(series_mul(&h, &h).unwrap(), s(vec![zero.clone(), zero.clone()]));

        let geo = series_inverse(&s(vec![one.clone(), one.clone(), zero.clone()])).unwrap();
        assert_eq!(geo, s(vec![one.clone(), one.neg(), one.clone()]));

        let c = el(&k, &[(3, 1), (1, 1)]);
        let ci = series_inverse(&AlgSeries::constant(c.clone(), 3)).unwrap();
        assert_eq!(ci, AlgSeries::constant(c.inverse().unwrap(), 3));

        // S(α + h) for P = x^2 + x + 1 is (2α + 1) + h
        let sser = s(vec![el(&k, &[(1, 1), (2, 1)]), one.clone()]);
        let inv = series_inverse(&sser).unwrap();
        let c0 = el(&k, &[(-1, 3), (-2, 3)]);
        assert_eq!(inv.coeff(0), &c0);
        assert_eq!(inv.coeff(1), &c0.mul(&c0).unwrap().neg());
        assert_eq!(series_mul(&sser, &inv).unwrap(), AlgSeries::one(&k, 2));

        assert_eq!(series_mul(&a, &AlgSeries::one(&k, 3)), Err(AlgError::OrderMismatch));
    }

    #[test]
    fn display_in_alpha() {
        let k = ctx(&[1, 1, 1]);
        assert_eq!(el(&k, &[(-1, 3), (-2, 3)]).to_string(), "-1/3 - 2/3*α");
    }
}
