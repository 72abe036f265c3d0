//! Summation over all roots of a factor without computing the roots.
//!
//! For monic squarefree `P` with roots `α_1 … α_n`, the trace functions
//! `u_k(x) = Σ_i α_i^k / (x - α_i)` are rational with denominator `P`. Their
//! numerators follow from the power sums `S_j = Σ_i α_i^j` (Newton's
//! identities) via `u_0 = P'/P` and `u_{k+1} = x u_k - S_k`. An element `b`
//! of `F[α]` in the power basis then maps to `Σ_i b(α_i)/(x - α_i)^j` by
//! linearity, with higher poles obtained by differentiating `Σ b(α_i)/(x - α_i)`.

use crate::algext::AlgebraicElement;
use crate::error::{PfdError, Result};
use crate::field::{Field, inv_nonzero};
use crate::poly::Poly;

/// `values[j] = S_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSums<F> {
    pub values: Vec<F>,
}

/// Newton's identities for a monic `p`; any `count` is accepted.
pub fn newton_power_sums<F: Field>(p: &Poly<F>, count: usize) -> Result<PowerSums<F>> {
    if !p.is_monic() {
        return Err(PfdError::NotMonic);
    }
    let n = p.degree().expect("monic is nonzero");
    // a(i) = coefficient of x^(n-i)
    let a = |i: usize| p.coeff(n - i);
    let mut values: Vec<F> = Vec::with_capacity(count);
    for j in 0..count {
        if j == 0 {
            values.push(F::from_i64(n as i64));
            continue;
        }
        let mut s = if j <= n {
            a(j).mul(&F::from_i64(j as i64))
        } else {
            F::zero()
        };
        for i in 1..j.min(n + 1) {
            s = s.add(&a(i).mul(&values[j - i]));
        }
        values.push(s.neg());
    }
    Ok(PowerSums { values })
}

/// `rows[k]` is the numerator of `u_k` over `P`, for `k < deg P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceNumerators<F> {
    pub modulus: Poly<F>,
    pub rows: Vec<Poly<F>>,
}

pub fn trace_numerators<F: Field>(p: &Poly<F>) -> Result<TraceNumerators<F>> {
    let n = p.degree().ok_or(PfdError::NotMonic)?;
    let sums = newton_power_sums(p, n)?;
    let mut rows = Vec::with_capacity(n);
    let mut row = p.derivative();
    for k in 0..n {
        let next = if k + 1 < n {
            &row.shift(1) - &p.scale(&sums.values[k])
        } else {
            Poly::zero()
        };
        debug_assert!(row.len() <= n);
        rows.push(std::mem::replace(&mut row, next));
    }
    Ok(TraceNumerators {
        modulus: p.clone(),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartTerm<F> {
    pub power: u32,
    pub numerator: Poly<F>,
}

/// `Σ numerator / base^power` with `deg numerator < deg base` and strictly
/// increasing powers; zero numerators are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPart<F> {
    pub base: Poly<F>,
    pub terms: Vec<PartTerm<F>>,
}

impl<F: Field> RationalPart<F> {
    pub fn empty(base: Poly<F>) -> Self {
        RationalPart {
            base,
            terms: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Numerator at `power`, or zero.
    pub fn numerator(&self, power: u32) -> Poly<F> {
        self.terms
            .iter()
            .find(|t| t.power == power)
            .map(|t| t.numerator.clone())
            .unwrap_or_else(Poly::zero)
    }

    pub fn max_power(&self) -> u32 {
        self.terms.last().map_or(0, |t| t.power)
    }

    /// Adds `numerator / base^power` into the part.
    pub fn accumulate(&mut self, power: u32, numerator: &Poly<F>) {
        if numerator.is_zero() {
            return;
        }
        match self.terms.binary_search_by_key(&power, |t| t.power) {
            Ok(i) => {
                let sum = &self.terms[i].numerator + numerator;
                if sum.is_zero() {
                    self.terms.remove(i);
                } else {
                    self.terms[i].numerator = sum;
                }
            }
            Err(i) => self.terms.insert(
                i,
                PartTerm {
                    power,
                    numerator: numerator.clone(),
                },
            ),
        }
    }

    pub fn add_part(&mut self, other: &RationalPart<F>) {
        for t in &other.terms {
            self.accumulate(t.power, &t.numerator);
        }
    }

    /// Single numerator over `base^top` with `top >= max_power`.
    pub fn combine(&self, top: u32) -> Poly<F> {
        self.terms.iter().fold(Poly::zero(), |acc, t| {
            &acc + &(&t.numerator * &self.base.pow(top - t.power))
        })
    }
}

/// Divrem cascade writing `a / base^m` as `Σ_l N_l / base^l + overflow`.
pub fn normalize_over_power<F: Field>(a: &Poly<F>, base: &Poly<F>, m: u32) -> (RationalPart<F>, Poly<F>) {
    let mut part = RationalPart::empty(base.clone());
    let mut rest = a.clone();
    for power in (1..=m).rev() {
        if rest.is_zero() {
            break;
        }
        let (q, r) = rest.divrem(base).expect("nonzero base");
        part.accumulate(power, &r);
        rest = q;
    }
    (part, rest)
}

/// `Σ_i b(α_i) / (x - α_i)^j` over all roots of `b`'s modulus.
pub fn pole_sum<F: Field>(b: &AlgebraicElement<F>, j: u32) -> RationalPart<F> {
    let table = trace_numerators(b.context().modulus()).expect("modulus is monic");
    pole_sum_with(&table, b, j)
}

/// As [`pole_sum`], reusing precomputed trace numerators.
pub fn pole_sum_with<F: Field>(table: &TraceNumerators<F>, b: &AlgebraicElement<F>, j: u32) -> RationalPart<F> {
    assert!(j >= 1, "pole order starts at 1");
    let p = &table.modulus;
    let mut c = b
        .coords()
        .iter()
        .zip(&table.rows)
        .filter(|(bk, _)| !bk.is_zero())
        .fold(Poly::zero(), |acc, (bk, row)| &acc + &row.scale(bk));
    if c.is_zero() {
        return RationalPart::empty(p.clone());
    }
    // d/dx (C / P^s) = (C' P - s C P') / P^(s+1)
    let dp = p.derivative();
    let mut fact = F::one();
    for s in 1..j {
        crate::budget::checkpoint();
        let sf = F::from_i64(s as i64);
        c = &(&c.derivative() * p) - &(&c * &dp).scale(&sf);
        fact = fact.mul(&sf);
    }
    let mut scale = inv_nonzero(&fact);
    if j.is_multiple_of(2) {
        scale = scale.neg();
    }
    let (part, overflow) = normalize_over_power(&c.scale(&scale), p, j);
    debug_assert!(overflow.is_zero(), "pole sums are proper");
    part
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algext::{AlgContext, AlgebraicElement};
    use crate::field::Rational;

    type P = Poly<Rational>;

    fn p(c: &[i64]) -> P {
        P::from_ints(c)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn power_sums() {
        assert_eq!(newton_power_sums(&p(&[1, 1, 1]), 2).unwrap().values, vec![r(2, 1), r(-1, 1)]);
        assert_eq!(newton_power_sums(&p(&[1, 0, 1]), 2).unwrap().values, vec![r(2, 1), r(0, 1)]);
        assert_eq!(newton_power_sums(&p(&[-5, 1]), 1).unwrap().values, vec![r(1, 1)]);
        assert_eq!(newton_power_sums(&p(&[1, 2]), 1), Err(PfdError::NotMonic));
    }

    #[test]
    fn power_sums_past_degree() {
        // roots 1, 2, 3
        let q = &(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[-3, 1]);
        let s = newton_power_sums(&q, 6).unwrap().values;
        let expect: Vec<Rational> = (0..6u32)
            .map(|j| Rational::from(1i64.pow(j) + 2i64.pow(j) + 3i64.pow(j)))
            .collect();
        assert_eq!(s, expect);
    }

    #[test]
    fn trace_rows() {
        let t = trace_numerators(&p(&[1, 1, 1])).unwrap();
        assert_eq!(t.rows[0], p(&[1, 2]));
        assert_eq!(t.rows[1], p(&[-2, -1]));
        assert_eq!(&t.rows[1] + &t.rows[0], p(&[-1, 1]));
        assert_eq!(&t.rows[0].scale(&r(4, 1)) - &t.rows[1].scale(&r(19, 1)), p(&[42, 27]));
    }

    #[test]
    fn pole_sum_examples() {
        let ctx = AlgContext::new(p(&[1, 1, 1])).unwrap();
        let b = AlgebraicElement::from_coords(&ctx, vec![r(4, 36), r(-19, 36)]);
        let part = pole_sum(&b, 1);
        assert_eq!(part.terms.len(), 1);
        assert_eq!(part.numerator(1), P::from_rationals(&[(14, 12), (9, 12)]));

        let b = AlgebraicElement::from_coords(&ctx, vec![r(1, 12), r(1, 12)]);
        let part = pole_sum(&b, 2);
        assert_eq!(part.numerator(1), P::constant(r(1, 12)));
        assert_eq!(part.numerator(2), P::from_rationals(&[(-1, 4), (-1, 4)]));

        assert!(pole_sum(&AlgebraicElement::zero(&ctx), 3).is_empty());
    }

    #[test]
    fn normalize_examples() {
        let base = p(&[1, 1, 1]);
        let (part, over) = normalize_over_power(&P::monomial(r(1, 1), 3), &base, 2);
        assert!(over.is_zero());
        assert_eq!(part.numerator(2), p(&[1]));
        assert_eq!(part.numerator(1), p(&[-1, 1]));

        let (part, over) = normalize_over_power(&p(&[1]), &base, 3);
        assert!(over.is_zero());
        assert_eq!(part.terms, vec![PartTerm { power: 3, numerator: p(&[1]) }]);

        let (part, over) = normalize_over_power(&base, &base, 2);
        assert!(over.is_zero());
        assert_eq!(part.terms, vec![PartTerm { power: 1, numerator: p(&[1]) }]);

        let (part, over) = normalize_over_power(&P::monomial(r(1, 1), 5), &base, 1);
        assert_eq!(&(&over * &base) + &part.numerator(1), P::monomial(r(1, 1), 5));
    }
}
