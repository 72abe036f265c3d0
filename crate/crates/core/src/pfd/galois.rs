use std::sync::Arc;

use crate::algext::{taylor_at_alpha, AlgContext, AlgError, AlgSeries, AlgebraicElement};
use crate::error::{PfdError, Result};
use crate::factor::{Factor, FactoredDenominator};
use crate::field::Field;
use crate::poly::Poly;
use crate::trace::{pole_sum_with, trace_numerators, RationalPart};

use super::pool::map_ordered;
use super::{polynomial_part, trivial_case, Decomposition, RationalFunction};

/// Local data of `f = Q / P^m` at a formal root `α` of `P`, in powers of
/// `h = x - α`, truncated at order `m`.
#[derive(Clone, Debug)]
pub struct LocalExpansion<F: Field> {
    pub context: Arc<AlgContext<F>>,
    /// Taylor coefficients of `Q = N / R`: `Q(α), Q'(α), Q''(α)/2, …`.
    pub q_series: AlgSeries<F>,
    /// Taylor coefficients of `S = P / (x - α)`.
    pub s_series: AlgSeries<F>,
    /// Reciprocal of `s_series`.
    pub s_inverse: AlgSeries<F>,
    /// `pole[j - 1]` is the coefficient of `(x - α)^-j`.
    pub pole: Vec<AlgebraicElement<F>>,
}

/// Computes the pole part of `numerator / (factor^m * prod others)` at a root
/// of `factor.base`.
pub fn local_pole_expansion<F: Field>(
    numerator: &Poly<F>,
    factor: &Factor<F>,
    others: &[Factor<F>],
) -> std::result::Result<LocalExpansion<F>, AlgError<F>> {
    let ctx = AlgContext::new(factor.base.clone()).map_err(|_| AlgError::NotMonic)?;
    local_expansion_in(&ctx, numerator, factor, others)
}

fn local_expansion_in<F: Field>(
    ctx: &Arc<AlgContext<F>>,
    numerator: &Poly<F>,
    factor: &Factor<F>,
    others: &[Factor<F>],
) -> std::result::Result<LocalExpansion<F>, AlgError<F>> {
    let m = factor.multiplicity as usize;
    let n = ctx.degree();

    // only N mod P^m matters for the first m Taylor coefficients
    let reduced;
    let numerator = if numerator.len() > m * n {
        reduced = numerator.rem(&factor.expanded()).expect("nonzero modulus");
        &reduced
    } else {
        numerator
    };
    let num_series = AlgSeries::new(taylor_at_alpha(numerator, ctx, m));

    let mut rest = AlgSeries::one(ctx, m);
    for o in others {
        let local = AlgSeries::new(taylor_at_alpha(&o.base, ctx, m));
        rest = rest.mul(&local.pow(o.multiplicity)?)?;
    }
    let q_series = num_series.mul(&rest.inverse()?)?;

    let mut p_taylor = taylor_at_alpha(&factor.base, ctx, m + 1);
    p_taylor.remove(0);
    let s_series = AlgSeries::new(p_taylor);
    let s_inverse = s_series.inverse()?;

    let local = q_series.mul(&s_inverse.pow(factor.multiplicity)?)?;
    let pole = (1..=m).map(|j| local.coeff(m - j).clone()).collect();
    Ok(LocalExpansion {
        context: ctx.clone(),
        q_series,
        s_series,
        s_inverse,
        pole,
    })
}

/// Local expansion at a formal root, then the trace over all roots of the
/// base. Independent for every factor.
fn factor_part<F: Field>(
    numerator: &Poly<F>,
    factors: &[Factor<F>],
    i: usize,
) -> std::result::Result<RationalPart<F>, AlgError<F>> {
    let factor = &factors[i];
    let others: Vec<Factor<F>> = factors
        .iter()
        .enumerate()
        .filter(|(l, _)| *l != i)
        .map(|(_, f)| f.clone())
        .collect();
    let local = local_pole_expansion(numerator, factor, &others)?;
    let table = trace_numerators(&factor.base).expect("bases are monic");
    let mut part = RationalPart::empty(factor.base.clone());
    for (j, b) in local.pole.iter().enumerate() {
        part.add_part(&pole_sum_with(&table, b, j as u32 + 1));
    }
    Ok(part)
}

/// Galois method. Per-factor work is spread over `jobs` workers; the output
/// is merged in basis order and is identical for every `jobs`.
pub fn decompose_galois<F: Field>(f: &RationalFunction<F>, jobs: usize) -> Result<Decomposition<F>> {
    if let Some(d) = trivial_case(f) {
        return Ok(d);
    }
    let mut f = f.clone();
    // a zero divisor can only come from a base that is not squarefree or not
    // coprime to the rest; split it by the discovered gcd and start over
    let max_retries = f.denominator().degree();
    for _ in 0..=max_retries {
        let indices: Vec<usize> = (0..f.factors().len()).collect();
        let parts = map_ordered(&indices, jobs, |&i| factor_part(f.numerator(), f.factors(), i));
        match parts.into_iter().collect::<std::result::Result<Vec<_>, _>>() {
            Ok(groups) => {
                let (poly, _) = polynomial_part(&f);
                return Ok(Decomposition {
                    polynomial_part: poly,
                    groups,
                });
            }
            Err(AlgError::NotInvertible(g)) => f = split_basis(&f, &g)?,
            Err(e) => return Err(e.into()),
        }
    }
    Err(PfdError::Internal("factor basis refinement did not converge".into()))
}

fn split_basis<F: Field>(f: &RationalFunction<F>, g: &Poly<F>) -> Result<RationalFunction<F>> {
    let mut parts = Vec::new();
    for fa in f.factors() {
        let (q, r) = fa.base.divrem(g)?;
        if r.is_zero() && !q.is_constant() && !g.is_constant() {
            parts.push((g.clone(), fa.multiplicity));
            parts.push((q, fa.multiplicity));
        } else {
            parts.push((fa.base.clone(), fa.multiplicity));
        }
    }
    RationalFunction::new(f.numerator().clone(), FactoredDenominator::from_parts(F::one(), parts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn worked_example_intermediates() {
        let p1 = Poly::<Rational>::from_ints(&[1, 1, 1]);
        let p2 = Poly::<Rational>::from_ints(&[1, -1, 1]);
        let num = Poly::monomial(r(1, 1), 10);
        let local = local_pole_expansion(&num, &Factor::new(p1, 2), &[Factor::new(p2, 2)]).unwrap();
        let ctx = &local.context;
        let el = |a: Rational, b: Rational| AlgebraicElement::from_coords(ctx, vec![a, b]);

        assert_eq!(local.s_inverse.coeff(0), &el(r(-1, 3), r(-2, 3)));
        assert_eq!(local.s_series.coeff(0), &el(r(1, 1), r(2, 1)));
        assert_eq!(local.s_series.coeff(1), &el(r(1, 1), r(0, 1)));
        assert_eq!(local.q_series.coeff(0), &el(r(-1, 4), r(-1, 4)));
        assert_eq!(local.q_series.coeff(1), &el(r(-2, 4), r(7, 4)));
        assert_eq!(local.pole[0], el(r(4, 36), r(-19, 36)));
        assert_eq!(local.pole[1], el(r(1, 12), r(1, 12)));
    }

    #[test]
    fn reducible_base_is_split_and_retried() {
        // bypass refinement: x^2 - 1 squarefree but x - 1 also divides the
        // second factor, so the basis is not coprime
        let fd = FactoredDenominator {
            unit: r(1, 1),
            factors: vec![
                Factor::new(Poly::from_ints(&[-1, 0, 1]), 1),
                Factor::new(Poly::from_ints(&[-1, 1, 0, 0]), 1),
            ],
        };
        let f = RationalFunction {
            numerator: Poly::one(),
            denominator: fd,
        };
        let d = decompose_galois(&f, 1).unwrap();
        assert!(d.satisfies_degree_bounds());
        let expect = RationalFunction::from_polys(
            Poly::one(),
            &(&Poly::from_ints(&[-1, 0, 1]) * &Poly::from_ints(&[-1, 1])),
        )
        .unwrap();
        assert!(d.recombine().same_function(&expect));
    }
}
