use crate::budget::checkpoint;
use crate::error::{PfdError, Result};
use crate::field::Field;
use crate::poly::Poly;
use crate::trace::RationalPart;

use super::{polynomial_part, trivial_case, Decomposition, RationalFunction};

/// Coefficient comparison.
///
/// Unknowns are the coefficients of every `N_{i,j}`; multiplying the ansatz
/// by the full denominator `D` gives `Σ N_{i,j} D / P_i^j = N mod D`, a square
/// system in the `deg D` coefficients of `x^0 … x^(deg D - 1)`.
pub fn decompose_linsys<F: Field>(f: &RationalFunction<F>) -> Result<Decomposition<F>> {
    if let Some(d) = trivial_case(f) {
        return Ok(d);
    }
    let (poly, proper) = polynomial_part(f);
    let factors = f.factors();
    let size = f.denominator().degree();

    let powered: Vec<Poly<F>> = factors.iter().map(|fa| fa.expanded()).collect();
    // (factor index, power, monomial degree) per unknown, column-major
    let mut unknowns = Vec::with_capacity(size);
    let mut columns: Vec<Vec<F>> = Vec::with_capacity(size);
    for (i, fa) in factors.iter().enumerate() {
        let others = powered
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != i)
            .fold(Poly::one(), |acc, (_, p)| &acc * p);
        for j in 1..=fa.multiplicity {
            let cofactor = &others * &fa.base.pow(fa.multiplicity - j);
            for k in 0..fa.degree() {
                let col = cofactor.shift(k);
                columns.push((0..size).map(|r| col.coeff(r)).collect());
                unknowns.push((i, j, k));
            }
        }
    }
    debug_assert_eq!(columns.len(), size);

    let matrix: Vec<Vec<F>> = (0..size)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    let rhs: Vec<F> = (0..size).map(|r| proper.numerator().coeff(r)).collect();
    let solution = solve_fraction_free(matrix, rhs)?;

    let mut numerators: Vec<Vec<Vec<F>>> = factors
        .iter()
        .map(|fa| vec![vec![F::zero(); fa.degree()]; fa.multiplicity as usize])
        .collect();
    for ((i, j, k), v) in unknowns.into_iter().zip(solution) {
        numerators[i][j as usize - 1][k] = v;
    }
    let groups = factors
        .iter()
        .zip(numerators)
        .map(|(fa, per_power)| {
            let mut part = RationalPart::empty(fa.base.clone());
            for (j, coeffs) in per_power.into_iter().enumerate() {
                part.accumulate(j as u32 + 1, &Poly::new(coeffs));
            }
            part
        })
        .collect();
    Ok(Decomposition {
        polynomial_part: poly,
        groups,
    })
}

/// Solves the square system `a x = b` by fraction-free (Bareiss) elimination
/// with row pivoting, then back substitution.
pub fn solve_fraction_free<F: Field>(mut a: Vec<Vec<F>>, mut b: Vec<F>) -> Result<Vec<F>> {
    let n = b.len();
    if a.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(PfdError::Internal("linear system is not square".into()));
    }
    let mut prev = F::one();
    for k in 0..n {
        checkpoint();
        let pivot = (k..n)
            .find(|&r| !a[r][k].is_zero())
            .ok_or_else(|| PfdError::Internal("singular linear system".into()))?;
        if pivot != k {
            a.swap(pivot, k);
            b.swap(pivot, k);
        }
        let prev_inv = prev.inv()?;
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let akk = &pivot_row[k];
        for (off, row) in bottom.iter_mut().enumerate() {
            let r = k + 1 + off;
            let aik = std::mem::replace(&mut row[k], F::zero());
            for j in k + 1..n {
                row[j] = akk.mul(&row[j]).sub(&aik.mul(&pivot_row[j])).mul(&prev_inv);
            }
            b[r] = akk.mul(&b[r]).sub(&aik.mul(&b[k])).mul(&prev_inv);
        }
        prev = akk.clone();
    }
    let mut x = vec![F::zero(); n];
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for j in i + 1..n {
            if !a[i][j].is_zero() {
                acc = acc.sub(&a[i][j].mul(&x[j]));
            }
        }
        x[i] = acc.div(&a[i][i])?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn solves_small_system() {
        // 2x + y = 5, x - y = 1
        let x = solve_fraction_free(vec![vec![r(2), r(1)], vec![r(1), r(-1)]], vec![r(5), r(1)]).unwrap();
        assert_eq!(x, vec![r(2), r(1)]);
    }

    #[test]
    fn pivots_past_zero() {
        let x = solve_fraction_free(vec![vec![r(0), r(1)], vec![r(1), r(0)]], vec![r(3), r(4)]).unwrap();
        assert_eq!(x, vec![r(4), r(3)]);
    }

    #[test]
    fn singular_is_an_error() {
        let err = solve_fraction_free(vec![vec![r(1), r(2)], vec![r(2), r(4)]], vec![r(1), r(2)]).unwrap_err();
        assert!(matches!(err, PfdError::Internal(_)));
    }
}
