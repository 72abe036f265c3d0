//! Pairwise-coprime factored denominators.
//!
//! A [`FactoredDenominator`] stores `unit * prod base_i^m_i` with monic,
//! squarefree, pairwise-coprime bases, sorted by degree and then by
//! coefficient vector. No irreducible factorization is attempted: the basis
//! is whatever the input's written structure plus squarefree and gcd-free
//! refinement produces.

use crate::error::{PfdError, Result};
use crate::field::Field;
use crate::poly::{poly_gcd, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor<F> {
    pub base: Poly<F>,
    pub multiplicity: u32,
}

impl<F: Field> Factor<F> {
    pub fn new(base: Poly<F>, multiplicity: u32) -> Self {
        Factor { base, multiplicity }
    }

    pub fn degree(&self) -> usize {
        self.base.degree().unwrap_or(0)
    }

    pub fn expanded(&self) -> Poly<F> {
        self.base.pow(self.multiplicity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredDenominator<F> {
    pub unit: F,
    pub factors: Vec<Factor<F>>,
}

impl<F: Field> FactoredDenominator<F> {
    /// The empty product (denominator 1).
    pub fn one() -> Self {
        FactoredDenominator {
            unit: F::one(),
            factors: Vec::new(),
        }
    }

    /// Builds from raw `(base, multiplicity)` pairs: leading coefficients move
    /// into the unit, constants are absorbed, nothing else is checked.
    pub fn from_parts(unit: F, parts: impl IntoIterator<Item = (Poly<F>, u32)>) -> Result<Self> {
        if unit.is_zero() {
            return Err(PfdError::DivisionByZero);
        }
        let mut fd = FactoredDenominator {
            unit,
            factors: Vec::new(),
        };
        for (base, m) in parts {
            if m == 0 {
                continue;
            }
            let (lc, monic) = base.monic_parts();
            if lc.is_zero() {
                return Err(PfdError::ZeroPolynomialDivision);
            }
            fd.unit = fd.unit.mul(&pow_field(&lc, m));
            if !monic.is_constant() {
                fd.factors.push(Factor::new(monic, m));
            }
        }
        Ok(fd)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && self.unit.is_one()
    }

    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|f| f.degree() * f.multiplicity as usize)
            .sum()
    }

    /// `prod base^m` without the unit.
    pub fn expand_monic(&self) -> Poly<F> {
        self.factors
            .iter()
            .fold(Poly::one(), |acc, f| &acc * &f.expanded())
    }

    /// `unit * prod base^m`.
    pub fn expand(&self) -> Poly<F> {
        self.expand_monic().scale(&self.unit)
    }

    /// Checks the structural invariants (monic, squarefree, pairwise coprime).
    pub fn is_coprime_basis(&self) -> bool {
        let ok_bases = self.factors.iter().all(|f| {
            f.multiplicity > 0
                && f.base.is_monic()
                && !f.base.is_constant()
                && poly_gcd(&f.base, &f.base.derivative())
                    .map(|g| g.is_one())
                    .unwrap_or(false)
        });
        ok_bases
            && self.factors.iter().enumerate().all(|(i, a)| {
                self.factors[i + 1..].iter().all(|b| {
                    poly_gcd(&a.base, &b.base)
                        .map(|g| g.is_one())
                        .unwrap_or(false)
                })
            })
    }

    pub(crate) fn sort_canonical(&mut self) {
        self.factors.sort_by(|a, b| a.base.canonical_cmp(&b.base));
    }
}

pub(crate) fn pow_field<F: Field>(a: &F, e: u32) -> F {
    (0..e).fold(F::one(), |acc, _| acc.mul(a))
}

/// Yun's squarefree decomposition: `p = unit * prod a_i^i`.
pub fn squarefree_decompose<F: Field>(p: &Poly<F>) -> Result<FactoredDenominator<F>> {
    if p.is_zero() {
        return Err(PfdError::ZeroPolynomial);
    }
    let (unit, p) = p.monic_parts();
    let mut out = FactoredDenominator {
        unit,
        factors: Vec::new(),
    };
    if p.is_constant() {
        return Ok(out);
    }
    let dp = p.derivative();
    let a0 = poly_gcd(&p, &dp)?;
    let mut b = exact_div(&p, &a0);
    let mut c = exact_div(&dp, &a0);
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = if d.is_zero() { b.clone() } else { poly_gcd(&b, &d)? };
        let next_b = exact_div(&b, &a);
        c = exact_div(&d, &a);
        if !a.is_constant() {
            out.factors.push(Factor::new(a, i));
        }
        d = &c - &next_b.derivative();
        b = next_b;
        i += 1;
    }
    out.sort_canonical();
    Ok(out)
}

fn exact_div<F: Field>(n: &Poly<F>, d: &Poly<F>) -> Poly<F> {
    let (q, r) = n.divrem(d).expect("nonzero divisor");
    debug_assert!(r.is_zero(), "inexact division");
    q
}

/// Refines a factor list into a squarefree, pairwise-coprime basis by
/// repeated gcd splitting. The product (with multiplicities) is preserved.
pub fn coprime_basis_refine<F: Field>(fd: &FactoredDenominator<F>) -> FactoredDenominator<F> {
    let mut unit = fd.unit.clone();
    let mut work: Vec<Factor<F>> = Vec::new();
    for f in &fd.factors {
        let sq = squarefree_decompose(&f.base).expect("nonzero base");
        unit = unit.mul(&pow_field(&sq.unit, f.multiplicity));
        for g in sq.factors {
            work.push(Factor::new(g.base, g.multiplicity * f.multiplicity));
        }
    }

    'outer: loop {
        for i in 0..work.len() {
            for j in i + 1..work.len() {
                let g = poly_gcd(&work[i].base, &work[j].base).expect("nonzero bases");
                if g.is_constant() {
                    continue;
                }
                let (mi, mj) = (work[i].multiplicity, work[j].multiplicity);
                let bi = exact_div(&work[i].base, &g);
                let bj = exact_div(&work[j].base, &g);
                // remove j first so index i stays valid
                work.remove(j);
                work.remove(i);
                for (b, m) in [(bi, mi), (bj, mj), (g, mi + mj)] {
                    if !b.is_constant() {
                        work.push(Factor::new(b, m));
                    }
                }
                continue 'outer;
            }
        }
        break;
    }

    let mut out = FactoredDenominator {
        unit,
        factors: work,
    };
    out.sort_canonical();
    out
}

/// True iff `fd` is a valid coprime basis whose expansion equals `original`.
pub fn validate_factorization<F: Field>(fd: &FactoredDenominator<F>, original: &Poly<F>) -> bool {
    fd.is_coprime_basis() && fd.expand() == *original
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type P = Poly<Rational>;

    fn p(c: &[i64]) -> P {
        P::from_ints(c)
    }

    fn fd(parts: &[(&[i64], u32)]) -> FactoredDenominator<Rational> {
        FactoredDenominator::from_parts(
            Rational::from(1),
            parts.iter().map(|(c, m)| (p(c), *m)),
        )
        .unwrap()
    }

    #[test]
    fn squarefree_examples() {
        let sq = squarefree_decompose(&p(&[0, 0, -1, 1])).unwrap();
        assert_eq!(sq.unit, Rational::from(1));
        assert_eq!(sq.factors, vec![Factor::new(p(&[-1, 1]), 1), Factor::new(p(&[0, 1]), 2)]);

        let sq = squarefree_decompose(&p(&[1, 1, 1])).unwrap();
        assert_eq!(sq.factors, vec![Factor::new(p(&[1, 1, 1]), 1)]);

        let sq = squarefree_decompose(&p(&[0, 0, 2])).unwrap();
        assert_eq!(sq.unit, Rational::from(2));
        assert_eq!(sq.factors, vec![Factor::new(p(&[0, 1]), 2)]);

        assert!(squarefree_decompose(&P::zero()).is_err());
    }

    #[test]
    fn squarefree_high_multiplicity() {
        // (x+1)^3 (x-2)^5 x
        let q = &(&p(&[1, 1]).pow(3) * &p(&[-2, 1]).pow(5)) * &p(&[0, 1]);
        let sq = squarefree_decompose(&q).unwrap();
        assert_eq!(sq.expand(), q);
        let mut mults: Vec<u32> = sq.factors.iter().map(|f| f.multiplicity).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 3, 5]);
        assert!(sq.is_coprime_basis());
    }

    #[test]
    fn refine_examples() {
        let out = coprime_basis_refine(&fd(&[(&[-1, 0, 1], 1), (&[-1, 1], 1)]));
        assert_eq!(out.factors, vec![Factor::new(p(&[-1, 1]), 2), Factor::new(p(&[1, 1]), 1)]);

        let input = fd(&[(&[1, 1, 1], 2), (&[1, -1, 1], 2)]);
        let out = coprime_basis_refine(&input);
        assert_eq!(out.expand(), input.expand());
        assert_eq!(out.factors.len(), 2);
        assert!(out.factors.contains(&Factor::new(p(&[1, 1, 1]), 2)));
        assert!(out.factors.contains(&Factor::new(p(&[1, -1, 1]), 2)));

        let out = coprime_basis_refine(&fd(&[(&[0, 1], 3)]));
        assert_eq!(out.factors, vec![Factor::new(p(&[0, 1]), 3)]);
    }

    #[test]
    fn refine_merges_duplicates() {
        let out = coprime_basis_refine(&fd(&[(&[1, 1], 2), (&[1, 1], 3)]));
        assert_eq!(out.factors, vec![Factor::new(p(&[1, 1]), 5)]);
    }

    #[test]
    fn validate_examples() {
        let golden = fd(&[(&[1, 1, 1], 2), (&[1, -1, 1], 2)]);
        let expanded = &p(&[1, 1, 1]).pow(2) * &p(&[1, -1, 1]).pow(2);
        assert!(validate_factorization(&golden, &expanded));
        assert!(!validate_factorization(&fd(&[(&[-1, 1], 1)]), &p(&[-2, 1])));
        let dup = fd(&[(&[-1, 0, 1], 1), (&[1, 1], 1)]);
        assert!(!validate_factorization(&dup, &dup.expand()));
    }
}
