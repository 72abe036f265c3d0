use crate::error::PfdError;
use crate::factor::FactoredDenominator;
use crate::field::{Field, Rational};
use crate::pfd::RationalFunction;
use crate::poly::Poly;

use super::parser::Expr;
use super::ExprError;

/// `unit * prod num_i^a_i / prod den_j^b_j` with monic nonconstant bases,
/// kept exactly as written. A zero value has a zero unit and no factors.
#[derive(Clone, Debug)]
struct Written<F: Field> {
    unit: F,
    num: Vec<(Poly<F>, u32)>,
    den: Vec<(Poly<F>, u32)>,
}

fn push_factor<F: Field>(list: &mut Vec<(Poly<F>, u32)>, base: Poly<F>, m: u32) {
    if m == 0 {
        return;
    }
    match list.iter_mut().find(|(b, _)| *b == base) {
        Some((_, e)) => *e += m,
        None => list.push((base, m)),
    }
}

fn expand<F: Field>(list: &[(Poly<F>, u32)]) -> Poly<F> {
    list.iter().fold(Poly::one(), |acc, (b, m)| &acc * &b.pow(*m))
}

impl<F: Field> Written<F> {
    fn constant(c: F) -> Self {
        Written {
            unit: c,
            num: Vec::new(),
            den: Vec::new(),
        }
    }

    fn poly(p: Poly<F>) -> Self {
        if p.is_zero() {
            return Self::constant(F::zero());
        }
        let (unit, monic) = p.monic_parts();
        let mut w = Self::constant(unit);
        if !monic.is_constant() {
            w.num.push((monic, 1));
        }
        w
    }

    fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    fn numerator(&self) -> Poly<F> {
        expand(&self.num).scale(&self.unit)
    }

    fn mul(mut self, other: Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::constant(F::zero());
        }
        self.unit = self.unit.mul(&other.unit);
        for (b, m) in other.num {
            push_factor(&mut self.num, b, m);
        }
        for (b, m) in other.den {
            push_factor(&mut self.den, b, m);
        }
        self
    }

    fn recip(self) -> Result<Self, ExprError> {
        if self.is_zero() {
            return Err(PfdError::ZeroPolynomialDivision.into());
        }
        Ok(Written {
            unit: self.unit.inv()?,
            num: self.den,
            den: self.num,
        })
    }

    fn pow(self, e: i64) -> Result<Self, ExprError> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        let e = u32::try_from(e).map_err(|_| ExprError::ExponentTooLarge)?;
        if e == 0 {
            if self.is_zero() {
                return Err(ExprError::ZeroToZero);
            }
            return Ok(Self::constant(F::one()));
        }
        let scale = |list: Vec<(Poly<F>, u32)>| -> Result<Vec<(Poly<F>, u32)>, ExprError> {
            list.into_iter()
                .map(|(b, m)| m.checked_mul(e).map(|m| (b, m)).ok_or(ExprError::ExponentTooLarge))
                .collect()
        };
        Ok(Written {
            unit: crate::factor::pow_field(&self.unit, e),
            num: scale(self.num)?,
            den: scale(self.den)?,
        })
    }

    // common denominator: every written base at its largest multiplicity
    fn add(self, other: Self) -> Self {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let mut common: Vec<(Poly<F>, u32)> = self.den.clone();
        for (b, m) in &other.den {
            match common.iter_mut().find(|(c, _)| c == b) {
                Some((_, e)) => *e = (*e).max(*m),
                None => common.push((b.clone(), *m)),
            }
        }
        let cofactor = |den: &[(Poly<F>, u32)]| -> Poly<F> {
            common
                .iter()
                .map(|(b, m)| {
                    let have = den.iter().find(|(d, _)| d == b).map_or(0, |(_, e)| *e);
                    b.pow(m - have)
                })
                .fold(Poly::one(), |acc, p| &acc * &p)
        };
        let num = &(&self.numerator() * &cofactor(&self.den)) + &(&other.numerator() * &cofactor(&other.den));
        let mut w = Self::poly(num);
        if !w.is_zero() {
            w.den = common;
        }
        w
    }

    fn neg(mut self) -> Self {
        self.unit = self.unit.neg();
        self
    }
}

fn build<F: Field>(e: &Expr) -> Result<Written<F>, ExprError> {
    Ok(match e {
        Expr::Int(n) => Written::constant(F::from_rational(&Rational::from(num::BigRational::from_integer(n.clone())))),
        Expr::Rational(r) => Written::constant(F::from_rational(r)),
        Expr::Var => Written::poly(Poly::x()),
        Expr::Param => Written::constant(F::parameter().ok_or(ExprError::ParameterNotSupported)?),
        Expr::Add(a, b) => build::<F>(a)?.add(build(b)?),
        Expr::Sub(a, b) => build::<F>(a)?.add(build::<F>(b)?.neg()),
        Expr::Mul(a, b) => build::<F>(a)?.mul(build(b)?),
        Expr::Div(a, b) => build::<F>(a)?.mul(build::<F>(b)?.recip()?),
        Expr::Neg(a) => build::<F>(a)?.neg(),
        Expr::Pow(a, k) => build::<F>(a)?.pow(*k)?,
    })
}

/// The denominator factors as written, before squarefree and coprime
/// refinement: monic bases with multiplicities, in order of appearance.
pub fn written_denominator<F: Field>(ast: &Expr) -> Result<Vec<(Poly<F>, u32)>, ExprError> {
    Ok(build::<F>(ast)?.den)
}

/// Normalizes an expression into a [`RationalFunction`], keeping the written
/// denominator factorization as the starting factor list.
pub fn to_rational_function<F: Field>(ast: &Expr) -> Result<RationalFunction<F>, ExprError> {
    let w = build::<F>(ast)?;
    let numerator = w.numerator();
    let den = FactoredDenominator::from_parts(F::one(), w.den)?;
    Ok(RationalFunction::new(numerator, den)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::factor::Factor;
    use crate::field::ParamRational;

    fn rf(s: &str) -> RationalFunction<Rational> {
        to_rational_function(&parse_expr(s, "x", &[]).unwrap()).unwrap()
    }

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::from_ints(c)
    }

    #[test]
    fn golden_input_keeps_factors() {
        let f = rf("x^10/((x^2+x+1)^2*(x^2-x+1)^2)");
        assert_eq!(f.numerator(), &Poly::monomial(Rational::from(1), 10));
        assert_eq!(
            f.factors(),
            &[Factor::new(p(&[1, -1, 1]), 2), Factor::new(p(&[1, 1, 1]), 2)]
        );
    }

    #[test]
    fn cancellation_to_constant() {
        let f = rf("(x+1)/(x+1)");
        assert_eq!(f.numerator(), &p(&[1]));
        assert!(f.factors().is_empty());
    }

    #[test]
    fn refinement_merges_written_factors() {
        let f = rf("1/((x^2-1)*(x-1))");
        assert_eq!(f.factors(), &[Factor::new(p(&[-1, 1]), 2), Factor::new(p(&[1, 1]), 1)]);
        let ast = parse_expr("1/((x^2-1)*(x-1))", "x", &[]).unwrap();
        let written = written_denominator::<Rational>(&ast).unwrap();
        assert_eq!(written, vec![(p(&[-1, 0, 1]), 1), (p(&[-1, 1]), 1)]);
    }

    #[test]
    fn unit_is_moved_to_numerator() {
        let f = rf("3/(2*x - 4)");
        assert_eq!(f.numerator(), &Poly::from_rationals(&[(3, 2)]));
        assert_eq!(f.factors(), &[Factor::new(p(&[-2, 1]), 1)]);
    }

    #[test]
    fn sums_share_denominators() {
        let f = rf("1/(x-1) - 1/(x-1)");
        assert!(f.is_zero());
        let g = rf("1/(x-1)^2 + 1/(x-1)");
        assert_eq!(g.numerator(), &p(&[0, 1]));
        assert_eq!(g.factors(), &[Factor::new(p(&[-1, 1]), 2)]);
    }

    #[test]
    fn division_by_zero() {
        let ast = parse_expr("1/(x - x)", "x", &[]).unwrap();
        assert!(matches!(
            to_rational_function::<Rational>(&ast),
            Err(ExprError::Pfd(PfdError::ZeroPolynomialDivision))
        ));
        let ast = parse_expr("(x-x)^-1", "x", &[]).unwrap();
        assert!(to_rational_function::<Rational>(&ast).is_err());
    }

    #[test]
    fn parameter_needs_parameter_field() {
        let ast = parse_expr("1/(x - t)", "x", &["t"]).unwrap();
        assert!(matches!(
            to_rational_function::<Rational>(&ast),
            Err(ExprError::ParameterNotSupported)
        ));
        let f = to_rational_function::<ParamRational>(&ast).unwrap();
        assert_eq!(f.factors().len(), 1);
        assert_eq!(f.factors()[0].base.coeff(0), ParamRational::parameter_value().neg());
    }
}
