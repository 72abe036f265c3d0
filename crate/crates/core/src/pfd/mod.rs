//! Partial fraction decomposition over a coprime factor basis.
//!
//! Four interchangeable methods produce the same canonical
//! [`Decomposition`]:
//!
//! * `linear`: local expansion at each root when every base is `x - a`;
//! * `euclid`: Bézout splitting of the powered factors, then a divrem cascade;
//! * `galois`: local expansion at a formal root `α` in `F[x]/(P)`, followed by
//!   a trace over all roots of `P` (independent per factor, so parallel);
//! * `linsys`: coefficient comparison solved by fraction-free elimination,
//!   kept as the reference oracle.

mod euclid;
mod galois;
mod linear;
mod linsys;
pub mod pool;

use std::fmt;
use std::str::FromStr;

use crate::error::{PfdError, Result};
use crate::factor::{coprime_basis_refine, Factor, FactoredDenominator};
use crate::field::Field;
use crate::poly::{poly_gcd, Poly};
use crate::trace::RationalPart;

pub use euclid::decompose_euclid;
pub use galois::{decompose_galois, local_pole_expansion, LocalExpansion};
pub use linear::decompose_linear;
pub use linsys::{decompose_linsys, solve_fraction_free};

/// `numerator / prod base^m` with a monic, squarefree, pairwise-coprime
/// basis and no common factor between the numerator and any base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction<F: Field> {
    numerator: Poly<F>,
    denominator: FactoredDenominator<F>,
}

impl<F: Field> RationalFunction<F> {
    /// Refines the denominator into a coprime basis, moves its unit into the
    /// numerator, and cancels common factors.
    pub fn new(numerator: Poly<F>, denominator: FactoredDenominator<F>) -> Result<Self> {
        if denominator.unit.is_zero() {
            return Err(PfdError::DivisionByZero);
        }
        let refined = coprime_basis_refine(&denominator);
        let numerator = numerator.scale(&refined.unit.inv()?);
        Ok(Self::cancel(numerator, refined.factors))
    }

    /// Accepts an already refined basis, failing with `NotCoprime` when the
    /// invariants do not hold. Common factors are still cancelled.
    pub fn from_coprime(numerator: Poly<F>, denominator: FactoredDenominator<F>) -> Result<Self> {
        if denominator.unit.is_zero() {
            return Err(PfdError::DivisionByZero);
        }
        if !denominator.is_coprime_basis() {
            return Err(PfdError::NotCoprime);
        }
        let numerator = numerator.scale(&denominator.unit.inv()?);
        Ok(Self::cancel(numerator, denominator.factors))
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RationalFunction {
            numerator: p,
            denominator: FactoredDenominator::one(),
        }
    }

    /// `numerator / denominator` with the denominator squarefree-decomposed.
    pub fn from_polys(numerator: Poly<F>, denominator: &Poly<F>) -> Result<Self> {
        if denominator.is_zero() {
            return Err(PfdError::ZeroPolynomialDivision);
        }
        let (unit, monic) = denominator.monic_parts();
        Self::new(numerator, FactoredDenominator::from_parts(unit, [(monic, 1)])?)
    }

    fn cancel(mut numerator: Poly<F>, mut factors: Vec<Factor<F>>) -> Self {
        if numerator.is_zero() {
            factors.clear();
        }
        let mut i = 0;
        while i < factors.len() {
            let g = poly_gcd(&numerator, &factors[i].base).expect("nonzero base");
            if g.is_constant() {
                i += 1;
                continue;
            }
            numerator = numerator.divrem(&g).expect("nonzero gcd").0;
            let Factor { base, multiplicity } = factors.remove(i);
            let cofactor = base.divrem(&g).expect("nonzero gcd").0;
            if !cofactor.is_constant() {
                factors.insert(i, Factor::new(cofactor, multiplicity));
            }
            if multiplicity > 1 {
                factors.insert(i, Factor::new(g, multiplicity - 1));
            }
        }
        let mut denominator = FactoredDenominator {
            unit: F::one(),
            factors,
        };
        denominator.sort_canonical();
        RationalFunction {
            numerator,
            denominator,
        }
    }

    pub fn numerator(&self) -> &Poly<F> {
        &self.numerator
    }

    pub fn denominator(&self) -> &FactoredDenominator<F> {
        &self.denominator
    }

    pub fn factors(&self) -> &[Factor<F>] {
        &self.denominator.factors
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Equality as rational functions, by cross multiplication.
    pub fn same_function(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator.expand() == &other.numerator * &self.denominator.expand()
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.denominator.expand().eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.numerator.eval(x).div(&d).expect("nonzero"))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = (self.denominator.expand(), other.denominator.expand());
        let num = &(&self.numerator * &b) + &(&other.numerator * &a);
        let mut parts: Vec<(Poly<F>, u32)> = Vec::new();
        for f in self.factors().iter().chain(other.factors()) {
            parts.push((f.base.clone(), f.multiplicity));
        }
        Self::new(num, FactoredDenominator::from_parts(F::one(), parts)?)
    }
}

/// Polynomial part plus one [`RationalPart`] per denominator base, in the
/// basis order of the input.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition<F: Field> {
    pub polynomial_part: Poly<F>,
    pub groups: Vec<RationalPart<F>>,
}

impl<F: Field> Decomposition<F> {
    pub fn zero() -> Self {
        Decomposition {
            polynomial_part: Poly::zero(),
            groups: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.polynomial_part.is_zero() && self.groups.iter().all(|g| g.is_empty())
    }

    /// Every numerator has degree below its base, powers strictly increase,
    /// and no stored numerator is zero.
    pub fn satisfies_degree_bounds(&self) -> bool {
        self.groups.iter().all(|g| {
            let n = g.base.degree().unwrap_or(0);
            g.terms.iter().all(|t| {
                t.power >= 1 && t.numerator.degree().is_some_and(|d| d < n)
            }) && g.terms.windows(2).all(|w| w[0].power < w[1].power)
        })
    }

    /// Sums everything back over the common denominator.
    pub fn recombine(&self) -> RationalFunction<F> {
        let tops: Vec<(Poly<F>, u32)> = self
            .groups
            .iter()
            .filter(|g| !g.is_empty())
            .map(|g| (g.base.clone(), g.max_power()))
            .collect();
        let full: Poly<F> = tops.iter().fold(Poly::one(), |acc, (b, m)| &acc * &b.pow(*m));
        let mut num = &self.polynomial_part * &full;
        for (i, g) in self.groups.iter().filter(|g| !g.is_empty()).enumerate() {
            let others = tops
                .iter()
                .enumerate()
                .filter(|(l, _)| *l != i)
                .fold(Poly::one(), |acc, (_, (b, m))| &acc * &b.pow(*m));
            num = &num + &(&g.combine(tops[i].1) * &others);
        }
        let fd = FactoredDenominator::from_parts(F::one(), tops).expect("monic bases");
        RationalFunction::new(num, fd).expect("nonzero denominator")
    }
}

/// Recombines `d`; free-function form of [`Decomposition::recombine`].
pub fn recombine<F: Field>(d: &Decomposition<F>) -> RationalFunction<F> {
    d.recombine()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Method {
    #[default]
    Auto,
    Linear,
    Euclid,
    Galois,
    Linsys,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Auto, Method::Linear, Method::Euclid, Method::Galois, Method::Linsys];

    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Linear => "linear",
            Method::Euclid => "euclid",
            Method::Galois => "galois",
            Method::Linsys => "linsys",
        }
    }

    /// The concrete method `auto` routes `f` to; other methods map to
    /// themselves.
    pub fn resolve<F: Field>(self, f: &RationalFunction<F>) -> Method {
        if self != Method::Auto {
            return self;
        }
        let factors = f.factors();
        if factors.iter().all(|fa| fa.degree() == 1) {
            Method::Linear
        } else if factors.iter().filter(|fa| fa.multiplicity > 1).count() == 1 {
            Method::Euclid
        } else {
            Method::Galois
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

/// How the Euclidean method obtains the polynomial part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PolyPartMode {
    /// One division of the numerator by the expanded denominator.
    #[default]
    Infinity,
    /// Sum of the quotients discarded while reducing numerators.
    Accumulate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecomposeOptions {
    pub method: Method,
    pub jobs: usize,
    pub poly_part: PolyPartMode,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            method: Method::Auto,
            jobs: 1,
            poly_part: PolyPartMode::Infinity,
        }
    }
}

impl DecomposeOptions {
    pub fn with_method(method: Method) -> Self {
        DecomposeOptions {
            method,
            ..Self::default()
        }
    }
}

/// Splits off the polynomial part: quotient of the numerator by the expanded
/// denominator, which is the non-negative part of the expansion at infinity.
pub fn polynomial_part<F: Field>(f: &RationalFunction<F>) -> (Poly<F>, RationalFunction<F>) {
    let d = f.denominator.expand();
    let (q, r) = f.numerator.divrem(&d).expect("denominator is nonzero");
    let rest = if r.is_zero() {
        RationalFunction::from_poly(Poly::zero())
    } else {
        RationalFunction {
            numerator: r,
            denominator: f.denominator.clone(),
        }
    };
    (q, rest)
}

/// Decomposes `f` with the requested method. The result does not depend on
/// `jobs`.
pub fn decompose<F: Field>(f: &RationalFunction<F>, opts: &DecomposeOptions) -> Result<Decomposition<F>> {
    let jobs = opts.jobs.max(1);
    match opts.method.resolve(f) {
        Method::Linear => decompose_linear(f, jobs),
        Method::Euclid => decompose_euclid(f, opts.poly_part),
        Method::Galois => decompose_galois(f, jobs),
        Method::Linsys => decompose_linsys(f),
        Method::Auto => unreachable!("resolved above"),
    }
}

/// Handles the zero numerator and the empty denominator uniformly.
pub(crate) fn trivial_case<F: Field>(f: &RationalFunction<F>) -> Option<Decomposition<F>> {
    if f.is_zero() {
        return Some(Decomposition::zero());
    }
    if f.factors().is_empty() {
        return Some(Decomposition {
            polynomial_part: f.numerator.clone(),
            groups: Vec::new(),
        });
    }
    None
}
