#![allow(dead_code)]

use num_complex::Complex64;
use pfd::{Factor, FactoredDenominator, Field, ParamRational, Poly, Rational, RationalFunction};
use proptest::prelude::*;

pub fn p(c: &[i64]) -> Poly<Rational> {
    Poly::from_ints(c)
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

pub fn poly(max_len: usize) -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(rational(), 0..=max_len).prop_map(Poly::new)
}

pub fn nonzero_poly(max_len: usize) -> impl Strategy<Value = Poly<Rational>> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn int_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|c| Poly::from_ints(&c))
}

pub fn param() -> impl Strategy<Value = ParamRational> {
    (poly(3), nonzero_poly(3)).prop_map(|(n, d)| ParamRational::new(n, d).unwrap())
}

/// Base of degree 1..=max_deg with integer coefficients in [-bound, bound]
/// and a nonzero leading coefficient.
pub fn base(max_deg: usize, bound: i64) -> impl Strategy<Value = Poly<Rational>> {
    (1..=max_deg)
        .prop_flat_map(move |d| {
            (
                prop::collection::vec(-bound..=bound, d),
                (1..=bound).prop_flat_map(|m| prop_oneof![Just(m), Just(-m)]),
            )
        })
        .prop_map(|(mut c, lead)| {
            c.push(lead);
            Poly::from_ints(&c)
        })
}

/// Up to three factors of degree <= 3 and multiplicity <= 3, coefficients in
/// [-9, 9], refined into a coprime basis; numerator up to two degrees above
/// the denominator so the polynomial part is exercised.
pub fn rational_function() -> impl Strategy<Value = RationalFunction<Rational>> {
    prop::collection::vec((base(3, 9), 1u32..=3), 1..=3)
        .prop_flat_map(|parts| {
            let deg: usize = parts.iter().map(|(b, m)| b.len().saturating_sub(1) * *m as usize).sum();
            (Just(parts), int_poly(deg + 2, 9))
        })
        .prop_map(|(parts, num)| {
            let den = FactoredDenominator::from_parts(Rational::from(1), parts).unwrap();
            RationalFunction::new(num, den).unwrap()
        })
}

pub fn to_complex(p: &Poly<Rational>) -> Vec<Complex64> {
    p.coeffs().iter().map(|c| Complex64::new(c.to_f64().unwrap(), 0.0)).collect()
}

pub fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
}

/// All complex roots of a monic polynomial (Durand-Kerner, then Newton
/// polishing).
pub fn roots(p: &Poly<Rational>) -> Vec<Complex64> {
    let c = to_complex(p);
    let n = c.len() - 1;
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for k in 0..n {
                if k != i {
                    den *= z[i] - z[k];
                }
            }
            let step = horner(&c, z[i]) / den;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    let dc: Vec<Complex64> = (1..c.len()).map(|k| c[k] * k as f64).collect();
    for r in z.iter_mut() {
        for _ in 0..5 {
            let d = horner(&dc, *r);
            if d.norm() == 0.0 {
                break;
            }
            *r -= horner(&c, *r) / d;
        }
    }
    z
}

pub fn factors_of(f: &RationalFunction<Rational>) -> Vec<Factor<Rational>> {
    f.factors().to_vec()
}
