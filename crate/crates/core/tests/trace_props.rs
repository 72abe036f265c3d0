mod common;

use common::{horner, rational, roots, to_complex};
use num_complex::Complex64;
use pfd::poly::poly_gcd;
use pfd::trace::{normalize_over_power, pole_sum, RationalPart};
use pfd::{AlgContext, AlgebraicElement, Field, Poly, Rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn squarefree_monic(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly<Rational> {
    loop {
        let d = rng.gen_range(1..=max_deg);
        let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-9..=9)).collect();
        c.push(1);
        let p = Poly::from_ints(&c);
        if poly_gcd(&p, &p.derivative()).unwrap().is_one() {
            return p;
        }
    }
}

fn eval_part(part: &RationalPart<Rational>, x: &Rational) -> Rational {
    let b = part.base.eval(x);
    part.terms.iter().fold(Rational::from(0), |acc, t| {
        let den = (0..t.power).fold(Rational::from(1), |a, _| a.mul(&b));
        acc.add(&t.numerator.eval(x).div(&den).unwrap())
    })
}

#[test]
fn pole_sum_matches_root_summation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ace);
    for _ in 0..50 {
        let p = squarefree_monic(&mut rng, 4);
        let n = p.len() - 1;
        let ctx = AlgContext::new(p.clone()).unwrap();
        let b = AlgebraicElement::from_coords(
            &ctx,
            (0..n).map(|_| Rational::new(rng.gen_range(-20..=20), rng.gen_range(1..=5))).collect(),
        );
        let j = rng.gen_range(1..=3u32);
        let part = pole_sum(&b, j);
        assert!(part.terms.iter().all(|t| t.numerator.degree().unwrap() < n));

        let alphas = roots(&p);
        let bc = to_complex(&b.lift());
        let mut points = 0;
        while points < 5 {
            let x = Rational::new(rng.gen_range(-40..=40), rng.gen_range(1..=7));
            let xf = Complex64::new(x.to_f64().unwrap(), 0.0);
            if alphas.iter().any(|a| (xf - a).norm() < 0.05) {
                continue;
            }
            points += 1;
            let summands: Vec<Complex64> = alphas
                .iter()
                .map(|a| horner(&bc, *a) / (xf - a).powu(j))
                .collect();
            let numeric: Complex64 = summands.iter().sum();
            let scale: f64 = summands.iter().map(|s| s.norm()).sum::<f64>().max(1e-300);
            let exact = eval_part(&part, &x).to_f64().unwrap();
            let err = (exact - numeric.re).abs().max(numeric.im.abs());
            assert!(
                err <= 1e-6 * scale,
                "P = {}, b = {}, j = {j}, x = {x}: exact {exact}, numeric {numeric}",
                p.to_text("x", "t"),
                b
            );
        }
    }
}

proptest! {
    #[test]
    fn pole_sum_is_linear(
        coords in prop::collection::vec((rational(), rational()), 3),
        j in 1u32..=3,
    ) {
        let ctx = AlgContext::new(Poly::<Rational>::from_ints(&[2, -1, 0, 1])).unwrap();
        let a = AlgebraicElement::from_coords(&ctx, coords.iter().map(|c| c.0.clone()).collect());
        let b = AlgebraicElement::from_coords(&ctx, coords.iter().map(|c| c.1.clone()).collect());
        let mut sum = pole_sum(&a, j);
        sum.add_part(&pole_sum(&b, j));
        prop_assert_eq!(pole_sum(&a.add(&b).unwrap(), j), sum);
    }

    #[test]
    fn normalize_re_expands(a in common::poly(12), m in 1u32..=4) {
        let base = Poly::<Rational>::from_ints(&[1, 1, 1]);
        let (part, overflow) = normalize_over_power(&a, &base, m);
        let back = &part.combine(m) + &(&overflow * &base.pow(m));
        prop_assert_eq!(back, a);
        prop_assert!(part.terms.iter().all(|t| t.numerator.degree().unwrap() < 2));
    }
}
