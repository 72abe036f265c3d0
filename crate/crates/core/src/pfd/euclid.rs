use crate::budget::checkpoint;
use crate::error::{PfdError, Result};
use crate::field::Field;
use crate::poly::{poly_ext_gcd, Poly};
use crate::trace::normalize_over_power;

use super::{trivial_case, Decomposition, PolyPartMode, RationalFunction};

/// Euclidean method.
///
/// Factors are peeled off one at a time: with `U Q_i + V R = 1` for the
/// powered factor `Q_i = P_i^m_i` and the product `R` of the remaining
/// powered factors, `N / (Q_i R) = N V / Q_i + N U / R`. Each `N V` is then
/// reduced by the divrem cascade over `P_i`.
pub fn decompose_euclid<F: Field>(f: &RationalFunction<F>, mode: PolyPartMode) -> Result<Decomposition<F>> {
    if let Some(d) = trivial_case(f) {
        return Ok(d);
    }
    let factors = f.factors();
    let powered: Vec<Poly<F>> = factors.iter().map(|fa| fa.expanded()).collect();
    // suffix[i] = prod_{l >= i} powered[l]
    let mut suffix = vec![Poly::one(); powered.len() + 1];
    for i in (0..powered.len()).rev() {
        suffix[i] = &powered[i] * &suffix[i + 1];
    }

    let mut poly = Poly::zero();
    let mut rest = match mode {
        PolyPartMode::Infinity => {
            let (q, r) = f.numerator().divrem(&suffix[0])?;
            poly = q;
            r
        }
        PolyPartMode::Accumulate => f.numerator().clone(),
    };

    let mut groups = Vec::with_capacity(factors.len());
    for (i, fa) in factors.iter().enumerate() {
        checkpoint();
        let own = if i + 1 == factors.len() {
            std::mem::replace(&mut rest, Poly::zero())
        } else {
            let (g, u, v) = poly_ext_gcd(&powered[i], &suffix[i + 1])?;
            if !g.is_one() {
                return Err(PfdError::NotCoprime);
            }
            let (q, r) = (&rest * &u).divrem(&suffix[i + 1])?;
            if mode == PolyPartMode::Accumulate {
                poly = &poly + &q;
            }
            let own = &rest * &v;
            rest = r;
            own
        };
        let (part, overflow) = normalize_over_power(&own, &fa.base, fa.multiplicity);
        // with a proper numerator the discarded quotients sum to zero
        if mode == PolyPartMode::Accumulate {
            poly = &poly + &overflow;
        }
        groups.push(part);
    }
    Ok(Decomposition {
        polynomial_part: poly,
        groups,
    })
}
