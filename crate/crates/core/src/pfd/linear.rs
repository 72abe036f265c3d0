use crate::error::{PfdError, Result};
use crate::factor::Factor;
use crate::poly::Poly;
use crate::field::Field;
use crate::trace::RationalPart;

use super::galois::local_pole_expansion;
use super::pool::map_ordered;
use super::{polynomial_part, trivial_case, Decomposition, RationalFunction};

/// Linear-factor fast path: every base is `x - a`, so `F[α] = F` and the
/// pole coefficients are the decomposition numerators directly.
pub fn decompose_linear<F: Field>(f: &RationalFunction<F>, jobs: usize) -> Result<Decomposition<F>> {
    if f.factors().iter().any(|fa| fa.degree() != 1) {
        return Err(PfdError::RequiresLinearFactors);
    }
    if let Some(d) = trivial_case(f) {
        return Ok(d);
    }
    let factors = f.factors();
    let indices: Vec<usize> = (0..factors.len()).collect();
    let groups = map_ordered(&indices, jobs, |&i| {
        let others: Vec<Factor<F>> = factors
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != i)
            .map(|(_, fa)| fa.clone())
            .collect();
        let local = local_pole_expansion(f.numerator(), &factors[i], &others)?;
        let mut part = RationalPart::empty(factors[i].base.clone());
        for (j, c) in local.pole.iter().enumerate() {
            part.accumulate(j as u32 + 1, &Poly::constant(c.coords()[0].clone()));
        }
        Ok(part)
    });
    let groups = groups.into_iter().collect::<Result<Vec<_>>>()?;
    let (poly, _) = polynomial_part(f);
    Ok(Decomposition {
        polynomial_part: poly,
        groups,
    })
}
