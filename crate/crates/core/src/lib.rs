//! Exact partial fraction decomposition of univariate rational functions.
//!
//! Coefficients live in a [`Field`]: the rationals, or `Q(t)` for a single
//! parameter `t`. Inputs are normalized into a [`RationalFunction`] over a
//! coprime squarefree factor basis and decomposed by one of several
//! interchangeable methods (see [`Method`]).

pub mod algext;
pub mod budget;
pub mod error;
pub mod expr;
pub mod factor;
pub mod field;
pub mod param;
pub mod pfd;
pub mod poly;
pub mod rational;
pub mod trace;

pub use algext::{AlgContext, AlgError, AlgSeries, AlgebraicElement};
pub use error::{PfdError, Result};
pub use factor::{coprime_basis_refine, squarefree_decompose, Factor, FactoredDenominator};
pub use field::{Field, ParamRational, Rational};
pub use pfd::{
    decompose, decompose_euclid, decompose_galois, decompose_linear, decompose_linsys, recombine, DecomposeOptions,
    Decomposition, Method, PolyPartMode, RationalFunction,
};
pub use poly::Poly;
pub use trace::{pole_sum, PartTerm, RationalPart};
