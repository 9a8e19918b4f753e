//! Exact univariate polynomial arithmetic: Laurent polynomials over Q, dense integer and
//! rational polynomials, cyclotomic polynomials, resultants, factorization over Q and
//! real root isolation.

mod cyclotomic;
mod factor;
mod intpoly;
mod laurent;
pub(crate) mod modp;
mod parse;
mod qpoly;
mod resultant;
mod sturm;

pub use cyclotomic::{
    chebyshev_c, cyclotomic, divisors, gcd as gcd_u64, palindromic_to_u, prime_power,
    real_cyclotomic, totient,
};
pub use factor::{factor_rational, factor_squarefree, squarefree_decomposition, Factorization};
pub use intpoly::IntPoly;
pub use laurent::LaurentPoly;
pub use parse::parse_laurent;
pub use qpoly::QPoly;
pub use resultant::resultant;
pub use sturm::{real_roots, root_bound, sturm_isolate, RealRoot, RootInterval, SturmSequence};

/// `true` iff `f` equals its own reciprocal up to units `±t^k`.
pub fn is_self_reciprocal(f: &LaurentPoly) -> crate::error::Result<bool> {
    f.is_self_reciprocal()
}
