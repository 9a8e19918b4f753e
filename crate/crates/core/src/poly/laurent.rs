use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntPoly, QPoly};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Laurent polynomial in `t` with rational coefficients.
///
/// Stored sparsely; zero coefficients are never kept, so the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    /// Builds from `(exponent, integer coefficient)` pairs.
    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        terms.iter().fold(Self::zero(), |acc, &(e, c)| {
            &acc + &Self::monomial(Rational::from_integer(BigInt::from(c)), e)
        })
    }

    pub fn from_int_poly(p: &IntPoly) -> Self {
        Self::from_int_poly_shifted(p, 0)
    }

    pub fn from_int_poly_shifted(p: &IntPoly, shift: i64) -> Self {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 + shift, Rational::from_integer(c.clone())))
            .collect();
        LaurentPoly { terms }
    }

    pub fn from_qpoly(p: &QPoly) -> Self {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, c.clone()))
            .collect();
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max − min` exponent; zero for the zero polynomial.
    pub fn span(&self) -> u64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (hi - lo) as u64,
            _ => 0,
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, a)| (e + k, a.clone())).collect(),
        }
    }

    /// `f(t^n)` for nonzero `n`; `n = −1` gives `f(t⁻¹)`.
    pub fn substitute_power(&self, n: i64) -> Result<LaurentPoly> {
        if n == 0 {
            return Err(Error::ZeroExponent);
        }
        Ok(LaurentPoly {
            terms: self.terms.iter().map(|(e, a)| (e * n, a.clone())).collect(),
        })
    }

    /// `f(t⁻¹)`.
    pub fn reciprocal(&self) -> LaurentPoly {
        self.substitute_power(-1).expect("nonzero exponent")
    }

    /// Canonical representative of the class of `f` modulo units `±t^k`:
    /// lowest exponent 0 with a positive coefficient there.
    pub fn normalize_unit(&self) -> Result<LaurentPoly> {
        let lo = self.min_exp().ok_or(Error::ZeroPolynomial)?;
        let shifted = self.shift(-lo);
        if shifted.coeff(0).is_negative() {
            Ok(-&shifted)
        } else {
            Ok(shifted)
        }
    }

    /// Equality up to multiplication by `±t^k`.
    pub fn associated(&self, other: &LaurentPoly) -> bool {
        match (self.normalize_unit(), other.normalize_unit()) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    /// Equality up to multiplication by `c·t^k` for a nonzero rational `c`.
    pub fn associated_over_q(&self, other: &LaurentPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let a = self.shift(-self.min_exp().unwrap());
        let b = other.shift(-other.min_exp().unwrap());
        let ratio = b.coeff(0) / a.coeff(0);
        a.scale(&ratio) == b
    }

    pub fn is_self_reciprocal(&self) -> Result<bool> {
        Ok(self.normalize_unit()? == self.reciprocal().normalize_unit()?)
    }

    /// Exact value `f(r)`; `r = 0` is rejected.
    pub fn eval_rational(&self, r: &Rational) -> Result<Rational> {
        if r.is_zero() {
            if self.min_exp().is_some_and(|e| e < 0) {
                return Err(Error::EvalAtZero);
            }
            return Ok(self.coeff(0));
        }
        let mut acc = Rational::zero();
        for (e, c) in self.terms.iter() {
            acc += c * pow_rational(r, *e);
        }
        Ok(acc)
    }

    /// Decomposes `f = c · t^k · p` with `p` primitive over Z with positive leading coefficient.
    pub fn content_split(&self) -> Option<(Rational, i64, IntPoly)> {
        let lo = self.min_exp()?;
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let hi = self.max_exp().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize + 1];
        for (e, c) in self.terms.iter() {
            coeffs[(e - lo) as usize] = (c * Rational::from_integer(den.clone())).to_integer();
        }
        let ip = IntPoly::new(coeffs);
        let prim = ip.primitive();
        let mut content = ip.content();
        if ip.leading().is_negative() {
            content = -content;
        }
        Some((Rational::new(content, den), lo, prim))
    }

    /// Ordinary polynomial `t^(-min) f` with rational coefficients; zero maps to zero.
    pub fn to_qpoly_shifted(&self) -> (QPoly, i64) {
        let Some(lo) = self.min_exp() else {
            return (QPoly::zero(), 0);
        };
        let hi = self.max_exp().unwrap();
        let mut v = vec![Rational::zero(); (hi - lo) as usize + 1];
        for (e, c) in self.terms.iter() {
            v[(e - lo) as usize] = c.clone();
        }
        (QPoly::new(v), lo)
    }

    /// Exact division in `Q[t, t⁻¹]`; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (a, la) = self.to_qpoly_shifted();
        let (b, lb) = d.to_qpoly_shifted();
        let (q, r) = a.divrem(&b);
        if !r.is_zero() {
            return None;
        }
        Some(Self::from_qpoly(&q).shift(la - lb))
    }

    pub fn pow(&self, mut e: u32) -> LaurentPoly {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }
}

pub(crate) fn pow_rational(r: &Rational, e: i64) -> Rational {
    let base = if e < 0 { r.recip() } else { r.clone() };
    num_traits::pow::pow(base, e.unsigned_abs() as usize)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (e, c) in rhs.terms.iter() {
            let entry = terms.entry(*e).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        LaurentPoly { terms }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut terms: BTreeMap<i64, Rational> = BTreeMap::new();
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in rhs.terms.iter() {
                *terms.entry(ea + eb).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::format_terms(
            self.terms.iter().rev().map(|(e, c)| (*e, c)),
        ))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_laurent(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&lp("t + 1") * &lp("t - 1"), lp("t^2 - 1"));
        assert_eq!(&lp("t^3 - 5") + &LaurentPoly::zero(), lp("t^3 - 5"));
        assert_eq!(&lp("t^2 - t + 1") * &lp("t + 1"), lp("t^3 + 1"));
    }

    #[test]
    fn substitution_examples() {
        let f = lp("t^2 - t + 1");
        assert_eq!(f.substitute_power(2).unwrap(), lp("t^4 - t^2 + 1"));
        let g = lp("t^2 - 3t + 1");
        assert_eq!(g.substitute_power(-1).unwrap(), lp("t^-2 - 3t^-1 + 1"));
        let h = lp("t^3 + t - 5");
        let nested = h.substitute_power(2).unwrap().substitute_power(3).unwrap();
        // direct expansion of h(t^6)
        assert_eq!(nested, lp("t^18 + t^6 - 5"));
        assert_eq!(f.substitute_power(0), Err(Error::ZeroExponent));
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(
            lp("-t^-1 + 3 - t").normalize_unit().unwrap(),
            lp("t^2 - 3t + 1")
        );
        assert_eq!(lp("t^5").normalize_unit().unwrap(), LaurentPoly::one());
        let d = lp("t^2 - 3t + 1");
        assert_eq!(
            d.normalize_unit().unwrap(),
            d.reciprocal().normalize_unit().unwrap()
        );
        assert_eq!(
            LaurentPoly::zero().normalize_unit(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(lp("t^2 - t + 1").eval_rational(&rat(-1)).unwrap(), rat(3));
        assert_eq!(lp("t^2 - 3t + 1").eval_rational(&rat(1)).unwrap(), rat(-1));
        assert_eq!(lp("t^-1").eval_rational(&rat(0)), Err(Error::EvalAtZero));
    }

    #[test]
    fn self_reciprocity() {
        assert!(lp("t^2 - 3t + 1").is_self_reciprocal().unwrap());
        assert!(!lp("t - 2").is_self_reciprocal().unwrap());
    }

    #[test]
    fn exact_division() {
        let a = lp("t^-1 + 2 + t");
        assert_eq!(a.exact_div(&lp("1 + t")), Some(lp("t^-1 + 1")));
        assert_eq!(a.exact_div(&lp("t - 2")), None);
    }

    fn small_laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..5, -5i64..6), 1..6)
            .prop_map(|ts| LaurentPoly::from_terms(&ts))
            .prop_filter("nonzero", |p| !p.is_zero())
    }

    proptest! {
        #[test]
        fn normalize_is_multiplicative(f in small_laurent(), g in small_laurent()) {
            let lhs = (&f * &g).normalize_unit().unwrap();
            let rhs = (&f.normalize_unit().unwrap() * &g.normalize_unit().unwrap())
                .normalize_unit()
                .unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn substitution_composes(f in small_laurent(), m in -3i64..4, n in -3i64..4) {
            prop_assume!(m != 0 && n != 0);
            let lhs = f.substitute_power(n).unwrap().substitute_power(m).unwrap();
            prop_assert_eq!(lhs, f.substitute_power(m * n).unwrap());
        }

        #[test]
        fn text_round_trip(f in small_laurent()) {
            let back: LaurentPoly = f.to_string().parse().unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
