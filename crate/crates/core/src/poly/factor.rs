//! Factorization over the rationals: squarefree decomposition, factorization modulo a
//! prime, Hensel lifting and recombination of the lifted factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::modp::{Fp, FpPoly};
use super::{IntPoly, LaurentPoly, QPoly};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `f = content · t^shift · ∏ factor^multiplicity`, factors primitive and irreducible over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: Rational,
    pub shift: i64,
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    /// Multiplies everything back out.
    pub fn expand(&self) -> LaurentPoly {
        let prod = self
            .factors
            .iter()
            .fold(IntPoly::one(), |acc, (f, m)| &acc * &f.pow(*m));
        LaurentPoly::from_int_poly_shifted(&prod, self.shift).scale(&self.content)
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factors a nonzero Laurent polynomial over Q into primitive integer irreducibles.
pub fn factor_rational(f: &LaurentPoly) -> Result<Factorization> {
    let (content, shift, prim) = f.content_split().ok_or(Error::ZeroPolynomial)?;
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&prim) {
        for g in factor_squarefree(&part) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization {
        content,
        shift,
        factors,
    })
}

/// Yun's algorithm on a primitive polynomial; returns primitive squarefree parts with
/// their multiplicities (parts equal to 1 are omitted).
pub fn squarefree_decomposition(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let fq = QPoly::from_int(f);
    let d = QPoly::from_int(&f.derivative());
    let a0 = fq.gcd(&d);
    let mut b = fq.divrem(&a0).0;
    let c = d.divrem(&a0).0;
    let mut dd = &c - &derivative_q(&b);
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&dd);
        let b_next = b.divrem(&a).0;
        let c_next = dd.divrem(&a).0;
        dd = &c_next - &derivative_q(&b_next);
        if a.deg() > 0 {
            out.push((a.to_int_primitive(), i));
        }
        b = b_next;
        i += 1;
    }
    out
}

fn derivative_q(p: &QPoly) -> QPoly {
    QPoly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

const SMALL_PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

/// Number of candidate primes compared before committing to the one with fewest factors.
const PRIME_TRIALS: usize = 5;

/// Irreducible factors of a primitive squarefree polynomial with nonzero constant term.
pub fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let f = f.primitive();
    let n = f.deg();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![f];
    }
    let lc = f.leading();
    let mut best: Option<(Fp, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES.iter() {
        let fp = Fp::new(p);
        if fp.reduce_i(&lc) == 0 {
            continue;
        }
        let fbar: FpPoly = f.coeffs().iter().map(|c| fp.reduce_i(c)).collect();
        let g = fp.gcd(&fbar, &fp.derivative(&fbar));
        if g.len() > 1 {
            continue;
        }
        let parts = fp.factor_squarefree(&fp.monic(&fbar), 0x5eed);
        tried += 1;
        if best.as_ref().is_none_or(|(_, b)| parts.len() < b.len()) {
            best = Some((fp, parts));
        }
        if tried >= PRIME_TRIALS || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (fp, modular) = best.expect("some small prime keeps the polynomial squarefree");
    if modular.len() == 1 {
        return vec![f];
    }

    // p^k must exceed twice |lc| times a bound on factor coefficients.
    let bound = {
        let norm = f.norm2_squared().sqrt() + BigInt::one();
        BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm
    };
    let p = BigInt::from(fp.p);
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    let lifted = hensel_lift(&f, &modular, fp, k);
    recombine(f, lifted, &pk)
}

fn to_fp(fp: Fp, a: &IntPoly) -> FpPoly {
    let mut v: FpPoly = a.coeffs().iter().map(|c| fp.reduce_i(c)).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn from_fp(a: &[u64]) -> IntPoly {
    IntPoly::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

/// Coefficients reduced into `[0, m)`.
fn reduce(a: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(a.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Coefficients reduced into `(-m/2, m/2]`.
fn reduce_symmetric(a: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / 2;
    IntPoly::new(
        a.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Lifts `f ≡ lc(f) ∏ factors (mod p)` to a factorization modulo `p^k`; lifted factors are monic.
fn hensel_lift(f: &IntPoly, factors: &[FpPoly], fp: Fp, k: u32) -> Vec<IntPoly> {
    let pk = BigInt::from(fp.p).pow(k);
    if factors.len() == 1 {
        let lc = f.leading();
        let inv = lc
            .modinv(&pk)
            .expect("leading coefficient is a unit modulo p^k");
        return vec![reduce(&f.scale(&inv), &pk)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let g0 = left.iter().fold(vec![1u64], |acc, g| fp.mul(&acc, g));
    let h0 = right
        .iter()
        .fold(vec![fp.reduce_i(&f.leading())], |acc, g| fp.mul(&acc, g));
    let (g, h) = lift_two(f, &g0, &h0, fp, k);
    let mut out = hensel_lift(&g, left, fp, k);
    out.extend(hensel_lift(&h, right, fp, k));
    out
}

/// Linear Hensel lifting of `f ≡ g h (mod p)` with `g` monic.
fn lift_two(f: &IntPoly, g0: &[u64], h0: &[u64], fp: Fp, k: u32) -> (IntPoly, IntPoly) {
    let (one, s, t) = fp.ext_gcd(g0, h0);
    debug_assert_eq!(one, vec![1]);
    let p = BigInt::from(fp.p);
    let mut g = from_fp(g0);
    let mut h = from_fp(h0);
    let mut pj = p.clone();
    for _ in 1..k {
        let pj1 = &pj * &p;
        let diff = reduce(&(f - &(&g * &h)), &pj1);
        let e = to_fp(fp, &diff.div_scalar(&pj));
        if !e.is_empty() {
            let (quot, dg) = fp.divrem(&fp.mul(&t, &e), g0);
            let dh = fp.add(&fp.mul(&s, &e), &fp.mul(&quot, h0));
            g = &g + &from_fp(&dg).scale(&pj);
            h = &h + &from_fp(&dh).scale(&pj);
        }
        pj = pj1;
    }
    (reduce(&g, &pj), reduce(&h, &pj))
}

fn recombine(mut f: IntPoly, mut lifted: Vec<IntPoly>, pk: &BigInt) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        for subset in Combinations::new(lifted.len(), size) {
            let lc = f.leading();
            let prod = subset
                .iter()
                .fold(IntPoly::constant(lc.clone()), |acc, &i| {
                    reduce(&(&acc * &lifted[i]), pk)
                });
            let cand = reduce_symmetric(&prod, pk).primitive();
            if cand.deg() == 0 {
                continue;
            }
            // cheap constant-term screen before the full division
            if !(&lc * f.coeff(0)).is_multiple_of(&cand.coeff(0)) {
                continue;
            }
            if let Some(q) = f.div_exact(&cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                f = q.primitive();
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if f.deg() > 0 {
        out.push(f.primitive());
    }
    out
}

/// Index subsets of a fixed size in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let cur = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::cyclotomic;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn stevedore_polynomial_splits() {
        let fac = factor_rational(&lp("2t^2 - 5t + 2")).unwrap();
        assert_eq!(fac.factors, vec![(p(&[-2, 1]), 1), (p(&[-1, 2]), 1)]);
        assert_eq!(fac.expand(), lp("2t^2 - 5t + 2"));
    }

    #[test]
    fn irreducible_examples() {
        assert!(factor_rational(&lp("t^2 - t + 1"))
            .unwrap()
            .is_irreducible());
        let f = factor_rational(&lp("t^4 - t^2 + 1")).unwrap();
        assert!(f.is_irreducible());
        assert_eq!(f.factors[0].0, cyclotomic(12));
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime
        let f = p(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree(&f), vec![f.clone()]);
    }

    #[test]
    fn repeated_and_shifted_factors() {
        let f = lp("-3t^-1 + 6 - 3t").scale(&crate::rational::frac(1, 2));
        let fac = factor_rational(&f).unwrap();
        assert_eq!(fac.factors, vec![(p(&[-1, 1]), 2)]);
        assert_eq!(fac.shift, -1);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn t_to_the_n_minus_one() {
        let f = LaurentPoly::from_terms(&[(0, -1), (30, 1)]);
        let fac = factor_rational(&f).unwrap();
        let degs: Vec<usize> = fac.factors.iter().map(|(g, _)| g.deg()).collect();
        // one factor per divisor of 30
        assert_eq!(fac.factors.len(), 8);
        assert_eq!(degs.iter().sum::<usize>(), 30);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn combinations_enumerate_all() {
        assert_eq!(Combinations::new(4, 2).count(), 6);
        assert_eq!(Combinations::new(3, 0).count(), 1);
    }
}
