use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntPoly;

/// The `d`-th cyclotomic polynomial, by exact division of `t^d − 1` by `Φ_e` for proper
/// divisors `e` of `d`.
pub fn cyclotomic(d: u64) -> IntPoly {
    assert!(d >= 1, "cyclotomic index must be positive");
    let mut num = IntPoly::monomial(BigInt::one(), d as usize);
    num = &num - &IntPoly::one();
    for e in divisors(d) {
        if e == d {
            continue;
        }
        num = num
            .div_exact(&cyclotomic(e))
            .expect("cyclotomic polynomials divide t^d - 1");
    }
    num
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|k| n.is_multiple_of(*k)).collect();
    out.sort_unstable();
    out
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `Some((p, k))` when `n = p^k` with `p` prime and `k ≥ 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// `C_k(u)` with `t^k + t^-k = C_k(t + t^-1)`.
pub fn chebyshev_c(k: usize) -> IntPoly {
    let two = IntPoly::from_i64(&[2]);
    let u = IntPoly::x();
    if k == 0 {
        return two;
    }
    let (mut prev, mut cur) = (two, u.clone());
    for _ in 1..k {
        let next = &(&u * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// For a palindromic `p` of even degree `2m`, returns `P` with `p(t) = t^m P(t + t^-1)`.
/// Returns `None` if `p` is not palindromic of even degree.
pub fn palindromic_to_u(p: &IntPoly) -> Option<IntPoly> {
    let n = p.degree()?;
    if n % 2 == 1 || p.reverse() != *p {
        return None;
    }
    let m = n / 2;
    let mut acc = IntPoly::constant(p.coeff(m));
    for k in 1..=m {
        let a = p.coeff(m + k);
        if a.is_zero() {
            continue;
        }
        acc = &acc + &chebyshev_c(k).scale(&a);
    }
    Some(acc)
}

/// Minimal polynomial of `2cos(2π/q)` over Q, for `q ≥ 3`.
pub fn real_cyclotomic(q: u64) -> IntPoly {
    assert!(q >= 3);
    palindromic_to_u(&cyclotomic(q)).expect("cyclotomic polynomials of index >= 3 are palindromic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        // t^6 - 1 = Φ1 Φ2 Φ3 Φ6
        let phi123 = &(&cyclotomic(1) * &cyclotomic(2)) * &cyclotomic(3);
        let t6 = p(&[-1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(t6.div_exact(&phi123), Some(p(&[1, -1, 1])));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
    }

    #[test]
    fn product_over_divisors() {
        for n in 1..=30u64 {
            let prod = divisors(n)
                .into_iter()
                .fold(IntPoly::one(), |acc, d| &acc * &cyclotomic(d));
            let mut expect = IntPoly::monomial(BigInt::one(), n as usize);
            expect = &expect - &IntPoly::one();
            assert_eq!(prod, expect, "n = {n}");
        }
    }

    #[test]
    fn value_at_one() {
        assert_eq!(cyclotomic(9).eval(&rat(1)), rat(3));
        for d in 2..=60u64 {
            let v = cyclotomic(d).eval_int(&BigInt::one());
            match prime_power(d) {
                Some((pr, _)) => assert_eq!(v, BigInt::from(pr), "d = {d}"),
                None => assert_eq!(v, BigInt::one(), "d = {d}"),
            }
        }
    }

    #[test]
    fn u_substitution() {
        // t^2 - 3t + 1 = t (u - 3)
        assert_eq!(palindromic_to_u(&p(&[1, -3, 1])), Some(p(&[-3, 1])));
        assert_eq!(real_cyclotomic(6), p(&[-1, 1]));
        assert_eq!(real_cyclotomic(4), p(&[0, 1]));
        assert_eq!(real_cyclotomic(5), p(&[-1, 1, 1]));
        assert_eq!(palindromic_to_u(&p(&[1, 2])), None);
        assert_eq!(chebyshev_c(3), p(&[0, -3, 0, 1]));
    }

    #[test]
    fn totients() {
        assert_eq!(totient(12), 4);
        assert_eq!(totient(1), 1);
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(12), None);
    }
}
