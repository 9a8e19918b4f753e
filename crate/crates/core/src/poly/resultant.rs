use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use super::IntPoly;

/// Resultant over the integers by the subresultant polynomial remainder sequence.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut s = BigInt::one();
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
    }
    if b.deg() == 0 {
        return s * b.leading().pow(a.deg() as u32);
    }
    let ca = a.content();
    let cb = b.content();
    a = a.div_scalar(&ca);
    b = b.div_scalar(&cb);
    let t = ca.pow(b.deg() as u32) * cb.pow(a.deg() as u32);
    let mut g_ = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = (a.deg() - b.deg()) as u32;
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let denom = &g_ * h.clone().pow(delta);
        b = r.div_scalar(&denom);
        g_ = a.leading();
        h = if delta == 0 {
            h
        } else {
            g_.clone().pow(delta) / h.clone().pow(delta - 1)
        };
        if b.is_zero() {
            return BigInt::zero();
        }
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg() as u32;
    let lb = b.leading();
    let hfinal = if da == 0 {
        h
    } else {
        lb.pow(da) / h.pow(da - 1)
    };
    s * t * hfinal
}
