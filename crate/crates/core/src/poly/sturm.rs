//! Sturm sequences, real root isolation and certified sign evaluation at real algebraic
//! numbers.

use num_traits::{One, Signed, Zero};

use super::IntPoly;
use crate::rational::{rat, Rational};

/// Sturm sequence of a squarefree polynomial, normalized by positive scalars only.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<IntPoly>,
}

impl SturmSequence {
    /// Builds the sequence for the squarefree part of `f`.
    pub fn new(f: &IntPoly) -> Self {
        let f = f.squarefree_part();
        let mut seq = vec![f.clone()];
        if f.deg() == 0 {
            return SturmSequence { seq };
        }
        seq.push(f.derivative().primitive());
        loop {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            if b.deg() == 0 {
                break;
            }
            let mut r = a.pseudo_rem(b);
            let delta = (a.deg() - b.deg() + 1) as u32;
            if b.leading().is_negative() && delta % 2 == 1 {
                r = -&r;
            }
            if r.is_zero() {
                break;
            }
            let c = r.content();
            seq.push((-&r).div_scalar(&c));
        }
        SturmSequence { seq }
    }

    pub fn polynomial(&self) -> &IntPoly {
        &self.seq[0]
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Sign variations at `x`, zeros dropped.
    pub fn variations(&self, x: &Rational) -> usize {
        let mut last = 0;
        let mut count = 0;
        for p in self.seq.iter() {
            let s = p.sign_at(x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations(a) - self.variations(b)
    }

    /// Number of distinct roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b {
            return 0;
        }
        let at_b = usize::from(self.seq[0].sign_at(b) == 0);
        self.count_half_open(a, b) - at_b
    }
}

/// Open interval `(lo, hi)` containing exactly one root of a squarefree polynomial; the
/// polynomial is nonzero with opposite signs at the two endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// A real root of `poly` (squarefree, primitive) isolated by `interval`.
#[derive(Clone, Debug)]
pub struct RealRoot {
    poly: IntPoly,
    interval: RootInterval,
}

impl RealRoot {
    pub fn new(poly: IntPoly, interval: RootInterval) -> Self {
        RealRoot { poly, interval }
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn interval(&self) -> &RootInterval {
        &self.interval
    }

    /// Halves the isolating interval.
    pub fn bisect(&mut self) {
        let RootInterval { lo, hi } = self.interval.clone();
        let mid = (&lo + &hi) / rat(2);
        let s_mid = self.poly.sign_at(&mid);
        if s_mid == 0 {
            let q = (&hi - &lo) / rat(4);
            self.interval = RootInterval {
                lo: &mid - &q,
                hi: &mid + &q,
            };
        } else if s_mid == self.poly.sign_at(&lo) {
            self.interval.lo = mid;
        } else {
            self.interval.hi = mid;
        }
    }

    pub fn refine_to(&mut self, width: &Rational) {
        while &self.interval.width() > width {
            self.bisect();
        }
    }

    /// Midpoint of the current interval.
    pub fn approx(&self) -> Rational {
        (&self.interval.lo + &self.interval.hi) / rat(2)
    }

    /// Certified sign of `g` at this root. Zero is detected exactly through
    /// `gcd(g, poly)`; otherwise the interval is refined until `g` has no root in it.
    pub fn sign_of(&mut self, g: &IntPoly) -> i32 {
        if g.is_zero() {
            return 0;
        }
        if g.deg() == 0 {
            return if g.leading().is_positive() { 1 } else { -1 };
        }
        let h = g.gcd(&self.poly);
        if h.deg() > 0 {
            let sh = SturmSequence::new(&h);
            if sh.count_open(&self.interval.lo, &self.interval.hi) > 0 {
                return 0;
            }
        }
        let sg = SturmSequence::new(g);
        loop {
            let RootInterval { lo, hi } = &self.interval;
            if g.sign_at(lo) != 0 && sg.count_half_open(lo, hi) == 0 {
                return g.sign_at(lo);
            }
            self.bisect();
        }
    }

    /// Compares two real algebraic numbers exactly.
    pub fn cmp_root(&mut self, other: &mut RealRoot) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        // each interval holds at most one root of the gcd, so a shared root in the
        // overlap means both numbers are that root
        let h = self.poly.gcd(&other.poly);
        if h.deg() > 0 && self.sign_of(&h) == 0 && other.sign_of(&h) == 0 {
            let lo = std::cmp::max(&self.interval.lo, &other.interval.lo).clone();
            let hi = std::cmp::min(&self.interval.hi, &other.interval.hi).clone();
            if lo < hi && SturmSequence::new(&h).count_open(&lo, &hi) > 0 {
                return Ordering::Equal;
            }
        }
        loop {
            if self.interval.hi <= other.interval.lo {
                return Ordering::Less;
            }
            if other.interval.hi <= self.interval.lo {
                return Ordering::Greater;
            }
            self.bisect();
            other.bisect();
        }
    }
}

/// Isolates the distinct real roots of `f` in the open interval `(lo, hi)`, sorted ascending.
pub fn sturm_isolate(f: &IntPoly, lo: &Rational, hi: &Rational) -> Vec<RootInterval> {
    assert!(lo < hi, "empty isolation interval");
    let sturm = SturmSequence::new(f);
    let s = sturm.polynomial().clone();
    if s.deg() == 0 {
        return Vec::new();
    }
    let mut a = lo.clone();
    let mut b = hi.clone();
    if s.sign_at(&a) == 0 {
        let mut cand = (&a + &b) / rat(2);
        while s.sign_at(&cand) == 0 || sturm.count_half_open(&a, &cand) > 0 {
            cand = (&a + &cand) / rat(2);
        }
        a = cand;
    }
    if s.sign_at(&b) == 0 {
        let mut cand = (&a + &b) / rat(2);
        while s.sign_at(&cand) == 0 || sturm.count_half_open(&cand, &b) > 1 {
            cand = (&cand + &b) / rat(2);
        }
        b = cand;
    }
    let mut out = Vec::new();
    let mut stack = vec![(a, b)];
    while let Some((a, b)) = stack.pop() {
        let n = sturm.count_half_open(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(RootInterval { lo: a, hi: b });
            continue;
        }
        let mut mid = (&a + &b) / rat(2);
        let mut k = 3;
        while s.sign_at(&mid) == 0 {
            // walk off an exact rational root
            mid = &a + (&b - &a) * Rational::new(1.into(), k.into());
            k += 1;
        }
        stack.push((mid.clone(), b));
        stack.push((a, mid));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Isolated real roots of `f` in `(lo, hi)` as refinable algebraic numbers.
pub fn real_roots(f: &IntPoly, lo: &Rational, hi: &Rational) -> Vec<RealRoot> {
    let sq = f.squarefree_part();
    sturm_isolate(&sq, lo, hi)
        .into_iter()
        .map(|iv| RealRoot::new(sq.clone(), iv))
        .collect()
}

/// Cauchy bound: every real root lies in `(-B, B)`.
pub fn root_bound(f: &IntPoly) -> Rational {
    let lc = Rational::from_integer(f.leading().abs());
    let max = f
        .coeffs()
        .iter()
        .map(|c| Rational::from_integer(c.abs()))
        .max()
        .unwrap_or_else(Rational::zero);
    Rational::one() + max / lc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn sqrt_two() {
        let f = p(&[-2, 0, 1]);
        let roots = sturm_isolate(&f, &rat(0), &rat(3));
        assert_eq!(roots.len(), 1);
        let mut r = RealRoot::new(f, roots[0].clone());
        r.refine_to(&frac(1, 1000));
        let a = r.approx();
        assert!(&a * &a > frac(1998, 1000) && &a * &a < frac(2002, 1000));
    }

    #[test]
    fn no_real_roots() {
        assert!(sturm_isolate(&p(&[1, 0, 1]), &rat(-10), &rat(10)).is_empty());
    }

    #[test]
    fn golden_ratio_pair() {
        let f = p(&[-1, 1, 1]);
        let roots = sturm_isolate(&f, &rat(-2), &rat(2));
        assert_eq!(roots.len(), 2);
        // (-1-√5)/2 ≈ -1.618 and (-1+√5)/2 ≈ 0.618
        assert!(roots[0].hi <= rat(0) && roots[0].lo >= rat(-2));
        assert!(roots[1].lo >= rat(-1));
        for iv in &roots {
            assert_ne!(f.sign_at(&iv.lo), f.sign_at(&iv.hi));
        }
    }

    #[test]
    fn endpoints_that_are_roots_are_excluded() {
        // roots -1, 0, 1; interval (-1, 1) holds only 0
        let f = p(&[0, -1, 0, 1]);
        let roots = sturm_isolate(&f, &rat(-1), &rat(1));
        assert_eq!(roots.len(), 1);
        assert!(roots[0].lo < rat(0) && roots[0].hi > rat(0));
    }

    #[test]
    fn exact_rational_midpoint_roots() {
        // roots 0 and 1/2 and 1 in (-1, 2): bisection hits 1/2 exactly
        let f = &(&p(&[0, 1]) * &p(&[-1, 2])) * &p(&[-1, 1]);
        let roots = sturm_isolate(&f, &rat(-1), &rat(2));
        assert_eq!(roots.len(), 3);
        for iv in &roots {
            assert_ne!(f.sign_at(&iv.lo), 0);
            assert_ne!(f.sign_at(&iv.lo), f.sign_at(&iv.hi));
        }
    }

    #[test]
    fn certified_signs() {
        let f = p(&[-2, 0, 1]);
        let iv = sturm_isolate(&f, &rat(0), &rat(3)).remove(0);
        let mut r = RealRoot::new(f, iv);
        // √2 - 1.4142 > 0, √2 - 1.4143 < 0
        assert_eq!(r.sign_of(&p(&[-14142, 10000])), 1);
        assert_eq!(r.sign_of(&p(&[-14143, 10000])), -1);
        // (t^2 - 2)(t + 5) vanishes at √2
        assert_eq!(r.sign_of(&p(&[-10, -2, 5, 1])), 0);
    }

    #[test]
    fn compare_roots() {
        let f = p(&[-2, 0, 1]);
        let g = p(&[-3, 0, 1]);
        let mut a = real_roots(&f, &rat(0), &rat(5)).remove(0);
        let mut b = real_roots(&g, &rat(0), &rat(5)).remove(0);
        assert_eq!(a.cmp_root(&mut b), std::cmp::Ordering::Less);
        let h = &f * &p(&[1, 1]);
        let mut c = real_roots(&h, &rat(0), &rat(5)).remove(0);
        assert_eq!(a.cmp_root(&mut c), std::cmp::Ordering::Equal);
    }
}
