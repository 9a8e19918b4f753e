//! Rational angles on the unit circle and the Levine–Tristram signature function as a
//! step function on `u = t + t⁻¹ ∈ (-2, 2)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactmat::LaurentMatrix;
use crate::numfield::{hermitian_signature, rank_at_root, two_cos};
use crate::poly::{palindromic_to_u, real_roots, IntPoly, RealRoot};
use crate::rational::{rat, Rational};

/// A reduced fraction `a/q` with `0 < a/q < 1`, standing for `ω = e^{2πi a/q}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Angle {
    a: u64,
    q: u64,
}

impl Angle {
    pub fn new(a: u64, q: u64) -> Result<Self> {
        if q == 0 || a == 0 || a >= q {
            return Err(Error::AngleOutOfRange(format!("{a}/{q}")));
        }
        let g = a.gcd(&q);
        Ok(Angle { a: a / g, q: q / g })
    }

    pub fn numer(&self) -> u64 {
        self.a
    }

    pub fn denom(&self) -> u64 {
        self.q
    }

    /// `n·a/q mod 1`, or `None` when that is `0` (ω maps to 1).
    pub fn times(&self, n: u64) -> Option<Angle> {
        let a = ((self.a as u128 * n as u128) % self.q as u128) as u64;
        (a != 0).then(|| Angle::new(a, self.q).expect("nonzero residue"))
    }

    pub fn conjugate(&self) -> Angle {
        Angle {
            a: self.q - self.a,
            q: self.q,
        }
    }

    /// The first `count` angles in `(0, 1)` ordered by denominator, then numerator.
    pub fn farey_sequence(count: usize) -> Vec<Angle> {
        (2u64..)
            .flat_map(|q| {
                (1..q)
                    .filter(move |a| a.gcd(&q) == 1)
                    .map(move |a| Angle { a, q })
            })
            .take(count)
            .collect()
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.q)
    }
}

impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::AngleOutOfRange(s.to_string());
        let (a, q) = s.trim().split_once('/').ok_or_else(bad)?;
        Angle::new(
            a.trim().parse().map_err(|_| bad())?,
            q.trim().parse().map_err(|_| bad())?,
        )
    }
}

/// A root of the order on the upper unit semicircle.
#[derive(Clone, Debug)]
pub struct JumpPoint {
    /// Irreducible self-reciprocal factor of the order vanishing here.
    pub factor: IntPoly,
    /// The location as a root of the factor's `u`-polynomial.
    pub u: RealRoot,
    /// Kernel dimension of the form at this point.
    pub nullity: usize,
    approx: Rational,
}

impl JumpPoint {
    /// Rational approximation of `u` within `10⁻¹²`.
    pub fn u_approx(&self) -> &Rational {
        &self.approx
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub sample: Angle,
    pub value: i64,
}

/// Step function on the upper semicircle. Arcs are listed by increasing angle: arc 0 is
/// adjacent to `ω = 1` (`u = 2`) and arc `i` lies between jump points `i - 1` and `i`.
#[derive(Clone, Debug)]
pub struct SignatureFunction {
    jumps: Vec<JumpPoint>,
    arcs: Vec<Arc>,
}

enum Position {
    InArc(usize),
    AtJump(usize),
}

impl SignatureFunction {
    /// Builds the signature function of a Hermitian presentation `b`. `factors` must contain
    /// every irreducible factor of `det b` (extra factors are harmless).
    pub fn compute(b: &LaurentMatrix, factors: &[IntPoly]) -> Result<Self> {
        let n = b.rows();
        let mut lambdas: Vec<IntPoly> = Vec::new();
        for f in factors {
            let f = f.primitive();
            if f.deg() >= 2 && f.reverse() == f && !lambdas.contains(&f) {
                lambdas.push(f);
            }
        }
        let mut jumps: Vec<JumpPoint> = Vec::new();
        for lambda in lambdas {
            let psi = palindromic_to_u(&lambda)
                .ok_or_else(|| Error::Invariant("self-reciprocal factor of odd degree".into()))?;
            let roots = real_roots(&psi, &rat(-2), &rat(2));
            if roots.is_empty() {
                continue;
            }
            let nullity = n - rank_at_root(b, &lambda);
            for mut u in roots {
                u.refine_to(&Rational::new(1.into(), 10u64.pow(12).into()));
                let approx = u.approx();
                jumps.push(JumpPoint {
                    factor: lambda.clone(),
                    u,
                    nullity,
                    approx,
                });
            }
        }
        // descending u is ascending angle
        let mut sorted: Vec<JumpPoint> = Vec::with_capacity(jumps.len());
        for mut j in jumps {
            let mut at = sorted.len();
            for (i, s) in sorted.iter_mut().enumerate() {
                if j.u.cmp_root(&mut s.u) == Ordering::Greater {
                    at = i;
                    break;
                }
            }
            sorted.insert(at, j);
        }
        let mut sf = SignatureFunction {
            jumps: sorted,
            arcs: Vec::new(),
        };
        for i in 0..=sf.jumps.len() {
            let arc = sf.sample_arc(b, i)?;
            sf.arcs.push(arc);
        }
        Ok(sf)
    }

    fn position(&mut self, angle: Angle) -> Position {
        let Some(mut u) = two_cos(angle.a, angle.q) else {
            return Position::InArc(self.jumps.len());
        };
        for (j, jp) in self.jumps.iter_mut().enumerate() {
            match u.cmp_root(&mut jp.u) {
                Ordering::Greater => return Position::InArc(j),
                Ordering::Equal => return Position::AtJump(j),
                Ordering::Less => {}
            }
        }
        Position::InArc(self.jumps.len())
    }

    /// Finds a rational angle inside arc `i` by a Stern–Brocot search on `(0, 1/2]`.
    fn sample_arc(&mut self, b: &LaurentMatrix, i: usize) -> Result<Arc> {
        if i == self.jumps.len() {
            let half = Angle { a: 1, q: 2 };
            let (value, nullity) = hermitian_signature(b, 1, 2)?;
            if nullity == 0 {
                return Ok(Arc {
                    sample: half,
                    value,
                });
            }
        }
        let (mut l, mut r) = ((0u64, 1u64), (1u64, 2u64));
        loop {
            let m = Angle {
                a: l.0 + r.0,
                q: l.1 + r.1,
            };
            match self.position(m) {
                Position::InArc(j) if j == i => {
                    let (value, nullity) = hermitian_signature(b, m.a, m.q)?;
                    if nullity == 0 {
                        return Ok(Arc { sample: m, value });
                    }
                    r = (m.a, m.q);
                }
                Position::InArc(j) if j > i => r = (m.a, m.q),
                Position::InArc(_) => l = (m.a, m.q),
                Position::AtJump(j) if i <= j => r = (m.a, m.q),
                Position::AtJump(_) => l = (m.a, m.q),
            }
        }
    }

    pub fn jump_points(&self) -> &[JumpPoint] {
        &self.jumps
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn values(&self) -> Vec<i64> {
        self.arcs.iter().map(|a| a.value).collect()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.arcs.iter().all(|a| a.value == 0)
    }

    /// First arc with a nonzero value.
    pub fn first_nonzero(&self) -> Option<&Arc> {
        self.arcs.iter().find(|a| a.value != 0)
    }

    /// Approximate `u` bounds `(lo, hi)` of arc `i`.
    pub fn arc_bounds(&self, i: usize) -> (Rational, Rational) {
        let hi = if i == 0 {
            rat(2)
        } else {
            self.jumps[i - 1].approx.clone()
        };
        let lo = self.jumps.get(i).map_or(rat(-2), |j| j.approx.clone());
        (lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::RatMatrix;
    use crate::poly::{cyclotomic, LaurentPoly};

    fn form(a: &RatMatrix) -> LaurentMatrix {
        let la = LaurentMatrix::from_rational(a);
        let lat = LaurentMatrix::from_rational(&a.transpose());
        let s: LaurentPoly = "1 - t".parse().unwrap();
        let si: LaurentPoly = "1 - t^-1".parse().unwrap();
        la.scale(&s).add(&lat.scale(&si)).unwrap()
    }

    #[test]
    fn angles() {
        assert_eq!(Angle::new(2, 4).unwrap(), Angle::new(1, 2).unwrap());
        assert!(Angle::new(0, 3).is_err());
        assert!(Angle::new(3, 3).is_err());
        assert_eq!(Angle::new(1, 3).unwrap().times(3), None);
        assert_eq!(
            Angle::new(1, 5).unwrap().times(3),
            Some(Angle::new(3, 5).unwrap())
        );
        let f: Vec<String> = Angle::farey_sequence(6)
            .iter()
            .map(|a| a.to_string())
            .collect();
        assert_eq!(f, ["1/2", "1/3", "2/3", "1/4", "3/4", "1/5"]);
        assert_eq!("3/7".parse::<Angle>().unwrap(), Angle::new(3, 7).unwrap());
    }

    #[test]
    fn trefoil_function() {
        let b = form(&RatMatrix::from_i64(&[&[-1, 1], &[0, -1]]));
        let sf =
            SignatureFunction::compute(&b, &[IntPoly::from_i64(&[-1, 1]), cyclotomic(6)]).unwrap();
        assert_eq!(sf.values(), vec![0, -2]);
        assert_eq!(sf.jump_points().len(), 1);
        assert_eq!(sf.jump_points()[0].nullity, 1);
        assert_eq!(sf.arcs()[1].sample, Angle::new(1, 2).unwrap());
        let (lo, hi) = sf.arc_bounds(0);
        assert_eq!((lo, hi), (rat(1), rat(2)));
    }

    #[test]
    fn empty_and_jumpless() {
        let sf = SignatureFunction::compute(&LaurentMatrix::empty(), &[]).unwrap();
        assert_eq!(sf.values(), vec![0]);
        let b = form(&RatMatrix::from_i64(&[&[1, 1], &[0, -1]]));
        let sf = SignatureFunction::compute(&b, &[IntPoly::from_i64(&[1, -3, 1])]).unwrap();
        assert_eq!(sf.values(), vec![0]);
    }

    #[test]
    fn many_roots_sampled_in_order() {
        // torus knot T(2,5): Δ = Φ10, roots at angles 1/10 and 3/10
        let a = RatMatrix::from_fn(4, 4, |i, j| {
            if i == j {
                rat(-1)
            } else if j == i + 1 {
                rat(1)
            } else {
                rat(0)
            }
        });
        let b = form(&a);
        let sf = SignatureFunction::compute(&b, &[cyclotomic(10)]).unwrap();
        assert_eq!(sf.jump_points().len(), 2);
        assert_eq!(sf.values(), vec![0, -2, -4]);
        for arc in sf.arcs() {
            assert_eq!(
                hermitian_signature(&b, arc.sample.numer(), arc.sample.denom()).unwrap(),
                (arc.value, 0)
            );
        }
    }
}
