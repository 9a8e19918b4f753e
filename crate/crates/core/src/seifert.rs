//! Seifert matrices and the classical invariants read off from them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmat::{LaurentMatrix, RatMatrix};
use crate::poly::{factor_rational, IntPoly, LaurentPoly};
use crate::rational::{rat, rational_sqrt};
use crate::sigfn::{Angle, SignatureFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Integrality {
    Integral,
    Rational,
}

/// A square rational matrix `A` with `det(A - Aᵀ) ≠ 0`; integral ones also satisfy
/// `det(A - Aᵀ) = ±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    a: RatMatrix,
    integrality: Integrality,
}

impl SeifertMatrix {
    /// Integral when every entry is an integer, rational otherwise.
    pub fn new(a: RatMatrix) -> Result<Self> {
        let integrality = if a.is_integral() {
            Integrality::Integral
        } else {
            Integrality::Rational
        };
        Self::with_integrality(a, integrality)
    }

    pub fn with_integrality(a: RatMatrix, integrality: Integrality) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let d = a.sub(&a.transpose())?.det()?;
        if d.is_zero() {
            return Err(Error::NotAdmissible("det(A - Aᵀ) = 0".into()));
        }
        if integrality == Integrality::Integral {
            if !a.is_integral() {
                return Err(Error::NotAdmissible(
                    "non-integer entry in an integral matrix".into(),
                ));
            }
            if d.abs() != rat(1) {
                return Err(Error::NotAdmissible(format!(
                    "det(A - Aᵀ) = {d}, expected ±1 for an integral Seifert matrix"
                )));
            }
        }
        Ok(SeifertMatrix { a, integrality })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(RatMatrix::from_i64(rows))
    }

    pub fn unknot() -> Self {
        SeifertMatrix {
            a: RatMatrix::empty(),
            integrality: Integrality::Integral,
        }
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.a
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    pub fn integrality(&self) -> Integrality {
        self.integrality
    }

    pub fn is_integral(&self) -> bool {
        self.integrality == Integrality::Integral
    }

    /// `det(A - tAᵀ)`, unit-normalized.
    pub fn alexander(&self) -> LaurentPoly {
        let a = LaurentMatrix::from_rational(&self.a);
        let at = LaurentMatrix::from_rational(&self.a.transpose());
        let d = a
            .sub(&at.scale(&LaurentPoly::t()))
            .and_then(|m| m.det())
            .expect("square by construction");
        d.normalize_unit()
            .expect("admissible matrices have nonzero Alexander polynomial")
    }

    /// The Hermitian form `(1 - t)A + (1 - t⁻¹)Aᵀ`.
    pub fn hermitian_form(&self) -> LaurentMatrix {
        let a = LaurentMatrix::from_rational(&self.a);
        let at = LaurentMatrix::from_rational(&self.a.transpose());
        a.scale(&LaurentPoly::from_terms(&[(0, 1), (1, -1)]))
            .add(&at.scale(&LaurentPoly::from_terms(&[(0, 1), (-1, -1)])))
            .expect("same shape")
    }

    pub fn signature_at(&self, angle: Angle) -> Result<(i64, usize)> {
        crate::numfield::hermitian_signature(&self.hermitian_form(), angle.numer(), angle.denom())
    }

    pub fn signature_function(&self) -> Result<SignatureFunction> {
        let fac = factor_rational(&self.alexander())?;
        let factors: Vec<IntPoly> = fac.factors.into_iter().map(|(f, _)| f).collect();
        SignatureFunction::compute(&self.hermitian_form(), &factors)
    }

    /// `Δ(-1)` as an integer; integral matrices only.
    fn delta_at_minus_one(&self, what: &'static str) -> Result<BigInt> {
        if !self.is_integral() {
            return Err(Error::RequiresIntegral(what));
        }
        let v = self.alexander().eval_rational(&rat(-1))?;
        Ok(v.to_integer())
    }

    /// 0 if `Δ(-1) ≡ ±1 (mod 8)`, else 1.
    pub fn arf(&self) -> Result<u8> {
        let d = self.delta_at_minus_one("the Arf invariant")?;
        let r = d.mod_floor(&BigInt::from(8));
        Ok(if r == BigInt::one() || r == BigInt::from(7) {
            0
        } else {
            1
        })
    }

    /// `|Δ(-1)|`.
    pub fn determinant_invariant(&self) -> Result<BigInt> {
        Ok(self.delta_at_minus_one("the knot determinant")?.abs())
    }

    pub fn connected_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let integrality = if self.is_integral() && other.is_integral() {
            Integrality::Integral
        } else {
            Integrality::Rational
        };
        SeifertMatrix {
            a: self.a.block_sum(&other.a),
            integrality,
        }
    }

    /// `-Aᵀ`.
    pub fn mirror(&self) -> SeifertMatrix {
        SeifertMatrix {
            a: self.a.transpose().neg(),
            integrality: self.integrality,
        }
    }
}

/// Outcome of the Fox–Milnor factorization test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoxMilnor {
    pub pass: bool,
    pub witness: Option<LaurentPoly>,
}

/// `q*`: the reciprocal, made primitive with positive leading coefficient.
fn reciprocal_partner(f: &IntPoly) -> IntPoly {
    f.reverse().primitive()
}

/// Tests whether `Δ ≐ f(t)f(t⁻¹)` is possible from the factorization of `Δ` over Q.
pub fn fox_milnor(delta: &LaurentPoly) -> Result<FoxMilnor> {
    let fac = factor_rational(delta)?;
    let mult = |g: &IntPoly| {
        fac.factors
            .iter()
            .find(|(h, _)| h == g)
            .map_or(0, |(_, m)| *m)
    };
    let mut witness = LaurentPoly::one();
    for (f, m) in &fac.factors {
        let partner = reciprocal_partner(f);
        if partner == *f {
            if m % 2 == 1 {
                return Ok(FoxMilnor {
                    pass: false,
                    witness: None,
                });
            }
            witness = &witness * &LaurentPoly::from_int_poly(f).pow(m / 2);
            continue;
        }
        if mult(&partner) != *m {
            return Ok(FoxMilnor {
                pass: false,
                witness: None,
            });
        }
        let (lf, lp) = (f.leading().abs(), partner.leading().abs());
        let chosen = lf > lp || (lf == lp && f.canonical_cmp(&partner).is_lt());
        if chosen {
            witness = &witness * &LaurentPoly::from_int_poly(f).pow(*m);
        }
    }
    if let Some(root) = rational_sqrt(&fac.content.abs()) {
        witness = witness.scale(&root);
    }
    Ok(FoxMilnor {
        pass: true,
        witness: Some(witness),
    })
}
