//! Branched covers and companionship: Fox's order formula, the covering Seifert matrix and
//! the cable and satellite presentation transforms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmat::{LaurentMatrix, RatMatrix};
use crate::poly::{resultant, IntPoly, LaurentPoly};
use crate::rational::rat;
use crate::seifert::{Integrality, SeifertMatrix};

/// Order of the first homology of a branched cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomologyOrder {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for HomologyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologyOrder::Finite(n) => write!(f, "{n}"),
            HomologyOrder::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// `|Res(Δ, 1 + t + ... + t^(p-1))|`, the order of `H₁` of the `p`-fold branched cover.
pub fn branched_cover_homology_order(delta: &LaurentPoly, p: u64) -> Result<HomologyOrder> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!(
            "cover degree must be at least 2, got {p}"
        )));
    }
    if delta.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !delta.has_integer_coefficients() {
        return Err(Error::RequiresIntegral("the branched cover order"));
    }
    let (c, _, prim) = delta.content_split().expect("nonzero");
    let g = IntPoly::from_i64(&vec![1; p as usize]);
    let r = resultant(&prim, &g) * c.to_integer().pow((p - 1) as u32);
    Ok(if r.is_zero() {
        HomologyOrder::Infinite
    } else {
        HomologyOrder::Finite(r.abs())
    })
}

/// `Ã = A - Aᵀ(Γ^(p-1) - (Γ-I)^(p-1))(Γ^p - (Γ-I)^p)⁻¹Γ` with `Γ = (A - Aᵀ)⁻¹A`, a Seifert
/// matrix for the preimage of the knot in the `p`-fold branched cover. The result is flagged
/// rational.
pub fn covering_seifert_matrix(s: &SeifertMatrix, p: u32) -> Result<SeifertMatrix> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!(
            "cover degree must be at least 2, got {p}"
        )));
    }
    let a = s.matrix();
    let n = a.rows();
    let at = a.transpose();
    let gamma = a.sub(&at)?.inverse()?.mul(a)?;
    let gmi = gamma.sub(&RatMatrix::identity(n))?;
    let m = gamma.pow(p)?.sub(&gmi.pow(p)?)?;
    let m_inv = m
        .inverse()
        .map_err(|_| Error::FormulaHypothesis(format!("Γ^{p} - (Γ - I)^{p} is singular")))?;
    let k = gamma.pow(p - 1)?.sub(&gmi.pow(p - 1)?)?;
    let tilde = a.sub(&at.mul(&k)?.mul(&m_inv)?.mul(&gamma)?)?;
    SeifertMatrix::with_integrality(tilde, Integrality::Rational).map_err(|e| match e {
        Error::NotAdmissible(m) => Error::FormulaHypothesis(format!("covering matrix: {m}")),
        other => other,
    })
}

/// The presentation of the `(n, 1)`-cable: `P(t^n)`.
pub fn cable_presentation(p: &LaurentMatrix, n: i64) -> Result<LaurentMatrix> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!(
            "cable parameter must be positive, got {n}"
        )));
    }
    p.substitute_power(n)
}

/// `P₁(t) ⊕ P₂(t^w)` for a satellite with companion presented by `P₂` and winding number `w`.
/// For `w = 0` the companion block is evaluated at `t = 1`.
pub fn satellite_presentation(
    p1: &LaurentMatrix,
    p2: &LaurentMatrix,
    w: i64,
) -> Result<LaurentMatrix> {
    let companion = if w == 0 {
        p2.try_map(|e| Ok(LaurentPoly::constant(e.eval_rational(&rat(1))?)))?
    } else {
        p2.substitute_power(w)?
    };
    Ok(p1.block_sum(&companion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::NumberField;
    use crate::poly::QPoly;
    use crate::rational::{frac, Rational};
    use crate::testutil::admissible;
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn fin(n: i64) -> HomologyOrder {
        HomologyOrder::Finite(BigInt::from(n))
    }

    fn trefoil() -> SeifertMatrix {
        SeifertMatrix::from_i64(&[&[-1, 1], &[0, -1]]).unwrap()
    }

    /// `∏ Δ(ζ^i)` computed as the norm of `Δ(x)` in `Q(ζ_p)`: the determinant of
    /// multiplication by `Δ(x)` on the power basis.
    fn product_over_roots(delta: &LaurentPoly, p: u64) -> Rational {
        let phi = IntPoly::from_i64(&vec![1; p as usize]);
        let k = NumberField::new(&phi);
        let e = k.embed(delta);
        let d = k.degree();
        let m = RatMatrix::from_fn(d, d, |i, j| k.mul(&e, &QPoly::monomial(rat(1), j)).coeff(i));
        m.det().unwrap()
    }

    #[test]
    fn fox_formula_examples() {
        let tr = lp("t^2 - t + 1");
        assert_eq!(branched_cover_homology_order(&tr, 2).unwrap(), fin(3));
        assert_eq!(branched_cover_homology_order(&tr, 3).unwrap(), fin(4));
        assert_eq!(
            branched_cover_homology_order(&tr, 6).unwrap(),
            HomologyOrder::Infinite
        );
        for p in [2i64, 3, 5] {
            let d0 = lp("t^2 - 3t + 1").substitute_power(p).unwrap();
            assert_eq!(
                branched_cover_homology_order(&d0, p as u64).unwrap(),
                fin(1)
            );
        }
        assert!(branched_cover_homology_order(&tr, 1).is_err());
    }

    #[test]
    fn fox_formula_matches_norm_oracle() {
        for d in [
            "t^2 - t + 1",
            "t^2 - 3t + 1",
            "2t^2 - 5t + 2",
            "t^4 - t^3 + t^2 - t + 1",
            "3t^2 - 7t + 3",
        ] {
            let delta = lp(d);
            for p in [2u64, 3, 5] {
                let norm = product_over_roots(&delta, p).abs();
                let expect = if norm.is_zero() {
                    HomologyOrder::Infinite
                } else {
                    HomologyOrder::Finite(norm.to_integer())
                };
                assert_eq!(
                    branched_cover_homology_order(&delta, p).unwrap(),
                    expect,
                    "{d} p={p}"
                );
                let lifted = delta.substitute_power(p as i64).unwrap();
                assert_eq!(branched_cover_homology_order(&lifted, p).unwrap(), fin(1));
            }
        }
    }

    #[test]
    fn covering_matrix_trefoil() {
        let a = trefoil().matrix().clone();
        let gamma = a
            .sub(&a.transpose())
            .unwrap()
            .inverse()
            .unwrap()
            .mul(&a)
            .unwrap();
        let i = RatMatrix::identity(2);
        assert_eq!(gamma, RatMatrix::from_i64(&[&[0, 1], &[-1, 1]]));
        assert_eq!(gamma.pow(2).unwrap(), gamma.sub(&i).unwrap());
        assert_eq!(gamma.pow(3).unwrap(), i.neg());
        let cov = covering_seifert_matrix(&trefoil(), 3).unwrap();
        let expect =
            RatMatrix::from_rows(vec![vec![rat(0), frac(1, 2)], vec![frac(-1, 2), rat(0)]])
                .unwrap();
        assert_eq!(cov.matrix(), &expect);
        assert_eq!(cov.integrality(), Integrality::Rational);
        assert_eq!(cov.alexander(), lp("1/4 + 1/2*t + 1/4*t^2"));
        assert!(crate::seifert::fox_milnor(&cov.alexander()).unwrap().pass);
        assert!(cov.signature_function().unwrap().is_identically_zero());
        assert_eq!(
            covering_seifert_matrix(&SeifertMatrix::unknot(), 5)
                .unwrap()
                .size(),
            0
        );
    }

    #[test]
    fn covering_matrix_hypothesis_failure() {
        let fe = SeifertMatrix::from_i64(&[&[1, 1], &[0, -1]]).unwrap();
        for p in 2..=7 {
            match covering_seifert_matrix(&fe, p) {
                Ok(c) => {
                    let m = c.matrix();
                    assert!(!m.sub(&m.transpose()).unwrap().det().unwrap().is_zero());
                }
                Err(e) => assert!(matches!(e, Error::FormulaHypothesis(_))),
            }
        }
        // for p = 2 the hypothesis matrix is 2Γ - I, singular when Γ has eigenvalue 1/2
        let a = SeifertMatrix::new(
            RatMatrix::from_rows(vec![vec![frac(1, 2), rat(1)], vec![rat(0), frac(1, 2)]]).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            covering_seifert_matrix(&a, 2),
            Err(Error::FormulaHypothesis(_))
        ));
    }

    #[test]
    fn cable_and_satellite_examples() {
        let p = trefoil().hermitian_form();
        assert_eq!(cable_presentation(&p, 1).unwrap(), p);
        let a = LaurentMatrix::from_rational(trefoil().matrix());
        let at = LaurentMatrix::from_rational(&trefoil().matrix().transpose());
        let alex = a.sub(&at.scale(&LaurentPoly::t())).unwrap();
        let cabled = cable_presentation(&alex, 2).unwrap();
        assert_eq!(
            cabled.det().unwrap().normalize_unit().unwrap(),
            lp("t^4 - t^2 + 1")
        );
        assert_eq!(
            satellite_presentation(&p, &LaurentMatrix::empty(), 3).unwrap(),
            p
        );
        assert_eq!(
            satellite_presentation(&LaurentMatrix::empty(), &p, 1).unwrap(),
            p
        );
        let sat = satellite_presentation(&alex, &alex, 0).unwrap();
        assert!(sat.det().unwrap().associated(&alex.det().unwrap()));
        assert!(cable_presentation(&p, 0).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn covering_matrix_is_admissible(s in admissible(2), p in 2u32..6) {
            if let Ok(c) = covering_seifert_matrix(&s, p) {
                let m = c.matrix();
                prop_assert!(!m.sub(&m.transpose()).unwrap().det().unwrap().is_zero());
            }
        }

        #[test]
        fn cable_composition(s in admissible(2), m in 1i64..4, n in 1i64..4) {
            let p = s.hermitian_form();
            prop_assert_eq!(
                cable_presentation(&cable_presentation(&p, m).unwrap(), n).unwrap(),
                cable_presentation(&p, m * n).unwrap()
            );
            prop_assert_eq!(
                cable_presentation(&p, n).unwrap().det().unwrap(),
                p.det().unwrap().substitute_power(n).unwrap()
            );
        }

        #[test]
        fn satellite_order(s1 in admissible(1), s2 in admissible(1), w in -3i64..4) {
            let (p1, p2) = (s1.hermitian_form(), s2.hermitian_form());
            prop_assume!(w != 0);
            let d = satellite_presentation(&p1, &p2, w).unwrap().det().unwrap();
            let expect = &p1.det().unwrap() * &p2.det().unwrap().substitute_power(w).unwrap();
            prop_assert_eq!(d, expect);
        }

        #[test]
        fn fox_formula_oracle(s in admissible(2), p in prop::sample::select(vec![2u64, 3, 5])) {
            let delta = s.alexander();
            let norm = product_over_roots(&delta, p).abs();
            let got = branched_cover_homology_order(&delta, p).unwrap();
            if norm.is_zero() {
                prop_assert_eq!(got, HomologyOrder::Infinite);
            } else {
                prop_assert_eq!(got, HomologyOrder::Finite(norm.to_integer()));
            }
        }
    }
}
