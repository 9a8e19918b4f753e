//! Hermitian presentations over the Laurent ring, the `φₙ` maps, the `J(p,q)` presentation and
//! the obstruction pipeline for Bing doubles.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactmat::LaurentMatrix;
use crate::numfield::hermitian_signature;
use crate::poly::{cyclotomic, factor_rational, totient, IntPoly, LaurentPoly};
use crate::rational::{is_perfect_square, rat, to_decimal};
use crate::seifert::{fox_milnor, FoxMilnor, SeifertMatrix};
use crate::sigfn::{Angle, SignatureFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientRing {
    Z,
    Z2loc,
    Q,
}

impl CoefficientRing {
    /// The smallest ring containing both.
    pub fn join(self, other: CoefficientRing) -> CoefficientRing {
        self.max(other)
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientRing::Z => "Z",
            CoefficientRing::Z2loc => "Z(2)",
            CoefficientRing::Q => "Q",
        })
    }
}

impl std::str::FromStr for CoefficientRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" => Ok(CoefficientRing::Z),
            "Z(2)" => Ok(CoefficientRing::Z2loc),
            "Q" => Ok(CoefficientRing::Q),
            other => Err(Error::InvalidArgument(format!(
                "unknown coefficient ring `{other}`"
            ))),
        }
    }
}

/// A Hermitian matrix `B(t)`, `B(t)ᵀ = B(t⁻¹)`, with nonzero determinant, presenting a torsion
/// module with a linking pairing. `det B ≐ order · normalizer`, where `order` is the order of
/// the presented module and `normalizer` collects factors introduced by the presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittPresentation {
    b: LaurentMatrix,
    ring: CoefficientRing,
    order: LaurentPoly,
    normalizer: LaurentPoly,
}

impl WittPresentation {
    pub fn new(b: LaurentMatrix, ring: CoefficientRing) -> Result<Self> {
        if !b.is_hermitian() {
            return Err(Error::NotHermitian);
        }
        let d = b.det()?;
        let order = d.normalize_unit().map_err(|_| Error::Singular)?;
        Ok(WittPresentation {
            b,
            ring,
            order,
            normalizer: LaurentPoly::one(),
        })
    }

    /// `B(t) = (1 - t)A + (1 - t⁻¹)Aᵀ`; its determinant is `(1 - t)^n Δ(t)` up to units.
    pub fn from_seifert(s: &SeifertMatrix) -> Self {
        let ring = if s.is_integral() {
            CoefficientRing::Z
        } else {
            CoefficientRing::Q
        };
        let b = s.hermitian_form();
        debug_assert!(b.is_hermitian());
        WittPresentation {
            b,
            ring,
            order: s.alexander(),
            normalizer: LaurentPoly::from_terms(&[(0, 1), (1, -1)]).pow(s.size() as u32),
        }
    }

    pub fn matrix(&self) -> &LaurentMatrix {
        &self.b
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn with_ring(mut self, ring: CoefficientRing) -> Self {
        self.ring = ring;
        self
    }

    pub fn size(&self) -> usize {
        self.b.rows()
    }

    /// Order of the presented module, unit-normalized.
    pub fn order(&self) -> &LaurentPoly {
        &self.order
    }

    pub fn normalizer(&self) -> &LaurentPoly {
        &self.normalizer
    }

    /// `B(t^n)`.
    pub fn phi(&self, n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument(format!(
                "φ needs a positive index, got {n}"
            )));
        }
        Ok(WittPresentation {
            b: self.b.substitute_power(n)?,
            ring: self.ring,
            order: self.order.substitute_power(n)?.normalize_unit()?,
            normalizer: self.normalizer.substitute_power(n)?.normalize_unit()?,
        })
    }

    /// Block sum, realizing addition of Witt classes.
    pub fn witt_sum(&self, other: &WittPresentation) -> Self {
        WittPresentation {
            b: self.b.block_sum(&other.b),
            ring: self.ring.join(other.ring),
            order: (&self.order * &other.order)
                .normalize_unit()
                .expect("nonzero orders"),
            normalizer: (&self.normalizer * &other.normalizer)
                .normalize_unit()
                .expect("nonzero normalizers"),
        }
    }

    /// The additive inverse class, presented by `-B`.
    pub fn neg(&self) -> Self {
        WittPresentation {
            b: self.b.neg(),
            ..self.clone()
        }
    }

    pub fn signature_at(&self, angle: Angle) -> Result<(i64, usize)> {
        hermitian_signature(&self.b, angle.numer(), angle.denom())
    }

    pub fn signature_function(&self) -> Result<SignatureFunction> {
        let mut factors: Vec<IntPoly> = Vec::new();
        for p in [&self.order, &self.normalizer] {
            factors.extend(factor_rational(p)?.factors.into_iter().map(|(f, _)| f));
        }
        SignatureFunction::compute(&self.b, &factors)
    }

    /// Runs every implemented necessary condition for algebraic sliceness on the class.
    pub fn battery(&self) -> Result<ObstructionReport> {
        let alexander = self.order.clone();
        let fm = fox_milnor(&alexander)?;
        let signature = SignatureSummary::from_function(&self.signature_function()?);
        let integral = self.ring != CoefficientRing::Q && alexander.has_integer_coefficients();
        let (arf, determinant) = if integral {
            let v = alexander.eval_rational(&rat(-1))?.to_integer();
            let r = v.mod_floor(&BigInt::from(8));
            let arf = if r == BigInt::one() || r == BigInt::from(7) {
                0
            } else {
                1
            };
            (Some(arf), Some(v.abs()))
        } else {
            (None, None)
        };
        let determinant_is_square = determinant.as_ref().map(is_perfect_square);
        let mut failing = Vec::new();
        if let Some(arc) = signature.first_nonzero() {
            failing.push(Certificate::SignatureFunction {
                value: arc.value,
                sample: arc.sample,
            });
        }
        if !fm.pass {
            failing.push(Certificate::FoxMilnor);
        }
        if arf == Some(1) {
            failing.push(Certificate::Arf);
        }
        if determinant_is_square == Some(false) {
            failing.push(Certificate::DeterminantSquare);
        }
        let verdict = if failing.is_empty() {
            Verdict::NoObstructionFound
        } else {
            Verdict::NotAlgSlice(failing.remove(0))
        };
        Ok(ObstructionReport {
            knot: String::from("K"),
            coefficient_ring: self.ring,
            size: self.size(),
            cyclotomic_factors: cyclotomic_factors(&alexander)?,
            alexander,
            fox_milnor: fm,
            signature,
            arf,
            determinant,
            determinant_is_square,
            verdict,
            secondary_certificates: failing,
            bing: None,
        })
    }
}

/// `φ_p P ⊕ φ_(p+q) P ⊕ φ_q P` for `P` presented by `S`.
pub fn jpq_presentation(s: &SeifertMatrix, p: i64, q: i64) -> Result<WittPresentation> {
    if p < 1 || q < 1 {
        return Err(Error::InvalidArgument(format!(
            "J(p,q) needs p, q ≥ 1, got ({p}, {q})"
        )));
    }
    let base = WittPresentation::from_seifert(s);
    Ok(base
        .phi(p)?
        .witt_sum(&base.phi(p + q)?.witt_sum(&base.phi(q)?)))
}

/// All `d` with `Φ_d | delta`, ascending.
pub fn cyclotomic_factors(delta: &LaurentPoly) -> Result<Vec<u64>> {
    let (_, _, prim) = delta.content_split().ok_or(Error::ZeroPolynomial)?;
    let n = prim.deg() as u64;
    // φ(d) ≥ sqrt(d/2), so d ≤ 2n² covers every candidate
    let bound = 2 * n * n + 2;
    Ok((1..=bound)
        .filter(|&d| totient(d) <= n)
        .filter(|&d| prim.div_exact(&cyclotomic(d)).is_some())
        .collect())
}

/// The battery on the class of a Seifert matrix.
pub fn obstruction_battery(s: &SeifertMatrix) -> Result<ObstructionReport> {
    WittPresentation::from_seifert(s).battery()
}

/// Which necessary condition failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    SignatureFunction { value: i64, sample: Angle },
    FoxMilnor,
    Arf,
    DeterminantSquare,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::SignatureFunction { value, sample } => {
                write!(f, "signature_function (value {value} at angle {sample})")
            }
            Certificate::FoxMilnor => f.write_str("fox_milnor"),
            Certificate::Arf => f.write_str("arf"),
            Certificate::DeterminantSquare => f.write_str("determinant_square"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    NotAlgSlice(Certificate),
    NoObstructionFound,
}

impl Verdict {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, Verdict::NotAlgSlice(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::NotAlgSlice(c) => Some(c),
            Verdict::NoObstructionFound => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotAlgSlice(_) => "NOT_ALG_SLICE",
            Verdict::NoObstructionFound => "NO_OBSTRUCTION_FOUND",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSummary {
    /// Decimal approximations of the arc's `u`-bounds.
    pub u_lo: String,
    pub u_hi: String,
    pub sample: Angle,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpSummary {
    pub u: String,
    pub factor: IntPoly,
    pub nullity: usize,
}

/// Text-representable view of a signature function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureSummary {
    pub arcs: Vec<ArcSummary>,
    pub jumps: Vec<JumpSummary>,
}

pub const DECIMAL_DIGITS: u32 = 6;

impl SignatureSummary {
    pub fn from_function(sf: &SignatureFunction) -> Self {
        let arcs = sf
            .arcs()
            .iter()
            .enumerate()
            .map(|(i, arc)| {
                let (lo, hi) = sf.arc_bounds(i);
                ArcSummary {
                    u_lo: to_decimal(&lo, DECIMAL_DIGITS),
                    u_hi: to_decimal(&hi, DECIMAL_DIGITS),
                    sample: arc.sample,
                    value: arc.value,
                }
            })
            .collect();
        let jumps = sf
            .jump_points()
            .iter()
            .map(|j| JumpSummary {
                u: to_decimal(j.u_approx(), DECIMAL_DIGITS),
                factor: j.factor.clone(),
                nullity: j.nullity,
            })
            .collect();
        SignatureSummary { arcs, jumps }
    }

    pub fn is_identically_zero(&self) -> bool {
        self.arcs.iter().all(|a| a.value == 0)
    }

    pub fn first_nonzero(&self) -> Option<&ArcSummary> {
        self.arcs.iter().find(|a| a.value != 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BingConclusion {
    NotSlice,
    NoObstructionFound,
}

/// Outcome of the Bing-double pipeline and its machinery cross-checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BingAnalysis {
    pub range: u64,
    pub conclusion: BingConclusion,
    pub jpq_checks: usize,
    /// `(p, q, angle)` where the `J(p,q)` signature disagreed with the sum of three signatures.
    pub jpq_mismatches: Vec<(u64, u64, Angle)>,
    pub telescoping_checks: usize,
    /// Values of `q` where `φ_(q-1)` and `φ_(q+1)` had different signature data.
    pub telescoping_violations: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub knot: String,
    pub coefficient_ring: CoefficientRing,
    pub size: usize,
    pub alexander: LaurentPoly,
    pub fox_milnor: FoxMilnor,
    pub signature: SignatureSummary,
    pub arf: Option<u8>,
    pub determinant: Option<BigInt>,
    pub determinant_is_square: Option<bool>,
    pub cyclotomic_factors: Vec<u64>,
    pub verdict: Verdict,
    pub secondary_certificates: Vec<Certificate>,
    pub bing: Option<BingAnalysis>,
}

impl ObstructionReport {
    pub fn named(mut self, name: &str) -> Self {
        self.knot = name.to_string();
        self
    }
}

/// Number of rational angles compared in each `J(p,q)` signature cross-check.
pub const JPQ_SAMPLE_ANGLES: usize = 20;

/// Signature and nullity of a class at `n·θ`, where `ω^n = 1` gives the zero form.
fn shifted_signature(p: &WittPresentation, theta: Angle, n: u64) -> Result<(i64, usize)> {
    match theta.times(n) {
        Some(t) => p.signature_at(t),
        None => Ok((0, p.size())),
    }
}

/// Battery on `S` followed by the `J(p,q)` and telescoping cross-checks for `1 ≤ p, q ≤ range`.
pub fn bing_double_verdict(s: &SeifertMatrix, range: u64) -> Result<ObstructionReport> {
    if !s.is_integral() {
        return Err(Error::RequiresIntegral("the Bing double verdict"));
    }
    let mut report = obstruction_battery(s)?;
    let base = WittPresentation::from_seifert(s);
    let angles = Angle::farey_sequence(JPQ_SAMPLE_ANGLES);

    let mut jpq_checks = 0;
    let mut jpq_mismatches = Vec::new();
    for p in 1..=range {
        for q in 1..=range {
            let j = jpq_presentation(s, p as i64, q as i64)?;
            for &theta in &angles {
                let lhs = j.signature_at(theta)?;
                let mut rhs = (0, 0);
                for n in [p, p + q, q] {
                    let (sg, nl) = shifted_signature(&base, theta, n)?;
                    rhs = (rhs.0 + sg, rhs.1 + nl);
                }
                jpq_checks += 1;
                if lhs != rhs {
                    jpq_mismatches.push((p, q, theta));
                }
            }
        }
    }

    let mut zero_j1 = vec![false; range as usize + 1];
    for q in 1..=range {
        let j = jpq_presentation(s, 1, q as i64)?;
        zero_j1[q as usize] = !j.battery()?.verdict.is_obstructed();
    }
    let mut telescoping_checks = 0;
    let mut telescoping_violations = Vec::new();
    for q in 2..=range {
        if !(zero_j1[q as usize] && zero_j1[q as usize - 1]) {
            continue;
        }
        telescoping_checks += 1;
        let diff = base
            .phi(q as i64 - 1)?
            .witt_sum(&base.phi(q as i64 + 1)?.neg());
        if !diff.signature_function()?.is_identically_zero() {
            telescoping_violations.push(q);
        }
    }

    let conclusion = if report.verdict.is_obstructed() || !telescoping_violations.is_empty() {
        BingConclusion::NotSlice
    } else {
        BingConclusion::NoObstructionFound
    };
    report.bing = Some(BingAnalysis {
        range,
        conclusion,
        jpq_checks,
        jpq_mismatches,
        telescoping_checks,
        telescoping_violations,
    });
    Ok(report)
}
