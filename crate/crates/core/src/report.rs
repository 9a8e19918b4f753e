//! Line-oriented text serialization of obstruction reports, with a reader for the
//! machine-readable fields.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{IntPoly, LaurentPoly};
use crate::seifert::FoxMilnor;
use crate::sigfn::Angle;
use crate::witt::{
    ArcSummary, BingAnalysis, BingConclusion, Certificate, CoefficientRing, JumpSummary,
    ObstructionReport, SignatureSummary, Verdict,
};

pub const SIGNATURE_SECTION: &str = "[signature_function]";
pub const CSV_HEADER: &str = "u_lo,u_hi,signature";
pub const BLANCHFIELD_CONVENTION: &str =
    "B(t) = (1 - t)A + (1 - t^-1)A^T, signatures of B(omega) for omega = exp(2 pi i a/q)";
pub const NOT_SLICE: &str = "B(K) is not slice";
pub const NO_OBSTRUCTION: &str = "no obstruction found";

fn coefficient_class(ring: CoefficientRing) -> &'static str {
    match ring {
        CoefficientRing::Z => "integral class (W_Z)",
        CoefficientRing::Z2loc => "Z(2)-local class (W_Z(2))",
        CoefficientRing::Q => "rational-coefficient class (W_Q)",
    }
}

fn list<T: ToString>(items: &[T], sep: &str) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "n/a".into(), |v| v.to_string())
}

/// Renders a report. The output depends only on the report's contents.
pub fn report_to_string(r: &ObstructionReport) -> String {
    let mut s = String::new();
    let mut kv = |k: &str, v: &str| {
        let _ = writeln!(s, "{k} = {v}");
    };
    kv("knot", &r.knot);
    kv("coefficient_ring", &r.coefficient_ring.to_string());
    kv("coefficient_class", coefficient_class(r.coefficient_ring));
    kv("blanchfield_sign_convention", BLANCHFIELD_CONVENTION);
    kv("size", &r.size.to_string());
    kv("alexander", &r.alexander.to_string());
    kv(
        "fox_milnor",
        if r.fox_milnor.pass { "pass" } else { "fail" },
    );
    kv("fox_milnor_witness", &opt(&r.fox_milnor.witness));
    kv(
        "signature_function",
        if r.signature.is_identically_zero() {
            "identically_zero"
        } else {
            "nonzero"
        },
    );
    let samples: Vec<Angle> = r.signature.arcs.iter().map(|a| a.sample).collect();
    kv("arc_samples", &list(&samples, "; "));
    kv("jump_points", &r.signature.jumps.len().to_string());
    for j in &r.signature.jumps {
        kv("jump", &format!("{} | {} | {}", j.u, j.factor, j.nullity));
    }
    kv("arf", &opt(&r.arf));
    kv("determinant", &opt(&r.determinant));
    kv("determinant_is_square", &opt(&r.determinant_is_square));
    kv("cyclotomic_factors", &list(&r.cyclotomic_factors, ", "));
    kv("verdict", &r.verdict.to_string());
    kv("certificate", &opt(&r.verdict.certificate()));
    kv(
        "secondary_certificates",
        &list(&r.secondary_certificates, "; "),
    );
    if let Some(b) = &r.bing {
        kv("bing_range", &b.range.to_string());
        match b.conclusion {
            BingConclusion::NotSlice => {
                kv("conclusion", NOT_SLICE);
                if let Some(c) = r.verdict.certificate() {
                    kv(
                        "reason",
                        &format!(
                            "K is not algebraically slice ({c}), and if B(K) is slice then K is algebraically slice"
                        ),
                    );
                }
                if !b.telescoping_violations.is_empty() {
                    kv("reason", "telescoping identity for the cable classes fails");
                }
                if r.arf == Some(1) {
                    kv("arf_reason", "Arf(K) = 1, and B(K) slice forces Arf(K) = 0");
                }
            }
            BingConclusion::NoObstructionFound => kv("conclusion", NO_OBSTRUCTION),
        }
        kv("jpq_checks", &b.jpq_checks.to_string());
        let mism: Vec<String> = b
            .jpq_mismatches
            .iter()
            .map(|(p, q, a)| format!("J({p},{q})@{a}"))
            .collect();
        kv("jpq_mismatches", &list(&mism, "; "));
        kv("telescoping_checks", &b.telescoping_checks.to_string());
        kv(
            "telescoping_violations",
            &list(&b.telescoping_violations, ", "),
        );
    }
    s.push('\n');
    s.push_str(SIGNATURE_SECTION);
    s.push('\n');
    s.push_str(CSV_HEADER);
    s.push('\n');
    for a in &r.signature.arcs {
        let _ = writeln!(s, "{},{},{}", a.u_lo, a.u_hi, a.value);
    }
    s
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column: 1,
        message: message.into(),
    }
}

fn parse_int_poly(text: &str, line: usize) -> Result<IntPoly> {
    let p: LaurentPoly = text.parse()?;
    match p.content_split() {
        Some((c, 0, prim)) if c == crate::rational::rat(1) => Ok(prim),
        _ => Err(perr(
            line,
            format!("`{text}` is not a primitive polynomial"),
        )),
    }
}

fn parse_certificate(text: &str, line: usize) -> Result<Certificate> {
    match text {
        "fox_milnor" => return Ok(Certificate::FoxMilnor),
        "arf" => return Ok(Certificate::Arf),
        "determinant_square" => return Ok(Certificate::DeterminantSquare),
        _ => {}
    }
    let inner = text
        .strip_prefix("signature_function (value ")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| perr(line, format!("unknown certificate `{text}`")))?;
    let (v, a) = inner
        .split_once(" at angle ")
        .ok_or_else(|| perr(line, "malformed signature certificate"))?;
    Ok(Certificate::SignatureFunction {
        value: v
            .parse()
            .map_err(|_| perr(line, "malformed signature value"))?,
        sample: a.parse()?,
    })
}

fn parse_opt<T>(v: &str, f: impl FnOnce(&str) -> Option<T>, line: usize) -> Result<Option<T>> {
    if v == "n/a" {
        Ok(None)
    } else {
        f(v).map(Some)
            .ok_or_else(|| perr(line, format!("malformed value `{v}`")))
    }
}

fn parse_list<T>(v: &str, sep: char, f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    if v == "none" {
        return Ok(Vec::new());
    }
    v.split(sep).map(|x| f(x.trim())).collect()
}

fn num<T: std::str::FromStr>(v: &str, line: usize) -> Result<T> {
    v.parse()
        .map_err(|_| perr(line, format!("malformed number `{v}`")))
}

/// Reads a report written by [`report_to_string`]. Descriptive lines derived from other
/// fields are skipped.
pub fn parse_report(text: &str) -> Result<ObstructionReport> {
    let mut knot = None;
    let mut ring = None;
    let mut size = None;
    let mut alexander = None;
    let mut fm_pass = None;
    let mut witness = None;
    let mut samples: Vec<Angle> = Vec::new();
    let mut jumps = Vec::new();
    let mut arf = None;
    let mut determinant = None;
    let mut det_square = None;
    let mut cyclo = Vec::new();
    let mut verdict_obstructed = None;
    let mut certificate = None;
    let mut secondary = Vec::new();
    let mut bing_range: Option<u64> = None;
    let mut conclusion = None;
    let mut jpq_checks = 0;
    let mut jpq_mismatches = Vec::new();
    let mut tele_checks = 0;
    let mut tele_violations = Vec::new();
    let mut csv: Vec<(usize, &str)> = Vec::new();
    let mut in_csv = false;

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        if in_csv {
            if !raw.trim().is_empty() && raw != CSV_HEADER {
                csv.push((ln, raw));
            }
            continue;
        }
        if raw == SIGNATURE_SECTION {
            in_csv = true;
            continue;
        }
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let (k, v) = raw
            .split_once(" = ")
            .ok_or_else(|| perr(ln, "expected `key = value`"))?;
        match k {
            "knot" => knot = Some(v.to_string()),
            "coefficient_ring" => ring = Some(v.parse::<CoefficientRing>()?),
            "size" => size = Some(num::<usize>(v, ln)?),
            "alexander" => alexander = Some(v.parse::<LaurentPoly>()?),
            "fox_milnor" => {
                fm_pass = Some(match v {
                    "pass" => true,
                    "fail" => false,
                    _ => return Err(perr(ln, "fox_milnor must be pass or fail")),
                })
            }
            "fox_milnor_witness" => {
                witness = Some(if v == "n/a" {
                    None
                } else {
                    Some(v.parse::<LaurentPoly>()?)
                })
            }
            "arc_samples" => samples = parse_list(v, ';', |x| x.parse::<Angle>())?,
            "jump" => {
                let parts: Vec<&str> = v.split(" | ").collect();
                if parts.len() != 3 {
                    return Err(perr(ln, "jump needs `u | factor | nullity`"));
                }
                jumps.push(JumpSummary {
                    u: parts[0].to_string(),
                    factor: parse_int_poly(parts[1], ln)?,
                    nullity: num(parts[2], ln)?,
                });
            }
            "arf" => arf = parse_opt(v, |x| x.parse::<u8>().ok(), ln)?,
            "determinant" => determinant = parse_opt(v, |x| x.parse::<BigInt>().ok(), ln)?,
            "determinant_is_square" => det_square = parse_opt(v, |x| x.parse::<bool>().ok(), ln)?,
            "cyclotomic_factors" => cyclo = parse_list(v, ',', |x| num::<u64>(x, ln))?,
            "verdict" => {
                verdict_obstructed = Some(match v {
                    "NOT_ALG_SLICE" => true,
                    "NO_OBSTRUCTION_FOUND" => false,
                    _ => return Err(perr(ln, format!("unknown verdict `{v}`"))),
                })
            }
            "certificate" => {
                certificate = if v == "n/a" {
                    None
                } else {
                    Some(parse_certificate(v, ln)?)
                }
            }
            "secondary_certificates" => {
                secondary = parse_list(v, ';', |x| parse_certificate(x, ln))?
            }
            "bing_range" => bing_range = Some(num(v, ln)?),
            "conclusion" => {
                conclusion = Some(match v {
                    NOT_SLICE => BingConclusion::NotSlice,
                    NO_OBSTRUCTION => BingConclusion::NoObstructionFound,
                    _ => return Err(perr(ln, format!("unknown conclusion `{v}`"))),
                })
            }
            "jpq_checks" => jpq_checks = num(v, ln)?,
            "jpq_mismatches" => {
                jpq_mismatches = parse_list(v, ';', |x| {
                    let bad = || perr(ln, format!("malformed mismatch `{x}`"));
                    let (pq, a) = x.split_once(")@").ok_or_else(bad)?;
                    let (p, q) = pq
                        .strip_prefix("J(")
                        .and_then(|s| s.split_once(','))
                        .ok_or_else(bad)?;
                    Ok((num(p, ln)?, num(q, ln)?, a.parse::<Angle>()?))
                })?
            }
            "telescoping_checks" => tele_checks = num(v, ln)?,
            "telescoping_violations" => tele_violations = parse_list(v, ',', |x| num(x, ln))?,
            "coefficient_class"
            | "blanchfield_sign_convention"
            | "signature_function"
            | "jump_points"
            | "reason"
            | "arf_reason" => {}
            other => return Err(perr(ln, format!("unknown key `{other}`"))),
        }
    }

    if csv.len() != samples.len() {
        return Err(perr(
            text.lines().count(),
            format!("{} arcs but {} samples", csv.len(), samples.len()),
        ));
    }
    let mut arcs = Vec::new();
    for ((ln, row), sample) in csv.into_iter().zip(samples) {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != 3 {
            return Err(perr(ln, "signature rows need three columns"));
        }
        arcs.push(ArcSummary {
            u_lo: cells[0].to_string(),
            u_hi: cells[1].to_string(),
            sample,
            value: num(cells[2], ln)?,
        });
    }

    let missing = |k: &str| perr(1, format!("missing key `{k}`"));
    let verdict = if verdict_obstructed.ok_or_else(|| missing("verdict"))? {
        Verdict::NotAlgSlice(certificate.ok_or_else(|| missing("certificate"))?)
    } else {
        Verdict::NoObstructionFound
    };
    let bing = match bing_range {
        Some(range) => Some(BingAnalysis {
            range,
            conclusion: conclusion.ok_or_else(|| missing("conclusion"))?,
            jpq_checks,
            jpq_mismatches,
            telescoping_checks: tele_checks,
            telescoping_violations: tele_violations,
        }),
        None => None,
    };
    Ok(ObstructionReport {
        knot: knot.ok_or_else(|| missing("knot"))?,
        coefficient_ring: ring.ok_or_else(|| missing("coefficient_ring"))?,
        size: size.ok_or_else(|| missing("size"))?,
        alexander: alexander.ok_or_else(|| missing("alexander"))?,
        fox_milnor: FoxMilnor {
            pass: fm_pass.ok_or_else(|| missing("fox_milnor"))?,
            witness: witness.ok_or_else(|| missing("fox_milnor_witness"))?,
        },
        signature: SignatureSummary { arcs, jumps },
        arf,
        determinant,
        determinant_is_square: det_square,
        cyclotomic_factors: cyclo,
        verdict,
        secondary_certificates: secondary,
        bing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::SeifertMatrix;
    use crate::witt::{bing_double_verdict, obstruction_battery};

    #[test]
    fn round_trip() {
        for rows in [
            &[&[-1i64, 1][..], &[0, -1]][..],
            &[&[1, 1], &[0, -1]],
            &[&[1, 1], &[0, -2]],
        ] {
            let s = SeifertMatrix::from_i64(rows).unwrap();
            let r = obstruction_battery(&s).unwrap().named("k");
            assert_eq!(parse_report(&report_to_string(&r)).unwrap(), r);
            let b = bing_double_verdict(&s, 2).unwrap();
            let text = report_to_string(&b);
            assert_eq!(parse_report(&text).unwrap(), b);
            assert_eq!(report_to_string(&parse_report(&text).unwrap()), text);
        }
        let u = obstruction_battery(&SeifertMatrix::unknot()).unwrap();
        assert_eq!(parse_report(&report_to_string(&u)).unwrap(), u);
    }

    #[test]
    fn trefoil_text() {
        let s = SeifertMatrix::from_i64(&[&[-1, 1], &[0, -1]]).unwrap();
        let text = report_to_string(&bing_double_verdict(&s, 1).unwrap().named("3_1"));
        for line in [
            "knot = 3_1",
            "alexander = t^2 - t + 1",
            "arf = 1",
            "determinant = 3",
            "verdict = NOT_ALG_SLICE",
            "certificate = signature_function (value -2 at angle 1/2)",
            "conclusion = B(K) is not slice",
            "jump = 1.000000 | t^2 - t + 1 | 1",
            "1.000000,2.000000,0",
            "-2.000000,1.000000,-2",
        ] {
            assert!(
                text.lines().any(|l| l == line),
                "missing `{line}` in\n{text}"
            );
        }
        assert!(!text.contains("conclusion = B(K) is slice"));
    }

    #[test]
    fn reader_errors() {
        assert!(matches!(
            parse_report("knot 3_1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_report("bogus = 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(parse_report("knot = x\n").is_err());
    }
}
