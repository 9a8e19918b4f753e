//! Built-in knot catalog, Seifert matrix files and report output.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::exactmat::parse_rat_matrix;
use crate::report::report_to_string;
use crate::seifert::SeifertMatrix;
use crate::witt::ObstructionReport;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub seifert: SeifertMatrix,
    pub notes: String,
}

/// Twist knots with `n` full twists, `[[-1, 1], [0, n]]`, for `|n| ≤ TWIST_RANGE`.
pub const TWIST_RANGE: i64 = 5;

fn entry(name: &str, rows: &[&[i64]], notes: &str) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        seifert: SeifertMatrix::from_i64(rows).expect("catalog matrices are admissible"),
        notes: notes.into(),
    }
}

pub fn builtin_catalog() -> Vec<CatalogEntry> {
    let mut out = vec![
        CatalogEntry {
            name: "unknot".into(),
            seifert: SeifertMatrix::unknot(),
            notes: "slice".into(),
        },
        entry("3_1", &[&[-1, 1], &[0, -1]], "trefoil"),
        entry("4_1", &[&[1, 1], &[0, -1]], "figure-eight, amphichiral"),
        entry("6_1", &[&[1, 1], &[0, -2]], "stevedore, slice"),
    ];
    for n in -TWIST_RANGE..=TWIST_RANGE {
        let note = match n {
            -1 => "twist knot, same matrix as 3_1".to_string(),
            0 => "twist knot, unknotted".to_string(),
            1 => "twist knot, same matrix as 4_1".to_string(),
            2 => "twist knot, same matrix as 6_1 up to sign".to_string(),
            _ => "twist knot".to_string(),
        };
        out.push(entry(&format!("twist_{n}"), &[&[-1, 1], &[0, n]], &note));
    }
    out
}

/// Finds a catalog entry by name; `trefoil`, `figure_eight` and `stevedore` are accepted as
/// aliases.
pub fn lookup(name: &str) -> Option<CatalogEntry> {
    let canonical = match name {
        "trefoil" => "3_1",
        "figure_eight" | "figure-eight" => "4_1",
        "stevedore" => "6_1",
        other => other,
    };
    builtin_catalog().into_iter().find(|e| e.name == canonical)
}

/// A Seifert matrix read from text, with the optional `# name:` header.
#[derive(Clone, Debug)]
pub struct SeifertFile {
    pub name: Option<String>,
    pub seifert: SeifertMatrix,
}

pub fn parse_seifert(text: &str) -> Result<SeifertMatrix> {
    parse_seifert_file(text).map(|f| f.seifert)
}

pub fn parse_seifert_file(text: &str) -> Result<SeifertFile> {
    let name = text.lines().find_map(|l| {
        l.trim()
            .strip_prefix('#')
            .and_then(|r| r.trim_start().strip_prefix("name:"))
            .map(|n| n.trim().to_string())
    });
    let header_line = text
        .lines()
        .position(|l| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map_or(1, |i| i + 1);
    let a = parse_rat_matrix(text)?;
    if !a.is_square() {
        return Err(Error::Parse {
            line: header_line,
            column: 1,
            message: format!(
                "Seifert matrix must be square, got {}x{}",
                a.rows(),
                a.cols()
            ),
        });
    }
    let seifert = SeifertMatrix::new(a).map_err(|e| match e {
        Error::NotAdmissible(m) => {
            Error::NotAdmissible(format!("{m} (matrix at line {header_line})"))
        }
        other => other,
    })?;
    Ok(SeifertFile { name, seifert })
}

/// Matrix file text, with a `# name:` header when `name` is given.
pub fn print_seifert(s: &SeifertMatrix, name: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(n) = name {
        out.push_str(&format!("# name: {n}\n"));
    }
    out.push_str(&s.matrix().to_text());
    out
}

pub fn write_report(report: &ObstructionReport, dest: &mut dyn Write) -> io::Result<()> {
    dest.write_all(report_to_string(report).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::RatMatrix;
    use crate::poly::LaurentPoly;
    use crate::rational::rat;
    use crate::seifert::Integrality;
    use crate::witt::obstruction_battery;
    use num_traits::Signed;

    #[test]
    fn catalog_contents() {
        let cat = builtin_catalog();
        let mut names: Vec<&str> = cat.iter().map(|e| e.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), cat.len());
        assert_eq!(cat.len(), 4 + 11);
        assert_eq!(lookup("unknot").unwrap().seifert.size(), 0);
        let fe = lookup("4_1").unwrap();
        assert_eq!(
            fe.seifert.matrix(),
            &RatMatrix::from_i64(&[&[1, 1], &[0, -1]])
        );
        assert_eq!(
            fe.seifert.alexander(),
            "t^2 - 3t + 1".parse::<LaurentPoly>().unwrap()
        );
        assert_eq!(lookup("trefoil").unwrap().name, "3_1");
        assert!(lookup("no_such_knot").is_none());
        for e in &cat {
            let a = e.seifert.matrix();
            assert_eq!(
                a.sub(&a.transpose()).unwrap().det().unwrap().abs(),
                rat(1),
                "{}",
                e.name
            );
        }
    }

    #[test]
    fn parse_examples() {
        let tr = parse_seifert("2\n-1 1\n0 -1\n").unwrap();
        assert_eq!(tr, lookup("3_1").unwrap().seifert);
        assert!(matches!(
            parse_seifert("2\n1 0\n0 1\n"),
            Err(Error::NotAdmissible(_))
        ));
        let r = parse_seifert("2\n1/2 1\n0 -1/2\n").unwrap();
        assert_eq!(r.integrality(), Integrality::Rational);
        assert!(matches!(
            parse_seifert("2\n1/2 1\n1 -1/2\n"),
            Err(Error::NotAdmissible(_))
        ));
        assert!(matches!(
            parse_seifert("2\n1 x\n0 1\n"),
            Err(Error::Parse {
                line: 2,
                column: 3,
                ..
            })
        ));
        assert!(matches!(
            parse_seifert("2\n1 1\n0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        let f = parse_seifert_file("# name: my knot\n2\n-1 1\n0 -1\n").unwrap();
        assert_eq!(f.name.as_deref(), Some("my knot"));
        assert!(parse_seifert("0\n").unwrap().size() == 0);
        assert!(matches!(
            parse_seifert("2 1\n1\n2\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn print_parse_round_trip() {
        for e in builtin_catalog() {
            let text = print_seifert(&e.seifert, Some(&e.name));
            let back = parse_seifert_file(&text).unwrap();
            assert_eq!(back.seifert, e.seifert);
            assert_eq!(back.name.as_deref(), Some(e.name.as_str()));
        }
    }

    #[test]
    fn write_report_examples() {
        let mut buf = Vec::new();
        let r = obstruction_battery(&lookup("unknot").unwrap().seifert).unwrap();
        write_report(&r, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().any(|l| l == "verdict = NO_OBSTRUCTION_FOUND"));
        let mut again = Vec::new();
        write_report(&r, &mut again).unwrap();
        assert_eq!(text.as_bytes(), &again[..]);
    }
}
