use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bingcheck_core::catalog::{builtin_catalog, lookup, parse_seifert_file, print_seifert};
use bingcheck_core::cover::{
    branched_cover_homology_order, cable_presentation, covering_seifert_matrix,
};
use bingcheck_core::report::{report_to_string, CSV_HEADER, SIGNATURE_SECTION};
use bingcheck_core::witt::{
    bing_double_verdict, jpq_presentation, obstruction_battery, SignatureSummary,
};
use bingcheck_core::{fox_milnor, Error, SeifertMatrix, WittPresentation};
use clap::error::ErrorKind;
use clap::{Args, ColorChoice, CommandFactory, FromArgMatches, Parser, Subcommand};
use rayon::prelude::*;

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

const ABOUT: &str = "Exact knot invariants and obstructions to sliceness of Bing doubles";

const LONG_ABOUT: &str = "\
Exact knot invariants and obstructions to sliceness of Bing doubles.

Every verdict is a contrapositive. If the Bing double B(K) is slice then K is
algebraically slice, and an algebraically slice knot has Alexander polynomial
f(t)f(t^-1) up to units, vanishing signature function, Arf invariant 0 and
square determinant. A failed condition therefore proves B(K) is not slice. When
every condition holds the tool reports that no obstruction was found; it never
claims that a knot or link is slice.";

#[derive(Parser)]
#[command(name = "bingcheck", version, about = ABOUT, long_about = LONG_ABOUT)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct KnotArg {
    /// Catalog name (see `bingcheck catalog list`)
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    knot: Option<String>,
    /// Read the Seifert matrix from a file instead
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Full obstruction report for a knot
    #[command(long_about = "\
Full obstruction report: Alexander polynomial, Fox-Milnor test, signature
function, Arf invariant, determinant and cyclotomic factors.

Each test is a necessary condition for algebraic sliceness. Slice knots are
algebraically slice, so a failure shows K is not slice; NOT_ALG_SLICE names the
first failing test as certificate.")]
    Invariants(KnotArg),
    /// Alexander polynomial det(A - tA^T), unit-normalized
    Alexander(KnotArg),
    /// Signature function on the unit circle, one value per arc
    #[command(long_about = "\
Levine-Tristram signature function: the signature of (1 - w)A + (1 - w^-1)A^T
on each arc of the unit circle between roots of the Alexander polynomial,
sampled exactly at a rational angle. An algebraically slice knot has
signature function identically zero.")]
    Sigfn(KnotArg),
    /// Arf invariant (integral matrices only)
    #[command(long_about = "\
Arf invariant: 0 when the Alexander polynomial at -1 is 1 or 7 mod 8, else 1.
If B(K) is slice then Arf(K) = 0.")]
    Arf(KnotArg),
    /// Fox-Milnor factorization test
    #[command(long_about = "\
Fox-Milnor test: a slice knot has Alexander polynomial f(t)f(t^-1) up to units.
Passes when every self-reciprocal irreducible factor has even multiplicity and
every other factor is matched by its reciprocal; prints a witness f.")]
    Foxmilnor(KnotArg),
    /// Presentation of the (n,1)-cable: A(t^n)
    #[command(long_about = "\
The (n,1)-cable of K has Alexander module and Blanchfield pairing presented by
A(t^n) and B(t^n). Prints the order and the Hermitian presentation B(t^n)
with B(t) = (1 - t)A + (1 - t^-1)A^T.")]
    Cable {
        #[arg(short = 'n', value_name = "N")]
        n: i64,
        #[command(flatten)]
        knot: KnotArg,
    },
    /// Seifert matrix of the preimage knot in the p-fold branched cover
    #[command(long_about = "\
With G = (A - A^T)^-1 A, the matrix
  A~ = A - A^T (G^(p-1) - (G - I)^(p-1)) (G^p - (G - I)^p)^-1 G
is a rational Seifert matrix for the preimage of K in the p-fold branched
cover. Prints A~ and the battery on its rational Witt class. Fails when
G^p - (G - I)^p is singular.")]
    Cover {
        #[arg(short = 'p', value_name = "P")]
        p: u32,
        #[command(flatten)]
        knot: KnotArg,
    },
    /// Order of H_1 of the p-fold branched cover (Fox's formula)
    #[command(long_about = "\
Fox's formula: |H_1| of the p-fold branched cover is |prod Delta(z^i)| over the
nontrivial p-th roots of unity z, computed as a resultant. Prints INFINITE when
the product vanishes.")]
    Foxorder {
        #[arg(short = 'p', value_name = "P")]
        p: u64,
        #[command(flatten)]
        knot: KnotArg,
    },
    /// Battery on the J(p,q) presentation
    #[command(long_about = "\
The knot J(p,q) built from the Bing double has Witt class
  phi_p W(K) + phi_(p+q) W(K) + phi_q W(K),
where phi_n substitutes t -> t^n. Runs the battery on this class.")]
    Jpq {
        #[arg(short = 'p', value_name = "P")]
        p: i64,
        #[arg(short = 'q', value_name = "Q")]
        q: i64,
        #[command(flatten)]
        knot: KnotArg,
    },
    /// Bing double verdict with cross-checks
    #[command(long_about = "\
If the Bing double B(K) is slice then K is algebraically slice. Runs the
battery on K and concludes `B(K) is not slice` when a necessary condition for
algebraic sliceness fails; if Arf(K) = 1 this is reported as an additional
reason. Also cross-checks the J(p,q) signature identity at 20 rational angles
and the telescoping identity phi_(q-1) W(K) = phi_(q+1) W(K) for p, q up to the
range.")]
    Bing {
        #[arg(long, default_value_t = 3, value_name = "R")]
        range: u64,
        #[command(flatten)]
        knot: KnotArg,
    },
    /// Built-in catalog
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// One report per input, in input order
    Batch {
        /// Seifert matrix files
        files: Vec<PathBuf>,
        /// Also include every catalog entry, after the files
        #[arg(long)]
        catalog: bool,
        /// Run the Bing double verdict instead of the plain battery
        #[arg(long)]
        bing: bool,
        #[arg(long, default_value_t = 3, value_name = "R")]
        range: u64,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List entries
    List,
    /// Print an entry in the matrix file format
    Show { name: String },
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Invariant(_)) {
            EXIT_INTERNAL
        } else {
            EXIT_INPUT
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

type Outcome = Result<String, Failure>;

fn load(arg: &KnotArg) -> Result<(String, SeifertMatrix), Failure> {
    if let Some(path) = &arg.file {
        return load_file(path);
    }
    let name = arg.knot.as_deref().unwrap_or_default();
    let entry =
        lookup(name).ok_or_else(|| input_error(format!("unknown catalog entry `{name}`")))?;
    Ok((entry.name, entry.seifert))
}

fn load_file(path: &PathBuf) -> Result<(String, SeifertMatrix), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let parsed = parse_seifert_file(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })?;
    let name = parsed.name.unwrap_or_else(|| path.display().to_string());
    Ok((name, parsed.seifert))
}

fn signature_block(summary: &SignatureSummary) -> String {
    let mut s = String::new();
    let values: Vec<String> = summary.arcs.iter().map(|a| a.value.to_string()).collect();
    let samples: Vec<String> = summary.arcs.iter().map(|a| a.sample.to_string()).collect();
    let _ = writeln!(
        s,
        "signature_function = {}",
        if summary.is_identically_zero() {
            "identically_zero"
        } else {
            "nonzero"
        }
    );
    let _ = writeln!(s, "arc_values = {}", values.join("; "));
    let _ = writeln!(s, "arc_samples = {}", samples.join("; "));
    let _ = writeln!(s, "jump_points = {}", summary.jumps.len());
    for j in &summary.jumps {
        let _ = writeln!(s, "jump = {} | {} | {}", j.u, j.factor, j.nullity);
    }
    let _ = writeln!(s, "\n{SIGNATURE_SECTION}\n{CSV_HEADER}");
    for a in &summary.arcs {
        let _ = writeln!(s, "{},{},{}", a.u_lo, a.u_hi, a.value);
    }
    s
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Invariants(k) => {
            let (name, s) = load(&k)?;
            Ok(report_to_string(&obstruction_battery(&s)?.named(&name)))
        }
        Command::Alexander(k) => {
            let (name, s) = load(&k)?;
            Ok(format!("knot = {name}\nalexander = {}\n", s.alexander()))
        }
        Command::Sigfn(k) => {
            let (name, s) = load(&k)?;
            let sf = s.signature_function()?;
            Ok(format!(
                "knot = {name}\n{}",
                signature_block(&SignatureSummary::from_function(&sf))
            ))
        }
        Command::Arf(k) => {
            let (name, s) = load(&k)?;
            Ok(format!("knot = {name}\narf = {}\n", s.arf()?))
        }
        Command::Foxmilnor(k) => {
            let (name, s) = load(&k)?;
            let delta = s.alexander();
            let fm = fox_milnor(&delta)?;
            let witness = fm
                .witness
                .map_or_else(|| "n/a".to_string(), |w| w.to_string());
            Ok(format!(
                "knot = {name}\nalexander = {delta}\nfox_milnor = {}\nfox_milnor_witness = {witness}\n",
                if fm.pass { "pass" } else { "fail" }
            ))
        }
        Command::Cable { n, knot } => {
            let (name, s) = load(&knot)?;
            let base = WittPresentation::from_seifert(&s);
            let b = cable_presentation(base.matrix(), n)?;
            let order = s.alexander().substitute_power(n)?.normalize_unit()?;
            Ok(format!(
                "knot = {name}\ncable = ({n},1)\norder = {order}\n\n[presentation]\n{}",
                b.to_text()
            ))
        }
        Command::Cover { p, knot } => {
            let (name, s) = load(&knot)?;
            let cover = covering_seifert_matrix(&s, p)?;
            let report = obstruction_battery(&cover)?.named(&format!("{name} (p={p} cover)"));
            Ok(format!(
                "knot = {name}\ncover_degree = {p}\n\n[seifert_matrix]\n{}\n{}",
                cover.matrix().to_text(),
                report_to_string(&report)
            ))
        }
        Command::Foxorder { p, knot } => {
            let (name, s) = load(&knot)?;
            let order = branched_cover_homology_order(&s.alexander(), p)?;
            Ok(format!(
                "knot = {name}\ncover_degree = {p}\norder = {order}\n"
            ))
        }
        Command::Jpq { p, q, knot } => {
            let (name, s) = load(&knot)?;
            let report = jpq_presentation(&s, p, q)?
                .battery()?
                .named(&format!("J({p},{q}) of {name}"));
            Ok(report_to_string(&report))
        }
        Command::Bing { range, knot } => {
            let (name, s) = load(&knot)?;
            Ok(report_to_string(
                &bing_double_verdict(&s, range)?.named(&name),
            ))
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let mut out = String::new();
                for e in builtin_catalog() {
                    let _ = writeln!(out, "{}\t{}\t{}", e.name, e.seifert.size(), e.notes);
                }
                Ok(out)
            }
            CatalogAction::Show { name } => {
                let e = lookup(&name)
                    .ok_or_else(|| input_error(format!("unknown catalog entry `{name}`")))?;
                Ok(format!(
                    "# notes: {}\n{}",
                    e.notes,
                    print_seifert(&e.seifert, Some(&e.name))
                ))
            }
        },
        Command::Batch { .. } => unreachable!("batch is streamed separately"),
    }
}

fn batch(files: Vec<PathBuf>, catalog: bool, bing: bool, range: u64) -> (String, Vec<Failure>) {
    enum Source {
        File(PathBuf),
        Catalog(String, SeifertMatrix),
    }
    let mut sources: Vec<Source> = files.into_iter().map(Source::File).collect();
    if catalog {
        sources.extend(
            builtin_catalog()
                .into_iter()
                .map(|e| Source::Catalog(e.name, e.seifert)),
        );
    }
    let results: Vec<Outcome> = sources
        .into_par_iter()
        .map(|src| {
            let (name, s) = match src {
                Source::File(p) => load_file(&p)?,
                Source::Catalog(n, s) => (n, s),
            };
            let report = if bing {
                bing_double_verdict(&s, range)?
            } else {
                obstruction_battery(&s)?
            };
            Ok(report_to_string(&report.named(&name)))
        })
        .collect();
    let mut out = String::new();
    let mut failures = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(text) => {
                if !out.is_empty() {
                    out.push('\n');
                }
                let _ = writeln!(out, "# report {}", i + 1);
                out.push_str(&text);
            }
            Err(f) => failures.push(f),
        }
    }
    (out, failures)
}

fn main() -> ExitCode {
    let color = if std::env::var_os("BINGCHECK_NO_COLOR").is_some() {
        ColorChoice::Never
    } else {
        ColorChoice::Auto
    };
    let matches = Cli::command().color(color).try_get_matches();
    let cli = match matches.and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let (out, failures) = match cli.command {
        Command::Batch {
            files,
            catalog,
            bing,
            range,
        } => {
            if files.is_empty() && !catalog {
                eprintln!("error: batch needs at least one file or --catalog");
                return ExitCode::from(EXIT_USAGE);
            }
            batch(files, catalog, bing, range)
        }
        other => match run(other) {
            Ok(out) => (out, Vec::new()),
            Err(f) => (String::new(), vec![f]),
        },
    };
    let mut stdout = io::stdout().lock();
    if stdout
        .write_all(out.as_bytes())
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return ExitCode::from(EXIT_INPUT);
    }
    let mut code = 0;
    for f in &failures {
        eprintln!("error: {}", f.message);
        code = code.max(f.code);
    }
    ExitCode::from(code)
}
