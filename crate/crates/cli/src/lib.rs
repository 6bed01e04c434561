//! Command-line frontend for `toric-ustp`: cone files, deterministic
//! reports, and the `run` entry point used by the binary.
//!
//! Exit codes: 0 on success or a passing verification, 2 when a
//! verification fails, 1 on any input or usage error. Errors go to
//! standard error as a single line starting with `error:`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use toric_ustp::{
    class_group_of, cross_check_an, det_multiplier, dual_cone, find_sharpness_witness, group_exponent,
    group_order, hilbert_basis, lookup, order_of_class, verify_containment, Cone, Family, GroupOrder,
    LatticePoint, PureHeightOneIdeal,
};

pub mod conefile;
pub mod report;

pub use conefile::ConeFile;
pub use report::{Report, Verdict};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("json: {0}")]
    Json(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] toric_ustp::Error),
}

#[derive(Debug, Parser)]
#[command(name = "toric-ustp", version, about = "Toric class groups and symbolic-power containment")]
pub struct Cli {
    /// Read cone files as JSON: {"dim": n, "rays": [[...]], "label": "..."}.
    #[arg(long, global = true)]
    pub json: bool,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub output: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect a cone.
    #[command(subcommand)]
    Cone(ConeCommand),
    /// Class group of the affine toric variety.
    Classgroup { file: PathBuf },
    /// Uniform multipliers |det| and group exponent.
    Multiplier { file: PathBuf },
    /// Check q^(D·a) ⊆ q^a for a = 1..amax.
    Verify(IdealArgs),
    /// Search for the first level where q^(D·a) ⊄ q^a.
    Sharpness(IdealArgs),
    /// du Val catalog: `duval FAMILY N` or `duval check-an NMAX`.
    Duval { family: String, n: u32 },
}

#[derive(Debug, Subcommand)]
pub enum ConeCommand {
    Info { file: PathBuf },
    Dual { file: PathBuf },
    Hilbert { file: PathBuf },
}

#[derive(Debug, Args)]
pub struct IdealArgs {
    pub file: PathBuf,
    /// Ray index of a component; repeat for several.
    #[arg(long = "ray", required = true)]
    pub rays: Vec<usize>,
    /// Multiplicities, one per --ray; all ones when omitted.
    #[arg(long = "b", value_delimiter = ',')]
    pub b: Vec<u64>,
    #[arg(long = "D", value_parser = clap::value_parser!(u64).range(1..))]
    pub d: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub amax: u64,
}

impl IdealArgs {
    fn echo(&self, name: &str) -> String {
        let mut s = name.to_string();
        for r in &self.rays {
            s += &format!(" --ray {r}");
        }
        let b: Vec<String> = self.multiplicities().iter().map(u64::to_string).collect();
        s + &format!(" --b {} --D {} --amax {}", b.join(","), self.d, self.amax)
    }

    fn multiplicities(&self) -> Vec<u64> {
        if self.b.is_empty() {
            vec![1; self.rays.len()]
        } else {
            self.b.clone()
        }
    }

    fn components(&self) -> Result<Vec<(usize, u64)>, CliError> {
        let b = self.multiplicities();
        if b.len() != self.rays.len() {
            return Err(CliError::Invalid(format!(
                "--b lists {} multiplicities for {} rays",
                b.len(),
                self.rays.len()
            )));
        }
        let mut sorted = self.rays.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(CliError::Invalid("a ray is listed twice".into()));
        }
        if b.contains(&0) {
            return Err(CliError::Invalid("multiplicities must be positive".into()));
        }
        Ok(self.rays.iter().copied().zip(b).collect())
    }
}

/// Parse `argv`, execute, and write the report. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            let first = first.strip_prefix("error: ").unwrap_or(first);
            let _ = writeln!(err, "error: {first}");
            return 1;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let rendered = match cli.output {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            if out.write_all(rendered.as_bytes()).is_err() {
                return 1;
            }
            report.exit_code()
        }
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

pub fn load_cone(path: &Path, json: bool) -> Result<(ConeFile, Cone), CliError> {
    let src = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let file = if json {
        ConeFile::parse_json(&src)?
    } else {
        ConeFile::parse_text(&src)?
    };
    let cone = file.to_cone()?;
    Ok((file, cone))
}

/// Execute a parsed command line and build its report.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Cone(sub) => {
            let (name, file) = match sub {
                ConeCommand::Info { file } => ("cone info", file),
                ConeCommand::Dual { file } => ("cone dual", file),
                ConeCommand::Hilbert { file } => ("cone hilbert", file),
            };
            let (cf, cone) = load_cone(file, cli.json)?;
            let mut r = Report::new(name.into(), Some(conefile::digest(&cone)));
            match sub {
                ConeCommand::Info { .. } => cone_info(&mut r, &cf, &cone)?,
                ConeCommand::Dual { .. } => {
                    r.line("dual rays:");
                    for w in dual_cone(&cone)?.rays() {
                        r.line(format!("  {w}"));
                    }
                }
                ConeCommand::Hilbert { .. } => {
                    let s = hilbert_basis(&cone)?;
                    let mut basis = s.hilbert_basis().to_vec();
                    basis.sort();
                    r.line(format!("fundamental points: {}", s.fundamental_points().len()));
                    r.line(format!("hilbert basis ({} elements):", basis.len()));
                    for h in basis {
                        r.line(format!("  {h}"));
                    }
                }
            }
            Ok(r)
        }
        Command::Classgroup { file } => {
            let (_, cone) = load_cone(file, cli.json)?;
            let mut r = Report::new("classgroup".into(), Some(conefile::digest(&cone)));
            let g = class_group_of(&cone)?;
            let factors: Vec<String> = g.invariant_factors().iter().map(ToString::to_string).collect();
            r.line(format!(
                "invariant factors: [{}]; order: {}; exponent: {}",
                factors.join(", "),
                group_order(&g),
                group_exponent(&g)
            ));
            r.line(format!("free rank: {}", g.free_rank()));
            r.line(format!("group: {g}"));
            Ok(r)
        }
        Command::Multiplier { file } => {
            let (_, cone) = load_cone(file, cli.json)?;
            let mut r = Report::new("multiplier".into(), Some(conefile::digest(&cone)));
            let d = det_multiplier(&cone)?;
            let g = class_group_of(&cone)?;
            let d_min = group_exponent(&g);
            r.line(format!("D: {d}"));
            r.line(format!("D_min: {d_min}"));
            if d_min != GroupOrder::Finite(d) {
                r.line(format!("note: class group {g} is not cyclic, so D_min is smaller than D"));
            }
            Ok(r)
        }
        Command::Verify(args) => {
            let (_, cone) = load_cone(&args.file, cli.json)?;
            let mut r = Report::new(args.echo("verify"), Some(conefile::digest(&cone)));
            let s = hilbert_basis(&cone)?;
            let q = PureHeightOneIdeal::new(&s, args.components()?)?;
            describe_ideal(&mut r, &q)?;
            let report = verify_containment(&q, args.d, args.amax)?;
            for level in &report.levels {
                let status = if level.passed() { "PASS" } else { "FAIL" };
                let mut line = format!(
                    "a={}: {status} (symbolic generators: {}; ordinary generators: {})",
                    level.a,
                    level.symbolic_generators.len(),
                    level.ordinary_generator_count
                );
                if !level.passed() {
                    line += &format!(" counterexamples: {}", points(&level.counterexamples));
                }
                r.line(line);
            }
            r.verdict = Some(Verdict {
                passed: report.passed(),
                witnesses: report
                    .first_failure()
                    .map(|(a, p)| vec![format!("a={a} monomial {p}")])
                    .unwrap_or_default(),
            });
            Ok(r)
        }
        Command::Sharpness(args) => {
            let (_, cone) = load_cone(&args.file, cli.json)?;
            let mut r = Report::new(args.echo("sharpness"), Some(conefile::digest(&cone)));
            let s = hilbert_basis(&cone)?;
            let q = PureHeightOneIdeal::new(&s, args.components()?)?;
            describe_ideal(&mut r, &q)?;
            match find_sharpness_witness(&q, args.d, args.amax)? {
                Some(w) => r.line(format!("witness: a={} monomial {}", w.a, w.point)),
                None => r.line(format!("witness: none for a <= {}", args.amax)),
            }
            Ok(r)
        }
        Command::Duval { family, n } => duval(family, *n),
    }
}

fn cone_info(r: &mut Report, cf: &ConeFile, cone: &Cone) -> Result<(), CliError> {
    if let Some(label) = &cf.label {
        r.line(format!("label: {label}"));
    }
    r.line(format!("dim: {}", cone.dim()));
    r.line("rays:");
    for ray in cone.rays() {
        let parts: Vec<String> = ray.coords().iter().map(i64::to_string).collect();
        r.line(format!("  {}", parts.join(" ")));
    }
    r.line(format!("simplicial: {}", yes_no(cone.is_simplicial())));
    r.line(format!("full: {}", yes_no(cone.is_full())));
    if cone.num_rays() == cone.dim() {
        let det = toric_ustp::determinant(&cone.ray_matrix())?;
        r.line(format!("|det|: {}", det.magnitude()));
    }
    Ok(())
}

fn describe_ideal(r: &mut Report, q: &PureHeightOneIdeal<'_>) -> Result<(), CliError> {
    let parts: Vec<String> = q
        .components()
        .iter()
        .map(|&(ray, b)| format!("{b}*P{ray}"))
        .collect();
    r.line(format!("ideal: {}", parts.join(" + ")));
    let g = class_group_of(q.semigroup().cone())?;
    r.line(format!("class order: {}", order_of_class(&q.divisor_class(), &g)?));
    Ok(())
}

fn duval(family: &str, n: u32) -> Result<Report, CliError> {
    if family.eq_ignore_ascii_case("check-an") {
        if n == 0 {
            return Err(CliError::Invalid("check-an needs NMAX >= 1".into()));
        }
        let mut r = Report::new(format!("duval check-an {n}"), None);
        let mut failed = Vec::new();
        for k in 1..=n {
            let ok = cross_check_an(k)?;
            r.line(format!("A{k}: {}", if ok { "ok" } else { "mismatch" }));
            if !ok {
                failed.push(format!("A{k}"));
            }
        }
        r.verdict = Some(Verdict {
            passed: failed.is_empty(),
            witnesses: failed,
        });
        return Ok(r);
    }
    let mut chars = family.chars();
    let fam = match (chars.next().and_then(Family::from_letter), chars.next()) {
        (Some(f), None) => f,
        _ => return Err(CliError::Invalid(format!("unknown family '{family}', expected A, D, E or check-an"))),
    };
    let rec = lookup(fam, n)?;
    let mut r = Report::new(format!("duval {fam} {n}"), None);
    r.line(format!("type: {fam}{n}"));
    r.line(format!(
        "group: {}; D_min: {}; equation: {}",
        rec.group, rec.d_min, rec.local_equation
    ));
    Ok(r)
}

fn points(ps: &[LatticePoint]) -> String {
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
