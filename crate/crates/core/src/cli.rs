//! Command-line front end. Exit codes: 0 success, 1 a check failed,
//! 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::algebra::StarAlgebra;
use crate::corpus::{enumerate_corpus, parse_seed, CorpusSpec};
use crate::criteria::{augmentation_certificate, verify_simplicity_theorems};
use crate::error::Result;
use crate::io::{format_element, load_element, load_spec, Loaded};
use crate::spectral::{block_decomposition, norm};
use crate::suite::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "gpdlab", version, about = "Finite groupoid C*-algebras and their simplicity criteria")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyse one groupoid or action file.
    Check { file: PathBuf },
    /// List the corpus.
    Enumerate {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Run theorem suites over the corpus.
    Verify {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Suites to run (repeatable); all when omitted.
        #[arg(long = "suite", value_enum)]
        suites: Vec<Suite>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Full norm, I-norm and expectation of an element given as `id re im` lines.
    Norm { file: PathBuf, element: PathBuf },
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// `group,space,bundle,pair` size bounds.
    #[arg(long, value_parser = parse_bounds)]
    pub bounds: Option<[usize; 4]>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Decimal or 0x-hex; overrides GPDLAB_SEED.
    #[arg(long, value_parser = |s: &str| parse_seed(s).map_err(|e| e.to_string()))]
    pub seed: Option<u64>,
}

fn parse_bounds(s: &str) -> std::result::Result<[usize; 4], String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("bad bound `{p}`")))
        .collect::<std::result::Result<_, _>>()?;
    parts.try_into().map_err(|_| "expected four comma-separated bounds".to_string())
}

impl CorpusArgs {
    pub fn spec(&self) -> Result<CorpusSpec> {
        let mut spec = CorpusSpec::from_env()?;
        if let Some([g, s, b, p]) = self.bounds {
            (spec.group_bound, spec.space_bound, spec.bundle_bound, spec.pair_bound) = (g, s, b, p);
        }
        if let Some(n) = self.samples {
            spec.samples = n;
        }
        if let Some(seed) = self.seed {
            spec.seed = seed;
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// Parses `argv` (program name first), runs, and returns the exit code.
pub fn run_from<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Check { file } => check(&load_spec(file)?, out),
        Command::Enumerate { corpus, json } => enumerate(&corpus.spec()?, *json, out),
        Command::Verify { corpus, suites, out: json_out, csv } => {
            let suites = if suites.is_empty() { Suite::ALL.to_vec() } else { suites.clone() };
            verify(&corpus.spec()?, &suites, json_out.as_ref(), csv.as_ref(), out)
        }
        Command::Norm { file, element } => {
            let loaded = load_spec(file)?;
            let alg = StarAlgebra::new(loaded.groupoid().clone());
            let f = load_element(element, alg.dim())?;
            writeln!(out, "norm: {:.12}", norm(&alg, &f))?;
            writeln!(out, "i-norm: {:.12}", alg.i_norm(&f))?;
            write!(out, "expectation:\n{}", format_element(&alg.expectation(&f)))?;
            Ok(EXIT_OK)
        }
    }
}

fn list(xs: &[usize]) -> String {
    format!("{xs:?}")
}

pub fn check(loaded: &Loaded, out: &mut dyn Write) -> Result<i32> {
    let g = loaded.groupoid();
    let alg = StarAlgebra::new(g.clone());
    let dec = block_decomposition(&alg)?;
    let report = verify_simplicity_theorems(&alg, &dec)?;
    let cert = augmentation_certificate(&alg, &dec)?;
    let simple = report.oracle_simple;
    writeln!(
        out,
        "minimal: {}, top-principal: {}, blocks: {}, simple: {simple}",
        report.minimal,
        report.principal,
        list(dec.dims())
    )?;
    writeln!(out, "elements: {}, units: {}, orbits: {}", g.len(), g.units().len(), g.orbits().count)?;
    writeln!(out, "isotropy:")?;
    for grp in &g.isotropy().groups {
        let names: Vec<&str> = grp.elements.iter().map(|&x| g.label(x)).collect();
        writeln!(out, "  unit {} ({}): order {} {{{}}}", grp.unit, g.label(grp.unit), grp.order(), names.join(", "))?;
    }
    if let Loaded::Action(t) = loaded {
        let a = t.action();
        for q in 0..a.space() {
            writeln!(out, "  stabilizer of {q}: {}", list(&a.stabilizer(q)))?;
        }
    }
    let reason = if simple {
        "minimal and topologically principal => simple".to_string()
    } else if cert.intiso_nontrivial && cert.certified_nonsimple {
        "IntIso nontrivial => not simple (its augmentation ideal generates a proper ideal)".to_string()
    } else if !report.minimal {
        let orbit = &g.orbits().orbits()[0];
        format!("not minimal => not simple (invariant unit set {})", list(orbit))
    } else {
        "no certificate".to_string()
    };
    writeln!(out, "simple: {simple}, {reason}")?;
    let consistent = report.holds && cert.holds;
    if !consistent {
        writeln!(out, "criterion mismatch: {report:?} {cert:?}")?;
    }
    Ok(if consistent { EXIT_OK } else { EXIT_VIOLATION })
}

pub fn enumerate(spec: &CorpusSpec, json: bool, out: &mut dyn Write) -> Result<i32> {
    let corpus = enumerate_corpus(spec)?;
    if json {
        let rows: Vec<serde_json::Value> = corpus
            .iter()
            .map(|i| {
                serde_json::json!({
                    "id": i.id,
                    "instance": i.name,
                    "family": i.family,
                    "elements": i.groupoid.len(),
                    "units": i.groupoid.units().len(),
                })
            })
            .collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
    } else {
        for i in &corpus {
            writeln!(out, "{:5} {:<8} {:3} {:2} {}", i.id, format!("{:?}", i.family).to_lowercase(), i.groupoid.len(), i.groupoid.units().len(), i.name)?;
        }
        writeln!(out, "total: {}", corpus.len())?;
    }
    Ok(EXIT_OK)
}

pub fn verify(
    spec: &CorpusSpec,
    suites: &[Suite],
    json_out: Option<&PathBuf>,
    csv: Option<&PathBuf>,
    out: &mut dyn Write,
) -> Result<i32> {
    let corpus = enumerate_corpus(spec)?;
    let report = run_suite(&corpus, suites, spec)?;
    if let Some(path) = json_out {
        std::fs::write(path, report.to_json() + "\n")?;
    }
    if let Some(path) = csv {
        report.write_csv(std::fs::File::create(path)?)?;
    }
    for (instance, check) in report.failed_checks() {
        writeln!(out, "FAIL {instance}: {check}")?;
    }
    writeln!(
        out,
        "{} instances, {} checks, {} failures ({:.1}s)",
        report.instances.len(),
        report.checks,
        report.failures,
        report.elapsed.as_secs_f64()
    )?;
    Ok(if report.pass { EXIT_OK } else { EXIT_VIOLATION })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_spec;

    fn run_args(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run_from(std::iter::once("gpdlab").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn check_swap() {
        let loaded = parse_spec(r#"{"group": {"preset": "Z2"}, "space": 2, "act": [[0, 1], [1, 0]]}"#).unwrap();
        let mut buf = Vec::new();
        assert_eq!(check(&loaded, &mut buf).unwrap(), EXIT_OK);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("minimal: true, top-principal: true, blocks: [2], simple: true"), "{text}");
    }

    #[test]
    fn check_z2_point() {
        let loaded = parse_spec("\"group:Z2\"").unwrap();
        let mut buf = Vec::new();
        assert_eq!(check(&loaded, &mut buf).unwrap(), EXIT_OK);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("simple: false, IntIso nontrivial => not simple"), "{text}");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["enumerate", "--bounds", "1,2"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["check", "/nonexistent/file.json"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["enumerate", "--bounds", "0,1,1,1"]).0, EXIT_USAGE);
    }

    #[test]
    fn enumerate_tiny() {
        let (code, text) = run_args(&["enumerate", "--bounds", "1,1,1,1"]);
        assert_eq!(code, EXIT_OK);
        assert!(text.ends_with("total: 1\n"), "{text}");
    }

    #[test]
    fn verify_tiny() {
        let (code, text) = run_args(&["verify", "--bounds", "2,2,1,2", "--samples", "3"]);
        assert_eq!(code, EXIT_OK, "{text}");
    }
}
