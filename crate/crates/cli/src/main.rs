//! `hibi`: regularity and related invariants of Hibi rings from the command line.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hibi_core::census::{census, CensusQuery, Filter};
use hibi_core::invariants::{
    analyze, analyze_lattice, generator_count, two_chain_regularity, InvariantReport,
};
use hibi_core::io::{to_dot, PosetJson};
use hibi_core::oracle::h_polynomial;
use hibi_core::{Caps, Error, Lattice, Poset};
use hibi_core::oracle::HilbertSummary;
use serde::Serialize;

#[derive(Serialize)]
struct AnalyzeOutput<'a> {
    report: &'a InvariantReport,
    generators: usize,
    two_chain_regularity: Option<i64>,
}

#[derive(Serialize)]
struct OracleOutput<'a> {
    summary: &'a HilbertSummary,
    formula_regularity: i64,
    verdict: Option<&'static str>,
    note: Option<&'static str>,
}

#[derive(Serialize)]
struct CensusLine<'a> {
    poset: &'a PosetJson,
    report: &'a InvariantReport,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output types always serialize")
}

#[derive(Parser)]
#[command(name = "hibi", version, about = "Invariants of Hibi rings of finite distributive lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Largest poset whose down-sets are enumerated.
    #[arg(long, global = true)]
    cap_ideals: Option<usize>,
    /// Largest poset accepted by the Hilbert-series oracle.
    #[arg(long, global = true)]
    cap_oracle: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form invariants of a poset (or of a lattice with "as_lattice": true).
    Analyze(InputArgs),
    /// Hilbert series of K[L] from its monomial basis, checked against the formula.
    Oracle(InputArgs),
    /// Search isomorphism classes of small posets.
    Census(CensusArgs),
    /// Hasse diagram in Graphviz DOT.
    Dot(InputArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Poset JSON file.
    #[arg(short, long)]
    input: PathBuf,
}

#[derive(Args)]
struct CensusArgs {
    /// Smallest poset size searched.
    #[arg(long, default_value_t = 1)]
    nmin: usize,
    /// Largest poset size searched.
    #[arg(long, default_value_t = 6)]
    nmax: usize,
    /// Keep posets with |P| - rank P = K.
    #[arg(long)]
    k: Option<i64>,
    /// Keep posets with reg I_L = REG and I_L nonzero.
    #[arg(long)]
    reg: Option<i64>,
    /// Only simple posets (no element comparable to all others).
    #[arg(long)]
    simple: bool,
    /// Only pure posets (all maximal chains of equal length).
    #[arg(long)]
    pure: bool,
    /// Only posets whose Hibi ring is Gorenstein.
    #[arg(long)]
    gorenstein: bool,
    /// Only extremal Gorenstein posets (pure with reg 3).
    #[arg(long)]
    extremal: bool,
    /// Only posets whose Hibi ideal has a linear resolution.
    #[arg(long)]
    linear: bool,
    /// Also write one DOT file per result into this directory.
    #[arg(long)]
    dot_dir: Option<PathBuf>,
}

/// A failure with the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SizeCapExceeded { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: 1,
        message: format!("{}: {e}", path.display()),
    }
}

enum Input {
    Poset(Poset),
    Lattice(Lattice),
}

fn read_input(path: &Path) -> Result<Input, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let parsed = PosetJson::parse(&text)?;
    let poset = parsed.to_poset()?;
    Ok(if parsed.as_lattice {
        Input::Lattice(Lattice::from_order(poset)?)
    } else {
        Input::Poset(poset)
    })
}

fn caps_from(cli: &Cli) -> Result<Caps, Failure> {
    let mut caps = match std::env::var("HIBI_CAPS") {
        Ok(spec) => Caps::default().with_overrides(&spec)?,
        Err(_) => Caps::default(),
    };
    if let Some(n) = cli.cap_ideals {
        caps.ideal_elements = n;
    }
    if let Some(n) = cli.cap_oracle {
        caps.oracle_elements = n;
    }
    Ok(caps)
}

fn report_text(r: &InvariantReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "|P| = {}, rank P = {}, |L| = {}", r.p_size, r.rank_p, r.lattice_size);
    if r.ideal_is_zero {
        let _ = writeln!(out, "I_L = 0 (P is a chain); formula value reg = {}", r.regularity);
    } else {
        let _ = writeln!(out, "reg I_L = {}", r.regularity);
    }
    let _ = writeln!(
        out,
        "dim K[L] = {}, pd I_L = {}, a(K[L]) = {}",
        r.krull_dim, r.proj_dim, r.a_invariant
    );
    let f = &r.flags;
    let _ = writeln!(
        out,
        "simple {} | pure {} | linear resolution {} | Gorenstein {} | extremal Gorenstein {}",
        f.simple, f.pure, f.linear_resolution, f.gorenstein, f.extremal_gorenstein
    );
    out
}

fn cmd_analyze(args: &InputArgs, format: Format, caps: &Caps) -> Result<String, Failure> {
    let (report, poset, generators) = match read_input(&args.input)? {
        Input::Poset(p) => {
            let report = analyze(&p, caps)?;
            let lattice = Lattice::ideal_lattice(&p, caps)?;
            (report, p, generator_count(&lattice))
        }
        Input::Lattice(l) => {
            let report = analyze_lattice(&l, caps)?;
            (report, l.join_irreducibles()?, generator_count(&l))
        }
    };
    let two_chain = if report.flags.simple {
        two_chain_regularity(&poset)?
    } else {
        None
    };
    Ok(match format {
        Format::Json => {
            let out = AnalyzeOutput {
                report: &report,
                generators,
                two_chain_regularity: two_chain,
            };
            format!("{}\n", to_json(&out))
        }
        Format::Text => {
            let mut out = report_text(&report);
            let _ = writeln!(out, "generators of I_L: {generators}");
            if let Some(v) = two_chain {
                let _ = writeln!(out, "two-chain regularity |C2| + 1 = {v}");
            }
            out
        }
    })
}

fn cmd_oracle(args: &InputArgs, format: Format, caps: &Caps) -> Result<(String, u8), Failure> {
    let poset = match read_input(&args.input)? {
        Input::Poset(p) => p,
        Input::Lattice(l) => l.join_irreducibles()?,
    };
    let summary = h_polynomial(&poset, caps)?;
    let formula = poset.len() as i64 - poset.rank()? as i64;
    let zero = poset.is_chain();
    let verdict = match (zero, summary.reg_oracle == formula) {
        (true, _) => None,
        (false, true) => Some("MATCH"),
        (false, false) => Some("MISMATCH"),
    };
    let code = if verdict == Some("MISMATCH") { 3 } else { 0 };
    let note = zero.then_some("I_L = 0: P is a chain and K[L] is a polynomial ring");
    let out = match format {
        Format::Json => {
            let out = OracleOutput {
                summary: &summary,
                formula_regularity: formula,
                verdict,
                note,
            };
            format!("{}\n", to_json(&out))
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "HF = {:?}", summary.hf);
            let _ = writeln!(out, "Q(t) = {}", polynomial_text(&summary.h_coeffs));
            let _ = writeln!(
                out,
                "deg Q = {}, a = {}, min canonical degree = {}, symmetric = {}",
                summary.q_degree,
                summary.a_invariant_oracle,
                summary.canonical_min_degree,
                summary.symmetric
            );
            match verdict {
                Some(v) => {
                    let _ = writeln!(
                        out,
                        "{v}: oracle reg {} vs |P| - rank P = {formula}",
                        summary.reg_oracle
                    );
                }
                None => {
                    let _ = writeln!(out, "{}", note.unwrap_or_default());
                }
            }
            out
        }
    };
    Ok((out, code))
}

fn polynomial_text(coeffs: &[i128]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".into(),
            (1, c) => format!("{c}t"),
            (i, 1) => format!("t^{i}"),
            (i, c) => format!("{c}t^{i}"),
        })
        .collect();
    terms.join(" + ")
}

fn cmd_census(args: &CensusArgs, format: Format, caps: &Caps) -> Result<String, Failure> {
    let mut filters = Vec::new();
    if args.simple {
        filters.push(Filter::Simple);
    }
    if args.pure {
        filters.push(Filter::Pure);
    }
    if args.gorenstein {
        filters.push(Filter::Gorenstein);
    }
    if args.extremal {
        filters.push(Filter::ExtremalGorenstein);
    }
    if args.linear {
        filters.push(Filter::LinearResolution);
    }
    if let Some(k) = args.k {
        filters.push(Filter::KValue(k));
    }
    if let Some(r) = args.reg {
        filters.push(Filter::Reg(r));
    }
    let query = CensusQuery {
        n_min: args.nmin,
        n_max: args.nmax,
        filters,
    };
    let hits = census(&query, caps)?;
    if let Some(dir) = &args.dot_dir {
        fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
        for (i, entry) in hits.iter().enumerate() {
            let path = dir.join(format!("n{}_{:04}.dot", entry.poset.len(), i));
            fs::write(&path, to_dot(&entry.poset)).map_err(|e| io_failure(&path, e))?;
        }
    }
    let mut out = String::new();
    for entry in &hits {
        let poset = PosetJson::from_poset(&entry.poset);
        match format {
            Format::Json => {
                let line = CensusLine {
                    poset: &poset,
                    report: &entry.report,
                };
                let _ = writeln!(out, "{}", to_json(&line));
            }
            Format::Text => {
                let _ = writeln!(
                    out,
                    "n={} rank={} reg={} |L|={} relations={:?}",
                    entry.report.p_size,
                    entry.report.rank_p,
                    entry.report.regularity,
                    entry.report.lattice_size,
                    poset.relations
                );
            }
        }
    }
    Ok(out)
}

fn cmd_dot(args: &InputArgs) -> Result<String, Failure> {
    Ok(match read_input(&args.input)? {
        Input::Poset(p) => to_dot(&p),
        Input::Lattice(l) => to_dot(l.order()),
    })
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let caps = caps_from(cli)?;
    let (text, code) = match &cli.command {
        Command::Analyze(a) => (cmd_analyze(a, cli.format, &caps)?, 0),
        Command::Oracle(a) => cmd_oracle(a, cli.format, &caps)?,
        Command::Census(a) => (cmd_census(a, cli.format, &caps)?, 0),
        Command::Dot(a) => (cmd_dot(a)?, 0),
    };
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e))?,
        None => print!("{text}"),
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
