use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kkw_core::anchors::{self, CHECK_IDS};
use kkw_core::engine::{numeric_h1, Check};
use kkw_core::oracle::seed_from_env;
use kkw_core::{Engine, Error, Pole, Scalar, VolumeReport};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "kkw",
    version,
    about = "Exact boundary residue terms for pi^+ D^-p1 o pi^+ D^-p2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PoleArg {
    Upper,
    Lower,
}

impl From<PoleArg> for Pole {
    fn from(p: PoleArg) -> Self {
        match p {
            PoleArg::Upper => Pole::Upper,
            PoleArg::Lower => Pole::Lower,
        }
    }
}

#[derive(clap::Args)]
struct EngineArgs {
    /// Bind h1 = h'(0) to a rational, e.g. 1 or -3/2. Formal when omitted.
    #[arg(long, value_parser = parse_h1)]
    h1: Option<Scalar>,
    /// Which pole pi^+ keeps.
    #[arg(long, value_enum, default_value = "upper")]
    projection_pole: PoleArg,
}

impl EngineArgs {
    fn engine(&self) -> Engine {
        let e = Engine::new().with_projection(self.projection_pole.into());
        match &self.h1 {
            Some(h1) => e.with_h1(h1.clone()),
            None => e,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Boundary density for one dimension and pair of orders.
    Compute {
        #[arg(long)]
        dim: usize,
        /// Comma-separated powers, e.g. 2,2.
        #[arg(long, value_parser = parse_orders)]
        orders: (u32, u32),
        #[arg(long)]
        json: bool,
        /// Append a floating-point audit of every case.
        #[arg(long)]
        numeric: bool,
        /// Monte-Carlo samples per sphere moment in the numeric audit.
        #[arg(long, default_value_t = 200_000)]
        samples: usize,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Recompute named quantities and compare them with the expected table.
    Verify {
        /// Check ids; see `--all` for the full list.
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(CHECK_IDS))]
        labels: Vec<String>,
        #[arg(long, conflicts_with = "labels")]
        all: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Literature constants that are quoted, never computed.
    Constants {
        #[arg(long)]
        json: bool,
    },
}

fn parse_orders(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected P1,P2, got `{s}`"))?;
    let p = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|e| format!("bad order `{t}`: {e}"))
    };
    Ok((p(a)?, p(b)?))
}

fn parse_h1(s: &str) -> Result<Scalar, String> {
    kkw_core::scalar::parse_rational(s.trim())
        .map(|q| Scalar::ratio(1, 1).scale(&kkw_core::GaussianRational::new(q, Default::default())))
        .ok_or_else(|| format!("expected a rational such as 1 or -3/2, got `{s}`"))
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::SymbolNotModeled(_)
        | Error::UnsupportedPower(_)
        | Error::UnsupportedDimension(_)
        | Error::JetOrderExceeded { .. }
        | Error::JetUnavailable(_) => EXIT_UNSUPPORTED,
        Error::UnknownCheck(_) | Error::Parse { .. } => EXIT_USAGE,
        _ => EXIT_MISMATCH,
    }
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn print_report(r: &VolumeReport) {
    println!(
        "n = {}, (p1, p2) = ({}, {}), h1 = {}, projection keeps the {} pole",
        r.dim, r.p1, r.p2, r.h1, r.projection
    );
    for w in &r.warnings {
        println!("warning: {w}");
    }
    for c in &r.cases {
        let t = &c.term;
        println!(
            "case {:<6} r={} l={} k={} j={} |alpha|={}: {}",
            c.label, t.r, t.l, t.k, t.j, t.alpha, c.density
        );
        for line in &c.audit {
            println!("    {line}");
        }
    }
    println!("boundary density: {}", r.boundary_density);
    println!("boundary total: {}", r.boundary_total);
    println!("{}", r.interior_note);
    if !r.checks.is_empty() {
        println!("checks:");
        for c in &r.checks {
            print_check(c, "  ");
        }
    }
    if let Some(n) = &r.numeric {
        println!(
            "numeric audit (h1 = {}, tolerance {:e}, seed {}):",
            n.h1, n.tolerance, r.seed
        );
        for c in &n.cases {
            println!(
                "  {} {:<6} exact {:+.12e}{:+.12e}i  quadrature {:+.12e}{:+.12e}i  |diff| {:.2e}",
                if c.pass { "PASS" } else { "FAIL" },
                c.label,
                c.exact[0],
                c.exact[1],
                c.quadrature[0],
                c.quadrature[1],
                c.abs_error
            );
        }
        for s in &n.sphere {
            println!(
                "  {} sphere {} on S^{}: exact {:.8} monte carlo {:.8} +- {:.2e}",
                if s.pass { "PASS" } else { "FAIL" },
                s.monomial,
                s.dim - 1,
                s.exact,
                s.estimate,
                s.sigma
            );
        }
    }
}

fn print_check(c: &Check, indent: &str) {
    println!(
        "{indent}{} {}",
        if c.pass { "PASS" } else { "FAIL" },
        c.name
    );
    if c.pass {
        return;
    }
    for (e, g) in c.expected.split("; ").zip(c.got.split("; ")) {
        if e != g {
            println!("{indent}  - {e}");
            println!("{indent}  + {g}");
        }
    }
}

fn compute(
    dim: usize,
    (p1, p2): (u32, u32),
    json: bool,
    numeric: bool,
    samples: usize,
    args: &EngineArgs,
) -> Result<u8, Error> {
    let engine = args.engine();
    let mut report = engine.compute_phi(dim, p1, p2)?;
    if numeric {
        let h1 = numeric_h1(engine.h1());
        report.numeric = Some(engine.numeric_audit(&report, h1, 1e-8, samples, report.seed)?);
    }
    if json {
        print_json(&report);
    } else {
        print_report(&report);
    }
    Ok(0)
}

fn verify(labels: &[String], all: bool, json: bool, args: &EngineArgs) -> Result<u8, Error> {
    let engine = args.engine();
    let ids: Vec<&str> = if all || labels.is_empty() {
        CHECK_IDS.to_vec()
    } else {
        labels.iter().map(String::as_str).collect()
    };
    let checks = ids
        .iter()
        .map(|id| anchors::run_check(&engine, id))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = checks.iter().filter(|c| c.pass).count();
    if json {
        print_json(&serde_json::json!({
            "checks": checks,
            "passed": passed,
            "total": checks.len(),
            "seed": seed_from_env(),
        }));
    } else {
        for c in &checks {
            print_check(c, "");
        }
        println!("{passed}/{} PASS", checks.len());
    }
    Ok(if passed == checks.len() {
        0
    } else {
        EXIT_MISMATCH
    })
}

fn constants(json: bool) {
    let rows = anchors::cited_constants();
    if json {
        print_json(&rows);
        return;
    }
    for r in rows {
        println!(
            "{:<28} {:<44} cited, not computed ({})",
            r.quantity, r.value, r.source
        );
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute {
            dim,
            orders,
            json,
            numeric,
            samples,
            engine,
        } => compute(*dim, *orders, *json, *numeric, *samples, engine),
        Command::Verify {
            labels,
            all,
            json,
            engine,
        } => verify(labels, *all, *json, engine),
        Command::Constants { json } => {
            constants(*json);
            Ok(0)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
