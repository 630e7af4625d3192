//! `dickson-lab`: enumerate Dickson pairs, build the nearfields, verify them,
//! and export their operation tables.

mod config;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dickson_core::numtheory::divisors;
use dickson_core::{
    enumerate_pairs, export_cayley, structure_report, validate_pair, DicksonNearfield, Error,
    FieldTable, Mode, PairReport, StructureReport, TableFormat, TableOp, VerifyOptions,
};
use serde::Serialize;

use config::{Format, RunConfig};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "dickson-lab",
    version,
    about = "Finite Dickson nearfields: construction and verification"
)]
struct Cli {
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest field order that may be tabulated.
    #[arg(long, global = true, default_value_t = dickson_core::DEFAULT_ORDER_CAP)]
    order_cap: u64,

    /// Largest order for exhaustive triple-loop checks.
    #[arg(long, global = true, default_value_t = 729)]
    exhaustive_cap: u32,

    /// Largest order for Cayley table export.
    #[arg(long, global = true, default_value_t = 4096)]
    export_cap: u32,

    /// Samples per law when a check is sampled.
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: u64,

    /// Output format (json unless stated otherwise per command).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List Dickson pairs, or check a single candidate.
    Pairs {
        /// Largest q^n to list.
        #[arg(long, required_unless_present = "check")]
        max_order: Option<u64>,

        /// Smallest n to list.
        #[arg(long, default_value_t = 1)]
        min_n: u32,

        /// Validate one pair; prints "valid" or the violated condition.
        #[arg(long, num_args = 2, value_names = ["Q", "N"], conflicts_with = "max_order")]
        check: Option<Vec<u64>>,
    },

    /// Build DN(q, n) and run every structural check.
    Verify {
        q: u64,
        n: u32,

        /// Use g^OFFSET as the generator (OFFSET coprime to q^n - 1).
        #[arg(long, value_name = "DLOG-OFFSET")]
        generator: Option<u64>,

        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
    },

    /// Write the Cayley table of an operation.
    Table {
        q: u64,
        n: u32,

        #[arg(long, value_enum, default_value_t = OpArg::Circle)]
        op: OpArg,

        /// Output file; stdout when omitted.
        path: Option<PathBuf>,
    },

    /// Describe the field F_{p^m} as this tool constructs it.
    FieldInfo { p: u64, m: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OpArg {
    Add,
    Mul,
    Circle,
}

impl From<OpArg> for TableOp {
    fn from(op: OpArg) -> Self {
        match op {
            OpArg::Add => TableOp::Add,
            OpArg::Mul => TableOp::Mul,
            OpArg::Circle => TableOp::Circle,
        }
    }
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn check(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CHECK_FAILED,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidPair(v) => {
                Failure::usage(format!("invalid: condition {}", v.condition()))
            }
            Error::NotPrime(_)
            | Error::DegreeZero
            | Error::InvalidGenerator { .. }
            | Error::InvalidCode { .. } => Failure::usage(e.to_string()),
            other => Failure::check(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        order_cap: cli.order_cap,
        exhaustive_cap: cli.exhaustive_cap,
        export_cap: cli.export_cap,
        seed: cli.seed,
        samples: cli.samples,
        format: cli.format,
    };
    if let Err(msg) = config.validate() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    configure_threads();

    let result = match cli.command {
        Command::Pairs {
            max_order,
            min_n,
            check,
        } => match check {
            Some(qn) => cmd_check(&config, qn[0], qn[1]),
            None => cmd_pairs(&config, max_order.expect("required by clap"), min_n),
        },
        Command::Verify {
            q,
            n,
            generator,
            mode,
        } => cmd_verify(&config, q, n, generator, mode),
        Command::Table { q, n, op, path } => cmd_table(&config, q, n, op.into(), path),
        Command::FieldInfo { p, m } => cmd_field_info(&config, p, m),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Honors `DICKSON_LAB_THREADS` (0 or unset: rayon's default).
fn configure_threads() {
    let threads = std::env::var("DICKSON_LAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    if threads > 0 {
        // only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
}

fn to_u32(n: u64, what: &str) -> Result<u32, Failure> {
    u32::try_from(n).map_err(|_| Failure::usage(format!("{what} is too large")))
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}

#[derive(Serialize)]
struct PairListing {
    q: u64,
    p: u64,
    l: u32,
    n: u32,
    order: u64,
    trivial: bool,
}

fn cmd_pairs(config: &RunConfig, max_order: u64, min_n: u32) -> Result<u8, Failure> {
    if max_order < 2 {
        return Err(Failure::usage("--max-order must be at least 2"));
    }
    if max_order > config.order_cap {
        return Err(Failure::usage(format!(
            "--max-order {max_order} exceeds --order-cap {}",
            config.order_cap
        )));
    }
    let pairs: Vec<PairListing> = enumerate_pairs(max_order)
        .into_iter()
        .filter(|pair| pair.n() >= min_n)
        .map(|pair| PairListing {
            q: pair.q(),
            p: pair.p(),
            l: pair.l(),
            n: pair.n(),
            order: pair.order().expect("bounded by max_order"),
            trivial: pair.is_trivial(),
        })
        .collect();
    match config.format.unwrap_or(Format::Json) {
        Format::Json => print_json(&pairs),
        Format::Csv => {
            println!("q,p,l,n,order,trivial");
            for r in &pairs {
                println!("{},{},{},{},{},{}", r.q, r.p, r.l, r.n, r.order, r.trivial);
            }
        }
        Format::Text => {
            for r in &pairs {
                println!("({}, {})  q = {}^{}  order {}", r.q, r.n, r.p, r.l, r.order);
            }
        }
    }
    Ok(0)
}

fn cmd_check(config: &RunConfig, q: u64, n: u64) -> Result<u8, Failure> {
    let n = to_u32(n, "n")?;
    if q < 2 || n < 1 {
        return Err(Failure::usage("--check needs q >= 2 and n >= 1"));
    }
    let report = PairReport::new(q, n);
    match config.format.unwrap_or(Format::Text) {
        Format::Json => print_json(&report),
        Format::Text => match validate_pair(q, n) {
            Ok(_) => println!("valid"),
            Err(v) => println!("invalid: condition {}", v.condition()),
        },
        Format::Csv => return Err(Failure::usage("--check supports json and text output")),
    }
    Ok(if report.valid { 0 } else { EXIT_CHECK_FAILED })
}

fn build(
    config: &RunConfig,
    q: u64,
    n: u32,
    generator: Option<u64>,
) -> Result<DicksonNearfield, Failure> {
    if q < 2 || n < 1 {
        return Err(Failure::usage("need q >= 2 and n >= 1"));
    }
    let pair = validate_pair(q, n).map_err(Error::InvalidPair)?;
    let nf = match generator {
        None => DicksonNearfield::with_cap(pair, config.order_cap)?,
        Some(offset) => DicksonNearfield::with_generator_offset(pair, config.order_cap, offset)?,
    };
    Ok(nf)
}

fn cmd_verify(
    config: &RunConfig,
    q: u64,
    n: u32,
    generator: Option<u64>,
    mode: ModeArg,
) -> Result<u8, Failure> {
    let format = config.format.unwrap_or(Format::Json);
    if format == Format::Csv {
        return Err(Failure::usage("verify supports json and text output"));
    }
    let nf = build(config, q, n, generator)?;
    let limits = config.limits();
    let opts = match mode {
        ModeArg::Auto => VerifyOptions::auto(nf.order(), config.seed, limits),
        ModeArg::Exhaustive => VerifyOptions {
            mode: Mode::Exhaustive,
            seed: config.seed,
            limits,
        },
        ModeArg::Sampled => VerifyOptions {
            mode: Mode::Sampled(config.samples),
            seed: config.seed,
            limits,
        },
    };
    let report = structure_report(&nf, &opts)?;
    match format {
        Format::Text => print!("{}", render_text(&report)),
        _ => print_json(&report),
    }
    if report.passed {
        Ok(0)
    } else {
        eprintln!("verification failed; witnesses: {:?}", report.witnesses);
        Ok(EXIT_CHECK_FAILED)
    }
}

fn render_text(r: &StructureReport) -> String {
    let mut out = String::new();
    let yes = |b: bool| if b { "yes" } else { "NO" };
    let pair = &r.pair;
    writeln!(
        out,
        "DN({}, {}) over F_{}^{}, order {}",
        pair.q,
        pair.n,
        pair.p,
        pair.l * pair.n,
        pair.order
    )
    .unwrap();
    writeln!(
        out,
        "modulus {:?}, generator {}",
        pair.field.modulus, pair.field.generator
    )
    .unwrap();
    writeln!(out, "mode {}, seed {}", r.mode, r.seed).unwrap();
    for (name, v) in r.axioms.verdicts() {
        let status = if v.holds { "holds" } else { "fails" };
        let flag = if v.ok() { "" } else { "  <-- unexpected" };
        match &v.witness {
            Some(w) => writeln!(
                out,
                "  {name:<24} {status} ({}) witness {w:?}{flag}",
                v.mode
            )
            .unwrap(),
            None => writeln!(out, "  {name:<24} {status} ({}){flag}", v.mode).unwrap(),
        }
    }
    writeln!(out, "center ({}): {:?}", r.center.size, r.center.elements).unwrap();
    writeln!(out, "kernel ({}): {:?}", r.kernel.size, r.kernel.elements).unwrap();
    let t = &r.theorems;
    writeln!(out, "n | [n]_q and g^[n]_q in H:  {}", yes(t.lemma_1_5)).unwrap();
    writeln!(out, "F_p<g^n> = F_(q^n):          {}", yes(t.lemma_2_8)).unwrap();
    writeln!(out, "F_q in C(R):                 {}", yes(t.thm_2_6)).unwrap();
    writeln!(out, "C(R) in F_q:                 {}", yes(t.thm_2_9)).unwrap();
    writeln!(out, "C(R) = D(R), |C(R)| = q:     {}", yes(t.ellers_karzel)).unwrap();
    writeln!(out, "coupling law:                {}", yes(t.coupling_law)).unwrap();
    writeln!(
        out,
        "coset index additive:        {}",
        yes(t.index_additivity)
    )
    .unwrap();
    writeln!(out, "passed: {}", yes(r.passed)).unwrap();
    out
}

fn cmd_table(
    config: &RunConfig,
    q: u64,
    n: u32,
    op: TableOp,
    path: Option<PathBuf>,
) -> Result<u8, Failure> {
    let format = match config.format.unwrap_or(Format::Json) {
        Format::Json => TableFormat::Json,
        Format::Csv => TableFormat::Csv,
        Format::Text => return Err(Failure::usage("table supports json and csv output")),
    };
    let nf = build(config, q, n, None)?;
    let doc = export_cayley(&nf, op, format, config.export_cap)?;
    eprintln!(
        "{}",
        serde_json::to_string(nf.field().spec()).expect("spec serializes")
    );
    match path {
        Some(path) => std::fs::write(&path, doc)
            .map_err(|e| Failure::check(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{doc}"),
    }
    Ok(0)
}

#[derive(Serialize)]
struct Subfield {
    degree: u32,
    order: u64,
}

#[derive(Serialize)]
struct FieldInfo<'a> {
    spec: &'a dickson_core::FieldSpec,
    order: u32,
    subfields: Vec<Subfield>,
}

fn cmd_field_info(config: &RunConfig, p: u64, m: u32) -> Result<u8, Failure> {
    let field = FieldTable::build_with_cap(p, m, config.order_cap)?;
    let subfields = divisors(m)
        .into_iter()
        .map(|s| Subfield {
            degree: s,
            order: p.pow(s),
        })
        .collect();
    let info = FieldInfo {
        spec: field.spec(),
        order: field.order(),
        subfields,
    };
    match config.format.unwrap_or(Format::Json) {
        Format::Json => print_json(&info),
        Format::Text => {
            println!("F_{p}^{m}, order {}", field.order());
            println!("modulus (constant term first): {:?}", info.spec.modulus);
            println!("generator code: {}", info.spec.generator);
            for s in &info.subfields {
                println!("  subfield of degree {} (order {})", s.degree, s.order);
            }
        }
        Format::Csv => return Err(Failure::usage("field-info supports json and text output")),
    }
    Ok(0)
}
