//! `qmb`: normal forms, quantum minors, identity checks and Ore witnesses in
//! the quantum matrix bialgebra `M_q(n)` over `Q(q)`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qmb_core::identities::{self, CheckStatus, IdentityError, ResultRecord, SuiteConfig};
use qmb_core::ore::{self, OreEngine, OreError, Side, Strategy, VerifyError, WitnessFile};
use qmb_core::text::{parse_expression, ParseError};
use qmb_core::{minors, IndexSet, MinorId, QAlgebra, QElement, Rational};

const DEFAULT_MAX_DEGREE: usize = 16;

#[derive(Parser)]
#[command(
    name = "qmb",
    version,
    about = "Exact computations in the quantum matrix bialgebra M_q(n)"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct MinorArgs {
    /// Row labels, e.g. 1,2
    #[arg(long, value_parser = parse_labels)]
    minor_rows: IndexSet,
    /// Column labels, e.g. 1,3
    #[arg(long, value_parser = parse_labels)]
    minor_cols: IndexSet,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdentityArg {
    Centrality,
    QCommutation,
    Muir,
    GapOne,
    GapR,
    RowGap,
    MinorTranspose,
    E0Membership,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the normal form of an expression.
    Nf {
        #[arg(long)]
        n: usize,
        expr: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the quantum minor with the given rows and columns.
    Minor {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        minor: MinorArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print a b - b a.
    Commutator {
        #[arg(long)]
        n: usize,
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check one minor identity on one configuration.
    Identity {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        name: IdentityArg,
        #[command(flatten)]
        minor: MinorArgs,
        /// Generator row
        #[arg(long)]
        k: Option<u8>,
        /// Generator column
        #[arg(long)]
        l: Option<u8>,
        /// Rows of the second minor (Muir)
        #[arg(long, value_parser = parse_labels)]
        other_rows: Option<IndexSet>,
        /// Columns of the second minor (Muir)
        #[arg(long, value_parser = parse_labels)]
        other_cols: Option<IndexSet>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compute and certify an Ore witness.
    Ore {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        minor: MinorArgs,
        #[arg(long)]
        elem: String,
        #[arg(long, default_value = "left")]
        side: Side,
        /// Largest power tried by the solver (default |K| + degree)
        #[arg(long)]
        max_power: Option<u32>,
        #[arg(long, value_enum, default_value = "solver")]
        strategy: StrategyArg,
        /// Clear against this power of the minor
        #[arg(long, default_value_t = 1)]
        target: u32,
        /// Further minors ROWS/COLS (e.g. 2,3/2,3); the witness is then a
        /// chain against the product of all minors
        #[arg(long = "then-minor", value_parser = parse_minor)]
        then: Vec<MinorId>,
        /// Write the witness file here instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Re-check a witness file.
    VerifyWitness {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Sweep every identity over all minors for sizes 2..=n.
    Suite {
        #[arg(long)]
        n: u8,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Solver,
    Constructive,
    Both,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Solver => Strategy::Solver,
            StrategyArg::Constructive => Strategy::Constructive,
            StrategyArg::Both => Strategy::Both,
        }
    }
}

fn parse_labels(s: &str) -> Result<IndexSet, String> {
    let labels = s
        .split(',')
        .map(|x| x.trim().parse::<u8>().map_err(|_| format!("bad label {x:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    IndexSet::from_unsorted(labels).map_err(|e| e.to_string())
}

fn parse_minor(s: &str) -> Result<MinorId, String> {
    let (r, c) = s.split_once('/').ok_or("expected ROWS/COLS")?;
    MinorId::new(parse_labels(r)?, parse_labels(c)?).map_err(|e| e.to_string())
}

/// Exit statuses.
enum Failure {
    Io(String),
    Parse(String),
    Precondition(String),
    Unsat(String),
    Certificate(String),
    DegreeCap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Parse(_) => 3,
            Failure::Precondition(_) => 4,
            Failure::Unsat(_) => 5,
            Failure::Certificate(_) => 6,
            Failure::DegreeCap(_) => 7,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m)
            | Failure::Parse(m)
            | Failure::Precondition(m)
            | Failure::Unsat(m)
            | Failure::Certificate(m)
            | Failure::DegreeCap(m) => m,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        if e.exceeds_degree_cap() {
            Failure::DegreeCap(e.to_string())
        } else {
            Failure::Parse(e.to_string())
        }
    }
}

impl From<OreError> for Failure {
    fn from(e: OreError) -> Self {
        match &e {
            _ if e.exceeds_degree_cap() => Failure::DegreeCap(e.to_string()),
            OreError::Unsat { .. } => Failure::Unsat(e.to_string()),
            OreError::CertificateFailed(_) | OreError::Internal(_) => Failure::Certificate(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

impl From<IdentityError> for Failure {
    fn from(e: IdentityError) -> Self {
        if e.exceeds_degree_cap() {
            Failure::DegreeCap(e.to_string())
        } else {
            Failure::Precondition(e.to_string())
        }
    }
}

impl From<minors::MinorError> for Failure {
    fn from(e: minors::MinorError) -> Self {
        if e.exceeds_degree_cap() {
            Failure::DegreeCap(e.to_string())
        } else {
            Failure::Precondition(e.to_string())
        }
    }
}

impl From<qmb_core::algebra::AlgebraError> for Failure {
    fn from(e: qmb_core::algebra::AlgebraError) -> Self {
        if e.exceeds_degree_cap() {
            Failure::DegreeCap(e.to_string())
        } else {
            Failure::Precondition(e.to_string())
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Format(m) => Failure::Parse(m),
            VerifyError::Parse { .. } => Failure::Parse(e.to_string()),
            VerifyError::Ore(o) => o.into(),
        }
    }
}

fn max_degree() -> Result<usize, Failure> {
    match std::env::var("QMB_MAX_DEGREE") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Precondition(format!("QMB_MAX_DEGREE must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn algebra(n: usize) -> Result<QAlgebra, Failure> {
    Ok(QAlgebra::new(n)?.with_max_degree(max_degree()?))
}

fn check_minor(n: usize, m: &MinorArgs) -> Result<MinorId, Failure> {
    let id = MinorId::new(m.minor_rows.clone(), m.minor_cols.clone())?;
    id.rows.check_range(n as u8)?;
    id.cols.check_range(n as u8)?;
    Ok(id)
}

fn element_json(e: &QElement) -> serde_json::Value {
    json!({
        "element": e.to_string(),
        "terms": e.len(),
        "degree": e.degree(),
    })
}

fn print_element(e: &QElement, format: Format) {
    match format {
        Format::Text => println!("{e}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&element_json(e)).unwrap()),
    }
}

fn write_out(path: &Option<PathBuf>, body: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, format!("{body}\n")).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Nf { n, expr, format } => {
            let a = algebra(n)?;
            print_element(&parse_expression(&a, &expr)?, format);
        }
        Cmd::Minor { n, minor, format } => {
            let a = algebra(n)?;
            let id = check_minor(n, &minor)?;
            print_element(&minors::quantum_minor(&a, &id)?, format);
        }
        Cmd::Commutator { n, a: x, b: y, format } => {
            let a = algebra(n)?;
            let x = parse_expression(&a, &x)?;
            let y = parse_expression(&a, &y)?;
            print_element(&a.commutator(&x, &y)?, format);
        }
        Cmd::Identity {
            n,
            name,
            minor,
            k,
            l,
            other_rows,
            other_cols,
            format,
        } => {
            let a = algebra(n)?;
            let id = check_minor(n, &minor)?;
            let generator = || match (k, l) {
                (Some(k), Some(l)) if (1..=n as u8).contains(&k) && (1..=n as u8).contains(&l) => Ok((k, l)),
                (Some(_), Some(_)) => Err(Failure::Precondition(format!("generator out of range for n = {n}"))),
                _ => Err(Failure::Precondition("this identity needs --k and --l".into())),
            };
            let res = match name {
                IdentityArg::Centrality => {
                    let (k, l) = generator()?;
                    identities::check_centrality(&a, &id, k, l)?
                }
                IdentityArg::QCommutation => {
                    let (k, l) = generator()?;
                    identities::check_qcommutation(&a, &id, k, l)?
                }
                IdentityArg::GapOne => {
                    let (k, l) = generator()?;
                    identities::check_gap_one(&a, &id, k, l)?
                }
                IdentityArg::GapR => {
                    let (k, l) = generator()?;
                    identities::check_gap_r(&a, &id, k, l)?
                }
                IdentityArg::RowGap => {
                    let (k, l) = generator()?;
                    identities::check_row_gap(&a, &id, k, l)?
                }
                IdentityArg::E0Membership => {
                    let (k, l) = generator()?;
                    identities::check_e0_membership(&a, &id, k, l, &identities::E0Expr::minor_expansion(&id))?.0
                }
                IdentityArg::MinorTranspose => identities::check_minor_transpose(&a, &id)?,
                IdentityArg::Muir => {
                    let other = MinorId::new(
                        other_rows.unwrap_or_else(|| id.rows.clone()),
                        other_cols.unwrap_or_else(|| id.cols.clone()),
                    )?;
                    other.rows.check_range(n as u8)?;
                    other.cols.check_range(n as u8)?;
                    identities::check_muir(&a, &id, &other)?
                }
            };
            let record = ResultRecord::from(&res);
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&record).unwrap()),
                Format::Text => {
                    let status = match record.status {
                        CheckStatus::Verified => "verified",
                        CheckStatus::Failed => "failed",
                        CheckStatus::NotApplicable => "not applicable",
                    };
                    println!("{}: {status}", record.identity.as_str());
                    if let Some(c) = &record.convention {
                        println!("convention: {} -> {}", c.class, c.value);
                    }
                    if let Some(note) = &record.note {
                        println!("note: {note}");
                    }
                    println!("residual: {}", record.residual);
                }
            }
            match res.status {
                CheckStatus::Verified => {}
                CheckStatus::Failed => return Err(Failure::Certificate("identity does not hold".into())),
                CheckStatus::NotApplicable => {
                    return Err(Failure::Precondition(format!(
                        "not applicable: {}",
                        res.note.unwrap_or_default()
                    )))
                }
            }
        }
        Cmd::Ore {
            n,
            minor,
            elem,
            side,
            max_power,
            strategy,
            target,
            then,
            output,
            format,
        } => {
            let a = algebra(n)?;
            let id = check_minor(n, &minor)?;
            let e = parse_expression(&a, &elem)?;
            let file = if then.is_empty() {
                let eng = OreEngine::new(&a, &id, side)?;
                let mut w = match (strategy, max_power) {
                    (StrategyArg::Solver, m) => eng.solve(&e, m)?,
                    (s, _) => eng.witness_for_element(&e, s.into())?,
                };
                if target != 1 {
                    w = eng.extend_to_power(&w, target)?;
                }
                WitnessFile::from_witness(n as u8, &w)
            } else {
                if target != 1 {
                    return Err(Failure::Precondition(
                        "--target applies to single-minor witnesses".into(),
                    ));
                }
                let mut all = vec![id];
                for m in then {
                    m.rows.check_range(n as u8)?;
                    m.cols.check_range(n as u8)?;
                    all.push(m);
                }
                let c = ore::multi_minor_witness(&a, &all, &e, side, strategy.into())?;
                WitnessFile::from_chain(n as u8, &c)
            };
            let json = file.to_json();
            match format {
                Format::Json => write_out(&output, &json)?,
                Format::Text => {
                    if let Some(p) = &output {
                        std::fs::write(p, format!("{json}\n"))
                            .map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
                    }
                    print_summary(&file);
                }
            }
        }
        Cmd::VerifyWitness { path, format } => {
            let body = std::fs::read_to_string(&path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            let file = WitnessFile::from_json(&body)?;
            let a = algebra(file.n as usize)?;
            let report = ore::verify_witness_file(&a, &file)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                Format::Text => {
                    println!(
                        "certified: {}, derivation: {} ({} nodes)",
                        report.certified,
                        if report.derivation_ok { "ok" } else { "broken" },
                        report.nodes_checked
                    );
                    if let Some(bad) = &report.failing_node {
                        println!("failing node: {bad}");
                    }
                }
            }
            if !report.ok() {
                return Err(Failure::Certificate("witness file does not verify".into()));
            }
        }
        Cmd::Suite {
            n,
            k_max,
            output,
            format,
        } => {
            if n < 1 {
                return Err(Failure::Precondition("n must be at least 1".into()));
            }
            let mut config = SuiteConfig::new(n, k_max);
            config.max_degree = Some(max_degree()?);
            let report = identities::run_suite::<Rational>(&config)?;
            match format {
                Format::Json => write_out(&output, &report.to_json())?,
                Format::Text => write_out(&output, &report.summary())?,
            }
            if !report.all_verified() {
                return Err(Failure::Certificate(format!("{} checks failed", report.total_failed())));
            }
        }
    }
    Ok(())
}

fn print_summary(file: &WitnessFile) {
    if let Some(w) = &file.witness {
        println!(
            "minor: rows {:?} cols {:?} ({} form)",
            w.minor.rows, w.minor.cols, w.side
        );
        println!("power: {}", w.power);
        if w.target != 1 {
            println!("target: {}", w.target);
        }
        println!("scale: {}", w.scale);
        println!("cofactor: {}", w.cofactor);
        println!(
            "rule: {}",
            serde_json::to_value(w.derivation.rule).unwrap().as_str().unwrap()
        );
        println!("certified: {}", w.certified);
    }
    if let Some(c) = &file.chain {
        println!("powers: {:?}", c.powers);
        println!("scale: {}", c.scale);
        println!("cofactor: {}", c.cofactor);
        println!("certified: {}", c.certified);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("qmb: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
