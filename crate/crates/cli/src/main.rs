//! `rankmetric`: bounds, witnesses, oracle scans and constructions for
//! rank-metric codes from the command line.
//!
//! Exit status: 0 success, 1 usage error, 2 precondition or library error,
//! 3 verification failure.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rankmetric::acceptance::{run_all, run_criterion, CriterionOutcome, CRITERIA};
use rankmetric::bounds::{bounds_report, parse_rational, regions_grid, regions_table, CodeParams};
use rankmetric::codes::{
    crc_from_cdc_pair, crc_theorem8, lift_untransposed_cdc, lifted_mrd_cdc, lifted_mrd_cdc_odd,
    vector_to_json, GabidulinCode, OddVariant,
};
use rankmetric::oracle::{list_codewords, max_list_size_timed, CodeTable, Search};
use rankmetric::witness::{bound1_alt_witness, bound1_witness, bound3_witness, WitnessCertificate};
use rankmetric::{make_field, Error, FieldElement};

const CSV_SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "rankmetric",
    version,
    about = "List-size bounds and witnesses for rank-metric codes"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Every list-size bound defined at the given parameters.
    Bounds {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        tau: u64,
        /// Slack ε in the Johnson radius, e.g. 0, 1/10 or 0.1.
        #[arg(long, default_value = "0")]
        epsilon: String,
    },
    /// Explicit received word with a certified list.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Brute-force list sizes for a Gabidulin code.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Constant-dimension and constant-rank code constructions.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Asymptotic decoding-radius table over a grid of relative distances.
    Regions {
        /// Grid step for δ in (0, 1].
        #[arg(long, default_value = "0.05")]
        grid: String,
        /// Also tabulate the finite length `n` with d = ⌊δn⌋.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Run the acceptance checks and report one line per criterion.
    Verify {
        /// Worker threads for the exhaustive scan.
        #[arg(long)]
        jobs: Option<usize>,
        /// Run only these criteria (1–12).
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<u8>,
    },
}

#[derive(Args, Clone, Copy)]
struct CodeArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    n: u64,
    /// Minimum rank distance.
    #[arg(long, required_unless_present = "k")]
    d: Option<u64>,
    /// Code dimension (d = n − k + 1).
    #[arg(long)]
    k: Option<u64>,
}

impl CodeArgs {
    fn params(&self) -> rankmetric::Result<CodeParams> {
        CodeParams::new(self.q, self.m, self.n, self.d, self.k)
    }

    fn gabidulin(&self) -> rankmetric::Result<GabidulinCode> {
        let p = self.params()?;
        let field = make_field(p.q, p.m as usize, None)?;
        GabidulinCode::new(&field, p.n as usize, p.mrd_dimension() as usize)
    }
}

#[derive(Subcommand)]
enum WitnessCommand {
    /// Subspace-polynomial pigeonhole witness (n = m).
    Bound1 {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        tau: u64,
    },
    /// Best coset of the direct-sum construction (n = m).
    Alt {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        tau: u64,
    },
    /// Constant-rank code around the zero word or a translate.
    Bound3 {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        tau: u64,
        /// 1-based index of the code word used as the received word.
        #[arg(long)]
        translate: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Every codeword within radius τ of one received word.
    List {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        tau: usize,
        /// Received word as comma-separated packed element indices.
        #[arg(long, value_delimiter = ',', required = true)]
        word: Vec<u64>,
    },
    /// Largest list over received words.
    Max {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        tau: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
        /// Leave out wall time so reports are byte-identical across runs.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// Lifted MRD constant-dimension code (even d).
    Cdc {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tau: usize,
        #[arg(long)]
        d: usize,
        /// Lift the codewords without transposing (for τ ≥ n − τ).
        #[arg(long)]
        untransposed: bool,
    },
    /// Lifted MRD code at distance d − 1 or d + 1 for odd d.
    CdcOdd {
        #[arg(long)]
        q: u64,
        /// Ambient dimension.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tau: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = parse_variant)]
        variant: OddVariant,
    },
    /// Constant-rank code from two lifted MRD codes in F_q^m and F_q^n.
    Crc {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tau: usize,
        /// Subspace distance of the code in F_q^m.
        #[arg(long)]
        d_m: usize,
        /// Subspace distance of the code in F_q^n.
        #[arg(long)]
        d_n: usize,
    },
    /// Constant-rank code of rank τ and distance at least d.
    CrcTheorem8 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tau: usize,
        #[arg(long)]
        d: usize,
    },
}

fn parse_variant(s: &str) -> Result<OddVariant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Library(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

struct Report {
    json: Value,
    csv: Option<CsvTable>,
    /// Set when the report is written but a check inside it failed.
    failure: Option<String>,
}

struct CsvTable {
    schema: &'static str,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Report {
    fn json(json: Value) -> Self {
        Report {
            json,
            csv: None,
            failure: None,
        }
    }

    fn with_csv(json: Value, csv: CsvTable) -> Self {
        Report {
            json,
            csv: Some(csv),
            failure: None,
        }
    }
}

/// Dotted-path `(key, value)` rows of a JSON document.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<Vec<String>>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        Value::Null => out.push(vec![prefix.into(), String::new()]),
        Value::String(s) => out.push(vec![prefix.into(), s.clone()]),
        other => out.push(vec![prefix.into(), other.to_string()]),
    }
}

fn render(report: &Report, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => {
            Ok(serde_json::to_string_pretty(&report.json).expect("serializable") + "\n")
        }
        Format::Csv => {
            let Some(table) = &report.csv else {
                return Err(Error::Unsupported(
                    "CSV output is not available for this command".into(),
                )
                .into());
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.header)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            let body = String::from_utf8(
                w.into_inner()
                    .map_err(|e| io::Error::other(e.to_string()))?,
            )
            .expect("utf-8");
            Ok(format!(
                "# {} schema v{CSV_SCHEMA_VERSION}\n{body}",
                table.schema
            ))
        }
    }
}

fn word_arg(field: &rankmetric::Field, word: &[u64]) -> Result<Vec<FieldElement>, Error> {
    word.iter()
        .map(|&i| {
            let e = FieldElement::from_index(i);
            if field.contains(e) {
                Ok(e)
            } else {
                Err(Error::InvalidElement(format!(
                    "{i} is not an element of F_{}",
                    field.order()
                )))
            }
        })
        .collect()
}

fn certificate(cert: WitnessCertificate) -> Result<Report, Failure> {
    let mut report = Report::json(serde_json::to_value(cert.to_json()).expect("serializable"));
    if !cert.verified {
        report.failure = Some("certificate failed self-verification".into());
    }
    Ok(report)
}

fn verify_report(outcomes: &[CriterionOutcome]) -> Report {
    let rows = outcomes
        .iter()
        .map(|o| {
            vec![
                o.id.to_string(),
                o.name.to_string(),
                o.passed.to_string(),
                o.elapsed_ms.to_string(),
                o.limit_ms.to_string(),
                o.detail.clone(),
            ]
        })
        .collect();
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| format!("criterion {} ({}): {}", o.id, o.name, o.detail))
        .collect();
    let mut report = Report::with_csv(
        json!({
            "passed": failed.is_empty(),
            "criteria": outcomes,
        }),
        CsvTable {
            schema: "rankmetric-verify",
            header: vec!["id", "name", "passed", "elapsed_ms", "limit_ms", "detail"],
            rows,
        },
    );
    if !failed.is_empty() {
        report.failure = Some(failed.join("\n"));
    }
    report
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Bounds { code, tau, epsilon } => {
            let p = code.params()?;
            let eps = parse_rational(epsilon)?;
            let json = serde_json::to_value(bounds_report(&p, *tau, &eps)?).expect("serializable");
            let mut rows = Vec::new();
            flatten("", &json, &mut rows);
            Ok(Report::with_csv(
                json,
                CsvTable {
                    schema: "rankmetric-bounds",
                    header: vec!["quantity", "value"],
                    rows,
                },
            ))
        }
        Command::Witness(w) => match w {
            WitnessCommand::Bound1 { code, tau } => {
                certificate(bound1_witness(&code.gabidulin()?, *tau as usize)?)
            }
            WitnessCommand::Alt { code, tau } => {
                let p = code.params()?;
                if p.n != p.m {
                    return Err(Error::Unsupported(format!(
                        "the direct-sum witness needs n = m, got n = {}, m = {}",
                        p.n, p.m
                    ))
                    .into());
                }
                let field = make_field(p.q, p.m as usize, None)?;
                certificate(bound1_alt_witness(&field, p.d as usize, *tau as usize)?)
            }
            WitnessCommand::Bound3 {
                code,
                tau,
                translate,
            } => {
                let p = code.params()?;
                certificate(bound3_witness(
                    p.n as usize,
                    p.m as usize,
                    *tau as usize,
                    p.d as usize,
                    p.q,
                    *translate,
                )?)
            }
        },
        Command::Oracle(o) => match o {
            OracleCommand::List { code, tau, word } => {
                let gab = code.gabidulin()?;
                let table = CodeTable::from_gabidulin(&gab)?;
                let r = word_arg(gab.field(), word)?;
                let res = list_codewords(&table, &r, *tau)?;
                Ok(Report::json(
                    serde_json::to_value(res.to_json(gab.field())).expect("serializable"),
                ))
            }
            OracleCommand::Max {
                code,
                tau,
                mode,
                trials,
                seed,
                jobs,
                no_timing,
            } => {
                let gab = code.gabidulin()?;
                let table = CodeTable::from_gabidulin(&gab)?;
                let search = match mode {
                    Mode::Exhaustive => Search::Exhaustive,
                    Mode::Random => Search::Random {
                        seed: *seed,
                        trials: *trials,
                    },
                };
                let (res, ms) = max_list_size_timed(&table, *tau, search, *jobs)?;
                let field = gab.field();
                let mut json = json!({
                    "q": field.q(),
                    "m": field.m(),
                    "n": gab.n(),
                    "k": gab.k(),
                    "d": gab.d(),
                    "tau": tau,
                    "search": search,
                    "ell": res.ell,
                    "argmax_word": vector_to_json(field, &res.argmax_word),
                    "argmax_indices": res.argmax_word.iter().map(|e| e.index()).collect::<Vec<_>>(),
                    "words_scanned": res.words_scanned,
                });
                let elapsed = if *no_timing {
                    String::new()
                } else {
                    ms.to_string()
                };
                if !no_timing {
                    json["elapsed_ms"] = json!(ms);
                }
                let word: Vec<String> = res
                    .argmax_word
                    .iter()
                    .map(|e| e.index().to_string())
                    .collect();
                Ok(Report::with_csv(
                    json,
                    CsvTable {
                        schema: "rankmetric-oracle-max",
                        header: vec!["ell", "argmax_indices", "words_scanned", "elapsed_ms"],
                        rows: vec![vec![
                            res.ell.to_string(),
                            word.join(" "),
                            res.words_scanned.to_string(),
                            elapsed,
                        ]],
                    },
                ))
            }
        },
        Command::Construct(c) => {
            let json = match c {
                ConstructCommand::Cdc {
                    q,
                    n,
                    tau,
                    d,
                    untransposed,
                } => {
                    let cdc = if *untransposed {
                        lift_untransposed_cdc(*n, *tau, *d, *q)?
                    } else {
                        lifted_mrd_cdc(*n, *tau, *d, *q)?
                    };
                    serde_json::to_value(cdc.to_json())
                }
                ConstructCommand::CdcOdd {
                    q,
                    n,
                    tau,
                    d,
                    variant,
                } => {
                    serde_json::to_value(lifted_mrd_cdc_odd(*n, *tau, *d, *variant, *q)?.to_json())
                }
                ConstructCommand::Crc {
                    q,
                    m,
                    n,
                    tau,
                    d_m,
                    d_n,
                } => {
                    let big_m = lifted_mrd_cdc(*m, *tau, *d_m, *q)?;
                    let big_n = lifted_mrd_cdc(*n, *tau, *d_n, *q)?;
                    let field = make_field(*q, *m, None)?;
                    serde_json::to_value(crc_from_cdc_pair(&big_m, &big_n, &field)?.to_json())
                }
                ConstructCommand::CrcTheorem8 { q, m, n, tau, d } => {
                    serde_json::to_value(crc_theorem8(*n, *m, *tau, *d, *q)?.to_json())
                }
            };
            Ok(Report::json(json.expect("serializable")))
        }
        Command::Regions { grid, n } => {
            let table = regions_table(&regions_grid(&parse_rational(grid)?)?, *n)?;
            let rows = table
                .iter()
                .map(|r| {
                    let fin = r.finite.as_ref();
                    vec![
                        r.delta.to_string(),
                        r.tau_bmd.to_string(),
                        r.tau_j.to_string(),
                        fin.map_or(String::new(), |f| f.n.to_string()),
                        fin.map_or(String::new(), |f| f.d.to_string()),
                        fin.map_or(String::new(), |f| f.tau_bmd.to_string()),
                        fin.map_or(String::new(), |f| f.tau_j.to_string()),
                    ]
                })
                .collect();
            Ok(Report::with_csv(
                serde_json::to_value(&table).expect("serializable"),
                CsvTable {
                    schema: "rankmetric-regions",
                    header: vec![
                        "delta",
                        "tau_bmd",
                        "tau_j",
                        "n",
                        "d",
                        "tau_bmd_n",
                        "tau_j_n",
                    ],
                    rows,
                },
            ))
        }
        Command::Verify { jobs, criterion } => {
            let outcomes: Vec<_> = if criterion.is_empty() {
                run_all(*jobs)
            } else {
                criterion
                    .iter()
                    .map(|&id| {
                        run_criterion(id, *jobs).ok_or_else(|| {
                            Error::Precondition(format!(
                                "unknown criterion {id}; valid ids are 1..={}",
                                CRITERIA.len()
                            ))
                        })
                    })
                    .collect::<Result<_, _>>()?
            };
            for o in &outcomes {
                eprintln!("{o}");
            }
            Ok(verify_report(&outcomes))
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), Failure> {
    let text = render(report, cli.format)?;
    match &cli.output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = run(&cli).and_then(|report| emit(&cli, &report).map(|()| report.failure));
    match outcome {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(msg)) => {
            eprintln!("verification failed:\n{msg}");
            ExitCode::from(3)
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
