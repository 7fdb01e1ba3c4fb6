//! `prodrec` command-line tool.
//!
//! Exit status: 0 on success or a positive answer, 1 on a negative answer
//! (not recognized, not a product), 2 on bad input. Results go to standard
//! output as JSON unless `--json false` is given; diagnostics go to standard
//! error unless `--quiet` is given.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use prodrec::info::{is_independent_exact, mutual_info_f, InfoFunction};
use prodrec::matroid::{hypersimplex_slack, expr_to_slack, recognize_2level_matroid_slack, MatroidExpr, RowRole, Side};
use prodrec::oracle::{bf_one_product, bf_submodular_min, bf_two_product, OracleReport, Witness};
use prodrec::polytope::{normalize_nonredundant, slack_from_vh, HRep, VRep};
use prodrec::product::{factorize_irreducible, one_product, recognize_one_product};
use prodrec::shuffle::{shuffle, SHUFFLE_ALGORITHM};
use prodrec::two_product::recognize_two_product;
use prodrec::{Error, Matrix, Rational, RowSubset};

#[derive(Parser)]
#[command(name = "prodrec", version, about = "Recognize 1-products and 2-products of matrices")]
struct Cli {
    /// Print results as JSON (default) or as plain text.
    #[arg(long, global = true, default_value_t = true, action = clap::ArgAction::Set)]
    json: bool,

    /// Suppress diagnostics on standard error.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// f(X) in bits and the exact independence verdict for a row subset.
    Info {
        matrix: PathBuf,
        /// Comma separated row indices, e.g. "0,1".
        subset: String,
    },
    /// Recognize a 1-product, a 2-product or a matroid base polytope slack matrix.
    Recognize {
        #[arg(value_enum)]
        kind: Kind,
        matrix: PathBuf,
    },
    /// Split a matrix into irreducible 1-product factors.
    Factor { matrix: PathBuf },
    /// Write a matrix in the text format.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
    /// Slack matrix of a polytope given by its points and inequalities.
    Slack(SlackArgs),
    /// Brute-force reference answers.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        matrix: PathBuf,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Kind {
    #[value(name = "1p")]
    OneProduct,
    #[value(name = "2p")]
    TwoProduct,
    Matroid,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum OracleKind {
    #[value(name = "1p")]
    OneProduct,
    #[value(name = "2p")]
    TwoProduct,
    /// Exhaustive minimum of f over nonempty proper row subsets.
    Min,
}

#[derive(Subcommand)]
enum Gen {
    /// Slack matrix of the hypersimplex Δ(d, k).
    Hypersimplex { d: usize, k: usize },
    /// Slack matrix of a matroid expression, given inline or as a file.
    Expr { expr: String },
    /// 1-product of the given matrices, left to right.
    Product {
        #[arg(required = true, num_args = 2..)]
        matrices: Vec<PathBuf>,
    },
    /// Rows and columns shuffled reproducibly from a 64-bit seed.
    Shuffle {
        matrix: PathBuf,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Args)]
struct SlackArgs {
    #[arg(long)]
    vertices: PathBuf,
    #[arg(long)]
    ineq: PathBuf,
    /// Drop redundant rows and columns.
    #[arg(long)]
    normalize: bool,
}

/// Failure to produce an answer; always exit status 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

enum Output {
    /// JSON payload and its plain text rendering.
    Report { json: Value, text: String, positive: bool },
    /// A matrix in the text format.
    Matrix(Matrix),
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<Matrix, Failure> {
    Matrix::parse(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn entry(v: &Rational) -> Value {
    if v.is_integer() {
        v.to_integer()
            .to_string()
            .parse::<serde_json::Number>()
            .map(Value::Number)
            .unwrap_or_else(|_| Value::String(v.to_string()))
    } else {
        Value::String(v.to_string())
    }
}

/// Rows of `s` as JSON arrays; integers as numbers, other values as "p/q".
fn matrix_json(s: &Matrix) -> Value {
    Value::Array(s.rows().map(|r| Value::Array(r.iter().map(entry).collect())).collect())
}

fn negative() -> Output {
    Output::Report {
        json: json!({ "recognized": false }),
        text: "not recognized".into(),
        positive: false,
    }
}

fn parse_subset(text: &str, m: usize) -> Result<RowSubset, Failure> {
    let indices = text
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Failure(format!("bad row index {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RowSubset::new(indices, m)?)
}

/// f rounded to 12 decimals, without a negative zero.
fn rounded(f: f64) -> f64 {
    let r = (f * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn info(path: &Path, subset: &str) -> Result<Output, Failure> {
    let s = read_matrix(path)?;
    let x = parse_subset(subset, s.nrows())?;
    let f = InfoFunction::new(&s);
    let independent = is_independent_exact(&f, &x)?;
    let value = rounded(mutual_info_f(&f, &x));
    Ok(Output::Report {
        json: json!({ "subset": x.indices(), "f": value, "independent": independent }),
        text: format!("f = {value:.12} bits, independent: {independent}"),
        positive: true,
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ProductJson {
    recognized: bool,
    kind: &'static str,
    row_partition: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    special_row: Option<usize>,
    factors: Vec<Value>,
    /// `(factor, row)` for every row of the input.
    row_map: Vec<(usize, usize)>,
}

fn report<T: Serialize>(payload: &T, text: String) -> Output {
    Output::Report {
        json: serde_json::to_value(payload).expect("serializable"),
        text,
        positive: true,
    }
}

fn recognize(kind: Kind, path: &Path) -> Result<Output, Failure> {
    let s = read_matrix(path)?;
    match kind {
        Kind::OneProduct => {
            let Some(cert) = recognize_one_product(&s) else {
                return Ok(negative());
            };
            let rest = cert.x.complement(s.nrows());
            let text = format!("1-product on rows {:?} | {:?}", cert.x.indices(), rest.indices());
            let payload = ProductJson {
                recognized: true,
                kind: "1p",
                row_partition: vec![cert.x.indices().to_vec(), rest.indices().to_vec()],
                special_row: None,
                factors: vec![matrix_json(&cert.s1), matrix_json(&cert.s2)],
                row_map: cert.row_map.clone(),
            };
            Ok(report(&payload, text))
        }
        Kind::TwoProduct => {
            let Some(cert) = recognize_two_product(&s) else {
                return Ok(negative());
            };
            let rest: Vec<usize> = (0..s.nrows())
                .filter(|&i| i != cert.special_row && !cert.x.contains(i))
                .collect();
            let text = format!(
                "2-product with special row {} on rows {:?} | {:?}",
                cert.special_row,
                cert.x.indices(),
                rest
            );
            let payload = ProductJson {
                recognized: true,
                kind: "2p",
                row_partition: vec![cert.x.indices().to_vec(), rest],
                special_row: Some(cert.special_row),
                factors: vec![matrix_json(&cert.s1), matrix_json(&cert.s2)],
                row_map: cert.row_map.clone(),
            };
            Ok(report(&payload, text))
        }
        Kind::Matroid => {
            let found = recognize_2level_matroid_slack(&s).map_err(|e| match e {
                Error::Precondition(msg) => Failure(format!("precondition violated: {msg}")),
                other => other.into(),
            })?;
            let Some(found) = found else {
                return Ok(negative());
            };
            let rows: Vec<Value> = found
                .row_roles
                .iter()
                .map(|role| match role {
                    RowRole::Element { label, side } => json!({
                        "role": "element",
                        "label": label,
                        "side": match side { Side::Nonneg => "nonneg", Side::Upper => "upper" },
                    }),
                    RowRole::Glue { label } => json!({ "role": "glue", "label": label }),
                })
                .collect();
            let text = found.expr.to_string();
            Ok(Output::Report {
                json: json!({
                    "recognized": true,
                    "kind": "matroid",
                    "expr": found.expr.to_string(),
                    "rows": rows,
                    "columnBases": found.column_bases,
                    "backtracks": found.backtracks,
                }),
                text,
                positive: true,
            })
        }
    }
}

fn factor(path: &Path) -> Result<Output, Failure> {
    let s = read_matrix(path)?;
    let fact = factorize_irreducible(&s);
    let blocks: Vec<Vec<usize>> = fact.blocks.iter().map(|b| b.indices().to_vec()).collect();
    let text = format!("{} irreducible factor(s) on rows {blocks:?}", fact.len());
    let mut row_map = vec![(0, 0); s.nrows()];
    for (f, b) in blocks.iter().enumerate() {
        for (r, &i) in b.iter().enumerate() {
            row_map[i] = (f, r);
        }
    }
    let payload = ProductJson {
        recognized: fact.len() > 1,
        kind: "factor",
        row_partition: blocks,
        special_row: None,
        factors: fact.factors.iter().map(matrix_json).collect(),
        row_map,
    };
    Ok(report(&payload, text))
}

fn parse_expr(arg: &str) -> Result<MatroidExpr, Failure> {
    let text = if arg.trim_start().starts_with('(') {
        arg.to_string()
    } else {
        read(Path::new(arg))?
    };
    Ok(text.parse()?)
}

fn gen(what: &Gen) -> Result<Output, Failure> {
    let m = match what {
        Gen::Hypersimplex { d, k } => hypersimplex_slack(*d, *k)?,
        Gen::Expr { expr } => expr_to_slack(&parse_expr(expr)?)?,
        Gen::Product { matrices } => {
            let mut acc = read_matrix(&matrices[0])?;
            for p in &matrices[1..] {
                acc = one_product(&acc, &read_matrix(p)?)?;
            }
            acc
        }
        Gen::Shuffle { matrix, seed } => shuffle(&read_matrix(matrix)?, *seed).0,
    };
    Ok(Output::Matrix(m))
}

fn slack(args: &SlackArgs) -> Result<Output, Failure> {
    let v = VRep::parse(&read(&args.vertices)?)?;
    let h = HRep::parse(&read(&args.ineq)?)?;
    let s = slack_from_vh(&v, &h)?;
    Ok(Output::Matrix(if args.normalize {
        normalize_nonredundant(&s)?
    } else {
        s
    }))
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Split(x) => json!({ "rows": x.indices() }),
        Witness::SpecialRow { row, x } => json!({ "specialRow": row, "rows": x.indices() }),
    }
}

fn oracle_output(r: &OracleReport) -> Output {
    let witnesses: Vec<Value> = r.all.iter().map(witness_json).collect();
    Output::Report {
        json: json!({ "verdict": r.verdict, "witnesses": witnesses, "evaluations": r.evaluations }),
        text: format!("verdict: {}, {} witness(es), {} tests", r.verdict, r.all.len(), r.evaluations),
        positive: r.verdict,
    }
}

fn oracle(kind: OracleKind, path: &Path) -> Result<Output, Failure> {
    let s = read_matrix(path)?;
    match kind {
        OracleKind::OneProduct => Ok(oracle_output(&bf_one_product(&s)?)),
        OracleKind::TwoProduct => Ok(oracle_output(&bf_two_product(&s)?)),
        OracleKind::Min => {
            let (x, value) = bf_submodular_min(&InfoFunction::new(&s))?;
            let value = rounded(value);
            Ok(Output::Report {
                json: json!({ "set": x.indices(), "value": value }),
                text: format!("minimum {value:.12} at {:?}", x.indices()),
                positive: true,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Info { matrix, subset } => info(matrix, subset),
        Command::Recognize { kind, matrix } => recognize(*kind, matrix),
        Command::Factor { matrix } => factor(matrix),
        Command::Gen { what } => gen(what),
        Command::Slack(args) => slack(args),
        Command::Oracle { kind, matrix } => oracle(*kind, matrix),
    };
    match result {
        Ok(Output::Matrix(m)) => {
            if let Command::Gen { what: Gen::Shuffle { seed, .. } } = &cli.command {
                if !cli.quiet {
                    eprintln!("shuffled with {SHUFFLE_ALGORITHM}, seed {seed}");
                }
            }
            print!("{m}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report { json, text, positive }) => {
            if cli.json {
                println!("{json}");
            } else {
                println!("{text}");
            }
            if positive {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            if !cli.quiet {
                eprintln!("prodrec: {msg}");
            }
            ExitCode::from(2)
        }
    }
}
