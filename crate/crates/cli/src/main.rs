//! Command-line front end: exact q-harmonic analysis on the quantum complex
//! vector space, with JSON polynomial I/O.
//!
//! All numeric output is exact rational text by default; decimal rendering is
//! opt-in with a stated precision.  Output is deterministic byte-for-byte for
//! identical inputs.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use qharmonics::algebra::{NCPoly, Order};
use qharmonics::harmonics::{self, SplitSpec};
use qharmonics::ops;
use qharmonics::sphere;
use qharmonics::verify;

#[derive(Parser)]
#[command(
    name = "qharm",
    about = "Exact q-harmonic analysis on the quantum complex vector space",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct IoArgs {
    /// Input polynomial JSON file
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file (stdout when omitted)
    #[arg(long = "out")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the q-Laplace operator to a polynomial file
    Laplace {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Project a homogeneous polynomial onto its q-harmonic part
    Project {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        mprime: u32,
        #[command(flatten)]
        io: IoArgs,
    },
    /// The zonal polynomial of a bidegree
    Zonal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        mprime: u32,
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// The orthogonal basis of the harmonic subspace, with labels and norms
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        mprime: u32,
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// Dimension of the harmonic subspace
    Dim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        mprime: u32,
    },
    /// Gram matrix of the orthogonal basis (optionally evaluated numerically)
    Gram {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        mprime: u32,
        /// Rational sample point for numeric evaluation, e.g. 7/10
        #[arg(long)]
        q0: Option<String>,
        /// Decimal digits for numeric rendering
        #[arg(long, default_value_t = 12)]
        digits: u32,
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// Invariant scalar product of two polynomial files
    Inner {
        #[arg(long)]
        n: usize,
        #[arg(long = "in1")]
        input1: PathBuf,
        #[arg(long = "in2")]
        input2: PathBuf,
    },
    /// Restrict a polynomial to the quantum sphere (harmonic representative)
    Restrict {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Project a split product of block harmonics via the closed form
    SplitProject {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        rprime: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        sprime: u32,
        #[arg(long)]
        u: u32,
        /// Upper-block harmonic polynomial file
        #[arg(long)]
        ht: PathBuf,
        /// Lower-block harmonic polynomial file
        #[arg(long)]
        hy: PathBuf,
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// Run a verification suite; exit code 1 on failure
    Verify {
        /// relations|laplace|harmonics|dualpair|sphere|rep|splitx
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: usize,
        #[arg(long = "max-degree")]
        max_degree: u32,
        #[arg(long)]
        q0: Option<String>,
        /// Report file (stdout when omitted)
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// Evaluate every coefficient at a rational q0
    Eval {
        #[arg(long)]
        q0: String,
        #[command(flatten)]
        io: IoArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn read_poly(path: &Path) -> Result<NCPoly, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| format!("{}: malformed JSON at line {}, column {}: {e}", path.display(), e.line(), e.column()))?;
    NCPoly::from_json(&value).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_out(output: &Option<PathBuf>, value: &Value) -> Result<(), String> {
    let text = format!("{}\n", serde_json::to_string_pretty(value).expect("serializable"));
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_rational(text: &str) -> Result<BigRational, String> {
    BigRational::from_str(text).map_err(|e| format!("invalid rational {text:?}: {e}"))
}

fn check_rank(p: &NCPoly, n: usize) -> Result<(), String> {
    if p.rank() != n {
        return Err(format!("polynomial has rank {} but --n {n} was given", p.rank()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Laplace { n, io } => {
            let p = read_poly(&io.input)?;
            check_rank(&p, n)?;
            let lap = ops::laplace(n).map_err(|e| e.to_string())?;
            let out = lap.apply(&p).map_err(|e| e.to_string())?;
            write_out(&io.output, &out.to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Project { n, m, mprime, io } => {
            let p = read_poly(&io.input)?;
            check_rank(&p, n)?;
            let out = harmonics::project(&p, m, mprime).map_err(|e| e.to_string())?;
            write_out(&io.output, &out.to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Zonal { n, m, mprime, output } => {
            let out = harmonics::zonal(n, m, mprime).map_err(|e| e.to_string())?;
            write_out(&output, &out.to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Basis { n, m, mprime, output } => {
            let basis = harmonics::xi_basis(n, m, mprime).map_err(|e| e.to_string())?;
            let mut items = Vec::new();
            for (label, poly) in basis {
                let norm2 = harmonics::xi_norm_squared(&label).map_err(|e| e.to_string())?;
                items.push(json!({
                    "label": serde_json::to_value(&label).expect("label JSON"),
                    "poly": poly.to_json(),
                    "norm2": norm2.to_string(),
                }));
            }
            write_out(&output, &Value::Array(items))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Dim { n, m, mprime } => {
            println!("{}", harmonics::dim_harmonic(n, m, mprime));
            Ok(ExitCode::SUCCESS)
        }
        Command::Gram { n, m, mprime, q0, digits, output } => {
            let basis = harmonics::xi_basis(n, m, mprime).map_err(|e| e.to_string())?;
            let labels: Vec<Value> = basis
                .iter()
                .map(|(l, _)| serde_json::to_value(l).expect("label JSON"))
                .collect();
            let polys: Vec<NCPoly> = basis.into_iter().map(|(_, p)| p).collect();
            let gram = sphere::gram_matrix(&polys).map_err(|e| e.to_string())?;
            let rows: Vec<Vec<String>> = (0..gram.rows)
                .map(|i| (0..gram.cols).map(|j| gram[(i, j)].to_string()).collect())
                .collect();
            let mut out = json!({"basis": labels, "gram": rows});
            if let Some(q0_text) = q0 {
                let q0 = parse_rational(&q0_text)?;
                let mut numeric = Vec::new();
                for i in 0..gram.rows {
                    let mut row = Vec::new();
                    for j in 0..gram.cols {
                        let v = gram[(i, j)].eval_q(&q0).map_err(|e| e.to_string())?;
                        row.push(qharmonics::numeric::decimal_string(&v, digits));
                    }
                    numeric.push(row);
                }
                out["q"] = Value::String(q0_text);
                out["gram_num"] = serde_json::to_value(numeric).expect("rows");
            }
            write_out(&output, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Inner { n, input1, input2 } => {
            let p1 = read_poly(&input1)?;
            let p2 = read_poly(&input2)?;
            check_rank(&p1, n)?;
            check_rank(&p2, n)?;
            let val = sphere::inner_product(&p1, &p2).map_err(|e| e.to_string())?;
            println!("{val}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Restrict { n, io } => {
            let p = read_poly(&io.input)?;
            check_rank(&p, n)?;
            let out = sphere::restrict(&p).map_err(|e| e.to_string())?;
            write_out(&io.output, &out.to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::SplitProject { n, p, r, rprime, s, sprime, u, ht, hy, output } => {
            let h_t = read_poly(&ht)?;
            let h_y = read_poly(&hy)?;
            check_rank(&h_t, n)?;
            check_rank(&h_y, n)?;
            let spec = SplitSpec::new(n, p, r, rprime, s, sprime, u).map_err(|e| e.to_string())?;
            let out = harmonics::split_project(&spec, &h_t, &h_y).map_err(|e| e.to_string())?;
            write_out(&output, &out.to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, n, max_degree, q0, output } => {
            let q0 = match q0 {
                Some(text) => Some(parse_rational(&text)?),
                None => None,
            };
            let report = verify::run_suite(&suite, n, max_degree, q0).map_err(|e| e.to_string())?;
            let passed = report.passed();
            write_out(&output, &report.to_json())?;
            if passed {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "suite {suite} failed: {} of {} checks",
                    report.checks.iter().filter(|c| !c.pass).count(),
                    report.checks.len()
                );
                Ok(ExitCode::from(1))
            }
        }
        Command::Eval { q0, io } => {
            let q0 = parse_rational(&q0)?;
            let p = read_poly(&io.input)?;
            let evaluated = p.eval_coeffs_q(&q0).map_err(|e| e.to_string())?;
            let terms: Vec<Value> = evaluated
                .into_iter()
                .map(|(mono, c)| {
                    json!({"z": mono.z, "w": mono.w, "coeff": c.to_string()})
                })
                .collect();
            let out = json!({
                "n": p.rank(),
                "order": match p.order() { Order::ZFirst => "z-first", Order::WFirst => "w-first" },
                "q0": q0.to_string(),
                "terms": terms,
            });
            write_out(&io.output, &out)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
