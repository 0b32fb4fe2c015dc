use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use listat::classify::{canonicalize_v, cs_subspace, df_solutions, DfOptions};
use listat::gaussian::{
    ac_closed, ac_quadrature, fisher_closed, fisher_quadrature, takano_left_invariant_data, verify_takano,
    GaussianPoint,
};
use listat::report::{
    cs_basis_json, cs_basis_text, df_outcome_json, df_outcome_text, structure_report_json, structure_report_text,
};
use listat::scalar::parse_scalar;
use listat::{
    analyze, build_builtin, polynomial_from_cubic, Context, CubicForm, Error, Family, Rational, Scalar, StructureRecord,
};

#[derive(Parser, Debug)]
#[command(
    name = "listat",
    version,
    about = "Left-invariant statistical structures on Lie groups"
)]
struct Cli {
    /// Numeric tolerance; overrides LISTAT_EPS (default 1e-9).
    #[arg(long, global = true)]
    eps: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze an {"algebra": …, "cubic": …} file.
    Check { file: PathBuf },
    /// Basis of the conjugate-symmetric cubic forms of a built-in algebra.
    Cs(Builtin),
    /// Dually flat cubic forms of a built-in algebra.
    Df(Builtin),
    /// Canonical representative of a diagonal cubic form Σ λ_i x_i^3.
    Canon {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        lambda: Vec<String>,
    },
    /// Verify the Takano Gaussian family against the rhn(m+1) normal form.
    Takano {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Gauss–Hermite order of the quadrature cross-check.
        #[arg(long, default_value_t = 32)]
        order: usize,
    },
}

#[derive(Args, Debug)]
struct Builtin {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
}

impl Builtin {
    fn family(&self) -> Result<Family, Error> {
        self.family.parse()
    }
}

fn context(cli: &Cli) -> Result<Context, Error> {
    match cli.eps {
        Some(eps) => Context::new(eps),
        None => Context::from_env(),
    }
}

fn check<S: Scalar>(path: &Path, ctx: &Context, as_json: bool) -> Result<String, Error> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    let record = StructureRecord::from_json(&text)?;
    let (spec, c) = record.build::<S>(ctx)?;
    let report = analyze(&spec, &c, ctx)?;
    let cs_dimension = if S::EXACT {
        let (exact, _) = record.algebra.build::<Rational>(ctx)?;
        Some(cs_subspace(&exact)?.dim())
    } else {
        None
    };
    Ok(if as_json {
        pretty(&structure_report_json(&report, cs_dimension))
    } else {
        structure_report_text(&report, cs_dimension)
    })
}

fn canon<S: Scalar>(lambda: &[String], as_json: bool) -> Result<String, Error> {
    let values = lambda
        .iter()
        .enumerate()
        .map(|(i, v)| parse_scalar::<S>(v).map_err(|e| Error::Validation(format!("lambda[{i}]: {e}"))))
        .collect::<Result<Vec<S>, _>>()?;
    let v = canonicalize_v(&values);
    Ok(if as_json {
        pretty(&json!({ "lambda": v.values().iter().map(|x| x.render()).collect::<Vec<_>>() }))
    } else {
        format!("{}\n", v.render())
    })
}

fn takano(m: usize, alpha: &str, order: usize, ctx: &Context, as_json: bool) -> Result<String, Error> {
    let alpha: f64 = parse_scalar(alpha).map_err(|e| Error::Validation(format!("alpha: {e}")))?;
    let report = verify_takano(m, alpha, ctx)?;
    let (_, cubic) = takano_left_invariant_data(m, alpha)?;
    let p = GaussianPoint::centered(m, 1.0)?;
    let quadrature = fisher_quadrature(&p, order)?
        .max_abs_diff(&fisher_closed(&p))
        .max(ac_quadrature(alpha, &p, order)?.max_abs_diff(&ac_closed(alpha, &p)));
    let expected_k = (alpha * alpha - 1.0) / (2.0 * m as f64);
    let normal_form = polynomial_from_cubic(&rounded(&cubic, ctx)).to_string();
    Ok(if as_json {
        let mut v = structure_report_json(&report, None);
        v["cubic"] = json!(normal_form);
        v["expected_constant_curvature"] = json!(expected_k.render());
        v["quadrature_max_diff"] = json!(format!("{quadrature:.3e}"));
        pretty(&v)
    } else {
        format!(
            "{}cubic                {normal_form}\nexpected k           {}\nquadrature max diff  {quadrature:.3e}\n",
            structure_report_text(&report, None),
            expected_k.render()
        )
    })
}

// Print the frame cubic with exact coefficients when they are within ε of a
// small-denominator rational.
fn rounded(c: &CubicForm<f64>, ctx: &Context) -> CubicForm<Rational> {
    c.convert(|x| {
        let q = listat::scalar::rationalize(*x, 1000).unwrap_or_default();
        if (q.to_f64() - x).abs() <= ctx.eps {
            q
        } else {
            x.to_rational().unwrap_or_default()
        }
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> Result<String, Error> {
    let ctx = context(cli)?;
    let exact = cli.mode == Mode::Exact;
    match &cli.command {
        Command::Check { file } if exact => check::<Rational>(file, &ctx, cli.json),
        Command::Check { file } => check::<f64>(file, &ctx, cli.json),
        Command::Cs(b) => {
            if !exact {
                return Err(Error::ExactModeRequired("cs runs exact elimination; drop --mode float"));
            }
            let spec = build_builtin::<Rational>(b.family()?, b.n)?;
            let basis = cs_subspace(&spec)?;
            Ok(if cli.json {
                pretty(&cs_basis_json(&basis))
            } else {
                format!("{}\n", cs_basis_text(&basis))
            })
        }
        Command::Df(b) => {
            let spec = build_builtin::<Rational>(b.family()?, b.n)?;
            let outcome = df_solutions(&spec, &DfOptions::default(), &ctx)?;
            Ok(if cli.json {
                pretty(&df_outcome_json(&outcome))
            } else {
                format!("{}\n", df_outcome_text(&outcome))
            })
        }
        Command::Canon { lambda } if exact => canon::<Rational>(lambda, cli.json),
        Command::Canon { lambda } => canon::<f64>(lambda, cli.json),
        Command::Takano { m, alpha, order } => takano(*m, alpha, *order, &ctx, cli.json),
    }
}

fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => write_atomic(path, &out),
                None => std::io::stdout().write_all(out.as_bytes()),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_unsupported() { 3 } else { 2 })
        }
    }
}
