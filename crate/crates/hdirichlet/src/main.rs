use clap::{Args, Parser, Subcommand, ValueEnum};
use hdirichlet::acceptance;
use hdirichlet::core::ballgeom::BallPoint;
use hdirichlet::core::coefficients::{
    coeff_continued, coeff_mk_series, coeff_mk_with_order, coeff_quadrature_with_order, leading_constant,
    CoefficientValue,
};
use hdirichlet::core::dirichlet::invariance_experiment;
use hdirichlet::core::kernels::{
    bergman_kernel_adaptive, bergman_kernel_series, dirichlet_kernel, dirichlet_kernel_adaptive,
    dirichlet_kernel_series, BergmanCoefficients, KernelEvaluation, DEFAULT_TAIL_TOLERANCE,
};
use hdirichlet::core::wallach::{classify, ScanGrid, DEFAULT_MAX_MODE};
use hdirichlet::output::{to_jsonl, Cell, Table};
use hdirichlet::range::{parse_grid_spec, parse_int_range, parse_point, parse_real_grid};
use hdirichlet::{parallel, quadrature_order, Error, Result};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hdirichlet",
    version,
    about = "Coefficients, kernels and invariance checks for H-harmonic Dirichlet spaces"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficient integrals I_m(s) or I_{m,k}(s).
    Coeff(CoeffArgs),
    /// Residues of the continued I_m at a pole.
    Residue(ResidueArgs),
    /// Reproducing kernels at a pair of points.
    Kernel(KernelArgs),
    /// Moebius invariance of the Dirichlet seminorm.
    Invariance(InvarianceArgs),
    /// Sign scan of the continued coefficients over a real s grid.
    Wallach(WallachArgs),
    /// Large-m asymptotics of I_{m,k}(s).
    Asymp(AsympArgs),
    /// Run the acceptance suite.
    Verify(VerifyArgs),
}

fn dimension(s: &str) -> std::result::Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 3 {
        Err(format!("dimension must be at least 3, got {n}"))
    } else {
        Ok(n)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoeffMethod {
    Quadrature,
    Continuation,
    Both,
    Series,
}

#[derive(Args)]
struct CoeffArgs {
    #[arg(long, value_parser = dimension)]
    n: usize,
    /// Modes: `a..b`, a single value or a list.
    #[arg(long)]
    m: String,
    #[arg(long, allow_hyphen_values = true)]
    s: f64,
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long, value_enum, default_value_t = CoeffMethod::Continuation)]
    method: CoeffMethod,
    /// Radial quadrature order.
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Args)]
struct ResidueArgs {
    #[arg(long, value_parser = dimension)]
    n: usize,
    #[arg(long)]
    m: String,
    #[arg(long, allow_hyphen_values = true)]
    at: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KernelMethodArg {
    Closed,
    Series,
}

#[derive(Args)]
struct KernelArgs {
    #[arg(long, value_parser = dimension)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    #[arg(long, value_enum, default_value_t = KernelMethodArg::Closed)]
    method: KernelMethodArg,
    /// Bergman weight; selects the weighted Bergman kernel (series only).
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    /// Fixed series truncation; adaptive when omitted.
    #[arg(long)]
    truncation: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TAIL_TOLERANCE)]
    tol: f64,
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Args)]
struct InvarianceArgs {
    #[arg(long, value_parser = dimension, default_value_t = 3)]
    n: usize,
    /// Base degrees.
    #[arg(long, default_value = "1..2")]
    m0: String,
    /// Displacements along the first axis.
    #[arg(long, default_value = "0.2,0.4")]
    a: String,
    #[arg(long, default_value_t = 25)]
    truncation: usize,
    #[arg(long, default_value_t = 0.7)]
    radius: f64,
}

#[derive(Args)]
struct WallachArgs {
    #[arg(long, value_parser = dimension)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_MODE)]
    m_max: usize,
    /// Grid `a:b:step`.
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    /// Emit positivity intervals instead of records.
    #[arg(long)]
    classify: bool,
}

#[derive(Args)]
struct AsympArgs {
    #[arg(long, value_parser = dimension)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long, allow_hyphen_values = true)]
    s: f64,
    #[arg(long, default_value = "50,100,200")]
    m: String,
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Criteria to run, e.g. `1..3`; all when omitted.
    #[arg(long)]
    only: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let outcome = match cli.command {
        Command::Coeff(a) => coeff(a).map(|t| emit_table(&t, format)),
        Command::Residue(a) => residue(a).map(|t| emit_table(&t, format)),
        Command::Kernel(a) => kernel(a).map(|t| emit_table(&t, format)),
        Command::Invariance(a) => invariance(a, format),
        Command::Wallach(a) => wallach(a, format),
        Command::Asymp(a) => asymp(a).map(|t| emit_table(&t, format)),
        Command::Verify(a) => verify(a, format),
    };
    match outcome {
        Ok((text, code)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|()| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Io(_) | Error::Json(_) => 1,
                _ => 2,
            })
        }
    }
}

type Output = (String, ExitCode);

fn emit_table(table: &Table, format: Format) -> Output {
    let text = match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    (text, ExitCode::SUCCESS)
}

fn rejected(what: &'static str, input: impl ToString, reason: &str) -> Error {
    Error::Parse {
        what,
        input: input.to_string(),
        reason: reason.to_string(),
    }
}

fn order(explicit: Option<usize>) -> Result<usize> {
    explicit.map_or_else(quadrature_order, Ok)
}

fn coeff(args: CoeffArgs) -> Result<Table> {
    let modes = parse_int_range(&args.m)?;
    let n = args.n;
    let needs_quadrature = matches!(args.method, CoeffMethod::Quadrature | CoeffMethod::Both) || args.k > 0;
    if needs_quadrature && (args.s.is_nan() || args.s <= -1.0) {
        return Err(rejected("s", args.s, "quadrature needs s > -1"));
    }
    let order = order(args.order)?;
    let value = |c: CoefficientValue| -> Cell { c.value().into() };
    if args.method == CoeffMethod::Both {
        if args.k > 0 {
            return Err(rejected("k", args.k, "--method both compares I_m only (k = 0)"));
        }
        let mut table = Table::new(&["m", "quadrature", "continuation", "rel_diff"]);
        for m in modes {
            let q = coeff_quadrature_with_order(n, m, args.s, order)?;
            let c = coeff_continued(n, m, args.s)?;
            let diff = match (q.value(), c.value()) {
                (Some(a), Some(b)) => ((a - b).abs() / a.abs()).into(),
                _ => Cell::Null,
            };
            table.push(vec![m.into(), value(q), value(c), diff]);
        }
        return Ok(table);
    }
    let mut table = Table::new(&["m", "k", "s", "value", "method"]);
    for m in modes {
        let c = match (args.method, args.k) {
            (CoeffMethod::Continuation, 0) => coeff_continued(n, m, args.s)?,
            (CoeffMethod::Quadrature, 0) => coeff_quadrature_with_order(n, m, args.s, order)?,
            (CoeffMethod::Series, _) => coeff_mk_series(n, m, args.k, args.s)?,
            (CoeffMethod::Quadrature, k) => coeff_mk_with_order(n, m, k, args.s, order)?,
            (_, _) => {
                return Err(rejected("k", args.k, "the continuation covers k = 0 only"));
            }
        };
        table.push(vec![
            m.into(),
            args.k.into(),
            args.s.into(),
            value(c),
            c.method.as_str().into(),
        ]);
    }
    Ok(table)
}

fn residue(args: ResidueArgs) -> Result<Table> {
    let modes = parse_int_range(&args.m)?;
    let values = parallel::residues(args.n, &modes, args.at)?;
    let mut table = Table::new(&["m", "residue"]);
    for (m, r) in modes.into_iter().zip(values) {
        table.push(vec![m.into(), r.into()]);
    }
    Ok(table)
}

fn kernel(args: KernelArgs) -> Result<Table> {
    let n = args.n;
    let x = BallPoint::new(parse_point(&args.x, n)?)?;
    let y = BallPoint::new(parse_point(&args.y, n)?)?;
    let eval: KernelEvaluation = match (args.s, args.method) {
        (Some(_), KernelMethodArg::Closed) => {
            return Err(rejected(
                "method",
                "closed",
                "the Bergman kernel is evaluated as a series",
            ));
        }
        (Some(s), KernelMethodArg::Series) => {
            let mut coefficients = BergmanCoefficients::with_order(n, s, order(args.order)?)?;
            match args.truncation {
                Some(m) => bergman_kernel_series(&mut coefficients, &x, &y, m)?,
                None => bergman_kernel_adaptive(&mut coefficients, &x, &y, args.tol)?,
            }
        }
        (None, KernelMethodArg::Closed) => dirichlet_kernel(n, &x, &y)?,
        (None, KernelMethodArg::Series) => match args.truncation {
            Some(m) => dirichlet_kernel_series(n, &x, &y, m)?,
            None => dirichlet_kernel_adaptive(n, &x, &y, args.tol)?,
        },
    };
    let mut table = Table::new(&["n", "weight", "value", "method", "truncation", "tail"]);
    let weight = args
        .s
        .map_or_else(|| "dirichlet".to_string(), |s| format!("bergman({s})"));
    table.push(vec![
        n.into(),
        Cell::Text(weight),
        eval.value.into(),
        eval.method.as_str().into(),
        eval.truncation.map_or(Cell::Null, Cell::from),
        eval.tail.into(),
    ]);
    Ok(table)
}

fn invariance(args: InvarianceArgs, format: Format) -> Result<Output> {
    let degrees = parse_int_range(&args.m0)?;
    let displacements = parse_real_grid(&args.a)?;
    let mut reports = Vec::new();
    for &m0 in &degrees {
        for &a in &displacements {
            reports.push(invariance_experiment(args.n, m0, a, args.truncation, args.radius)?);
        }
    }
    let text = match format {
        Format::Json => to_jsonl(&reports)?,
        Format::Csv => {
            let mut table = Table::new(&[
                "n",
                "base_degree",
                "displacement",
                "truncation",
                "extraction_radius",
                "seminorm_sq_before",
                "seminorm_sq_after",
                "relative_difference",
                "tail_fraction",
            ]);
            for r in &reports {
                table.push(vec![
                    r.n.into(),
                    r.base_degree.into(),
                    r.displacement.into(),
                    r.truncation.into(),
                    r.extraction_radius.into(),
                    r.seminorm_sq_before.into(),
                    r.seminorm_sq_after.into(),
                    r.relative_difference.into(),
                    r.tail_fraction.into(),
                ]);
            }
            table.to_csv()
        }
    };
    Ok((text, ExitCode::SUCCESS))
}

fn wallach(args: WallachArgs, format: Format) -> Result<Output> {
    let (s_min, s_max, step) = parse_grid_spec(&args.s)?;
    let grid = ScanGrid::new(args.n, args.m_max, s_min, s_max, step)?;
    let records = parallel::scan(&grid)?;
    if args.classify {
        let intervals = classify(&records)?;
        let text = match format {
            Format::Json => to_jsonl(&intervals)?,
            Format::Csv => {
                let mut table = Table::new(&[
                    "n",
                    "m_min",
                    "m_max",
                    "s_start",
                    "s_end",
                    "classification",
                    "residue_sign",
                    "level_one_candidate",
                ]);
                for i in &intervals {
                    table.push(vec![
                        i.n.into(),
                        i.m_min.into(),
                        i.m_max.into(),
                        i.s_start.into(),
                        i.s_end.into(),
                        i.classification.as_str().into(),
                        i.residue_sign.map_or(Cell::Null, |s| s.as_str().into()),
                        Cell::Text(i.level_one_candidate.to_string()),
                    ]);
                }
                table.to_csv()
            }
        };
        return Ok((text, ExitCode::SUCCESS));
    }
    let text = match format {
        Format::Json => to_jsonl(&records)?,
        Format::Csv => {
            let mut table = Table::new(&["n", "m", "s", "value", "sign", "method", "grid_id"]);
            for r in &records {
                table.push(vec![
                    r.n.into(),
                    r.m.into(),
                    r.s.into(),
                    r.value.into(),
                    r.sign.as_str().into(),
                    r.method.as_str().into(),
                    r.grid_id.as_str().into(),
                ]);
            }
            table.to_csv()
        }
    };
    Ok((text, ExitCode::SUCCESS))
}

fn asymp(args: AsympArgs) -> Result<Table> {
    let modes = parse_int_range(&args.m)?;
    let order = order(args.order)?;
    let lead = leading_constant(args.n, args.k, args.s)?;
    let mut table = Table::new(&["m", "value", "leading_constant", "ratio"]);
    for m in modes {
        let v = coeff_mk_with_order(args.n, m, args.k, args.s, order)?.value();
        let ratio = v.map(|v| v * (m as f64).powf(args.s + 1.0 - 2.0 * args.k as f64) / lead);
        table.push(vec![m.into(), v.into(), lead.into(), ratio.into()]);
    }
    Ok(table)
}

fn verify(args: VerifyArgs, format: Format) -> Result<Output> {
    let ids: Vec<u8> = match args.only {
        Some(spec) => parse_int_range(&spec)?
            .into_iter()
            .map(|i| {
                u8::try_from(i)
                    .ok()
                    .filter(|i| acceptance::CRITERIA.iter().any(|(c, _)| c == i))
                    .ok_or_else(|| Error::Parse {
                        what: "criterion",
                        input: i.to_string(),
                        reason: "no such criterion".into(),
                    })
            })
            .collect::<Result<_>>()?,
        None => acceptance::CRITERIA.iter().map(|(id, _)| *id).collect(),
    };
    let reports: Vec<_> = ids.into_iter().map(acceptance::run).collect();
    let all_passed = reports.iter().all(|r| r.passed);
    let text = match format {
        Format::Csv => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&r.to_string());
                s.push('\n');
            }
            s.push_str(&format!(
                "{} of {} criteria passed\n",
                reports.iter().filter(|r| r.passed).count(),
                reports.len()
            ));
            s
        }
        Format::Json => {
            let mut table = Table::new(&["id", "name", "passed", "detail", "seconds"]);
            for r in &reports {
                table.push(vec![
                    usize::from(r.id).into(),
                    r.name.into(),
                    Cell::Text(r.passed.to_string()),
                    r.detail.as_str().into(),
                    r.elapsed.as_secs_f64().into(),
                ]);
            }
            table.to_json()
        }
    };
    let code = if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    };
    Ok((text, code))
}
