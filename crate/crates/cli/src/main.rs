use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use k3hilb::classify::{classify, enumerate_family, Certificate, ClassifyError, Verdict};
use k3hilb::motivic::{self, json::series_to_json, HilbSeries, HodgeProfile};
use k3hilb::pell::{self, PellError, PellSolution};
use k3hilb::BigInt;

/// Pell equations, movable cones, birational-inequivalence certificates and
/// motivic Hilbert series for K3 surfaces of Picard rank 1.
#[derive(Parser, Debug)]
#[command(name = "k3hilb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,

    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve Pell-type equations.
    #[command(subcommand)]
    Pell(PellCommand),
    /// Decide birational inequivalence of X^[n] and Y^[n].
    Classify(ClassifyArgs),
    /// Generating series of Hilbert schemes of points.
    Series(SeriesArgs),
    /// The family n = 6y^2 + 2 with d_X = d_Y = 6.
    Family(FamilyArgs),
}

#[derive(Subcommand, Debug)]
enum PellCommand {
    /// Fundamental solution of X^2 - D Y^2 = 1.
    Fundamental {
        #[arg(long = "D", allow_negative_numbers = true)]
        discriminant: BigInt,
    },
    /// Least solution of (n-1) X^2 - d Y^2 = 1.
    CaseB(PellPair),
    /// Fundamental solution of X^2 - d(n-1) Y^2 = 1.
    CaseC(PellPair),
}

#[derive(Args, Debug)]
struct PellPair {
    #[arg(long)]
    n: u64,
    #[command(flatten)]
    degree: HalfDegree,
}

/// `--d` is the half-degree; `--degree` is the full degree `2d`.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct HalfDegree {
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    degree: Option<u64>,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    x: DegreeX,
    #[command(flatten)]
    y: DegreeY,
    #[arg(long)]
    n: u64,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct DegreeX {
    #[arg(long)]
    dx: Option<u64>,
    #[arg(long)]
    degree_x: Option<u64>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct DegreeY {
    #[arg(long)]
    dy: Option<u64>,
    #[arg(long)]
    degree_y: Option<u64>,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    /// `k3` or `a2`.
    #[arg(long)]
    surface: String,
    /// Truncation order.
    #[arg(long, default_value_t = 8)]
    order: usize,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long)]
    max_y: u64,
}

enum Failure {
    /// Exit 2.
    Invalid(String),
    /// Exit 3: a well-posed question with a negative answer.
    Negative(Output),
    /// Exit 1.
    Internal(String),
}

struct Output {
    text: String,
    json: Value,
}

fn half_degree(half: Option<u64>, full: Option<u64>, what: &str) -> Result<u64, Failure> {
    match (half, full) {
        (Some(d), None) => Ok(d),
        (None, Some(deg)) if deg % 2 == 0 => Ok(deg / 2),
        (None, Some(deg)) => Err(Failure::Invalid(format!("{what} must be even, got {deg}"))),
        _ => Err(Failure::Invalid(format!("give exactly one half-degree or degree for {what}"))),
    }
}

fn pell_error(e: PellError) -> Failure {
    Failure::Invalid(e.to_string())
}

fn classify_error(e: ClassifyError) -> Failure {
    match e {
        ClassifyError::Certificate(_) => Failure::Internal(e.to_string()),
        other => Failure::Invalid(other.to_string()),
    }
}

fn solution_json(s: &PellSolution) -> Value {
    json!({"x": s.x.to_string(), "y": s.y.to_string()})
}

fn run_pell(cmd: &PellCommand) -> Result<Output, Failure> {
    match cmd {
        PellCommand::Fundamental { discriminant } => {
            let s = pell::fundamental_pell(discriminant).map_err(pell_error)?;
            Ok(Output {
                text: format!("x={} y={}\n", s.x, s.y),
                json: json!({"D": discriminant.to_string(), "solution": solution_json(&s)}),
            })
        }
        PellCommand::CaseB(p) | PellCommand::CaseC(p) => {
            let d = half_degree(p.degree.d, p.degree.degree, "degree")?;
            let (label, sol) = if matches!(cmd, PellCommand::CaseB(_)) {
                ("case-b", pell::solve_case_b(p.n, d).map_err(pell_error)?)
            } else {
                ("case-c", pell::solve_case_c(p.n, d).map_err(pell_error)?)
            };
            let json = json!({
                "equation": label,
                "n": p.n,
                "d": d,
                "solution": sol.as_ref().map(solution_json),
            });
            match sol {
                Some(s) => Ok(Output {
                    text: format!("x={} y={}\n", s.x, s.y),
                    json,
                }),
                None => Err(Failure::Negative(Output {
                    text: "unsolvable\n".into(),
                    json,
                })),
            }
        }
    }
}

fn certificate_text(c: &Certificate) -> String {
    let mut s = String::new();
    let verdict = match c.verdict {
        Verdict::NotBirational => "not_birational",
        Verdict::Undetermined => "undetermined",
    };
    let _ = writeln!(s, "verdict: {verdict}");
    if let Some(r) = c.reason {
        let _ = writeln!(s, "reason: {}", serde_json::to_value(r).expect("enum").as_str().unwrap_or(""));
    }
    let _ = writeln!(
        s,
        "normalized: d_X = {}, d_Y = {}, n = {}{}",
        c.normalized.d_x,
        c.normalized.d_y,
        c.inputs.n,
        if c.normalized.swapped { " (inputs swapped)" } else { "" }
    );
    for (label, cc) in [("X", &c.cone_case_x), ("Y", &c.cone_case_y)] {
        let _ = write!(s, "cone case {label}: {:?}", cc.tag);
        if let Some(r) = &cc.ray {
            let _ = write!(s, ", ray {} H~ + ({}) B", r.a, r.b);
        }
        if let Some(w) = &cc.isotropic {
            let _ = write!(s, ", isotropic {} H~ + ({}) B", w.a, w.b);
        }
        if let Some(p) = &cc.pell {
            let _ = write!(s, ", pell ({}, {})", p.x, p.y);
        }
        let _ = writeln!(s, ", q = {}", cc.q);
    }
    let _ = writeln!(s, "norm trace:");
    for row in &c.norm_trace {
        let _ = writeln!(s, "  {} = {}", row.0, row.1);
    }
    for line in &c.narrative {
        let _ = writeln!(s, "- {line}");
    }
    s
}

fn run_classify(a: &ClassifyArgs) -> Result<Output, Failure> {
    let dx = half_degree(a.x.dx, a.x.degree_x, "degree-x")?;
    let dy = half_degree(a.y.dy, a.y.degree_y, "degree-y")?;
    let cert = classify(dx, dy, a.n).map_err(classify_error)?;
    Ok(Output {
        text: certificate_text(&cert),
        json: serde_json::to_value(&cert).map_err(|e| Failure::Internal(e.to_string()))?,
    })
}

fn run_series(a: &SeriesArgs) -> Result<Output, Failure> {
    let h: HilbSeries = match a.surface.as_str() {
        "k3" => motivic::hilb_surface_series(&HodgeProfile::k3(), a.order),
        "a2" => motivic::hilb_affine_plane(a.order),
        other => return Err(Failure::Invalid(format!("unknown surface {other:?}; expected k3 or a2"))),
    }
    .map_err(|e| Failure::Internal(e.to_string()))?;
    let euler = h.euler_specialization();
    let mut text = String::new();
    for (i, (c, e)) in h.series.coeffs().iter().zip(&euler).enumerate() {
        let _ = writeln!(text, "T^{i}\t{c}\t{e}");
    }
    Ok(Output {
        text,
        json: json!({
            "surface": a.surface,
            "mode": h.mode,
            "source": h.source,
            "verified": h.verified,
            "series": series_to_json(&h.series),
            "euler": euler.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
    })
}

fn run_family(a: &FamilyArgs) -> Result<Output, Failure> {
    let members = enumerate_family(a.max_y).map_err(classify_error)?;
    let mut text = String::from("y\tn\tpell\tverdict\n");
    let mut rows = Vec::new();
    for m in &members {
        let cert = classify(6, 6, m.n).map_err(classify_error)?;
        if cert.verdict != Verdict::NotBirational {
            return Err(Failure::Internal(format!("family member n = {} was not classified", m.n)));
        }
        let _ = writeln!(text, "{}\t{}\t({}, {})\tnot_birational", m.y, m.n, m.pell.x, m.pell.y);
        rows.push(json!({
            "y": m.y,
            "n": m.n,
            "pell": solution_json(&m.pell),
            "verdict": cert.verdict,
        }));
    }
    Ok(Output {
        text,
        json: Value::Array(rows),
    })
}

fn emit(cli: &Cli, out: &Output) -> Result<(), String> {
    let body = if cli.json || cli.format == Format::Json {
        let mut s = serde_json::to_string_pretty(&out.json).map_err(|e| e.to_string())?;
        s.push('\n');
        s
    } else {
        out.text.clone()
    };
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Pell(p) => run_pell(p),
        Command::Classify(a) => run_classify(a),
        Command::Series(a) => run_series(a),
        Command::Family(a) => run_family(a),
    };
    let (output, code) = match result {
        Ok(o) => (o, 0),
        Err(Failure::Negative(o)) => (o, 3),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit(&cli, &output) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
