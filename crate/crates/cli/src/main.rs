//! Command-line front end: norm computation on instance files, law
//! verification over seeded corpora, and instance generation.
//!
//! Exit codes: 0 success (possibly with only-inconclusive verdicts flagged in
//! the report), 1 when a verification reports a failed law, 2 on validation
//! errors (malformed files, unknown kinds), 3 on inadmissible exponents.

mod formats;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use formats::{FamilyDecl, InstanceFile, ReportFile, SpaceDecl, TensorDecl, INSTANCE_VERSION};
use sumnorms::budget::SearchBudget;
use sumnorms::gen;
use sumnorms::laws::{self, CorpusOptions, LawReport, Verdict};
use sumnorms::seqnorms::{
    mixed_norm_dual, mixed_norm_primal, strong_norm, weak_norm,
};
use sumnorms::spaces::{set_enum_cap, SpaceSpec};
use sumnorms::summing::{check_triviality, estimate_norm};
use sumnorms::tensors::op_norm;
use sumnorms::{Error as CoreError, Exp};

const EXIT_FAILED_LAW: i32 = 1;
const EXIT_VALIDATION: i32 = 2;
const EXIT_INADMISSIBLE: i32 = 3;

#[derive(Parser)]
#[command(name = "sumnorms", version, about = "Summing-type norms and their laws on finite-dimensional lp spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a norm of a tensor or family from an instance file.
    Norm(NormArgs),
    /// Verify a law over a seeded corpus.
    Verify(VerifyArgs),
    /// Generate an instance file.
    Gen(GenArgs),
}

#[derive(clap::Args)]
struct NormArgs {
    /// Path to the instance JSON file.
    instance: PathBuf,
    #[arg(long, value_enum)]
    kind: NormKind,
    /// Family name (defaults to the first family in the file).
    #[arg(long)]
    family: Option<String>,
    /// Tensor name (defaults to the first tensor in the file).
    #[arg(long)]
    tensor: Option<String>,
    /// Exponent p for strong/weak norms ("inf" allowed).
    #[arg(long)]
    p: Option<String>,
    /// Outer exponent s for mixed norms.
    #[arg(long)]
    s: Option<String>,
    /// Inner exponent q for mixed norms.
    #[arg(long)]
    q: Option<String>,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormKind {
    Strong,
    Weak,
    MixedPrimal,
    MixedDual,
    Op,
    Summing,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// One of: littlewood43, bh, maurey, mixing, coherence, quotient,
    /// triviality, inclusion, endpoints.
    law: String,
    #[arg(long, default_value_t = 50)]
    count: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Space dimension cap for the corpus.
    #[arg(long = "N", default_value_t = 4)]
    dim: usize,
    /// Family length cap for the corpus.
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Exponents for the triviality law.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct GenArgs {
    /// One of: gaussian-tensor, sign-tensor, fourier-tensor, basis-family,
    /// gaussian-family.
    kind: String,
    /// Arity for tensors.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Space dimension.
    #[arg(long = "N", default_value_t = 4)]
    dim: usize,
    /// Codomain dimension for tensors (1 = scalar form).
    #[arg(long, default_value_t = 1)]
    codim: usize,
    /// Family length.
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Space exponent for generated data ("inf" allowed).
    #[arg(long, default_value = "inf")]
    exponent: String,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Clone, Copy)]
struct BudgetArgs {
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long = "budget-restarts", default_value_t = 16)]
    restarts: usize,
    #[arg(long = "budget-iters", default_value_t = 160)]
    iters: usize,
    #[arg(long = "m-max", default_value_t = 4)]
    m_max: usize,
}

impl BudgetArgs {
    fn to_budget(self) -> SearchBudget {
        SearchBudget {
            restarts: self.restarts,
            iters: self.iters,
            m_max: self.m_max,
            seed: self.seed,
        }
    }
}

fn main() {
    // Default enumeration cap, overridable by environment.
    if let Ok(cap) = std::env::var("SUMNORMS_ENUM_CAP") {
        match cap.parse::<usize>() {
            Ok(v) => set_enum_cap(v),
            Err(_) => {
                eprintln!("error: SUMNORMS_ENUM_CAP must be an integer, got {cap:?}");
                std::process::exit(EXIT_VALIDATION);
            }
        }
    }
    let cli = Cli::parse();
    let command_echo: String = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let started = Instant::now();
    let code = match cli.command {
        Command::Norm(args) => run_norm(args, &command_echo, started),
        Command::Verify(args) => run_verify(args, &command_echo, started),
        Command::Gen(args) => run_gen(args),
    };
    match code {
        Ok(c) => std::process::exit(c),
        Err(err) => {
            let code = classify_error(&err);
            eprintln!("error: {err:#}");
            std::process::exit(code);
        }
    }
}

/// Inadmissible exponents exit 3 (the message cites the violated
/// constraint); everything else is a validation error, exit 2.
fn classify_error(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(CoreError::Inadmissible { .. }) = cause.downcast_ref::<CoreError>() {
            return EXIT_INADMISSIBLE;
        }
    }
    EXIT_VALIDATION
}

fn parse_exp(text: &str) -> anyhow::Result<Exp> {
    if text == "inf" {
        return Ok(Exp::Inf);
    }
    let v: f64 = text
        .parse()
        .map_err(|_| anyhow::anyhow!("exponent must be a number or \"inf\", got {text:?}"))?;
    Exp::try_finite(v).ok_or_else(|| anyhow::anyhow!("exponent must be positive, got {v}"))
}

fn required_exp(opt: &Option<String>, flag: &str) -> anyhow::Result<Exp> {
    match opt {
        Some(s) => parse_exp(s),
        None => anyhow::bail!("missing required flag --{flag}"),
    }
}

fn run_norm(args: NormArgs, echo: &str, started: Instant) -> anyhow::Result<i32> {
    let instance = InstanceFile::load(&args.instance)?;
    let budget = args.budget.to_budget();
    let item = match args.kind {
        NormKind::Strong => {
            let fam = instance.family(args.family.as_deref())?;
            let p = required_exp(&args.p, "p")?;
            serde_json::json!({
                "kind": "strong",
                "p": p,
                "estimate": strong_norm(&fam, p),
            })
        }
        NormKind::Weak => {
            let fam = instance.family(args.family.as_deref())?;
            let p = required_exp(&args.p, "p")?;
            serde_json::json!({
                "kind": "weak",
                "p": p,
                "estimate": weak_norm(&fam, p, budget)?,
            })
        }
        NormKind::MixedPrimal => {
            let fam = instance.family(args.family.as_deref())?;
            let s = required_exp(&args.s, "s")?;
            let q = required_exp(&args.q, "q")?;
            serde_json::json!({
                "kind": "mixed-primal",
                "s": s,
                "q": q,
                "estimate": mixed_norm_primal(&fam, s, q, budget)?,
            })
        }
        NormKind::MixedDual => {
            let fam = instance.family(args.family.as_deref())?;
            let s = required_exp(&args.s, "s")?;
            let q = required_exp(&args.q, "q")?;
            serde_json::json!({
                "kind": "mixed-dual",
                "s": s,
                "q": q,
                "estimate": mixed_norm_dual(&fam, s, q, budget)?,
            })
        }
        NormKind::Op => {
            let tensor = instance.tensor(args.tensor.as_deref())?;
            serde_json::json!({
                "kind": "op",
                "estimate": op_norm(&tensor, budget),
            })
        }
        NormKind::Summing => {
            let tensor = instance.tensor(args.tensor.as_deref())?;
            let params = instance
                .params
                .as_ref()
                .ok_or_else(|| anyhow::anyhow!("instance file has no summing params"))?;
            serde_json::json!({
                "kind": "summing",
                "params": params,
                "estimate": estimate_norm(&tensor, params, budget)?,
            })
        }
    };
    let report = ReportFile {
        tool_version: env!("CARGO_PKG_VERSION").into(),
        command: echo.into(),
        seed: budget.seed,
        enum_cap: sumnorms::spaces::enum_cap(),
        items: vec![item],
        inconclusive: None,
        wall_time_ms: started.elapsed().as_millis() as u64,
    };
    report.write(args.out.as_deref())?;
    Ok(0)
}

fn run_verify(args: VerifyArgs, echo: &str, started: Instant) -> anyhow::Result<i32> {
    let opts = CorpusOptions {
        count: args.count,
        seed: args.seed,
        dim: args.dim,
        m: args.m,
    };
    let reports: Vec<LawReport> = match args.law.as_str() {
        "littlewood43" => laws::run_littlewood(&opts)?,
        "bh" => laws::run_bh(&opts)?,
        "maurey" => laws::run_maurey(&opts)?,
        "mixing" => laws::run_mixing(&opts)?,
        "coherence" => laws::run_coherence(&opts)?,
        "quotient" => laws::run_quotient(&opts)?,
        "endpoints" => laws::run_endpoints(&opts)?,
        "inclusion" => laws::run_inclusion(&opts)?,
        "triviality" => match (args.p, args.q, &args.r) {
            (Some(p), Some(q), Some(r)) => {
                let r = parse_exp(r)?;
                let space = SpaceSpec::lp(2.0, args.dim.max(2));
                let t = gen::gaussian_tensor(vec![space], space, args.seed)?;
                let params = sumnorms::summing::SummingParams::AsLinearPqr { p, q, r };
                let report = check_triviality(&t, &params, SearchBudget::default())?;
                let delta = report.predicted_exponent;
                let measured = report.measured_exponent;
                let law = match measured {
                    Some(m_val) => LawReport::exact_vs_exact(
                        "triviality",
                        &format!("{} (delta={delta})", report.violated_constraint),
                        args.seed,
                        (m_val - delta).abs(),
                        0.0,
                        0.02 * delta.abs(),
                    )
                    .with_details(serde_json::to_value(&report)?),
                    None => LawReport::recorded("triviality", "zero map", args.seed, 0.0),
                };
                vec![law]
            }
            _ => laws::run_triviality(&opts, &[0.1, 0.25])?,
        },
        other => anyhow::bail!("unknown law id {other:?}"),
    };

    let (pass, fail, inconclusive) = laws::tally(&reports);
    eprintln!(
        "{}: {pass} pass, {fail} fail, {inconclusive} inconclusive",
        args.law
    );
    let items = reports
        .iter()
        .map(serde_json::to_value)
        .collect::<Result<Vec<_>, _>>()?;
    let any_fail = reports.iter().any(|r| r.verdict == Verdict::Fail);
    let only_inconclusive = !any_fail && inconclusive > 0;
    let report = ReportFile {
        tool_version: env!("CARGO_PKG_VERSION").into(),
        command: echo.into(),
        seed: args.seed,
        enum_cap: sumnorms::spaces::enum_cap(),
        items,
        inconclusive: only_inconclusive.then_some(true),
        wall_time_ms: started.elapsed().as_millis() as u64,
    };
    report.write(args.out.as_deref())?;
    Ok(if any_fail { EXIT_FAILED_LAW } else { 0 })
}

fn run_gen(args: GenArgs) -> anyhow::Result<i32> {
    let exponent = parse_exp(&args.exponent)?;
    if args.dim == 0 || args.n == 0 || args.m == 0 || args.codim == 0 {
        anyhow::bail!("dims must be positive");
    }
    let space = SpaceSpec::new(exponent, args.dim)?;
    let mut file = InstanceFile {
        version: INSTANCE_VERSION.into(),
        seed: args.seed,
        note: None,
        spaces: Default::default(),
        tensors: Vec::new(),
        families: Vec::new(),
        params: None,
    };
    file.spaces.insert(
        "E".into(),
        SpaceDecl {
            exponent,
            dim: args.dim,
        },
    );

    match args.kind.as_str() {
        "gaussian-tensor" | "sign-tensor" | "fourier-tensor" => {
            let codomain = if args.codim == 1 {
                SpaceSpec::scalar()
            } else {
                SpaceSpec::new(exponent, args.codim)?
            };
            file.spaces.insert(
                "F".into(),
                SpaceDecl {
                    exponent: codomain.exponent,
                    dim: codomain.dim,
                },
            );
            let tensor = match args.kind.as_str() {
                "gaussian-tensor" => {
                    gen::gaussian_tensor(vec![space; args.n], codomain, args.seed)?
                }
                "sign-tensor" => gen::sign_tensor(vec![space; args.n], codomain, args.seed)?,
                _ => {
                    let t = gen::fourier_tensor(args.n, args.dim)?;
                    if args.codim != 1 {
                        anyhow::bail!("fourier-tensor is a scalar form (--codim 1)");
                    }
                    t
                }
            };
            let mut shape: Vec<usize> = vec![args.dim; args.n];
            shape.push(codomain.dim);
            file.tensors.push(TensorDecl {
                name: "T".into(),
                domain: vec!["E".into(); args.n],
                codomain: "F".into(),
                shape,
                coeffs: tensor.coeffs,
            });
        }
        "basis-family" | "gaussian-family" => {
            let fam = match args.kind.as_str() {
                "basis-family" => gen::basis_family(space, args.m)?,
                _ => gen::gaussian_family(space, args.m, args.seed)?,
            };
            file.families.push(FamilyDecl {
                name: "xs".into(),
                space: "E".into(),
                shape: fam.shape.clone(),
                members: fam.members.iter().map(|v| v.coords.clone()).collect(),
            });
        }
        other => anyhow::bail!("unknown generator kind {other:?}"),
    }

    let text = serde_json::to_string_pretty(&file)?;
    match args.out.as_deref() {
        Some(path) => std::fs::write(path, text.as_bytes())?,
        None => println!("{text}"),
    }
    Ok(0)
}
