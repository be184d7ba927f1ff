use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use lamplighter::finite_quotients::{compare_qu, truncated_qu, QuComparison, QuSet, QuSource, Side};
use lamplighter::fp_poly::FieldSpec;
use lamplighter::json::{self, CandidateJson, ElementJson, MatrixJson, PresentationJson};
use lamplighter::poly_matrix::smith_normal_form;
use lamplighter::rigidity::{certify, CandidateGroup, CertifyOptions, DecompositionReport};
use lamplighter::rp_module::{decompose, ModulePresentation};
use lamplighter::wreath::{Base, LamplighterSpec, WreathElement};

#[derive(Parser)]
#[command(name = "lamplighter", version, about = "Modules over F_p[x, 1/x], lamplighter groups and their finite quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form of a polynomial matrix
    Snf {
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Free rank and invariant factors of a presented module
    Decompose {
        presentation: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Arithmetic in (Z/pZ)^n wr Z or (Z/pZ)^n wr Z/m
    Wreath {
        #[command(subcommand)]
        op: WreathOp,
    },
    /// Finite quotients of N ⋊ Z up to an order bound
    Quotients {
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[arg(long, default_value_t = 4096)]
        order_cap: u128,
    },
    /// Compare bounded quotient sets of two inputs
    CompareQu {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[arg(long, default_value_t = 4096)]
        order_cap: u128,
    },
    /// Run the certificate pipeline on a candidate
    Certify {
        candidate: PathBuf,
        #[arg(long, default_value_t = 8)]
        qu_bound: usize,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4096)]
        order_cap: u128,
    },
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Use the base Z/m instead of Z
    #[arg(long)]
    cyclic: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum WreathOp {
    Mul {
        a: String,
        b: String,
        #[command(flatten)]
        group: GroupArgs,
    },
    Inv {
        a: String,
        #[command(flatten)]
        group: GroupArgs,
    },
    Abelianize {
        a: String,
        #[command(flatten)]
        group: GroupArgs,
    },
}

enum Outcome {
    Ok,
    NotCertified,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::NotCertified) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Inline JSON when the argument starts with `{`, a file path otherwise.
fn read_inline(arg: &str) -> anyhow::Result<String> {
    if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        read(Path::new(arg))
    }
}

/// Accepts both the presentation and the candidate format.
fn load_presentation(path: &Path) -> anyhow::Result<(ModulePresentation, Option<usize>)> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).context("parsing JSON")?;
    if value.get("presentation").is_some() {
        let c: CandidateJson = json::parse(&text)?;
        let cand = CandidateGroup::from_json(&c)?;
        Ok((cand.presentation().clone(), Some(cand.n())))
    } else {
        let p: PresentationJson = json::parse(&text)?;
        Ok((p.to_presentation()?, None))
    }
}

fn qu_set_json(set: &QuSet) -> serde_json::Value {
    let classes: Vec<_> = set.fingerprints().collect();
    json!({ "bound": set.bound(), "count": set.len(), "classes": classes })
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Snf { matrix, json } => {
            let m = json::parse::<MatrixJson>(&read(&matrix)?)?.to_matrix()?;
            let snf = smith_normal_form(&m);
            if !snf.verify(&m)? {
                bail!("Smith form failed its certificate");
            }
            if json {
                let diag: Vec<_> = snf.diag().iter().map(json::poly_to_literal).collect();
                let out = json!({
                    "diag": diag,
                    "u": MatrixJson::from_matrix(snf.u()),
                    "d": MatrixJson::from_matrix(snf.d()),
                    "v": MatrixJson::from_matrix(snf.v()),
                });
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                let diag: Vec<String> = snf.diag().iter().map(|d| d.to_string()).collect();
                println!("diag: [{}]", diag.join(", "));
                println!("U =\n{}", snf.u());
                println!("V =\n{}", snf.v());
            }
        }
        Command::Decompose { presentation, json } => {
            let (p, _) = load_presentation(&presentation)?;
            let report = DecompositionReport::new(&decompose(&p));
            if json {
                println!("{}", json::to_string(&report));
            } else {
                println!("free rank: {}", report.free_rank);
                if report.invariant_factors_text.is_empty() {
                    println!("torsion: none");
                }
                for (f, order) in report.invariant_factors_text.iter().zip(&report.torsion_orders) {
                    println!("R_{}/({f})  order {order}", p.field().p());
                }
            }
        }
        Command::Wreath { op } => wreath(op)?,
        Command::Quotients { input, bound, order_cap } => {
            let (p, _) = load_presentation(&input)?;
            let set = truncated_qu(&QuSource::Presentation(p), bound, order_cap)?;
            println!("{}", serde_json::to_string_pretty(&qu_set_json(&set))?);
        }
        Command::CompareQu { left, right, bound, order_cap } => {
            let (a, _) = load_presentation(&left)?;
            let (b, _) = load_presentation(&right)?;
            let cmp = compare_qu(&QuSource::Presentation(a), &QuSource::Presentation(b), bound, order_cap)?;
            println!("{}", json::to_string(&cmp));
        }
        Command::Certify { candidate, qu_bound, json, seed, order_cap } => {
            let cand = CandidateGroup::parse(&read(&candidate)?)?;
            let opts = CertifyOptions { qu_bound, seed, order_cap, ..CertifyOptions::default() };
            let report = certify(&cand, &opts)?;
            if json {
                println!("{}", report.to_json());
            } else {
                println!("abelianization: {} (dim {} / expected {})",
                    pass(report.ab_check.passed), report.ab_check.coinvariant_dim, report.ab_check.expected);
                println!("free rank: {}; invariant factors: [{}]",
                    report.decomposition.free_rank, report.decomposition.invariant_factors_text.join(", "));
                if let Some(m) = report.chosen_m {
                    println!("m: {m}");
                }
                if let Some(rc) = &report.rank_check {
                    println!("rank check: {} ({})", pass(rc.passed), rc.inequality);
                }
                if let Some(epi) = &report.epimorphism {
                    let phi = epi.phi.to_matrix()?;
                    println!("epimorphism: verified on {} sampled pairs (seed {})\n{}", epi.law_samples, epi.seed, phi);
                }
                match &report.qu_comparison {
                    QuComparison::Equal { bound, classes } => {
                        println!("quotients up to order {bound}: equal ({classes} classes)")
                    }
                    QuComparison::Different { bound, witness } => println!(
                        "quotients up to order {bound}: differ, witness of order {} found only for {}",
                        witness.fingerprint.order,
                        match witness.side {
                            Side::Left => "the candidate".to_string(),
                            Side::Right => format!("L_{{{},{}}}", report.n, report.p),
                        }
                    ),
                }
                println!("certified: {}", report.certified);
                println!("{}", report.conclusion);
            }
            if !report.certified {
                return Ok(Outcome::NotCertified);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn spec_of(g: &GroupArgs) -> anyhow::Result<LamplighterSpec> {
    let base = g.cyclic.map_or(Base::Integers, Base::Cyclic);
    Ok(LamplighterSpec::new(FieldSpec::new(g.p)?, g.n, base)?)
}

fn element(arg: &str, spec: LamplighterSpec) -> anyhow::Result<WreathElement> {
    Ok(json::parse::<ElementJson>(&read_inline(arg)?)?.to_element(spec)?)
}

fn print_element(e: &WreathElement, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string(&ElementJson::from_element(e)).expect("serializable"));
    } else {
        println!("{e}");
    }
}

fn wreath(op: WreathOp) -> anyhow::Result<()> {
    match op {
        WreathOp::Mul { a, b, group } => {
            let spec = spec_of(&group)?;
            let product = element(&a, spec)?.mul(&element(&b, spec)?)?;
            print_element(&product, group.json);
        }
        WreathOp::Inv { a, group } => {
            let spec = spec_of(&group)?;
            print_element(&element(&a, spec)?.inv(), group.json);
        }
        WreathOp::Abelianize { a, group } => {
            let spec = spec_of(&group)?;
            let (v, k) = element(&a, spec)?.abelianize();
            if group.json {
                println!("{}", json!({ "lamps": v, "shift": k }));
            } else {
                let vs: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                println!("([{}], {k})", vs.join(","));
            }
        }
    }
    Ok(())
}
