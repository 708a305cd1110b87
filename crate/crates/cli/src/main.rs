//! `superkl`: single computations and verification sweeps over the core
//! engine. Output is deterministic JSON (or plain text) on stdout.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 unparseable or
//! invalid input, 3 a search window or oracle budget was exhausted.

use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use superkl::atypicality::{j_atypicality, super_atypicality};
use superkl::bases::{kl_l, kl_u, red_canonical, red_dual_canonical, super_canonical, super_dual_canonical, Window};
use superkl::characters::{char_reductive_irreducible, char_super_irreducible};
use superkl::duality::{natural_inv, natural_map};
use superkl::suites::{self, Config, Outcome};
use superkl::{Basis, Error, Flavor, HighestWeight, Weight};

#[derive(Parser)]
#[command(
    name = "superkl",
    version,
    about = "Canonical bases and Kazhdan-Lusztig polynomials for gl(m|n) and gl(m+n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one object.
    Compute(ComputeArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Canonical,
    Dual,
    Kl,
    Atypicality,
    Natural,
    Character,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Super,
    Reductive,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Super => Flavor::Super,
            FlavorArg::Reductive => Flavor::Reductive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Golden,
    Duality,
    Oracle,
    Inversion,
    Truncation,
    Bruhat,
    Typicality,
    Characters,
    Invariants,
    All,
}

impl SuiteArg {
    fn criteria(self) -> Vec<u8> {
        match self {
            SuiteArg::Golden => vec![1, 2, 3],
            SuiteArg::Duality => vec![4],
            SuiteArg::Oracle => vec![5],
            SuiteArg::Inversion => vec![6],
            SuiteArg::Truncation => vec![7],
            SuiteArg::Bruhat => vec![8],
            SuiteArg::Typicality => vec![9],
            SuiteArg::Characters => vec![10],
            SuiteArg::Invariants => vec![11],
            SuiteArg::All => (1..=11).collect(),
        }
    }
}

#[derive(Args)]
struct Common {
    /// Candidate slack for dual canonical searches.
    #[arg(long, env = "SUPERKL_WINDOW")]
    window: Option<i64>,
    /// Worker threads; changes wall time only.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// Weights as `a,b,...|c,d,...` with an optional trailing `*` for the
    /// standard tail. `kl` takes `g` then `f`; `character` takes the highest
    /// weight `λ` in the same format.
    #[arg(allow_hyphen_values = true)]
    weight: String,
    /// Second weight of `kl`.
    #[arg(allow_hyphen_values = true)]
    other: Option<String>,
    #[arg(long, value_enum, default_value = "reductive")]
    flavor: FlavorArg,
    /// Expected size of the negative block.
    #[arg(long)]
    m: Option<usize>,
    /// Expected window (finite weights), or the variable count of `character`.
    #[arg(long)]
    n: Option<usize>,
    /// Degree bound in the positive variables for `character`.
    #[arg(long)]
    degree_bound: Option<i64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: SuiteArg,
    /// Negative block size of the duality sweep.
    #[arg(long)]
    m: Option<usize>,
    /// Entries lie in `[-range, range]`.
    #[arg(long)]
    range: Option<i64>,
    /// Largest `m + n` of the oracle sweep.
    #[arg(long)]
    max_rank: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

/// An error with its exit code.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let code = match err.downcast_ref::<Error>() {
            Some(Error::WindowExhausted(_) | Error::Budget { .. }) => 3,
            _ => 2,
        };
        Failure { code, err }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::new(e).into()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(a) => with_jobs(a.common.jobs, || compute(&a)),
        Command::Verify(a) => with_jobs(a.common.jobs, || verify(&a)),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, err }) => {
            eprintln!("error: {err:#}");
            ExitCode::from(code)
        }
    }
}

fn with_jobs(jobs: Option<usize>, body: impl FnOnce() -> Result<u8, Failure> + Send) -> Result<u8, Failure> {
    match jobs {
        None => body(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .context("building the worker pool")?
            .install(body),
    }
}

fn emit(value: &Value, text: &str, format: Format) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("JSON values serialize")
        ),
        Format::Text => println!("{text}"),
    }
}

fn parse_weight(s: &str, a: &ComputeArgs) -> Result<Weight, Failure> {
    let w = Weight::parse(s, a.flavor.into())?;
    if let Some(m) = a.m {
        if w.m() != m {
            return Err(anyhow::anyhow!("`{s}` has {} negative entries, expected {m}", w.m()).into());
        }
    }
    if let (Some(n), false, false) = (a.n, w.tail, matches!(a.kind, Kind::Character)) {
        if w.pos.len() != n + 1 {
            return Err(
                anyhow::anyhow!("`{s}` has {} positive entries, expected n + 1 = {}", w.pos.len(), n + 1).into(),
            );
        }
    }
    Ok(w)
}

fn one_weight(a: &ComputeArgs) -> Result<Weight, Failure> {
    match &a.other {
        None => parse_weight(&a.weight, a),
        Some(_) => Err(anyhow::anyhow!("expected exactly one weight").into()),
    }
}

fn compute(a: &ComputeArgs) -> Result<u8, Failure> {
    let window = Window {
        slack: a.common.window.unwrap_or(Window::default().slack),
    };
    match a.kind {
        Kind::Canonical => {
            let f = one_weight(a)?;
            let x = match f.flavor {
                Flavor::Super => super_canonical(&f)?,
                Flavor::Reductive => red_canonical(&f)?,
            };
            emit(&x.to_json(&f, Basis::U, Value::Null), &x.to_string(), a.common.format);
        }
        Kind::Dual => {
            let f = one_weight(a)?;
            let x = match f.flavor {
                Flavor::Super => super_dual_canonical(&f, window)?,
                Flavor::Reductive => red_dual_canonical(&f, window)?,
            };
            emit(
                &x.to_json(&f, Basis::L, window.to_json()),
                &x.to_string(),
                a.common.format,
            );
        }
        Kind::Kl => {
            let (g, Some(f)) = (&a.weight, &a.other) else {
                return Err(anyhow::anyhow!("`kl` takes two weights, g then f").into());
            };
            let (g, f) = (parse_weight(g, a)?, parse_weight(f, a)?);
            let (u, l) = (kl_u(&g, &f)?, kl_l(&g, &f)?);
            let v = json!({ "g": g.to_json(), "f": f.to_json(), "u": u.to_json(), "l": l.to_json() });
            emit(&v, &format!("u = {u}\nl = {l}"), a.common.format);
        }
        Kind::Atypicality => {
            let f = one_weight(a)?;
            let k = match f.flavor {
                Flavor::Super => super_atypicality(&f),
                Flavor::Reductive => j_atypicality(&f),
            };
            emit(&json!(k), &k.to_string(), a.common.format);
        }
        Kind::Natural => {
            let f = one_weight(a)?;
            let g = match f.flavor {
                Flavor::Reductive => natural_map(&f)?,
                Flavor::Super => natural_inv(&f)?,
            };
            emit(&g.to_json(), &g.to_string(), a.common.format);
        }
        Kind::Character => {
            let w = one_weight(a)?;
            let lambda = HighestWeight::new(w.flavor, w.neg.clone(), w.pos.clone(), true);
            let n = a.n.unwrap_or(lambda.pos.len());
            let bound = a
                .degree_bound
                .unwrap_or_else(|| lambda.pos.iter().map(|x| x.abs()).sum::<i64>() + 1);
            let ch = match lambda.flavor {
                Flavor::Super => char_super_irreducible(&lambda, n, bound)?,
                Flavor::Reductive => char_reductive_irreducible(&lambda, n, bound)?,
            };
            let v =
                json!({ "highest_weight": lambda.to_json(), "n": n, "degree_bound": bound, "character": ch.to_json() });
            emit(&v, &ch.to_string(), a.common.format);
        }
    }
    Ok(0)
}

fn verify(a: &VerifyArgs) -> Result<u8, Failure> {
    if matches!(a.range, Some(r) if r < 0) {
        return Err(anyhow::anyhow!("--range must be nonnegative").into());
    }
    let cfg = Config {
        seed: a.seed,
        m: a.m,
        range: a.range,
        max_rank: a.max_rank,
        max_prefix: None,
        slack: a.common.window,
    };
    let outcomes: Vec<Outcome> = a
        .suite
        .criteria()
        .into_iter()
        .map(|k| suites::criterion_with(k, &cfg).context("unknown criterion"))
        .collect::<anyhow::Result<_>>()?;
    let passed = outcomes.iter().all(|o| o.failures.is_empty());
    let report = json!({
        "passed": passed,
        "seed": a.seed,
        "suites": outcomes.iter().map(Outcome::to_json).collect::<Vec<_>>(),
    });
    let mut text: Vec<String> = Vec::new();
    for o in &outcomes {
        text.push(o.summary());
        text.extend(o.failures.iter().map(|f| format!("    {f}")));
    }
    emit(&report, &text.join("\n"), a.common.format);
    if !passed {
        return Ok(1);
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustion_maps_to_exit_three() {
        assert_eq!(Failure::from(Error::WindowExhausted("x".into())).code, 3);
        assert_eq!(Failure::from(Error::Budget { got: 7, limit: 6 }).code, 3);
        assert_eq!(Failure::from(Error::Parse("x".into())).code, 2);
    }
}
