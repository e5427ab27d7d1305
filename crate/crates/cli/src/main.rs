//! Command-line front door: compute splitting-type strata, check and
//! transform tableaux, enumerate displacement tableaux, and run the
//! verification sweep.
//!
//! Exit codes: 0 all pass, 1 verification failure, 2 resource limit,
//! 64 usage or input error.

mod dot;
mod input;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use kgonal::{
    enumerate_tableaux, expected_dim, h0_twist, is_maximal, magnitude, mu_alpha, rho_k,
    run_sweep_seeded, scrollarize_certified, torus_of, valid_alphas, Alpha, BNParams, CheckStatus,
    SplittingType, SweepLimits, SweepManifest, Tableau, VerificationReport,
};

use input::TableauFormat;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or unreadable/malformed input: exit 64.
    Usage(String),
    /// A verification failure (counterexample found): exit 1.
    Failure(String),
    /// A resource limit tripped: exit 2.
    Limit(String),
}

#[derive(Parser)]
#[command(
    name = "kgonal",
    version,
    about = "Splitting types, displacement tableaux, and torus verification for k-gonal chains of loops",
    after_help = "Environment: KGONAL_THREADS caps the verifier's worker count."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the balanced splitting types mu_alpha of an instance.
    Splitting(SplittingArgs),
    /// Check predicates of a tableau file.
    Tableau(TableauArgs),
    /// Turn a k-uniform displacement tableau into a scrollar one.
    Scrollarize(ScrollarizeArgs),
    /// List every k-uniform displacement tableau of an instance.
    Enumerate(EnumerateArgs),
    /// Run the verification sweep.
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct InstanceArgs {
    /// Genus.
    #[arg(long)]
    g: i64,
    /// Rank.
    #[arg(long)]
    r: i64,
    /// Degree.
    #[arg(long)]
    d: i64,
    /// Gonality.
    #[arg(long)]
    k: i64,
}

impl InstanceArgs {
    fn params(&self) -> Result<BNParams, CliError> {
        BNParams::new(self.g, self.r, self.d, self.k).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(clap::Args)]
struct SplittingArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Also classify one splitting type, e.g. --classify "[-3,-1,1]".
    #[arg(long, value_name = "JSON_ARRAY")]
    classify: Option<String>,
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
struct TableauArgs {
    /// Tableau file (JSON or whitespace grid).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    format: TableauFormat,
    /// Alphabet size for grid input (defaults to the largest symbol).
    #[arg(long)]
    g: Option<i64>,
    /// Gonality.
    #[arg(long)]
    k: i64,
    /// Predicates to check (repeatable): uniform, scrollar, vertical-steps.
    #[arg(long = "check", value_enum, required = true)]
    checks: Vec<CheckKind>,
    /// Scrollar type for --check scrollar; omit to list all types.
    #[arg(long)]
    alpha: Option<i64>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum CheckKind {
    Uniform,
    Scrollar,
    VerticalSteps,
}

#[derive(clap::Args)]
struct ScrollarizeArgs {
    /// Tableau file (JSON or whitespace grid).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    format: TableauFormat,
    /// Alphabet size for grid input (defaults to the largest symbol).
    #[arg(long)]
    g: Option<i64>,
    /// Gonality.
    #[arg(long)]
    k: i64,
    /// Write the JSON certificate here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
struct EnumerateArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Print at most this many tableaux.
    #[arg(long)]
    limit: Option<u64>,
    /// Print only the count.
    #[arg(long)]
    count_only: bool,
    /// One tableau JSON per line instead of grids.
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Manifest file (JSON or TOML) with instances and limits.
    #[arg(long, conflicts_with_all = ["g", "r", "d", "k"])]
    manifest: Option<PathBuf>,
    #[arg(long, requires_all = ["r", "d", "k"])]
    g: Option<i64>,
    #[arg(long)]
    r: Option<i64>,
    #[arg(long)]
    d: Option<i64>,
    #[arg(long)]
    k: Option<i64>,
    /// Per-instance tableau budget (overrides the manifest).
    #[arg(long)]
    max_tableaux: Option<u64>,
    /// Per-instance wall-time budget in milliseconds (overrides the manifest).
    #[arg(long)]
    max_millis: Option<u64>,
    /// Seed for the sampling check.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write the torus containment Hasse diagram (single instance only).
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Dump failing tableaux as JSON files into this directory.
    #[arg(long)]
    counterexamples: Option<PathBuf>,
    /// Print the report as JSON instead of a table.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Ok(n) = std::env::var("KGONAL_THREADS") {
        if let Ok(n) = n.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let result = match cli.command {
        Command::Splitting(args) => cmd_splitting(args),
        Command::Tableau(args) => cmd_tableau(args),
        Command::Scrollarize(args) => cmd_scrollarize(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(64)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Limit(msg)) => {
            eprintln!("limit exceeded: {msg}");
            ExitCode::from(2)
        }
    }
}

fn display_type(mu: &SplittingType) -> String {
    format!(
        "({})",
        mu.entries()
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

#[derive(serde::Serialize)]
struct StratumRow {
    alpha: i64,
    mu: SplittingType,
    magnitude: i64,
    expected_dim: i64,
    maximal: bool,
}

#[derive(serde::Serialize)]
struct Classified {
    mu: SplittingType,
    magnitude: i64,
    dimension: i64,
    h0: i64,
    maximal: bool,
}

fn cmd_splitting(args: SplittingArgs) -> Result<(), CliError> {
    let p = args.instance.params()?;
    let valid: Vec<i64> = valid_alphas(&p).iter().map(|a| a.get()).collect();
    let strata: Vec<StratumRow> = (1..=p.alpha_max())
        .map(|a| {
            let alpha = Alpha::new(&p, a).expect("in range");
            let mu = mu_alpha(&p, alpha);
            StratumRow {
                alpha: a,
                magnitude: magnitude(&mu),
                expected_dim: expected_dim(&p, alpha),
                maximal: valid.contains(&a),
                mu,
            }
        })
        .collect();
    let classify = match &args.classify {
        Some(text) => {
            let mu: SplittingType = serde_json::from_str(text)
                .map_err(|e| CliError::Usage(format!("--classify: {e}")))?;
            let maximal = is_maximal(&mu, &p).map_err(|e| CliError::Usage(e.to_string()))?;
            Some(Classified {
                magnitude: magnitude(&mu),
                dimension: p.g() - magnitude(&mu),
                h0: h0_twist(&mu, 0),
                maximal,
                mu,
            })
        }
        None => None,
    };

    if args.json {
        let mut out = json!({
            "params": p,
            "rho_k": rho_k(&p),
            "strata": strata,
        });
        if let Some(c) = classify {
            out["classify"] = serde_json::to_value(c).unwrap();
        }
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
        return Ok(());
    }

    println!(
        "instance {p}: rho_k = {}, entry sum = {}",
        rho_k(&p),
        p.target_sum()
    );
    println!(
        "{:<6} {:<16} {:<10} {:<13} maximal",
        "alpha", "mu_alpha", "magnitude", "expected_dim"
    );
    for s in &strata {
        println!(
            "{:<6} {:<16} {:<10} {:<13} {}",
            s.alpha,
            display_type(&s.mu),
            s.magnitude,
            s.expected_dim,
            if s.maximal { "yes" } else { "no" },
        );
    }
    if let Some(c) = classify {
        println!(
            "classify {}: magnitude {}, dimension {}, h0 {}, maximal {}",
            display_type(&c.mu),
            c.magnitude,
            c.dimension,
            c.h0,
            if c.maximal { "yes" } else { "no" },
        );
    }
    Ok(())
}

fn cmd_tableau(args: TableauArgs) -> Result<(), CliError> {
    if args.k < 2 {
        return Err(CliError::Usage(format!("--k must be at least 2, got {}", args.k)));
    }
    let t = input::read_tableau(&args.input, args.format, args.g)?;
    let k = args.k;
    let mut results = Vec::new();
    for check in &args.checks {
        match check {
            CheckKind::Uniform => {
                results.push(json!({ "check": "uniform", "value": t.is_k_uniform(k) }));
            }
            CheckKind::VerticalSteps => {
                results.push(json!({ "check": "vertical-steps", "value": t.has_vertical_steps(k) }));
            }
            CheckKind::Scrollar => match args.alpha {
                Some(a) => {
                    let v = t
                        .is_scrollar(k, a)
                        .map_err(|e| CliError::Usage(e.to_string()))?;
                    results.push(json!({ "check": "scrollar", "alpha": a, "value": v }));
                }
                None => {
                    results.push(json!({ "check": "scrollar", "types": t.scrollar_types(k) }));
                }
            },
        }
    }
    if args.json {
        let out = json!({ "tableau": t, "k": k, "results": results });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
        return Ok(());
    }
    for r in &results {
        match r["check"].as_str().unwrap() {
            "scrollar" if r.get("types").is_some() => {
                println!("scrollar (k={k}): types {}", r["types"]);
            }
            "scrollar" => {
                println!("scrollar (k={k}, alpha={}): {}", r["alpha"], r["value"]);
            }
            name => println!("{name} (k={k}): {}", r["value"]),
        }
    }
    Ok(())
}

/// Residue constraints of a tableau read directly off the boxes.
fn constraints_of(t: &Tableau, k: i64) -> BTreeMap<i64, i64> {
    let mut map = BTreeMap::new();
    for y in 1..=t.height() {
        for x in 1..=t.width() {
            map.insert(t.get(x, y), (y - x).rem_euclid(k));
        }
    }
    map
}

fn cmd_scrollarize(args: ScrollarizeArgs) -> Result<(), CliError> {
    if args.k < 2 {
        return Err(CliError::Usage(format!("--k must be at least 2, got {}", args.k)));
    }
    let t = input::read_tableau(&args.input, args.format, args.g)?;
    let k = args.k;
    let (out, path) = scrollarize_certified(&t, k).map_err(|e| CliError::Usage(e.to_string()))?;
    let scroll_type = path.as_ref().map(|p| p.path_type).unwrap_or(t.width());
    let input_constraints = constraints_of(&t, k);
    let output_constraints = constraints_of(&out, k);
    let contained = output_constraints
        .iter()
        .all(|(j, r)| input_constraints.get(j) == Some(r));
    assert!(contained, "scrollarization must produce a containing torus");
    let changed = out != t;
    let note = if changed {
        "input scrollarized"
    } else {
        "input already scrollar; unchanged"
    };
    let certificate = json!({
        "input": t,
        "output": out,
        "scrollar_type": scroll_type,
        "path": path,
        "k": k,
        "input_torus": { "constraints": input_constraints, "g": t.alphabet(), "k": k },
        "output_torus": { "constraints": output_constraints, "g": out.alphabet(), "k": k },
        "containment": contained,
        "changed": changed,
        "note": note,
    });
    if let Some(file) = &args.output {
        std::fs::write(file, serde_json::to_string_pretty(&certificate).unwrap())
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", file.display())))?;
    }
    if args.json || args.output.is_none() {
        if args.json {
            println!("{}", serde_json::to_string_pretty(&certificate).unwrap());
        } else {
            for row in out.rows() {
                println!(
                    "{}",
                    row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                );
            }
            println!("# scrollar type {scroll_type}; {note}");
            if let Some(p) = &path {
                println!("# path {}", serde_json::to_string(&p).unwrap());
            }
        }
    }
    Ok(())
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<(), CliError> {
    let p = args.instance.params()?;
    let mut count: u64 = 0;
    let mut truncated = false;
    for t in enumerate_tableaux(&p) {
        if let Some(limit) = args.limit {
            if count >= limit {
                truncated = true;
                break;
            }
        }
        count += 1;
        if args.count_only {
            continue;
        }
        if args.json {
            println!("{}", serde_json::to_string(&t).unwrap());
        } else {
            for row in t.rows() {
                println!(
                    "{}",
                    row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                );
            }
            println!();
        }
    }
    if args.count_only {
        println!("{count}");
    } else if !args.json {
        println!("# {count} tableaux{}", if truncated { " (truncated)" } else { "" });
    }
    Ok(())
}

fn render_report_table(report: &VerificationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<24} {:>9} {:>6} {:>8} {:>9} {:>7}  checks\n",
        "instance", "tableaux", "tori", "maximal", "scrollar", "maxdim"
    ));
    for inst in &report.instances {
        let checks: Vec<String> = inst
            .checks
            .iter()
            .map(|c| {
                let s = match c.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Skip => "skip",
                    CheckStatus::LimitExceeded => "LIMIT",
                };
                format!("{}={s}", c.name)
            })
            .collect();
        out.push_str(&format!(
            "{:<24} {:>9} {:>6} {:>8} {:>9} {:>7}  {}\n",
            inst.params.to_string(),
            inst.stats.tableau_count,
            inst.stats.torus_count,
            inst.stats.maximal_torus_count,
            inst.stats.scrollar_torus_count,
            inst.stats
                .max_torus_dimension
                .map(|d| d.to_string())
                .unwrap_or_else(|| "-".into()),
            checks.join(" ")
        ));
    }
    let passed = report
        .instances
        .iter()
        .filter(|i| i.passed() && !i.limited())
        .count();
    out.push_str(&format!(
        "{passed}/{} instances passed\n",
        report.instances.len()
    ));
    out
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let mut manifest = match (&args.manifest, args.g) {
        (Some(path), _) => input::read_manifest(path)?,
        (None, Some(_)) => {
            let p = BNParams::new(
                args.g.unwrap(),
                args.r.unwrap(),
                args.d.unwrap(),
                args.k.unwrap(),
            )
            .map_err(|e| CliError::Usage(e.to_string()))?;
            SweepManifest {
                instances: vec![p],
                limits: SweepLimits::default(),
            }
        }
        (None, None) => SweepManifest::default_sweep(),
    };
    if let Some(m) = args.max_tableaux {
        manifest.limits.max_tableaux = m;
    }
    if let Some(m) = args.max_millis {
        manifest.limits.max_millis = m;
    }
    if args.dot.is_some() && manifest.instances.len() != 1 {
        return Err(CliError::Usage(
            "--dot needs exactly one instance".to_string(),
        ));
    }

    let report = run_sweep_seeded(&manifest, args.seed);

    if let Some(dir) = &args.counterexamples {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))?;
        for (i, inst) in report.instances.iter().enumerate() {
            for check in &inst.checks {
                if check.status == CheckStatus::Fail {
                    if let Some(payload) = &check.counterexample {
                        let file = dir.join(format!("instance{}_{}.json", i, check.name));
                        std::fs::write(&file, serde_json::to_string_pretty(payload).unwrap())
                            .map_err(|e| {
                                CliError::Usage(format!("cannot write {}: {e}", file.display()))
                            })?;
                    }
                }
            }
        }
    }

    if let Some(path) = &args.dot {
        let p = manifest.instances[0];
        let tori = kgonal::all_tori(&p).map_err(|e| CliError::Usage(e.to_string()))?;
        let scrollar: Vec<bool> = tori
            .iter()
            .map(|u|

                // A torus is scrollar-backed when some representative
                // tableau with these constraints is scrollar.
                enumerate_tableaux(&p).any(|t| {
                    !t.scrollar_types(p.k()).is_empty()
                        && torus_of(&t, &p)
                            .map(|v| v.constraints() == u.constraints())
                            .unwrap_or(false)
                }))
            .collect();
        std::fs::write(path, dot::hasse_dot(&tori, &scrollar))
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }

    if let Some(path) = &args.report {
        std::fs::write(path, serde_json::to_string_pretty(&report).unwrap())
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }

    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        print!("{}", render_report_table(&report));
    }

    if report.any_failed() {
        return Err(CliError::Failure(
            "at least one check found a counterexample".to_string(),
        ));
    }
    if report.any_limited() {
        return Err(CliError::Limit(
            "at least one instance exceeded its limits".to_string(),
        ));
    }
    Ok(())
}
