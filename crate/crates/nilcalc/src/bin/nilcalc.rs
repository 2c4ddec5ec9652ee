//! Thin command-line front end: every subcommand dispatches straight into
//! the library and prints a report.  Exit status: 0 pass, 1 failing
//! verdict, 2 usage or input errors.

use clap::{Args, Parser, Subcommand};
use nilcalc::bracket;
use nilcalc::equid;
use nilcalc::freqreg;
use nilcalc::gowers::{self, SampledFunction};
use nilcalc::nilgroup::{catalog, schema_from_json, schema_to_json, verify_schema, GroupElement};
use nilcalc::nilseq::{self, SmoothingAtlas};
use nilcalc::polyseq::PolySeq;
use nilcalc::scalar::{parse_rat, rat_int, Rational, TorusPoint};
use nilcalc::scenario::{self, emit_report, run_scenario, ReportFormat, Verdict};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "nilcalc", version, about = "Exact nilmanifold and uniformity-norm experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gowers uniformity norm of a function on [N]
    Norm(NormArgs),
    /// Bracket polynomial identities and nilcharacter comparisons
    Bracket(BracketArgs),
    /// Heisenberg bracket character vs e({alpha n} beta n)
    Heisenberg(HeisenbergArgs),
    /// Multilinearisation diagonal on the 7-dimensional group
    Multilin(HeisenbergArgs),
    /// Skew-torus lift vs the closed form n(n+1)/2 alpha + n beta + gamma
    Lift(LiftArgs),
    /// Additive-quadruple statistic of the quadratic derivative family
    Gcs(GcsArgs),
    /// Equidistribution obstruction search and character discrepancy
    Equid(EquidArgs),
    /// Bounded-height frequency regularization
    Freqreg(FreqregArgs),
    /// Load, verify, and print group schemas
    Schema(SchemaArgs),
    /// Evaluate a nilcharacter, streaming (n, components) as CSV
    Nilchar(NilcharArgs),
    /// Run a named bundled scenario or a scenario file
    Scenario(ScenarioArgs),
}

#[derive(Args)]
struct NormArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    ntilde: Option<usize>,
    /// ones | linear:p/q | quadratic:p/q | bracket:p/q,p/q | poly:c0,c1,...
    /// or file:<path> for CSV samples
    #[arg(long)]
    f: String,
}

#[derive(Args)]
struct BracketArgs {
    #[command(subcommand)]
    action: BracketAction,
}

#[derive(Subcommand)]
enum BracketAction {
    /// Verify {an}bn + {bn}an = ab n^2 + {an}{bn} (mod 1) exactly
    CheckIdentity {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 200)]
        n_max: i64,
    },
    /// Compare a bracket expression with the single-chart Heisenberg
    /// character of the same frequencies
    Compare {
        /// prefix expression, e.g. "(* (frac (* (const 2/7) (var 0))) (* (const 3/5) (var 0)))"
        #[arg(long)]
        expr: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 1000)]
        n: i64,
    },
}

#[derive(Args)]
struct HeisenbergArgs {
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    beta: String,
    #[arg(long, default_value_t = 1000)]
    n: i64,
}

#[derive(Args)]
struct LiftArgs {
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    beta: String,
    #[arg(long)]
    gamma: String,
    #[arg(long, default_value_t = 500)]
    n: u32,
}

#[derive(Args)]
struct GcsArgs {
    #[arg(long)]
    alpha: String,
    #[arg(long, default_value_t = 512)]
    n: usize,
    /// quadruple h1,h2,h3,h4
    #[arg(long)]
    quad: String,
}

#[derive(Args)]
struct EquidArgs {
    /// catalog schema spec, e.g. torus(1,1) or heisenberg
    #[arg(long, default_value = "torus(1,1)")]
    schema: String,
    /// linear orbit frequencies, one per generator: p/q[,p/q...]
    #[arg(long)]
    orbit: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 10)]
    height: i64,
    #[arg(long, default_value = "10/1")]
    c: String,
    /// also run the empirical character discrepancy at this height
    #[arg(long)]
    char_height: Option<i64>,
}

#[derive(Args)]
struct FreqregArgs {
    /// frequencies p1/q1,p2/q2,...
    #[arg(long)]
    freqs: String,
    #[arg(long, default_value = "0/1")]
    eps: String,
    #[arg(long, default_value_t = 10)]
    height: i64,
    #[arg(long, default_value_t = 64)]
    q_cap: u64,
}

#[derive(Args)]
struct SchemaArgs {
    /// catalog spec such as heisenberg, torus(2,2), universal(2,0,0;3,3)
    #[arg(long)]
    name: Option<String>,
    /// load a schema JSON file instead
    #[arg(long)]
    load: Option<String>,
    /// write the schema JSON here
    #[arg(long)]
    save: Option<String>,
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    print: bool,
}

#[derive(Args)]
struct NilcharArgs {
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    beta: String,
    #[arg(long, default_value_t = 100)]
    n: i64,
    /// charts per axis of the smoothing atlas; 0 for the single-chart
    /// fundamental-domain mode
    #[arg(long, default_value_t = 0)]
    charts: u32,
}

#[derive(Args)]
struct ScenarioArgs {
    /// bundled name, e.g. acceptance-03
    #[arg(long)]
    name: Option<String>,
    /// scenario JSON file
    #[arg(long)]
    file: Option<String>,
    /// human | records | csv
    #[arg(long, default_value = "human")]
    format: String,
    /// list bundled scenario names
    #[arg(long)]
    list: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn rat_arg(s: &str, what: &str) -> Result<Rational, String> {
    parse_rat(s).map_err(|e| format!("{what}: {e}"))
}

fn dispatch(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Norm(args) => {
            let f = if let Some(path) = args.f.strip_prefix("file:") {
                let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                SampledFunction::from_csv(&text).map_err(|e| e.to_string())?
            } else {
                scenario::function_from_spec(&args.f, args.n).map_err(|e| e.to_string())?
            };
            let norm = gowers::u_norm(&f, args.d, args.ntilde).map_err(|e| e.to_string())?;
            println!("N,d,Ntilde,norm");
            println!(
                "{},{},{},{}",
                args.n,
                args.d,
                args.ntilde.unwrap_or((1 << args.d) * args.n),
                scenario::fmt_float(norm)
            );
            Ok(true)
        }
        Command::Bracket(args) => match args.action {
            BracketAction::CheckIdentity { alpha, beta, n_max } => {
                let alpha = rat_arg(&alpha, "alpha")?;
                let beta = rat_arg(&beta, "beta")?;
                let r = bracket::check_product_identity(&alpha, &beta, n_max);
                println!(
                    "product identity on [1,{n_max}]: {}",
                    if r.pass { "PASS" } else { "FAIL" }
                );
                if let Some(w) = r.witness {
                    println!("first failure at n = {w}");
                }
                Ok(r.pass)
            }
            BracketAction::Compare { expr, alpha, beta, n } => {
                let alpha = rat_arg(&alpha, "alpha")?;
                let beta = rat_arg(&beta, "beta")?;
                let expr = bracket::parse(&expr).map_err(|e| e.to_string())?;
                let spec =
                    nilseq::heisenberg_bracket(&alpha, &beta, SmoothingAtlas::unsmoothed(2));
                let r = bracket::compare_with_nilchar(&expr, &spec, n)
                    .map_err(|e| e.to_string())?;
                println!(
                    "compared {} points ({} flagged): {}",
                    r.compared,
                    r.flagged,
                    if r.pass { "PASS" } else { "FAIL" }
                );
                if let Some(m) = r.first_mismatch {
                    println!("first mismatch at n = {m}");
                }
                Ok(r.pass)
            }
        },
        Command::Heisenberg(args) => {
            let alpha = rat_arg(&args.alpha, "alpha")?;
            let beta = rat_arg(&args.beta, "beta")?;
            let spec = nilseq::heisenberg_bracket(&alpha, &beta, SmoothingAtlas::unsmoothed(2));
            let expr = bracket::bracket_monomial(&alpha, &beta);
            let r = bracket::compare_with_nilchar(&expr, &spec, args.n)
                .map_err(|e| e.to_string())?;
            println!(
                "e({{alpha n}} beta n) vs nilcharacter on [1,{}]: {} ({} compared, {} flagged)",
                args.n,
                if r.pass { "PASS" } else { "FAIL" },
                r.compared,
                r.flagged
            );
            Ok(r.pass)
        }
        Command::Multilin(args) => {
            let alpha = rat_arg(&args.alpha, "alpha")?;
            let beta = rat_arg(&args.beta, "beta")?;
            let spec = nilseq::multilinear_appc(&alpha, &beta, SmoothingAtlas::unsmoothed(6));
            let expr = bracket::multilinear_diagonal(&alpha, &beta);
            let r = bracket::compare_with_nilchar_map(&expr, &spec, args.n, |n| vec![n, n])
                .map_err(|e| e.to_string())?;
            println!(
                "diagonal vs e(2{{an}}bn - {{an}}{{bn}}) on [1,{}]: {} ({} compared, {} flagged)",
                args.n,
                if r.pass { "PASS" } else { "FAIL" },
                r.compared,
                r.flagged
            );
            Ok(r.pass)
        }
        Command::Lift(args) => {
            let alpha = rat_arg(&args.alpha, "alpha")?;
            let beta = rat_arg(&args.beta, "beta")?;
            let gamma = rat_arg(&args.gamma, "gamma")?;
            let walk = nilseq::linear_lift_orbit(&alpha, &beta, &gamma, args.n);
            let mismatch = (0..=args.n).find(|&n| {
                walk[n as usize] != nilseq::linear_lift_closed_form(&alpha, &beta, &gamma, n)
            });
            if let Some(n) = mismatch {
                println!("mismatch at n = {n}");
            }
            println!(
                "iterated action vs closed form on [0,{}]: {}",
                args.n,
                if mismatch.is_none() { "PASS" } else { "FAIL" }
            );
            Ok(mismatch.is_none())
        }
        Command::Gcs(args) => {
            let alpha = rat_arg(&args.alpha, "alpha")?;
            let hs: Vec<i64> = args
                .quad
                .split(',')
                .map(|x| x.trim().parse().map_err(|e| format!("quad: {e}")))
                .collect::<Result<_, _>>()?;
            if hs.len() != 4 {
                return Err("quad needs exactly h1,h2,h3,h4".into());
            }
            let chi = |h: i64| {
                SampledFunction::from_phase_fn(args.n, |k| {
                    TorusPoint::new(&alpha * rat_int(2 * h * k) + &alpha * rat_int(h * h))
                })
            };
            let (c1, c2, c3, c4) = (chi(hs[0]), chi(hs[1]), chi(hs[2]), chi(hs[3]));
            let s = gowers::gcs_statistic([&c1, &c2, &c3, &c4], (hs[0], hs[1], hs[2], hs[3]))
                .map_err(|e| e.to_string())?;
            println!("gcs statistic = {}", scenario::fmt_float(s));
            Ok(true)
        }
        Command::Equid(args) => {
            let schema = catalog::by_name(&args.schema).map_err(|e| e.to_string())?;
            let freqs: Vec<Rational> = args
                .orbit
                .split(',')
                .map(|x| rat_arg(x, "orbit frequency"))
                .collect::<Result<_, _>>()?;
            if freqs.len() != schema.generators.len() {
                return Err(format!(
                    "orbit needs {} frequencies for {}",
                    schema.generators.len(),
                    schema.name
                ));
            }
            let d = schema.weights.iter().map(|w| w.grade()).max().unwrap_or(1);
            let sc = schema.clone();
            let fs = freqs.clone();
            let orbit = PolySeq::from_fn(
                schema.clone(),
                1,
                PolySeq::degree_downset(&schema, d),
                move |k| {
                    let mut acc = GroupElement::identity(sc.clone());
                    for (&p, f) in sc.generators.iter().rev().zip(fs.iter().rev()) {
                        acc = GroupElement::generator_power(sc.clone(), p, f * rat_int(k[0]))
                            .mul(&acc);
                    }
                    acc
                },
            )
            .map_err(|e| e.to_string())?;
            let c = rat_arg(&args.c, "c")?;
            let report =
                equid::leibman_test(&orbit, args.n, args.height, &c).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            if let Some(h) = args.char_height {
                let dist = equid::empirical_distribution_test(&orbit, args.n, h)
                    .map_err(|e| e.to_string())?;
                println!("{}", serde_json::to_string_pretty(&dist).unwrap());
            }
            Ok(true)
        }
        Command::Freqreg(args) => {
            let freqs: Vec<TorusPoint> = args
                .freqs
                .split(',')
                .map(|x| rat_arg(x, "frequency").map(TorusPoint::new))
                .collect::<Result<_, _>>()?;
            let eps = rat_arg(&args.eps, "eps")?;
            let d = freqreg::regularize(&freqs, &eps, args.height, args.q_cap)
                .map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string_pretty(&d).unwrap());
            Ok(d.verify_representation(&freqs))
        }
        Command::Schema(args) => {
            let schema = match (&args.name, &args.load) {
                (Some(name), None) => catalog::by_name(name).map_err(|e| e.to_string())?,
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                    schema_from_json(&text).map_err(|e| e.to_string())?
                }
                _ => return Err("give exactly one of --name or --load".into()),
            };
            let mut pass = true;
            if args.verify {
                let report = verify_schema(&schema);
                println!(
                    "verify {}: {}",
                    schema.name,
                    if report.pass {
                        "PASS".to_string()
                    } else {
                        format!("FAIL ({})", report.failure.unwrap_or_default())
                    }
                );
                pass = report.pass;
            }
            if args.print {
                println!("{}", schema_to_json(&schema));
            }
            if let Some(path) = args.save {
                std::fs::write(&path, schema_to_json(&schema)).map_err(|e| e.to_string())?;
                println!("wrote {path}");
            }
            Ok(pass)
        }
        Command::Nilchar(args) => {
            let alpha = rat_arg(&args.alpha, "alpha")?;
            let beta = rat_arg(&args.beta, "beta")?;
            let atlas = if args.charts == 0 {
                SmoothingAtlas::unsmoothed(2)
            } else {
                SmoothingAtlas::regular(2, args.charts, nilcalc::scalar::rat_i64(1, 10))
                    .map_err(|e| e.to_string())?
            };
            let spec = nilseq::heisenberg_bracket(&alpha, &beta, atlas);
            for n in 1..=args.n {
                let v = spec.eval(&[n]).map_err(|e| e.to_string())?;
                let mut line = format!("{n}");
                for z in v.vector.to_complex() {
                    line.push_str(&format!(",{:.15e},{:.15e}", z.re, z.im));
                }
                println!("{line}");
            }
            Ok(true)
        }
        Command::Scenario(args) => {
            if args.list {
                for name in scenario::bundled_names() {
                    println!("{name}");
                }
                return Ok(true);
            }
            let scenario_def = match (&args.name, &args.file) {
                (Some(name), None) => scenario::bundled(name)
                    .ok_or_else(|| format!("unknown bundled scenario {name:?}"))?,
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                    scenario::scenario_from_json(&text).map_err(|e| e.to_string())?
                }
                _ => return Err("give exactly one of --name or --file".into()),
            };
            let format = match args.format.as_str() {
                "human" => ReportFormat::Human,
                "records" => ReportFormat::Records,
                "csv" => ReportFormat::Csv,
                other => return Err(format!("unknown format {other:?}")),
            };
            let report = run_scenario(&scenario_def).map_err(|e| e.to_string())?;
            print!("{}", emit_report(&report, format));
            Ok(report.verdict == Verdict::Pass)
        }
    }
}
