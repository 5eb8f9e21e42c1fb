//! Command-line front end: stable subcommands and JSON file formats tying
//! the library together for batch use.

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::discovery::{
    a2_embedding_instances, discover_kernel, int_rank, is_nonalt_instance, relations_match,
    spans_contained,
};
use crate::polylog::{lhat, li_principal, zagier_l, ExtendedPoint, Side};
use crate::quiver::{
    class_generator_registry, grassmannian_seed, mutation_class, mutate_seed, quiver_from_json,
    quiver_to_json, ACoordRegistry, Quiver, Seed,
};
use crate::realize::{check_realization, evaluate_relation, run_scenario, Realization, Scenario};
use crate::regulator::{
    boundary_squared_is_zero, chain_l3_g5_boundary, consistency_checks, f5_vs_g5,
    lhat3_f5_boundary, GenericConfig,
};
use crate::symbolic::{build_named, RelationName, RelationSum};
use crate::{Error, Result};

#[derive(Parser)]
#[command(name = "polybloch", about = "Lifted polylogarithms, quiver relations, and their numeric verification", version)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// RNG seed for random-point suites (recorded in every report)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Li_n, L_n, or the lifted polylogarithm at a point
    Eval(EvalArgs),
    /// Quiver operations: mutate a seed, enumerate a class, list coordinates
    Quiver(QuiverArgs),
    /// Discover differential relations from a quiver's mutation class
    Discover(DiscoverArgs),
    /// Verify a built-in scenario or a relation/realization file pair
    Verify(VerifyArgs),
    /// Regulator-map checks at random or supplied configurations
    Regulator(RegulatorArgs),
    /// Run every acceptance scenario and print a residual table
    Suite(SuiteArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// weight n
    #[arg(long)]
    n: i32,
    /// complex z as "re" or "re,im"
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[arg(long, default_value_t = 0)]
    p: i64,
    #[arg(long, default_value_t = 0)]
    q: i64,
    /// component signs: ++, +-, -+, or --
    #[arg(long, default_value = "++", allow_hyphen_values = true)]
    signs: String,
    /// side flag for real z on a cut: above or below
    #[arg(long)]
    side: Option<String>,
    /// function: lhat (default), li, or zagier
    #[arg(long, default_value = "lhat")]
    function: String,
}

#[derive(Args)]
struct QuiverArgs {
    /// operation: mutate, class, or coords
    op: String,
    /// quiver DSL JSON file
    #[arg(long)]
    file: Option<String>,
    /// built-in Grassmannian quiver Q_{p,q} for Gr(p, p+q): two values p q
    #[arg(long, num_args = 2)]
    grassmannian: Option<Vec<usize>>,
    /// vertex to mutate at (0-based; op = mutate)
    #[arg(long)]
    at: Option<usize>,
    /// seed cap for class enumeration
    #[arg(long, default_value_t = 100_000)]
    cap: usize,
}

#[derive(Args)]
struct DiscoverArgs {
    /// built-in Grassmannian quiver: two values p q
    #[arg(long, num_args = 2)]
    grassmannian: Option<Vec<usize>>,
    /// the two-vertex A₂ quiver
    #[arg(long)]
    a2: bool,
    /// quiver DSL JSON file
    #[arg(long)]
    file: Option<String>,
    /// weight n
    #[arg(long)]
    weight: i32,
    #[arg(long, default_value_t = 100_000)]
    cap: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// built-in scenario name
    #[arg(long)]
    scenario: Option<String>,
    /// relation JSON file ({generators, terms})
    #[arg(long)]
    relation: Option<String>,
    /// realization JSON file ({signs, values, logs})
    #[arg(long)]
    realization: Option<String>,
    /// weight for --relation evaluation
    #[arg(long)]
    n: Option<i32>,
    /// random realizations per scenario
    #[arg(long, default_value_t = 10)]
    trials: usize,
}

#[derive(Args)]
struct RegulatorArgs {
    /// JSON file with a 3×k complex matrix [[ [re,im], ... ] x3]
    #[arg(long)]
    config: Option<String>,
    /// number of random configurations per check
    #[arg(long, default_value_t = 3)]
    trials: usize,
}

#[derive(Args)]
struct SuiteArgs {
    /// worker threads for scenario execution
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// random realizations per scenario
    #[arg(long, default_value_t = 10)]
    trials: usize,
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let parts: Vec<&str> = s.split(',').collect();
    let parse = |x: &str| -> Result<f64> {
        x.trim().parse().map_err(|_| Error::InvalidInput(format!("bad number {x}")))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(Error::InvalidInput(format!("bad complex {s}"))),
    }
}

fn parse_signs(s: &str) -> Result<(i8, i8)> {
    let chars: Vec<char> = s.chars().collect();
    if chars.len() != 2 || chars.iter().any(|&c| c != '+' && c != '-') {
        return Err(Error::InvalidInput(format!("bad signs {s}: use ++, +-, -+, or --")));
    }
    let sig = |c: char| if c == '+' { 1i8 } else { -1 };
    Ok((sig(chars[0]), sig(chars[1])))
}

fn load_json(path: &str) -> Result<serde_json::Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("bad JSON in {path}: {e}")))
}

fn load_quiver(
    file: &Option<String>,
    grassmannian: &Option<Vec<usize>>,
    a2: bool,
) -> Result<(Quiver, Option<Vec<Vec<usize>>>)> {
    if a2 {
        return Ok((crate::quiver::a2_quiver(), None));
    }
    if let Some(pq) = grassmannian {
        let (p, q) = (pq[0], pq[1]);
        if q <= p {
            return Err(Error::InvalidInput(
                "grassmannian arguments are p and n with n > p: Q_{p,n-p}".into(),
            ));
        }
        let (quiver, labels) = grassmannian_seed(p, q - p);
        return Ok((quiver, Some(labels)));
    }
    if let Some(path) = file {
        let (quiver, _) = quiver_from_json(&load_json(path)?)?;
        return Ok((quiver, None));
    }
    Err(Error::InvalidInput("supply --file, --grassmannian p n, or --a2".into()))
}

fn cmd_eval(args: &EvalArgs) -> Result<serde_json::Value> {
    let z = parse_complex(&args.z)?;
    let side = match args.side.as_deref() {
        None => Side::None,
        Some("above") => Side::Above,
        Some("below") => Side::Below,
        Some(other) => return Err(Error::InvalidInput(format!("bad side {other}"))),
    };
    let value = match args.function.as_str() {
        "li" => li_principal(args.n, z, side)?,
        "zagier" => Complex64::new(zagier_l(args.n, Some(z)), 0.0),
        "lhat" => {
            let (s1, s2) = parse_signs(&args.signs)?;
            let pt = ExtendedPoint::new(s1, s2, z, side, args.p, args.q)?;
            lhat(args.n, &pt)?
        }
        other => return Err(Error::InvalidInput(format!("bad function {other}"))),
    };
    Ok(json!({
        "function": args.function,
        "n": args.n,
        "z": [z.re, z.im],
        "p": args.p,
        "q": args.q,
        "signs": args.signs,
        "value": [value.re, value.im],
    }))
}

fn seed_to_json(seed: &Seed, registry: &ACoordRegistry) -> serde_json::Value {
    json!({
        "eps": seed.quiver.eps,
        "frozen": seed.quiver.frozen,
        "coords": seed.coords.iter().map(|&id| registry.poly(id).to_display()).collect::<Vec<_>>(),
    })
}

fn cmd_quiver(args: &QuiverArgs) -> Result<serde_json::Value> {
    let (quiver, _) = load_quiver(&args.file, &args.grassmannian, false)?;
    match args.op.as_str() {
        "mutate" => {
            let k = args
                .at
                .ok_or_else(|| Error::InvalidInput("mutate requires --at".into()))?;
            let mut registry = ACoordRegistry::new();
            let coords = (0..quiver.size())
                .map(|i| registry.intern(crate::exact::LaurentPoly::var(i, quiver.size())))
                .collect();
            let seed = Seed { quiver, coords };
            let next = mutate_seed(&seed, k, &mut registry)?;
            Ok(seed_to_json(&next, &registry))
        }
        "class" => {
            let class = mutation_class(&quiver, args.cap)?;
            Ok(json!({
                "seeds": class.seeds.len(),
                "a_coordinates": class.registry.len(),
                "triples": class.triples.len(),
                "quiver": quiver_to_json(&quiver, &(0..quiver.size()).map(|i| format!("v{i}")).collect::<Vec<_>>()),
            }))
        }
        "coords" => {
            let class = mutation_class(&quiver, args.cap)?;
            let names = crate::quiver::identify_gr36_labels(&class).ok();
            let coords: Vec<serde_json::Value> = (0..class.registry.len())
                .map(|id| {
                    json!({
                        "id": id,
                        "name": names.as_ref().map(|n| n[id].clone()),
                        "laurent": class.registry.poly(id).to_display(),
                    })
                })
                .collect();
            Ok(json!({ "a_coordinates": coords }))
        }
        other => Err(Error::InvalidInput(format!("bad quiver op {other}"))),
    }
}

fn cmd_discover(args: &DiscoverArgs) -> Result<serde_json::Value> {
    let (quiver, _) = load_quiver(&args.file, &args.grassmannian, args.a2)?;
    let class = mutation_class(&quiver, args.cap)?;
    let registry = class_generator_registry(&class);
    let result = discover_kernel(&class, args.weight, registry)?;
    let mut matches = Vec::new();
    for alpha in &result.relations {
        let mut tag = serde_json::Value::Null;
        if is_nonalt_instance(alpha) {
            tag = json!("nonalt_five_instance");
        } else if alpha.num_terms() == 40
            && relations_match(3, alpha, &build_named(RelationName::R40).alpha)
        {
            tag = json!("r40");
        }
        matches.push(tag);
    }
    // at weight 2, also report the embedded-pentagon span
    let pentagon = if args.weight == 2 {
        let instances = a2_embedding_instances(&class, &result.basis)?;
        json!({
            "instances": instances.len(),
            "rank": int_rank(&instances),
            "spans_kernel": spans_contained(&result.kernel_vectors, &instances)
                && spans_contained(&instances, &result.kernel_vectors),
        })
    } else {
        serde_json::Value::Null
    };
    Ok(json!({
        "provenance": {
            "quiver": quiver_to_json(
                &quiver,
                &(0..quiver.size()).map(|i| format!("v{i}")).collect::<Vec<_>>(),
            ),
            "weight": args.weight,
        },
        "seeds": class.seeds.len(),
        "a_coordinates": class.registry.len(),
        "xhat_dimension": result.basis.dimension(),
        "kernel_dimension": result.relations.len(),
        "term_counts": result.relations.iter().map(|r| r.num_terms()).collect::<Vec<_>>(),
        "matches": matches,
        "pentagon_span": pentagon,
        "relations": result.relations.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    }))
}

fn cmd_verify(args: &VerifyArgs, seed: u64) -> Result<(serde_json::Value, bool)> {
    if let Some(name) = &args.scenario {
        let scenario = Scenario::parse(name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown scenario {name}")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let report = run_scenario(scenario, args.trials, &mut rng)?;
        let pass = report.pass;
        let mut value = serde_json::to_value(&report).expect("serializable");
        value["seed"] = json!(seed);
        return Ok((value, pass));
    }
    let (Some(rel_path), Some(real_path)) = (&args.relation, &args.realization) else {
        return Err(Error::InvalidInput(
            "verify needs --scenario or both --relation and --realization".into(),
        ));
    };
    let alpha = RelationSum::from_json(&load_json(rel_path)?)?;
    let r = Realization::from_json(&load_json(real_path)?)?;
    let n = args.n.ok_or_else(|| Error::InvalidInput("--relation mode requires --n".into()))?;
    let check = check_realization(&alpha, &r, 1e-9)?;
    let (value, points) = evaluate_relation(n, &alpha, &r)?;
    let pass = check.ok;
    Ok((
        json!({
            "check": serde_json::to_value(&check).expect("serializable"),
            "value": [value.re, value.im],
            "points": points.iter().map(|pt| json!({
                "signs": [pt.sign1, pt.sign2],
                "z": [pt.z.re, pt.z.im],
                "p": pt.p,
                "q": pt.q,
            })).collect::<Vec<_>>(),
        }),
        pass,
    ))
}

fn cmd_regulator(args: &RegulatorArgs, seed: u64) -> Result<(serde_json::Value, bool)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let configs6: Vec<GenericConfig> = if let Some(path) = &args.config {
        let value = load_json(path)?;
        let rows: Vec<Vec<(f64, f64)>> = serde_json::from_value(value)
            .map_err(|e| Error::InvalidInput(format!("bad config: {e}")))?;
        vec![GenericConfig::new(
            rows.into_iter()
                .map(|r| r.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
                .collect(),
        )?]
    } else {
        (0..args.trials).map(|_| GenericConfig::random(6, &mut rng)).collect()
    };
    let mut all_pass = true;
    let mut reports = Vec::new();
    for c in &configs6 {
        let dd = boundary_squared_is_zero(c);
        let consistency = consistency_checks(c)?;
        let (collisions, residual) = f5_vs_g5(c)?;
        let pass = dd && consistency.pass && residual == 0;
        all_pass &= pass;
        reports.push(json!({
            "dd_zero": dd,
            "consistency": serde_json::to_value(&consistency).expect("serializable"),
            "f5_vs_g5": { "collisions": collisions, "residual_terms": residual },
            "pass": pass,
        }));
    }
    let c7 = GenericConfig::random(7, &mut rng);
    let l3chain = chain_l3_g5_boundary(&c7)?;
    let f5del = lhat3_f5_boundary(&c7, &mut rng)?;
    all_pass &= l3chain < 1e-7 && f5del < 1e-7;
    Ok((
        json!({
            "seed": seed,
            "configs": reports,
            "l3_g5_boundary_residual": l3chain,
            "lhat3_f5_boundary_residual": f5del,
            "pass": all_pass,
        }),
        all_pass,
    ))
}

fn cmd_suite(args: &SuiteArgs, seed: u64) -> Result<(serde_json::Value, bool)> {
    let jobs = args.jobs.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let trials = args.trials;
    let mut results: Vec<(String, serde_json::Value, bool)> = pool.install(|| {
        Scenario::ALL
            .par_iter()
            .map(|&scenario| {
                // per-scenario RNG stream derived from the base seed
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fxhash(&scenario.name()));
                match run_scenario(scenario, trials, &mut rng) {
                    Ok(report) => {
                        let pass = report.pass;
                        (scenario.name(), serde_json::to_value(&report).unwrap(), pass)
                    }
                    Err(e) => (scenario.name(), json!({ "error": e.to_string() }), false),
                }
            })
            .collect()
    });
    // deterministic merge order by name
    results.sort_by(|a, b| a.0.cmp(&b.0));
    let all_pass = results.iter().all(|(_, _, p)| *p);
    for (name, report, pass) in &results {
        let max = report
            .get("max_residual")
            .and_then(|v| v.as_f64())
            .map(|v| format!("{v:.3e}"))
            .unwrap_or_else(|| "-".into());
        eprintln!("{:<22} {}  max residual {}", name, if *pass { "PASS" } else { "FAIL" }, max);
    }
    Ok((
        json!({
            "seed": seed,
            "scenarios": results.iter().map(|(n, r, _)| json!({ "name": n, "report": r })).collect::<Vec<_>>(),
            "pass": all_pass,
        }),
        all_pass,
    ))
}

fn fxhash(s: &str) -> u64 {
    // small deterministic string hash for per-scenario RNG streams
    s.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

/// Entry point: returns the process exit code (0 success, 1 assertion
/// failure, 2 usage error).
pub fn main() -> i32 {
    let cli = Cli::parse();
    let outcome: Result<(serde_json::Value, bool)> = match &cli.command {
        Command::Eval(args) => cmd_eval(args).map(|v| (v, true)),
        Command::Quiver(args) => cmd_quiver(args).map(|v| (v, true)),
        Command::Discover(args) => cmd_discover(args).map(|v| (v, true)),
        Command::Verify(args) => cmd_verify(args, cli.seed),
        Command::Regulator(args) => cmd_regulator(args, cli.seed),
        Command::Suite(args) => cmd_suite(args, cli.seed),
    };
    match outcome {
        Ok((value, pass)) => {
            println!("{}", serde_json::to_string_pretty(&value).expect("printable"));
            if pass {
                0
            } else {
                1
            }
        }
        Err(Error::InvalidInput(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
