use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use leafcalc::chow::{dual_chern, intersection_number, total_chern_quotient, BundleShape};
use leafcalc::elliptic::{leaf_classify, Curve, Divisor};
use leafcalc::exact::Field;
use leafcalc::pencil::{
    hirzebruch_invariant, is_one_generic_pencil, splitting_type, trivial_summand_count, LinearPencil,
};
use leafcalc::secant::{
    sample_secant_line_point, sample_slice_point, sample_subsecant_point, singularity_verdict, slice_point_through,
    SampledPoint, SecantConfig,
};
use leafcalc::verify::{run_suite, Suite};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Exact checks for 1-generic pairings, their bundles and elliptic examples.
#[derive(Parser, Debug)]
#[command(name = "leafcalc", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Field used when a curve or pencil does not name one: Q or Fp:p.
    #[arg(long, global = true, default_value = "Fp:10007")]
    field: Field,
    /// Master seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit a single JSON object (default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit `key: value` lines.
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Chern data and intersection numbers of the quotient bundle and its dual.
    Chern {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        /// Report a single power of zeta instead of all of them.
        #[arg(long)]
        s: Option<usize>,
    },
    /// Splitting type of a pencil given as JSON (a path, or - for stdin).
    Splitting { pencil: String },
    /// Hirzebruch surface of the leaf completion for deg D = 2.
    Classify {
        #[arg(long)]
        curve: String,
        #[arg(long = "D")]
        d: String,
        #[arg(long = "Dprime")]
        dprime: String,
    },
    /// Smoothness verdict at a sampled point of a secant slice.
    Secant {
        #[arg(long, default_value = "2,3")]
        curve: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Divisor of N (degree d); its sum is the slice parameter z. Defaults to d O.
        #[arg(long)]
        z: Option<String>,
        /// Divisor of N' (degree n - d). Defaults to (n - d) O.
        #[arg(long = "Dprime")]
        dprime: Option<String>,
        #[arg(long, value_enum, default_value_t = Probe::Generic)]
        probe: Probe,
    },
    /// Run self-checking suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Probe {
    /// Generic point of the slice.
    Generic,
    /// A curve point, lying on the slice.
    Curve,
    /// A point on a secant line inside the slice.
    Sec2OffCurve,
    /// A point spanned by d - 2 curve points.
    Subsecant,
}

enum Failure {
    Usage(String),
    Math(String, Value),
}

impl Failure {
    fn usage(e: impl ToString) -> Failure {
        Failure::Usage(e.to_string())
    }

    fn math(e: impl ToString) -> Failure {
        Failure::Math(e.to_string(), Value::Null)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            emit(&json!({"error": {"kind": "usage", "message": msg.trim()}}), false);
            return ExitCode::from(2);
        }
    };
    let text = cli.global.text;
    match run(&cli) {
        Ok(v) => {
            emit(&v, text);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            emit(&json!({"error": {"kind": "usage", "message": msg}, "seed": cli.global.seed}), text);
            ExitCode::from(2)
        }
        Err(Failure::Math(msg, report)) => {
            let mut v = json!({"error": {"kind": "math", "message": msg}, "seed": cli.global.seed});
            if !report.is_null() {
                v["report"] = report;
            }
            emit(&v, text);
            ExitCode::from(1)
        }
    }
}

fn emit(v: &Value, text: bool) {
    if !text {
        println!("{v}");
        return;
    }
    if let Value::Object(map) = v {
        for (k, val) in map {
            match val {
                Value::String(s) => println!("{k}: {s}"),
                other => println!("{k}: {other}"),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Chern { d, k, s } => chern(*d, *k, *s, g.seed),
        Command::Splitting { pencil } => splitting(pencil, g),
        Command::Classify { curve, d, dprime } => classify(curve, d, dprime, g),
        Command::Secant {
            curve,
            n,
            d,
            z,
            dprime,
            probe,
        } => secant(curve, *n, *d, z.as_deref(), dprime.as_deref(), *probe, g),
        Command::Verify { suite } => {
            let report = run_suite(*suite, g.seed);
            let v = serde_json::to_value(&report).expect("serializable");
            if report.passed {
                Ok(v)
            } else {
                Err(Failure::Math("some checks failed".into(), v))
            }
        }
    }
}

fn chern(d: usize, k: usize, s: Option<usize>, seed: u64) -> Result<Value, Failure> {
    let shape = BundleShape::critical(d, k).map_err(Failure::usage)?;
    let gamma = total_chern_quotient(&shape);
    let dual = dual_chern(&gamma);
    let numbers = |c: &[i64], s: usize| intersection_number(&shape, c, s).map_err(Failure::usage);
    match s {
        Some(s) => Ok(json!({
            "chern": gamma,
            "s": s,
            "intersection": numbers(&gamma, s)?,
            "dual_intersection": numbers(&dual, s)?,
            "seed": seed,
        })),
        None => {
            let prim = (0..d).map(|s| numbers(&gamma, s)).collect::<Result<Vec<_>, _>>()?;
            let du = (0..d).map(|s| numbers(&dual, s)).collect::<Result<Vec<_>, _>>()?;
            Ok(json!({"chern": gamma, "intersections": prim, "dual_intersections": du, "seed": seed}))
        }
    }
}

fn splitting(path: &str, g: &Global) -> Result<Value, Failure> {
    let mut raw = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut raw).map_err(Failure::usage)?;
    } else {
        raw = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
    }
    let mut v: Value = serde_json::from_str(&raw).map_err(Failure::usage)?;
    if v.get("field").is_none() && v.is_object() {
        v["field"] = json!(g.field.to_string());
    }
    let p = LinearPencil::from_json(&v).map_err(Failure::usage)?;
    if !is_one_generic_pencil(&p).map_err(Failure::usage)? {
        return Err(Failure::usage("pencil is not 1-generic"));
    }
    let st = splitting_type(&p).map_err(Failure::math)?;
    let mut out = json!({
        "dprime": p.dprime(),
        "k": p.k(),
        "splitting_type": st.degrees(),
        "trivial_summands": trivial_summand_count(&p).map_err(Failure::math)?,
        "seed": g.seed,
    });
    if st.rank() == 2 {
        out["hirzebruch_invariant"] = json!(hirzebruch_invariant(&p).map_err(Failure::math)?);
    }
    Ok(out)
}

fn parse_curve(text: &str, field: Field) -> Result<Curve, Failure> {
    let full = if text.contains('@') {
        text.to_string()
    } else {
        format!("{text}@{field}")
    };
    full.parse().map_err(Failure::usage)
}

fn classify(curve: &str, d: &str, dprime: &str, g: &Global) -> Result<Value, Failure> {
    let e = parse_curve(curve, g.field)?;
    let d = Divisor::parse(d, &e).map_err(Failure::usage)?;
    let dp = Divisor::parse(dprime, &e).map_err(Failure::usage)?;
    if d.degree() != 2 || !d.is_effective() || !dp.is_effective() {
        return Err(Failure::usage("need effective D of degree 2 and effective D'"));
    }
    let r = leaf_classify(&e, &d, &dp).map_err(Failure::usage)?;
    let out = json!({
        "surface": r.surface,
        "affine": r.leaf_affine,
        "quasi_affine": r.leaf_quasi_affine,
        "match": r.matches,
        "e_predicted": r.e_predicted,
        "e_computed": r.e_computed,
        "splitting_type": r.splitting_type,
        "dprime": r.dprime,
        "k": r.k,
        "seed": g.seed,
    });
    if r.matches {
        Ok(out)
    } else {
        Err(Failure::Math("computed invariant differs from the prediction".into(), out))
    }
}

fn secant(
    curve: &str,
    n: usize,
    d: usize,
    z: Option<&str>,
    dprime: Option<&str>,
    probe: Probe,
    g: &Global,
) -> Result<Value, Failure> {
    let e = parse_curve(curve, g.field)?;
    let dn = match z {
        Some(t) => Divisor::parse(t, &e).map_err(Failure::usage)?,
        None => Divisor::infinity(d as i64),
    };
    if dn.degree() != d as i64 {
        return Err(Failure::usage(format!("--z has degree {}, expected {d}", dn.degree())));
    }
    let dnp = match dprime {
        Some(t) => Divisor::parse(t, &e).map_err(Failure::usage)?,
        None => Divisor::infinity(n as i64 - d as i64),
    };
    if dnp.degree() != n as i64 - d as i64 {
        return Err(Failure::usage(format!("--Dprime must have degree {}", n as i64 - d as i64)));
    }
    let cfg = SecantConfig::new(&e, &dn, &dnp).map_err(Failure::usage)?;
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let sampled: SampledPoint = match probe {
        Probe::Generic => sample_slice_point(&cfg, &mut rng),
        Probe::Curve => cfg
            .curve()
            .random_point(&mut rng)
            .map_err(Into::into)
            .and_then(|z0| slice_point_through(&cfg, &z0, &mut rng)),
        Probe::Sec2OffCurve => sample_secant_line_point(&cfg, &mut rng),
        Probe::Subsecant => sample_subsecant_point(&cfg, d.saturating_sub(2).max(1), &mut rng),
    }
    .map_err(Failure::math)?;
    let v = singularity_verdict(&cfg, &sampled.point).map_err(Failure::math)?;
    let mut out = serde_json::to_value(&v).expect("serializable");
    out["probe"] = json!(probe.to_possible_value().expect("named").get_name());
    out["z"] = json!(cfg.z().to_string());
    out["support"] = json!(sampled.support.iter().map(ToString::to_string).collect::<Vec<_>>());
    out["seed"] = json!(g.seed);
    Ok(out)
}
