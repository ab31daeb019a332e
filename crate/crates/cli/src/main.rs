use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sextic::cmfield::{
    classify, enumerate_cm_types, imaginary_quadratic_subfield, prime_bound, report,
};
use sextic::curves::{cover_cm_type, rh_genus, zeta_classify_with, CoverSpec, Curve, PicardSpec};
use sextic::embedding::{
    check_candidate, degenerate_solution_with, search_solutions, CandidateJson, EmbeddingCandidate,
    SearchOptions, DEFAULT_MAX_DENOMINATOR,
};
use sextic::exactmath::arith::{fmt_rational, is_prime};
use sextic::quaternion::{build_algebra, maximal_order, ramified_places};
use sextic::{with_workers, CMFieldSpec, Error, Result};

#[derive(Parser)]
#[command(
    name = "sextic",
    version,
    about = "Sextic CM-fields, the embedding problem and example curves"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct SpecArg {
    /// Field spec file (JSON).
    #[arg(long)]
    spec: PathBuf,
}

#[derive(Args)]
struct CurveArg {
    /// Cyclic cover as N,a1,a2.
    #[arg(long, conflicts_with = "picard", required_unless_present = "picard")]
    cover: Option<String>,
    /// Picard curve file (JSON with key "f").
    #[arg(long)]
    picard: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Galois group, imaginary quadratic subfield, CM-types and prime bound.
    Classify(SpecArg),
    CmTypes(SpecArg),
    Bound(SpecArg),
    /// The quaternion algebra ramified at p and infinity with a maximal order.
    QuatInfo {
        #[arg(long)]
        prime: u64,
    },
    /// Exhaustive search for embeddings over one maximal order.
    SearchEmbedding {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        prime: u64,
        /// Norm budget replacing -Tr(alpha).
        #[arg(long)]
        budget: Option<i64>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Re-checks every solution in a file written by search-embedding or degenerate.
    CheckEmbedding {
        file: PathBuf,
    },
    /// Embedding built from the imaginary quadratic subfield.
    Degenerate {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        prime: u64,
        /// Denominator bound of the symmetric-matrix search.
        #[arg(long, default_value_t = DEFAULT_MAX_DENOMINATOR)]
        max_denominator: i64,
    },
    CurveGenus(CurveArg),
    CurveCmtype(CurveArg),
    CurveZeta {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(long)]
        prime: u64,
        /// Count over F_{p^k} up to this k (at least the genus).
        #[arg(long, default_value_t = 0)]
        ext: usize,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Zeta data at every good prime below a cap.
    Sweep {
        #[command(flatten)]
        curve: CurveArg,
        /// Exclusive upper bound on the primes.
        #[arg(long, default_value_t = 100)]
        prime: u64,
        #[arg(long)]
        workers: Option<usize>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn load_spec(a: &SpecArg) -> Result<CMFieldSpec> {
    CMFieldSpec::from_json_str(&read(&a.spec)?)
}

fn load_curve(a: &CurveArg) -> Result<Curve> {
    match (&a.cover, &a.picard) {
        (Some(c), _) => Ok(Curve::Cover(CoverSpec::parse(c)?)),
        (None, Some(f)) => Ok(Curve::Picard(PicardSpec::from_json_str(&read(f)?)?)),
        (None, None) => Err(Error::InvalidInput("give --cover or --picard".into())),
    }
}

fn need_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not prime")))
    }
}

fn solutions_file(spec: &CMFieldSpec, p: u64, cands: &[EmbeddingCandidate]) -> Result<Value> {
    let mut reports = Vec::new();
    for c in cands {
        reports.push(check_candidate(c)?);
    }
    let all = reports.iter().all(|r| r.overall);
    Ok(json!({
        "p": p,
        "spec": spec.to_json(),
        "solutions": cands.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        "report": { "checked": reports.len(), "overall": all },
    }))
}

fn run(cli: Cli) -> Result<Value> {
    match cli.cmd {
        Command::Classify(a) => {
            let spec = load_spec(&a)?;
            Ok(json!(report(&spec)?))
        }
        Command::CmTypes(a) => {
            let spec = load_spec(&a)?;
            let class = classify(&spec)?;
            Ok(json!({ "case": class.case_index(), "cm_types": enumerate_cm_types(&spec)? }))
        }
        Command::Bound(a) => {
            let spec = load_spec(&a)?;
            let b = prime_bound(&spec)?;
            Ok(json!({
                "trace": fmt_rational(&b.trace),
                "bound": fmt_rational(&b.bound),
                "max_prime": b.max_prime,
                "bound_applicable": b.applicable,
            }))
        }
        Command::QuatInfo { prime } => {
            need_prime(prime)?;
            let alg = build_algebra(prime)?;
            let order = maximal_order(&alg)?;
            Ok(json!({
                "p": prime,
                "epsilon": alg.epsilon,
                "i2": alg.a(),
                "j2": alg.b(),
                "ramified": ramified_places(&alg),
                "order": order.basis.iter().map(|q| q.to_strings()).collect::<Vec<_>>(),
                "reduced_discriminant": order.reduced_discriminant().map(|d| d.to_string()),
            }))
        }
        Command::SearchEmbedding {
            spec,
            prime,
            budget,
            workers,
        } => {
            need_prime(prime)?;
            let spec = load_spec(&spec)?;
            let opts = SearchOptions {
                workers,
                budget_override: budget,
                ..Default::default()
            };
            let out = search_solutions(&spec, prime, &opts)?;
            let mut v = solutions_file(&spec, prime, &out.solutions)?;
            v["budget"] = json!(out.budget);
            v["exhausted"] = json!(out.exhausted);
            v["nodes_visited"] = json!(out.nodes_visited);
            Ok(v)
        }
        Command::CheckEmbedding { file } => {
            let v: Value = serde_json::from_str(&read(&file)?)
                .map_err(|e| Error::InvalidInput(format!("solution file: {e}")))?;
            let p = v["p"]
                .as_u64()
                .ok_or_else(|| Error::InvalidInput("missing p".into()))?;
            need_prime(p)?;
            let spec_str = serde_json::to_string(&v["spec"]).expect("value");
            let spec = CMFieldSpec::from_json_str(&spec_str)?;
            let order = maximal_order(&build_algebra(p)?)?;
            let sols = v["solutions"].as_array().cloned().unwrap_or_default();
            let mut reports = Vec::new();
            for s in sols {
                let j: CandidateJson = serde_json::from_value(s)
                    .map_err(|e| Error::InvalidInput(format!("solution: {e}")))?;
                let cand = EmbeddingCandidate::from_json(&spec, &order, &j)?;
                reports.push(check_candidate(&cand)?);
            }
            let overall = reports.iter().all(|r| r.overall);
            if !overall {
                let first = reports
                    .iter()
                    .find_map(|r| r.first_failure.clone())
                    .expect("a failure");
                return Err(Error::Internal(format!(
                    "candidate fails {}: {}",
                    first.id,
                    first.witness.unwrap_or_default()
                )));
            }
            Ok(json!({ "p": p, "overall": overall, "reports": reports }))
        }
        Command::Degenerate {
            spec,
            prime,
            max_denominator,
        } => {
            need_prime(prime)?;
            let spec = load_spec(&spec)?;
            let d = imaginary_quadratic_subfield(&spec).map(|w| w.d);
            let cand = degenerate_solution_with(&spec, prime, max_denominator)?;
            let mut v = solutions_file(&spec, prime, std::slice::from_ref(&cand))?;
            v["im_quad_d"] = json!(d);
            Ok(v)
        }
        Command::CurveGenus(c) => {
            let curve = load_curve(&c)?;
            Ok(json!({ "curve": curve.name(), "genus": curve.genus()? }))
        }
        Command::CurveCmtype(c) => match load_curve(&c)? {
            Curve::Cover(spec) => {
                rh_genus(&spec)?;
                Ok(json!(cover_cm_type(&spec)?))
            }
            Curve::Picard(_) => Err(Error::InvalidInput(
                "CM-types are computed for cyclic covers".into(),
            )),
        },
        Command::CurveZeta {
            curve,
            prime,
            ext,
            workers,
        } => {
            need_prime(prime)?;
            let curve = load_curve(&curve)?;
            let z = with_workers(workers, || zeta_classify_with(&curve, prime, ext))??;
            Ok(json!(z))
        }
        Command::Sweep {
            curve,
            prime,
            workers,
        } => {
            let curve = load_curve(&curve)?;
            let mut good = Vec::new();
            let mut bad = Vec::new();
            for p in (2..prime).filter(|&p| is_prime(p)) {
                match with_workers(workers, || zeta_classify_with(&curve, p, 0))? {
                    Ok(z) => {
                        good.push(json!({ "p": p, "class": z.class, "p_rank": z.p_rank, "L": z.l }))
                    }
                    Err(Error::BadReduction { p, reason }) => {
                        bad.push(json!({ "p": p, "reason": reason }))
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok(json!({ "curve": curve.name(), "primes_below": prime, "good": good, "bad": bad }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(v) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            let v = json!({ "error": e.kind(), "message": e.to_string() });
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
