use std::fmt::Write as _;
use std::process::ExitCode;
use std::sync::Arc;

use cdga::algebra::Homogeneity;
use cdga::catalog::{self, GeographyAnswer};
use cdga::formality::{
    build_minimal_model, check_s_formality, formality_verdict, massey_scan, rechoose,
    triple_massey, FormalityError,
};
use cdga::io::report::{
    ClassSummary, CohomologySummary, MasseyScanSummary, MasseySummary, ModelSummary,
    SFormalSummary, ValidationSummary, VerdictSummary,
};
use cdga::io::{self, LoadError};
use cdga::{CohomologyClass, Dga};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const RECHECK_TRIALS: usize = 20;

/// Cohomology, Massey products, minimal models and formality checks for
/// presented commutative differential graded algebras.
#[derive(Parser)]
#[command(name = "cdga", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Seed for randomized re-checks of Massey products.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check that d has degree +1 and squares to zero.
    Validate { input: String },
    /// Betti numbers and representative cocycles.
    Cohomology {
        input: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// Triple Massey product of three classes.
    Massey {
        input: String,
        #[arg(long, value_delimiter = ',', required = true)]
        classes: Vec<String>,
    },
    /// All nonvanishing triple Massey products of basis classes.
    MasseyScan {
        input: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// Minimal model through a given generator degree.
    MinimalModel {
        input: String,
        #[arg(long)]
        up_to: usize,
    },
    /// s-formality check through degree `cap`.
    SFormal {
        input: String,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        cap: usize,
    },
    /// Formality verdict for a closed manifold of the given dimension.
    Verdict {
        input: String,
        /// Manifold dimension; defaults to the one declared by the input.
        #[arg(long)]
        dim: Option<usize>,
        /// Degree cap for the s-formality check; defaults to dim + 1.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Whether non-formal manifolds with given dimension and b1 exist.
    Geography {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        b1: usize,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<FormalityError> for Failure {
    fn from(e: FormalityError) -> Self {
        Failure::Domain(e.to_string())
    }
}

struct Input {
    dga: Arc<Dga>,
    dimension: Option<usize>,
}

fn resolve(input: &str) -> Result<Input, Failure> {
    if let Some(name) = input.strip_prefix("catalog:") {
        let entry = catalog::lookup(name).map_err(|e| Failure::Domain(e.to_string()))?;
        return Ok(Input {
            dga: entry.presentation,
            dimension: Some(entry.dimension),
        });
    }
    let loaded = io::load(input).map_err(|e| Failure::Domain(e.to_string()))?;
    Ok(Input {
        dga: Arc::new(loaded.dga),
        dimension: loaded.dimension,
    })
}

fn emit<T: Serialize>(output: Output, value: &T, text: impl FnOnce(&T) -> String) {
    match output {
        Output::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("summaries serialize")
        ),
        Output::Text => print!("{}", text(value)),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = cli.output;
    match cli.command {
        Command::Validate { input } => validate(out, &input),
        Command::Cohomology { input, max_degree } => {
            let p = resolve(&input)?.dga;
            emit(
                out,
                &CohomologySummary::new(&p, max_degree),
                text_cohomology,
            );
            Ok(())
        }
        Command::Massey { input, classes } => massey(out, cli.seed, &input, &classes),
        Command::MasseyScan { input, max_degree } => {
            let p = resolve(&input)?.dga;
            let hits = massey_scan(&p, max_degree)?;
            emit(
                out,
                &MasseyScanSummary::new(&p, max_degree, &hits),
                text_scan,
            );
            Ok(())
        }
        Command::MinimalModel { input, up_to } => {
            let p = resolve(&input)?.dga;
            let mm = build_minimal_model(&p, up_to)?;
            emit(out, &ModelSummary::new(&mm), text_model);
            Ok(())
        }
        Command::SFormal { input, s, cap } => {
            let p = resolve(&input)?.dga;
            let mm = build_minimal_model(&p, s)?;
            let report = check_s_formality(&mm, s, cap)?;
            emit(out, &SFormalSummary::new(&mm, &report), text_sformal);
            Ok(())
        }
        Command::Verdict { input, dim, cap } => {
            let resolved = resolve(&input)?;
            let n = dim.or(resolved.dimension).ok_or_else(|| {
                Failure::Usage("--dim is required when the input declares no dimension".into())
            })?;
            let cap = cap.unwrap_or(n + 1);
            let verdict = formality_verdict(&resolved.dga, n, cap)?;
            emit(
                out,
                &VerdictSummary::new(&resolved.dga, n, cap, &verdict),
                text_verdict,
            );
            Ok(())
        }
        Command::Geography { dim, b1 } => {
            if dim == 0 {
                return Err(Failure::Usage("--dim must be at least 1".into()));
            }
            emit(out, &catalog::geography(dim, b1), text_geography);
            Ok(())
        }
    }
}

fn validate(out: Output, input: &str) -> Result<(), Failure> {
    if input.starts_with("catalog:") {
        let p = resolve(input)?.dga;
        emit(out, &ValidationSummary::new(&p), text_validation);
        return Ok(());
    }
    match io::load(input) {
        Ok(loaded) => {
            emit(out, &ValidationSummary::new(&loaded.dga), text_validation);
            Ok(())
        }
        Err(LoadError::Invalid(report)) => {
            #[derive(Serialize)]
            struct Rejected<'a> {
                valid: bool,
                issues: &'a [cdga::dga::ValidationIssue],
            }
            emit(
                out,
                &Rejected {
                    valid: false,
                    issues: &report.issues,
                },
                |r| {
                    let mut s = String::from("invalid\n");
                    for issue in r.issues {
                        let _ = writeln!(s, "  {issue}");
                    }
                    s
                },
            );
            Err(Failure::Domain(format!(
                "{} validation issue(s)",
                report.issues.len()
            )))
        }
        Err(e) => Err(Failure::Domain(e.to_string())),
    }
}

#[derive(Serialize)]
struct Recheck {
    seed: u64,
    trials: usize,
    verdict_stable: bool,
    within_indeterminacy: bool,
}

#[derive(Serialize)]
struct MasseyOutput {
    #[serde(flatten)]
    summary: MasseySummary,
    recheck: Option<Recheck>,
}

fn massey(out: Output, seed: Option<u64>, input: &str, exprs: &[String]) -> Result<(), Failure> {
    if exprs.len() != 3 {
        return Err(Failure::Usage(format!(
            "--classes takes exactly three expressions, got {}",
            exprs.len()
        )));
    }
    let p = resolve(input)?.dga;
    let alg = p.algebra();
    let mut classes: Vec<CohomologyClass> = Vec::with_capacity(3);
    for text in exprs {
        let e = io::parse_expression(text, alg)
            .map_err(|err| Failure::Domain(format!("class `{text}`: {err}")))?;
        let degree = match alg.homogeneity(&e) {
            Homogeneity::Degree(d) => d,
            Homogeneity::Zero => {
                return Err(Failure::Domain(format!(
                    "class `{text}` is zero and has no degree"
                )))
            }
            Homogeneity::Mixed => {
                return Err(Failure::Domain(format!(
                    "class `{text}` is not homogeneous"
                )))
            }
        };
        let class = p
            .class_of(&e, degree)
            .map_err(|err| Failure::Domain(format!("class `{text}`: {err}")))?;
        classes.push(class);
    }
    let classes: [CohomologyClass; 3] = classes.try_into().expect("three classes");
    let result = triple_massey(&p, &classes[0], &classes[1], &classes[2])?;
    let recheck = match seed {
        Some(seed) if result.defined => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut verdict_stable = true;
            let mut within_indeterminacy = true;
            for _ in 0..RECHECK_TRIALS {
                let r = rechoose(&p, [&classes[0], &classes[1], &classes[2]], &result, || {
                    rng.gen_range(-3..=3)
                })?
                .expect("defined product");
                verdict_stable &= r.nonzero == result.nonzero;
                within_indeterminacy &= r.within_indeterminacy;
            }
            Some(Recheck {
                seed,
                trials: RECHECK_TRIALS,
                verdict_stable,
                within_indeterminacy,
            })
        }
        _ => None,
    };
    let summary = MasseySummary::new(&p, &classes, &result);
    emit(out, &MasseyOutput { summary, recheck }, |m| {
        let mut s = text_massey(&m.summary);
        if let Some(r) = &m.recheck {
            let _ = writeln!(
                s,
                "recheck: seed {} trials {} verdict stable {} within indeterminacy {}",
                r.seed, r.trials, r.verdict_stable, r.within_indeterminacy
            );
        }
        s
    });
    Ok(())
}

fn joined(items: &[String]) -> String {
    items.join(", ")
}

fn text_validation(v: &ValidationSummary) -> String {
    let mut s = format!(
        "{}: {}\n",
        v.presentation,
        if v.valid { "valid" } else { "invalid" }
    );
    for g in &v.generators {
        let _ = writeln!(s, "  d({}) = {}   [degree {}]", g.name, g.d, g.degree);
    }
    for issue in &v.issues {
        let _ = writeln!(s, "  issue: {issue}");
    }
    s
}

fn text_cohomology(c: &CohomologySummary) -> String {
    let betti: Vec<String> = c.betti.iter().map(ToString::to_string).collect();
    let mut s = format!("{} betti: {}\n", c.presentation, betti.join(","));
    for d in &c.degrees {
        let _ = writeln!(
            s,
            "H^{} ({}): {}",
            d.degree,
            d.betti,
            joined(&d.representatives)
        );
    }
    s
}

fn text_class(c: &ClassSummary) -> String {
    format!("[{}] (degree {})", c.representative, c.degree)
}

fn text_massey(m: &MasseySummary) -> String {
    let classes: Vec<String> = m.classes.iter().map(text_class).collect();
    let mut s = format!("<{}> in H^{}\n", joined(&classes), m.degree);
    if !m.defined {
        s.push_str("undefined\n");
        return s;
    }
    let _ = writeln!(s, "{}", if m.nonzero { "nonzero" } else { "vanishes" });
    if let Some(r) = &m.representative {
        let _ = writeln!(s, "representative: {}", r.representative);
    }
    let _ = writeln!(s, "indeterminacy dimension: {}", m.indeterminacy_dim);
    if let (Some(xi), Some(eta)) = (&m.xi, &m.eta) {
        let _ = writeln!(s, "xi = {xi}\neta = {eta}");
    }
    s
}

fn text_scan(scan: &MasseyScanSummary) -> String {
    let mut s = format!(
        "{}: {} nonzero triple product(s) through degree {}\n",
        scan.presentation,
        scan.hits.len(),
        scan.max_degree
    );
    for hit in &scan.hits {
        let classes: Vec<String> = hit.result.classes.iter().map(text_class).collect();
        let rep = hit
            .result
            .representative
            .as_ref()
            .map(|r| r.representative.clone())
            .unwrap_or_default();
        let _ = writeln!(s, "  <{}> = [{}]", joined(&classes), rep);
    }
    s
}

fn text_model(m: &ModelSummary) -> String {
    let mut s = format!(
        "minimal model of {} through degree {}\n",
        m.presentation, m.up_to
    );
    for g in &m.generators {
        let _ = writeln!(
            s,
            "  {} (degree {}, {:?}): d = {}, image {}",
            g.name, g.degree, g.role, g.d, g.image
        );
    }
    for st in &m.stages {
        let _ = writeln!(
            s,
            "  stage {}: C dim {}, N dim {}, rounds {}, bijective {}, injective next {}",
            st.degree, st.closed_dim, st.non_closed_dim, st.rounds, st.bijective, st.injective_next
        );
    }
    s
}

fn text_sformal(r: &SFormalSummary) -> String {
    let verdict = if r.witness.is_none() {
        "certified up to cap"
    } else {
        "failed"
    };
    let mut s = format!(
        "{}: {}-formality {} (cap {})\n",
        r.presentation, r.s, verdict, r.cap
    );
    if let Some(w) = &r.witness {
        let _ = writeln!(s, "witness in degree {}: {}", w.degree, w.element);
    }
    s
}

fn text_verdict(v: &VerdictSummary) -> String {
    let mut s = format!(
        "{}: {} (dimension {}, stage {}, cap {})\n",
        v.presentation, v.verdict, v.dimension, v.stage, v.cap
    );
    if let Some(p) = &v.poincare {
        let _ = writeln!(s, "poincare duality: {p:?}");
    }
    if let Some(hit) = &v.massey {
        let s2 = text_massey(&hit.result);
        s.push_str(&s2);
    }
    if let Some(f) = &v.s_formality {
        if let Some(d) = f.witness_degree {
            let _ = writeln!(s, "{}-formality fails in degree {d}", f.s);
        }
    }
    s
}

fn text_geography(g: &GeographyAnswer) -> String {
    let mut s = format!(
        "n = {}, b1 = {}: {}\n{}\n",
        g.dimension, g.b1, g.verdict, g.reason
    );
    if let Some(e) = &g.example {
        let _ = writeln!(s, "example: {}\nrecipe: {}", e.name, e.recipe);
        if let Some(base) = &e.base {
            let _ = writeln!(s, "certified base: catalog:{base}");
        }
    }
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
