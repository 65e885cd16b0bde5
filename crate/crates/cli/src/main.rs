//! `polyaut`: batch computations with polynomial automorphisms.
//!
//! Exit codes: 0 on success, 1 when the property under test fails or cannot
//! be certified, 2 on parse or usage errors.

mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polyaut::suite::{run_lemma_suite, SuiteConfig};
use polyaut::*;

use report::{Format, Report};

#[derive(Parser)]
#[command(
    name = "polyaut",
    version,
    about = "Exact computations with polynomial automorphisms"
)]
struct Cli {
    /// Output format: human text or `key=value` records.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Largest input degree accepted by the inversion-based commands.
    #[arg(long, global = true, env = "POLYAUT_DEGREE_BUDGET", default_value_t = tame::DEFAULT_DEGREE_BUDGET)]
    degree_budget: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Tau {
    Id,
    Conj,
}

#[derive(Subcommand)]
enum Command {
    /// Prints f ∘ g.
    Compose { f: String, g: String },
    /// Prints the certified inverse, or with --bound the formal inverse
    /// truncated above that degree.
    Invert {
        f: String,
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Decides whether f is an automorphism.
    Verify { f: String },
    /// Prints exp(s·δ) for a locally nilpotent derivation δ.
    Exp {
        delta: String,
        #[arg(long, default_value = "1")]
        s: String,
        #[arg(long, default_value_t = derivation::DEFAULT_MAX_POWER)]
        max_power: u32,
    },
    /// Certifies local nilpotency on the coordinates.
    LndCheck {
        delta: String,
        #[arg(long, default_value_t = derivation::DEFAULT_MAX_POWER)]
        max_power: u32,
    },
    /// Recognizes c·x^γ ∂/∂x_i, the derivations normalized by the diagonal torus.
    Classify { delta: String },
    /// Prints g ∘ f ∘ g⁻¹.
    Conj { g: String, f: String },
    /// Prints τ(g ∘ f ∘ g⁻¹).
    Theta {
        g: String,
        f: String,
        #[arg(long, value_enum, default_value = "id")]
        tau: Tau,
    },
    /// Factors a plane automorphism into affine and elementary generators.
    Jvk { f: String },
    /// Evaluates a tame word and its inverse.
    WordEval {
        word: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Commutant support of a finite diagonal group and the centralizer verdict.
    Centralizer {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        deg: u32,
        /// Use all of μ_k instead of the scalar subgroup.
        #[arg(long)]
        full_rank: bool,
        /// Generators as exponent vectors such as `(1,0)`; overrides --full-rank.
        #[arg(long = "gen")]
        generators: Vec<String>,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Lists the characters in X_u with entries bounded by `bound`.
    XuEnum { n: usize, bound: u32 },
    /// Decides l1 <= l2 in the dominance order.
    Dominance { l1: String, l2: String },
    /// The dominant character strictly below l outside X_u.
    TranslationWitness { l: String },
    /// Certifies or refutes local finiteness.
    LocallyFinite {
        f: String,
        #[arg(long, default_value_t = 8)]
        max_iter: u32,
        #[arg(long, default_value_t = 512)]
        rank_cap: usize,
    },
    /// Runs every property check.
    LemmaSuite {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        bound: u32,
        /// Breaks two oracles on purpose; the suite must then fail.
        #[arg(long)]
        mutate: bool,
    },
}

enum Failure {
    Usage(String),
    Property(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::NvarsMismatch { .. }
            | Error::InvalidArgument(_)
            | Error::ZeroDiagonalEntry
            | Error::NegativeExponent(_)
            | Error::SingularMatrix
            | Error::ElementaryDependsOnAxis { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Property(e.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<Report, Failure>;

fn parse_scalar(src: &str) -> Result<Scalar, Failure> {
    let p = parse_poly(src, 1)?;
    if !p.is_constant() {
        return Err(Failure::Usage(format!("expected a constant, found {p}")));
    }
    Ok(p.constant_term())
}

fn within_budget(f: &PolyMap, budget: u32) -> Result<(), Failure> {
    let d = f.degree_u32();
    if d > budget {
        return Err(Failure::Property(format!(
            "degree {d} exceeds the degree budget {budget}"
        )));
    }
    Ok(())
}

fn certify(src: &str, budget: u32) -> Result<Automorphism, Failure> {
    let f = parse_map(src)?;
    within_budget(&f, budget)?;
    Ok(verify_automorphism(&f)?)
}

fn map_report(f: &PolyMap) -> Report {
    Report::new()
        .line(f)
        .record("map", f)
        .record("degree", f.degree())
}

fn run(cli: Cli) -> Outcome {
    let budget = cli.degree_budget;
    match cli.command {
        Command::Compose { f, g } => {
            let f = parse_map(&f)?;
            let g = parse_map(&g)?;
            Ok(map_report(&f.compose(&g)?))
        }
        Command::Invert { f, bound } => {
            let f = parse_map(&f)?;
            within_budget(&f, budget)?;
            match bound {
                Some(b) => {
                    let h = formal_inverse(&f, b)?;
                    Ok(map_report(&h).record("bound", b))
                }
                None => Ok(map_report(verify_automorphism(&f)?.inv())),
            }
        }
        Command::Verify { f } => {
            let f = parse_map(&f)?;
            within_budget(&f, budget)?;
            let det = f.jacobian_det();
            match verify_automorphism(&f) {
                Ok(a) => Ok(Report::new()
                    .line("CERTIFIED")
                    .record("verdict", "certified")
                    .field("degree", f.degree())
                    .field("jacobian_det", &det)
                    .field("inverse", a.inv())
                    .field("inverse_degree", a.inv().degree())),
                Err(Error::NotAutomorphism(reason)) => Ok(Report::new()
                    .failed()
                    .line(format!("NOT-AUTOMORPHISM: {reason}"))
                    .record("verdict", "not-automorphism")
                    .record("reason", &reason)
                    .field("degree", f.degree())
                    .field("jacobian_det", &det)),
                Err(e) => Err(e.into()),
            }
        }
        Command::Exp {
            delta,
            s,
            max_power,
        } => {
            let delta = parse_derivation(&delta)?;
            let s = parse_scalar(&s)?;
            let lnd = delta.certify(max_power)?;
            Ok(map_report(&lnd.flow(&s)).record("s", &s))
        }
        Command::LndCheck { delta, max_power } => {
            let delta = parse_derivation(&delta)?;
            let verdict = delta.certify_nilpotent(max_power);
            let report = Report::new().line(&verdict);
            Ok(match &verdict {
                Nilpotency::Certified { orders } => {
                    let orders: Vec<String> = orders.iter().map(u32::to_string).collect();
                    report
                        .record("verdict", "certified")
                        .record("orders", orders.join(","))
                }
                Nilpotency::NotNilpotentWithin { max_power } => report
                    .failed()
                    .record("verdict", "not-nilpotent-within")
                    .record("max_power", max_power),
            })
        }
        Command::Classify { delta } => {
            let delta = parse_derivation(&delta)?;
            match classify_dn_normalized(&delta) {
                Ok(form) => {
                    let gamma: Vec<String> = form.gamma.iter().map(u32::to_string).collect();
                    Ok(Report::new()
                        .line(&form)
                        .record("verdict", "normalized")
                        .record("axis", form.axis + 1)
                        .record("gamma", format!("({})", gamma.join(",")))
                        .record("c", &form.c)
                        .record("character", form.character()))
                }
                Err(e @ (Error::NotNormalized | Error::ZeroDerivation)) => Ok(Report::new()
                    .failed()
                    .line(format!("NOT-NORMALIZED: {e}"))
                    .record("verdict", "not-normalized")
                    .record("reason", e)),
                Err(e) => Err(e.into()),
            }
        }
        Command::Conj { g, f } => {
            let g = certify(&g, budget)?;
            let f = parse_map(&f)?;
            Ok(map_report(&conjugate(&g, &f)?))
        }
        Command::Theta { g, f, tau } => {
            let g = certify(&g, budget)?;
            let f = parse_map(&f)?;
            let tau = match tau {
                Tau::Id => FieldAut::Identity,
                Tau::Conj => FieldAut::Conjugation,
            };
            Ok(map_report(&ThetaAut::new(g, tau).apply(&f)?).record("tau", tau))
        }
        Command::Jvk { f } => {
            let a = certify(&f, budget)?;
            let fz = jvk_factor(&a)?;
            let trace: Vec<String> = fz.degree_trace.iter().map(u32::to_string).collect();
            Ok(Report::new()
                .line(&fz.word)
                .record("word", &fz.word)
                .record("factors", fz.word.len())
                .record("degree_trace", trace.join(",")))
        }
        Command::WordEval { word, n } => {
            let w = parse_word(&word, n)?;
            let a = w.eval()?;
            Ok(Report::new()
                .field("map", a.fwd())
                .field("inverse", a.inv())
                .field("degree", a.fwd().degree()))
        }
        Command::Centralizer {
            n,
            k,
            deg,
            full_rank,
            generators,
            samples,
            seed,
        } => {
            let mu = if !generators.is_empty() {
                let gens = generators
                    .iter()
                    .map(|g| parse_character(g).map(|c| c.coords().to_vec()))
                    .collect::<Result<Vec<_>, _>>()?;
                FiniteDiagonalGroup::with_generators(n, k, gens)?
            } else if full_rank {
                FiniteDiagonalGroup::full(n, k)
            } else {
                FiniteDiagonalGroup::scalar(n, k)
            };
            let r = centralizer_equals_dn(&mu, deg, samples, seed)?;
            let mut report = Report::new()
                .line(&r)
                .record("support", &r.support)
                .record("forced", r.support.is_forced_diagonal())
                .record("equals_dn", r.equals_dn())
                .record("seed", seed);
            if let CentralizerVerdict::Sampled {
                samples,
                certified,
                counterexamples,
            } = &r.verdict
            {
                report = report
                    .record("samples", samples)
                    .record("certified", certified)
                    .record("counterexamples", counterexamples.len());
                if let Some(c) = counterexamples.first() {
                    report = report.record("counterexample", c);
                }
            }
            Ok(if r.equals_dn() {
                report
            } else {
                report.failed()
            })
        }
        Command::XuEnum { n, bound } => {
            if n == 0 {
                return Err(Failure::Usage("n must be positive".into()));
            }
            let chars = enumerate_xu(n, bound);
            let mut report = Report::new().record("count", chars.len());
            for (i, c) in chars.iter().enumerate() {
                report = report.line(c).record(format!("character.{}", i + 1), c);
            }
            Ok(report)
        }
        Command::Dominance { l1, l2 } => {
            let a = parse_character(&l1)?;
            let b = parse_character(&l2)?;
            let leq = dominance_leq(&a, &b)?;
            let report = Report::new()
                .line(format!("{a} {} {b}", if leq { "<=" } else { "!<=" }))
                .record("leq", leq);
            Ok(if leq { report } else { report.failed() })
        }
        Command::TranslationWitness { l } => {
            let lambda = parse_character(&l)?;
            let w = translation_lemma_witness(&lambda)?;
            Ok(Report::new()
                .line(&w)
                .record("witness", &w)
                .record("dominant", is_dominant(&w))
                .record("in_xu", is_in_xu(&w)))
        }
        Command::LocallyFinite {
            f,
            max_iter,
            rank_cap,
        } => {
            if max_iter == 0 {
                return Err(Failure::Usage("--max-iter must be at least 1".into()));
            }
            let a = certify(&f, budget)?;
            let v = locally_finite_certify(&a, max_iter, rank_cap);
            let report = Report::new().line(&v);
            Ok(match &v {
                LocallyFinite::Certified { dim, iterations } => report
                    .record("verdict", "certified-locally-finite")
                    .record("dim", dim)
                    .record("iterations", iterations),
                LocallyFinite::NotLocallyFinite {
                    iterate,
                    degree,
                    bound,
                } => report
                    .failed()
                    .record("verdict", "not-locally-finite")
                    .record("iterate", iterate)
                    .record("degree", degree)
                    .record("bound", bound),
                LocallyFinite::Inconclusive { reason } => report
                    .failed()
                    .record("verdict", "inconclusive")
                    .record("reason", reason),
            })
        }
        Command::LemmaSuite {
            seed,
            max_n,
            bound,
            mutate,
        } => {
            let config = SuiteConfig {
                seed,
                max_n,
                bound,
                degree_budget: budget,
                inject_mutation: mutate,
            };
            let r = run_lemma_suite(&config);
            let mut report = Report::new().line(&r).record("seed", seed);
            for c in &r.outcomes {
                report = report
                    .record(format!("{}.passed", c.name), c.passed())
                    .record(format!("{}.cases", c.name), c.cases);
                if let Some(e) = &c.counterexample {
                    report = report.record(format!("{}.counterexample", c.name), e);
                }
            }
            Ok(if r.all_passed() {
                report
            } else {
                report.failed()
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            report.print(format);
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Property(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
