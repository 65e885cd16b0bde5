//! Executable checks of every identity the library implements, each over a
//! seeded, deterministically ordered family of cases.
//!
//! Cases run in parallel, but a check always reports the first failing case
//! in enumeration order, and enumerations run from small inputs to large.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::centralizer::{
    centralizer_equals_dn, commutant_support, is_in_centralizer, is_in_centralizer_explicit,
    sample_in_support, CentralizerVerdict,
};
use crate::derivation::{
    b_coefficient, classify_dn_normalized, conj_by_diagonal, flow, Derivation,
};
use crate::poly::{monomials_up_to, Monomial, Polynomial};
use crate::polymap::{
    conjugate, gabber_bound, locally_finite_certify, verify_automorphism, Automorphism,
    LocallyFinite, PolyMap, ThetaAut,
};
use crate::sample;
use crate::scalar::{FieldAut, Scalar};
use crate::tame::{
    jvk_factor, random_tame, random_tame_with_budget, TameWord, WordBudget, DEFAULT_DEGREE_BUDGET,
};
use crate::text::{parse_character, parse_derivation, parse_map, parse_poly, parse_word};
use crate::torus::{
    dominance_leq, enumerate_xu, eval_character, is_dominant, is_in_xu, translation_lemma_witness,
    Character, DiagonalElement, FiniteDiagonalGroup,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Largest dimension in the exhaustive sweeps.
    pub max_n: usize,
    /// Largest exponent total in the monomial sweeps.
    pub bound: u32,
    /// Degree cap for random tame words.
    pub degree_budget: u32,
    /// Deliberately breaks two oracles so that the harness must fail.
    pub inject_mutation: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            max_n: 3,
            bound: 4,
            degree_budget: DEFAULT_DEGREE_BUDGET,
            inject_mutation: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "PASS {} cases={}", self.name, self.cases),
            Some(c) => write!(
                f,
                "FAIL {} cases={} counterexample: {c}",
                self.name, self.cases
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub seed: u64,
    pub outcomes: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(CheckOutcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        for o in &self.outcomes {
            writeln!(f, "{o}")?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} of {} checks passed",
            self.outcomes.len() - failed,
            self.outcomes.len()
        )
    }
}

/// Per-case generator: stream `tag << 32 | index` of the seeded ChaCha8.
fn case_rng(seed: u64, tag: u32, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((tag as u64) << 32) | index as u64);
    rng
}

fn run_cases<T, F>(name: &'static str, cases: Vec<T>, check: F) -> CheckOutcome
where
    T: Send + Sync,
    F: Fn(&T) -> Result<(), String> + Sync,
{
    let results: Vec<Result<(), String>> = cases.par_iter().map(&check).collect();
    CheckOutcome {
        name,
        cases: results.len(),
        counterexample: results.into_iter().find_map(Result::err),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn compose(f: &PolyMap, g: &PolyMap) -> PolyMap {
    f.compose(g).expect("same nvars")
}

/// Random tame words in two and three variables (alternating), length
/// `0..=6`, generator degree at most 3: the series inverse is certified, agrees
/// with the word inverse, composes to the identity on both sides and obeys
/// the degree bound `deg f⁻¹ <= (deg f)^{n-1}`.
pub fn inversion_round_trip(seed: u64, count: usize, budget: u32) -> CheckOutcome {
    run_cases("inversion-round-trip", (0..count).collect(), |&i| {
        let n = 2 + i % 2;
        let mut rng = case_rng(seed, 1, i);
        let word = random_tame_with_budget(n, i % 7, 3, rng.gen(), WordBudget::with_degree(budget));
        let f = word.eval_map();
        ensure(f.degree_u32() <= budget, || {
            format!("deg f = {} exceeds {budget} for {word}", f.degree_u32())
        })?;
        let a = verify_automorphism(&f).map_err(|e| format!("word {word}: {e}"))?;
        ensure(compose(a.fwd(), a.inv()).is_identity(), || {
            format!("f∘f⁻¹ != id for {word}")
        })?;
        ensure(compose(a.inv(), a.fwd()).is_identity(), || {
            format!("f⁻¹∘f != id for {word}")
        })?;
        ensure(*a.inv() == word.inverse().eval_map(), || {
            format!("series and word inverses differ for {word}")
        })?;
        let bound = gabber_bound(f.degree_u32(), n);
        ensure(a.inv().degree_u32() as u64 <= bound, || {
            format!(
                "deg f⁻¹ = {} exceeds {bound} for {word}",
                a.inv().degree_u32()
            )
        })
    })
}

/// `(n, axis, γ)` with `γ_axis = 0`.
type MonomialCase = (usize, usize, Vec<u32>);

fn exponent_vectors_avoiding(n: usize, axis: usize, total: u32) -> Vec<Vec<u32>> {
    monomials_up_to(n, total)
        .into_iter()
        .filter(|m| m.exps()[axis] == 0)
        .map(|m| m.exps().to_vec())
        .collect()
}

/// Every `c x^γ ∂/∂x_i` with `γ_i = 0`, `n <= max_n`, `|γ| <= max_gamma`:
/// classification recovers `(i, γ, c)`, the character `e_i - γ` lies in
/// `X_u`, and `d ∘ exp(sδ) ∘ d⁻¹ = exp(λ(d) s δ)` for `trials` random pairs.
pub fn normalized_derivation_sweep(
    seed: u64,
    max_n: usize,
    max_gamma: u32,
    trials: usize,
) -> CheckOutcome {
    let mut cases = Vec::new();
    for n in 1..=max_n {
        for axis in 0..n {
            for gamma in exponent_vectors_avoiding(n, axis, max_gamma) {
                cases.push((n, axis, gamma));
            }
        }
    }
    let cases: Vec<(usize, MonomialCase)> = cases.into_iter().enumerate().collect();
    run_cases(
        "normalized-derivation-sweep",
        cases,
        |(idx, (n, axis, gamma))| {
            let mut rng = case_rng(seed, 2, *idx);
            let c = sample::nonzero_scalar(&mut rng);
            let delta = Derivation::monomial(*axis, gamma, c.clone());
            let form = classify_dn_normalized(&delta).map_err(|e| format!("{delta}: {e}"))?;
            ensure(
                form.axis == *axis && form.gamma == *gamma && form.c == c,
                || format!("{delta} classified as {form}"),
            )?;
            let lambda = form.character();
            ensure(is_in_xu(&lambda), || {
                format!("character {lambda} of {delta} not in X_u")
            })?;
            for _ in 0..trials {
                let d = sample::diagonal(*n, &mut rng);
                let s = sample::scalar(&mut rng);
                let lhs = compose(
                    &d.to_map(),
                    &compose(
                        &flow(&delta, &s).map_err(|e| e.to_string())?,
                        &d.inverse().to_map(),
                    ),
                );
                let scaled = &eval_character(&lambda, &d).expect("same n") * &s;
                let rhs = flow(&delta, &scaled).map_err(|e| e.to_string())?;
                ensure(lhs == rhs, || {
                    format!("{delta}, d={:?}, s={s}: {lhs} != {rhs}", d.scalars())
                })?;
            }
            Ok(())
        },
    )
}

/// For `δ = Σ a_j x^{β+e_j} ∂/∂x_j` with `a_j ∈ -2..=2`, `n <= max_n`,
/// `|β| <= max_beta` and `m <= max_m`: `δ^m(x_i)` equals the closed-form
/// coefficient times `x^{mβ+e_i}`.
pub fn b_formula_oracle(max_n: usize, max_beta: u32, max_m: u32, mutate: bool) -> CheckOutcome {
    let mut cases = Vec::new();
    for n in 1..=max_n {
        let coeff_vectors: Vec<Vec<i64>> = (0..5i64.pow(n as u32))
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let v = code % 5 - 2;
                        code /= 5;
                        v
                    })
                    .collect()
            })
            .collect();
        for beta in monomials_up_to(n, max_beta) {
            for a in &coeff_vectors {
                cases.push((beta.exps().to_vec(), a.clone()));
            }
        }
    }
    run_cases("b-formula-oracle", cases, |(beta, a)| {
        let n = beta.len();
        let a: Vec<Scalar> = a.iter().map(|&v| Scalar::from_int(v)).collect();
        let delta = Derivation::monomial_family(&a, beta).expect("matching lengths");
        let beta_i: Vec<i64> = beta.iter().map(|&b| b as i64).collect();
        for i in 0..n {
            let mut q = Polynomial::var(n, i);
            for m in 1..=max_m {
                q = delta.apply(&q).expect("same nvars");
                let mut closed = b_coefficient(&a, &beta_i, i, m).expect("valid input");
                if mutate && m == max_m {
                    closed = &closed + &Scalar::one();
                }
                let mut e: Vec<u32> = beta.iter().map(|b| b * m).collect();
                e[i] += 1;
                let expected = Polynomial::monomial(Monomial::new(e), closed);
                ensure(q == expected, || {
                    format!(
                        "{delta}, i={}, m={m}: iterate {q}, closed form {expected}",
                        i + 1
                    )
                })?;
            }
        }
        Ok(())
    })
}

/// Random triangular derivations with `n <= 3` and coefficient degree
/// `<= 3`: `exp(sδ) ∘ exp(s'δ) = exp((s+s')δ)` and `exp(0δ) = id`.
pub fn flow_group_law(seed: u64, count: usize, mutate: bool) -> CheckOutcome {
    run_cases("flow-group-law", (0..count).collect(), |&i| {
        let mut rng = case_rng(seed, 4, i);
        let n = 1 + i % 3;
        let delta = sample::triangular_derivation(n, 3, &mut rng);
        let lnd = delta.certify(64).map_err(|e| format!("{delta}: {e}"))?;
        let s = sample::scalar(&mut rng);
        let t = sample::scalar(&mut rng);
        let mut sum = &s + &t;
        if mutate {
            sum = &sum + &Scalar::one();
        }
        let lhs = compose(&lnd.flow(&s), &lnd.flow(&t));
        let rhs = lnd.flow(&sum);
        ensure(lhs == rhs, || {
            format!("{delta}, s={s}, s'={t}: {lhs} != {rhs}")
        })?;
        ensure(lnd.flow(&Scalar::zero()).is_identity(), || {
            format!("exp(0·{delta}) != id")
        })
    })
}

/// The full `μ_3` in two variables at degree 2 allows exactly `{e_1}, {e_2}`.
pub fn centralizer_forced() -> CheckOutcome {
    run_cases(
        "centralizer-forced",
        vec![(2usize, 3u32, 2u32)],
        |&(n, k, d)| {
            let report = centralizer_equals_dn(&FiniteDiagonalGroup::full(n, k), d, 0, 0)
                .map_err(|e| e.to_string())?;
            let expected: Vec<Vec<Monomial>> = (0..n).map(|i| vec![Monomial::var(n, i)]).collect();
            let actual: Vec<Vec<Monomial>> =
                (0..n).map(|i| report.support.allowed(i).to_vec()).collect();
            ensure(actual == expected, || format!("support {}", report.support))?;
            ensure(report.verdict == CentralizerVerdict::Forced, || {
                report.to_string()
            })
        },
    )
}

/// The full `μ_2` in two variables at degree 3: every sampled
/// support-compatible endomorphism that is certified an automorphism is
/// diagonal-linear, and at least one candidate is certified.
pub fn centralizer_sampled(seed: u64, samples: usize) -> CheckOutcome {
    let report = centralizer_equals_dn(&FiniteDiagonalGroup::full(2, 2), 3, samples, seed);
    let counterexample = match report {
        Err(e) => Some(e.to_string()),
        Ok(r) => match &r.verdict {
            CentralizerVerdict::Sampled {
                certified,
                counterexamples,
                ..
            } if counterexamples.is_empty() && *certified > 0 => None,
            _ => Some(r.to_string()),
        },
    };
    CheckOutcome {
        name: "centralizer-sampled",
        cases: samples,
        counterexample,
    }
}

/// Every full `μ_k`, `k <= 4`, in one and two variables at degree `<= 3`:
/// no certified non-diagonal automorphism among sampled candidates.
pub fn centralizer_sweep(seed: u64, samples: usize) -> CheckOutcome {
    let mut cases = Vec::new();
    for n in 1..=2 {
        for k in 2..=4u32 {
            for d in 1..=3u32 {
                cases.push((n, k, d));
            }
        }
    }
    run_cases("centralizer-sweep", cases, |&(n, k, d)| {
        let r = centralizer_equals_dn(&FiniteDiagonalGroup::full(n, k), d, samples, seed)
            .map_err(|e| e.to_string())?;
        ensure(r.equals_dn(), || format!("n={n} k={k} d={d}: {r}"))
    })
}

/// Random plane words: the factorization evaluates back to the input and
/// its degree trace strictly decreases.
pub fn jvk_round_trip(seed: u64, count: usize, budget: u32) -> CheckOutcome {
    run_cases("jvk-round-trip", (0..count).collect(), |&i| {
        let mut rng = case_rng(seed, 6, i);
        let word =
            random_tame_with_budget(2, 1 + i % 6, 3, rng.gen(), WordBudget::with_degree(budget));
        let a = word.eval().map_err(|e| format!("{word}: {e}"))?;
        let fz = jvk_factor(&a).map_err(|e| format!("{word}: {e}"))?;
        ensure(fz.word.eval_map() == *a.fwd(), || {
            format!("{word} refactored as {}", fz.word)
        })?;
        ensure(fz.degree_trace.windows(2).all(|w| w[0] > w[1]), || {
            format!("{word}: degree trace {:?}", fz.degree_trace)
        })
    })
}

const THETA_SWELL: u32 = 32;

fn small_tame(n: usize, rng: &mut ChaCha8Rng) -> TameWord {
    // θ(f1 ∘ f2) has degree up to deg g · deg f1 · deg f2 · deg g⁻¹
    let budget = if n == 2 { 3 } else { 2 };
    random_tame_with_budget(
        n,
        rng.gen_range(1..=3),
        2,
        rng.gen(),
        WordBudget::with_degree(budget),
    )
}

/// `θ(f_1 ∘ f_2) = θ(f_1) ∘ θ(f_2)` and `θ(id) = id` for random tame `g`,
/// `f_1`, `f_2` and both field automorphisms.
pub fn theta_homomorphism(seed: u64, count: usize) -> CheckOutcome {
    run_cases("theta-homomorphism", (0..count).collect(), |&i| {
        let mut rng = case_rng(seed, 7, i);
        let n = 2 + i % 2;
        let g = small_tame(n, &mut rng).eval().map_err(|e| e.to_string())?;
        let tau = if rng.gen_bool(0.5) {
            FieldAut::Conjugation
        } else {
            FieldAut::Identity
        };
        let theta = ThetaAut::new(g, tau);
        // θ(f1) ∘ θ(f2) passes through degree deg θ(f1) · deg θ(f2) before
        // cancelling; pairs past THETA_SWELL are redrawn
        let (f1, f2) = (0..8)
            .map(|_| {
                (
                    small_tame(n, &mut rng).eval_map(),
                    small_tame(n, &mut rng).eval_map(),
                )
            })
            .find(|(f1, f2)| {
                let d = |f: &PolyMap| conjugate(&theta.g, f).map_or(u32::MAX, |c| c.degree_u32());
                d(f1).saturating_mul(d(f2)) <= THETA_SWELL
            })
            .unwrap_or_else(|| (PolyMap::identity(n), small_tame(n, &mut rng).eval_map()));
        let lhs = theta.apply(&compose(&f1, &f2)).map_err(|e| e.to_string())?;
        let rhs = compose(
            &theta.apply(&f1).map_err(|e| e.to_string())?,
            &theta.apply(&f2).map_err(|e| e.to_string())?,
        );
        ensure(lhs == rhs, || {
            format!("g={}, tau={tau}, f1={f1}, f2={f2}", theta.g.fwd())
        })?;
        ensure(
            theta
                .apply(&PolyMap::identity(n))
                .map_err(|e| e.to_string())?
                .is_identity(),
            || format!("θ(id) != id for g={}", theta.g.fwd()),
        )
    })
}

/// With `t = x - Σ_{j≠i} e_j`, conjugating `x_i ↦ x_i + x^γ` gives
/// `x_i ↦ x_i + ∏_{j≠i} (x_j + 1)^{γ_j}`, whose support is `{γ' <= γ}`.
pub fn h_gamma_identity(max_n: usize, max_gamma: u32) -> CheckOutcome {
    let mut cases = Vec::new();
    for n in 1..=max_n {
        for axis in 0..n {
            for gamma in exponent_vectors_avoiding(n, axis, max_gamma) {
                cases.push((n, axis, gamma));
            }
        }
    }
    run_cases("h-gamma-identity", cases, |(n, axis, gamma)| {
        let (n, axis) = (*n, *axis);
        let shift: Vec<Scalar> = (0..n)
            .map(|j| {
                if j == axis {
                    Scalar::zero()
                } else {
                    Scalar::from_int(-1)
                }
            })
            .collect();
        let back: Vec<Scalar> = shift.iter().map(|s| -s).collect();
        let t = Automorphism::from_pair(PolyMap::translation(&shift), PolyMap::translation(&back))
            .map_err(|e| e.to_string())?;
        let mut comps = PolyMap::identity(n).into_components();
        comps[axis] =
            &comps[axis] + &Polynomial::monomial(Monomial::new(gamma.clone()), Scalar::one());
        let f = PolyMap::new(comps).expect("n components");
        let h = gamma
            .iter()
            .enumerate()
            .fold(Polynomial::one(n), |acc, (j, &g)| {
                &acc * &(&Polynomial::var(n, j) + &Polynomial::one(n)).pow(g)
            });
        let mut expected = PolyMap::identity(n).into_components();
        expected[axis] = &expected[axis] + &h;
        let got = conjugate(&t, &f).map_err(|e| e.to_string())?;
        ensure(got.components() == expected.as_slice(), || {
            format!("γ={gamma:?}: {got}")
        })?;
        let support: BTreeSet<Monomial> = h.terms().map(|(m, _)| m.clone()).collect();
        let target = Monomial::new(gamma.clone());
        let below: BTreeSet<Monomial> = monomials_up_to(n, target.degree())
            .into_iter()
            .filter(|m| m.divides(&target))
            .collect();
        ensure(support == below, || {
            format!("γ={gamma:?}: support of h_γ is {h}")
        })
    })
}

/// Every dominant `λ ∈ X_u` with `n <= max_n`, `|λ_j| <= bound`, `λ != ε_1`:
/// the witness is dominant, strictly dominated by `λ` and outside `X_u`.
pub fn translation_witness(max_n: usize, bound: u32) -> CheckOutcome {
    let mut cases = Vec::new();
    for n in 1..=max_n {
        for lambda in enumerate_xu(n, bound) {
            if is_dominant(&lambda) && lambda != Character::epsilon(n, 0) {
                cases.push(lambda);
            }
        }
    }
    run_cases("translation-witness", cases, |lambda| {
        let w = translation_lemma_witness(lambda).map_err(|e| format!("{lambda}: {e}"))?;
        ensure(is_dominant(&w), || format!("{lambda} -> {w} not dominant"))?;
        ensure(
            w != *lambda && dominance_leq(&w, lambda).expect("same n"),
            || format!("{lambda} -> {w} not strictly dominated"),
        )?;
        ensure(!is_in_xu(&w), || format!("{lambda} -> {w} lies in X_u"))
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug)]
enum LfCase {
    Permutation(Vec<usize>),
    Triangular(usize),
    Henon,
}

/// Coordinate permutations with `n <= 3` and random triangular maps with
/// constant nonzero leading coefficients are certified; the Hénon map
/// `(x_2, x_1 + x_2^2)` is refuted within 8 iterations.
pub fn locally_finite_verdicts(seed: u64, triangular: usize) -> CheckOutcome {
    let mut cases: Vec<LfCase> = (1..=3)
        .flat_map(permutations)
        .map(LfCase::Permutation)
        .collect();
    cases.extend((0..triangular).map(LfCase::Triangular));
    cases.push(LfCase::Henon);
    run_cases("locally-finite", cases, |case| match case {
        LfCase::Permutation(p) => {
            let n = p.len();
            let f = PolyMap::new(p.iter().map(|&j| Polynomial::var(n, j)).collect())
                .expect("n components");
            let a = verify_automorphism(&f).map_err(|e| e.to_string())?;
            let v = locally_finite_certify(&a, 8, 64);
            ensure(matches!(v, LocallyFinite::Certified { .. }), || {
                format!("{f}: {v}")
            })
        }
        LfCase::Triangular(i) => {
            let mut rng = case_rng(seed, 9, *i);
            let n = 1 + i % 3;
            let f = sample::triangular_map(n, 3, &mut rng);
            let a = verify_automorphism(&f).map_err(|e| format!("{f}: {e}"))?;
            let v = locally_finite_certify(&a, 64, 512);
            ensure(matches!(v, LocallyFinite::Certified { .. }), || {
                format!("{f}: {v}")
            })
        }
        LfCase::Henon => {
            let a = verify_automorphism(&parse_map("[x2; x1 + x2^2]").expect("valid"))
                .map_err(|e| e.to_string())?;
            let v = locally_finite_certify(&a, 8, 512);
            ensure(matches!(v, LocallyFinite::NotLocallyFinite { .. }), || {
                format!("Hénon: {v}")
            })
        }
    })
}

/// Associativity, commutativity, distributivity and units on random triples.
pub fn ring_axioms(seed: u64, count: usize) -> CheckOutcome {
    run_cases("ring-axioms", (0..count).collect(), |&i| {
        let mut rng = case_rng(seed, 10, i);
        let n = 1 + i % 3;
        let [p, q, r] = [0, 1, 2].map(|_| sample::poly(n, 3, 4, &mut rng));
        let ctx = || format!("p={p}, q={q}, r={r}");
        ensure(&(&p + &q) + &r == &p + &(&q + &r), ctx)?;
        ensure(&(&p * &q) * &r == &p * &(&q * &r), ctx)?;
        ensure(&p + &q == &q + &p && &p * &q == &q * &p, ctx)?;
        ensure(&p * &(&q + &r) == &(&p * &q) + &(&p * &r), ctx)?;
        ensure(
            &p + &Polynomial::zero(n) == p && &p * &Polynomial::one(n) == p,
            ctx,
        )?;
        ensure((&p + &-p.clone()).is_zero(), ctx)
    })
}

/// `p(f)(g) = p(f ∘ g)`, multiplicativity of degree and `τ` being a ring
/// homomorphism and an involution.
pub fn substitution_and_degree(seed: u64, count: usize) -> CheckOutcome {
    run_cases(
        "substitution-degree-field-aut",
        (0..count).collect(),
        |&i| {
            let mut rng = case_rng(seed, 11, i);
            let n = 1 + i % 3;
            let p = sample::poly(n, 3, 3, &mut rng);
            let q = sample::poly(n, 2, 3, &mut rng);
            let f = sample::map(n, 2, 2, &mut rng);
            let g = sample::map(n, 2, 2, &mut rng);
            let lhs = p
                .substitute(f.components())
                .and_then(|pf| pf.substitute(g.components()));
            let rhs = p.substitute(compose(&f, &g).components());
            ensure(lhs == rhs, || format!("p={p}, f={f}, g={g}"))?;
            ensure(
                p.substitute(PolyMap::identity(n).components()).as_ref() == Ok(&p),
                || format!("p={p}"),
            )?;
            if !p.is_zero() && !q.is_zero() {
                ensure((&p * &q).degree() == p.degree() + q.degree(), || {
                    format!("p={p}, q={q}")
                })?;
            }
            let tau = FieldAut::Conjugation;
            ensure(
                (&p + &q).apply_field_aut(tau) == &p.apply_field_aut(tau) + &q.apply_field_aut(tau),
                || format!("τ(p+q), p={p}, q={q}"),
            )?;
            ensure(
                (&p * &q).apply_field_aut(tau) == &p.apply_field_aut(tau) * &q.apply_field_aut(tau),
                || format!("τ(pq), p={p}, q={q}"),
            )?;
            ensure(p.apply_field_aut(tau).apply_field_aut(tau) == p, || {
                format!("τ∘τ, p={p}")
            })
        },
    )
}

/// Associativity of composition with identity as a unit, and the chain rule
/// `J(f ∘ g) = J(f)(g) · J(g)` for Jacobian determinants.
pub fn composition_laws(seed: u64, count: usize) -> CheckOutcome {
    run_cases("composition-chain-rule", (0..count).collect(), |&i| {
        let mut rng = case_rng(seed, 12, i);
        let n = 1 + i % 3;
        let [f, g, h] = [0, 1, 2].map(|_| sample::map(n, 2, 2, &mut rng));
        ensure(
            compose(&compose(&f, &g), &h) == compose(&f, &compose(&g, &h)),
            || format!("f={f}, g={g}, h={h}"),
        )?;
        let id = PolyMap::identity(n);
        ensure(compose(&id, &f) == f && compose(&f, &id) == f, || {
            format!("f={f}")
        })?;
        let lhs = compose(&f, &g).jacobian_det();
        let rhs = &f.jacobian_det().substitute(g.components()).expect("same n") * &g.jacobian_det();
        ensure(lhs == rhs, || format!("chain rule, f={f}, g={g}"))
    })
}

/// `δ(pq) = δ(p) q + p δ(q)`.
pub fn leibniz_rule(seed: u64, count: usize) -> CheckOutcome {
    run_cases("leibniz", (0..count).collect(), |&i| {
        let mut rng = case_rng(seed, 13, i);
        let n = 1 + i % 3;
        let delta =
            Derivation::new((0..n).map(|_| sample::poly(n, 2, 2, &mut rng)).collect()).expect("n");
        let p = sample::poly(n, 3, 3, &mut rng);
        let q = sample::poly(n, 3, 3, &mut rng);
        let apply = |x: &Polynomial| delta.apply(x).expect("same n");
        ensure(
            apply(&(&p * &q)) == &(&apply(&p) * &q) + &(&p * &apply(&q)),
            || format!("δ={delta}, p={p}, q={q}"),
        )
    })
}

fn proportional(a: &Derivation, b: &Derivation) -> bool {
    let pairs: Vec<(&Polynomial, &Polynomial)> = a.coeffs().iter().zip(b.coeffs()).collect();
    let ratio = pairs
        .iter()
        .find(|(_, y)| !y.is_zero())
        .and_then(|(x, y)| x.ratio_to(y));
    match ratio {
        None => false,
        Some(r) => pairs.iter().all(|(x, y)| **x == y.scale(&r)),
    }
}

/// A classified derivation is rescaled by every diagonal conjugation; a
/// locally nilpotent derivation that fails classification is not.
pub fn classification_soundness(seed: u64, count: usize) -> CheckOutcome {
    run_cases("classification-soundness", (0..count).collect(), |&i| {
        let mut rng = case_rng(seed, 14, i);
        let n = 1 + i % 3;
        let delta = if i % 2 == 0 {
            let axis = rng.gen_range(0..n);
            let mut gamma = vec![0u32; n];
            for j in (0..n).filter(|&j| j != axis) {
                gamma[j] = rng.gen_range(0..=2);
            }
            Derivation::monomial(axis, &gamma, sample::nonzero_scalar(&mut rng))
        } else {
            sample::triangular_derivation(n, 2, &mut rng)
        };
        if delta.is_zero() {
            return Ok(());
        }
        let diagonals: Vec<DiagonalElement> =
            (0..20).map(|_| sample::diagonal(n, &mut rng)).collect();
        let conj = |d: &DiagonalElement| conj_by_diagonal(d, &delta).expect("same n");
        match classify_dn_normalized(&delta) {
            Ok(_) => ensure(
                diagonals.iter().all(|d| proportional(&conj(d), &delta)),
                || format!("{delta} classified but a conjugate is not proportional"),
            ),
            Err(_) => ensure(
                diagonals.iter().any(|d| !proportional(&conj(d), &delta)),
                || format!("{delta} unclassified but every conjugate is proportional"),
            ),
        }
    })
}

/// `λ(dd') = λ(d) λ(d')` and `(λ + λ')(d) = λ(d) λ'(d)`.
pub fn character_laws(seed: u64, count: usize) -> CheckOutcome {
    run_cases("character-multiplicativity", (0..count).collect(), |&i| {
        let mut rng = case_rng(seed, 15, i);
        let n = 1 + i % 4;
        let mut ch = || Character::new((0..n).map(|_| rng.gen_range(-3..=3)).collect());
        let (l1, l2) = (ch(), ch());
        let d1 = sample::diagonal(n, &mut rng);
        let d2 = sample::diagonal(n, &mut rng);
        let ev = |l: &Character, d: &DiagonalElement| eval_character(l, d).expect("same n");
        let prod = d1.mul(&d2).expect("same n");
        ensure(ev(&l1, &prod) == &ev(&l1, &d1) * &ev(&l1, &d2), || {
            format!("λ={l1}")
        })?;
        ensure(
            ev(&(&l1 + &l2), &d1) == &ev(&l1, &d1) * &ev(&l2, &d1),
            || format!("λ={l1}, λ'={l2}"),
        )
    })
}

/// The enumeration of `X_u` matches a filter of the full box, without
/// duplicates, and has `2(b+1)` elements in the plane.
pub fn xu_enumeration(max_n: usize, max_bound: u32) -> CheckOutcome {
    let cases: Vec<(usize, u32)> = (1..=max_n)
        .flat_map(|n| (0..=max_bound).map(move |b| (n, b)))
        .collect();
    run_cases("xu-enumeration", cases, |&(n, b)| {
        let listed = enumerate_xu(n, b);
        let set: BTreeSet<Character> = listed.iter().cloned().collect();
        ensure(set.len() == listed.len(), || {
            format!("duplicates for n={n}, b={b}")
        })?;
        let b = b as i64;
        // coordinates range over -b..=max(b, 1) so the entry 1 is always covered
        let side = (b + b.max(1) + 1) as usize;
        let boxed: BTreeSet<Character> = (0..side.pow(n as u32))
            .map(|mut code| {
                Character::new(
                    (0..n)
                        .map(|_| {
                            let v = (code % side) as i64 - b;
                            code /= side;
                            v
                        })
                        .collect(),
                )
            })
            .filter(is_in_xu)
            .collect();
        ensure(set == boxed, || {
            format!("n={n}, b={b}: enumeration differs from the box filter")
        })?;
        ensure(n != 2 || listed.len() as i64 == 2 * (b + 1), || {
            format!("b={b}: {} characters", listed.len())
        })
    })
}

/// Reflexivity, antisymmetry and transitivity on random characters of a
/// common coordinate sum.
pub fn dominance_order(seed: u64, count: usize) -> CheckOutcome {
    run_cases("dominance-partial-order", (0..count).collect(), |&i| {
        let mut rng = case_rng(seed, 16, i);
        let n = 2 + i % 3;
        let mut ch = || {
            let mut v: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-2..=2)).collect();
            let s: i64 = v.iter().sum();
            v.push(-s);
            Character::new(v)
        };
        let [a, b, c] = [ch(), ch(), ch()];
        let le = |x: &Character, y: &Character| dominance_leq(x, y).expect("same n");
        ensure(le(&a, &a), || format!("{a} not ≼ itself"))?;
        ensure(!(le(&a, &b) && le(&b, &a)) || a == b, || {
            format!("antisymmetry: {a}, {b}")
        })?;
        ensure(!(le(&a, &b) && le(&b, &c)) || le(&a, &c), || {
            format!("transitivity: {a}, {b}, {c}")
        })
    })
}

/// Maps built inside the commutant support commute with the group; adding
/// one term outside breaks commutation. Explicit composition agrees.
pub fn support_soundness(seed: u64, count: usize) -> CheckOutcome {
    run_cases(
        "centralizer-support-soundness",
        (0..count).collect(),
        |&i| {
            let mut rng = case_rng(seed, 17, i);
            let n = 1 + i % 2;
            let k = rng.gen_range(2..=4);
            let d = rng.gen_range(1..=3);
            let mu = FiniteDiagonalGroup::full(n, k);
            let support = commutant_support(&mu, d).map_err(|e| e.to_string())?;
            let inside = sample_in_support(&support, &mut rng);
            let ctx = |f: &PolyMap| format!("k={k}, d={d}, f={f}");
            ensure(is_in_centralizer(&inside, &mu) == Ok(true), || ctx(&inside))?;
            let explicit = is_in_centralizer_explicit(&inside, &mu).map_err(|e| e.to_string())?;
            ensure(explicit.is_none_or(|v| v), || ctx(&inside))?;
            let axis = rng.gen_range(0..n);
            let outside: Vec<Monomial> = monomials_up_to(n, d)
                .into_iter()
                .filter(|m| support.allowed(axis).binary_search(m).is_err())
                .collect();
            if outside.is_empty() {
                return Ok(());
            }
            let extra = outside[rng.gen_range(0..outside.len())].clone();
            let mut comps = inside.into_components();
            comps[axis] = &comps[axis] + &Polynomial::monomial(extra, Scalar::one());
            let broken = PolyMap::new(comps).expect("n components");
            ensure(is_in_centralizer(&broken, &mu) == Ok(false), || {
                ctx(&broken)
            })?;
            let explicit = is_in_centralizer_explicit(&broken, &mu).map_err(|e| e.to_string())?;
            ensure(explicit.is_none_or(|v| !v), || ctx(&broken))
        },
    )
}

/// The inverse of an evaluated word is the evaluation of the inverse word,
/// within the degree bound; affine conjugates of affine maps stay affine.
pub fn word_inverse(seed: u64, count: usize) -> CheckOutcome {
    run_cases("word-inverse", (0..count).collect(), |&i| {
        let mut rng = case_rng(seed, 18, i);
        let n = 1 + i % 3;
        let w = random_tame_with_budget(
            n,
            rng.gen_range(0..=4),
            2,
            rng.gen(),
            WordBudget::with_degree(16),
        );
        let a = w.eval().map_err(|e| format!("{w}: {e}"))?;
        ensure(*a.inv() == w.inverse().eval_map(), || format!("{w}"))?;
        ensure(a.satisfies_gabber_bound(), || {
            format!("degree bound fails for {w}")
        })?;
        let g = random_tame(n, 3, 1, rng.gen())
            .eval()
            .map_err(|e| e.to_string())?;
        let affine = sample::map(n, 1, 3, &mut rng);
        ensure(
            conjugate(&g, &affine)
                .map_err(|e| e.to_string())?
                .is_affine(),
            || format!("conjugate of {affine} by {} is not affine", g.fwd()),
        )
    })
}

/// Print-then-parse is the identity on polynomials, maps, derivations,
/// words and characters.
pub fn print_parse(seed: u64, count: usize) -> CheckOutcome {
    run_cases("print-parse-round-trip", (0..count).collect(), |&i| {
        let mut rng = case_rng(seed, 19, i);
        let n = 1 + i % 3;
        let p = sample::poly(n, 3, 4, &mut rng);
        ensure(parse_poly(&p.to_string(), n).as_ref() == Ok(&p), || {
            format!("polynomial {p}")
        })?;
        let f = sample::map(n, 2, 3, &mut rng);
        ensure(parse_map(&f.to_string()).as_ref() == Ok(&f), || {
            format!("map {f}")
        })?;
        let delta = sample::triangular_derivation(n, 2, &mut rng);
        ensure(
            parse_derivation(&delta.to_string()).as_ref() == Ok(&delta),
            || format!("derivation {delta}"),
        )?;
        let w = random_tame(n, rng.gen_range(0..=4), 2, rng.gen());
        ensure(parse_word(&w.to_string(), n).as_ref() == Ok(&w), || {
            format!("word {w}")
        })?;
        let c = Character::new((0..n).map(|_| rng.gen_range(-5..=5)).collect());
        ensure(parse_character(&c.to_string()).as_ref() == Ok(&c), || {
            format!("character {c}")
        })
    })
}

/// Runs every check; independent checks run concurrently and the report
/// keeps a fixed order.
pub fn run_lemma_suite(config: &SuiteConfig) -> SuiteReport {
    type Check<'a> = Box<dyn Fn() -> CheckOutcome + Send + Sync + 'a>;
    let s = config.seed;
    let m = config.inject_mutation;
    let (n, b, budget) = (config.max_n, config.bound, config.degree_budget);
    let checks: Vec<Check> = vec![
        Box::new(|| inversion_round_trip(s, 200, budget)),
        Box::new(|| normalized_derivation_sweep(s, n, b, 10)),
        Box::new(|| b_formula_oracle(n, 3, 6, m)),
        Box::new(|| flow_group_law(s, 100, m)),
        Box::new(centralizer_forced),
        Box::new(|| centralizer_sampled(s, 500)),
        Box::new(|| centralizer_sweep(s, 50)),
        Box::new(|| jvk_round_trip(s, 100, budget)),
        Box::new(|| theta_homomorphism(s, 50)),
        Box::new(|| h_gamma_identity(n, b)),
        Box::new(|| translation_witness(4, 5)),
        Box::new(|| locally_finite_verdicts(s, 20)),
        Box::new(|| ring_axioms(s, 100)),
        Box::new(|| substitution_and_degree(s, 100)),
        Box::new(|| composition_laws(s, 50)),
        Box::new(|| leibniz_rule(s, 100)),
        Box::new(|| classification_soundness(s, 100)),
        Box::new(|| character_laws(s, 100)),
        Box::new(|| xu_enumeration(n, 4)),
        Box::new(|| dominance_order(s, 200)),
        Box::new(|| support_soundness(s, 100)),
        Box::new(|| word_inverse(s, 100)),
        Box::new(|| print_parse(s, 100)),
    ];
    let outcomes = checks.par_iter().map(|c| c()).collect();
    SuiteReport { seed: s, outcomes }
}
