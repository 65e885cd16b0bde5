//! Acceptance gate: one PASS/FAIL line per criterion. Each criterion runs
//! the matching property suite at full size plus a few hand-computed
//! instances that do not go through the suite code.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use polyaut::suite::{self, CheckOutcome};
use polyaut::*;

const SEED: u64 = 1;

fn m(s: &str) -> PolyMap {
    parse_map(s).expect("valid map")
}

fn q(a: i64, b: i64) -> Scalar {
    Scalar::from_ratio(a, b)
}

struct Criterion {
    number: u32,
    title: &'static str,
    checks: Vec<CheckOutcome>,
    spot: Result<(), String>,
    elapsed: Duration,
    limit: Option<Duration>,
}

impl Criterion {
    fn run(
        number: u32,
        title: &'static str,
        limit: Option<Duration>,
        checks: impl FnOnce() -> Vec<CheckOutcome>,
        spot: impl FnOnce() -> Result<(), String>,
    ) -> Self {
        let start = Instant::now();
        let checks = checks();
        let elapsed = start.elapsed();
        Criterion {
            number,
            title,
            checks,
            spot: spot(),
            elapsed,
            limit,
        }
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
            && self.spot.is_ok()
            && self.limit.is_none_or(|l| self.elapsed <= l)
    }

    fn report(&self) {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let cases: Vec<String> = self
            .checks
            .iter()
            .map(|c| format!("{}={}", c.name, c.cases))
            .collect();
        println!(
            "criterion {} {}: {verdict} [{}] {:.2?}",
            self.number,
            self.title,
            cases.join(" "),
            self.elapsed
        );
        for c in self.checks.iter().filter(|c| !c.passed()) {
            println!("    {c}");
        }
        if let Err(e) = &self.spot {
            println!("    spot check: {e}");
        }
        if let Some(l) = self.limit.filter(|&l| self.elapsed > l) {
            println!("    runtime {:.2?} exceeds {:.0?}", self.elapsed, l);
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn spot_inversion() -> Result<(), String> {
    let f = m("[x1 + x2^2 + x3^3; x2 + x3^2; x3]");
    let a = verify_automorphism(&f).map_err(err)?;
    ensure(
        *a.inv() == m("[x1 - x2^2 + 2*x2*x3^2 - x3^4 - x3^3; x2 - x3^2; x3]"),
        || format!("inverse {}", a.inv()),
    )?;
    ensure(a.fwd().compose(a.inv()).map_err(err)?.is_identity(), || {
        "f∘f⁻¹".into()
    })?;
    ensure(a.inv().compose(a.fwd()).map_err(err)?.is_identity(), || {
        "f⁻¹∘f".into()
    })?;
    ensure(a.satisfies_gabber_bound(), || "Gabber bound".into())?;
    let w = random_tame(3, 4, 3, 7);
    let b = verify_automorphism(&w.eval_map()).map_err(err)?;
    ensure(b.fwd().degree_u32() <= 81, || {
        format!("deg {} for {w}", b.fwd().degree_u32())
    })?;
    ensure(
        verify_automorphism(&m("[x1 + x2^2; x2 + x1^2]")).is_err(),
        || "non-automorphism accepted".into(),
    )
}

fn spot_normalized() -> Result<(), String> {
    let delta = Derivation::monomial(0, &[0, 2], Scalar::one());
    let form = classify_dn_normalized(&delta).map_err(err)?;
    ensure(form.character() == Character::new(vec![1, -2]), || {
        format!("{form}")
    })?;
    let d = DiagonalElement::new(vec![Scalar::from_int(2), Scalar::from_int(3)]).map_err(err)?;
    let s = Scalar::one();
    let lhs = d
        .to_map()
        .compose(
            &flow(&delta, &s)
                .map_err(err)?
                .compose(&d.inverse().to_map())
                .map_err(err)?,
        )
        .map_err(err)?;
    ensure(lhs == m("[x1 + 2/9*x2^2; x2]"), || {
        format!("d∘exp(δ)∘d⁻¹ = {lhs}")
    })?;
    ensure(lhs == flow(&delta, &q(2, 9)).map_err(err)?, || {
        "λ(d) s".into()
    })
}

fn spot_b_formula() -> Result<(), String> {
    // x^2 d/dx sends x to m! x^{m+1} after m steps
    let mut factorial = Scalar::one();
    for step in 1..=6 {
        factorial = &factorial * &Scalar::from_int(step);
        let b = b_coefficient(&[Scalar::one()], &[1], 0, step as u32).map_err(err)?;
        ensure(b == factorial, || format!("m={step}: {b}"))?;
    }
    Ok(())
}

fn spot_flow() -> Result<(), String> {
    let delta = parse_derivation("[x2^2; 0] d/dx").map_err(err)?;
    let lnd = delta.certify(8).map_err(err)?;
    let (s, t) = (q(1, 2), q(-3, 1));
    ensure(
        lnd.flow(&s).compose(&lnd.flow(&t)).map_err(err)? == lnd.flow(&q(-5, 2)),
        || "group law".into(),
    )?;
    ensure(lnd.flow(&s) == m("[x1 + 1/2*x2^2; x2]"), || {
        format!("{}", lnd.flow(&s))
    })
}

fn spot_centralizer() -> Result<(), String> {
    let forced = commutant_support(&FiniteDiagonalGroup::full(2, 3), 2).map_err(err)?;
    ensure(forced.to_string() == "{(1,0)},{(0,1)}", || {
        format!("μ3: {forced}")
    })?;
    ensure(forced.is_forced_diagonal(), || "μ3 not forced".into())?;
    let open = commutant_support(&FiniteDiagonalGroup::full(2, 2), 3).map_err(err)?;
    ensure(!open.is_forced_diagonal(), || format!("μ2: {open}"))?;
    let cubic = m("[x1 + x1*x2^2; x2]");
    ensure(open.contains(&cubic), || {
        "x1 x2^2 should be admissible for μ2".into()
    })?;
    ensure(verify_automorphism(&cubic).is_err(), || {
        "(x1 + x1 x2^2, x2) has non-constant Jacobian".into()
    })
}

fn spot_jvk() -> Result<(), String> {
    let henon = verify_automorphism(&m("[x2; x1 + x2^2]")).map_err(err)?;
    let fz = jvk_factor(&henon).map_err(err)?;
    ensure(fz.word.eval_map() == *henon.fwd(), || {
        format!("refactored as {}", fz.word)
    })?;
    let e = verify_automorphism(&m("[x1 + x2^2; x2]")).map_err(err)?;
    let fz = jvk_factor(&e).map_err(err)?;
    ensure(fz.word.to_string() == "E1{x2^2}", || format!("{}", fz.word))
}

fn spot_theta() -> Result<(), String> {
    let swap = verify_automorphism(&m("[x2; x1]")).map_err(err)?;
    let theta = ThetaAut::new(swap, FieldAut::Conjugation);
    let got = theta.apply(&m("[x1 + i*x2^2; x2]")).map_err(err)?;
    ensure(got == m("[x1; x2 - i*x1^2]"), || format!("θ(f) = {got}"))?;
    let t = verify_automorphism(&m("[x1; x2 - 1]")).map_err(err)?;
    let got = conjugate(&t, &m("[x1 + x2^2; x2]")).map_err(err)?;
    ensure(got == m("[x1 + x2^2 + 2*x2 + 1; x2]"), || {
        format!("h_γ: {got}")
    })
}

fn spot_translation() -> Result<(), String> {
    let w = translation_lemma_witness(&Character::new(vec![1, 0, -2])).map_err(err)?;
    ensure(w == Character::new(vec![0, 0, -1]), || format!("{w}"))?;
    ensure(
        translation_lemma_witness(&Character::epsilon(2, 0)).is_err(),
        || "ε_1 has no witness".into(),
    )
}

fn spot_locally_finite() -> Result<(), String> {
    let henon = verify_automorphism(&m("[x2; x1 + x2^2]")).map_err(err)?;
    let v = locally_finite_certify(&henon, 8, 512);
    ensure(matches!(v, LocallyFinite::NotLocallyFinite { .. }), || {
        format!("Hénon: {v}")
    })?;
    let tri = verify_automorphism(&m("[2*x1 + x2^2 + x3; -x2 + x3^3; 3*x3 + 1]")).map_err(err)?;
    let v = locally_finite_certify(&tri, 64, 512);
    ensure(matches!(v, LocallyFinite::Certified { .. }), || {
        format!("triangular: {v}")
    })?;
    let cycle = verify_automorphism(&m("[x2; x3; x1]")).map_err(err)?;
    let v = locally_finite_certify(&cycle, 8, 64);
    ensure(matches!(v, LocallyFinite::Certified { .. }), || {
        format!("3-cycle: {v}")
    })
}

fn main() -> ExitCode {
    let criteria = vec![
        Criterion::run(
            1,
            "inversion round trip",
            Some(Duration::from_secs(60)),
            || vec![suite::inversion_round_trip(SEED, 200, 64)],
            spot_inversion,
        ),
        Criterion::run(
            2,
            "normalized monomial derivations",
            None,
            || vec![suite::normalized_derivation_sweep(SEED, 3, 4, 10)],
            spot_normalized,
        ),
        Criterion::run(
            3,
            "closed-form iterate coefficients",
            None,
            || vec![suite::b_formula_oracle(3, 3, 6, false)],
            spot_b_formula,
        ),
        Criterion::run(
            4,
            "flow group law",
            None,
            || vec![suite::flow_group_law(SEED, 100, false)],
            spot_flow,
        ),
        Criterion::run(
            5,
            "centralizer of finite diagonal groups",
            None,
            || {
                vec![
                    suite::centralizer_forced(),
                    suite::centralizer_sampled(SEED, 500),
                ]
            },
            spot_centralizer,
        ),
        Criterion::run(
            6,
            "plane factorization",
            None,
            || vec![suite::jvk_round_trip(SEED, 100, 64)],
            spot_jvk,
        ),
        Criterion::run(
            7,
            "theta homomorphism and h_gamma",
            None,
            || {
                vec![
                    suite::theta_homomorphism(SEED, 50),
                    suite::h_gamma_identity(3, 4),
                ]
            },
            spot_theta,
        ),
        Criterion::run(
            8,
            "translation witness",
            None,
            || vec![suite::translation_witness(4, 5)],
            spot_translation,
        ),
        Criterion::run(
            9,
            "locally finite verdicts",
            None,
            || vec![suite::locally_finite_verdicts(SEED, 20)],
            spot_locally_finite,
        ),
    ];
    for c in &criteria {
        c.report();
    }
    let passed = criteria.iter().filter(|c| c.passed()).count();
    println!(
        "{passed} of {} criteria passed (seed {SEED})",
        criteria.len()
    );
    if passed == criteria.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
