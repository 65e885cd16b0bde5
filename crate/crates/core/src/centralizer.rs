//! Endomorphisms commuting with a finite diagonal group, at bounded degree.
//!
//! For `σ = (ζ^{a_1} x_1, ..., ζ^{a_n} x_n)` the term `c x^α` of `g_i`
//! satisfies `g_i(σ x) = ζ^{⟨a,α⟩} c x^α`, so `g ∘ σ = σ ∘ g` holds exactly
//! when every such `α` has `⟨a,α⟩ ≡ a_i (mod k)`. Checking the generators
//! of the group suffices.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{check_nvars, Error, Result};
use crate::poly::{monomials_up_to, Monomial, Polynomial};
use crate::polymap::{verify_automorphism, PolyMap};
use crate::scalar::Scalar;
use crate::torus::{FiniteDiagonalGroup, DEFAULT_ENUM_BUDGET};

fn admissible(a: &[i64], alpha: &[u32], i: usize, k: u32) -> bool {
    let k = k as i64;
    let pairing: i64 = a.iter().zip(alpha).map(|(x, &e)| x * e as i64).sum();
    (pairing - a[i]).rem_euclid(k) == 0
}

/// Allowed exponent vectors per coordinate, among those of degree `<= d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutantSupport {
    degree: u32,
    allowed: Vec<Vec<Monomial>>,
}

impl CommutantSupport {
    pub fn nvars(&self) -> usize {
        self.allowed.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Allowed monomials of coordinate `i`, ascending in graded-lex order.
    pub fn allowed(&self, i: usize) -> &[Monomial] {
        &self.allowed[i]
    }

    /// Only `x_i` is allowed in coordinate `i`, so every degree-bounded
    /// commuting endomorphism is diagonal-linear.
    pub fn is_forced_diagonal(&self) -> bool {
        let n = self.nvars();
        self.allowed
            .iter()
            .enumerate()
            .all(|(i, s)| s.len() == 1 && s[0] == Monomial::var(n, i))
    }

    /// `f` has degree `<= d` and each `f_i` is supported in the allowed set.
    pub fn contains(&self, f: &PolyMap) -> bool {
        f.nvars() == self.nvars()
            && f.components()
                .iter()
                .zip(&self.allowed)
                .all(|(fi, s)| fi.terms().all(|(m, _)| s.binary_search(m).is_ok()))
    }
}

impl fmt::Display for CommutantSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.allowed.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, m) in s.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                let e: Vec<String> = m.exps().iter().map(u32::to_string).collect();
                write!(f, "({})", e.join(","))?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

pub fn commutant_support(mu: &FiniteDiagonalGroup, d: u32) -> Result<CommutantSupport> {
    if d == 0 {
        return Err(Error::InvalidArgument(
            "degree bound must be at least 1".into(),
        ));
    }
    let n = mu.nvars();
    let monomials = monomials_up_to(n, d);
    if monomials.len().saturating_mul(n) > DEFAULT_ENUM_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "{} monomials of degree <= {d} in {n} variables",
            monomials.len()
        )));
    }
    let allowed = (0..n)
        .map(|i| {
            monomials
                .iter()
                .filter(|m| {
                    mu.generators()
                        .iter()
                        .all(|a| admissible(a, m.exps(), i, mu.k()))
                })
                .cloned()
                .collect()
        })
        .collect();
    Ok(CommutantSupport { degree: d, allowed })
}

/// `f ∘ σ = σ ∘ f` for every element `σ` of the group, decided from the
/// exponent pairing.
pub fn is_in_centralizer(f: &PolyMap, mu: &FiniteDiagonalGroup) -> Result<bool> {
    check_nvars(mu.nvars(), f.nvars())?;
    let elements = mu.elements(DEFAULT_ENUM_BUDGET)?;
    Ok(elements.iter().all(|a| {
        f.components()
            .iter()
            .enumerate()
            .all(|(i, fi)| fi.terms().all(|(m, _)| admissible(a, m.exps(), i, mu.k())))
    }))
}

/// The same decision by composing with each element as an exact diagonal
/// map; `None` unless `k` divides 4.
pub fn is_in_centralizer_explicit(f: &PolyMap, mu: &FiniteDiagonalGroup) -> Result<Option<bool>> {
    check_nvars(mu.nvars(), f.nvars())?;
    let elements = mu.elements(DEFAULT_ENUM_BUDGET)?;
    for a in &elements {
        let Some(sigma) = mu.element_as_diagonal(a) else {
            return Ok(None);
        };
        let sigma = sigma.to_map();
        if f.compose(&sigma)? != sigma.compose(f)? {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralizerVerdict {
    /// The support admits only diagonal-linear maps.
    Forced,
    /// Sampled support-compatible endomorphisms, with the certified
    /// automorphisms among them that are not diagonal-linear.
    Sampled {
        samples: usize,
        certified: usize,
        counterexamples: Vec<PolyMap>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerReport {
    pub k: u32,
    pub support: CommutantSupport,
    pub verdict: CentralizerVerdict,
}

impl CentralizerReport {
    /// No certified non-diagonal automorphism was found.
    pub fn equals_dn(&self) -> bool {
        match &self.verdict {
            CentralizerVerdict::Forced => true,
            CentralizerVerdict::Sampled {
                counterexamples, ..
            } => counterexamples.is_empty(),
        }
    }
}

impl fmt::Display for CentralizerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.support.nvars();
        match &self.verdict {
            CentralizerVerdict::Forced => {
                write!(f, "forced: support = {}; centralizer = D{n}", self.support)
            }
            CentralizerVerdict::Sampled {
                samples,
                certified,
                counterexamples,
            } => {
                write!(
                    f,
                    "sampled: support = {}; {samples} candidates, {certified} certified automorphisms, {} not diagonal-linear",
                    self.support,
                    counterexamples.len()
                )?;
                if let Some(c) = counterexamples.first() {
                    write!(f, "; counterexample {c}")?;
                }
                Ok(())
            }
        }
    }
}

fn small_nonzero(rng: &mut ChaCha8Rng) -> Scalar {
    const VALUES: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-3, 1)];
    let (p, q) = VALUES[rng.gen_range(0..VALUES.len())];
    Scalar::from_ratio(p, q)
}

/// A random endomorphism supported in `support`: the diagonal term of each
/// coordinate is always present, every other allowed term with probability
/// one half.
pub fn sample_in_support(support: &CommutantSupport, rng: &mut ChaCha8Rng) -> PolyMap {
    let n = support.nvars();
    let components = (0..n)
        .map(|i| {
            let xi = Monomial::var(n, i);
            let terms = support.allowed(i).iter().filter_map(|m| {
                if *m == xi || rng.gen_bool(0.5) {
                    Some((m.clone(), small_nonzero(rng)))
                } else {
                    None
                }
            });
            Polynomial::from_terms(n, terms.collect::<Vec<_>>())
        })
        .collect();
    PolyMap::new(components).expect("n components in n variables")
}

/// Runs the automorphism decision on each candidate and returns the number
/// certified together with those that are not diagonal-linear.
pub fn audit_candidates(candidates: &[PolyMap]) -> (usize, Vec<PolyMap>) {
    let results: Vec<Option<bool>> = candidates
        .par_iter()
        .map(|g| {
            verify_automorphism(g)
                .ok()
                .map(|a| a.fwd().is_diagonal_linear())
        })
        .collect();
    let certified = results.iter().filter(|r| r.is_some()).count();
    let bad = candidates
        .iter()
        .zip(&results)
        .filter(|(_, r)| **r == Some(false))
        .map(|(g, _)| g.clone())
        .collect();
    (certified, bad)
}

/// Whether the degree-`d` centralizer of `mu` inside the automorphism group
/// is the diagonal torus: decided outright when the support forces it,
/// otherwise checked on `samples` seeded support-compatible candidates.
pub fn centralizer_equals_dn(
    mu: &FiniteDiagonalGroup,
    d: u32,
    samples: usize,
    seed: u64,
) -> Result<CentralizerReport> {
    let support = commutant_support(mu, d)?;
    let verdict = if support.is_forced_diagonal() {
        CentralizerVerdict::Forced
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let candidates: Vec<PolyMap> = (0..samples)
            .map(|_| sample_in_support(&support, &mut rng))
            .collect();
        let (certified, counterexamples) = audit_candidates(&candidates);
        CentralizerVerdict::Sampled {
            samples,
            certified,
            counterexamples,
        }
    };
    Ok(CentralizerReport {
        k: mu.k(),
        support,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::NotAutomorphismReason;
    use crate::text::parse_map;

    fn exps(s: &[Monomial]) -> Vec<Vec<u32>> {
        s.iter().map(|m| m.exps().to_vec()).collect()
    }

    #[test]
    fn support_examples() {
        let s = commutant_support(&FiniteDiagonalGroup::full(2, 2), 2).unwrap();
        assert_eq!(exps(s.allowed(0)), vec![vec![1, 0]]);
        assert_eq!(exps(s.allowed(1)), vec![vec![0, 1]]);
        let s = commutant_support(&FiniteDiagonalGroup::full(2, 3), 2).unwrap();
        assert!(s.is_forced_diagonal());
        assert_eq!(s.to_string(), "{(1,0)},{(0,1)}");
        let s = commutant_support(&FiniteDiagonalGroup::full(2, 1), 1).unwrap();
        assert_eq!(s.allowed(0).len(), 3);
        assert!(!s.is_forced_diagonal());
        let s = commutant_support(&FiniteDiagonalGroup::full(2, 2), 3).unwrap();
        assert_eq!(exps(s.allowed(0)), vec![vec![1, 0], vec![1, 2], vec![3, 0]]);
    }

    #[test]
    fn membership_examples() {
        let mu = FiniteDiagonalGroup::full(2, 2);
        let diag = parse_map("[3*x1; -x2]").unwrap();
        assert!(is_in_centralizer(&diag, &mu).unwrap());
        let e = parse_map("[x1 + x2^2; x2]").unwrap();
        assert!(!is_in_centralizer(&e, &mu).unwrap());
        assert_eq!(is_in_centralizer_explicit(&e, &mu).unwrap(), Some(false));
        let g = parse_map("[x1*x2^2; x2 + x1^2*x2]").unwrap();
        assert!(is_in_centralizer(&g, &mu).unwrap());
        assert_eq!(is_in_centralizer_explicit(&g, &mu).unwrap(), Some(true));
        assert_eq!(
            is_in_centralizer_explicit(&g, &FiniteDiagonalGroup::full(2, 3)).unwrap(),
            None
        );
    }

    #[test]
    fn forced_and_sampled_reports() {
        let r = centralizer_equals_dn(&FiniteDiagonalGroup::full(2, 3), 2, 0, 1).unwrap();
        assert_eq!(r.verdict, CentralizerVerdict::Forced);
        assert_eq!(
            r.to_string(),
            "forced: support = {(1,0)},{(0,1)}; centralizer = D2"
        );
        let r = centralizer_equals_dn(&FiniteDiagonalGroup::full(2, 2), 3, 64, 7).unwrap();
        assert!(r.equals_dn(), "{r}");
        let r = centralizer_equals_dn(&FiniteDiagonalGroup::full(1, 2), 5, 64, 7).unwrap();
        assert!(r.equals_dn(), "{r}");
    }

    #[test]
    fn compatible_non_automorphism_is_screened() {
        let g = parse_map("[x1 + x1*x2^2; x2]").unwrap();
        let s = commutant_support(&FiniteDiagonalGroup::full(2, 2), 3).unwrap();
        assert!(s.contains(&g));
        assert!(matches!(
            verify_automorphism(&g),
            Err(Error::NotAutomorphism(
                NotAutomorphismReason::NonConstantJacobian(_)
            ))
        ));
    }
}
