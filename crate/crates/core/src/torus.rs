//! The diagonal torus `D_n`, its characters, the unipotent characters `X_u`,
//! finite subgroups `μ_k` and dominance-order combinatorics.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{check_nvars, Error, Result};
use crate::polymap::{Automorphism, PolyMap};
use crate::scalar::Scalar;

/// Default cap on the number of enumerated group elements.
pub const DEFAULT_ENUM_BUDGET: usize = 1 << 16;

/// `λ = Σ λ_j ε_j`, acting on `d = diag(t)` by `∏ t_j^{λ_j}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(Vec<i64>);

impl Character {
    pub fn new(coords: Vec<i64>) -> Self {
        Character(coords)
    }

    pub fn zero(n: usize) -> Self {
        Character(vec![0; n])
    }

    /// `ε_i`, zero-based.
    pub fn epsilon(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Character(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &Character {
    type Output = Character;
    fn add(self, rhs: &Character) -> Character {
        assert_eq!(self.nvars(), rhs.nvars(), "character length mismatch");
        Character(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Character {
    type Output = Character;
    fn sub(self, rhs: &Character) -> Character {
        self + &-rhs
    }
}

impl Neg for &Character {
    type Output = Character;
    fn neg(self) -> Character {
        Character(self.0.iter().map(|a| -a).collect())
    }
}

/// `diag(t_1, ..., t_n)` with every `t_j != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalElement {
    scalars: Vec<Scalar>,
}

impl DiagonalElement {
    pub fn new(scalars: Vec<Scalar>) -> Result<Self> {
        if scalars.iter().any(Scalar::is_zero) {
            return Err(Error::ZeroDiagonalEntry);
        }
        if scalars.is_empty() {
            return Err(Error::InvalidArgument("empty diagonal element".into()));
        }
        Ok(DiagonalElement { scalars })
    }

    pub fn identity(n: usize) -> Self {
        DiagonalElement {
            scalars: vec![Scalar::one(); n],
        }
    }

    pub fn scalars(&self) -> &[Scalar] {
        &self.scalars
    }

    pub fn nvars(&self) -> usize {
        self.scalars.len()
    }

    pub fn mul(&self, other: &DiagonalElement) -> Result<DiagonalElement> {
        check_nvars(self.nvars(), other.nvars())?;
        Ok(DiagonalElement {
            scalars: self
                .scalars
                .iter()
                .zip(&other.scalars)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn inverse(&self) -> DiagonalElement {
        DiagonalElement {
            scalars: self
                .scalars
                .iter()
                .map(|t| t.inv().expect("nonzero"))
                .collect(),
        }
    }

    pub fn to_map(&self) -> PolyMap {
        PolyMap::diagonal(&self.scalars)
    }

    pub fn to_automorphism(&self) -> Automorphism {
        Automorphism::from_pair(self.to_map(), self.inverse().to_map())
            .expect("diagonal maps with nonzero entries are invertible")
    }
}

/// `λ(d) = ∏ t_j^{λ_j}`.
pub fn eval_character(lambda: &Character, d: &DiagonalElement) -> Result<Scalar> {
    check_nvars(lambda.nvars(), d.nvars())?;
    let mut acc = Scalar::one();
    for (t, &l) in d.scalars().iter().zip(lambda.coords()) {
        acc *= &t.powi(l).expect("nonzero entries");
    }
    Ok(acc)
}

/// For `d = (ζ^{a_1}, ..., ζ^{a_n})` with `ζ` a primitive `k`-th root of
/// unity, `λ(d) = ζ^e` with `e` returned in `0..k`.
pub fn eval_character_mod(lambda: &Character, a: &[i64], k: u32) -> Result<u32> {
    check_nvars(lambda.nvars(), a.len())?;
    let k = k as i64;
    let e: i64 = lambda
        .coords()
        .iter()
        .zip(a)
        .map(|(l, x)| (l * x).rem_euclid(k))
        .sum();
    Ok(e.rem_euclid(k) as u32)
}

/// `ζ_k^e` for the primitive root `ζ_k = i^{4/k}`, defined when `k` divides 4.
pub fn root_of_unity(k: u32, e: i64) -> Option<Scalar> {
    if k == 0 || 4 % k != 0 {
        return None;
    }
    let quarter_turns = (e * (4 / k as i64)).rem_euclid(4);
    Some(Scalar::i().pow(quarter_turns as u32))
}

/// Exactly one coordinate equals 1 and the others are `<= 0`.
pub fn is_in_xu(lambda: &Character) -> bool {
    let ones = lambda.coords().iter().filter(|&&c| c == 1).count();
    ones == 1 && lambda.coords().iter().all(|&c| c == 1 || c <= 0)
}

/// All of `X_u(D_n)` inside the box `|λ_j| <= bound`: grouped by the axis
/// carrying the 1, the other coordinates running through `0, -1, ..., -bound`
/// in lexicographic order.
pub fn enumerate_xu(n: usize, bound: u32) -> Vec<Character> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let b = bound as i64;
    for axis in 0..n {
        let mut rest = vec![0i64; n - 1];
        loop {
            let mut coords = Vec::with_capacity(n);
            coords.extend_from_slice(&rest[..axis]);
            coords.push(1);
            coords.extend_from_slice(&rest[axis..]);
            out.push(Character(coords));
            // Odometer over {0, -1, ..., -b}, last position fastest.
            let mut pos = rest.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                if rest[pos] > -b {
                    rest[pos] -= 1;
                    for r in &mut rest[pos + 1..] {
                        *r = 0;
                    }
                    pos = usize::MAX;
                    break;
                }
            }
            if pos != usize::MAX {
                break;
            }
        }
    }
    out
}

/// Weakly decreasing coordinates.
pub fn is_dominant(lambda: &Character) -> bool {
    lambda.coords().windows(2).all(|w| w[0] >= w[1])
}

/// `λ' ≼ λ`: equal sums and every partial sum of `λ'` at most that of `λ`.
pub fn dominance_leq(lambda_prime: &Character, lambda: &Character) -> Result<bool> {
    check_nvars(lambda.nvars(), lambda_prime.nvars())?;
    if lambda_prime.sum() != lambda.sum() {
        return Ok(false);
    }
    let (mut p, mut q) = (0i64, 0i64);
    for (a, b) in lambda_prime.coords().iter().zip(lambda.coords()) {
        p += a;
        q += b;
        if p > q {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For dominant `λ ∈ X_u`, `λ != ε_1`, with `k` the first index where
/// `λ_k < 0`, returns `(λ_k + 1) ε_k + λ_{k+1} ε_{k+1} + ...`.
pub fn translation_lemma_witness(lambda: &Character) -> Result<Character> {
    if !is_in_xu(lambda) {
        return Err(Error::InvalidCharacter(format!("{lambda} is not in X_u")));
    }
    if !is_dominant(lambda) {
        return Err(Error::InvalidCharacter(format!("{lambda} is not dominant")));
    }
    let k = lambda
        .coords()
        .iter()
        .position(|&c| c < 0)
        .ok_or_else(|| Error::InvalidCharacter(format!("{lambda} is epsilon_1")))?;
    let mut coords = vec![0; lambda.nvars()];
    coords[k] = lambda.coords()[k] + 1;
    coords[k + 1..].copy_from_slice(&lambda.coords()[k + 1..]);
    Ok(Character(coords))
}

/// A subgroup of `μ_k ⊂ D_n`. An exponent vector `a` names the element
/// `(ζ^{a_1}, ..., ζ^{a_n})`, `ζ` a primitive `k`-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDiagonalGroup {
    n: usize,
    k: u32,
    generators: Vec<Vec<i64>>,
}

impl FiniteDiagonalGroup {
    /// All of `μ_k ≅ (Z/k)^n`, generated by the `e_i`.
    pub fn full(n: usize, k: u32) -> Self {
        let generators = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        FiniteDiagonalGroup { n, k, generators }
    }

    /// The scalar subgroup generated by `(ζ, ..., ζ)`.
    pub fn scalar(n: usize, k: u32) -> Self {
        FiniteDiagonalGroup {
            n,
            k,
            generators: vec![vec![1; n]],
        }
    }

    pub fn with_generators(n: usize, k: u32, generators: Vec<Vec<i64>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be positive".into()));
        }
        for g in &generators {
            check_nvars(n, g.len())?;
        }
        let generators = generators
            .into_iter()
            .map(|g| g.into_iter().map(|a| a.rem_euclid(k as i64)).collect())
            .collect();
        Ok(FiniteDiagonalGroup { n, k, generators })
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn is_full(&self) -> bool {
        *self == FiniteDiagonalGroup::full(self.n, self.k)
    }

    /// Every element, as exponent vectors in `0..k`, closed under the group
    /// law and listed with the first coordinate varying fastest.
    pub fn elements(&self, budget: usize) -> Result<Vec<Vec<i64>>> {
        let k = self.k as i64;
        if self.is_full() {
            let size = (self.k as u128)
                .checked_pow(self.n as u32)
                .unwrap_or(u128::MAX);
            if size > budget as u128 {
                return Err(Error::BudgetExceeded(format!(
                    "{size} elements, budget {budget}"
                )));
            }
        }
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut frontier = vec![vec![0; self.n]];
        seen.insert(vec![0; self.n]);
        while let Some(a) = frontier.pop() {
            for g in &self.generators {
                let b: Vec<i64> = a
                    .iter()
                    .zip(g)
                    .map(|(x, y)| (x + y).rem_euclid(k))
                    .collect();
                if seen.insert(b.clone()) {
                    if seen.len() > budget {
                        return Err(Error::BudgetExceeded(format!(
                            "more than {budget} elements"
                        )));
                    }
                    frontier.push(b);
                }
            }
        }
        let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
        out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        Ok(out)
    }

    /// The element as an exact diagonal map, when `k` divides 4.
    pub fn element_as_diagonal(&self, a: &[i64]) -> Option<DiagonalElement> {
        let scalars = a
            .iter()
            .map(|&e| root_of_unity(self.k, e))
            .collect::<Option<Vec<_>>>()?;
        DiagonalElement::new(scalars).ok()
    }
}

/// [`FiniteDiagonalGroup::elements`] under [`DEFAULT_ENUM_BUDGET`].
pub fn mu_elements(mu: &FiniteDiagonalGroup) -> Result<Vec<Vec<i64>>> {
    mu.elements(DEFAULT_ENUM_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(v: &[i64]) -> Character {
        Character::new(v.to_vec())
    }

    #[test]
    fn character_evaluation() {
        let t1 = Scalar::from_int(3);
        let t2 = Scalar::from_ratio(-1, 2);
        let d = DiagonalElement::new(vec![t1.clone(), t2.clone()]).unwrap();
        assert_eq!(
            eval_character(&ch(&[1, -2]), &d).unwrap(),
            &t1 / &(&t2 * &t2)
        );
        assert_eq!(eval_character(&ch(&[0, 0]), &d).unwrap(), Scalar::one());
        let d = DiagonalElement::new(vec![Scalar::from_int(2), Scalar::from_int(3)]).unwrap();
        assert_eq!(
            eval_character(&ch(&[1, 1]), &d).unwrap(),
            Scalar::from_int(6)
        );
        assert!(DiagonalElement::new(vec![Scalar::zero()]).is_err());
    }

    #[test]
    fn roots_of_unity_agree_with_exponents() {
        let lambda = ch(&[3, -1]);
        for a in [[1i64, 0], [1, 3], [2, 2]] {
            let e = eval_character_mod(&lambda, &a, 4).unwrap();
            let mu = FiniteDiagonalGroup::full(2, 4);
            let d = mu.element_as_diagonal(&a).unwrap();
            assert_eq!(
                eval_character(&lambda, &d).unwrap(),
                root_of_unity(4, e as i64).unwrap()
            );
        }
        assert!(root_of_unity(3, 1).is_none());
    }

    #[test]
    fn xu_membership() {
        assert!(is_in_xu(&ch(&[1, -2])));
        assert!(!is_in_xu(&ch(&[0, 0])));
        assert!(!is_in_xu(&ch(&[1, 1])));
        assert!(!is_in_xu(&ch(&[2, -1])));
    }

    #[test]
    fn xu_enumeration() {
        let got: Vec<String> = enumerate_xu(2, 2).iter().map(ToString::to_string).collect();
        assert_eq!(
            got,
            ["(1,0)", "(1,-1)", "(1,-2)", "(0,1)", "(-1,1)", "(-2,1)"]
        );
        assert_eq!(enumerate_xu(1, 0), vec![ch(&[1])]);
        assert_eq!(enumerate_xu(2, 0), vec![ch(&[1, 0]), ch(&[0, 1])]);
        assert_eq!(enumerate_xu(3, 1).len(), 12);
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&ch(&[0, 0]), &ch(&[1, -1])).unwrap());
        assert!(dominance_leq(&ch(&[1, -1]), &ch(&[1, -1])).unwrap());
        assert!(!dominance_leq(&ch(&[1, -1]), &ch(&[0, 0])).unwrap());
        assert!(dominance_leq(&ch(&[1]), &ch(&[1, 0])).is_err());
    }

    #[test]
    fn witness_examples() {
        assert_eq!(
            translation_lemma_witness(&ch(&[1, -1])).unwrap(),
            ch(&[0, 0])
        );
        assert_eq!(
            translation_lemma_witness(&ch(&[1, 0, -2])).unwrap(),
            ch(&[0, 0, -1])
        );
        assert!(translation_lemma_witness(&ch(&[1, 0])).is_err());
        assert!(translation_lemma_witness(&ch(&[0, 1])).is_err());
    }

    #[test]
    fn group_elements() {
        let e = mu_elements(&FiniteDiagonalGroup::full(2, 2)).unwrap();
        assert_eq!(e, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(
            mu_elements(&FiniteDiagonalGroup::full(1, 3)).unwrap().len(),
            3
        );
        assert_eq!(
            mu_elements(&FiniteDiagonalGroup::full(3, 2)).unwrap().len(),
            8
        );
        assert_eq!(
            mu_elements(&FiniteDiagonalGroup::scalar(3, 5))
                .unwrap()
                .len(),
            5
        );
        assert!(FiniteDiagonalGroup::full(4, 10).elements(100).is_err());
    }
}
