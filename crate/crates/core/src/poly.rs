//! Sparse multivariate polynomials over [`Scalar`].
//!
//! Terms live in a `BTreeMap` keyed by exponent vector under graded
//! lexicographic order, so iteration runs from the lowest-degree term up and
//! the canonical printer walks it in reverse. Zero coefficients are never
//! stored, which makes structural equality coincide with polynomial equality.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{check_nvars, Result};
use crate::scalar::{FieldAut, Scalar};

/// Dense exponent vector of length `nvars`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The exponent vector of `x_{var+1}` (variables are 0-based here).
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

/// Every monomial in `nvars` variables of total degree at most `d`, in
/// ascending graded-lex order.
pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    fn fill(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial(prefix.clone()));
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            fill(prefix, left - 1, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(&mut Vec::with_capacity(nvars), nvars, d, &mut out);
    out.sort();
    out
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total degree, with a distinguished value for the zero polynomial that sits
/// below every finite degree and absorbs addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Scalar::one())
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Polynomial::monomial(Monomial::one(nvars), c)
    }

    /// The coordinate function `x_{var+1}`.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(
            var < nvars,
            "variable index {var} out of range for {nvars} variables"
        );
        Polynomial::monomial(Monomial::var(nvars, var), Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    /// Sums the given terms, merging repeated monomials and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length does not match nvars");
            p.add_term(m, &c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(
        &self,
    ) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::NegInfinity, |m| Degree::Finite(m.degree()))
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Homogeneous component of degree `k`.
    pub fn homogeneous(&self, k: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Top homogeneous component; zero for the zero polynomial.
    pub fn leading_form(&self) -> Polynomial {
        match self.degree() {
            Degree::NegInfinity => self.clone(),
            Degree::Finite(d) => self.homogeneous(d),
        }
    }

    /// Drops every term of total degree above `k`.
    pub fn truncate(&self, k: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_nvars(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_nvars(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_nvars(self.nvars, other.nvars)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.nvars));
        }
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(small.terms.len() * big.terms.len() / 2 + 1);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += &c,
                }
            }
        }
        Ok(Polynomial {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `x_{var+1}`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), &(c * &Scalar::from_int(e as i64)));
        }
        out
    }

    /// `p(f_1, ..., f_n)`; the pullback of `p` along the map with components `f`.
    pub fn substitute(&self, f: &[Polynomial]) -> Result<Polynomial> {
        check_nvars(self.nvars, f.len())?;
        let target = f.first().map_or(self.nvars, Polynomial::nvars);
        for fi in f {
            check_nvars(target, fi.nvars)?;
        }
        let terms: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        Ok(horner(&terms, 0, f, target))
    }

    /// Applies a field automorphism to every coefficient.
    pub fn apply_field_aut(&self, tau: FieldAut) -> Polynomial {
        match tau {
            FieldAut::Identity => self.clone(),
            FieldAut::Conjugation => Polynomial {
                nvars: self.nvars,
                terms: self
                    .terms
                    .iter()
                    .map(|(m, c)| (m.clone(), c.conj()))
                    .collect(),
            },
        }
    }

    /// Evaluates at a point.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        check_nvars(self.nvars, point.len())?;
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= &x.pow(e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// If `self == c * other` for a scalar `c`, returns `c`.
    pub fn ratio_to(&self, other: &Polynomial) -> Option<Scalar> {
        if self.nvars != other.nvars || self.terms.len() != other.terms.len() {
            return None;
        }
        let (m, c) = self.leading_term()?;
        let d = other.terms.get(m)?;
        let ratio = c / d;
        (other.scale(&ratio) == *self).then_some(ratio)
    }
}

/// Horner evaluation of `terms` in variables `var..`, substituting `f`.
fn horner(
    terms: &[(&Monomial, &Scalar)],
    var: usize,
    f: &[Polynomial],
    target: usize,
) -> Polynomial {
    if terms.is_empty() {
        return Polynomial::zero(target);
    }
    if var == f.len() {
        let mut c = Scalar::zero();
        for (_, t) in terms {
            c += t;
        }
        return Polynomial::constant(target, c);
    }
    let mut groups: BTreeMap<u32, Vec<(&Monomial, &Scalar)>> = BTreeMap::new();
    for &(m, c) in terms {
        groups.entry(m.0[var]).or_default().push((m, c));
    }
    let mut acc = Polynomial::zero(target);
    let mut current: Option<u32> = None;
    for (&e, group) in groups.iter().rev() {
        if let Some(prev) = current {
            for _ in e..prev {
                acc = &acc * &f[var];
            }
        }
        acc = &acc + &horner(group, var + 1, f, target);
        current = Some(e);
    }
    if let Some(last) = current {
        for _ in 0..last {
            acc = &acc * &f[var];
        }
    }
    acc
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::text::write_polynomial(self, f)
    }
}

// Operator forms panic on a variable-count mismatch; the `checked_*` methods
// report it instead.
macro_rules! poly_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs)
                    .expect("polynomial variable-count mismatch")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn c(n: usize, v: i64) -> Polynomial {
        Polynomial::constant(n, Scalar::from_int(v))
    }

    #[test]
    fn difference_of_squares() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        let lhs = (&x1 + &x2) * (&x1 - &x2);
        assert_eq!(lhs, &x1 * &x1 - &x2 * &x2);
    }

    #[test]
    fn additive_identity_and_binomial() {
        let x1 = x(2, 0);
        let p = &x1 * &x(2, 1) + c(2, 7);
        assert_eq!(&p + &Polynomial::zero(2), p);
        let sq = (&x1 + &c(2, 1)).pow(2);
        assert_eq!(sq, &x1 * &x1 + x1.scale(&Scalar::from_int(2)) + c(2, 1));
    }

    #[test]
    fn mismatched_nvars_is_an_error() {
        assert!(x(2, 0).checked_add(&x(3, 0)).is_err());
        assert!(x(2, 0).checked_mul(&x(3, 0)).is_err());
    }

    #[test]
    fn degrees() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        assert_eq!((&x1 * &x2.pow(2) + &x1).degree(), Degree::Finite(3));
        assert_eq!(Polynomial::zero(2).degree(), Degree::NegInfinity);
        assert_eq!((&x1 + &c(2, 1)).pow(3).degree(), Degree::Finite(3));
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(Degree::NegInfinity + Degree::Finite(4), Degree::NegInfinity);
    }

    #[test]
    fn substitution_examples() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        let f = [&x1 + &x2, x2.clone()];
        let expected = x1.pow(2) + (&x1 * &x2).scale(&Scalar::from_int(2)) + x2.pow(2);
        assert_eq!(x1.pow(2).substitute(&f).unwrap(), expected);
        assert_eq!(x1.substitute(&f).unwrap(), f[0]);
        let p = x1.pow(3) * &x2 - c(2, 5);
        assert_eq!(p.substitute(&[x1.clone(), x2.clone()]).unwrap(), p);
    }

    #[test]
    fn substitution_into_fewer_variables() {
        let p = x(2, 0) * x(2, 1);
        let t = x(1, 0);
        assert_eq!(p.substitute(&[t.clone(), t.clone()]).unwrap(), t.pow(2));
    }

    #[test]
    fn conjugation_of_coefficients() {
        let x1 = x(1, 0);
        let p = x1.scale(&Scalar::i()) + Polynomial::constant(1, Scalar::from_ratio(1, 2));
        let q = x1.scale(&-Scalar::i()) + Polynomial::constant(1, Scalar::from_ratio(1, 2));
        assert_eq!(p.apply_field_aut(FieldAut::Conjugation), q);
        assert_eq!(p.apply_field_aut(FieldAut::Identity), p);
    }

    #[test]
    fn derivative_and_forms() {
        let (x1, x2) = (x(2, 0), x(2, 1));
        let p = x1.pow(2) * &x2 + x2.pow(2) + &x1;
        assert_eq!(
            p.derivative(0),
            (&x1 * &x2).scale(&Scalar::from_int(2)) + c(2, 1)
        );
        assert_eq!(p.leading_form(), x1.pow(2) * &x2);
        assert_eq!(p.truncate(2), x2.pow(2) + &x1);
        assert_eq!(
            p.scale(&Scalar::from_int(3)).ratio_to(&p),
            Some(Scalar::from_int(3))
        );
        assert_eq!(p.ratio_to(&x1), None);
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![0, 2]);
        let b = Monomial::new(vec![1, 0]);
        let c = Monomial::new(vec![2, 0]);
        assert!(b < a);
        assert!(a < c);
    }
}
