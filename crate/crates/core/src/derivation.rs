//! Derivations `δ = Σ h_i ∂/∂x_i`, local nilpotency, exponential flows and
//! the derivations normalized by the diagonal torus.

use std::fmt;

use crate::error::{check_nvars, Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::polymap::{Automorphism, PolyMap};
use crate::scalar::Scalar;
use crate::torus::{Character, DiagonalElement};

/// Power cap used by [`flow`] when certifying nilpotency on the fly.
pub const DEFAULT_MAX_POWER: u32 = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    coeffs: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(coeffs: Vec<Polynomial>) -> Result<Self> {
        let n = coeffs.len();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "a derivation needs at least one coefficient".into(),
            ));
        }
        for h in &coeffs {
            check_nvars(n, h.nvars())?;
        }
        Ok(Derivation { coeffs })
    }

    pub fn zero(n: usize) -> Self {
        Derivation {
            coeffs: vec![Polynomial::zero(n); n],
        }
    }

    /// `c x^γ ∂/∂x_axis`.
    pub fn monomial(axis: usize, gamma: &[u32], c: Scalar) -> Self {
        let n = gamma.len();
        let mut coeffs = vec![Polynomial::zero(n); n];
        coeffs[axis] = Polynomial::monomial(Monomial::new(gamma.to_vec()), c);
        Derivation { coeffs }
    }

    /// `Σ_j a_j x^{β + e_j} ∂/∂x_j`.
    pub fn monomial_family(a: &[Scalar], beta: &[u32]) -> Result<Self> {
        check_nvars(beta.len(), a.len())?;
        let coeffs = a
            .iter()
            .enumerate()
            .map(|(j, aj)| {
                let mut e = beta.to_vec();
                e[j] += 1;
                Polynomial::monomial(Monomial::new(e), aj.clone())
            })
            .collect();
        Derivation::new(coeffs)
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().map(|h| h.scale(c)).collect(),
        }
    }

    /// `δ(p) = Σ h_i ∂p/∂x_i`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        check_nvars(self.nvars(), p.nvars())?;
        let mut acc = Polynomial::zero(self.nvars());
        for (i, h) in self.coeffs.iter().enumerate() {
            if h.is_zero() {
                continue;
            }
            let dp = p.derivative(i);
            if !dp.is_zero() {
                acc = &acc + &(h * &dp);
            }
        }
        Ok(acc)
    }

    /// `δ^m(p)`.
    pub fn apply_power(&self, p: &Polynomial, m: u32) -> Result<Polynomial> {
        let mut q = p.clone();
        for _ in 0..m {
            if q.is_zero() {
                break;
            }
            q = self.apply(&q)?;
        }
        Ok(q)
    }

    /// Finds, for each coordinate, the least `m <= max_power` with
    /// `δ^m(x_i) = 0`.
    pub fn certify_nilpotent(&self, max_power: u32) -> Nilpotency {
        let n = self.nvars();
        let mut orders = Vec::with_capacity(n);
        for i in 0..n {
            let mut q = Polynomial::var(n, i);
            let mut m = 0;
            while !q.is_zero() {
                if m == max_power {
                    return Nilpotency::NotNilpotentWithin { max_power };
                }
                q = self.apply(&q).expect("same nvars");
                m += 1;
            }
            orders.push(m);
        }
        Nilpotency::Certified { orders }
    }

    pub fn certify(&self, max_power: u32) -> Result<Lnd> {
        match self.certify_nilpotent(max_power) {
            Nilpotency::Certified { orders } => Ok(Lnd {
                delta: self.clone(),
                orders,
            }),
            Nilpotency::NotNilpotentWithin { max_power } => Err(Error::NotNilpotent { max_power }),
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::text::write_derivation(self, f)
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    /// `orders[i]` is the least `m` with `δ^m(x_i) = 0`.
    Certified {
        orders: Vec<u32>,
    },
    NotNilpotentWithin {
        max_power: u32,
    },
}

impl fmt::Display for Nilpotency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nilpotency::Certified { orders } => {
                f.write_str("CERTIFIED orders=(")?;
                for (i, o) in orders.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{o}")?;
                }
                f.write_str(")")
            }
            Nilpotency::NotNilpotentWithin { max_power } => {
                write!(f, "NOT-NILPOTENT-WITHIN({max_power})")
            }
        }
    }
}

/// A derivation certified locally nilpotent on every coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lnd {
    delta: Derivation,
    orders: Vec<u32>,
}

impl Lnd {
    pub fn derivation(&self) -> &Derivation {
        &self.delta
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// `exp(sδ)`: component `i` is `Σ_{m < orders[i]} s^m/m! δ^m(x_i)`.
    pub fn flow(&self, s: &Scalar) -> PolyMap {
        let n = self.delta.nvars();
        let components = (0..n)
            .map(|i| {
                let mut term = Polynomial::var(n, i);
                let mut acc = term.clone();
                let mut coef = Scalar::one();
                for m in 1..self.orders[i] {
                    term = self.delta.apply(&term).expect("same nvars");
                    coef = &(&coef * s) / &Scalar::from_int(m as i64);
                    acc = &acc + &term.scale(&coef);
                }
                acc
            })
            .collect();
        PolyMap::new(components).expect("n components in n variables")
    }

    /// `exp(sδ)` with inverse `exp(-sδ)`, checked exactly.
    pub fn flow_automorphism(&self, s: &Scalar) -> Result<Automorphism> {
        Automorphism::from_pair(self.flow(s), self.flow(&-s))
    }
}

/// `exp(sδ)` after certifying nilpotency within [`DEFAULT_MAX_POWER`].
pub fn flow(delta: &Derivation, s: &Scalar) -> Result<PolyMap> {
    Ok(delta.certify(DEFAULT_MAX_POWER)?.flow(s))
}

/// `c x^γ ∂/∂x_axis` with `γ_axis = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialDerivationForm {
    pub axis: usize,
    pub gamma: Vec<u32>,
    pub c: Scalar,
}

impl MonomialDerivationForm {
    /// `e_axis - γ`.
    pub fn character(&self) -> Character {
        let mut coords: Vec<i64> = self.gamma.iter().map(|&g| -(g as i64)).collect();
        coords[self.axis] += 1;
        Character::new(coords)
    }

    pub fn to_derivation(&self) -> Derivation {
        Derivation::monomial(self.axis, &self.gamma, self.c.clone())
    }
}

impl fmt::Display for MonomialDerivationForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gamma: Vec<String> = self.gamma.iter().map(u32::to_string).collect();
        write!(
            f,
            "axis={} gamma=({}) c={} character={}",
            self.axis + 1,
            gamma.join(","),
            self.c,
            self.character()
        )
    }
}

/// Succeeds exactly when `δ = c x^γ ∂/∂x_i` with `γ_i = 0`.
pub fn classify_dn_normalized(delta: &Derivation) -> Result<MonomialDerivationForm> {
    if delta.is_zero() {
        return Err(Error::ZeroDerivation);
    }
    let mut nonzero = delta
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, h)| !h.is_zero());
    let (axis, h) = nonzero.next().expect("nonzero derivation");
    if nonzero.next().is_some() || h.num_terms() != 1 {
        return Err(Error::NotNormalized);
    }
    let (m, c) = h.leading_term().expect("one term");
    if m.exps()[axis] != 0 {
        return Err(Error::NotNormalized);
    }
    Ok(MonomialDerivationForm {
        axis,
        gamma: m.exps().to_vec(),
        c: c.clone(),
    })
}

/// The derivation of `s ↦ d ∘ exp(sδ) ∘ d⁻¹`, with coefficients
/// `t_j h_j(x/t)`.
pub fn conj_by_diagonal(d: &DiagonalElement, delta: &Derivation) -> Result<Derivation> {
    let n = delta.nvars();
    check_nvars(n, d.nvars())?;
    let t = d.scalars();
    let t_inv: Vec<Scalar> = t
        .iter()
        .map(|x| x.inv().expect("nonzero entries"))
        .collect();
    let coeffs = delta
        .coeffs
        .iter()
        .enumerate()
        .map(|(j, h)| {
            let terms = h.terms().map(|(m, c)| {
                let mut c = c * &t[j];
                for (e, ti) in m.exps().iter().zip(&t_inv) {
                    c *= &ti.pow(*e);
                }
                (m.clone(), c)
            });
            Polynomial::from_terms(n, terms.collect::<Vec<_>>())
        })
        .collect();
    Derivation::new(coeffs)
}

/// Closed form `a_i ∏_{l=1}^{m-1} (l b + a_i)` with `b = Σ a_j β_j`, the
/// coefficient of `δ^m(x_i)` for `δ = Σ a_j x^{β+e_j} ∂/∂x_j`.
pub fn b_coefficient(a: &[Scalar], beta: &[i64], i: usize, m: u32) -> Result<Scalar> {
    check_nvars(a.len(), beta.len())?;
    if beta.iter().any(|&b| b < 0) {
        return Err(Error::NegativeExponent("beta"));
    }
    if i >= a.len() {
        return Err(Error::InvalidArgument(format!(
            "index {} out of range",
            i + 1
        )));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let b = a.iter().zip(beta).fold(Scalar::zero(), |acc, (aj, &bj)| {
        &acc + &(aj * &Scalar::from_int(bj))
    });
    let mut acc = a[i].clone();
    for l in 1..m {
        acc *= &(&(&Scalar::from_int(l as i64) * &b) + &a[i]);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_derivation, parse_map, parse_poly};

    fn d(s: &str) -> Derivation {
        parse_derivation(s).unwrap()
    }

    #[test]
    fn apply_examples() {
        let delta = d("[x2; 0] d/dx");
        assert_eq!(
            delta.apply(&parse_poly("x1^2", 2).unwrap()).unwrap(),
            parse_poly("2*x1*x2", 2).unwrap()
        );
        assert!(delta
            .apply(&Polynomial::constant(2, Scalar::from_int(7)))
            .unwrap()
            .is_zero());
        assert!(delta.apply(&Polynomial::one(3)).is_err());
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(
            d("[x2; 0] d/dx").certify_nilpotent(8),
            Nilpotency::Certified { orders: vec![2, 1] }
        );
        assert_eq!(
            d("[x1^2; 0] d/dx").certify_nilpotent(10),
            Nilpotency::NotNilpotentWithin { max_power: 10 }
        );
        assert_eq!(
            Derivation::zero(3).certify_nilpotent(1),
            Nilpotency::Certified {
                orders: vec![1, 1, 1]
            }
        );
        assert_eq!(
            d("[x2; 0] d/dx").certify_nilpotent(8).to_string(),
            "CERTIFIED orders=(2,1)"
        );
    }

    #[test]
    fn flow_examples() {
        let s = Scalar::from_ratio(5, 3);
        let f = flow(&d("[x2; 0] d/dx"), &s).unwrap();
        assert_eq!(f, parse_map("[x1 + 5/3*x2; x2]").unwrap());
        assert!(flow(&d("[x2; 0] d/dx"), &Scalar::zero())
            .unwrap()
            .is_identity());
        assert_eq!(
            flow(&d("[x2^2; 0] d/dx"), &Scalar::one()).unwrap(),
            parse_map("[x1 + x2^2; x2]").unwrap()
        );
        assert!(matches!(
            flow(&d("[x1^2; 0] d/dx"), &s),
            Err(Error::NotNilpotent { .. })
        ));
    }

    #[test]
    fn flow_of_triangular_is_automorphism() {
        let lnd = d("[x2^2 + x3; x3^2; 1] d/dx").certify(32).unwrap();
        let a = lnd.flow_automorphism(&Scalar::from_int(2)).unwrap();
        assert_eq!(a.inv(), &lnd.flow(&Scalar::from_int(-2)));
    }

    #[test]
    fn classification_examples() {
        let form = classify_dn_normalized(&d("[x2^2; 0] d/dx")).unwrap();
        assert_eq!((form.axis, form.gamma.clone()), (0, vec![0, 2]));
        assert_eq!(form.character().coords(), &[1, -2]);
        assert!(matches!(
            classify_dn_normalized(&d("[x2; x1] d/dx")),
            Err(Error::NotNormalized)
        ));
        let t = classify_dn_normalized(&d("[0; 0; 5] d/dx")).unwrap();
        assert_eq!(t.character().coords(), &[0, 0, 1]);
        assert!(matches!(
            classify_dn_normalized(&Derivation::zero(2)),
            Err(Error::ZeroDerivation)
        ));
        assert!(classify_dn_normalized(&d("[x1*x2; 0] d/dx")).is_err());
    }

    #[test]
    fn conjugation_scales_monomial_derivations() {
        let delta = d("[x2^2; 0] d/dx");
        let t = DiagonalElement::new(vec![Scalar::from_int(3), Scalar::from_int(2)]).unwrap();
        let expected = delta.scale(&Scalar::from_ratio(3, 4));
        assert_eq!(conj_by_diagonal(&t, &delta).unwrap(), expected);
        let id = DiagonalElement::identity(2);
        assert_eq!(conj_by_diagonal(&id, &delta).unwrap(), delta);
    }

    #[test]
    fn b_coefficient_examples() {
        let a = [Scalar::from_int(1), Scalar::from_int(-1)];
        assert_eq!(
            b_coefficient(&a, &[1, 0], 0, 2).unwrap(),
            Scalar::from_int(2)
        );
        assert_eq!(
            b_coefficient(&a, &[3, 1], 1, 1).unwrap(),
            Scalar::from_int(-1)
        );
        let a = [Scalar::from_int(1), Scalar::from_int(1)];
        assert_eq!(
            b_coefficient(&a, &[1, 1], 0, 3).unwrap(),
            Scalar::from_int(15)
        );
        assert!(matches!(
            b_coefficient(&a, &[-1, 1], 0, 3),
            Err(Error::NegativeExponent(_))
        ));
    }

    #[test]
    fn b_coefficient_matches_iteration() {
        let a = [Scalar::from_int(1), Scalar::from_int(1)];
        let delta = Derivation::monomial_family(&a, &[1, 1]).unwrap();
        let x1 = Polynomial::var(2, 0);
        let cube = delta.apply_power(&x1, 3).unwrap();
        assert_eq!(
            cube,
            Polynomial::monomial(Monomial::new(vec![4, 3]), Scalar::from_int(15))
        );
    }
}
