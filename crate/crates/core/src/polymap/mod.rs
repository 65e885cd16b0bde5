//! Polynomial endomorphisms of affine n-space and certified automorphisms.

mod inverse;
mod locally_finite;
mod theta;

pub use inverse::{formal_inverse, gabber_bound, verify_automorphism, Automorphism};
pub use locally_finite::{locally_finite_certify, LocallyFinite};
pub use theta::{conjugate, ThetaAut};

use std::fmt;

use crate::error::{check_nvars, Error, Result};
use crate::linalg::{poly_det, Matrix};
use crate::poly::{Degree, Monomial, Polynomial};
use crate::scalar::{FieldAut, Scalar};

/// `f = (f_1, ..., f_n)` acting on points by `a ↦ (f_1(a), ..., f_n(a))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMap {
    components: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "a map needs at least one component".into(),
            ));
        }
        for c in &components {
            check_nvars(n, c.nvars())?;
        }
        Ok(PolyMap { components })
    }

    pub fn identity(n: usize) -> Self {
        PolyMap {
            components: (0..n).map(|i| Polynomial::var(n, i)).collect(),
        }
    }

    /// `x ↦ x + v`.
    pub fn translation(v: &[Scalar]) -> Self {
        let n = v.len();
        PolyMap {
            components: v
                .iter()
                .enumerate()
                .map(|(i, vi)| &Polynomial::var(n, i) + &Polynomial::constant(n, vi.clone()))
                .collect(),
        }
    }

    /// `x ↦ (t_1 x_1, ..., t_n x_n)`.
    pub fn diagonal(t: &[Scalar]) -> Self {
        let n = t.len();
        PolyMap {
            components: t
                .iter()
                .enumerate()
                .map(|(i, ti)| Polynomial::var(n, i).scale(ti))
                .collect(),
        }
    }

    /// `x ↦ M x + v`.
    pub fn affine(matrix: &[Vec<Scalar>], shift: &[Scalar]) -> Result<Self> {
        let n = matrix.len();
        check_nvars(n, shift.len())?;
        let mut components = Vec::with_capacity(n);
        for (row, v) in matrix.iter().zip(shift) {
            check_nvars(n, row.len())?;
            let mut p = Polynomial::constant(n, v.clone());
            for (j, a) in row.iter().enumerate() {
                p.add_term(Monomial::var(n, j), a);
            }
            components.push(p);
        }
        Ok(PolyMap { components })
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_identity(&self) -> bool {
        *self == PolyMap::identity(self.nvars())
    }

    /// `self ∘ g`, with components `f_i(g_1, ..., g_n)`.
    pub fn compose(&self, g: &PolyMap) -> Result<PolyMap> {
        check_nvars(self.nvars(), g.nvars())?;
        let components = self
            .components
            .iter()
            .map(|fi| fi.substitute(&g.components))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMap { components })
    }

    /// `self^m` for `m >= 0`.
    pub fn power(&self, m: u32) -> PolyMap {
        let mut acc = PolyMap::identity(self.nvars());
        for _ in 0..m {
            acc = self.compose(&acc).expect("same nvars");
        }
        acc
    }

    /// Maximum component degree.
    pub fn degree(&self) -> Degree {
        self.components
            .iter()
            .map(Polynomial::degree)
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    /// Degree as an integer, with the zero map reported as 0.
    pub fn degree_u32(&self) -> u32 {
        self.degree().finite().unwrap_or(0)
    }

    /// The matrix `(∂f_i/∂x_j)`.
    pub fn jacobian(&self) -> Vec<Vec<Polynomial>> {
        let n = self.nvars();
        self.components
            .iter()
            .map(|fi| (0..n).map(|j| fi.derivative(j)).collect())
            .collect()
    }

    pub fn jacobian_det(&self) -> Polynomial {
        poly_det(&self.jacobian(), self.nvars())
    }

    /// `f(0)`.
    pub fn constant_part(&self) -> Vec<Scalar> {
        self.components
            .iter()
            .map(Polynomial::constant_term)
            .collect()
    }

    /// Coefficient matrix of the degree-one part.
    pub fn linear_part(&self) -> Matrix {
        let n = self.nvars();
        self.components
            .iter()
            .map(|fi| (0..n).map(|j| fi.coeff(&Monomial::var(n, j))).collect())
            .collect()
    }

    pub fn is_affine(&self) -> bool {
        self.degree() <= Degree::Finite(1)
    }

    /// Every component is `c_i x_i` with `c_i != 0`.
    pub fn is_diagonal_linear(&self) -> bool {
        let n = self.nvars();
        self.components.iter().enumerate().all(|(i, fi)| {
            fi.num_terms() == 1
                && fi
                    .leading_term()
                    .is_some_and(|(m, _)| *m == Monomial::var(n, i))
        })
    }

    pub fn apply_field_aut(&self, tau: FieldAut) -> PolyMap {
        PolyMap {
            components: self
                .components
                .iter()
                .map(|p| p.apply_field_aut(tau))
                .collect(),
        }
    }

    /// `f - f(0)`, the map moved so that the origin is fixed.
    pub fn without_constant(&self) -> PolyMap {
        let n = self.nvars();
        PolyMap {
            components: self
                .components
                .iter()
                .map(|p| {
                    let mut q = p.clone();
                    q.add_term(Monomial::one(n), &-p.constant_term());
                    q
                })
                .collect(),
        }
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Vec<Scalar>> {
        self.components.iter().map(|p| p.eval(point)).collect()
    }
}

impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::text::write_map(self, f)
    }
}

impl fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_map;

    fn m(s: &str) -> PolyMap {
        parse_map(s).unwrap()
    }

    #[test]
    fn compose_examples() {
        let f = m("[x1 + x2^2; x2]");
        let g = m("[x1; x2 + x1^2]");
        assert_eq!(f.compose(&g).unwrap(), m("[x1 + (x2 + x1^2)^2; x2 + x1^2]"));
        assert_eq!(PolyMap::identity(2).compose(&f).unwrap(), f);
        let d = PolyMap::diagonal(&[Scalar::from_int(2), Scalar::from_int(3)]);
        let e = PolyMap::diagonal(&[Scalar::from_int(5), Scalar::from_ratio(1, 3)]);
        assert_eq!(
            d.compose(&e).unwrap(),
            PolyMap::diagonal(&[Scalar::from_int(10), Scalar::from_int(1)])
        );
        assert!(f.compose(&PolyMap::identity(3)).is_err());
    }

    #[test]
    fn degrees() {
        assert_eq!(m("[x1 + x2^2; x2]").degree(), Degree::Finite(2));
        assert_eq!(PolyMap::identity(3).degree(), Degree::Finite(1));
        assert_eq!(
            m("[x1 + (x2 + x1^2)^2; x2 + x1^2]").degree(),
            Degree::Finite(4)
        );
    }

    #[test]
    fn jacobians() {
        assert_eq!(PolyMap::identity(3).jacobian_det(), Polynomial::one(3));
        assert_eq!(m("[x1 + x2^2; x2]").jacobian_det(), Polynomial::one(2));
        assert_eq!(
            m("[x1^2; x2]").jacobian_det(),
            Polynomial::var(2, 0).scale(&Scalar::from_int(2))
        );
    }

    #[test]
    fn new_rejects_ragged_components() {
        assert!(PolyMap::new(vec![Polynomial::var(3, 0), Polynomial::var(3, 1)]).is_err());
        assert!(PolyMap::new(vec![]).is_err());
    }
}
