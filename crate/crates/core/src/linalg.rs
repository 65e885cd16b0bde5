//! Exact linear algebra over `Q(i)`: matrix inversion, polynomial
//! determinants, and incremental spans of polynomials.

use std::collections::{BTreeMap, HashMap};

use crate::poly::{Monomial, Polynomial};
use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity_matrix(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse; `None` if singular.
pub fn invert(m: &[Vec<Scalar>]) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut inv = identity_matrix(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].inv()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let t = &factor * &a[col][j];
                a[r][j] = &a[r][j] - &t;
                let t = &factor * &inv[col][j];
                inv[r][j] = &inv[r][j] - &t;
            }
        }
    }
    Some(inv)
}

pub fn mat_vec(m: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

/// Determinant of a square matrix of polynomials by cofactor expansion along
/// rows, memoized on the set of remaining columns.
pub fn poly_det(m: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(nvars);
    }
    let mut memo: HashMap<u32, Polynomial> = HashMap::new();
    det_rec(m, 0, (1u32 << n) - 1, &mut memo, nvars)
}

fn det_rec(
    m: &[Vec<Polynomial>],
    row: usize,
    cols: u32,
    memo: &mut HashMap<u32, Polynomial>,
    nvars: usize,
) -> Polynomial {
    if row == m.len() {
        return Polynomial::one(nvars);
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let mut acc = Polynomial::zero(nvars);
    let mut sign_positive = true;
    for col in 0..m.len() {
        if cols & (1 << col) == 0 {
            continue;
        }
        if !m[row][col].is_zero() {
            let minor = det_rec(m, row + 1, cols & !(1 << col), memo, nvars);
            let term = &m[row][col] * &minor;
            acc = if sign_positive {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        sign_positive = !sign_positive;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// A subspace of polynomials kept in echelon form: every basis vector has a
/// distinct pivot (its leading monomial) and no other basis vector carries a
/// nonzero coefficient there.
#[derive(Clone, Debug, Default)]
pub struct LinearSpan {
    basis: BTreeMap<Monomial, Polynomial>,
}

impl LinearSpan {
    pub fn new() -> Self {
        LinearSpan::default()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &Polynomial> {
        self.basis.values()
    }

    /// Remainder of `p` after eliminating all pivots.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let mut r = p.clone();
        // Pivots are processed from the top; subtracting a basis vector only
        // touches monomials below its pivot, so one descending sweep suffices.
        for (pivot, b) in self.basis.iter().rev() {
            let c = r.coeff(pivot);
            if c.is_zero() {
                continue;
            }
            let lead = b.coeff(pivot);
            r = &r - &b.scale(&(&c / &lead));
        }
        r
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.reduce(p).is_zero()
    }

    /// Adds `p`; returns true if the dimension grew.
    pub fn insert(&mut self, p: &Polynomial) -> bool {
        let r = self.reduce(p);
        let Some((pivot, lead)) = r.leading_term() else {
            return false;
        };
        let pivot = pivot.clone();
        let r = r.scale(&lead.inv().expect("nonzero leading coefficient"));
        // Keep the echelon form reduced: clear the new pivot from older rows.
        for b in self.basis.values_mut() {
            let c = b.coeff(&pivot);
            if !c.is_zero() {
                *b = &*b - &r.scale(&c);
            }
        }
        self.basis.insert(pivot, r);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_two_by_two() {
        let m = vec![
            vec![Scalar::from_int(2), Scalar::from_int(1)],
            vec![Scalar::from_int(1), Scalar::from_int(1)],
        ];
        let inv = invert(&m).unwrap();
        assert_eq!(
            inv,
            vec![
                vec![Scalar::from_int(1), Scalar::from_int(-1)],
                vec![Scalar::from_int(-1), Scalar::from_int(2)],
            ]
        );
        let singular = vec![
            vec![Scalar::from_int(1), Scalar::from_int(2)],
            vec![Scalar::from_int(2), Scalar::from_int(4)],
        ];
        assert!(invert(&singular).is_none());
    }

    #[test]
    fn span_rank() {
        let x1 = Polynomial::var(2, 0);
        let x2 = Polynomial::var(2, 1);
        let mut s = LinearSpan::new();
        assert!(s.insert(&x1));
        assert!(s.insert(&(&x1 + &x2.pow(2))));
        assert!(!s.insert(&(x2.pow(2).scale(&Scalar::from_int(5)) - &x1)));
        assert!(s.contains(&x2.pow(2)));
        assert!(!s.contains(&x2));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn det_of_polynomial_matrix() {
        let x1 = Polynomial::var(2, 0);
        let one = Polynomial::one(2);
        let zero = Polynomial::zero(2);
        let m = vec![
            vec![x1.scale(&Scalar::from_int(2)), zero.clone()],
            vec![zero, one],
        ];
        assert_eq!(poly_det(&m, 2), x1.scale(&Scalar::from_int(2)));
    }
}
