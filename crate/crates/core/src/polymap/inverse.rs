//! Truncated compositional inversion and the automorphism decision.
//!
//! For `g` with `g(0) = 0` and invertible linear part `L`, write
//! `g = L x + N(x)` with `N` of order at least two. The inverse `h` satisfies
//! `h = L^{-1}(x - N(h))`, and the degree-`k` part of `N(h)` depends only on
//! the parts of `h` of degree below `k`. The solver below computes `h` one
//! homogeneous degree at a time, keeping the homogeneous components of every
//! monomial power `h^α` that `N` needs so each stage only multiplies the new
//! pieces.
//!
//! An automorphism of affine n-space satisfies `deg f^{-1} <= (deg f)^{n-1}`,
//! so solving up to that degree and checking both compositions exactly
//! decides invertibility.

use std::collections::HashMap;

use crate::error::{check_nvars, Error, NotAutomorphismReason, Result};
use crate::linalg::{invert, Matrix};
use crate::poly::{Degree, Monomial, Polynomial};
use crate::polymap::PolyMap;
use crate::scalar::Scalar;

/// A polynomial map together with its exact polynomial inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    fwd: PolyMap,
    inv: PolyMap,
}

impl Automorphism {
    /// Accepts the pair only if `fwd ∘ inv = id = inv ∘ fwd` exactly.
    pub fn from_pair(fwd: PolyMap, inv: PolyMap) -> Result<Self> {
        check_nvars(fwd.nvars(), inv.nvars())?;
        let n = fwd.nvars();
        if !fwd.compose(&inv)?.is_identity() || !inv.compose(&fwd)?.is_identity() {
            return Err(Error::NotAutomorphism(
                NotAutomorphismReason::InverseCheckFailed,
            ));
        }
        Ok(Automorphism { fwd, inv }).inspect(|a| {
            debug_assert!(within_gabber(a.fwd.degree_u32(), a.inv.degree_u32(), n));
        })
    }

    pub fn identity(n: usize) -> Self {
        Automorphism {
            fwd: PolyMap::identity(n),
            inv: PolyMap::identity(n),
        }
    }

    pub fn fwd(&self) -> &PolyMap {
        &self.fwd
    }

    pub fn inv(&self) -> &PolyMap {
        &self.inv
    }

    pub fn nvars(&self) -> usize {
        self.fwd.nvars()
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            fwd: self.inv.clone(),
            inv: self.fwd.clone(),
        }
    }

    /// `self ∘ other`; the inverse is `other⁻¹ ∘ self⁻¹`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        Ok(Automorphism {
            fwd: self.fwd.compose(&other.fwd)?,
            inv: other.inv.compose(&self.inv)?,
        })
    }

    /// Whether `deg inv <= deg fwd^(n-1)`.
    pub fn satisfies_gabber_bound(&self) -> bool {
        within_gabber(self.fwd.degree_u32(), self.inv.degree_u32(), self.nvars())
    }
}

fn within_gabber(fwd_deg: u32, inv_deg: u32, n: usize) -> bool {
    u64::from(inv_deg) <= gabber_bound(fwd_deg, n)
}

/// `d^(n-1)`, saturating.
pub fn gabber_bound(d: u32, n: usize) -> u64 {
    let mut acc: u64 = 1;
    for _ in 1..n {
        acc = acc.saturating_mul(u64::from(d));
    }
    acc
}

/// Where a power product takes its left factor from.
#[derive(Clone, Copy, Debug)]
enum Factor {
    Coordinate(usize),
    Product(usize),
}

/// The running power `h^α = h^{α - e_var} · h_var`.
struct ProductNode {
    degree: u32,
    parent: Factor,
    var: usize,
    /// Homogeneous parts, `parts[k]` of degree `degree + k`.
    parts: Vec<Polynomial>,
}

struct HomogeneousSolver {
    n: usize,
    lin_inv: Matrix,
    /// Nonlinear part of each component as (product node, coefficient).
    nonlinear: Vec<Vec<(usize, Scalar)>>,
    nodes: Vec<ProductNode>,
    /// `h[j][k]` is the homogeneous degree-`k` part of the j-th inverse component.
    h: Vec<Vec<Polynomial>>,
}

impl HomogeneousSolver {
    fn new(g: &PolyMap, lin_inv: Matrix) -> Self {
        let n = g.nvars();
        let mut solver = HomogeneousSolver {
            n,
            lin_inv,
            nonlinear: Vec::with_capacity(n),
            nodes: Vec::new(),
            h: vec![vec![Polynomial::zero(n)]; n],
        };
        let mut index: HashMap<Monomial, usize> = HashMap::new();
        for gi in g.components() {
            let mut row = Vec::new();
            for (m, c) in gi.terms() {
                if m.degree() >= 2 {
                    let Factor::Product(id) = solver.register(m, &mut index) else {
                        unreachable!("monomials of degree two or more are products");
                    };
                    row.push((id, c.clone()));
                }
            }
            solver.nonlinear.push(row);
        }
        solver
    }

    fn register(&mut self, m: &Monomial, index: &mut HashMap<Monomial, usize>) -> Factor {
        let exps = m.exps();
        if m.degree() == 1 {
            return Factor::Coordinate(exps.iter().position(|&e| e == 1).expect("degree one"));
        }
        if let Some(&id) = index.get(m) {
            return Factor::Product(id);
        }
        let var = exps.iter().rposition(|&e| e > 0).expect("nonconstant");
        let mut parent_exps = exps.to_vec();
        parent_exps[var] -= 1;
        let parent = self.register(&Monomial::new(parent_exps), index);
        self.nodes.push(ProductNode {
            degree: m.degree(),
            parent,
            var,
            parts: Vec::new(),
        });
        let id = self.nodes.len() - 1;
        index.insert(m.clone(), id);
        Factor::Product(id)
    }

    fn stage(&self) -> u32 {
        (self.h[0].len() - 1) as u32
    }

    fn factor_part(&self, f: Factor, k: u32) -> Option<&Polynomial> {
        match f {
            Factor::Coordinate(l) => self.h[l].get(k as usize),
            Factor::Product(id) => {
                let node = &self.nodes[id];
                k.checked_sub(node.degree)
                    .and_then(|i| node.parts.get(i as usize))
            }
        }
    }

    /// Computes the homogeneous part of degree `stage + 1`.
    fn advance(&mut self) {
        let k = self.stage() + 1;
        let n = self.n;
        if k == 1 {
            for j in 0..n {
                let mut p = Polynomial::zero(n);
                for (i, a) in self.lin_inv[j].iter().enumerate() {
                    p.add_term(Monomial::var(n, i), a);
                }
                self.h[j].push(p);
            }
            return;
        }
        let mut fresh = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            if k < node.degree {
                fresh.push(None);
                continue;
            }
            let mut acc = Polynomial::zero(n);
            for d in 1..=(k - node.degree + 1) {
                let (Some(left), Some(right)) = (
                    self.factor_part(node.parent, k - d),
                    self.h[node.var].get(d as usize),
                ) else {
                    continue;
                };
                if left.is_zero() || right.is_zero() {
                    continue;
                }
                acc = &acc + &(left * right);
            }
            fresh.push(Some(acc));
        }
        for (node, part) in self.nodes.iter_mut().zip(fresh) {
            if let Some(p) = part {
                node.parts.push(p);
            }
        }
        let residual: Vec<Polynomial> = self
            .nonlinear
            .iter()
            .map(|row| {
                let mut acc = Polynomial::zero(n);
                for (id, c) in row {
                    let node = &self.nodes[*id];
                    if k >= node.degree {
                        let part = &node.parts[(k - node.degree) as usize];
                        if !part.is_zero() {
                            acc = &acc + &part.scale(c);
                        }
                    }
                }
                acc
            })
            .collect();
        for j in 0..n {
            let mut p = Polynomial::zero(n);
            for (i, a) in self.lin_inv[j].iter().enumerate() {
                if !a.is_zero() && !residual[i].is_zero() {
                    p = &p - &residual[i].scale(a);
                }
            }
            self.h[j].push(p);
        }
    }

    fn latest_is_zero(&self) -> bool {
        self.h
            .iter()
            .all(|comps| comps.last().is_some_and(Polynomial::is_zero))
    }

    fn assemble(&self) -> PolyMap {
        let comps = self
            .h
            .iter()
            .map(|parts| {
                parts
                    .iter()
                    .fold(Polynomial::zero(self.n), |acc, p| &acc + p)
            })
            .collect();
        PolyMap::new(comps).expect("n components in n variables")
    }
}

struct Solved {
    h: PolyMap,
    /// `g ∘ h = id` was confirmed exactly.
    right_inverse: bool,
}

/// Solves for the inverse of `g` (which must fix the origin) up to degree
/// `bound`, stopping early once a truncation composes to the identity.
fn solve(g: &PolyMap, lin_inv: Matrix, bound: u32) -> Result<Solved> {
    let mut solver = HomogeneousSolver::new(g, lin_inv);
    let mut next_check = 2;
    while solver.stage() < bound {
        solver.advance();
        let k = solver.stage();
        if k >= 2 && solver.latest_is_zero() && k >= next_check {
            let h = solver.assemble();
            if g.compose(&h)?.is_identity() {
                return Ok(Solved {
                    h,
                    right_inverse: true,
                });
            }
            next_check = k + (k / 2).max(1);
        }
    }
    Ok(Solved {
        h: solver.assemble(),
        right_inverse: false,
    })
}

fn linear_inverse(g: &PolyMap) -> Option<Matrix> {
    invert(&g.linear_part())
}

fn undo_translation(h: PolyMap, constant: &[Scalar]) -> Result<PolyMap> {
    if constant.iter().all(Scalar::is_zero) {
        return Ok(h);
    }
    let neg: Vec<Scalar> = constant.iter().map(|c| -c).collect();
    h.compose(&PolyMap::translation(&neg))
}

/// The truncated inverse `h = [g⁻¹]_{<= bound} ∘ (x - f(0))` where
/// `g = f - f(0)`. If a truncation below `bound` is already an exact inverse
/// it is returned as is; higher terms of the formal inverse then vanish.
pub fn formal_inverse(f: &PolyMap, bound: u32) -> Result<PolyMap> {
    if bound == 0 {
        return Err(Error::InvalidArgument(
            "inversion bound must be at least 1".into(),
        ));
    }
    let g = f.without_constant();
    let lin_inv = linear_inverse(&g).ok_or(Error::NoFormalInverse)?;
    let solved = solve(&g, lin_inv, bound)?;
    undo_translation(solved.h, &f.constant_part())
}

/// Decides whether `f` is an automorphism and returns it with its inverse.
///
/// A non-constant Jacobian determinant rejects immediately. Otherwise the
/// inverse is solved up to `(deg f)^(n-1)` and both compositions are checked
/// exactly, so the answer is complete in both directions.
pub fn verify_automorphism(f: &PolyMap) -> Result<Automorphism> {
    let n = f.nvars();
    let not_aut = |r| Err(Error::NotAutomorphism(r));
    let deg = match f.degree() {
        Degree::Finite(d) if d >= 1 => d,
        _ => return not_aut(NotAutomorphismReason::SingularLinearPart),
    };
    let det = f.jacobian_det();
    if !det.is_constant() {
        return not_aut(NotAutomorphismReason::NonConstantJacobian(det.to_string()));
    }
    if det.is_zero() {
        return not_aut(NotAutomorphismReason::SingularLinearPart);
    }
    let g = f.without_constant();
    let Some(lin_inv) = linear_inverse(&g) else {
        return not_aut(NotAutomorphismReason::SingularLinearPart);
    };
    let bound = u32::try_from(gabber_bound(deg, n)).unwrap_or(u32::MAX);
    let solved = solve(&g, lin_inv, bound)?;
    let right = solved.right_inverse || g.compose(&solved.h)?.is_identity();
    if !right || !solved.h.compose(&g)?.is_identity() {
        return not_aut(NotAutomorphismReason::InverseCheckFailed);
    }
    let inv = undo_translation(solved.h, &f.constant_part())?;
    Ok(Automorphism {
        fwd: f.clone(),
        inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_map;

    fn m(s: &str) -> PolyMap {
        parse_map(s).unwrap()
    }

    #[test]
    fn formal_inverse_examples() {
        assert_eq!(
            formal_inverse(&m("[x1 + x2^2; x2]"), 2).unwrap(),
            m("[x1 - x2^2; x2]")
        );
        assert_eq!(
            formal_inverse(&m("[2*x1; 3*x2]"), 1).unwrap(),
            m("[1/2*x1; 1/3*x2]")
        );
        assert_eq!(
            formal_inverse(&m("[x1 + x2^2; x2 + 1]"), 2).unwrap(),
            m("[x1 - (x2 - 1)^2; x2 - 1]")
        );
        assert_eq!(
            formal_inverse(&m("[x1 + x2; x1 + x2]"), 3),
            Err(Error::NoFormalInverse)
        );
        assert!(formal_inverse(&m("[x1; x2]"), 0).is_err());
    }

    #[test]
    fn truncation_of_a_genuine_power_series() {
        // g = x + x^2 in one variable has inverse x - x^2 + 2x^3 - 5x^4 + ...
        let h = formal_inverse(&m("[x1 + x1^2]"), 4).unwrap();
        assert_eq!(h, m("[x1 - x1^2 + 2*x1^3 - 5*x1^4]"));
    }

    #[test]
    fn verify_examples() {
        let a = verify_automorphism(&m("[x1 + x2^2; x2]")).unwrap();
        assert_eq!(a.inv(), &m("[x1 - x2^2; x2]"));
        assert!(matches!(
            verify_automorphism(&m("[x1^2; x2]")),
            Err(Error::NotAutomorphism(
                NotAutomorphismReason::NonConstantJacobian(_)
            ))
        ));
        let id = verify_automorphism(&PolyMap::identity(3)).unwrap();
        assert!(id.inv().is_identity());
        assert!(matches!(
            verify_automorphism(&m("[x1 + 1; 0*x2 + 3]")),
            Err(Error::NotAutomorphism(
                NotAutomorphismReason::SingularLinearPart
            ))
        ));
    }

    #[test]
    fn univariate_nonlinear_is_rejected() {
        assert!(verify_automorphism(&m("[x1 + x1^3]")).is_err());
        assert!(verify_automorphism(&m("[5*x1 - 2]")).is_ok());
    }

    #[test]
    fn sparse_high_degree_inverse() {
        let f = m("[x1 + x2^9; x2 + x3^3; x3]");
        let a = verify_automorphism(&f).unwrap();
        assert_eq!(a.inv(), &m("[x1 - (x2 - x3^3)^9; x2 - x3^3; x3]"));
        assert!(a.satisfies_gabber_bound());
    }

    #[test]
    fn translated_henon_inverse() {
        let f = m("[x2 + 2; x1 + x2^2 - 1]");
        let a = verify_automorphism(&f).unwrap();
        assert!(f.compose(a.inv()).unwrap().is_identity());
    }

    #[test]
    fn from_pair_rejects_wrong_inverse() {
        assert!(Automorphism::from_pair(m("[x1 + x2^2; x2]"), m("[x1 + x2^2; x2]")).is_err());
        assert!(Automorphism::from_pair(m("[x1 + x2^2; x2]"), m("[x1 - x2^2; x2]")).is_ok());
    }
}
