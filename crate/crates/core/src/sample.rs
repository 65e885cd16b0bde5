//! Seeded generators of small random inputs for the property suites.

use rand::Rng;

use crate::derivation::Derivation;
use crate::poly::{Monomial, Polynomial};
use crate::polymap::PolyMap;
use crate::scalar::Scalar;
use crate::torus::DiagonalElement;

/// A Gaussian rational with numerators in `-3..=3` and denominators in
/// `1..=3`; the imaginary part is zero two times out of three.
pub fn scalar<R: Rng>(rng: &mut R) -> Scalar {
    let re = Scalar::from_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
    if rng.gen_range(0..3) == 0 {
        let im = Scalar::from_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        &re + &(&im * &Scalar::i())
    } else {
        re
    }
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let s = scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Up to `terms` terms of degree `<= deg` in the variables listed in `vars`.
pub fn poly_in<R: Rng>(
    n: usize,
    vars: &[usize],
    deg: u32,
    terms: usize,
    rng: &mut R,
) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..terms {
        let mut e = vec![0u32; n];
        if !vars.is_empty() {
            for _ in 0..rng.gen_range(0..=deg) {
                e[vars[rng.gen_range(0..vars.len())]] += 1;
            }
        }
        p = &p + &Polynomial::monomial(Monomial::new(e), scalar(rng));
    }
    p
}

pub fn poly<R: Rng>(n: usize, deg: u32, terms: usize, rng: &mut R) -> Polynomial {
    let vars: Vec<usize> = (0..n).collect();
    poly_in(n, &vars, deg, terms, rng)
}

pub fn map<R: Rng>(n: usize, deg: u32, terms: usize, rng: &mut R) -> PolyMap {
    PolyMap::new((0..n).map(|_| poly(n, deg, terms, rng)).collect()).expect("n components")
}

pub fn diagonal<R: Rng>(n: usize, rng: &mut R) -> DiagonalElement {
    DiagonalElement::new((0..n).map(|_| nonzero_scalar(rng)).collect()).expect("nonzero entries")
}

/// `Σ h_i ∂/∂x_i` with `h_i` a polynomial in `x_{i+1}, ..., x_n` of degree
/// `<= deg`; such derivations are locally nilpotent.
pub fn triangular_derivation<R: Rng>(n: usize, deg: u32, rng: &mut R) -> Derivation {
    let coeffs = (0..n)
        .map(|i| {
            let later: Vec<usize> = (i + 1..n).collect();
            poly_in(n, &later, deg, 3, rng)
        })
        .collect();
    Derivation::new(coeffs).expect("n coefficients")
}

/// `x_i ↦ c_i x_i + p_i(x_{i+1}, ..., x_n)` with `c_i != 0`.
pub fn triangular_map<R: Rng>(n: usize, deg: u32, rng: &mut R) -> PolyMap {
    let components = (0..n)
        .map(|i| {
            let later: Vec<usize> = (i + 1..n).collect();
            let lead = Polynomial::var(n, i).scale(&nonzero_scalar(rng));
            &lead + &poly_in(n, &later, deg, 2, rng)
        })
        .collect();
    PolyMap::new(components).expect("n components")
}
