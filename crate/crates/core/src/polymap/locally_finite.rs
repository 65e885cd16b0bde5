use std::fmt;

use crate::linalg::LinearSpan;
use crate::polymap::{Automorphism, PolyMap};

/// Outcome of [`locally_finite_certify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocallyFinite {
    /// The span of all pullbacks `(f^m)^*(x_i)`, `m ∈ Z`, is finite-dimensional
    /// and stable under `f^*` and `(f^{-1})^*`.
    Certified {
        dim: usize,
        iterations: u32,
    },
    /// Iterate degrees grew past what a locally finite map allows.
    NotLocallyFinite {
        iterate: i64,
        degree: u32,
        bound: u32,
    },
    Inconclusive {
        reason: String,
    },
}

impl fmt::Display for LocallyFinite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocallyFinite::Certified { dim, iterations } => {
                write!(
                    f,
                    "CERTIFIED-LOCALLY-FINITE dim={dim} iterations={iterations}"
                )
            }
            LocallyFinite::NotLocallyFinite {
                iterate,
                degree,
                bound,
            } => write!(
                f,
                "NOT-LOCALLY-FINITE iterate={iterate} degree={degree} bound={bound}"
            ),
            LocallyFinite::Inconclusive { reason } => write!(f, "INCONCLUSIVE {reason}"),
        }
    }
}

fn is_stable(span: &LinearSpan, map: &PolyMap) -> bool {
    span.basis().all(|b| {
        b.substitute(map.components())
            .map(|p| span.contains(&p))
            .unwrap_or(false)
    })
}

/// Builds `V = span{(f^m)^*(x_i) : |m| <= max_iter}` incrementally and stops
/// as soon as the pullbacks of the next iterates fall inside it.
///
/// Negative evidence is only drawn in the plane: there, a locally finite
/// automorphism is conjugate to an affine or triangular map and every iterate
/// satisfies `deg f^m <= deg f`, so any iterate of larger degree shows that
/// the degrees are unbounded. In other dimensions an unstable span is
/// reported as inconclusive.
pub fn locally_finite_certify(f: &Automorphism, max_iter: u32, rank_cap: usize) -> LocallyFinite {
    let n = f.nvars();
    let fwd_deg = f.fwd().degree_u32();
    let inv_deg = f.inv().degree_u32();
    let mut span = LinearSpan::new();
    for x in PolyMap::identity(n).components() {
        span.insert(x);
    }
    let mut forward = PolyMap::identity(n);
    let mut backward = PolyMap::identity(n);
    for m in 1..=max_iter {
        forward = forward.compose(f.fwd()).expect("same nvars");
        backward = backward.compose(f.inv()).expect("same nvars");
        if n == 2 {
            for (iter, map, bound) in [
                (m as i64, &forward, fwd_deg),
                (-(m as i64), &backward, inv_deg),
            ] {
                let degree = map.degree_u32();
                if degree > bound {
                    return LocallyFinite::NotLocallyFinite {
                        iterate: iter,
                        degree,
                        bound,
                    };
                }
            }
        }
        let mut grew = false;
        for p in forward.components().iter().chain(backward.components()) {
            grew |= span.insert(p);
            if span.dim() > rank_cap {
                return LocallyFinite::Inconclusive {
                    reason: format!("rank cap {rank_cap} exceeded at iteration {m}"),
                };
            }
        }
        if !grew && is_stable(&span, f.fwd()) && is_stable(&span, f.inv()) {
            return LocallyFinite::Certified {
                dim: span.dim(),
                iterations: m,
            };
        }
    }
    LocallyFinite::Inconclusive {
        reason: format!(
            "span not stable after {max_iter} iterations (dim {})",
            span.dim()
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymap::verify_automorphism;
    use crate::text::parse_map;

    fn aut(s: &str) -> Automorphism {
        verify_automorphism(&parse_map(s).unwrap()).unwrap()
    }

    #[test]
    fn swap_is_certified() {
        assert!(matches!(
            locally_finite_certify(&aut("[x2; x1]"), 8, 64),
            LocallyFinite::Certified { dim: 2, .. }
        ));
    }

    #[test]
    fn elementary_is_certified_with_dim_three() {
        assert!(matches!(
            locally_finite_certify(&aut("[x1 + x2^2; x2]"), 8, 64),
            LocallyFinite::Certified { dim: 3, .. }
        ));
    }

    #[test]
    fn henon_is_not_locally_finite() {
        assert!(matches!(
            locally_finite_certify(&aut("[x2; x1 + x2^2]"), 8, 64),
            LocallyFinite::NotLocallyFinite {
                iterate: 2,
                degree: 4,
                bound: 2
            }
        ));
    }

    #[test]
    fn rank_cap_is_inconclusive() {
        assert!(matches!(
            locally_finite_certify(&aut("[x1 + x2^2; x2]"), 8, 2),
            LocallyFinite::Inconclusive { .. }
        ));
    }

    #[test]
    fn triangular_in_three_variables() {
        let v = locally_finite_certify(&aut("[2*x1 + x2^2 + x3; -x2 + x3^3; x3 + 1]"), 16, 64);
        assert!(matches!(v, LocallyFinite::Certified { .. }), "{v}");
    }
}
