//! Tame words: products of affine and elementary generators, their
//! evaluation, the plane factorizer and a seeded word generator.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_nvars, Error, Result};
use crate::linalg::{identity_matrix, invert, mat_vec, Matrix};
use crate::poly::{Monomial, Polynomial};
use crate::polymap::{verify_automorphism, Automorphism, PolyMap};
use crate::scalar::Scalar;

/// Default cap on the degree of any prefix of a generated word.
pub const DEFAULT_DEGREE_BUDGET: u32 = 64;

/// Default cap on the number of monomials of degree `<= deg f · deg f⁻¹`
/// for any prefix `f` of a generated word. That count bounds the size of
/// the exact composition `f ∘ f⁻¹`, so it keeps generated words checkable.
pub const DEFAULT_SWELL_BUDGET: u64 = 1 << 14;

/// Limits on the prefixes of a generated word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WordBudget {
    pub degree: u32,
    pub swell: u64,
}

impl Default for WordBudget {
    fn default() -> Self {
        WordBudget {
            degree: DEFAULT_DEGREE_BUDGET,
            swell: DEFAULT_SWELL_BUDGET,
        }
    }
}

impl WordBudget {
    pub fn with_degree(degree: u32) -> Self {
        WordBudget {
            degree,
            ..Self::default()
        }
    }

    fn admits(&self, f: &PolyMap, f_inv: &PolyMap) -> bool {
        let d = f.degree_u32();
        d <= self.degree && swell(f.nvars(), d as u64 * f_inv.degree_u32() as u64) <= self.swell
    }
}

/// `C(d + n, n)`, saturating.
fn swell(n: usize, d: u64) -> u64 {
    let mut c: u128 = 1;
    for k in 1..=n as u128 {
        c = c * (d as u128 + k) / k;
        if c > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    c as u64
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TameGenerator {
    /// `x ↦ M x + v` with `M` invertible.
    Affine { matrix: Matrix, shift: Vec<Scalar> },
    /// `x ↦ (x_1, ..., x_axis + p, ..., x_n)` with `p` free of `x_axis`.
    Elementary { axis: usize, p: Polynomial },
}

impl TameGenerator {
    pub fn affine(matrix: Matrix, shift: Vec<Scalar>) -> Result<Self> {
        let n = matrix.len();
        check_nvars(n, shift.len())?;
        for row in &matrix {
            check_nvars(n, row.len())?;
        }
        if invert(&matrix).is_none() {
            return Err(Error::SingularMatrix);
        }
        Ok(TameGenerator::Affine { matrix, shift })
    }

    pub fn elementary(axis: usize, p: Polynomial) -> Result<Self> {
        if axis >= p.nvars() {
            return Err(Error::InvalidArgument(format!(
                "axis {} out of range",
                axis + 1
            )));
        }
        if p.depends_on(axis) {
            return Err(Error::ElementaryDependsOnAxis { axis: axis + 1 });
        }
        Ok(TameGenerator::Elementary { axis, p })
    }

    /// The affine generator of an affine map.
    pub fn from_affine_map(f: &PolyMap) -> Result<Self> {
        if !f.is_affine() {
            return Err(Error::InvalidArgument(format!("{f} is not affine")));
        }
        TameGenerator::affine(f.linear_part(), f.constant_part())
    }

    pub fn nvars(&self) -> usize {
        match self {
            TameGenerator::Affine { shift, .. } => shift.len(),
            TameGenerator::Elementary { p, .. } => p.nvars(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            TameGenerator::Affine { matrix, shift } => {
                *matrix == identity_matrix(shift.len()) && shift.iter().all(Scalar::is_zero)
            }
            TameGenerator::Elementary { p, .. } => p.is_zero(),
        }
    }

    pub fn to_map(&self) -> PolyMap {
        match self {
            TameGenerator::Affine { matrix, shift } => {
                PolyMap::affine(matrix, shift).expect("square by construction")
            }
            TameGenerator::Elementary { axis, p } => {
                let n = p.nvars();
                let mut c = PolyMap::identity(n).into_components();
                c[*axis] = &c[*axis] + p;
                PolyMap::new(c).expect("n components in n variables")
            }
        }
    }

    /// Closed-form inverse: `(M⁻¹, -M⁻¹ v)`, or `-p` on the same axis.
    pub fn inverse(&self) -> TameGenerator {
        match self {
            TameGenerator::Affine { matrix, shift } => {
                let inv = invert(matrix).expect("invertible by construction");
                let shift = mat_vec(&inv, shift).iter().map(|s| -s).collect();
                TameGenerator::Affine { matrix: inv, shift }
            }
            TameGenerator::Elementary { axis, p } => {
                TameGenerator::Elementary { axis: *axis, p: -p }
            }
        }
    }
}

impl fmt::Display for TameGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::text::write_generator(self, f)
    }
}

impl fmt::Debug for TameGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `[g_1, ..., g_k]`, applied left to right: it evaluates to
/// `g_k ∘ ... ∘ g_1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TameWord {
    n: usize,
    factors: Vec<TameGenerator>,
}

impl TameWord {
    pub fn new(n: usize, factors: Vec<TameGenerator>) -> Result<Self> {
        for g in &factors {
            check_nvars(n, g.nvars())?;
        }
        Ok(TameWord { n, factors })
    }

    pub fn empty(n: usize) -> Self {
        TameWord {
            n,
            factors: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[TameGenerator] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Reversed list of inverted generators.
    pub fn inverse(&self) -> TameWord {
        TameWord {
            n: self.n,
            factors: self
                .factors
                .iter()
                .rev()
                .map(TameGenerator::inverse)
                .collect(),
        }
    }

    pub fn eval_map(&self) -> PolyMap {
        self.factors
            .iter()
            .fold(PolyMap::identity(self.n), |acc, g| {
                g.to_map().compose(&acc).expect("same nvars")
            })
    }

    /// The automorphism with its inverse taken from the inverse word. Each
    /// generator is checked against its closed-form inverse exactly, and
    /// composition carries inverses along, so the word itself needs no
    /// composition check.
    pub fn eval(&self) -> Result<Automorphism> {
        let mut acc = Automorphism::identity(self.n);
        for g in &self.factors {
            let a = Automorphism::from_pair(g.to_map(), g.inverse().to_map())?;
            acc = a.compose(&acc)?;
        }
        Ok(acc)
    }

    /// [`TameWord::eval`] together with the independent power-series
    /// inversion, which must produce the same inverse.
    pub fn eval_cross_checked(&self) -> Result<Automorphism> {
        let a = self.eval()?;
        let b = verify_automorphism(a.fwd())?;
        if a.inv() != b.inv() {
            return Err(Error::InvalidArgument(format!(
                "word inverse {} disagrees with series inverse {}",
                a.inv(),
                b.inv()
            )));
        }
        Ok(a)
    }
}

impl fmt::Display for TameWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::text::write_word(self, f)
    }
}

impl fmt::Debug for TameWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn eval_word(w: &TameWord) -> Result<Automorphism> {
    w.eval()
}

/// A factored plane automorphism and the degree after each elementary
/// reduction, starting from the input degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub word: TameWord,
    pub degree_trace: Vec<u32>,
}

fn degree_of(p: &Polynomial) -> u32 {
    p.degree().finite().unwrap_or(0)
}

/// Jung–van der Kulk degree reduction in the plane.
///
/// While `deg F > 1`, with `d_1 = deg F_1`, `d_2 = deg F_2`:
/// if `d_1 > d_2` the leading form of `F_1` is `c L_2^{d_1/d_2}` and
/// `F ← (x_1 - c x_2^k, x_2) ∘ F` lowers `d_1`; symmetrically for `d_2 > d_1`;
/// if `d_1 = d_2` the leading forms are proportional, `L_1 = c L_2`, and the
/// shear `(x_1 - c x_2, x_2)` lowers `d_1` without changing `deg F`. The
/// remaining affine map and the inverted left factors form the word.
pub fn jvk_factor(f: &Automorphism) -> Result<Factorization> {
    if f.nvars() != 2 {
        return Err(Error::InvalidArgument("factorization needs n = 2".into()));
    }
    let fail = |msg: String| Err(Error::FactorizationFailed(msg));
    let x = [Polynomial::var(2, 0), Polynomial::var(2, 1)];
    let mut current = f.fwd().clone();
    let mut left: Vec<TameGenerator> = Vec::new();
    let mut trace = vec![current.degree_u32()];
    while current.degree_u32() > 1 {
        let comps = current.components();
        let d = [degree_of(&comps[0]), degree_of(&comps[1])];
        if d[0] == 0 || d[1] == 0 {
            return fail(format!("constant component in {current}"));
        }
        let (hi, lo) = if d[0] >= d[1] { (0, 1) } else { (1, 0) };
        if !d[hi].is_multiple_of(d[lo]) {
            return fail(format!(
                "degrees {} and {} are not divisible in {current}",
                d[0], d[1]
            ));
        }
        let k = d[hi] / d[lo];
        let lead_hi = comps[hi].leading_form();
        let lead_lo = comps[lo].leading_form();
        let Some(c) = lead_hi.ratio_to(&lead_lo.pow(k)) else {
            return fail(format!(
                "leading forms are not a power relation in {current}"
            ));
        };
        let step = if k == 1 {
            let mut m = identity_matrix(2);
            m[hi][lo] = -c;
            TameGenerator::affine(m, vec![Scalar::zero(), Scalar::zero()])?
        } else {
            TameGenerator::elementary(hi, x[lo].pow(k).scale(&-c))?
        };
        let next = step.to_map().compose(&current)?;
        let elementary = matches!(step, TameGenerator::Elementary { .. });
        if degree_of(&next.components()[hi]) >= d[hi] {
            return fail(format!("reduction did not lower a degree in {current}"));
        }
        left.push(step);
        current = next;
        if elementary {
            let deg = current.degree_u32();
            if deg >= *trace.last().expect("nonempty") {
                return fail(format!("degree did not decrease at {current}"));
            }
            trace.push(deg);
        }
    }
    let base = TameGenerator::from_affine_map(&current)?;
    let mut factors = Vec::with_capacity(left.len() + 1);
    if !(base.is_identity() && !left.is_empty()) {
        factors.push(base);
    }
    factors.extend(left.iter().rev().map(TameGenerator::inverse));
    let word = TameWord::new(2, factors)?;
    if word.eval_map() != *f.fwd() {
        return fail(format!("word {word} does not evaluate to {}", f.fwd()));
    }
    Ok(Factorization {
        word,
        degree_trace: trace,
    })
}

fn small_coefficient(rng: &mut ChaCha8Rng) -> Scalar {
    let v = rng.gen_range(1..=2);
    Scalar::from_int(if rng.gen_bool(0.5) { v } else { -v })
}

fn random_affine(n: usize, rng: &mut ChaCha8Rng) -> TameGenerator {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut matrix = vec![vec![Scalar::zero(); n]; n];
    for (i, &j) in perm.iter().enumerate() {
        matrix[i][j] = small_coefficient(rng);
    }
    if n > 1 && rng.gen_bool(0.3) {
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        let row_b = matrix[b].clone();
        let c = small_coefficient(rng);
        for (x, y) in matrix[a].iter_mut().zip(&row_b) {
            *x += &(&c * y);
        }
    }
    let shift = (0..n)
        .map(|_| Scalar::from_int(rng.gen_range(-1..=1)))
        .collect();
    TameGenerator::affine(matrix, shift)
        .expect("permutation times diagonal plus a shear is invertible")
}

fn random_elementary(n: usize, deg_cap: u32, rng: &mut ChaCha8Rng) -> TameGenerator {
    let axis = rng.gen_range(0..n);
    let others: Vec<usize> = (0..n).filter(|&j| j != axis).collect();
    let terms = rng.gen_range(1..=3);
    let mut p = Polynomial::zero(n);
    for _ in 0..terms {
        let deg = rng.gen_range(1..=deg_cap.max(1));
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[others[rng.gen_range(0..others.len())]] += 1;
        }
        p = &p + &Polynomial::monomial(Monomial::new(e), small_coefficient(rng));
    }
    TameGenerator::elementary(axis, p).expect("p avoids its axis")
}

/// [`random_tame_with_budget`] under the default [`WordBudget`].
pub fn random_tame(n: usize, length: usize, deg_cap: u32, seed: u64) -> TameWord {
    random_tame_with_budget(n, length, deg_cap, seed, WordBudget::default())
}

/// A reproducible word of the given length. Factors are affine or
/// elementary with equal odds; a factor that would push the prefix or its
/// inverse past `budget` is redrawn up to 8 times, then replaced by an
/// affine factor, which never raises the degree.
pub fn random_tame_with_budget(
    n: usize,
    length: usize,
    deg_cap: u32,
    seed: u64,
    budget: WordBudget,
) -> TameWord {
    assert!(n >= 1, "n must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::with_capacity(length);
    let mut acc = PolyMap::identity(n);
    let mut acc_inv = PolyMap::identity(n);
    let step = |g: &TameGenerator, acc: &PolyMap, acc_inv: &PolyMap| {
        let next = g.to_map().compose(acc).expect("same nvars");
        let next_inv = acc_inv.compose(&g.inverse().to_map()).expect("same nvars");
        (next, next_inv)
    };
    for _ in 0..length {
        let mut chosen = None;
        for _ in 0..8 {
            let g = if n > 1 && rng.gen_bool(0.5) {
                random_elementary(n, deg_cap, &mut rng)
            } else {
                random_affine(n, &mut rng)
            };
            let (next, next_inv) = step(&g, &acc, &acc_inv);
            if budget.admits(&next, &next_inv) {
                chosen = Some((g, next, next_inv));
                break;
            }
        }
        let (g, next, next_inv) = chosen.unwrap_or_else(|| {
            let g = random_affine(n, &mut rng);
            let (next, next_inv) = step(&g, &acc, &acc_inv);
            (g, next, next_inv)
        });
        factors.push(g);
        acc = next;
        acc_inv = next_inv;
    }
    TameWord { n, factors }
}
