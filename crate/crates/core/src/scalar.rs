//! Exact Gaussian-rational scalars `re + im*i` and the field automorphisms
//! used to twist polynomial maps.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of `Q(i)`. Both parts are kept in lowest terms by `BigRational`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// `num/den` as a real scalar. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar {
            re,
            im: BigRational::zero(),
        }
    }

    /// `a + b*i` with integer parts.
    pub fn gaussian(a: i64, b: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(a)),
            im: BigRational::from_integer(BigInt::from(b)),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `re^2 + im^2`.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Scalar::from_rational(self.re.recip()));
        }
        let n = self.norm_sq();
        Some(Scalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power; `None` for a negative power of zero.
    pub fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            self.inv().map(|v| v.pow(e.unsigned_abs() as u32))
        }
    }

    /// True when the value prints without a leading minus as a bare summand,
    /// i.e. it is a negative real or a negative pure imaginary number.
    pub(crate) fn is_negative_like(&self) -> bool {
        if self.im.is_zero() {
            self.re.is_negative()
        } else if self.re.is_zero() {
            self.im.is_negative()
        } else {
            false
        }
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        let imag = |f: &mut fmt::Formatter<'_>, v: &BigRational| -> fmt::Result {
            if v.is_one() {
                write!(f, "i")
            } else if (-v).is_one() {
                write!(f, "-i")
            } else {
                fmt_rational(v, f)?;
                write!(f, "*i")
            }
        };
        if self.re.is_zero() {
            return imag(f, &self.im);
        }
        write!(f, "(")?;
        fmt_rational(&self.re, f)?;
        if self.im.is_negative() {
            write!(f, " - ")?;
            imag(f, &-&self.im)?;
        } else {
            write!(f, " + ")?;
            imag(f, &self.im)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::from_rational(&self.re * &rhs.re);
        }
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// A field automorphism of `Q(i)`: the identity or complex conjugation.
/// Both fix `Q` pointwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum FieldAut {
    #[default]
    Identity,
    Conjugation,
}

impl FieldAut {
    pub fn apply(self, c: &Scalar) -> Scalar {
        match self {
            FieldAut::Identity => c.clone(),
            FieldAut::Conjugation => c.conj(),
        }
    }

    /// `self ∘ other`.
    pub fn then(self, other: FieldAut) -> FieldAut {
        if self == other {
            FieldAut::Identity
        } else {
            FieldAut::Conjugation
        }
    }

    pub fn inverse(self) -> FieldAut {
        self
    }
}

impl fmt::Display for FieldAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldAut::Identity => write!(f, "id"),
            FieldAut::Conjugation => write!(f, "conj"),
        }
    }
}

impl std::str::FromStr for FieldAut {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "id" | "identity" => Ok(FieldAut::Identity),
            "conj" | "conjugation" => Ok(FieldAut::Conjugation),
            other => Err(format!(
                "unknown field automorphism `{other}` (use id or conj)"
            )),
        }
    }
}
