//! Coefficient fields.
//!
//! Every algebraic object in the crate is generic over a [`Scalar`]. Two
//! fields are provided: [`Rational`] (exact, arbitrary precision) and `f64`.
//! The field is fixed at compile time, so exact and floating values can never
//! be mixed inside one computation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Arithmetic mode of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown mode `{other}` (expected exact|float)")),
        }
    }
}

/// A coefficient field for octonions and lattice functions.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn is_positive(&self) -> bool;

    /// Magnitude as a float, used for residual reporting and tolerances.
    fn abs_f64(&self) -> f64;

    /// Canonical text form used in reports and function files.
    fn render(&self) -> String;

    /// Inverse of [`Scalar::render`]. Rejects non-canonical input.
    fn parse_canonical(s: &str) -> Result<Self, String>;

    /// Lenient parse for user input: accepts `p/q` in any form and finite
    /// decimals in both modes.
    fn parse_user(s: &str) -> Result<Self, String>;

    /// Coefficient drawn by the seeded random function generator.
    fn random_coefficient<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// f64
// ---------------------------------------------------------------------------

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_positive(&self) -> bool {
        *self > 0.0
    }
    fn abs_f64(&self) -> f64 {
        self.abs()
    }

    /// 17 significant digits, which round-trips every finite double.
    fn render(&self) -> String {
        format!("{self:.16e}")
    }

    fn parse_canonical(s: &str) -> Result<Self, String> {
        let v: f64 = s.parse().map_err(|_| format!("invalid float `{s}`"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("non-finite float `{s}`"))
        }
    }

    fn parse_user(s: &str) -> Result<Self, String> {
        match s.split_once('/') {
            Some((n, d)) => {
                let v = f64::parse_canonical(n.trim())? / f64::parse_canonical(d.trim())?;
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(format!("`{s}` is not a finite number"))
                }
            }
            None => f64::parse_canonical(s.trim()),
        }
    }

    fn random_coefficient<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.random_range(-1.0..1.0)
    }
}

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

/// Exact rational number in canonical reduced form.
///
/// Values whose numerator fits in `i64` and denominator in `u32` are stored
/// inline and combined through `i128` intermediates; anything larger is
/// promoted to a heap-allocated [`BigRational`]. The representation is
/// canonical (a value is `Small` iff it fits), so structural equality is
/// value equality.
#[derive(PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(PartialEq, Eq, Hash)]
enum Repr {
    /// `den > 0`, `gcd(|num|, den) = 1`.
    Small { num: i64, den: u32 },
    Big(Box<BigRational>),
}

impl Clone for Rational {
    #[inline]
    fn clone(&self) -> Self {
        match &self.0 {
            Repr::Small { num, den } => Rational(Repr::Small { num: *num, den: *den }),
            Repr::Big(b) => Rational::clone_big(b),
        }
    }
}

impl Rational {
    #[cold]
    #[inline(never)]
    fn clone_big(b: &BigRational) -> Self {
        Rational(Repr::Big(Box::new(b.clone())))
    }

    #[inline]
    pub fn from_integer(n: i64) -> Self {
        Rational(Repr::Small { num: n, den: 1 })
    }

    /// Builds `num/den`, reducing to canonical form.
    ///
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_big(value: BigRational) -> Self {
        // BigRational keeps itself reduced with a positive denominator.
        match (value.numer().to_i64(), value.denom().to_u32()) {
            (Some(num), Some(den)) => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big(Box::new(value))),
        }
    }

    fn from_i128(mut num: i128, mut den: i128) -> Self {
        debug_assert!(den != 0);
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), u32::try_from(den)) {
            (Ok(num), Ok(den)) => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(num),
                BigInt::from(den),
            )))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// True when the value is held inline (no heap allocation).
    pub fn is_small(&self) -> bool {
        matches!(self.0, Repr::Small { .. })
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    fn signum(&self) -> Ordering {
        match &self.0 {
            Repr::Small { num, .. } => num.cmp(&0),
            Repr::Big(b) => {
                if b.is_negative() {
                    Ordering::Less
                } else if b.is_zero() {
                    Ordering::Equal
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    fn big_op(&self, rhs: &Self, op: impl FnOnce(BigRational, BigRational) -> BigRational) -> Self {
        Self::from_big(op(self.to_big(), rhs.to_big()))
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl Add for Rational {
    type Output = Rational;

    #[inline]
    fn add(self, rhs: Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: 1 }, Repr::Small { num: c, den: 1 }) => match a.checked_add(*c) {
                Some(s) => Rational::from_integer(s),
                None => Rational::from_i128(*a as i128 + *c as i128, 1),
            },
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::from_i128(a * d + c * b, b * d)
            }
            _ => self.big_op(&rhs, |x, y| x + y),
        }
    }
}

impl Sub for Rational {
    type Output = Rational;

    #[inline]
    fn sub(self, rhs: Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: 1 }, Repr::Small { num: c, den: 1 }) => match a.checked_sub(*c) {
                Some(s) => Rational::from_integer(s),
                None => Rational::from_i128(*a as i128 - *c as i128, 1),
            },
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::from_i128(a * d - c * b, b * d)
            }
            _ => self.big_op(&rhs, |x, y| x - y),
        }
    }
}

impl Mul for Rational {
    type Output = Rational;

    #[inline]
    fn mul(self, rhs: Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: 1 }, Repr::Small { num: c, den: 1 }) => match a.checked_mul(*c) {
                Some(p) => Rational::from_integer(p),
                None => Rational::from_i128(*a as i128 * *c as i128, 1),
            },
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => self.big_op(&rhs, |x, y| x * y),
        }
    }
}

impl Div for Rational {
    type Output = Rational;

    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                Rational::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128)
            }
            _ => self.big_op(&rhs, |x, y| x / y),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        match self.0 {
            Repr::Small { num, den } => match num.checked_neg() {
                Some(n) => Rational(Repr::Small { num: n, den }),
                None => Rational::from_i128(-(num as i128), den as i128),
            },
            Repr::Big(b) => Rational::from_big(-*b),
        }
    }
}

impl AddAssign for Rational {
    #[inline]
    fn add_assign(&mut self, rhs: Rational) {
        if let (Repr::Small { num: a, den: 1 }, Repr::Small { num: c, den: 1 }) = (&mut self.0, &rhs.0) {
            if let Some(s) = a.checked_add(*c) {
                *a = s;
                return;
            }
        }
        let lhs = std::mem::replace(self, Rational::from_integer(0));
        *self = lhs + rhs;
    }
}

impl SubAssign for Rational {
    #[inline]
    fn sub_assign(&mut self, rhs: Rational) {
        if let (Repr::Small { num: a, den: 1 }, Repr::Small { num: c, den: 1 }) = (&mut self.0, &rhs.0) {
            if let Some(s) = a.checked_sub(*c) {
                *a = s;
                return;
            }
        }
        let lhs = std::mem::replace(self, Rational::from_integer(0));
        *self = lhs - rhs;
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    #[inline]
    fn zero() -> Self {
        Rational::from_integer(0)
    }
    #[inline]
    fn one() -> Self {
        Rational::from_integer(1)
    }
    #[inline]
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(v)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        // Zero is always stored inline.
        matches!(self.0, Repr::Small { num: 0, .. })
    }
    #[inline]
    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }
    fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }
    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    fn render(&self) -> String {
        match &self.0 {
            Repr::Small { num, den: 1 } => num.to_string(),
            Repr::Small { num, den } => format!("{num}/{den}"),
            Repr::Big(b) if b.is_integer() => b.numer().to_string(),
            Repr::Big(b) => format!("{}/{}", b.numer(), b.denom()),
        }
    }

    fn parse_canonical(s: &str) -> Result<Self, String> {
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num: BigInt = num.parse().map_err(|_| format!("invalid rational `{s}`"))?;
        let den: BigInt = match den {
            None => BigInt::one(),
            Some(d) => {
                if d.starts_with(['+', '-']) {
                    return Err(format!("rational `{s}` must carry its sign on the numerator"));
                }
                let d: BigInt = d.parse().map_err(|_| format!("invalid rational `{s}`"))?;
                if d.is_zero() {
                    return Err(format!("rational `{s}` has zero denominator"));
                }
                if d.is_one() {
                    return Err(format!("rational `{s}` is not canonical (write integers without /1)"));
                }
                d
            }
        };
        if !num.gcd(&den).is_one() {
            return Err(format!("rational `{s}` is not in reduced form"));
        }
        Ok(Rational::from_big(BigRational::new_raw(num, den)))
    }

    fn parse_user(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some((int, frac)) = s.split_once('.') {
            if !frac.chars().all(|c| c.is_ascii_digit()) || frac.is_empty() {
                return Err(format!("invalid decimal `{s}`"));
            }
            let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| format!("invalid decimal `{s}`"))?;
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            return Ok(Rational::from_big(BigRational::new(digits, scale)));
        }
        let v: BigRational = s.parse().map_err(|_| format!("invalid rational `{s}`"))?;
        Ok(Rational::from_big(v))
    }

    fn random_coefficient<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Rational::from_integer(rng.random_range(-9..=9))
    }
}
