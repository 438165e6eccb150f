//! Octonion arithmetic over an arbitrary [`Scalar`] field.
//!
//! Basis units are `e0..e7` with `e0` the real unit. Products of basis units
//! come from [`BasisTable::STANDARD`]; general products are its bilinear
//! extension. Multiplication is neither commutative nor associative, so no
//! routine in this module ever regroups a product.

use std::fmt;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// A signed basis unit `sign * e_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisUnit {
    pub sign: i8,
    pub index: u8,
}

impl BasisUnit {
    pub const fn pos(index: u8) -> Self {
        BasisUnit { sign: 1, index }
    }

    pub const fn neg(index: u8) -> Self {
        BasisUnit { sign: -1, index }
    }

    pub fn negated(self) -> Self {
        BasisUnit { sign: -self.sign, index: self.index }
    }
}

impl fmt::Display for BasisUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.sign < 0 { "-" } else { "" };
        if self.index == 0 {
            write!(f, "{sign}1")
        } else {
            write!(f, "{sign}e{}", self.index)
        }
    }
}

/// Products `e_i * e_j` for all 64 ordered pairs of basis units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisTable(pub [[BasisUnit; 8]; 8]);

const fn p(i: u8) -> BasisUnit {
    BasisUnit::pos(i)
}

const fn n(i: u8) -> BasisUnit {
    BasisUnit::neg(i)
}

impl BasisTable {
    /// The real octonions, with `e4 = e1 e2`, `e5 = e1 e3`, `e6 = e2 e3` and
    /// `e7 = e4 e3`.
    pub const STANDARD: BasisTable = BasisTable([
        [p(0), p(1), p(2), p(3), p(4), p(5), p(6), p(7)],
        [p(1), n(0), p(4), p(5), n(2), n(3), n(7), p(6)],
        [p(2), n(4), n(0), p(6), p(1), p(7), n(3), n(5)],
        [p(3), n(5), n(6), n(0), n(7), p(1), p(2), p(4)],
        [p(4), p(2), n(1), p(7), n(0), n(6), p(5), n(3)],
        [p(5), p(3), n(7), n(1), p(6), n(0), n(4), p(2)],
        [p(6), p(7), p(3), n(2), n(5), p(4), n(0), n(1)],
        [p(7), n(6), p(5), n(4), p(3), n(2), p(1), n(0)],
    ]);

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> BasisUnit {
        self.0[i][j]
    }

    /// `(u * v)` for signed units.
    #[inline]
    pub fn mul_units(&self, u: BasisUnit, v: BasisUnit) -> BasisUnit {
        let w = self.0[u.index as usize][v.index as usize];
        BasisUnit { sign: w.sign * u.sign * v.sign, index: w.index }
    }
}

/// `e_i * e_j` from the standard table.
pub fn basis_mul(i: usize, j: usize) -> Result<BasisUnit> {
    check_index(i)?;
    check_index(j)?;
    Ok(BasisTable::STANDARD.get(i, j))
}

fn check_index(i: usize) -> Result<()> {
    if i < 8 {
        Ok(())
    } else {
        Err(domain(format!("basis index {i} out of range 0..=7")))
    }
}

/// `(e_i e_j) e_k` and `e_i (e_j e_k)`.
pub fn triple_products(i: usize, j: usize, k: usize) -> (BasisUnit, BasisUnit) {
    let t = &BasisTable::STANDARD;
    let left = t.mul_units(t.get(i, j), p(k as u8));
    let right = t.mul_units(p(i as u8), t.get(j, k));
    (left, right)
}

/// The sign `s` with `(e_i e_j) e_k = s * e_i (e_j e_k)`.
///
/// Both groupings always land on the same basis unit, so `s` is well defined.
pub fn triple_sign(i: usize, j: usize, k: usize) -> Result<i8> {
    check_index(i)?;
    check_index(j)?;
    check_index(k)?;
    let (left, right) = triple_products(i, j, k);
    debug_assert_eq!(left.index, right.index);
    Ok(left.sign * right.sign)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleCensus {
    pub associative: usize,
    pub anti_associative: usize,
}

/// Counts ordered basis triples by [`triple_sign`].
pub fn triple_census() -> TripleCensus {
    let mut census = TripleCensus { associative: 0, anti_associative: 0 };
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                match triple_sign(i, j, k).expect("indices in range") {
                    1 => census.associative += 1,
                    _ => census.anti_associative += 1,
                }
            }
        }
    }
    census
}

/// An octonion `c0 e0 + c1 e1 + ... + c7 e7`.
#[derive(Clone, PartialEq)]
pub struct Octonion<S> {
    c: [S; 8],
}

impl<S: Scalar> Octonion<S> {
    pub fn new(c: [S; 8]) -> Self {
        Octonion { c }
    }

    pub fn zero() -> Self {
        Octonion { c: std::array::from_fn(|_| S::zero()) }
    }

    pub fn real(x: S) -> Self {
        let mut o = Self::zero();
        o.c[0] = x;
        o
    }

    /// The basis unit `e_i`. Panics if `i > 7`.
    pub fn unit(i: usize) -> Self {
        assert!(i < 8, "basis index {i} out of range 0..=7");
        let mut o = Self::zero();
        o.c[i] = S::one();
        o
    }

    pub fn from_basis_unit(u: BasisUnit) -> Self {
        let mut o = Self::zero();
        o.c[u.index as usize] = S::from_i64(u.sign as i64);
        o
    }

    pub fn from_i64s(c: [i64; 8]) -> Self {
        Octonion { c: c.map(S::from_i64) }
    }

    pub fn coeffs(&self) -> &[S; 8] {
        &self.c
    }

    pub fn into_coeffs(self) -> [S; 8] {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &S) -> Self {
        Octonion { c: std::array::from_fn(|i| self.c[i].clone() * s.clone()) }
    }

    /// Negates the imaginary part.
    pub fn conj(&self) -> Self {
        Octonion {
            c: std::array::from_fn(|i| if i == 0 { self.c[0].clone() } else { -self.c[i].clone() }),
        }
    }

    pub fn norm_sq(&self) -> S {
        self.c.iter().fold(S::zero(), |acc, x| acc + x.clone() * x.clone())
    }

    /// The product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let table = &BasisTable::STANDARD;
        let mut out = Self::zero();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let u = table.get(i, j);
                let prod = a.clone() * b.clone();
                if u.sign > 0 {
                    out.c[u.index as usize] += prod;
                } else {
                    out.c[u.index as usize] -= prod;
                }
            }
        }
        out
    }

    /// `e_j * self`.
    pub fn left_mul_unit(&self, j: usize) -> Self {
        let table = &BasisTable::STANDARD;
        let mut out = Self::zero();
        for (i, a) in self.c.iter().enumerate() {
            let u = table.get(j, i);
            out.c[u.index as usize] = if u.sign > 0 { a.clone() } else { -a.clone() };
        }
        out
    }

    /// `self * e_j`.
    pub fn right_mul_unit(&self, j: usize) -> Self {
        let table = &BasisTable::STANDARD;
        let mut out = Self::zero();
        for (i, a) in self.c.iter().enumerate() {
            let u = table.get(i, j);
            out.c[u.index as usize] = if u.sign > 0 { a.clone() } else { -a.clone() };
        }
        out
    }

    /// Adds `sign * x` to coefficient `index`.
    #[inline]
    pub fn accumulate(&mut self, index: usize, sign: i8, x: S) {
        if sign > 0 {
            self.c[index] += x;
        } else {
            self.c[index] -= x;
        }
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    /// Componentwise comparison within an explicit absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.c.iter().zip(&other.c).all(|(a, b)| (a.clone() - b.clone()).abs_f64() <= tol)
    }

    /// Space-separated coefficient list `c0 c1 ... c7`.
    pub fn render(&self) -> String {
        self.c.iter().map(Scalar::render).collect::<Vec<_>>().join(" ")
    }

    pub fn render_vec(&self) -> Vec<String> {
        self.c.iter().map(Scalar::render).collect()
    }

    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 8 {
            return Err(format!("expected 8 coefficients, found {}", parts.len()));
        }
        let mut c: [S; 8] = std::array::from_fn(|_| S::zero());
        for (slot, part) in c.iter_mut().zip(parts) {
            *slot = S::parse_canonical(part)?;
        }
        Ok(Octonion { c })
    }
}

/// `[a, b, c] = (ab)c - a(bc)`.
pub fn associator<S: Scalar>(a: &Octonion<S>, b: &Octonion<S>, c: &Octonion<S>) -> Octonion<S> {
    a.mul(b).mul(c) - a.mul(&b.mul(c))
}

impl<S> Index<usize> for Octonion<S> {
    type Output = S;

    fn index(&self, i: usize) -> &S {
        &self.c[i]
    }
}

impl<S: Scalar> fmt::Debug for Octonion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.render())
    }
}

impl<S: Scalar> Add for Octonion<S> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<S: Scalar> AddAssign for Octonion<S> {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a += b;
        }
    }
}

impl<S: Scalar> Sub for Octonion<S> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl<S: Scalar> SubAssign for Octonion<S> {
    fn sub_assign(&mut self, rhs: Self) {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a -= b;
        }
    }
}

impl<S: Scalar> Neg for Octonion<S> {
    type Output = Self;

    fn neg(self) -> Self {
        Octonion { c: self.c.map(|x| -x) }
    }
}

impl<S: Scalar> Mul for &Octonion<S> {
    type Output = Octonion<S>;

    fn mul(self, rhs: &Octonion<S>) -> Octonion<S> {
        Octonion::mul(self, rhs)
    }
}
