//! Finitely supported octonion-valued functions on the lattice `hZ^8`.
//!
//! Axis `j` of the lattice pairs with basis unit `e_j`, `j = 0..=7`. Axis 7
//! is the one split by the half-lattices.

mod io;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Octonion;
use crate::error::{domain, Result};
use crate::scalar::Scalar;

pub use io::{read_function, read_function_str, render_function, write_function, FileHeader};

pub const DIM: usize = 8;

/// Axis normal to the half-lattice boundary.
pub const SPLIT_AXIS: usize = 7;

/// A lattice site `m`; the physical point is `m * h`.
///
/// Ordering is lexicographic with coordinate 0 most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct MultiIndex(pub [i32; DIM]);

impl MultiIndex {
    pub const ORIGIN: MultiIndex = MultiIndex([0; DIM]);

    pub fn new(m: [i32; DIM]) -> Self {
        MultiIndex(m)
    }

    /// The site `delta * e_axis`.
    pub fn axis(axis: usize, delta: i32) -> Self {
        MultiIndex::ORIGIN.shifted(axis, delta)
    }

    #[inline]
    pub fn shifted(self, axis: usize, delta: i32) -> Self {
        let mut m = self.0;
        m[axis] += delta;
        MultiIndex(m)
    }

    #[inline]
    pub fn get(&self, axis: usize) -> i32 {
        self.0[axis]
    }

    /// The coordinate along the split axis.
    #[inline]
    pub fn last(&self) -> i32 {
        self.0[SPLIT_AXIS]
    }

    pub fn offset_all(self, delta: i32) -> Self {
        MultiIndex(self.0.map(|x| x + delta))
    }

    fn le_all(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i32::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

fn parse_coords<'a>(parts: impl Iterator<Item = &'a str>) -> std::result::Result<MultiIndex, String> {
    let mut m = [0i32; DIM];
    let mut count = 0;
    for part in parts {
        if count == DIM {
            return Err(format!("expected {DIM} coordinates, found more"));
        }
        m[count] = part.trim().parse().map_err(|_| format!("invalid coordinate `{part}`"))?;
        count += 1;
    }
    if count != DIM {
        return Err(format!("expected {DIM} coordinates, found {count}"));
    }
    Ok(MultiIndex(m))
}

impl FromStr for MultiIndex {
    type Err = String;

    /// Accepts whitespace- or comma-separated coordinates.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        parse_coords(s.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty()))
    }
}

/// Axis-aligned box `lo <= m <= hi` (componentwise). Empty when some
/// `lo[a] > hi[a]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoxRegion {
    pub lo: MultiIndex,
    pub hi: MultiIndex,
}

impl BoxRegion {
    pub fn new(lo: MultiIndex, hi: MultiIndex) -> Self {
        BoxRegion { lo, hi }
    }

    /// The cube `[-radius, radius]^8`.
    pub fn cube(radius: i32) -> Self {
        BoxRegion { lo: MultiIndex([-radius; DIM]), hi: MultiIndex([radius; DIM]) }
    }

    pub fn is_empty(&self) -> bool {
        !self.lo.le_all(&self.hi)
    }

    pub fn contains(&self, m: &MultiIndex) -> bool {
        self.lo.le_all(m) && m.le_all(&self.hi)
    }

    pub fn site_count(&self) -> u128 {
        if self.is_empty() {
            return 0;
        }
        self.lo.0.iter().zip(&self.hi.0).map(|(l, h)| (h - l + 1) as u128).product()
    }

    pub fn padded(&self, by: i32) -> Self {
        BoxRegion { lo: self.lo.offset_all(-by), hi: self.hi.offset_all(by) }
    }

    /// Smallest box holding every site of `sites`, or `None` if there are none.
    pub fn bounding<'a>(sites: impl IntoIterator<Item = &'a MultiIndex>) -> Option<Self> {
        let mut it = sites.into_iter();
        let first = *it.next()?;
        let mut b = BoxRegion { lo: first, hi: first };
        for m in it {
            for a in 0..DIM {
                b.lo.0[a] = b.lo.0[a].min(m.0[a]);
                b.hi.0[a] = b.hi.0[a].max(m.0[a]);
            }
        }
        Some(b)
    }

    pub fn union(&self, other: &Self) -> Self {
        BoxRegion {
            lo: MultiIndex(std::array::from_fn(|a| self.lo.0[a].min(other.lo.0[a]))),
            hi: MultiIndex(std::array::from_fn(|a| self.hi.0[a].max(other.hi.0[a]))),
        }
    }

    /// All sites in lexicographic order.
    pub fn sites(&self) -> BoxSites {
        BoxSites { region: *self, next: if self.is_empty() { None } else { Some(self.lo) } }
    }
}

impl fmt::Display for BoxRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |m: &MultiIndex| m.0.iter().map(i32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}..{}", join(&self.lo), join(&self.hi))
    }
}

impl FromStr for BoxRegion {
    type Err = String;

    /// Parses `lo..hi` with comma-separated coordinates.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (lo, hi) = s.split_once("..").ok_or_else(|| format!("invalid box `{s}` (expected lo..hi)"))?;
        Ok(BoxRegion { lo: parse_coords(lo.split(','))?, hi: parse_coords(hi.split(','))? })
    }
}

pub struct BoxSites {
    region: BoxRegion,
    next: Option<MultiIndex>,
}

impl Iterator for BoxSites {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let current = self.next?;
        let mut m = current;
        let mut axis = DIM;
        self.next = loop {
            if axis == 0 {
                break None;
            }
            axis -= 1;
            if m.0[axis] < self.region.hi.0[axis] {
                m.0[axis] += 1;
                break Some(m);
            }
            m.0[axis] = self.region.lo.0[axis];
        };
        Some(current)
    }
}

/// Where a function may hold values.
///
/// The half-lattices include the layer `m7 = 0` as data; operators act on
/// their interiors `m7 >= 1` (upper) and `m7 <= -1` (lower).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Whole,
    Upper,
    Lower,
    Box(BoxRegion),
}

impl Region {
    pub fn admits(&self, m: &MultiIndex) -> bool {
        match self {
            Region::Whole => true,
            Region::Upper => m.last() >= 0,
            Region::Lower => m.last() <= 0,
            Region::Box(b) => b.contains(m),
        }
    }

    pub fn is_half_space(&self) -> bool {
        matches!(self, Region::Upper | Region::Lower)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Whole => f.write_str("whole"),
            Region::Upper => f.write_str("upper"),
            Region::Lower => f.write_str("lower"),
            Region::Box(b) => write!(f, "box {b}"),
        }
    }
}

impl FromStr for Region {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "whole" => Ok(Region::Whole),
            "upper" => Ok(Region::Upper),
            "lower" => Ok(Region::Lower),
            other => match other.strip_prefix("box") {
                Some(rest) => Ok(Region::Box(rest.trim().parse()?)),
                None => Err(format!("unknown region `{other}`")),
            },
        }
    }
}

impl Serialize for Region {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A finitely supported map `MultiIndex -> Octonion` with lattice constant
/// `h` and an admissible [`Region`].
///
/// Entries are kept sorted by site with no zero values stored, so two
/// functions are equal exactly when they agree everywhere.
#[derive(Clone, PartialEq)]
pub struct LatticeFunction<S> {
    h: S,
    region: Region,
    entries: Vec<(MultiIndex, Octonion<S>)>,
}

impl<S: Scalar> fmt::Debug for LatticeFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LatticeFunction")
            .field("h", &self.h)
            .field("region", &self.region)
            .field("support", &self.entries.len())
            .finish()
    }
}

fn check_h<S: Scalar>(h: &S) -> Result<()> {
    if h.is_positive() {
        Ok(())
    } else {
        Err(domain(format!("lattice constant must be positive, got {}", h.render())))
    }
}

impl<S: Scalar> LatticeFunction<S> {
    pub fn zero(h: S, region: Region) -> Result<Self> {
        check_h(&h)?;
        Ok(LatticeFunction { h, region, entries: Vec::new() })
    }

    /// Builds a function from site values; zeros are dropped.
    pub fn from_sites(h: S, region: Region, sites: impl IntoIterator<Item = (MultiIndex, Octonion<S>)>) -> Result<Self> {
        let mut b = FunctionBuilder::new(h, region)?;
        for (m, v) in sites {
            b.insert(m, v)?;
        }
        Ok(b.build())
    }

    /// Entries must be strictly increasing, nonzero and admitted by `region`.
    pub(crate) fn from_sorted_unchecked(h: S, region: Region, entries: Vec<(MultiIndex, Octonion<S>)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(m, v)| region.admits(m) && !v.is_zero()));
        LatticeFunction { h, region, entries }
    }

    pub fn h(&self) -> &S {
        &self.h
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero values in lexicographic site order.
    pub fn iter(&self) -> impl ExactSizeIterator<Item = (&MultiIndex, &Octonion<S>)> {
        self.entries.iter().map(|(m, v)| (m, v))
    }

    pub fn entries(&self) -> &[(MultiIndex, Octonion<S>)] {
        &self.entries
    }

    pub fn support(&self) -> impl ExactSizeIterator<Item = &MultiIndex> {
        self.entries.iter().map(|(m, _)| m)
    }

    #[inline]
    pub fn get(&self, m: &MultiIndex) -> Option<&Octonion<S>> {
        self.entries.binary_search_by(|(k, _)| k.cmp(m)).ok().map(|i| &self.entries[i].1)
    }

    /// Value at `m`; zero outside the support.
    pub fn value(&self, m: &MultiIndex) -> Octonion<S> {
        self.get(m).cloned().unwrap_or_else(Octonion::zero)
    }

    /// Coefficient `k` of the value at `m`.
    pub fn component(&self, m: &MultiIndex, k: usize) -> S {
        self.get(m).map_or_else(S::zero, |v| v[k].clone())
    }

    pub fn bounding_box(&self) -> Option<BoxRegion> {
        BoxRegion::bounding(self.support())
    }

    /// Same values, reinterpreted on another region. Fails if some stored
    /// site is not admitted there.
    pub fn with_region(&self, region: Region) -> Result<Self> {
        if let Some((m, _)) = self.entries.iter().find(|(m, _)| !region.admits(m)) {
            return Err(domain(format!("site ({m}) lies outside region {region}")));
        }
        Ok(LatticeFunction { h: self.h.clone(), region, entries: self.entries.clone() })
    }

    /// Keeps only the sites satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(&MultiIndex) -> bool) -> Self {
        let entries = self.entries.iter().filter(|(m, _)| keep(m)).cloned().collect();
        LatticeFunction { h: self.h.clone(), region: self.region, entries }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.h != other.h {
            return Err(domain(format!(
                "lattice constants differ ({} vs {})",
                self.h.render(),
                other.h.render()
            )));
        }
        if self.region != other.region {
            return Err(domain(format!("regions differ ({} vs {})", self.region, other.region)));
        }
        Ok(())
    }

    fn merge(&self, other: &Self, combine: impl Fn(Octonion<S>, Octonion<S>) -> Octonion<S>) -> Result<Self> {
        self.check_compatible(other)?;
        let mut entries = Vec::with_capacity(self.len().max(other.len()));
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            let (m, v) = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some((ma, _)), Some((mb, _))) if ma == mb => {
                    let (m, va) = a.next().unwrap();
                    let (_, vb) = b.next().unwrap();
                    (*m, combine(va.clone(), vb.clone()))
                }
                (Some((ma, _)), Some((mb, _))) if ma < mb => {
                    let (m, va) = a.next().unwrap();
                    (*m, combine(va.clone(), Octonion::zero()))
                }
                (Some(_), None) => {
                    let (m, va) = a.next().unwrap();
                    (*m, combine(va.clone(), Octonion::zero()))
                }
                _ => {
                    let (m, vb) = b.next().unwrap();
                    (*m, combine(Octonion::zero(), vb.clone()))
                }
            };
            if !v.is_zero() {
                entries.push((m, v));
            }
        }
        Ok(LatticeFunction { h: self.h.clone(), region: self.region, entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.merge(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.merge(other, |a, b| a - b)
    }

    fn map_values(&self, f: impl Fn(&Octonion<S>) -> Octonion<S>) -> Self {
        let entries = self
            .entries
            .iter()
            .filter_map(|(m, v)| {
                let w = f(v);
                (!w.is_zero()).then_some((*m, w))
            })
            .collect();
        LatticeFunction { h: self.h.clone(), region: self.region, entries }
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map_values(|v| v.scale(s))
    }

    pub fn neg(&self) -> Self {
        self.map_values(|v| -v.clone())
    }

    /// Sitewise `f(m) * c`.
    pub fn right_mul(&self, c: &Octonion<S>) -> Self {
        self.map_values(|v| v.mul(c))
    }

    /// [`right_mul`](Self::right_mul) reusing this function's storage.
    pub fn into_right_mul(mut self, c: &Octonion<S>) -> Self {
        for (_, v) in &mut self.entries {
            *v = v.mul(c);
        }
        self.entries.retain(|(_, v)| !v.is_zero());
        self
    }

    /// Sitewise `c * f(m)`.
    pub fn left_mul(&self, c: &Octonion<S>) -> Self {
        self.map_values(|v| c.mul(v))
    }
}

/// Source of site values for stencil evaluation. `slot` names the stencil
/// offset being read so that cursor-based lookups can keep one position per
/// offset.
pub(crate) trait Lookup<'a, S: 'a> {
    fn at(&mut self, slot: usize, m: &MultiIndex) -> Option<&'a Octonion<S>>;
}

impl<'a, S: Scalar> Lookup<'a, S> for &'a LatticeFunction<S> {
    #[inline]
    fn at(&mut self, _slot: usize, m: &MultiIndex) -> Option<&'a Octonion<S>> {
        self.get(m)
    }
}

/// Lookup at a non-decreasing sequence of sites by galloping forward from the
/// previous position; amortized constant time on sorted sweeps.
pub(crate) struct Cursor<'a, S> {
    entries: &'a [(MultiIndex, Octonion<S>)],
    pos: usize,
}

impl<'a, S> Cursor<'a, S> {
    #[inline]
    pub(crate) fn seek(&mut self, m: &MultiIndex) -> Option<&'a Octonion<S>> {
        let e = self.entries;
        let n = e.len();
        let mut lo = self.pos;
        debug_assert!(lo == 0 || e[lo - 1].0 < *m, "cursor queries must not decrease");
        if lo < n && e[lo].0 < *m {
            let mut step = 1;
            let mut hi = lo + 1;
            while hi < n && e[hi].0 < *m {
                lo = hi;
                step *= 2;
                hi = lo + step;
            }
            let hi = hi.min(n);
            lo = lo + 1 + e[lo + 1..hi].partition_point(|(k, _)| k < m);
        }
        self.pos = lo;
        (lo < n && e[lo].0 == *m).then(|| &e[lo].1)
    }
}

/// One [`Cursor`] per stencil slot.
pub(crate) struct Cursors<'a, S, const N: usize> {
    cursors: [Cursor<'a, S>; N],
}

impl<'a, S, const N: usize> Cursors<'a, S, N> {
    pub(crate) fn new(f: &'a LatticeFunction<S>) -> Self {
        Cursors { cursors: std::array::from_fn(|_| Cursor { entries: &f.entries, pos: 0 }) }
    }
}

impl<'a, S: Scalar, const N: usize> Lookup<'a, S> for Cursors<'a, S, N> {
    #[inline]
    fn at(&mut self, slot: usize, m: &MultiIndex) -> Option<&'a Octonion<S>> {
        self.cursors[slot].seek(m)
    }
}

/// Single-threaded accumulator for building a [`LatticeFunction`].
pub struct FunctionBuilder<S> {
    h: S,
    region: Region,
    values: BTreeMap<MultiIndex, Octonion<S>>,
}

impl<S: Scalar> FunctionBuilder<S> {
    pub fn new(h: S, region: Region) -> Result<Self> {
        check_h(&h)?;
        Ok(FunctionBuilder { h, region, values: BTreeMap::new() })
    }

    fn admit(&self, m: &MultiIndex) -> Result<()> {
        if self.region.admits(m) {
            Ok(())
        } else {
            Err(domain(format!("site ({m}) lies outside region {}", self.region)))
        }
    }

    /// Sets the value at a new site. Setting the same site twice is an error.
    pub fn insert(&mut self, m: MultiIndex, v: Octonion<S>) -> Result<()> {
        self.admit(&m)?;
        if self.values.insert(m, v).is_some() {
            return Err(domain(format!("duplicate site ({m})")));
        }
        Ok(())
    }

    /// Adds `v` to the value at `m`.
    pub fn add(&mut self, m: MultiIndex, v: Octonion<S>) -> Result<()> {
        self.admit(&m)?;
        match self.values.get_mut(&m) {
            Some(slot) => *slot += v,
            None => {
                self.values.insert(m, v);
            }
        }
        Ok(())
    }

    pub fn build(self) -> LatticeFunction<S> {
        let entries = self.values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        LatticeFunction { h: self.h, region: self.region, entries }
    }
}

/// `e0` at `site`, zero elsewhere, on the whole lattice.
pub fn delta<S: Scalar>(site: MultiIndex, h: S) -> Result<LatticeFunction<S>> {
    LatticeFunction::from_sites(h, Region::Whole, [(site, Octonion::unit(0))])
}

/// `f(m) = (m[axis] * h) * coeff` on `bounds`, zero outside.
pub fn linear<S: Scalar>(axis: usize, coeff: &Octonion<S>, bounds: &BoxRegion, h: S) -> Result<LatticeFunction<S>> {
    linear_sum(&[(axis, coeff.clone())], bounds, h)
}

/// `f(m) = sum_t (m[axis_t] * h) * coeff_t` on `bounds`, zero outside; the
/// sum of the corresponding [`linear`] functions, built in one pass.
pub fn linear_sum<S: Scalar>(terms: &[(usize, Octonion<S>)], bounds: &BoxRegion, h: S) -> Result<LatticeFunction<S>> {
    if let Some((axis, _)) = terms.iter().find(|(a, _)| *a >= DIM) {
        return Err(domain(format!("axis {axis} out of range 0..=7")));
    }
    if bounds.is_empty() {
        return Err(domain(format!("empty box {bounds}")));
    }
    check_h(&h)?;
    // The value depends only on the coordinates along the axes in `terms`,
    // so it is computed once per combination of those and looked up per site.
    let mut axes: Vec<usize> = terms.iter().map(|(a, _)| *a).collect();
    axes.sort_unstable();
    axes.dedup();
    let extent = |a: usize| (bounds.hi.0[a] - bounds.lo.0[a] + 1) as usize;
    let combos: usize = axes.iter().map(|&a| extent(a)).product();
    let slot = |m: &MultiIndex| axes.iter().fold(0, |acc, &a| acc * extent(a) + (m.0[a] - bounds.lo.0[a]) as usize);
    let values: Vec<Octonion<S>> = (0..combos)
        .map(|mut n| {
            let mut m = bounds.lo;
            for &a in axes.iter().rev() {
                m.0[a] += (n % extent(a)) as i32;
                n /= extent(a);
            }
            let mut v = Octonion::zero();
            for (axis, coeff) in terms {
                let x = m.get(*axis);
                if x == 0 {
                    continue;
                }
                let x = S::from_i64(x as i64) * h.clone();
                for (k, c) in coeff.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        v.accumulate(k, 1, c.clone() * x.clone());
                    }
                }
            }
            v
        })
        .collect();
    let mut entries = Vec::with_capacity(bounds.site_count() as usize);
    for m in bounds.sites() {
        let v = &values[slot(&m)];
        if !v.is_zero() {
            entries.push((m, v.clone()));
        }
    }
    Ok(LatticeFunction::from_sorted_unchecked(h, Region::Box(*bounds), entries))
}

/// Seeded pseudo-random values at every site of `bounds`, on the whole
/// lattice. Rational coefficients are integers in `[-9, 9]`; float
/// coefficients are uniform in `[-1, 1)`.
pub fn random_function<S: Scalar>(bounds: &BoxRegion, seed: u64, h: S) -> Result<LatticeFunction<S>> {
    if bounds.is_empty() {
        return Err(domain(format!("empty box {bounds}")));
    }
    check_h(&h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = bounds
        .sites()
        .filter_map(|m| {
            let v = Octonion::new(std::array::from_fn(|_| S::random_coefficient(&mut rng)));
            (!v.is_zero()).then_some((m, v))
        })
        .collect();
    Ok(LatticeFunction::from_sorted_unchecked(h, Region::Whole, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::Error;

    type F = LatticeFunction<Rational>;
    type O = Octonion<Rational>;

    fn one() -> Rational {
        Rational::from_integer(1)
    }

    #[test]
    fn box_sites_are_lexicographic() {
        let b = BoxRegion::new(MultiIndex([0, 0, 0, 0, 0, 0, -1, 0]), MultiIndex([1, 0, 0, 0, 0, 0, 1, 1]));
        let sites: Vec<_> = b.sites().collect();
        assert_eq!(sites.len() as u128, b.site_count());
        assert_eq!(sites.len(), 12);
        assert!(sites.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(BoxRegion::cube(1).sites().count(), 6561);
        let empty = BoxRegion::new(MultiIndex::axis(3, 1), MultiIndex::ORIGIN);
        assert!(empty.is_empty());
        assert_eq!(empty.sites().count(), 0);
    }

    #[test]
    fn delta_values() {
        let d = delta(MultiIndex::ORIGIN, one()).unwrap();
        assert_eq!(d.value(&MultiIndex::ORIGIN), O::unit(0));
        assert!(d.value(&MultiIndex::axis(3, 1)).is_zero());
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn linear_values() {
        let b = BoxRegion::cube(3);
        let f = linear(1, &O::unit(0), &b, one()).unwrap();
        let m = MultiIndex([0, 3, 0, 0, 0, 0, 0, 0]);
        assert_eq!(f.value(&m), O::real(Rational::from_integer(3)));

        let g = f.sub(&linear(2, &O::unit(4), &b, one()).unwrap()).unwrap();
        let m = MultiIndex([0, 2, 1, 0, 0, 0, 0, 0]);
        assert_eq!(g.value(&m), O::from_i64s([2, 0, 0, 0, -1, 0, 0, 0]));
        assert_eq!(g.right_mul(&O::unit(3)).value(&m), O::from_i64s([0, 0, 0, 2, 0, 0, 0, -1]));

        assert!(linear(1, &O::zero(), &b, one()).unwrap().is_empty());
        let empty = BoxRegion::new(MultiIndex::axis(0, 1), MultiIndex::ORIGIN);
        assert!(matches!(linear(1, &O::unit(0), &empty, one()), Err(Error::Domain(_))));
        assert!(linear(8, &O::unit(0), &b, one()).is_err());
    }

    #[test]
    fn linear_scales_with_h() {
        let h = Rational::new(1, 2);
        let f = linear(0, &O::unit(5), &BoxRegion::cube(1), h).unwrap();
        let m = MultiIndex::axis(0, -1);
        assert_eq!(f.value(&m), O::unit(5).scale(&Rational::new(-1, 2)));
    }

    #[test]
    fn random_is_deterministic_and_bounded() {
        let b = BoxRegion::cube(1);
        let a = random_function::<Rational>(&b, 42, one()).unwrap();
        assert_eq!(a, random_function(&b, 42, one()).unwrap());
        for (_, v) in a.iter() {
            for c in v.coeffs() {
                assert!(c.is_integer() && c.abs_f64() <= 9.0);
            }
        }
        let distinct: std::collections::HashSet<String> = (0..100u64)
            .map(|s| {
                let f = random_function::<Rational>(&BoxRegion::cube(0), s, one()).unwrap();
                f.value(&MultiIndex::ORIGIN).render()
            })
            .collect();
        assert_eq!(distinct.len(), 100);
    }

    #[test]
    fn arithmetic_keeps_canonical_form() {
        let f = random_function::<Rational>(&BoxRegion::cube(1), 5, one()).unwrap();
        let z = f.add(&f.scale(&Rational::from_integer(-1))).unwrap();
        assert!(z.is_empty());
        assert_eq!(f.right_mul(&O::unit(0)), f);
        assert!(f.scale(&Rational::zero()).is_empty());
    }

    #[test]
    fn mismatched_operands_are_rejected() {
        let f = delta(MultiIndex::ORIGIN, one()).unwrap();
        let g = delta(MultiIndex::ORIGIN, Rational::from_integer(2)).unwrap();
        assert!(f.add(&g).is_err());
        let u = f.with_region(Region::Upper).unwrap();
        assert!(f.add(&u).is_err());
    }

    #[test]
    fn regions_are_enforced() {
        let below = MultiIndex::axis(7, -1);
        assert!(F::from_sites(one(), Region::Upper, [(below, O::unit(0))]).is_err());
        assert!(F::from_sites(one(), Region::Lower, [(below, O::unit(0))]).is_ok());
        let f = delta(below, one()).unwrap();
        assert!(f.with_region(Region::Upper).is_err());
        assert!(F::zero(Rational::zero(), Region::Whole).is_err());
        let dup = [(MultiIndex::ORIGIN, O::unit(0)), (MultiIndex::ORIGIN, O::unit(1))];
        assert!(F::from_sites(one(), Region::Whole, dup).is_err());
    }

    #[test]
    fn region_text_round_trip() {
        for r in [Region::Whole, Region::Upper, Region::Lower, Region::Box(BoxRegion::cube(2))] {
            assert_eq!(r.to_string().parse::<Region>().unwrap(), r);
        }
        assert!("sideways".parse::<Region>().is_err());
    }

    #[test]
    fn cursor_matches_binary_search() {
        let b = BoxRegion::new(MultiIndex([0, 0, 0, 0, 0, -1, -2, -2]), MultiIndex([0, 0, 0, 0, 1, 1, 2, 2]));
        let f = random_function::<Rational>(&b, 4, one()).unwrap().restrict(|m| (m.0[6] + m.0[7]) % 3 != 0);
        let mut c: Cursors<'_, Rational, 1> = Cursors::new(&f);
        for m in b.padded(1).sites() {
            assert_eq!(c.at(0, &m), f.get(&m), "{m}");
        }
    }
}
