//! Finite differences and discrete Cauchy-Riemann operators.
//!
//! `D+ = sum_j e_j d+j` and `D- = sum_j e_j d-j` over all eight axes, with
//! `d+j f(m) = (f(m + e_j) - f(m)) / h` and `d-j f(m) = (f(m) - f(m - e_j)) / h`.
//! Left application multiplies the basis unit onto the difference from the
//! left, right application from the right. Conjugated operators flip the sign
//! of the imaginary terms: `conj(D-) = d-0 - sum_{j>=1} e_j d-j`.
//!
//! Output domains depend on the region of the input:
//!
//! * whole lattice: every site;
//! * half-lattices: the interior (`m7 >= 1` upper, `m7 <= -1` lower);
//! * box `[lo, hi]`: `[lo, hi-1]` for forward stencils, `[lo+1, hi]` for
//!   backward ones and `[lo+1, hi-1]` for the star-Laplacian, so every read
//!   stays inside the box. The output carries the shrunken box as its region.

use rayon::prelude::*;

use crate::algebra::{BasisTable, Octonion};
use crate::error::{domain, Error, Result};
use crate::lattice::{BoxRegion, Cursors, LatticeFunction, Lookup, MultiIndex, Region, DIM};
use crate::scalar::{Mode, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

/// Which side the basis units multiply from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OperatorVariant {
    pub direction: Direction,
    pub side: Side,
    pub conjugated: bool,
}

impl OperatorVariant {
    pub const fn new(direction: Direction, side: Side, conjugated: bool) -> Self {
        OperatorVariant { direction, side, conjugated }
    }

    /// `D+ f`.
    pub const LEFT_FORWARD: Self = Self::new(Direction::Forward, Side::Left, false);
    /// `D- f`.
    pub const LEFT_BACKWARD: Self = Self::new(Direction::Backward, Side::Left, false);
    /// `f D+`.
    pub const RIGHT_FORWARD: Self = Self::new(Direction::Forward, Side::Right, false);
    /// `f D-`.
    pub const RIGHT_BACKWARD: Self = Self::new(Direction::Backward, Side::Right, false);

    pub fn conjugate(self) -> Self {
        OperatorVariant { conjugated: !self.conjugated, ..self }
    }

    pub fn all() -> impl Iterator<Item = Self> {
        [Direction::Forward, Direction::Backward].into_iter().flat_map(|d| {
            [Side::Left, Side::Right]
                .into_iter()
                .flat_map(move |s| [false, true].into_iter().map(move |c| Self::new(d, s, c)))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Reach {
    Forward,
    Backward,
    Both,
}

impl From<Direction> for Reach {
    fn from(d: Direction) -> Self {
        match d {
            Direction::Forward => Reach::Forward,
            Direction::Backward => Reach::Backward,
        }
    }
}

/// Sites where an operator acting on a function over `region` is evaluated.
#[derive(Debug, Clone, Copy)]
struct OutputDomain {
    region: Region,
}

impl OutputDomain {
    fn new(region: Region, reach: Reach) -> Self {
        let region = match region {
            Region::Box(b) => {
                let (dlo, dhi) = match reach {
                    Reach::Forward => (0, 1),
                    Reach::Backward => (1, 0),
                    Reach::Both => (1, 1),
                };
                Region::Box(BoxRegion::new(b.lo.offset_all(dlo), b.hi.offset_all(-dhi)))
            }
            other => other,
        };
        OutputDomain { region }
    }

    fn contains(&self, m: &MultiIndex) -> bool {
        in_operator_interior(self.region, m)
    }
}

/// Whether operators on a function over `region` act at `m`.
///
/// For the half-lattices this is the interior `m7 >= 1` (upper) or
/// `m7 <= -1` (lower); the layer `m7 = 0` is data only.
pub fn in_operator_interior(region: Region, m: &MultiIndex) -> bool {
    match region {
        Region::Whole => true,
        Region::Upper => m.last() >= 1,
        Region::Lower => m.last() <= -1,
        Region::Box(b) => b.contains(m),
    }
}

/// Candidate output sites in lexicographic order: the output box itself when
/// that is no larger than the dilated support, otherwise the support shifted
/// by every stencil offset.
fn candidate_sites<S: Scalar>(
    f: &LatticeFunction<S>,
    axes: &[usize],
    reach: Reach,
    dom: &OutputDomain,
    full_box: bool,
) -> Vec<MultiIndex> {
    let per_site = 1 + axes.len() * if reach == Reach::Both { 2 } else { 1 };
    if let Region::Box(b) = dom.region {
        if full_box || b.site_count() <= (f.len() * per_site) as u128 {
            return b.sites().collect();
        }
    }
    let mut out = Vec::with_capacity(f.len() * per_site);
    for m in f.support() {
        out.push(*m);
        for &j in axes {
            // A forward stencil at m reads m + e_j, so m - e_j sees the value at m.
            if matches!(reach, Reach::Forward | Reach::Both) {
                out.push(m.shifted(j, -1));
            }
            if matches!(reach, Reach::Backward | Reach::Both) {
                out.push(m.shifted(j, 1));
            }
        }
    }
    out.par_sort_unstable();
    out.dedup();
    out
}

/// Stencil slots: the centre, `m + e_j` and `m - e_j`.
pub(crate) const SLOTS: usize = 1 + 2 * DIM;
const CENTRE: usize = 0;

#[inline]
fn ahead(j: usize) -> usize {
    1 + j
}

#[inline]
fn behind(j: usize) -> usize {
    1 + DIM + j
}

/// Per-block lookups for sorted sweeps over sites.
pub(crate) type Stencil<'a, S> = Cursors<'a, S, SLOTS>;

const EVAL_BLOCK: usize = 2048;

/// Runs `eval` over the candidate sites of the output domain in parallel
/// blocks. Each block folds its `(site, value)` pairs, in site order, into
/// a fresh accumulator; the accumulators come back in block order.
fn sweep<'a, S: Scalar, A: Send>(
    f: &'a LatticeFunction<S>,
    axes: &[usize],
    reach: Reach,
    full_box: bool,
    eval: impl Fn(&mut Stencil<'a, S>, &MultiIndex) -> Octonion<S> + Sync,
    init: impl Fn() -> A + Sync,
    step: impl Fn(&mut A, &MultiIndex, Octonion<S>) + Sync,
) -> (Region, Vec<A>) {
    let dom = OutputDomain::new(f.region(), reach);
    let sites = candidate_sites(f, axes, reach, &dom, full_box);
    let blocks = sites
        .par_chunks(EVAL_BLOCK)
        .map(|block| {
            let mut look = Stencil::new(f);
            let mut acc = init();
            for m in block.iter().filter(|m| dom.contains(m)) {
                let v = eval(&mut look, m);
                step(&mut acc, m, v);
            }
            acc
        })
        .collect();
    (dom.region, blocks)
}

/// Evaluates `eval` on the output domain, keeping lexicographic order and
/// dropping zeros.
fn evaluate<'a, S: Scalar>(
    f: &'a LatticeFunction<S>,
    axes: &[usize],
    reach: Reach,
    eval: impl Fn(&mut Stencil<'a, S>, &MultiIndex) -> Octonion<S> + Sync,
) -> LatticeFunction<S> {
    let (region, blocks) = sweep(f, axes, reach, false, eval, Vec::new, |out, m, v| {
        if !v.is_zero() {
            out.push((*m, v));
        }
    });
    LatticeFunction::from_sorted_unchecked(f.h().clone(), region, blocks.concat())
}

/// Unscaled difference along `axis`: `f(m+e) - f(m)` or `f(m) - f(m-e)`.
#[inline]
pub(crate) fn raw_diff_at<'a, S: Scalar>(
    f: &mut impl Lookup<'a, S>,
    m: &MultiIndex,
    axis: usize,
    direction: Direction,
) -> Option<Octonion<S>> {
    let (a, b) = match direction {
        Direction::Forward => (f.at(ahead(axis), &m.shifted(axis, 1)), f.at(CENTRE, m)),
        Direction::Backward => (f.at(CENTRE, m), f.at(behind(axis), &m.shifted(axis, -1))),
    };
    match (a, b) {
        (None, None) => None,
        (Some(x), None) => Some(x.clone()),
        (None, Some(y)) => Some(-y.clone()),
        (Some(x), Some(y)) => Some(x.clone() - y.clone()),
    }
}

/// The Cauchy-Riemann operator `variant` applied to `f`, evaluated at `m`.
///
/// By distributivity `sum_j e_j (x_j - y_j) = sum_j e_j x_j - sum_j e_j y_j`,
/// so the centre value and each neighbour are routed through the basis
/// table separately, skipping zero coefficients. No product is reassociated.
pub(crate) fn cr_at<'a, S: Scalar>(f: &mut impl Lookup<'a, S>, m: &MultiIndex, variant: OperatorVariant, inv_h: &S) -> Octonion<S> {
    let table = &BasisTable::STANDARD;
    let mut acc = Octonion::zero();
    let mut route = |v: &Octonion<S>, j: usize, sign: i8| {
        let sign = if variant.conjugated && j > 0 { -sign } else { sign };
        for (i, x) in v.coeffs().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let u = match variant.side {
                Side::Left => table.get(j, i),
                Side::Right => table.get(i, j),
            };
            acc.accumulate(u.index as usize, sign * u.sign, x.clone());
        }
    };
    // Forward: f(m + e_j) - f(m); backward: f(m) - f(m - e_j).
    let (centre_sign, neighbour_sign) = match variant.direction {
        Direction::Forward => (-1, 1),
        Direction::Backward => (1, -1),
    };
    if let Some(c) = f.at(CENTRE, m) {
        for j in 0..DIM {
            route(c, j, centre_sign);
        }
    }
    for j in 0..DIM {
        let n = match variant.direction {
            Direction::Forward => f.at(ahead(j), &m.shifted(j, 1)),
            Direction::Backward => f.at(behind(j), &m.shifted(j, -1)),
        };
        if let Some(n) = n {
            route(n, j, neighbour_sign);
        }
    }
    if inv_h.is_one() {
        acc
    } else {
        acc.scale(inv_h)
    }
}

fn inverse<S: Scalar>(h: &S) -> S {
    S::one() / h.clone()
}

fn check_axis(axis: usize) -> Result<()> {
    if axis < DIM {
        Ok(())
    } else {
        Err(domain(format!("axis {axis} out of range 0..=7")))
    }
}

fn partial<S: Scalar>(f: &LatticeFunction<S>, axis: usize, direction: Direction) -> Result<LatticeFunction<S>> {
    check_axis(axis)?;
    let inv_h = inverse(f.h());
    Ok(evaluate(f, &[axis], direction.into(), |look, m| {
        raw_diff_at(look, m, axis, direction).map_or_else(Octonion::zero, |d| d.scale(&inv_h))
    }))
}

/// `d+j f`.
pub fn forward_diff<S: Scalar>(f: &LatticeFunction<S>, axis: usize) -> Result<LatticeFunction<S>> {
    partial(f, axis, Direction::Forward)
}

/// `d-j f`.
pub fn backward_diff<S: Scalar>(f: &LatticeFunction<S>, axis: usize) -> Result<LatticeFunction<S>> {
    partial(f, axis, Direction::Backward)
}

const ALL_AXES: [usize; DIM] = [0, 1, 2, 3, 4, 5, 6, 7];

pub fn apply_cr<S: Scalar>(f: &LatticeFunction<S>, variant: OperatorVariant) -> LatticeFunction<S> {
    let inv_h = inverse(f.h());
    evaluate(f, &ALL_AXES, variant.direction.into(), |look, m| cr_at(look, m, variant, &inv_h))
}

/// Summary of a Cauchy-Riemann operator output, computed without storing it.
#[derive(Debug, Clone, PartialEq)]
pub struct CrProfile<S: Scalar> {
    /// Region of the output (the shrunken box for box inputs).
    pub region: Region,
    /// Sites evaluated: every site of the output box for box inputs,
    /// otherwise the interior sites within reach of the support.
    pub visited_sites: usize,
    /// Sites where the output is nonzero.
    pub nonzero_sites: usize,
    /// Output with the largest coefficient magnitude (first in site order on
    /// ties); zero when the output vanishes.
    pub max_residual: Octonion<S>,
    pub max_residual_site: Option<MultiIndex>,
    /// The output value, when it is the same at every visited site.
    pub common_value: Option<Octonion<S>>,
}

struct ProfileAcc<S: Scalar> {
    visited: usize,
    nonzero: usize,
    max: Option<(MultiIndex, Octonion<S>, f64)>,
    /// `None` before the first site; `Some(None)` once two values differ.
    common: Option<Option<Octonion<S>>>,
}

impl<S: Scalar> ProfileAcc<S> {
    fn new() -> Self {
        ProfileAcc { visited: 0, nonzero: 0, max: None, common: None }
    }

    fn push(&mut self, m: &MultiIndex, v: Octonion<S>) {
        self.visited += 1;
        let repeat = matches!(&self.common, Some(Some(c)) if *c == v);
        if !repeat {
            self.common = match self.common {
                None => Some(Some(v.clone())),
                Some(_) => Some(None),
            };
        }
        if v.is_zero() {
            return;
        }
        self.nonzero += 1;
        if repeat {
            // Every value so far equals `v`, so the maximum is already held.
            return;
        }
        let size = v.max_abs();
        if self.max.as_ref().is_none_or(|(_, _, b)| size > *b) {
            self.max = Some((*m, v, size));
        }
    }

    fn merge(mut self, next: Self) -> Self {
        self.visited += next.visited;
        self.nonzero += next.nonzero;
        if let Some((_, _, size)) = &next.max {
            if self.max.as_ref().is_none_or(|(_, _, b)| size > b) {
                self.max = next.max;
            }
        }
        self.common = match (self.common, next.common) {
            (None, c) | (c, None) => c,
            (Some(Some(a)), Some(Some(b))) if a == b => Some(Some(a)),
            _ => Some(None),
        };
        self
    }
}

/// Profiles `apply_cr(f, variant)` in a single streaming pass.
pub fn cr_profile<S: Scalar>(f: &LatticeFunction<S>, variant: OperatorVariant) -> CrProfile<S> {
    let inv_h = inverse(f.h());
    let (region, blocks) = sweep(
        f,
        &ALL_AXES,
        variant.direction.into(),
        true,
        |look, m| cr_at(look, m, variant, &inv_h),
        ProfileAcc::new,
        ProfileAcc::push,
    );
    let acc = blocks.into_iter().fold(ProfileAcc::new(), ProfileAcc::merge);
    let (site, residual) = match acc.max {
        Some((m, v, _)) => (Some(m), v),
        None => (None, Octonion::zero()),
    };
    CrProfile {
        region,
        visited_sites: acc.visited,
        nonzero_sites: acc.nonzero,
        max_residual: residual,
        max_residual_site: site,
        common_value: acc.common.flatten(),
    }
}

/// Outcome of a discrete monogenicity check.
#[derive(Debug, Clone, PartialEq)]
pub struct MonogenicCheck<S: Scalar> {
    pub monogenic: bool,
    pub profile: CrProfile<S>,
}

/// Whether `apply_cr(f, variant)` vanishes on the output domain, within
/// `tol` (which must be 0 in exact mode).
pub fn is_monogenic<S: Scalar>(f: &LatticeFunction<S>, variant: OperatorVariant, tol: f64) -> Result<MonogenicCheck<S>> {
    if S::MODE == Mode::Exact && tol != 0.0 {
        return Err(Error::Config("exact mode compares residuals with zero; tolerance must be 0".into()));
    }
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::Config(format!("tolerance must be non-negative, got {tol}")));
    }
    let profile = cr_profile(f, variant);
    Ok(MonogenicCheck { monogenic: profile.max_residual.max_abs() <= tol, profile })
}

/// The star-Laplacian `sum_{j=0..7} d+j d-j f`.
pub fn star_laplacian<S: Scalar>(f: &LatticeFunction<S>) -> LatticeFunction<S> {
    let inv_h2 = inverse(f.h()).pow(2);
    let two = S::from_i64(2);
    evaluate(f, &ALL_AXES, Reach::Both, |look, m| {
        let mut acc = Octonion::zero();
        let centre = look.at(CENTRE, m).map(|v| v.scale(&two));
        for j in 0..DIM {
            if let Some(v) = look.at(ahead(j), &m.shifted(j, 1)) {
                acc += v.clone();
            }
            if let Some(v) = look.at(behind(j), &m.shifted(j, -1)) {
                acc += v.clone();
            }
            if let Some(c) = &centre {
                acc -= c.clone();
            }
        }
        acc.scale(&inv_h2)
    })
}

/// `Δf - (D+ (conj(D-) f) + D- (conj(D+) f)) / 2`, all operators applied from
/// the left.
///
/// On the half-lattices the composed operators read the layer next to the
/// interior boundary, so the residual is reported on `|m7| >= 2` only.
pub fn factorization_residual<S: Scalar>(f: &LatticeFunction<S>) -> LatticeFunction<S> {
    let lap = star_laplacian(f);
    let fwd_of_conj_bwd = apply_cr(&apply_cr(f, OperatorVariant::LEFT_BACKWARD.conjugate()), OperatorVariant::LEFT_FORWARD);
    let bwd_of_conj_fwd = apply_cr(&apply_cr(f, OperatorVariant::LEFT_FORWARD.conjugate()), OperatorVariant::LEFT_BACKWARD);
    let half = S::one() / S::from_i64(2);
    let sum = fwd_of_conj_bwd.add(&bwd_of_conj_fwd).expect("compositions share region");
    let residual = lap.sub(&sum.scale(&half)).expect("laplacian and compositions share region");
    match f.region() {
        Region::Upper => residual.restrict(|m| m.last() >= 2),
        Region::Lower => residual.restrict(|m| m.last() <= -2),
        _ => residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{delta, linear, linear_sum, random_function};
    use crate::scalar::Rational;

    type O = Octonion<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn variants_enumerate() {
        let all: std::collections::HashSet<_> = OperatorVariant::all().collect();
        assert_eq!(all.len(), 8);
    }

    #[test]
    fn backward_diff_of_delta() {
        let d = delta(MultiIndex::ORIGIN, q(1)).unwrap();
        let b = backward_diff(&d, 3).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.value(&MultiIndex::ORIGIN), O::unit(0));
        assert_eq!(b.value(&MultiIndex::axis(3, 1)), -O::unit(0));
        assert!(forward_diff(&d, 8).is_err());
    }

    #[test]
    fn differences_of_constants_and_linears() {
        let bx = BoxRegion::cube(2);
        let h = Rational::new(1, 3);
        let c = linear(0, &O::zero(), &bx, h.clone()).unwrap();
        assert!(forward_diff(&c, 2).unwrap().is_empty());
        let f = linear(1, &O::unit(0), &bx, h.clone()).unwrap();
        let fwd = forward_diff(&f, 1).unwrap();
        let bwd = backward_diff(&f, 1).unwrap();
        // Interiors: forward [lo, hi-1], backward [lo+1, hi]; both constant e0.
        assert_eq!(fwd.len(), 4usize.pow(8));
        assert_eq!(bwd.len(), 4usize.pow(8));
        assert!(fwd.iter().all(|(_, v)| *v == O::unit(0)));
        assert!(bwd.iter().all(|(_, v)| *v == O::unit(0)));
    }

    #[test]
    fn counterexample_pair() {
        let bx = BoxRegion::cube(2);
        let f = linear(1, &O::unit(0), &bx, q(1))
            .unwrap()
            .sub(&linear(2, &O::unit(4), &bx, q(1)).unwrap())
            .unwrap();
        assert!(apply_cr(&f, OperatorVariant::LEFT_BACKWARD).is_empty());
        let g = f.right_mul(&O::unit(3));
        let dg = apply_cr(&g, OperatorVariant::LEFT_BACKWARD);
        assert_eq!(dg.len(), 4usize.pow(8));
        assert!(dg.iter().all(|(_, v)| *v == O::unit(5).scale(&q(2))));

        let check = is_monogenic(&g, OperatorVariant::LEFT_BACKWARD, 0.0).unwrap();
        assert!(!check.monogenic);
        assert_eq!(check.profile.max_residual, O::unit(5).scale(&q(2)));
        assert_eq!(check.profile.common_value, Some(O::unit(5).scale(&q(2))));
        assert_eq!(check.profile.visited_sites, 4usize.pow(8));
        assert_eq!(check.profile.nonzero_sites, 4usize.pow(8));
        let fc = is_monogenic(&f, OperatorVariant::LEFT_BACKWARD, 0.0).unwrap();
        assert!(fc.monogenic);
        assert_eq!(fc.profile.common_value, Some(O::zero()));
        let fsum = linear_sum(&[(1, O::unit(0)), (2, -O::unit(4))], &bx, q(1)).unwrap();
        assert_eq!(fsum, f);
        assert_eq!(f.clone().into_right_mul(&O::unit(3)), g);
        assert!(is_monogenic(&f, OperatorVariant::LEFT_BACKWARD, 1e-9).is_err());

        // Right application differs from left on the same input.
        assert_ne!(apply_cr(&g, OperatorVariant::RIGHT_BACKWARD), dg);
    }

    #[test]
    fn delta_is_not_monogenic() {
        let d = delta(MultiIndex::ORIGIN, q(1)).unwrap();
        for v in OperatorVariant::all() {
            assert!(!is_monogenic(&d, v, 0.0).unwrap().monogenic);
        }
        assert!(apply_cr(&LatticeFunction::<Rational>::zero(q(1), Region::Whole).unwrap(), OperatorVariant::LEFT_FORWARD).is_empty());
    }

    #[test]
    fn laplacian_of_delta() {
        let d = delta(MultiIndex::ORIGIN, q(1)).unwrap();
        let l = star_laplacian(&d);
        assert_eq!(l.len(), 17);
        assert_eq!(l.value(&MultiIndex::ORIGIN), O::real(q(-16)));
        for j in 0..DIM {
            assert_eq!(l.value(&MultiIndex::axis(j, 1)), O::unit(0));
            assert_eq!(l.value(&MultiIndex::axis(j, -1)), O::unit(0));
        }
        let f = linear(4, &O::unit(6), &BoxRegion::cube(1), q(1)).unwrap();
        assert!(star_laplacian(&f).is_empty());
    }

    #[test]
    fn factorization_on_small_inputs() {
        let d = delta(MultiIndex::ORIGIN, Rational::new(1, 2)).unwrap();
        assert!(factorization_residual(&d).is_empty());
        let z = LatticeFunction::<Rational>::zero(q(1), Region::Whole).unwrap();
        assert!(factorization_residual(&z).is_empty());
        let b = BoxRegion::new(MultiIndex([0, -1, 0, 0, 0, 0, 0, -1]), MultiIndex([1, 1, 0, 0, 0, 0, 0, 1]));
        let r = random_function::<Rational>(&b, 3, q(1)).unwrap();
        assert!(factorization_residual(&r).is_empty());
        assert!(factorization_residual(&r.with_region(Region::Box(b)).unwrap()).is_empty());
        let up = BoxRegion::new(MultiIndex([0, 0, 0, 0, 0, 0, 0, 0]), MultiIndex([1, 0, 0, 0, 0, 1, 0, 3]));
        let r = random_function::<Rational>(&up, 4, q(1)).unwrap().with_region(Region::Upper).unwrap();
        assert!(factorization_residual(&r).is_empty());
    }

    #[test]
    fn half_space_outputs_stay_in_interior() {
        let b = BoxRegion::new(MultiIndex([0, 0, 0, 0, 0, 0, 0, 0]), MultiIndex([1, 1, 0, 0, 0, 0, 0, 2]));
        let f = random_function::<Rational>(&b, 9, q(1)).unwrap().with_region(Region::Upper).unwrap();
        for v in OperatorVariant::all() {
            assert!(apply_cr(&f, v).support().all(|m| m.last() >= 1));
        }
        let lower = BoxRegion::new(MultiIndex([0, 0, 0, 0, 0, 0, 0, -2]), MultiIndex([1, 1, 0, 0, 0, 0, 0, 0]));
        let f = random_function::<Rational>(&lower, 9, q(1)).unwrap().with_region(Region::Lower).unwrap();
        assert!(star_laplacian(&f).support().all(|m| m.last() <= -1));
    }
}
