//! Discrete Stokes pairings on the whole lattice and the half-lattices.
//!
//! The pairing of `g` and `f` with sign `s` is
//!
//! ```text
//! P_s(g, f) = sum_m { [g D+](m) f(m) + s g(m) [D- f](m) } h^8
//! ```
//!
//! summed over the operator interior of the region. Summation by parts turns
//! the first term into `-sum g_i d-j f_k (e_i e_j) e_k h^8`, which gives the
//! exact identities checked here:
//!
//! ```text
//! whole lattice:  P_s = C_s
//! half-lattices:  P_s = C_s + B
//! C_s = sum_m sum_{i,j,k} g_i(m) (d-j f_k)(m) [s e_i (e_j e_k) - (e_i e_j) e_k] h^8
//! B   = -sum ((g(m',1) e7) f(m',0)) h^7      (upper)
//!       +sum ((g(m',0) e7) f(m',-1)) h^7     (lower)
//! ```
//!
//! `C_{-1}` vanishes on anti-associative triples only, so the claimed
//! vanishing of `P_{-1}` holds exactly when the associative triples carry no
//! weight. [`theorem_report`] puts the claimed right-hand sides next to these
//! derived values.

mod oracle;

use std::sync::LazyLock;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{triple_products, Octonion};
use crate::error::{domain, Result};
use crate::lattice::{BoxRegion, LatticeFunction, MultiIndex, Region, SPLIT_AXIS};
use crate::operators::{cr_at, in_operator_interior, raw_diff_at, Direction, OperatorVariant, Stencil};
use crate::reduce::block_sum_with;
use crate::scalar::{Mode, Scalar};

pub use oracle::{brute_force_oracle, ORACLE_SITE_LIMIT};

/// Sign in front of the `g [D- f]` summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairingSign {
    Plus,
    Minus,
}

impl PairingSign {
    pub fn value(self) -> i8 {
        match self {
            PairingSign::Plus => 1,
            PairingSign::Minus => -1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PairingSign::Plus => "plus",
            PairingSign::Minus => "minus",
        }
    }
}

impl std::str::FromStr for PairingSign {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "plus" | "+" | "+1" => Ok(PairingSign::Plus),
            "minus" | "-" | "-1" => Ok(PairingSign::Minus),
            other => Err(format!("unknown sign `{other}` (expected plus|minus)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Whole lattice, claimed right-hand side 0.
    T1,
    /// Upper half-lattice, claimed right-hand side `sum e7 (g(m',1) f(m',0)) h^p`.
    T2,
    /// Lower half-lattice, claimed right-hand side `-sum e7 (g(m',0) f(m',-1)) h^p`.
    T3,
}

impl Theorem {
    pub fn region(self) -> Region {
        match self {
            Theorem::T1 => Region::Whole,
            Theorem::T2 => Region::Upper,
            Theorem::T3 => Region::Lower,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::T1 => "T1",
            Theorem::T2 => "T2",
            Theorem::T3 => "T3",
        }
    }
}

impl std::str::FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "T1" | "t1" => Ok(Theorem::T1),
            "T2" | "t2" => Ok(Theorem::T2),
            "T3" | "t3" => Ok(Theorem::T3),
            other => Err(format!("unknown theorem `{other}` (expected T1|T2|T3)")),
        }
    }
}

/// Shared region of a pair of functions, which must be whole or half.
fn pair_region<S: Scalar>(g: &LatticeFunction<S>, f: &LatticeFunction<S>) -> Result<Region> {
    if g.h() != f.h() {
        return Err(domain(format!(
            "lattice constants differ ({} vs {})",
            g.h().render(),
            f.h().render()
        )));
    }
    if g.region() != f.region() {
        return Err(domain(format!("regions differ ({} vs {})", g.region(), f.region())));
    }
    match g.region() {
        Region::Box(_) => Err(domain("pairings are defined on the whole lattice and the half-lattices, not on boxes")),
        r => Ok(r),
    }
}

/// `P_s(g, f)`; every product is evaluated with the grouping shown in the
/// module docs.
pub fn pairing<S: Scalar>(g: &LatticeFunction<S>, f: &LatticeFunction<S>, sign: PairingSign) -> Result<Octonion<S>> {
    let region = pair_region(g, f)?;
    let h = g.h();
    let inv_h = S::one() / h.clone();

    let first = block_sum_with(f.entries(), || Stencil::new(g), |look, (m, fv)| {
        in_operator_interior(region, m).then(|| cr_at(look, m, OperatorVariant::RIGHT_FORWARD, &inv_h).mul(fv))
    });
    let second = block_sum_with(g.entries(), || Stencil::new(f), |look, (m, gv)| {
        in_operator_interior(region, m).then(|| gv.mul(&cr_at(look, m, OperatorVariant::LEFT_BACKWARD, &inv_h)))
    });
    let second = match sign {
        PairingSign::Plus => second,
        PairingSign::Minus => -second,
    };
    Ok((first + second).scale(&h.pow(8)))
}

/// `T_s(i, j, k) = s e_i (e_j e_k) - (e_i e_j) e_k` as `(coefficient, index)`;
/// the coefficient is 0 or ±2.
type CorrectionTable = [[[(i8, u8); 8]; 8]; 8];

fn build_correction_table(sign: i8) -> CorrectionTable {
    let mut t = [[[(0i8, 0u8); 8]; 8]; 8];
    for (i, plane) in t.iter_mut().enumerate() {
        for (j, row) in plane.iter_mut().enumerate() {
            for (k, slot) in row.iter_mut().enumerate() {
                let (left, right) = triple_products(i, j, k);
                *slot = (sign * right.sign - left.sign, right.index);
            }
        }
    }
    t
}

static CORRECTION_MINUS: LazyLock<CorrectionTable> = LazyLock::new(|| build_correction_table(-1));
static CORRECTION_PLUS: LazyLock<CorrectionTable> = LazyLock::new(|| build_correction_table(1));

/// `C_s(g, f)`: the volume term left over after summation by parts.
pub fn correction_term<S: Scalar>(g: &LatticeFunction<S>, f: &LatticeFunction<S>, sign: PairingSign) -> Result<Octonion<S>> {
    let region = pair_region(g, f)?;
    let table: &CorrectionTable = match sign {
        PairingSign::Plus => &CORRECTION_PLUS,
        PairingSign::Minus => &CORRECTION_MINUS,
    };
    let h = g.h();
    let sum = block_sum_with(g.entries(), || Stencil::new(f), |look, (m, gv)| {
        if !in_operator_interior(region, m) {
            return None;
        }
        let mut acc = Octonion::zero();
        for j in 0..8 {
            let Some(d) = raw_diff_at(look, m, j, Direction::Backward) else {
                continue;
            };
            for (i, gi) in gv.coeffs().iter().enumerate() {
                if gi.is_zero() {
                    continue;
                }
                for (k, dk) in d.coeffs().iter().enumerate() {
                    let (coef, idx) = table[i][j][k];
                    if coef == 0 || dk.is_zero() {
                        continue;
                    }
                    acc.accumulate(idx as usize, 1, S::from_i64(coef as i64) * gi.clone() * dk.clone());
                }
            }
        }
        Some(acc)
    });
    // Raw differences still need the 1/h, so h^8 / h = h^7.
    Ok(sum.scale(&h.pow(7)))
}

/// Boundary layers read by the half-lattice formulas: `(g layer, f layer, sign)`.
fn boundary_layers(region: Region) -> Result<(i32, i32, i8)> {
    match region {
        Region::Upper => Ok((1, 0, 1)),
        Region::Lower => Ok((0, -1, -1)),
        Region::Whole => Err(domain("the whole lattice has no boundary term")),
        Region::Box(_) => Err(domain("boundary terms are defined on the half-lattices only")),
    }
}

/// Sum over boundary-adjacent pairs `(g(m', gl), f(m', fl))` of `term`.
fn boundary_sum<S: Scalar>(
    g: &LatticeFunction<S>,
    f: &LatticeFunction<S>,
    g_layer: i32,
    term: impl Fn(&Octonion<S>, &Octonion<S>) -> Octonion<S>,
) -> Octonion<S> {
    let mut acc = Octonion::zero();
    for (m, gv) in g.iter().filter(|(m, _)| m.last() == g_layer) {
        if let Some(fv) = f.get(&m.shifted(SPLIT_AXIS, -1)) {
            acc += term(gv, fv);
        }
    }
    acc
}

/// The claimed boundary expression `±sum e7 (g f) h^p`, evaluated as written.
pub fn boundary_term_claim<S: Scalar>(g: &LatticeFunction<S>, f: &LatticeFunction<S>, h_power: u32) -> Result<Octonion<S>> {
    let region = pair_region(g, f)?;
    let (g_layer, _, sign) = boundary_layers(region)?;
    if !matches!(h_power, 7 | 8) {
        return Err(domain(format!("h power must be 7 or 8, got {h_power}")));
    }
    let sum = boundary_sum(g, f, g_layer, |gv, fv| gv.mul(fv).left_mul_unit(7));
    let sum = if sign < 0 { -sum } else { sum };
    Ok(sum.scale(&g.h().pow(h_power)))
}

/// The interface term `B` produced by summation by parts across `m7 = 0`.
pub fn boundary_term_derived<S: Scalar>(g: &LatticeFunction<S>, f: &LatticeFunction<S>) -> Result<Octonion<S>> {
    let region = pair_region(g, f)?;
    let (g_layer, _, sign) = boundary_layers(region)?;
    let sum = boundary_sum(g, f, g_layer, |gv, fv| gv.right_mul_unit(7).mul(fv));
    // Upper: -sum, lower: +sum.
    let sum = if sign > 0 { -sum } else { sum };
    Ok(sum.scale(&g.h().pow(7)))
}

/// Optional provenance recorded in a report.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ReportMeta {
    pub seed: Option<u64>,
    pub bounds: Option<BoxRegion>,
}

/// Claimed and derived sides of one Stokes formula.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport<S: Scalar> {
    pub theorem: Theorem,
    pub region: Region,
    pub sign: PairingSign,
    pub h: S,
    pub h_power: u32,
    pub mode: Mode,
    pub seed: Option<u64>,
    pub bounds: Option<BoxRegion>,
    pub claim_lhs: Octonion<S>,
    pub claim_rhs: Octonion<S>,
    /// `claim_lhs - claim_rhs`. Observational: never asserted to vanish.
    pub claim_residual: Octonion<S>,
    /// Residual against the claimed boundary term with `h^7` and `h^8`
    /// (half-lattices only).
    pub claim_residual_by_h_power: Option<[Octonion<S>; 2]>,
    pub correction: Octonion<S>,
    pub boundary_derived: Octonion<S>,
    /// `correction + boundary_derived`.
    pub derived_value: Octonion<S>,
    /// `claim_lhs - derived_value`; exactly zero in exact mode.
    pub derived_residual: Octonion<S>,
    pub site_count: usize,
    pub elapsed_ms: u64,
}

impl<S: Scalar> IdentityReport<S> {
    pub fn derived_holds(&self, tol: f64) -> bool {
        match S::MODE {
            Mode::Exact => self.derived_residual.is_zero(),
            Mode::Float => self.derived_residual.max_abs() <= tol,
        }
    }
}

impl<S: Scalar> Serialize for IdentityReport<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let mut st = s.serialize_struct("IdentityReport", 18)?;
        st.serialize_field("theorem", self.theorem.as_str())?;
        st.serialize_field("region", &self.region)?;
        st.serialize_field("sign", self.sign.as_str())?;
        st.serialize_field("h", &self.h.render())?;
        st.serialize_field("h_power", &self.h_power)?;
        st.serialize_field("mode", &self.mode)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("box", &self.bounds.map(|b| b.to_string()))?;
        st.serialize_field("claim_lhs", &self.claim_lhs.render_vec())?;
        st.serialize_field("claim_rhs", &self.claim_rhs.render_vec())?;
        st.serialize_field("claim_residual", &self.claim_residual.render_vec())?;
        st.serialize_field("claim_residual_h7", &self.claim_residual_by_h_power.as_ref().map(|r| r[0].render_vec()))?;
        st.serialize_field("claim_residual_h8", &self.claim_residual_by_h_power.as_ref().map(|r| r[1].render_vec()))?;
        st.serialize_field("correction", &self.correction.render_vec())?;
        st.serialize_field("boundary_derived", &self.boundary_derived.render_vec())?;
        st.serialize_field("derived_value", &self.derived_value.render_vec())?;
        st.serialize_field("derived_residual", &self.derived_residual.render_vec())?;
        st.serialize_field("site_count", &self.site_count)?;
        st.serialize_field("elapsed_ms", &self.elapsed_ms)?;
        st.end()
    }
}

/// Interior sites in the union of both supports.
fn visited_sites<S: Scalar>(g: &LatticeFunction<S>, f: &LatticeFunction<S>, region: Region) -> usize {
    let mut sites: Vec<&MultiIndex> = g.support().chain(f.support()).filter(|m| in_operator_interior(region, m)).collect();
    sites.sort_unstable();
    sites.dedup();
    sites.len()
}

/// Evaluates both sides of `theorem` for `g`, `f`.
pub fn theorem_report<S: Scalar>(
    g: &LatticeFunction<S>,
    f: &LatticeFunction<S>,
    theorem: Theorem,
    sign: PairingSign,
    h_power: u32,
    meta: ReportMeta,
) -> Result<IdentityReport<S>> {
    let timer = crate::timing::Stopwatch::start();
    let region = pair_region(g, f)?;
    if region != theorem.region() {
        return Err(domain(format!(
            "{} is stated on the {} region, functions live on {}",
            theorem.as_str(),
            theorem.region(),
            region
        )));
    }
    if !matches!(h_power, 7 | 8) {
        return Err(domain(format!("h power must be 7 or 8, got {h_power}")));
    }

    let claim_lhs = pairing(g, f, sign)?;
    let correction = correction_term(g, f, sign)?;
    let (claim_rhs, by_power, boundary_derived) = match theorem {
        Theorem::T1 => (Octonion::zero(), None, Octonion::zero()),
        Theorem::T2 | Theorem::T3 => {
            let rhs7 = boundary_term_claim(g, f, 7)?;
            let rhs8 = boundary_term_claim(g, f, 8)?;
            let chosen = if h_power == 7 { rhs7.clone() } else { rhs8.clone() };
            let by_power = [claim_lhs.clone() - rhs7, claim_lhs.clone() - rhs8];
            (chosen, Some(by_power), boundary_term_derived(g, f)?)
        }
    };
    let claim_residual = claim_lhs.clone() - claim_rhs.clone();
    let derived_value = correction.clone() + boundary_derived.clone();
    let derived_residual = claim_lhs.clone() - derived_value.clone();

    Ok(IdentityReport {
        theorem,
        region,
        sign,
        h: g.h().clone(),
        h_power,
        mode: S::MODE,
        seed: meta.seed,
        bounds: meta.bounds,
        claim_lhs,
        claim_rhs,
        claim_residual,
        claim_residual_by_h_power: by_power,
        correction,
        boundary_derived,
        derived_value,
        derived_residual,
        site_count: visited_sites(g, f, region),
        elapsed_ms: timer.elapsed_ms(),
    })
}
