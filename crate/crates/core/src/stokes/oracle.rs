//! Naive evaluation of the Stokes pairing.
//!
//! Shares no code with the fast path beyond value lookup and the basis
//! table: it walks every site of the padded bounding box and every component
//! triple `(i, j, k)`, multiplying scalar coefficients and signed basis units
//! directly. It is deliberately slow and serves as the reference the derived
//! identities are certified against.

use rayon::prelude::*;

use crate::algebra::{basis_mul, BasisUnit, Octonion};
use crate::error::{domain, Error, Result};
use crate::lattice::{BoxRegion, LatticeFunction, MultiIndex, Region};
use crate::scalar::Scalar;

use super::PairingSign;

/// Largest padded box the oracle will enumerate.
pub const ORACLE_SITE_LIMIT: u128 = 10_000_000;

fn compose(a: BasisUnit, b: BasisUnit) -> Result<BasisUnit> {
    let w = basis_mul(a.index as usize, b.index as usize)?;
    Ok(BasisUnit { sign: w.sign * a.sign * b.sign, index: w.index })
}

fn unit(i: usize) -> BasisUnit {
    BasisUnit { sign: 1, index: i as u8 }
}

/// `P_s(g, f)` by full expansion over `bounds` padded by one site.
///
/// Both supports must lie in `bounds`.
pub fn brute_force_oracle<S: Scalar>(
    g: &LatticeFunction<S>,
    f: &LatticeFunction<S>,
    sign: PairingSign,
    bounds: &BoxRegion,
) -> Result<Octonion<S>> {
    if g.h() != f.h() || g.region() != f.region() {
        return Err(domain("oracle operands must share h and region"));
    }
    let region = g.region();
    let acts = |m: &MultiIndex| match region {
        Region::Whole => true,
        Region::Upper => m.0[7] >= 1,
        Region::Lower => m.0[7] <= -1,
        Region::Box(_) => false,
    };
    if matches!(region, Region::Box(_)) {
        return Err(domain("oracle is defined on the whole lattice and the half-lattices"));
    }
    for m in g.support().chain(f.support()) {
        if !bounds.contains(m) {
            return Err(domain(format!("site ({m}) lies outside the declared box {bounds}")));
        }
    }
    let padded = bounds.padded(1);
    let sites = padded.site_count();
    if sites > ORACLE_SITE_LIMIT {
        return Err(Error::TooLarge { sites, limit: ORACLE_SITE_LIMIT });
    }

    // (e_i e_j) e_k and e_i (e_j e_k) for every ordered triple.
    let mut left = [[[unit(0); 8]; 8]; 8];
    let mut right = [[[unit(0); 8]; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                left[i][j][k] = compose(basis_mul(i, j)?, unit(k))?;
                right[i][j][k] = compose(unit(i), basis_mul(j, k)?)?;
            }
        }
    }

    let h = g.h().clone();
    let inv_h = S::one() / h.clone();
    let s = S::from_i64(sign.value() as i64);
    let coeffs = |func: &LatticeFunction<S>, m: &MultiIndex| -> [S; 8] {
        std::array::from_fn(|c| func.component(m, c))
    };

    let all: Vec<MultiIndex> = padded.sites().collect();
    let partials: Vec<[S; 8]> = all
        .par_chunks(256)
        .map(|chunk| {
            let mut acc: [S; 8] = std::array::from_fn(|_| S::zero());
            for m in chunk.iter().filter(|m| acts(m)) {
                let g0 = coeffs(g, m);
                let f0 = coeffs(f, m);
                for j in 0..8 {
                    let mut up = *m;
                    up.0[j] += 1;
                    let mut down = *m;
                    down.0[j] -= 1;
                    let g_up = coeffs(g, &up);
                    let f_down = coeffs(f, &down);
                    for i in 0..8 {
                        // (d+j g_i)(m) and g_i(m)
                        let dg = (g_up[i].clone() - g0[i].clone()) * inv_h.clone();
                        for k in 0..8 {
                            let df = (f0[k].clone() - f_down[k].clone()) * inv_h.clone();
                            // [(d+j g_i) e_i e_j] f_k e_k
                            let a = left[i][j][k];
                            let t1 = dg.clone() * f0[k].clone();
                            // s g_i e_i [(d-j f_k) e_j e_k]
                            let b = right[i][j][k];
                            let t2 = s.clone() * g0[i].clone() * df;
                            if a.sign > 0 {
                                acc[a.index as usize] += t1;
                            } else {
                                acc[a.index as usize] -= t1;
                            }
                            if b.sign > 0 {
                                acc[b.index as usize] += t2;
                            } else {
                                acc[b.index as usize] -= t2;
                            }
                        }
                    }
                }
            }
            acc
        })
        .collect();

    let mut total: [S; 8] = std::array::from_fn(|_| S::zero());
    for p in partials {
        for (t, v) in total.iter_mut().zip(p) {
            *t += v;
        }
    }
    Ok(Octonion::new(total).scale(&h.pow(8)))
}
