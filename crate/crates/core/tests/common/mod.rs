#![allow(dead_code, clippy::needless_range_loop)]

use octolab::lattice::random_function;
use octolab::{BoxRegion, LatticeFunction, MultiIndex, PairingSign, Rational, Region};
use sha2::{Digest, Sha256};

/// Oriented quaternionic triples `(a, b, c)` with `e_a e_b = e_c`, read off
/// the reference table. Cyclic shifts also multiply positively.
pub const TRIPLES: [[usize; 3]; 7] = [[1, 2, 4], [1, 3, 5], [6, 1, 7], [2, 3, 6], [2, 5, 7], [3, 7, 4], [4, 6, 5]];

/// `e_i e_j` as `(sign, index)`, rebuilt from [`TRIPLES`] alone.
pub fn fano_mul(i: usize, j: usize) -> (i64, usize) {
    match (i, j) {
        (0, j) => (1, j),
        (i, 0) => (1, i),
        (i, j) if i == j => (-1, 0),
        _ => {
            for t in TRIPLES {
                for r in 0..3 {
                    let (a, b, c) = (t[r], t[(r + 1) % 3], t[(r + 2) % 3]);
                    if (a, b) == (i, j) {
                        return (1, c);
                    }
                    if (b, a) == (i, j) {
                        return (-1, c);
                    }
                }
            }
            unreachable!("every pair of distinct imaginary units lies on one line")
        }
    }
}

/// Integer octonion product through [`fano_mul`].
pub fn int_mul(a: &[i64; 8], b: &[i64; 8]) -> [i64; 8] {
    let mut out = [0; 8];
    for i in 0..8 {
        for j in 0..8 {
            let (s, k) = fano_mul(i, j);
            out[k] += s * a[i] * b[j];
        }
    }
    out
}

pub fn int_unit(i: usize) -> [i64; 8] {
    let mut u = [0; 8];
    u[i] = 1;
    u
}

/// `(associative, anti-associative)` by expanding both groupings of every
/// ordered basis triple.
pub fn census_by_enumeration() -> (usize, usize) {
    let (mut assoc, mut anti) = (0, 0);
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                let (a, b, c) = (int_unit(i), int_unit(j), int_unit(k));
                let left = int_mul(&int_mul(&a, &b), &c);
                let right = int_mul(&a, &int_mul(&b, &c));
                if left == right {
                    assoc += 1;
                } else {
                    assert_eq!(left, right.map(|x| -x), "({i},{j},{k}) neither associates nor anti-associates");
                    anti += 1;
                }
            }
        }
    }
    (assoc, anti)
}

/// A thin box: extent 2 along `wide` axes, 1 elsewhere, then clamped to
/// the slab `0..=1` (upper) or `-1..=0` (lower) along the split axis.
pub fn thin_box(region: Region, wide: &[usize]) -> BoxRegion {
    let lo = MultiIndex::new([0; 8]);
    let mut hi = [0; 8];
    for &a in wide {
        hi[a] = 1;
    }
    let (mut lo, mut hi) = (lo.0, hi);
    match region {
        Region::Upper => {
            lo[7] = 0;
            hi[7] = 1;
        }
        Region::Lower => {
            lo[7] = -1;
            hi[7] = 0;
        }
        _ => {}
    }
    BoxRegion::new(MultiIndex::new(lo), MultiIndex::new(hi))
}

pub struct OracleCase {
    pub region: Region,
    pub sign: PairingSign,
    pub seed: u64,
    pub bounds: BoxRegion,
    pub g: LatticeFunction<Rational>,
    pub f: LatticeFunction<Rational>,
}

/// `per_cell` cases for each (region, sign) pair; every fourth one uses
/// `h = 1/2`, and the wide axes rotate with the seed.
pub fn oracle_cases(per_cell: u64) -> Vec<OracleCase> {
    let mut cases = Vec::new();
    for region in [Region::Whole, Region::Upper, Region::Lower] {
        for sign in [PairingSign::Plus, PairingSign::Minus] {
            for n in 0..per_cell {
                let seed = 1000 * (cases.len() as u64 / per_cell) + n;
                let a = (n as usize * 3) % 7;
                let wide = [a, (a + 2) % 7, 7];
                let bounds = thin_box(region, &wide);
                let h = if n % 4 == 3 { Rational::new(1, 2) } else { Rational::from_integer(1) };
                let g = random_function(&bounds, seed, h.clone()).unwrap().with_region(region).unwrap();
                let f = random_function(&bounds, seed ^ 0xABCD, h).unwrap().with_region(region).unwrap();
                cases.push(OracleCase { region, sign, seed, bounds, g, f });
            }
        }
    }
    cases
}

/// Removes every `elapsed_ms` field, recursively.
pub fn strip_timing(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timing);
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

/// SHA-256 of a JSON report with timing removed.
pub fn report_digest(json: &str) -> String {
    let mut v: serde_json::Value = serde_json::from_str(json).expect("report is JSON");
    strip_timing(&mut v);
    let bytes = serde_json::to_vec(&v).unwrap();
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}
