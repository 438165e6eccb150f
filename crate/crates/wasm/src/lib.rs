//! Browser bindings for `octolab`: an octonion calculator with the basis
//! triple-sign grid, a seeded Stokes identity check and the monogenicity
//! counterexample. Every entry point returns a JSON string.

use octolab::harness::{execute, Command, RunConfig};
use octolab::{associator, triple_census, triple_sign, Octonion, PairingSign, Rational, Scalar, Theorem};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest radius the page may request; radius 2 already means 5^8 sites.
pub const MAX_DEMO_RADIUS: u32 = 2;

fn parse_octonion(text: &str) -> Result<Octonion<Rational>, String> {
    let parts: Vec<&str> = text.split(|c: char| c.is_whitespace() || c == ',').filter(|p| !p.is_empty()).collect();
    if parts.len() != 8 {
        return Err(format!("expected 8 coefficients, found {} in `{text}`", parts.len()));
    }
    let mut c: [Rational; 8] = std::array::from_fn(|_| Rational::zero());
    for (slot, part) in c.iter_mut().zip(parts) {
        *slot = Rational::parse_user(part)?;
    }
    Ok(Octonion::new(c))
}

#[derive(Serialize)]
struct Products {
    ab: Vec<String>,
    ba: Vec<String>,
    ab_c: Vec<String>,
    a_bc: Vec<String>,
    associator: Vec<String>,
    norm_ab: String,
    norm_a_norm_b: String,
}

/// Products of three octonions given as 8 rational coefficients each.
pub fn products_json(a: &str, b: &str, c: &str) -> Result<String, String> {
    let (a, b, c) = (parse_octonion(a)?, parse_octonion(b)?, parse_octonion(c)?);
    let ab = a.mul(&b);
    let out = Products {
        ba: b.mul(&a).render_vec(),
        ab_c: ab.mul(&c).render_vec(),
        a_bc: a.mul(&b.mul(&c)).render_vec(),
        associator: associator(&a, &b, &c).render_vec(),
        norm_ab: ab.norm_sq().render(),
        norm_a_norm_b: (a.norm_sq() * b.norm_sq()).render(),
        ab: ab.render_vec(),
    };
    Ok(serde_json::to_string(&out).expect("products serialize"))
}

#[derive(Serialize)]
struct TripleGrid {
    i: usize,
    /// `signs[j][k]` is `+1` when `(e_i e_j) e_k = e_i (e_j e_k)`, else `-1`.
    signs: Vec<Vec<i8>>,
    associative: usize,
    anti_associative: usize,
}

pub fn triple_grid_json(i: usize) -> Result<String, String> {
    if i > 7 {
        return Err(format!("basis index {i} out of range 0..=7"));
    }
    let signs = (0..8).map(|j| (0..8).map(|k| triple_sign(i, j, k).expect("indices checked")).collect()).collect();
    let census = triple_census();
    let grid = TripleGrid { i, signs, associative: census.associative, anti_associative: census.anti_associative };
    Ok(serde_json::to_string(&grid).expect("grid serializes"))
}

fn run(cfg: &RunConfig) -> Result<String, String> {
    execute(cfg).map(|o| o.json).map_err(|e| e.to_string())
}

/// Seeded Stokes identity report for random functions on a radius-1 box
/// (or slab for the half-lattices).
pub fn stokes_json(theorem: &str, sign: &str, seed: u64, h: &str) -> Result<String, String> {
    let mut cfg = RunConfig::new(Command::Stokes);
    cfg.theorem = theorem.parse::<Theorem>()?;
    cfg.sign = sign.parse::<PairingSign>()?;
    cfg.seed = seed;
    cfg.h = h.to_string();
    cfg.radius = 1;
    run(&cfg)
}

/// `D-` applied to `x1 - x2 e4` and to its right multiple by `e_k`.
pub fn monogenic_json(radius: u32, multiplier: usize, h: &str) -> Result<String, String> {
    if !(1..=MAX_DEMO_RADIUS).contains(&radius) {
        return Err(format!("radius must be between 1 and {MAX_DEMO_RADIUS}"));
    }
    let mut cfg = RunConfig::new(Command::MonogenicDemo);
    cfg.radius = radius;
    cfg.multiplier = multiplier;
    cfg.h = h.to_string();
    run(&cfg)
}

#[wasm_bindgen]
pub fn products(a: &str, b: &str, c: &str) -> Result<String, String> {
    products_json(a, b, c)
}

#[wasm_bindgen]
pub fn triple_grid(i: usize) -> Result<String, String> {
    triple_grid_json(i)
}

#[wasm_bindgen]
pub fn stokes(theorem: &str, sign: &str, seed: u64, h: &str) -> Result<String, String> {
    stokes_json(theorem, sign, seed, h)
}

#[wasm_bindgen]
pub fn monogenic(radius: u32, multiplier: usize, h: &str) -> Result<String, String> {
    monogenic_json(radius, multiplier, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(json: &str) -> serde_json::Value {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn unit_products() {
        let v = value(&products_json("0 1 0 0 0 0 0 0", "0 0 1 0 0 0 0 0", "0,0,0,1,0,0,0,0").unwrap());
        assert_eq!(v["ab"], serde_json::json!(["0", "0", "0", "0", "1", "0", "0", "0"]));
        assert_eq!(v["ba"], serde_json::json!(["0", "0", "0", "0", "-1", "0", "0", "0"]));
        // (e1 e2) e3 = e4 e3 = e7 and e1 (e2 e3) = e1 e6 = -e7.
        assert_eq!(v["associator"], serde_json::json!(["0", "0", "0", "0", "0", "0", "0", "2"]));
        assert!(products_json("1 2 3", "0 0 0 0 0 0 0 0", "0 0 0 0 0 0 0 0").is_err());
    }

    #[test]
    fn decimal_input_is_exact() {
        let v = value(&products_json("0.5 0 0 0 0 0 0 0", "1/3 0 0 0 0 0 0 0", "1 0 0 0 0 0 0 0").unwrap());
        assert_eq!(v["ab"][0], "1/6");
        assert_eq!(v["norm_ab"], v["norm_a_norm_b"]);
    }

    #[test]
    fn grid_counts() {
        let v = value(&triple_grid_json(1).unwrap());
        let minus = v["signs"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap().clone()).filter(|s| s == -1).count();
        // e1 with any pair not on a line through e1.
        assert_eq!(minus, 24);
        assert_eq!(v["anti_associative"], 168);
        assert!(triple_grid_json(8).is_err());
    }

    #[test]
    fn stokes_and_monogenic() {
        let v = value(&stokes_json("T2", "plus", 3, "1/2").unwrap());
        assert_eq!(v["passed"], true);
        assert!(stokes_json("T4", "plus", 3, "1").is_err());
        let v = value(&monogenic_json(1, 3, "1").unwrap());
        assert_eq!(v["g"]["constant_residual"][5], "2");
        assert!(monogenic_json(3, 3, "1").is_err());
    }
}
