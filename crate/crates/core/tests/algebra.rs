mod common;

use common::{census_by_enumeration, fano_mul, int_mul, int_unit};
use octolab::harness::verify_algebra;
use octolab::{associator, basis_mul, triple_census, triple_sign, BasisTable, BasisUnit, Octonion, Rational};
use proptest::prelude::*;

type O = Octonion<Rational>;

#[test]
fn table_matches_fano_reconstruction() {
    for i in 0..8 {
        for j in 0..8 {
            let (s, k) = fano_mul(i, j);
            let u = basis_mul(i, j).unwrap();
            assert_eq!((u.sign as i64, u.index as usize), (s, k), "e{i}*e{j}");
        }
    }
}

#[test]
fn census_matches_enumeration() {
    let c = triple_census();
    assert_eq!((c.associative, c.anti_associative), census_by_enumeration());
    assert_eq!((c.associative, c.anti_associative), (344, 168));
}

#[test]
fn triple_sign_agrees_with_integer_products() {
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                let (a, b, c) = (int_unit(i), int_unit(j), int_unit(k));
                let same = int_mul(&int_mul(&a, &b), &c) == int_mul(&a, &int_mul(&b, &c));
                assert_eq!(triple_sign(i, j, k).unwrap() == 1, same, "({i},{j},{k})");
            }
        }
    }
}

#[test]
fn out_of_range_indices_are_rejected() {
    assert!(basis_mul(8, 0).is_err());
    assert!(triple_sign(0, 0, 9).is_err());
}

#[test]
fn corrupted_table_is_named() {
    let mut t = BasisTable::STANDARD.clone();
    t.0[2][3] = BasisUnit::neg(6);
    let report = verify_algebra(0, 1, &t);
    assert!(!report.passed);
    let table = report.check("table").unwrap();
    assert!(!table.passed);
    assert!(table.failures.iter().any(|f| f.starts_with("e2*e3")), "{:?}", table.failures);
}

#[test]
fn table_only_run_still_checks() {
    let report = verify_algebra(0, 7, &BasisTable::STANDARD);
    assert!(report.passed);
    assert!(report.check("table").is_some_and(|c| c.cases == 64));
    assert!(report.check("moufang (random)").is_none());
}

fn small_octonion() -> impl Strategy<Value = O> {
    prop::array::uniform8((-20i64..=20, 1i64..=6)).prop_map(|c| Octonion::new(c.map(|(n, d)| Rational::new(n, d))))
}

fn int_coeffs(o: &O) -> Option<[i64; 8]> {
    let c = o.coeffs();
    c.iter().all(|x| x.is_integer()).then(|| std::array::from_fn(|i| c[i].to_f64() as i64))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_integer_oracle(a in prop::array::uniform8(-50i64..=50), b in prop::array::uniform8(-50i64..=50)) {
        let p = O::from_i64s(a).mul(&O::from_i64s(b));
        prop_assert_eq!(int_coeffs(&p), Some(int_mul(&a, &b)));
    }

    #[test]
    fn moufang_and_alternativity(a in small_octonion(), b in small_octonion(), c in small_octonion()) {
        prop_assert_eq!(a.mul(&b.mul(&a)).mul(&c), a.mul(&b.mul(&a.mul(&c))));
        prop_assert!(associator(&a, &a, &b).is_zero());
        prop_assert!(associator(&b, &a, &a).is_zero());
        prop_assert!(associator(&a, &b, &a).is_zero());
    }

    #[test]
    fn norm_is_multiplicative(a in small_octonion(), b in small_octonion()) {
        prop_assert_eq!(a.mul(&b).norm_sq(), a.norm_sq() * b.norm_sq());
    }

    #[test]
    fn associator_is_alternating(a in small_octonion(), b in small_octonion(), c in small_octonion()) {
        let abc = associator(&a, &b, &c);
        prop_assert_eq!(associator(&b, &c, &a), abc.clone());
        prop_assert_eq!(associator(&b, &a, &c), -abc);
    }
}
