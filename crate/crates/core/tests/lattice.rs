use std::collections::HashSet;

use octolab::lattice::{delta, linear_sum, random_function, read_function, render_function, write_function, FunctionBuilder};
use octolab::{BoxRegion, LatticeFunction, MultiIndex, Octonion, Rational, Region};

type F = LatticeFunction<Rational>;
type O = Octonion<Rational>;

fn one() -> Rational {
    Rational::from_integer(1)
}

#[test]
fn seeds_give_distinct_functions() {
    let bounds = BoxRegion::cube(1);
    let renders: HashSet<String> = (0..100).map(|s| render_function(&random_function::<Rational>(&bounds, s, one()).unwrap())).collect();
    assert_eq!(renders.len(), 100);
    let again = random_function::<Rational>(&bounds, 42, one()).unwrap();
    assert_eq!(again, random_function(&bounds, 42, one()).unwrap());
}

#[test]
fn file_round_trip_exact_and_float() {
    let dir = tempfile::tempdir().unwrap();
    let bounds = BoxRegion::new(MultiIndex::new([0; 8]), MultiIndex::new([1, 0, 1, 0, 0, 0, 0, 1]));
    let f = random_function::<Rational>(&bounds, 9, Rational::new(1, 3)).unwrap().with_region(Region::Upper).unwrap();
    let path = dir.path().join("f.olf");
    write_function(&path, &f).unwrap();
    assert_eq!(read_function::<Rational>(&path).unwrap(), f);

    let g = random_function::<f64>(&bounds, 9, 0.25).unwrap();
    write_function(&path, &g).unwrap();
    assert_eq!(read_function::<f64>(&path).unwrap(), g);
    assert!(read_function::<Rational>(&path).is_err());
}

#[test]
fn regions_reject_foreign_sites() {
    let below = MultiIndex::axis(7, -1);
    let mut b = FunctionBuilder::new(one(), Region::Upper).unwrap();
    assert!(b.insert(below, O::unit(1)).is_err());
    assert!(b.insert(MultiIndex::ORIGIN, O::unit(1)).is_ok());
    let d = delta(below, one()).unwrap();
    assert!(d.with_region(Region::Lower).is_ok());
    assert!(d.with_region(Region::Upper).is_err());
    assert!(F::zero(Rational::from_integer(0), Region::Whole).is_err());
}

#[test]
fn right_multiplication_is_sitewise() {
    let site = MultiIndex::new([0, 2, 1, 0, 0, 0, 0, 0]);
    let f = F::from_sites(one(), Region::Whole, [(site, O::from_i64s([2, 0, 0, 0, -1, 0, 0, 0]))]).unwrap();
    let g = f.right_mul(&O::unit(3));
    assert_eq!(g.value(&site), O::from_i64s([0, 0, 0, 2, 0, 0, 0, -1]));
    assert_eq!(g.len(), 1);
}

#[test]
fn linear_sum_values() {
    let bounds = BoxRegion::cube(2);
    let h = Rational::new(1, 2);
    let f = linear_sum(&[(1, O::unit(0)), (2, -O::unit(4))], &bounds, h).unwrap();
    let m = MultiIndex::new([0, 2, -1, 0, 0, 0, 0, 0]);
    // x1 = 1, x2 = -1/2
    let expect = Octonion::new([one(), Rational::from_integer(0), Rational::from_integer(0), Rational::from_integer(0), Rational::new(1, 2), Rational::from_integer(0), Rational::from_integer(0), Rational::from_integer(0)]);
    assert_eq!(f.value(&m), expect);
    assert!(f.value(&MultiIndex::new([0, 3, 0, 0, 0, 0, 0, 0])).is_zero());
    assert!(linear_sum::<Rational>(&[(8, O::unit(0))], &bounds, one()).is_err());
}

#[test]
fn iteration_is_lexicographic() {
    let f = random_function::<Rational>(&BoxRegion::cube(1), 5, one()).unwrap();
    let sites: Vec<_> = f.support().copied().collect();
    assert!(sites.windows(2).all(|w| w[0] < w[1]));
}
