use octolab::lattice::{linear_sum, random_function};
use octolab::operators::{apply_cr, backward_diff, factorization_residual, forward_diff, is_monogenic, star_laplacian};
use octolab::{BoxRegion, LatticeFunction, MultiIndex, Octonion, OperatorVariant, Rational, Region};

type F = LatticeFunction<Rational>;
type O = Octonion<Rational>;

fn one() -> Rational {
    Rational::from_integer(1)
}

fn small(seed: u64) -> F {
    let bounds = BoxRegion::new(MultiIndex::new([0; 8]), MultiIndex::new([1, 1, 0, 1, 0, 0, 1, 1]));
    random_function(&bounds, seed, Rational::new(1, 2)).unwrap()
}

/// `sum_j e_j (f(m) - f(m - e_j)) / h`, left or right, straight from the definition.
fn naive_backward(f: &F, m: &MultiIndex, left: bool) -> O {
    let inv_h = one() / f.h().clone();
    let mut acc = O::zero();
    for j in 0..8 {
        let d = (f.value(m) - f.value(&m.shifted(j, -1))).scale(&inv_h);
        acc += if left { O::unit(j).mul(&d) } else { d.mul(&O::unit(j)) };
    }
    acc
}

#[test]
fn cauchy_riemann_matches_definition() {
    let f = small(3);
    let bounds = f.bounding_box().unwrap().padded(1);
    for (variant, left) in [(OperatorVariant::LEFT_BACKWARD, true), (OperatorVariant::RIGHT_BACKWARD, false)] {
        let out = apply_cr(&f, variant);
        for m in bounds.sites() {
            assert_eq!(out.value(&m), naive_backward(&f, &m, left), "{variant:?} at {m}");
        }
    }
}

#[test]
fn partial_differences_commute() {
    let f = small(11);
    for (a, b) in [(0, 1), (3, 7), (6, 6)] {
        let ab = forward_diff(&backward_diff(&f, b).unwrap(), a).unwrap();
        let ba = backward_diff(&forward_diff(&f, a).unwrap(), b).unwrap();
        assert_eq!(ab, ba, "axes {a}, {b}");
    }
    assert!(forward_diff(&f, 8).is_err());
}

#[test]
fn operators_are_linear() {
    let (f, g) = (small(1), small(2));
    let c = Rational::new(-3, 4);
    for v in OperatorVariant::all() {
        let lhs = apply_cr(&f.add(&g.scale(&c)).unwrap(), v);
        let rhs = apply_cr(&f, v).add(&apply_cr(&g, v).scale(&c)).unwrap();
        assert_eq!(lhs, rhs, "{v:?}");
    }
}

#[test]
fn factorization_holds_exactly() {
    for seed in 0..3 {
        let f = small(seed);
        assert!(factorization_residual(&f).is_empty(), "seed {seed}");
        assert!(factorization_residual(&f.with_region(Region::Upper).unwrap()).is_empty());
    }
    let lower = small(5).restrict(|m| m.last() == 0).with_region(Region::Lower).unwrap();
    assert!(factorization_residual(&lower).is_empty());
    assert!(!star_laplacian(&small(5)).is_empty());
}

#[test]
fn kernel_is_not_a_right_module() {
    let bounds = BoxRegion::cube(1);
    let f = linear_sum(&[(1, O::unit(0)), (2, -O::unit(4))], &bounds, one()).unwrap();
    assert!(is_monogenic(&f, OperatorVariant::LEFT_BACKWARD, 0.0).unwrap().monogenic);
    let g = f.right_mul(&O::unit(3));
    let out = apply_cr(&g, OperatorVariant::LEFT_BACKWARD);
    assert_eq!(out.len(), 256);
    assert!(out.iter().all(|(_, v)| *v == O::unit(5).scale(&Rational::from_integer(2))));
    assert!(is_monogenic(&f.right_mul(&O::unit(0)), OperatorVariant::LEFT_BACKWARD, 0.0).unwrap().monogenic);
}

#[test]
fn left_and_right_operators_differ() {
    let f = small(8);
    assert_ne!(apply_cr(&f, OperatorVariant::LEFT_FORWARD), apply_cr(&f, OperatorVariant::RIGHT_FORWARD));
}
