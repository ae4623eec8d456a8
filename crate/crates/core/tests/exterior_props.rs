use killform_core::exterior::binomial;
use killform_core::{Multivector, Vector};
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn form(n: usize, p: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec(-1.0f64..1.0, binomial(n, p))
        .prop_map(move |c| Multivector::from_grade(n, p, c).unwrap())
}

fn vector(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-1.0f64..1.0, n).prop_map(Vector::new)
}

/// `(n, p, q, a, b, x, y)` with `a` of degree `p` and `b` of degree `q`.
fn inputs() -> impl Strategy<
    Value = (
        usize,
        usize,
        usize,
        Multivector,
        Multivector,
        Vector,
        Vector,
    ),
> {
    (1usize..=6)
        .prop_flat_map(|n| (Just(n), 0..=n, 0..=n))
        .prop_flat_map(|(n, p, q)| {
            (
                Just(n),
                Just(p),
                Just(q),
                form(n, p),
                form(n, q),
                vector(n),
                vector(n),
            )
        })
}

fn close(a: &Multivector, b: &Multivector) -> bool {
    let scale = a.norm().max(b.norm()).max(1.0);
    a.max_abs_diff(b) <= TOL * scale
}

proptest! {
    #[test]
    fn graded_anticommutativity((_n, p, q, a, b, _x, _y) in inputs()) {
        let sign = if (p * q) % 2 == 0 { 1.0 } else { -1.0 };
        let ab = a.wedge(&b).unwrap();
        let ba = &b.wedge(&a).unwrap() * sign;
        prop_assert!(close(&ab, &ba));
    }

    #[test]
    fn contraction_is_an_antiderivation((_n, p, _q, a, b, x, _y) in inputs()) {
        let lhs = a.wedge(&b).unwrap().contract(&x).unwrap();
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = &a.contract(&x).unwrap().wedge(&b).unwrap()
            + &(&a.wedge(&b.contract(&x).unwrap()).unwrap() * sign);
        prop_assert!(close(&lhs, &rhs));
    }

    #[test]
    fn contractions_anticommute((_n, _p, _q, a, _b, x, y) in inputs()) {
        let xy = a.contract(&y).unwrap().contract(&x).unwrap();
        let yx = a.contract(&x).unwrap().contract(&y).unwrap();
        prop_assert!(close(&xy, &(&yx * -1.0)));
    }

    #[test]
    fn wedge_and_contraction_are_adjoint((n, p, _q, a, _b, x, _y) in inputs(), seed in any::<u64>()) {
        prop_assume!(p < n);
        // a partner of degree p + 1 built deterministically from the seed
        let coeffs: Vec<f64> = (0..binomial(n, p + 1))
            .map(|k| ((seed.wrapping_mul(k as u64 + 1) % 2001) as f64) / 1000.0 - 1.0)
            .collect();
        let b = Multivector::from_grade(n, p + 1, coeffs).unwrap();
        let lhs = x.to_multivector().wedge(&a).unwrap().inner(&b).unwrap();
        let rhs = a.inner(&b.contract(&x).unwrap()).unwrap();
        prop_assert!((lhs - rhs).abs() <= TOL * (1.0 + lhs.abs()));
    }

    #[test]
    fn double_hodge_star((n, p, _q, a, _b, _x, _y) in inputs()) {
        let sign = if (p * (n - p)) % 2 == 0 { 1.0 } else { -1.0 };
        let twice = a.hodge().unwrap().hodge().unwrap();
        prop_assert!(close(&twice, &(&a * sign)));
    }

    #[test]
    fn hodge_is_an_isometry((_n, _p, _q, a, _b, _x, _y) in inputs()) {
        let star = a.hodge().unwrap();
        prop_assert!((star.norm() - a.norm()).abs() <= TOL * (1.0 + a.norm()));
    }
}
