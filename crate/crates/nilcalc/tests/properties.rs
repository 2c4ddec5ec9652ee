//! Property-based checks of the algebraic invariants.

use nilcalc::gowers::{self, SampledFunction};
use nilcalc::nilgroup::{catalog, GroupElement};
use nilcalc::scalar::{phase, rat_i64, signed_frac, Rational, TorusPoint};
use num_traits::Signed;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..200).prop_map(|(p, q)| rat_i64(p, q))
}

proptest! {
    #[test]
    fn signed_frac_is_idempotent_and_canonical(x in rational()) {
        let y = signed_frac(&x);
        prop_assert!(y > rat_i64(-1, 2) && y <= rat_i64(1, 2));
        prop_assert_eq!(signed_frac(&y), y.clone());
        prop_assert!((x - y).is_integer());
    }

    #[test]
    fn phases_are_a_homomorphism(x in rational(), y in rational()) {
        let a = TorusPoint::new(x.clone());
        let b = TorusPoint::new(y.clone());
        let lhs = phase(&a).tensor(&phase(&b));
        let rhs = phase(&TorusPoint::new(x + y));
        prop_assert_eq!(lhs.entries[0].phase.clone(), rhs.entries[0].phase.clone());
    }

    #[test]
    fn torus_distance_triangle(x in rational(), y in rational(), z in rational()) {
        let (a, b, c) = (TorusPoint::new(x), TorusPoint::new(y), TorusPoint::new(z));
        prop_assert!(a.dist(&c) <= a.dist(&b) + b.dist(&c));
        prop_assert!(a.dist(&b) == b.dist(&a));
        prop_assert!(a.dist(&b) <= rat_i64(1, 2));
    }

    #[test]
    fn heisenberg_group_laws(
        xs in proptest::collection::vec(rational(), 3),
        ys in proptest::collection::vec(rational(), 3),
        zs in proptest::collection::vec(rational(), 3),
    ) {
        let h = catalog::heisenberg().unwrap();
        let x = GroupElement::new(h.clone(), xs);
        let y = GroupElement::new(h.clone(), ys);
        let z = GroupElement::new(h.clone(), zs);
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert!(x.mul(&x.inverse()).is_identity());
        let (reduced, gamma) = x.reduce_mod_lattice();
        prop_assert!(gamma.coords.iter().all(|c| c.is_integer()));
        prop_assert_eq!(reduced.mul(&gamma), x);
    }

    #[test]
    fn bracket_product_identity_holds(
        p1 in -200i64..200, q1 in 1i64..300,
        p2 in -200i64..200, q2 in 1i64..300,
        n in 1i64..60,
    ) {
        let alpha = rat_i64(p1, q1);
        let beta = rat_i64(p2, q2);
        let nn = nilcalc::scalar::rat_int(n);
        let an = &alpha * &nn;
        let bn = &beta * &nn;
        let lhs = signed_frac(&an) * &bn + signed_frac(&bn) * &an;
        let rhs = &an * &bn + signed_frac(&an) * signed_frac(&bn);
        prop_assert!((lhs - rhs).is_integer());
    }

    #[test]
    fn u1_norm_is_the_mean_modulus(seed in 0u64..5000) {
        let mut rng = nilcalc::rng::DetRng::new(seed);
        let n = 4 + rng.below(12) as usize;
        let f = SampledFunction::from_phase_fn(n, |k| {
            TorusPoint::new(rat_i64((seed % 97) as i64 * k, 97))
        });
        let direct: f64 = {
            let sum: num_complex::Complex64 = f.values.iter().map(|v| v[0]).sum();
            (sum / n as f64).norm()
        };
        // on the group of order N the U^1 norm is |mean|
        let vals: Vec<num_complex::Complex64> = f.values.iter().map(|v| v[0]).collect();
        let norm = gowers::u_norm_group(&vals, 1).unwrap();
        prop_assert!((norm - direct).abs() < 1e-12);
    }
}
