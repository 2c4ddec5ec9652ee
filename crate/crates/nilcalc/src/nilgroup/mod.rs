//! Explicit filtered nilpotent Lie groups with lattices: schemas, exact
//! collection arithmetic, filtration verification, and the group catalog.

pub mod catalog;
mod collect;
pub mod index;
mod schema;
pub mod universal;

pub use collect::{GroupElement, GroupError};
pub use index::{FiltIndex, IndexKind};
pub use schema::{
    schema_from_json, schema_to_json, verify_schema, HorizontalChar, NilSchema, SchemaError,
    SchemaFile, SchemaReport, VerticalChar, Word,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_i64, rat_int, Rational};
    use num_traits::Zero;

    fn elem(s: &std::sync::Arc<NilSchema>, coords: &[Rational]) -> GroupElement {
        GroupElement::new(s.clone(), coords.to_vec())
    }

    #[test]
    fn torus_is_componentwise_addition() {
        let t2 = catalog::torus(2, 1).unwrap();
        let x = elem(&t2, &[rat_i64(1, 3), rat_i64(1, 4)]);
        let y = elem(&t2, &[rat_i64(1, 3), rat_i64(1, 2)]);
        let xy = x.mul(&y);
        assert_eq!(xy.coords, vec![rat_i64(2, 3), rat_i64(3, 4)]);
        // abelian: commutators trivial
        assert!(x.commutator(&y).is_identity());
    }

    #[test]
    fn heisenberg_multiplication_formula() {
        let h = catalog::heisenberg().unwrap();
        let mut rng = crate::rng::DetRng::new(11);
        for _ in 0..200 {
            let a: Vec<Rational> = (0..3).map(|_| rng.rational(6, 6)).collect();
            let b: Vec<Rational> = (0..3).map(|_| rng.rational(6, 6)).collect();
            let prod = elem(&h, &a).mul(&elem(&h, &b));
            let expected = vec![
                &a[0] + &b[0],
                &a[1] + &b[1],
                &a[2] + &b[2] - &a[1] * &b[0],
            ];
            assert_eq!(prod.coords, expected);
        }
        // identity law
        let x = elem(&h, &[rat_i64(2, 7), rat_i64(3, 5), rat_i64(-1, 2)]);
        assert_eq!(x.mul(&GroupElement::identity(h.clone())), x);
    }

    #[test]
    fn heisenberg_powers_and_commutators() {
        let h = catalog::heisenberg().unwrap();
        let x = elem(&h, &[rat_int(1), rat_int(1), rat_int(0)]);
        assert_eq!(x.pow_i64(2).coords, vec![rat_int(2), rat_int(2), rat_int(-1)]);
        assert!(x.pow_i64(0).is_identity());
        // power additivity on a generator word
        let g = GroupElement::generator_power(h.clone(), 0, rat_i64(1, 2));
        assert_eq!(g.power(&rat_int(2)).coords[0], rat_int(1));
        let s = rat_i64(3, 7);
        let t = rat_i64(-2, 5);
        assert_eq!(g.power(&(&s + &t)), g.power(&s).mul(&g.power(&t)));
        // [e1^s, e2^t] = e12^{st}
        let mut rng = crate::rng::DetRng::new(5);
        for _ in 0..50 {
            let s = rng.rational(5, 5);
            let t = rng.rational(5, 5);
            let a = GroupElement::generator_power(h.clone(), 0, s.clone());
            let b = GroupElement::generator_power(h.clone(), 1, t.clone());
            let c = a.commutator(&b);
            assert_eq!(c.coords, vec![Rational::zero(), Rational::zero(), &s * &t]);
        }
        // [x, x] = id
        let x = elem(&h, &[rat_i64(2, 3), rat_i64(1, 7), rat_i64(4, 9)]);
        assert!(x.commutator(&x).is_identity());
    }

    #[test]
    fn rational_power_matches_integer_iteration() {
        let h = catalog::heisenberg().unwrap();
        let x = elem(&h, &[rat_i64(2, 3), rat_i64(1, 5), rat_i64(1, 7)]);
        for n in -4..8 {
            assert_eq!(x.power(&rat_int(n)), x.pow_i64(n));
        }
        // half-integer powers square back
        let half = x.power(&rat_i64(1, 2));
        assert_eq!(half.mul(&half), x);
    }

    #[test]
    fn reduce_mod_lattice_heisenberg() {
        let h = catalog::heisenberg().unwrap();

        let x = elem(&h, &[rat_i64(5, 4), rat_int(0), rat_int(0)]);
        let (red, gamma) = x.reduce_mod_lattice();
        assert_eq!(red.coords, vec![rat_i64(1, 4), rat_int(0), rat_int(0)]);
        assert_eq!(red.mul(&gamma), x);

        // orbit point (alpha n, beta n, -alpha beta n^2), alpha=2/7,
        // beta=3/5, n=4
        let x = elem(&h, &[rat_i64(8, 7), rat_i64(12, 5), rat_i64(-96, 35)]);
        let (red, gamma) = x.reduce_mod_lattice();
        assert_eq!(
            red.coords,
            vec![rat_i64(1, 7), rat_i64(2, 5), rat_i64(-12, 35)]
        );
        assert!(gamma.coords.iter().all(|c| c.is_integer()));
        assert_eq!(red.mul(&gamma), x);

        // fixed point: already reduced
        let (red2, gamma2) = red.reduce_mod_lattice();
        assert_eq!(red2, red);
        assert!(gamma2.is_identity());
    }

    #[test]
    fn reduction_is_exact_coset_split_across_catalog() {
        let schemas = [
            catalog::heisenberg().unwrap(),
            catalog::heisenberg_degrank32().unwrap(),
            catalog::free2step(3).unwrap(),
            catalog::app_c_multidegree().unwrap(),
            catalog::universal_group(&[2, 0, 0], 3, 3).unwrap(),
        ];
        let mut rng = crate::rng::DetRng::new(23);
        for s in &schemas {
            for _ in 0..40 {
                let coords: Vec<Rational> = (0..s.dim()).map(|_| rng.rational(9, 4)).collect();
                let x = elem(s, &coords);
                let (red, gamma) = x.reduce_mod_lattice();
                assert!(red
                    .coords
                    .iter()
                    .all(|c| c > &rat_i64(-1, 2) && c <= &rat_i64(1, 2)));
                assert!(gamma.coords.iter().all(|c| c.is_integer()));
                assert_eq!(red.mul(&gamma), x, "coset split failed on {}", s.name);
            }
        }
    }

    #[test]
    fn catalog_schemas_verify() {
        for spec in [
            "torus(1,3)",
            "torus(2,2)",
            "heisenberg",
            "heisenberg_degrank32",
            "free2step(2)",
            "free2step(4)",
            "appC_multidegree",
            "universal(2,0;2,2)",
            "universal(1,1;3,2)",
            "universal(2,0,0;3,3)",
            "product(heisenberg,torus(1,2))",
        ] {
            let s = catalog::by_name(spec).unwrap();
            let report = verify_schema(&s);
            assert!(report.pass, "{spec}: {:?}", report.failure);
        }
    }

    #[test]
    fn broken_filtration_is_reported() {
        // Heisenberg with [e1,e2] reassigned to degree 1: G_2 empty, so
        // the basis-level inclusion [G_1, G_1] <= G_2 fails with witness
        // (e1, e2).
        let mut commutators: std::collections::BTreeMap<(usize, usize), Word> =
            std::collections::BTreeMap::new();
        commutators.insert((0, 1), vec![(2, rat_int(1))]);
        let mut filtration = std::collections::BTreeMap::new();
        filtration.insert(FiltIndex::Degree(0), vec![0, 1, 2]);
        filtration.insert(FiltIndex::Degree(1), vec![0, 1, 2]);
        filtration.insert(FiltIndex::Degree(2), vec![]);
        let s = NilSchema::build(
            "broken_heisenberg",
            IndexKind::Degree,
            2,
            vec!["e1".into(), "e2".into(), "e12".into()],
            commutators,
            filtration,
            vec![0, 1],
            vec![FiltIndex::Degree(1); 3],
            vec![1, 1, 2],
        )
        .unwrap();
        let report = verify_schema(&s);
        assert!(!report.pass);
        let msg = report.failure.unwrap();
        assert!(msg.contains("(e_0, e_1)"), "unexpected witness: {msg}");
    }

    #[test]
    fn universal_reproduces_known_groups() {
        // universal((2,0); (2,2)) is the Heisenberg group up to the
        // orientation of the central coordinate
        let u = catalog::universal_group(&[2, 0], 2, 2).unwrap();
        assert_eq!(u.dim(), 3);
        assert_eq!(u.class, 2);
        // universal((1,1); (3,2)) is the Heisenberg group under the
        // degree-rank filtration of the {alpha n^2} beta n model
        let u = catalog::universal_group(&[1, 1], 3, 2).unwrap();
        assert_eq!(u.dim(), 3);
        let hd = catalog::heisenberg_degrank32().unwrap();
        for idx in hd.downset() {
            assert_eq!(u.positions_of(&idx).len(), hd.positions_of(&idx).len(), "{idx}");
        }
        // free 3-step on two generators has dimension 5
        let f3 = catalog::universal_group(&[2, 0, 0], 3, 3).unwrap();
        assert_eq!(f3.dim(), 5);
        assert_eq!(f3.class, 3);
        // rank cut removes the two depth-3 commutators
        let f32 = catalog::universal_group(&[2, 0, 0], 3, 2).unwrap();
        assert_eq!(f32.dim(), 3);
        // dimension cap enforced
        assert!(catalog::universal_group(&[4, 0, 0], 3, 3).is_err());
    }

    #[test]
    fn sampled_commutators_lie_in_the_pairwise_span() {
        // the commutator subgroup is generated by basis-pair commutators:
        // every sampled [x, y] in a 2-step catalog group is supported on
        // positions hit by some table word
        let schemas = [
            catalog::heisenberg().unwrap(),
            catalog::free2step(3).unwrap(),
            catalog::app_c_multidegree().unwrap(),
        ];
        let mut rng = crate::rng::DetRng::new(0x717);
        for s in &schemas {
            let span: Vec<usize> = s
                .commutators
                .values()
                .flat_map(|w| w.iter().map(|(p, _)| *p))
                .collect();
            for _ in 0..100 {
                let x = elem(s, &(0..s.dim()).map(|_| rng.rational(5, 5)).collect::<Vec<_>>());
                let y = elem(s, &(0..s.dim()).map(|_| rng.rational(5, 5)).collect::<Vec<_>>());
                let c = x.commutator(&y);
                for p in c.support() {
                    assert!(span.contains(&p), "{}: [x,y] hits position {p}", s.name);
                }
            }
        }
    }

    #[test]
    fn schema_mismatch_is_an_error() {
        let h = catalog::heisenberg().unwrap();
        let t = catalog::torus(3, 1).unwrap();
        let x = GroupElement::identity(h);
        let y = GroupElement::identity(t);
        assert!(x.try_mul(&y).is_err());
    }

    #[test]
    fn schema_file_round_trip() {
        for spec in ["heisenberg", "appC_multidegree", "universal(2,0,0;3,3)"] {
            let s = catalog::by_name(spec).unwrap();
            let json = schema_to_json(&s);
            let s2 = schema_from_json(&json).unwrap();
            assert_eq!(*s, *s2, "{spec} round trip");
        }
    }

    #[test]
    fn free3step_collection_is_consistent() {
        // spot-check inverse-law-heavy arithmetic in the class-3 group
        let f3 = catalog::universal_group(&[2, 0, 0], 3, 3).unwrap();
        let mut rng = crate::rng::DetRng::new(77);
        for _ in 0..60 {
            let coords: Vec<Rational> = (0..5).map(|_| rng.rational(4, 3)).collect();
            let x = elem(&f3, &coords);
            let inv = x.inverse();
            assert!(x.mul(&inv).is_identity());
            assert!(inv.mul(&x).is_identity());
            assert_eq!(x.pow_i64(3), x.mul(&x).mul(&x));
        }
    }
}
