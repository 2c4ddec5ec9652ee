use super::cube::*;
use super::*;
use crate::nilgroup::{catalog, FiltIndex, GroupElement, IndexKind, NilSchema, Word};
use crate::scalar::{rat_i64, rat_int};
use std::collections::BTreeMap;
use std::sync::Arc;

fn heis_linear_orbit(
    h: &Arc<NilSchema>,
    alpha: Rational,
    beta: Rational,
) -> PolySeq {
    // n -> e2^{beta n} e1^{alpha n}
    PolySeq::from_fn(h.clone(), 1, PolySeq::degree_downset(h, 2), |n| {
        let e2 = GroupElement::generator_power(h.clone(), 1, &beta * rat_int(n[0]));
        let e1 = GroupElement::generator_power(h.clone(), 0, &alpha * rat_int(n[0]));
        e2.mul(&e1)
    })
    .unwrap()
}

#[test]
fn constant_sequence_evaluates_constantly() {
    let h = catalog::heisenberg().unwrap();
    let x = GroupElement::new(h.clone(), vec![rat_i64(1, 3), rat_i64(2, 5), rat_i64(7, 9)]);
    let g = PolySeq::constant(x.clone()).unwrap();
    for n in [-5i64, 0, 3, 11] {
        assert_eq!(g.eval(&[n]), x);
    }
}

#[test]
fn heisenberg_linear_orbit_eval() {
    let h = catalog::heisenberg().unwrap();
    let g = heis_linear_orbit(&h, rat_i64(2, 7), rat_i64(3, 5));
    let v = g.eval(&[4]);
    assert_eq!(v.coords, vec![rat_i64(8, 7), rat_i64(12, 5), rat_i64(-96, 35)]);
}

#[test]
fn torus_polynomial_eval() {
    // g(n) = alpha n + gamma n^2 with alpha = 1/5, gamma = 1/7, n = 3
    let t = catalog::torus(1, 2).unwrap();
    let g = PolySeq::from_fn(t.clone(), 1, PolySeq::degree_downset(&t, 2), |n| {
        let v = rat_i64(1, 5) * rat_int(n[0]) + rat_i64(1, 7) * rat_int(n[0] * n[0]);
        GroupElement::new(t.clone(), vec![v])
    })
    .unwrap();
    let v = g.eval(&[3]);
    assert_eq!(v.coords[0], rat_i64(66, 35));
    assert_eq!(crate::scalar::signed_frac(&v.coords[0]), rat_i64(-4, 35));
}

#[test]
fn taylor_extraction_examples() {
    let h = catalog::heisenberg().unwrap();
    // n -> e1^n e12^{n(n-1)}: g1 = e1, g2 = e12^2 since n(n-1) = 2 binom(n,2)
    let g = PolySeq::from_fn(h.clone(), 1, PolySeq::degree_downset(&h, 2), |n| {
        let e1 = GroupElement::generator_power(h.clone(), 0, rat_int(n[0]));
        let c = GroupElement::generator_power(h.clone(), 2, rat_int(n[0] * (n[0] - 1)));
        e1.mul(&c)
    })
    .unwrap();
    assert_eq!(
        g.coeffs.get(&FiltIndex::Degree(1)).unwrap().coords,
        vec![rat_int(1), rat_int(0), rat_int(0)]
    );
    assert_eq!(
        g.coeffs.get(&FiltIndex::Degree(2)).unwrap().coords,
        vec![rat_int(0), rat_int(0), rat_int(2)]
    );
}

#[test]
fn eval_extract_round_trip_across_catalog() {
    let schemas = [
        catalog::torus(1, 3).unwrap(),
        catalog::heisenberg().unwrap(),
        catalog::heisenberg_degrank32().unwrap(),
        catalog::free2step(2).unwrap(),
        catalog::universal_group(&[2, 0, 0], 3, 3).unwrap(),
    ];
    let mut rng = crate::rng::DetRng::new(31);
    for s in &schemas {
        let d = s.weights.iter().map(|w| w.grade()).max().unwrap();
        let downset = PolySeq::degree_downset(s, d);
        for _ in 0..25 {
            let mut coeffs = BTreeMap::new();
            for j in &downset {
                let allowed = s.positions_of(j);
                if allowed.is_empty() {
                    continue;
                }
                let mut coords = vec![Rational::zero(); s.dim()];
                for &p in allowed {
                    coords[p] = rng.rational(3, 4);
                }
                coeffs.insert(j.clone(), GroupElement::new(s.clone(), coords));
            }
            let g = PolySeq::new(s.clone(), 1, downset.clone(), coeffs).unwrap();
            let mut samples = BTreeMap::new();
            for n in -2..=(d as i64 + 2) {
                samples.insert(vec![n], g.eval(&[n]));
            }
            let g2 = PolySeq::extract(s.clone(), 1, downset.clone(), &samples).unwrap();
            assert_eq!(g.coeffs, g2.coeffs, "roundtrip failed on {}", s.name);
        }
    }
}

#[test]
fn inconsistent_samples_are_rejected() {
    let t = catalog::torus(1, 1).unwrap();
    let mut samples = BTreeMap::new();
    // n^2 does not fit degree <= 1
    for n in 0..4i64 {
        samples.insert(vec![n], GroupElement::new(t.clone(), vec![rat_int(n * n)]));
    }
    let err = PolySeq::extract(t.clone(), 1, PolySeq::degree_downset(&t, 1), &samples);
    assert!(matches!(err, Err(PolyError::Inconsistent { .. })));
}

#[test]
fn derivative_examples() {
    let h = catalog::heisenberg().unwrap();
    // linear sequence g1^n: derivative is the constant g1^h
    let g1 = GroupElement::new(h.clone(), vec![rat_i64(1, 3), rat_i64(1, 5), rat_int(0)]);
    let lin = PolySeq::from_fn(h.clone(), 1, PolySeq::degree_downset(&h, 2), |n| {
        g1.pow_i64(n[0])
    })
    .unwrap();
    let d = lin.derivative(&[3]).unwrap();
    let expected = g1.pow_i64(3);
    for n in [-2i64, 0, 5] {
        assert_eq!(d.eval(&[n]), expected);
    }

    // central binomial: g(n) = c^{binom(n,2)}; d1 g(n) = c^n; d1 d1 g = c
    let central = PolySeq::from_fn(h.clone(), 1, PolySeq::degree_downset(&h, 2), |n| {
        GroupElement::generator_power(
            h.clone(),
            2,
            Rational::from_integer(crate::scalar::binomial(n[0], 2)),
        )
    })
    .unwrap();
    let d1 = central.derivative(&[1]).unwrap();
    for n in [0i64, 1, 4, -3] {
        assert_eq!(d1.eval(&[n]), GroupElement::generator_power(h.clone(), 2, rat_int(n)));
    }
    let d2 = d1.derivative(&[1]).unwrap();
    assert_eq!(d2.eval(&[9]), GroupElement::generator(h.clone(), 2));

    // zero shift gives the identity sequence
    let d0 = lin.derivative(&[0]).unwrap();
    assert!(d0.eval(&[7]).is_identity());
}

#[test]
fn derivative_cocycle_identity() {
    // d_{h+k} g(n) = d_h g(n+k) * d_k g(n), exactly
    let h = catalog::heisenberg().unwrap();
    let g = heis_linear_orbit(&h, rat_i64(2, 7), rat_i64(3, 5));
    for (hh, kk) in [(1i64, 2i64), (3, -1), (-2, 5)] {
        for n in [-1i64, 0, 4] {
            let lhs = g.eval(&[n + hh + kk]).mul(&g.eval(&[n]).inverse());
            let rhs_a = g.eval(&[n + kk + hh]).mul(&g.eval(&[n + kk]).inverse());
            let rhs_b = g.eval(&[n + kk]).mul(&g.eval(&[n]).inverse());
            assert_eq!(lhs, rhs_a.mul(&rhs_b));
        }
    }
}

#[test]
fn verify_polynomial_accepts_taylor_forms_and_products() {
    let h = catalog::heisenberg().unwrap();
    let g = heis_linear_orbit(&h, rat_i64(2, 7), rat_i64(3, 5));
    assert!(verify_polynomial(&g, 3, 2).pass);

    let g2 = heis_linear_orbit(&h, rat_i64(1, 4), rat_i64(5, 11));
    let prod = g.pointwise_product(&g2).unwrap();
    assert!(verify_polynomial(&prod, 3, 2).pass);

    // g * g^{-1} is the constant identity
    let inv = g.inverse_seq().unwrap();
    let unit = g.pointwise_product(&inv).unwrap();
    for n in [-3i64, 0, 8] {
        assert!(unit.eval(&[n]).is_identity());
    }
}

#[test]
fn verify_polynomial_catches_filtration_violation() {
    // Heisenberg-like schema whose G_1 omits e1; a coefficient with e1
    // support at degree 1 violates polynomiality with a witness at m = 1.
    let mut commutators: BTreeMap<(usize, usize), Word> = BTreeMap::new();
    commutators.insert((0, 1), vec![(2, rat_int(1))]);
    let mut filtration = BTreeMap::new();
    filtration.insert(FiltIndex::Degree(0), vec![0, 1, 2]);
    filtration.insert(FiltIndex::Degree(1), vec![1, 2]);
    filtration.insert(FiltIndex::Degree(2), vec![2]);
    let s = NilSchema::build(
        "heisenberg_restricted",
        IndexKind::Degree,
        2,
        vec!["e1".into(), "e2".into(), "e12".into()],
        commutators,
        filtration,
        vec![0, 1],
        vec![FiltIndex::Degree(1), FiltIndex::Degree(1), FiltIndex::Degree(2)],
        vec![1, 1, 2],
    )
    .unwrap();
    // the checked constructor refuses the bad coefficient
    let mut coeffs = BTreeMap::new();
    coeffs.insert(FiltIndex::Degree(1), GroupElement::generator(s.clone(), 0));
    let err = PolySeq::new(s.clone(), 1, PolySeq::degree_downset(&s, 2), coeffs.clone());
    assert!(matches!(err, Err(PolyError::Support { .. })));
    // bypassing it, verify_polynomial reports the witness at order 1
    let g = PolySeq {
        schema: s.clone(),
        arity: 1,
        downset: PolySeq::degree_downset(&s, 2),
        coeffs,
    };
    let report = verify_polynomial(&g, 2, 2);
    assert!(!report.pass);
    let (hs, position) = report.witness.unwrap();
    assert_eq!(hs.len(), 1);
    assert_eq!(position, 0);
}

#[test]
fn hk_membership_basic_cubes() {
    let h = catalog::heisenberg().unwrap();
    let deg1 = FiltIndex::Degree(1);

    // diagonal cube (g, g, g, g) with g in G_0
    let g = GroupElement::new(h.clone(), vec![rat_i64(1, 3), rat_i64(2, 7), rat_i64(1, 2)]);
    let cube = Cube::new(h.clone(), vec![deg1.clone(), deg1.clone()], vec![g.clone(); 4]);
    let m = hk_membership(&cube);
    assert!(m.member);
    assert_eq!(expand_certificate(&h, 2, &m.certificate), cube.vertices);
    assert!(certificate_degrees_ok(&cube, &m.certificate));

    // iota_[m](g) with g in G_{i_1+i_2} = G_2
    let central = GroupElement::generator_power(h.clone(), 2, rat_i64(5, 3));
    let mut vertices = vec![GroupElement::identity(h.clone()); 4];
    vertices[3] = central;
    let cube = Cube::new(h.clone(), vec![deg1.clone(), deg1.clone()], vertices);
    let m = hk_membership(&cube);
    assert!(m.member);
    assert!(certificate_degrees_ok(&cube, &m.certificate));
}

#[test]
fn hk_membership_torus_parallelepipeds() {
    // on the degree-1 torus, order-2 cubes are exactly (x, x+a, x+b, x+a+b)
    let t = catalog::torus(1, 1).unwrap();
    let deg1 = FiltIndex::Degree(1);
    let mk = |v: [Rational; 4]| {
        Cube::new(
            t.clone(),
            vec![deg1.clone(), deg1.clone()],
            v.into_iter().map(|x| GroupElement::new(t.clone(), vec![x])).collect(),
        )
    };
    let (a, b) = (rat_i64(1, 3), rat_i64(2, 5));
    let good = mk([rat_int(0), a.clone(), b.clone(), &a + &b]);
    assert!(hk_membership(&good).member);
    let bad = mk([rat_int(0), a.clone(), b.clone(), &a + &b + rat_i64(1, 7)]);
    assert!(!hk_membership(&bad).member);
}

#[test]
fn polynomial_maps_preserve_integer_cubes() {
    // image cubes of a Taylor-form sequence are Host-Kra cubes; a
    // non-polynomial map fails on some sampled cube
    let h = catalog::heisenberg().unwrap();
    let deg1 = FiltIndex::Degree(1);
    let g = heis_linear_orbit(&h, rat_i64(2, 7), rat_i64(3, 5));
    let quadratic = |n: i64| GroupElement::generator_power(h.clone(), 0, rat_i64(n * n, 7));

    let mut rng = crate::rng::DetRng::new(41);
    let mut bad_seen = false;
    for _ in 0..200 {
        // integer parallelepiped n0 + sum_{l in omega} h_l
        let n0 = rng.int_in(-20, 20);
        let h1 = rng.int_in(-10, 10);
        let h2 = rng.int_in(-10, 10);
        let pts = [n0, n0 + h1, n0 + h2, n0 + h1 + h2];
        let image = Cube::new(
            h.clone(),
            vec![deg1.clone(), deg1.clone()],
            pts.iter().map(|&n| g.eval(&[n])).collect(),
        );
        assert!(hk_membership(&image).member, "image cube failed at {pts:?}");
        let image_bad = Cube::new(
            h.clone(),
            vec![deg1.clone(), deg1.clone()],
            pts.iter().map(|&n| quadratic(n)).collect(),
        );
        if !hk_membership(&image_bad).member {
            bad_seen = true;
        }
    }
    assert!(bad_seen, "the non-polynomial map was never caught");
}

#[test]
fn horizontal_taylor_examples() {
    // Heisenberg linear orbit: first coefficient (alpha, beta)
    let h = catalog::heisenberg().unwrap();
    let (alpha, beta) = (rat_i64(2, 7), rat_i64(3, 5));
    let g = heis_linear_orbit(&h, alpha.clone(), beta.clone());
    let t1 = horizontal_taylor(&g, 1).unwrap();
    assert_eq!(t1, vec![TorusPoint::new(alpha), TorusPoint::new(beta)]);

    // modifying the orbit by a central factor does not change it
    let g_mod = g
        .pointwise_product(&PolySeq::from_fn(h.clone(), 1, PolySeq::degree_downset(&h, 2), |n| {
            GroupElement::generator_power(h.clone(), 2, rat_i64(5 * n[0] * n[0] + n[0], 9))
        })
        .unwrap())
        .unwrap();
    assert_eq!(horizontal_taylor(&g_mod, 1).unwrap(), t1);

    // torus(1,d): d-th coefficient is d! alpha_d
    let t = catalog::torus(1, 3).unwrap();
    let a3 = rat_i64(1, 11);
    let cubic = PolySeq::from_fn(t.clone(), 1, PolySeq::degree_downset(&t, 3), |n| {
        GroupElement::new(t.clone(), vec![&a3 * rat_int(n[0].pow(3)) + rat_i64(n[0], 2)])
    })
    .unwrap();
    let t3 = horizontal_taylor(&cubic, 3).unwrap();
    assert_eq!(t3, vec![TorusPoint::new(rat_i64(6, 11))]);

    // degree-rank model of {alpha n^2} beta n: Taylor_1 = beta, Taylor_2 = 2 alpha
    let hd = catalog::heisenberg_degrank32().unwrap();
    let orbit = PolySeq::from_fn(hd.clone(), 1, PolySeq::degree_downset(&hd, 3), |n| {
        let e2 = GroupElement::generator_power(hd.clone(), 1, rat_i64(3 * n[0], 5));
        let e1 = GroupElement::generator_power(hd.clone(), 0, rat_i64(2 * n[0] * n[0], 7));
        e2.mul(&e1)
    })
    .unwrap();
    assert_eq!(horizontal_taylor(&orbit, 1).unwrap(), vec![TorusPoint::new(rat_i64(3, 5))]);
    assert_eq!(horizontal_taylor(&orbit, 2).unwrap(), vec![TorusPoint::new(rat_i64(4, 7))]);

    // constant orbit: all-zero tuple
    let c = PolySeq::constant(GroupElement::new(
        h.clone(),
        vec![rat_i64(1, 3), rat_i64(1, 4), rat_i64(1, 5)],
    ))
    .unwrap();
    assert!(horizontal_taylor(&c, 1).unwrap().iter().all(|t| t.is_zero()));

    // out of range
    assert!(horizontal_taylor(&g, 5).is_err());
}

#[test]
fn horizontal_taylor_is_shift_invariant() {
    let h = catalog::heisenberg().unwrap();
    let g = heis_linear_orbit(&h, rat_i64(5, 13), rat_i64(4, 9));
    let base: Vec<_> = (0..=2).map(|i| horizontal_taylor(&g, i).unwrap()).collect();
    for shift in [1i64, -4, 7] {
        let shifted =
            PolySeq::from_fn(h.clone(), 1, g.downset.clone(), |n| g.eval(&[n[0] + shift]))
                .unwrap();
        for (i, expected) in base.iter().enumerate() {
            assert_eq!(&horizontal_taylor(&shifted, i as u32).unwrap(), expected);
        }
    }
}

#[test]
fn appc_orbit_is_polynomial_and_serializes() {
    let s = catalog::app_c_multidegree().unwrap();
    let (alpha, beta) = (rat_i64(2, 7), rat_i64(3, 5));
    let downset = vec![
        FiltIndex::MultiDegree(vec![0, 0]),
        FiltIndex::MultiDegree(vec![0, 1]),
        FiltIndex::MultiDegree(vec![1, 0]),
        FiltIndex::MultiDegree(vec![1, 1]),
    ];
    let g = PolySeq::from_fn(s.clone(), 2, downset, |n| {
        let (n1, n2) = (n[0], n[1]);
        let mut coords = vec![Rational::zero(); 7];
        coords[0] = &alpha * rat_int(n1);
        coords[1] = &beta * rat_int(n1);
        coords[3] = &alpha * rat_int(n2);
        coords[4] = &beta * rat_int(n2);
        coords[6] = -(&alpha * &beta) * rat_int(n1 * n2);
        GroupElement::new(s.clone(), coords)
    })
    .unwrap();
    assert!(verify_polynomial(&g, 3, 2).pass);

    let json = serde_json::to_string(&PolySeqFile::from_seq(&g)).unwrap();
    let file: PolySeqFile = serde_json::from_str(&json).unwrap();
    let g2 = file.into_seq(s.clone()).unwrap();
    assert_eq!(g.coeffs, g2.coeffs);
    for n in [[0i64, 0], [3, -2], [5, 7]] {
        assert_eq!(g.eval(&n), g2.eval(&n));
    }
}
