use super::reference::*;
use super::*;
use crate::scalar::{rat_i64, rat_int, signed_frac, Rational};
use num_traits::{Signed, ToPrimitive};

fn linear_phase(n: usize, alpha: Rational) -> SampledFunction {
    SampledFunction::from_phase_fn(n, |k| crate::scalar::TorusPoint::new(&alpha * rat_int(k)))
}

fn quadratic_phase(n: usize, alpha: Rational) -> SampledFunction {
    SampledFunction::from_phase_fn(n, |k| {
        crate::scalar::TorusPoint::new(&alpha * rat_int(k * k))
    })
}

/// chi_h(n) = e(2 alpha h n + alpha h^2), the derivative family of
/// e(alpha n^2) on full support.
fn quadratic_family(n: usize, alpha: &Rational, h: i64) -> SampledFunction {
    SampledFunction::from_phase_fn(n, |k| {
        crate::scalar::TorusPoint::new(
            alpha * rat_int(2 * h * k) + alpha * rat_int(h * h),
        )
    })
}

#[test]
fn mult_derivative_examples() {
    // constant: support shrinks
    let f = SampledFunction::ones(10);
    let d = mult_derivative(&f, 3);
    for n in 1..=7i64 {
        assert_eq!(d.value(n).unwrap()[0], Complex64::new(1.0, 0.0));
    }
    for n in 8..=10i64 {
        assert_eq!(d.value(n).unwrap()[0], Complex64::new(0.0, 0.0));
    }

    // linear phase: constant e(alpha h) on the support
    let alpha = rat_i64(2, 7);
    let f = linear_phase(32, alpha.clone());
    let d = mult_derivative(&f, 5);
    let expected = {
        let t = 2.0 * std::f64::consts::PI * (&alpha * rat_int(5)).to_f64().unwrap();
        Complex64::new(t.cos(), t.sin())
    };
    for n in 1..=27i64 {
        assert!((d.value(n).unwrap()[0] - expected).norm() < 1e-12);
    }

    // quadratic phase: Delta_h f(n) = e(2 alpha h n + alpha h^2)
    let alpha = rat_i64(3, 11);
    let f = quadratic_phase(40, alpha.clone());
    let d = mult_derivative(&f, 4);
    let g = quadratic_family(36, &alpha, 4);
    for n in 1..=36i64 {
        assert!((d.value(n).unwrap()[0] - g.value(n).unwrap()[0]).norm() < 1e-12);
    }
}

#[test]
fn u_norm_trivial_and_extremal_values() {
    let f = SampledFunction::ones(16);
    assert!((u_norm(&f, 2, None).unwrap() - 1.0).abs() < 1e-12);

    // degree-1 phase is U^2-extremal
    let f = linear_phase(16, rat_i64(1, 2));
    assert!((u_norm(&f, 2, None).unwrap() - 1.0).abs() < 1e-12);

    // phase polynomials of degree <= s are U^{s+1}-extremal
    let mut rng = crate::rng::DetRng::new(0xE0);
    for s in 1..=2u32 {
        for _ in 0..3 {
            let coeffs: Vec<Rational> = (0..=s).map(|_| rng.rational(20, 30)).collect();
            let f = SampledFunction::from_phase_fn(24, |k| {
                let mut acc = Rational::from_integer(0.into());
                let mut pw = Rational::from_integer(1.into());
                for c in &coeffs {
                    acc += c * &pw;
                    pw *= rat_int(k);
                }
                crate::scalar::TorusPoint::new(acc)
            });
            let norm = u_norm(&f, s + 1, None).unwrap();
            assert!((norm - 1.0).abs() < 1e-9, "s = {s}: {norm}");
        }
    }
}

#[test]
fn u_norm_matches_naive_oracle() {
    let mut rng = crate::rng::DetRng::new(0xACE);
    for n in [5usize, 8] {
        for d in 1..=3u32 {
            for _ in 0..3 {
                let f = SampledFunction::new(
                    (0..n)
                        .map(|_| {
                            vec![Complex64::new(rng.f64() * 2.0 - 1.0, rng.f64() * 2.0 - 1.0)]
                        })
                        .collect(),
                );
                let ntilde = (1usize << d) * n;
                let fast = u_norm(&f, d, Some(ntilde)).unwrap();
                let slow = naive_u_norm(&f, d, ntilde);
                assert!(
                    (fast - slow).abs() < 1e-12,
                    "n = {n}, d = {d}: {fast} vs {slow}"
                );
            }
        }
    }
    // the worked quadratic instance
    let f = quadratic_phase(16, rat_i64(3, 7));
    let fast = u_norm(&f, 2, None).unwrap();
    let slow = naive_u_norm(&f, 2, 64);
    assert!((fast - slow).abs() < 1e-12);
}

#[test]
fn u_norm_is_independent_of_ntilde() {
    let f = quadratic_phase(24, rat_i64(5, 13));
    for d in 1..=3u32 {
        let base = u_norm(&f, d, None).unwrap();
        let shifted = u_norm(&f, d, Some((1usize << d) * 24 + 17)).unwrap();
        assert!((base - shifted).abs() < 1e-9, "d = {d}: {base} vs {shifted}");
    }
}

#[test]
fn u_norm_error_paths() {
    let f = SampledFunction::ones(8);
    assert!(matches!(u_norm(&f, 0, None), Err(GowersError::ZeroOrder)));
    assert!(matches!(
        u_norm(&f, 2, Some(16)),
        Err(GowersError::NtildeTooSmall { .. })
    ));
}

#[test]
fn group_norms_are_monotone_in_d() {
    let mut rng = crate::rng::DetRng::new(0x40);
    for _ in 0..100 {
        let values: Vec<Complex64> = (0..32)
            .map(|_| Complex64::new(rng.f64() * 2.0 - 1.0, rng.f64() * 2.0 - 1.0))
            .collect();
        let mut prev = 0.0;
        for d in 1..=4u32 {
            let norm = u_norm_group(&values, d).unwrap();
            assert!(norm >= prev - 1e-12, "d = {d}: {norm} < {prev}");
            prev = norm;
        }
    }
}

#[test]
fn norm_power_is_real_nonnegative() {
    let mut rng = crate::rng::DetRng::new(0x77);
    for _ in 0..20 {
        let values: Vec<Complex64> = (0..12)
            .map(|_| Complex64::new(rng.f64() * 2.0 - 1.0, rng.f64() * 2.0 - 1.0))
            .collect();
        for d in 1..=3u32 {
            let z = naive_u_power_complex(&values, d);
            assert!(z.im.abs() < 1e-12);
            assert!(z.re >= -1e-12);
        }
    }
}

#[test]
fn correlation_examples() {
    let alpha = rat_i64(3, 17);
    let f = linear_phase(64, alpha.clone());
    assert!((correlation(&f, &f).unwrap() - 1.0).abs() < 1e-12);

    // distinct linear phases: geometric series
    let beta = alpha.clone() + rat_i64(5, 64);
    let g = linear_phase(64, beta.clone());
    let c = correlation(&f, &g).unwrap();
    let theta = (&alpha - &beta).to_f64().unwrap();
    assert!((c - geometric_mean_abs(theta, 64)).abs() < 1e-12);

    // unit vector-valued chi: correlation(chi, chi) >= 1/sqrt(D)
    let spec = crate::nilseq::heisenberg_bracket(
        &rat_i64(2, 7),
        &rat_i64(3, 5),
        crate::nilseq::SmoothingAtlas::regular(2, 8, rat_i64(1, 10)).unwrap(),
    );
    let chi = SampledFunction::from_vector_fn(64, |n| spec.eval(&[n]).unwrap().vector);
    let d = chi.dim as f64;
    assert!(correlation(&chi, &chi).unwrap() >= 1.0 / d.sqrt() - 1e-12);
}

#[test]
fn gcs_statistic_on_quadruples() {
    let n = 96usize;
    let alpha = rat_i64(3, 31);
    let chi = |h: i64| quadratic_family(n, &alpha, h);

    // degenerate quadruple: statistic exactly 1
    let c = chi(7);
    let s = gcs_statistic([&c, &c, &c, &c], (7, 7, 7, 7)).unwrap();
    assert!((s - 1.0).abs() < 1e-12);

    // closing quadruples: only the window truncation survives
    let mut rng = crate::rng::DetRng::new(0x6C);
    for _ in 0..20 {
        let h1 = rng.int_in(-20, 20);
        let h2 = rng.int_in(-20, 20);
        let h3 = rng.int_in(-20, 20);
        let h4 = h1 + h2 - h3;
        let (c1, c2, c3, c4) = (chi(h1), chi(h2), chi(h3), chi(h4));
        let s = gcs_statistic([&c1, &c2, &c3, &c4], (h1, h2, h3, h4)).unwrap();
        let expected = 1.0 - (h1 - h4).unsigned_abs() as f64 / n as f64;
        assert!((s - expected).abs() < 1e-12, "({h1},{h2},{h3},{h4}): {s} vs {expected}");
    }

    // non-quadruples obey the geometric-series bound
    for _ in 0..20 {
        let h1 = rng.int_in(-15, 15);
        let h2 = rng.int_in(-15, 15);
        let h3 = rng.int_in(-15, 15);
        let mut delta = rng.int_in(1, 9);
        if rng.below(2) == 0 {
            delta = -delta;
        }
        let h4 = h1 + h2 - h3 + delta;
        let s_gap = h1 + h2 - h3 - h4;
        let dist = signed_frac(&(&alpha * rat_int(2 * s_gap)))
            .abs()
            .to_f64()
            .unwrap();
        if dist < 1e-9 {
            continue;
        }
        let (c1, c2, c3, c4) = (chi(h1), chi(h2), chi(h3), chi(h4));
        let s = gcs_statistic([&c1, &c2, &c3, &c4], (h1, h2, h3, h4)).unwrap();
        let bound = 1.0 / (n as f64 * dist) + 2.0 / n as f64;
        assert!(s <= bound + 1e-12, "({h1},{h2},{h3},{h4}): {s} > {bound}");
    }
}

#[test]
fn vector_valued_norm_combines_componentwise() {
    // the vector norm is (sum_i |f_i|^{2^d})^{1/2^d} over the component
    // [N]-norms
    let spec = crate::nilseq::heisenberg_bracket(
        &rat_i64(2, 7),
        &rat_i64(3, 5),
        crate::nilseq::SmoothingAtlas::regular(2, 8, rat_i64(1, 10)).unwrap(),
    );
    let chi = SampledFunction::from_vector_fn(32, |n| spec.eval(&[n]).unwrap().vector);
    for d in 1..=2u32 {
        let whole = u_norm(&chi, d, None).unwrap();
        let mut acc = 0.0f64;
        for c in 0..chi.dim {
            let column = SampledFunction::new(chi.values.iter().map(|v| vec![v[c]]).collect());
            acc += u_norm(&column, d, None).unwrap().powi((1u64 << d) as i32);
        }
        let combined = acc.powf(1.0 / (1u64 << d) as f64);
        assert!((whole - combined).abs() < 1e-12, "d = {d}: {whole} vs {combined}");
    }
}

#[test]
fn csv_round_trip() {
    let spec = crate::nilseq::heisenberg_bracket(
        &rat_i64(2, 7),
        &rat_i64(3, 5),
        crate::nilseq::SmoothingAtlas::unsmoothed(2),
    );
    let f = SampledFunction::from_vector_fn(20, |n| spec.eval(&[n]).unwrap().vector);
    let text = f.to_csv();
    let g = SampledFunction::from_csv(&text).unwrap();
    assert_eq!(f.n_len, g.n_len);
    assert_eq!(f.dim, g.dim);
    for (a, b) in f.values.iter().zip(&g.values) {
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).norm() < 1e-14);
        }
    }
    assert!(SampledFunction::from_csv("1,0.5\n").is_err());
}
