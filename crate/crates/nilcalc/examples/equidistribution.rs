//! Equidistribution testing: Weyl sums, the horizontal-character
//! obstruction search, and empirical character averages of a Heisenberg
//! orbit against the Haar prediction.

use nilcalc::equid::{empirical_distribution_test, leibman_test, weyl_sum_poly};
use nilcalc::nilgroup::{catalog, GroupElement};
use nilcalc::polyseq::PolySeq;
use nilcalc::scalar::{parse_rat, rat_i64, rat_int, Rational};
use num_traits::Zero;

fn main() {
    // Weyl sums of linear phases
    for (label, alpha, n) in [
        ("n/2 over [64]", rat_i64(1, 2), 64usize),
        ("(89/144) n over [144]", rat_i64(89, 144), 144),
        ("generic n over [1000]", parse_rat(nilcalc::scenario::GENERIC_SINGLE).unwrap(), 1000),
    ] {
        let s = weyl_sum_poly(&[Rational::zero(), alpha], n);
        println!("|E e({label})| = {s:.6}");
    }

    // obstruction search on the torus
    let torus = catalog::torus(1, 1).unwrap();
    let linear = |alpha: Rational| {
        let t = torus.clone();
        PolySeq::from_fn(torus.clone(), 1, PolySeq::degree_downset(&torus, 1), move |k| {
            GroupElement::new(t.clone(), vec![&alpha * rat_int(k[0])])
        })
        .unwrap()
    };
    let n = 4096;
    println!("\nobstruction search at N = {n}, H = 10, C = 10:");
    for (label, alpha) in [
        ("alpha = 1/3".to_string(), rat_i64(1, 3)),
        (
            "alpha = 1/2 + 1/(7N)".to_string(),
            rat_i64(1, 2) + Rational::new(1.into(), (7 * n as i64).into()),
        ),
        (
            "generic alpha".to_string(),
            parse_rat(nilcalc::scenario::GENERIC_SINGLE).unwrap(),
        ),
    ] {
        let report = leibman_test(&linear(alpha), n, 10, &rat_int(10)).unwrap();
        println!(
            "  {label}: {:?}, witness {:?}, smoothness {:?}",
            report.verdict, report.witness, report.smoothness
        );
    }

    // empirical character discrepancy of the generic Heisenberg orbit
    let h = catalog::heisenberg().unwrap();
    let alpha = parse_rat(nilcalc::scenario::GENERIC_ALPHA).unwrap();
    let beta = parse_rat(nilcalc::scenario::GENERIC_BETA).unwrap();
    let orbit = PolySeq::from_fn(h.clone(), 1, PolySeq::degree_downset(&h, 2), |k| {
        let e2 = GroupElement::generator_power(h.clone(), 1, &beta * rat_int(k[0]));
        let e1 = GroupElement::generator_power(h.clone(), 0, &alpha * rat_int(k[0]));
        e2.mul(&e1)
    })
    .unwrap();
    let dist = empirical_distribution_test(&orbit, n, 3).unwrap();
    println!(
        "\ngeneric Heisenberg orbit at N = {n}: {} characters, max |average| = {:.4} ({})",
        dist.horizontal_chars + dist.vertical_chars,
        dist.max_abs_average,
        dist.worst_character
    );
}
