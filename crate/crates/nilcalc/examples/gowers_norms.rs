//! Gowers uniformity norms: extremal phase polynomials, agreement with
//! the literal multi-sum oracle, independence of the ambient cyclic
//! group, and the group-level monotonicity in the order.

use nilcalc::gowers::{reference, u_norm, u_norm_group, SampledFunction};
use nilcalc::rng::DetRng;
use nilcalc::scalar::{rat_i64, rat_int, Rational, TorusPoint};
use num_complex::Complex64;
use num_traits::Zero;

fn main() {
    // phase polynomials of degree <= s are U^{s+1}-extremal
    println!("N = 128 phase polynomials:");
    for (label, coeffs, d) in [
        ("e(n/2), U^2", vec![Rational::zero(), rat_i64(1, 2)], 2u32),
        ("e(3n^2/7), U^3", vec![Rational::zero(), Rational::zero(), rat_i64(3, 7)], 3),
        (
            "e(n^3/11 + n/5), U^4",
            vec![Rational::zero(), rat_i64(1, 5), Rational::zero(), rat_i64(1, 11)],
            4,
        ),
    ] {
        let f = SampledFunction::from_phase_fn(128, |k| {
            let mut acc = Rational::zero();
            let mut pw = rat_int(1);
            for c in &coeffs {
                acc += c * &pw;
                pw *= rat_int(k);
            }
            TorusPoint::new(acc)
        });
        println!("  |{label}[128]| = {:.12}", u_norm(&f, d, None).unwrap());
    }

    // fast path vs the naive multi-sum oracle
    let f = SampledFunction::from_phase_fn(8, |k| TorusPoint::new(rat_i64(3 * k * k, 17)));
    for d in 1..=3 {
        let fast = u_norm(&f, d, None).unwrap();
        let slow = reference::naive_u_norm(&f, d, (1 << d) * 8);
        println!("d = {d}: fast {fast:.15}  naive {slow:.15}  gap {:.2e}", (fast - slow).abs());
    }

    // the normalized norm does not depend on Ntilde
    let base = u_norm(&f, 2, None).unwrap();
    let shifted = u_norm(&f, 2, Some(32 + 17)).unwrap();
    println!("Ntilde invariance: |gap| = {:.2e}", (base - shifted).abs());

    // group-level monotonicity in d
    let mut rng = DetRng::new(9);
    let values: Vec<Complex64> = (0..32)
        .map(|_| Complex64::new(rng.f64() * 2.0 - 1.0, rng.f64() * 2.0 - 1.0))
        .collect();
    let norms: Vec<f64> = (1..=4).map(|d| u_norm_group(&values, d).unwrap()).collect();
    println!("random f on Z_32: U^1..U^4 = {norms:.6?} (nondecreasing)");
}
