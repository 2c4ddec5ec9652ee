//! The converse-theorem instance: a genuinely 2-step object, the bracket
//! phase `e({alpha n} beta n)`, keeps a large U^3[N] norm across scales,
//! while its U^2 norm is small and a generic linear phase correlates
//! with nothing.

use nilcalc::gowers::{correlation, u_norm, SampledFunction};
use nilcalc::scalar::{parse_rat, rat_int, signed_frac, TorusPoint};

fn main() {
    let alpha = parse_rat(nilcalc::scenario::GENERIC_ALPHA).unwrap();
    let beta = parse_rat(nilcalc::scenario::GENERIC_BETA).unwrap();

    println!("f(n) = e({{alpha n}} beta n) with generic alpha, beta:");
    for n in [128usize, 256, 512] {
        let f = SampledFunction::from_phase_fn(n, |k| {
            TorusPoint::new(signed_frac(&(&alpha * rat_int(k))) * &beta * rat_int(k))
        });
        let u3 = u_norm(&f, 3, None).unwrap();
        let u2 = u_norm(&f, 2, None).unwrap();
        println!("  N = {n:4}: U^3 = {u3:.6}   U^2 = {u2:.6}");
    }

    // correlation with the matching and a mismatched character
    let n = 512;
    let f = SampledFunction::from_phase_fn(n, |k| {
        TorusPoint::new(signed_frac(&(&alpha * rat_int(k))) * &beta * rat_int(k))
    });
    let same = correlation(&f, &f).unwrap();
    let linear = SampledFunction::from_phase_fn(n, |k| TorusPoint::new(&alpha * rat_int(k)));
    let cross = correlation(&f, &linear).unwrap();
    println!("\ncorrelation with itself: {same:.6}; with the linear phase e(alpha n): {cross:.6}");
}
