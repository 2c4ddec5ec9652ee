//! The Heisenberg bracket character: reducing the orbit
//! `e2^{beta n} e1^{alpha n}` into the fundamental domain and applying
//! the vertical frequency reproduces `e({alpha n} beta n)` exactly.

use nilcalc::bracket::{bracket_monomial, compare_with_nilchar};
use nilcalc::nilseq::{heisenberg_bracket, verify_equivariance, SmoothingAtlas};
use nilcalc::scalar::{rat_i64, rat_int, signed_frac};

fn main() {
    let alpha = rat_i64(2, 7);
    let beta = rat_i64(3, 5);

    let spec = heisenberg_bracket(&alpha, &beta, SmoothingAtlas::unsmoothed(2));
    println!("n, nilcharacter phase, {{alpha n}} beta n");
    for n in 1..=10 {
        let value = spec.eval(&[n]).unwrap();
        let expected = signed_frac(&(&alpha * rat_int(n))) * &beta * rat_int(n);
        println!(
            "{n:3}  {}  {}",
            value.scalar_phase(),
            nilcalc::scalar::TorusPoint::new(expected)
        );
    }

    let expr = bracket_monomial(&alpha, &beta);
    let r = compare_with_nilchar(&expr, &spec, 1000).unwrap();
    println!(
        "\nexact match on [1, 1000]: {} ({} compared, {} boundary-flagged)",
        r.pass, r.compared, r.flagged
    );

    // the smoothed vector-valued character has unit norm and exact
    // vertical equivariance
    let smooth = heisenberg_bracket(
        &alpha,
        &beta,
        SmoothingAtlas::regular(2, 8, rat_i64(1, 10)).unwrap(),
    );
    let v = smooth.eval(&[4]).unwrap();
    println!(
        "\nsmoothed character: {} charts, |chi(4)| = {:.12}",
        smooth.output_dim(),
        v.vector.norm()
    );
    let eq = verify_equivariance(&smooth, 200, 0xE9);
    println!(
        "equivariance on {} samples: phase mismatches = {}, max weight gap = {:.3e}",
        eq.used, eq.phase_mismatches, eq.max_weight_discrepancy
    );
}
