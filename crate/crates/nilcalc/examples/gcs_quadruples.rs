//! The Cauchy-Schwarz additive-quadruple statistic for the derivative
//! family of a quadratic phase: closing quadruples leave only the window
//! truncation `1 - |h1 - h4|/N`, and non-closing ones collapse to the
//! geometric-series scale.

use nilcalc::gowers::{gcs_statistic, SampledFunction};
use nilcalc::scalar::{rat_i64, rat_int, TorusPoint};

fn main() {
    let n = 512usize;
    let alpha = rat_i64(3, 31);
    let chi = |h: i64| {
        SampledFunction::from_phase_fn(n, |k| {
            TorusPoint::new(&alpha * rat_int(2 * h * k) + &alpha * rat_int(h * h))
        })
    };

    println!("chi_h(n) = e(2 alpha h n + alpha h^2), alpha = 3/31, N = {n}");
    println!("\nadditive quadruples (h1 + h2 = h3 + h4):");
    for (h1, h2, h3) in [(5i64, 5, 5), (10, 4, 7), (-8, 20, 3), (40, -2, 11)] {
        let h4 = h1 + h2 - h3;
        let (c1, c2, c3, c4) = (chi(h1), chi(h2), chi(h3), chi(h4));
        let s = gcs_statistic([&c1, &c2, &c3, &c4], (h1, h2, h3, h4)).unwrap();
        let expected = 1.0 - (h1 - h4).unsigned_abs() as f64 / n as f64;
        println!("  ({h1:3},{h2:3},{h3:3},{h4:3}): statistic {s:.12}, window bound {expected:.12}");
    }

    println!("\nnon-quadruples (h1 + h2 - h3 - h4 = s != 0):");
    for (h1, h2, h3, gap) in [(5i64, 5, 5, 1i64), (10, 4, 7, 3), (-8, 20, 3, -2)] {
        let h4 = h1 + h2 - h3 + gap;
        let (c1, c2, c3, c4) = (chi(h1), chi(h2), chi(h3), chi(h4));
        let s = gcs_statistic([&c1, &c2, &c3, &c4], (h1, h2, h3, h4)).unwrap();
        println!("  ({h1:3},{h2:3},{h3:3},{h4:3}): statistic {s:.6}");
    }
}
