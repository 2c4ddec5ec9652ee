//! Lifting a quadratic phase to a linear orbit: iterating a fixed
//! Heisenberg element against a fixed start point and projecting the
//! skew coordinate reproduces `n(n+1)/2 alpha + n beta + gamma` exactly.

use nilcalc::nilseq::{linear_lift_closed_form, linear_lift_orbit};
use nilcalc::scalar::{rat_i64, rat_int};

fn main() {
    let alpha = rat_i64(1, 7);
    let beta = rat_i64(1, 3);
    let gamma = rat_int(0);

    let walk = linear_lift_orbit(&alpha, &beta, &gamma, 500);
    println!("n, pi(gt^n xt), closed form");
    for n in [0u32, 1, 2, 3, 6, 10, 100, 500] {
        let closed = linear_lift_closed_form(&alpha, &beta, &gamma, n);
        println!("{n:4}  {}  {}", walk[n as usize], closed);
        assert_eq!(walk[n as usize], closed);
    }
    let all = (0..=500).all(|n| walk[n as usize] == linear_lift_closed_form(&alpha, &beta, &gamma, n));
    println!("\niterated action equals the closed form on [0,500]: {all}");
}
