//! Bounded-height frequency regularization: the descent splits a list of
//! torus frequencies into certified-independent, rational, and small
//! parts with an exact integer representation of every input.

use nilcalc::freqreg::{find_relation, regularize};
use nilcalc::scalar::{parse_rat, rat_i64, Rational, TorusPoint};

fn main() {
    let eps = rat_i64(1, 10_000);
    let xi = parse_rat("2000003/7000031").unwrap();
    let inputs: Vec<TorusPoint> = [
        rat_i64(1, 2),
        xi.clone(),
        &xi + rat_i64(1, 2),
        rat_i64(2, 1) * &xi,
        rat_i64(1, 50_000),
    ]
    .into_iter()
    .map(TorusPoint::new)
    .collect();

    println!("inputs:");
    for x in &inputs {
        println!("  {x}");
    }

    let d = regularize(&inputs, &eps, 10, 64).unwrap();
    println!("\nafter {} descent rounds at (eps = 1/10000, H = 10, Q = 64):", d.rounds);
    println!("  independent: {:?}", d.independent);
    println!("  rational:    {:?}", d.rational);
    println!("  small:       {:?}", d.small);
    println!("\nrepresentation rows (independent | rational | small):");
    for (x, row) in inputs.iter().zip(&d.representation) {
        println!("  {x} = {:?} | {:?} | {:?}", row.independent, row.rational, row.small);
    }
    println!("\nexact representation identity: {}", d.verify_representation(&inputs));
    let residual = find_relation(&d.independent_points(), &eps, 10).unwrap();
    println!("certified: no residual relation at (eps, H) -> {:?}", residual);

    // relation search on its own
    let pair: Vec<TorusPoint> =
        [rat_i64(1, 3), rat_i64(1, 6)].into_iter().map(TorusPoint::new).collect();
    println!(
        "\nfind_relation((1/3, 1/6), eps = 0, H = 3) = {:?}",
        find_relation(&pair, &Rational::from_integer(0.into()), 3).unwrap()
    );
}
