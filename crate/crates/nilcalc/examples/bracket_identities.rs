//! Exact bracket-polynomial arithmetic: the expression grammar, the
//! product identity behind the degree-2 symbol relations, and the
//! quadratic bracket phase on the degree-rank filtered group.

use nilcalc::bracket::{
    check_product_identity, compare_with_nilchar, eval_bracket, parse,
};
use nilcalc::nilseq::{degrank32_bracket, SmoothingAtlas};
use nilcalc::rng::DetRng;
use nilcalc::scalar::rat_i64;

fn main() {
    // the tiny prefix grammar
    let expr = parse("(* (frac (* (const 2/7) (var 0))) (* (const 3/5) (var 0)))").unwrap();
    println!("{{2n/7}} (3n/5) at n = 4: {}", eval_bracket(&expr, &[4]).unwrap());

    // {an}bn + {bn}an = ab n^2 + {an}{bn} mod 1, exactly
    let r = check_product_identity(&rat_i64(2, 7), &rat_i64(3, 5), 200);
    println!("product identity, alpha=2/7 beta=3/5, n <= 200: pass = {}", r.pass);

    let mut rng = DetRng::new(42);
    let mut all = true;
    for _ in 0..1000 {
        let a = rng.rational(500, 600);
        let b = rng.rational(500, 600);
        all &= check_product_identity(&a, &b, 50).pass;
    }
    println!("1000 random pairs, n <= 50: pass = {all}");

    // e({alpha n^2} beta n) from the (3,2)-filtered Heisenberg group
    let (alpha, beta) = (rat_i64(5, 13), rat_i64(2, 9));
    let spec = degrank32_bracket(&alpha, &beta, SmoothingAtlas::unsmoothed(2));
    let quad = parse(
        "(* (frac (* (const 5/13) (* (var 0) (var 0)))) (* (const 2/9) (var 0)))",
    )
    .unwrap();
    let cmp = compare_with_nilchar(&quad, &spec, 500).unwrap();
    println!(
        "{{alpha n^2}} beta n vs degree-rank character on [1,500]: pass = {} ({} flagged)",
        cmp.pass, cmp.flagged
    );
}
