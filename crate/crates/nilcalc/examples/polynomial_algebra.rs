//! Polynomial sequences in Taylor form: evaluation, extraction,
//! derivatives, pointwise products, horizontal Taylor coefficients, and
//! Host-Kra cube membership with certificates.

use nilcalc::nilgroup::{catalog, FiltIndex, GroupElement};
use nilcalc::polyseq::{
    cube, horizontal_taylor, verify_polynomial, PolySeq,
};
use nilcalc::scalar::{rat_i64, rat_int};

fn main() {
    let h = catalog::heisenberg().unwrap();
    let (alpha, beta) = (rat_i64(2, 7), rat_i64(3, 5));

    // the linear bracket orbit in Taylor form
    let g = PolySeq::from_fn(h.clone(), 1, PolySeq::degree_downset(&h, 2), |n| {
        let e2 = GroupElement::generator_power(h.clone(), 1, &beta * rat_int(n[0]));
        let e1 = GroupElement::generator_power(h.clone(), 0, &alpha * rat_int(n[0]));
        e2.mul(&e1)
    })
    .unwrap();
    println!("Taylor coefficients of n -> e2^(3n/5) e1^(2n/7):");
    for (j, c) in &g.coeffs {
        println!("  g_{j} = {c:?}");
    }
    println!("g(4) = {:?}", g.eval(&[4]));

    // derivatives and the polynomiality verifier
    let d = g.derivative(&[3]).unwrap();
    println!("\nderivative along h = 3 evaluated at 0: {:?}", d.eval(&[0]));
    let report = verify_polynomial(&g, 3, 2);
    println!("verify_polynomial(order <= 3, |h| <= 2): pass = {}", report.pass);

    // product of two sequences stays polynomial
    let g2 = PolySeq::from_fn(h.clone(), 1, PolySeq::degree_downset(&h, 2), |n| {
        GroupElement::generator_power(h.clone(), 0, rat_i64(n[0], 4))
    })
    .unwrap();
    let product = g.pointwise_product(&g2).unwrap();
    println!("product passes verify_polynomial: {}", verify_polynomial(&product, 3, 2).pass);

    // horizontal Taylor coefficients: (alpha, beta) mod 1
    let t1 = horizontal_taylor(&g, 1).unwrap();
    println!("\nfirst horizontal Taylor coefficient: ({}, {})", t1[0], t1[1]);

    // Host-Kra membership of an image parallelepiped, with certificate
    let deg1 = vec![FiltIndex::Degree(1), FiltIndex::Degree(1)];
    let pts = [5i64, 9, 12, 16]; // n0 = 5, h1 = 4, h2 = 7
    let image = cube::Cube::new(h.clone(), deg1, pts.iter().map(|&n| g.eval(&[n])).collect());
    let m = cube::hk_membership(&image);
    println!("\nimage cube over n = {pts:?}: member = {}", m.member);
    for gen in &m.certificate {
        println!("  generator on faces >= {:04b}: {:?}", gen.mask, gen.element);
    }
    assert_eq!(cube::expand_certificate(&h, 2, &m.certificate), image.vertices);
    println!("certificate reproduces the cube exactly");
}
