//! The multilinearisation demonstration: on the 7-dimensional
//! multidegree group with `[a1,b2] = c12`, `[a2,b1] = c12^{-1}`, the
//! diagonal of the two-variable character equals
//! `e(2 {alpha n} beta n) e(-{alpha n}{beta n})` exactly, and the
//! symmetrized bilinear bracket form restricts to `{alpha n} beta n`.

use nilcalc::bracket::{
    compare_with_nilchar_map, eval_bracket, multilinear_diagonal, symmetrized_bilinear,
};
use nilcalc::nilseq::{multilinear_appc, SmoothingAtlas};
use nilcalc::scalar::rat_i64;

fn main() {
    let alpha = rat_i64(2, 7);
    let beta = rat_i64(3, 5);

    let spec = multilinear_appc(&alpha, &beta, SmoothingAtlas::unsmoothed(6));
    println!("two-variable character chi on {}", spec.schema.name);
    for (n1, n2) in [(1i64, 1i64), (3, 5), (7, 2)] {
        let v = spec.eval(&[n1, n2]).unwrap();
        println!("  chi({n1},{n2}) = e({})", v.scalar_phase());
    }

    let expr = multilinear_diagonal(&alpha, &beta);
    let r = compare_with_nilchar_map(&expr, &spec, 500, |n| vec![n, n]).unwrap();
    println!(
        "diagonal chi(n,n) vs e(2{{an}}bn - {{an}}{{bn}}) on [1,500]: pass = {} ({} flagged)",
        r.pass, r.flagged
    );

    let sym = symmetrized_bilinear(&alpha, &beta);
    let mono = nilcalc::bracket::bracket_monomial(&alpha, &beta);
    let ok = (1..=500).all(|n| {
        eval_bracket(&sym, &[n, n]).unwrap() == eval_bracket(&mono, &[n]).unwrap()
    });
    println!("symmetrized (1/2){{an1}}bn2 + (1/2){{an2}}bn1 on the diagonal: pass = {ok}");
}
