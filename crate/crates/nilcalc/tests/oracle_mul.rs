//! Collection multiplication against independent oracles.
//!
//! For 2-step catalog groups the oracle is literal generator shuffling on
//! words of +-1 letters: swapping two letters deposits the central
//! correction `[e_a, e_b]^{ea eb}` read straight off the commutator
//! table, and central exponents accumulate in a side ledger.  For the
//! class-3 universal group the oracle multiplies inside the truncated
//! free-algebra model.  Neither path shares code with the swap-polynomial
//! collection engine.

use nilcalc::nilgroup::{catalog, universal, GroupElement, NilSchema};
use nilcalc::rng::DetRng;
use nilcalc::scalar::{rat_int, Rational};
use num_traits::Zero;
use std::sync::Arc;

/// Word oracle for groups whose commutators are all central (class <= 2).
fn shuffle_mul(schema: &Arc<NilSchema>, x: &[i64], y: &[i64]) -> Vec<i64> {
    let m = schema.dim();
    // positions appearing in table words are central
    let central: Vec<bool> = {
        let mut c = vec![false; m];
        for word in schema.commutators.values() {
            for (p, _) in word {
                c[*p] = true;
            }
        }
        c
    };
    let mut central_acc = vec![0i64; m];
    let mut letters: Vec<(usize, i64)> = Vec::new();
    for coords in [x, y] {
        for (p, &c) in coords.iter().enumerate() {
            if central[p] {
                central_acc[p] += c;
            } else {
                let sign = if c >= 0 { 1 } else { -1 };
                for _ in 0..c.abs() {
                    letters.push((p, sign));
                }
            }
        }
    }
    // bubble the letters into position order; each adjacent swap of
    // (a, ea) past (b, eb) with a > b contributes [e_a, e_b]^{ea eb},
    // and [e_a, e_b] is the inverse of the stored [e_b, e_a] word
    loop {
        let Some(k) = letters.windows(2).position(|w| w[0].0 > w[1].0) else {
            break;
        };
        let (a, ea) = letters[k];
        let (b, eb) = letters[k + 1];
        letters.swap(k, k + 1);
        if let Some(word) = schema.commutators.get(&(b, a)) {
            for (p, q) in word {
                let q = i64::try_from(q.to_integer()).expect("integer table");
                central_acc[*p] -= q * ea * eb;
            }
        }
    }
    let mut coords = central_acc;
    for (p, e) in letters {
        coords[p] += e;
    }
    coords
}

fn int_coords(rng: &mut DetRng, m: usize, bound: i64) -> Vec<i64> {
    (0..m).map(|_| rng.int_in(-bound, bound)).collect()
}

fn to_element(schema: &Arc<NilSchema>, coords: &[i64]) -> GroupElement {
    GroupElement::new(schema.clone(), coords.iter().map(|&c| rat_int(c)).collect())
}

#[test]
fn collection_matches_word_shuffling_on_two_step_groups() {
    let schemas = [
        catalog::torus(2, 2).unwrap(),
        catalog::heisenberg().unwrap(),
        catalog::heisenberg_degrank32().unwrap(),
        catalog::free2step(3).unwrap(),
        catalog::free2step(4).unwrap(),
        catalog::app_c_multidegree().unwrap(),
        catalog::by_name("product(heisenberg,heisenberg)").unwrap(),
    ];
    let mut rng = DetRng::new(0x0AC1E);
    for schema in &schemas {
        for _ in 0..500 {
            let x = int_coords(&mut rng, schema.dim(), 3);
            let y = int_coords(&mut rng, schema.dim(), 3);
            let fast = to_element(schema, &x).mul(&to_element(schema, &y));
            let slow = shuffle_mul(schema, &x, &y);
            let slow: Vec<Rational> = slow.into_iter().map(rat_int).collect();
            assert_eq!(fast.coords, slow, "{}: {x:?} * {y:?}", schema.name);
        }
    }
}

#[test]
fn collection_matches_magnus_model_on_class_three() {
    let schema = catalog::universal_group(&[2, 0, 0], 3, 3).unwrap();
    let mut rng = DetRng::new(0x3A61);
    let mut pairs = Vec::new();
    for _ in 0..60 {
        let x: Vec<Rational> = (0..schema.dim()).map(|_| rng.rational(3, 3)).collect();
        let y: Vec<Rational> = (0..schema.dim()).map(|_| rng.rational(3, 3)).collect();
        pairs.push((x, y));
    }
    let oracle = universal::magnus_mul_oracle(&[2, 0, 0], 3, 3, &pairs);
    for ((x, y), expected) in pairs.iter().zip(oracle) {
        let fast = GroupElement::new(schema.clone(), x.clone())
            .mul(&GroupElement::new(schema.clone(), y.clone()));
        assert_eq!(fast.coords, expected, "{x:?} * {y:?}");
    }
}

#[test]
fn collection_matches_magnus_model_under_rank_cut() {
    // the (3,2) rank cut trivializes the depth-3 commutators; collection
    // in the quotient must match the projected model product
    let schema = catalog::universal_group(&[1, 1], 3, 2).unwrap();
    let mut rng = DetRng::new(0x3A62);
    let mut pairs = Vec::new();
    for _ in 0..60 {
        let x: Vec<Rational> = (0..schema.dim()).map(|_| rng.rational(4, 4)).collect();
        let y: Vec<Rational> = (0..schema.dim()).map(|_| rng.rational(4, 4)).collect();
        pairs.push((x, y));
    }
    let oracle = universal::magnus_mul_oracle(&[1, 1], 3, 2, &pairs);
    for ((x, y), expected) in pairs.iter().zip(oracle) {
        let fast = GroupElement::new(schema.clone(), x.clone())
            .mul(&GroupElement::new(schema.clone(), y.clone()));
        assert_eq!(fast.coords, expected, "{x:?} * {y:?}");
    }
}
