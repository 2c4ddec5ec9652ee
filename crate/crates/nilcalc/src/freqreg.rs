//! Constructive bounded-height frequency regularization: detect integer
//! relations among torus frequencies modulo a tolerance, and run the
//! minimal-rank descent splitting a list into independent, rational, and
//! small frequencies with an exact integer representation certificate.
//!
//! One descent round: a relation `a_1 x_1 + ... + a_l x_l = O(eps) mod 1`
//! is found by exhaustive search up to the height bound; the others are
//! divided by the pivot coefficient (the branch fixed by dividing the
//! canonical representative as a rational), and the pivot frequency
//! becomes an integer combination of the divided ones plus a rational
//! remainder of denominator at most the pivot and an eps-small remainder.
//! The independent count drops by one per round, so the descent stops,
//! and the final list carries a certified no-relation guarantee at the
//! same `(eps, H)`.

use crate::equid::{unrank_vector, vector_count};
use crate::scalar::{format_rat, rat_int, Rational, TorusPoint};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FreqError {
    #[error("list of {0} frequencies is too long for exhaustive search (cap 8)")]
    TooLong(usize),
    #[error("{candidates} relation candidates exceed the search budget {budget}")]
    SearchCap { candidates: u128, budget: u128 },
    #[error("rational remainder denominator {denominator} exceeds the cap {cap}")]
    DenominatorCap { denominator: String, cap: u64 },
}

const LIST_CAP: usize = 8;
const SEARCH_BUDGET: u128 = 20_000_000;

/// First nonzero integer vector `a` (in the fixed enumeration order) with
/// `|a|_inf <= height` and `torus_dist(a . xs, 0) <= eps`, or `None`.
pub fn find_relation(
    xs: &[TorusPoint],
    eps: &Rational,
    height: i64,
) -> Result<Option<Vec<i64>>, FreqError> {
    if xs.len() > LIST_CAP {
        return Err(FreqError::TooLong(xs.len()));
    }
    if xs.is_empty() {
        return Ok(None);
    }
    let candidates = vector_count(xs.len(), height);
    if candidates > SEARCH_BUDGET {
        return Err(FreqError::SearchCap { candidates, budget: SEARCH_BUDGET });
    }
    let values: Vec<Rational> = xs.iter().map(|x| x.value().clone()).collect();
    let hit = (1..candidates as u64).into_par_iter().find_map_first(|k| {
        let coeffs = unrank_vector(k as u128, values.len(), height);
        let mut acc = Rational::zero();
        for (c, v) in coeffs.iter().zip(&values) {
            if *c != 0 {
                acc += rat_int(*c) * v;
            }
        }
        if crate::scalar::signed_frac(&acc).abs() <= *eps {
            Some(coeffs)
        } else {
            None
        }
    });
    Ok(hit)
}

/// Integer row expressing one input over the three output lists.
#[derive(Clone, Debug, Serialize)]
pub struct RepresentationRow {
    #[serde(serialize_with = "ints_as_strings")]
    pub independent: Vec<BigInt>,
    #[serde(serialize_with = "ints_as_strings")]
    pub rational: Vec<BigInt>,
    #[serde(serialize_with = "ints_as_strings")]
    pub small: Vec<BigInt>,
}

fn ints_as_strings<S: serde::Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::Serialize;
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct FrequencyDecomposition {
    pub independent: Vec<TorusPointWire>,
    pub rational: Vec<TorusPointWire>,
    pub small: Vec<TorusPointWire>,
    pub representation: Vec<RepresentationRow>,
    /// Certificate scope.
    pub eps: String,
    pub height: i64,
    pub q_cap: u64,
    pub rounds: usize,
}

/// Torus point on the wire: canonical representative as `p/q`.
#[derive(Clone, Debug, Serialize)]
pub struct TorusPointWire(pub String);

impl FrequencyDecomposition {
    pub fn independent_points(&self) -> Vec<TorusPoint> {
        self.independent
            .iter()
            .map(|w| TorusPoint::new(crate::scalar::parse_rat(&w.0).expect("wire rational")))
            .collect()
    }

    fn outputs(&self) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
        let parse = |ws: &[TorusPointWire]| -> Vec<Rational> {
            ws.iter().map(|w| crate::scalar::parse_rat(&w.0).expect("wire rational")).collect()
        };
        (parse(&self.independent), parse(&self.rational), parse(&self.small))
    }

    /// The exact torus identity: every input equals its integer
    /// combination of the outputs.
    pub fn verify_representation(&self, inputs: &[TorusPoint]) -> bool {
        let (ind, rat, small) = self.outputs();
        inputs.iter().zip(&self.representation).all(|(x, row)| {
            let mut acc = Rational::zero();
            for (c, v) in row.independent.iter().zip(&ind) {
                acc += Rational::from_integer(c.clone()) * v;
            }
            for (c, v) in row.rational.iter().zip(&rat) {
                acc += Rational::from_integer(c.clone()) * v;
            }
            for (c, v) in row.small.iter().zip(&small) {
                acc += Rational::from_integer(c.clone()) * v;
            }
            TorusPoint::new(acc) == *x
        })
    }
}

/// The bounded-height descent of the regularity lemma.
pub fn regularize(
    xs: &[TorusPoint],
    eps: &Rational,
    height: i64,
    q_cap: u64,
) -> Result<FrequencyDecomposition, FreqError> {
    if xs.len() > LIST_CAP {
        return Err(FreqError::TooLong(xs.len()));
    }
    // classify inputs that are already rational-of-small-denominator or
    // eps-small via the descent itself: start with everything as an
    // independent candidate
    let mut independents: Vec<Rational> = xs.iter().map(|x| x.value().clone()).collect();
    let mut rationals: Vec<Rational> = Vec::new();
    let mut smalls: Vec<Rational> = Vec::new();
    // representation rows of the inputs over (independents, rationals, smalls)
    let mut rows: Vec<(Vec<BigInt>, Vec<BigInt>, Vec<BigInt>)> = (0..xs.len())
        .map(|i| {
            let mut r = vec![BigInt::zero(); xs.len()];
            r[i] = BigInt::from(1);
            (r, Vec::new(), Vec::new())
        })
        .collect();

    let mut rounds = 0usize;
    loop {
        let points: Vec<TorusPoint> =
            independents.iter().map(|v| TorusPoint::new(v.clone())).collect();
        let Some(relation) = find_relation(&points, eps, height)? else {
            break;
        };
        rounds += 1;
        let prev_len = independents.len();
        let pivot = relation.iter().position(|&c| c != 0).expect("nonzero relation");
        let a_p = relation[pivot];

        // exact split: sum a_i v_i = K + r with K integer, r in I0,
        // |r| <= eps
        let mut total = Rational::zero();
        for (c, v) in relation.iter().zip(&independents) {
            if *c != 0 {
                total += rat_int(*c) * v;
            }
        }
        let r = crate::scalar::signed_frac(&total);
        let k = &total - &r;
        debug_assert!(k.is_integer());

        // divided frequencies (the branch: canonical representative / a_p)
        let divided: Vec<Rational> = independents
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pivot)
            .map(|(_, v)| v / rat_int(a_p))
            .collect();
        let q_val = crate::scalar::signed_frac(&(&k / rat_int(a_p)));
        let s_val = &r / rat_int(a_p);

        let q_idx = if q_val.is_zero() {
            None
        } else {
            if *q_val.denom() > BigInt::from(q_cap) {
                return Err(FreqError::DenominatorCap {
                    denominator: q_val.denom().to_string(),
                    cap: q_cap,
                });
            }
            rationals.push(q_val);
            Some(rationals.len() - 1)
        };
        let s_idx = if s_val.is_zero() {
            None
        } else {
            smalls.push(s_val);
            Some(smalls.len() - 1)
        };

        // substitute into every row:
        //   x_j     = a_p * xt_j                      (j != pivot)
        //   x_pivot = -sum_{j != pivot} a_j xt_j + q + s
        for (ind_row, rat_row, small_row) in rows.iter_mut() {
            let old = std::mem::take(ind_row);
            let c_p = old[pivot].clone();
            let mut new_row: Vec<BigInt> = Vec::with_capacity(divided.len());
            for (j, c_j) in old.iter().enumerate() {
                if j == pivot {
                    continue;
                }
                let a_j = relation[j];
                new_row.push(c_j * BigInt::from(a_p) - &c_p * BigInt::from(a_j));
            }
            *ind_row = new_row;
            rat_row.resize(rationals.len(), BigInt::zero());
            small_row.resize(smalls.len(), BigInt::zero());
            if !c_p.is_zero() {
                if let Some(qi) = q_idx {
                    rat_row[qi] += &c_p;
                }
                if let Some(si) = s_idx {
                    small_row[si] += &c_p;
                }
            }
        }
        independents = divided;
        assert!(independents.len() < prev_len, "descent must shrink");
    }

    for (_, rat_row, small_row) in rows.iter_mut() {
        rat_row.resize(rationals.len(), BigInt::zero());
        small_row.resize(smalls.len(), BigInt::zero());
    }
    let wire = |vs: &[Rational]| -> Vec<TorusPointWire> {
        vs.iter()
            .map(|v| TorusPointWire(format_rat(TorusPoint::new(v.clone()).value())))
            .collect()
    };
    let decomposition = FrequencyDecomposition {
        independent: wire(&independents),
        rational: wire(&rationals),
        small: wire(&smalls),
        representation: rows
            .into_iter()
            .map(|(independent, rational, small)| RepresentationRow {
                independent,
                rational,
                small,
            })
            .collect(),
        eps: format_rat(eps),
        height,
        q_cap,
        rounds,
    };
    debug_assert!(decomposition.verify_representation(xs));
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_i64;

    fn pts(vals: &[Rational]) -> Vec<TorusPoint> {
        vals.iter().map(|v| TorusPoint::new(v.clone())).collect()
    }

    #[test]
    fn relation_examples() {
        // (1/3, 1/6) at eps = 0, H = 3: first relation (1, -2)
        let xs = pts(&[rat_i64(1, 3), rat_i64(1, 6)]);
        let rel = find_relation(&xs, &Rational::zero(), 3).unwrap();
        assert_eq!(rel, Some(vec![1, -2]));

        // forced relation (xi, 2 xi + delta) with delta small
        let xi = rat_i64(1_000_003, 9_000_091);
        let delta = rat_i64(1, 100_000);
        let xs = pts(&[xi.clone(), rat_i64(2, 1) * &xi + &delta]);
        let rel = find_relation(&xs, &rat_i64(1, 10_000), 3).unwrap();
        assert_eq!(rel, Some(vec![2, -1]));

        // generic pair: no relation at small eps and height 10
        let xs = pts(&[rat_i64(1_632_011, 2_097_169), rat_i64(6_699_076, 8_388_617)]);
        let rel = find_relation(&xs, &rat_i64(1, 10_000), 10).unwrap();
        assert_eq!(rel, None);

        // cap enforcement
        let many = pts(&vec![rat_i64(1, 3); 9]);
        assert!(matches!(
            find_relation(&many, &Rational::zero(), 2),
            Err(FreqError::TooLong(9))
        ));
    }

    #[test]
    fn regularize_single_small_frequency() {
        let delta = rat_i64(1, 50_000);
        let eps = rat_i64(1, 10_000);
        let d = regularize(&pts(&[delta.clone()]), &eps, 10, 64).unwrap();
        assert!(d.independent.is_empty());
        assert_eq!(d.small.len(), 1);
        assert!(d.verify_representation(&pts(&[delta])));
    }

    #[test]
    fn regularize_doubled_frequency() {
        let xi = rat_i64(1_000_003, 9_000_091);
        let inputs = pts(&[xi.clone(), rat_i64(2, 1) * &xi]);
        let d = regularize(&inputs, &Rational::zero(), 10, 64).unwrap();
        assert_eq!(d.independent.len(), 1);
        assert!(d.rational.is_empty() && d.small.is_empty());
        assert!(d.verify_representation(&inputs));
        // rows express x1 = xt, x2 = 2 xt up to the division branch
        let ind0 = &d.representation[0].independent;
        let ind1 = &d.representation[1].independent;
        assert_eq!(ind1[0].clone(), ind0[0].clone() * 2);
    }

    #[test]
    fn regularize_splits_off_the_half() {
        // (1/2, xi, xi + 1/2): one rational output 1/2-like, one
        // independent survivor
        let xi = rat_i64(2_000_003, 7_000_031);
        let inputs = pts(&[rat_i64(1, 2), xi.clone(), &xi + rat_i64(1, 2)]);
        let d = regularize(&inputs, &Rational::zero(), 10, 64).unwrap();
        assert_eq!(d.independent.len(), 1);
        assert!(!d.rational.is_empty());
        assert!(d.verify_representation(&inputs));
    }

    #[test]
    fn certified_independence_and_idempotence() {
        let eps = rat_i64(1, 10_000);
        let inputs = pts(&[
            rat_i64(1, 3),
            rat_i64(1_048_583, 2_097_169),
            rat_i64(3_145_739, 8_388_617),
            rat_i64(1_048_583, 2_097_169) + rat_i64(1, 3),
        ]);
        let d = regularize(&inputs, &eps, 6, 64).unwrap();
        assert!(d.verify_representation(&inputs));
        // certified: no relation on the final independents
        let ind = d.independent_points();
        assert_eq!(find_relation(&ind, &eps, 6).unwrap(), None);
        // idempotence: regularizing the independent output changes nothing
        let d2 = regularize(&ind, &eps, 6, 64).unwrap();
        assert_eq!(d2.rounds, 0);
        assert_eq!(d2.independent.len(), ind.len());
        assert!(d2.rational.is_empty() && d2.small.is_empty());
    }

    #[test]
    fn descent_is_monotone_and_exact_on_random_suites() {
        let mut rng = crate::rng::DetRng::new(0xF4E9);
        let eps = rat_i64(1, 1000);
        for _ in 0..30 {
            let l = 2 + rng.below(3) as usize;
            let mut inputs = Vec::new();
            for _ in 0..l {
                // mix of structured and generic frequencies
                match rng.below(3) {
                    0 => inputs.push(TorusPoint::new(rng.rational(6, 8))),
                    1 => inputs.push(TorusPoint::new(rng.fraction_with_denominator(1_048_573))),
                    _ => {
                        let base = rng.fraction_with_denominator(2_097_143);
                        inputs.push(TorusPoint::new(base * rat_int(rng.int_in(1, 3))));
                    }
                }
            }
            let d = regularize(&inputs, &eps, 6, 64).unwrap();
            assert!(d.verify_representation(&inputs));
            assert!(d.independent.len() <= inputs.len());
            assert_eq!(
                find_relation(&d.independent_points(), &eps, 6).unwrap(),
                None
            );
        }
    }
}
