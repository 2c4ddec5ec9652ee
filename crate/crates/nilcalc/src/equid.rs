//! Equidistribution testing for polynomial orbits: Weyl sums, the
//! exhaustive horizontal-character obstruction search, and empirical
//! character averages against the Haar prediction.
//!
//! The obstruction criterion: an orbit fails to equidistribute exactly
//! when some non-trivial horizontal character `xi` makes `xi o g` slowly
//! varying; operationally, its maximum single-step torus increment on
//! `[N]` stays below `C/N`.  Characters are enumerated exhaustively up to
//! a height bound, in a fixed order (components cycle through
//! 0, 1, -1, 2, -2, ...), and the first witness in that order is
//! returned, so runs are reproducible regardless of worker count.

use crate::nilgroup::{GroupElement, HorizontalChar, VerticalChar};
use crate::polyseq::PolySeq;
use crate::scalar::{rat_int, Rational, TorusPoint};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EquidError {
    #[error("orbit must have a one-dimensional domain")]
    NotOneDimensional,
    #[error("{generators} generators exceed the exhaustive enumeration cap of {cap}")]
    TooManyGenerators { generators: usize, cap: usize },
    #[error("{candidates} candidate characters exceed the enumeration budget {budget}")]
    EnumerationCap { candidates: u128, budget: u128 },
}

const GENERATOR_CAP: usize = 6;
const CANDIDATE_BUDGET: u128 = 2_000_000;

/// Integer vectors of sup-norm at most `h`, ordered with components
/// cycling through 0, 1, -1, 2, -2, ... and the leftmost component
/// outermost; index 0 is the zero vector.
pub(crate) fn unrank_vector(mut k: u128, len: usize, h: i64) -> Vec<i64> {
    let base = (2 * h + 1) as u128;
    let digit = |d: u128| -> i64 {
        if d == 0 {
            0
        } else if d % 2 == 1 {
            (d as i64 + 1) / 2
        } else {
            -(d as i64 / 2)
        }
    };
    let mut out = vec![0i64; len];
    for slot in (0..len).rev() {
        out[slot] = digit(k % base);
        k /= base;
    }
    out
}

pub(crate) fn vector_count(len: usize, h: i64) -> u128 {
    ((2 * h + 1) as u128).pow(len as u32)
}

/// `|E_{n in [N]} e(theta(n))|` with exact phases and a pairwise float
/// mean.
pub fn weyl_sum(phases: impl Iterator<Item = TorusPoint>) -> f64 {
    let terms: Vec<Complex64> = phases
        .map(|t| {
            let a = 2.0 * std::f64::consts::PI * t.to_f64();
            Complex64::new(a.cos(), a.sin())
        })
        .collect();
    if terms.is_empty() {
        return 0.0;
    }
    let re: Vec<f64> = terms.iter().map(|z| z.re).collect();
    let im: Vec<f64> = terms.iter().map(|z| z.im).collect();
    let n = terms.len() as f64;
    let mean = Complex64::new(
        crate::gowers::pairwise_sum(&re) / n,
        crate::gowers::pairwise_sum(&im) / n,
    );
    mean.norm()
}

/// Weyl sum of the scalar polynomial `P(n) = c_0 + c_1 n + ...` over
/// `[N]`.
pub fn weyl_sum_poly(coeffs: &[Rational], n: usize) -> f64 {
    weyl_sum((1..=n as i64).map(|k| {
        let mut acc = Rational::zero();
        let mut pw = Rational::from_integer(1.into());
        for c in coeffs {
            acc += c * &pw;
            pw *= rat_int(k);
        }
        TorusPoint::new(acc)
    }))
}

/// Weyl sum of `xi o orbit` over `[N]`.
pub fn weyl_sum_orbit(orbit: &PolySeq, character: &HorizontalChar, n: usize) -> f64 {
    weyl_sum((1..=n as i64).map(|k| character.apply(&orbit.eval(&[k]).coords)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Verdict {
    NoObstructionFound,
    Obstruction,
}

/// Result of the obstruction search, with the search bounds recorded.
#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    /// Witness coefficients on the generator positions.
    pub witness: Option<Vec<i64>>,
    /// Maximum single-step torus increment of `xi o g` on `[N]` for the
    /// witness, as an exact rational string.
    pub smoothness: Option<String>,
    pub height: i64,
    pub constant: String,
    pub n_len: usize,
    pub candidates: u64,
}

/// Enumerates non-trivial integer character vectors up to the height
/// bound and returns the first (in the fixed order) whose composed orbit
/// has maximum single-step increment at most `C/N`.
pub fn leibman_test(
    orbit: &PolySeq,
    n_len: usize,
    height: i64,
    constant: &Rational,
) -> Result<ObstructionReport, EquidError> {
    if orbit.arity != 1 {
        return Err(EquidError::NotOneDimensional);
    }
    let gens = orbit.schema.generators.clone();
    if gens.len() > GENERATOR_CAP {
        return Err(EquidError::TooManyGenerators { generators: gens.len(), cap: GENERATOR_CAP });
    }
    let candidates = vector_count(gens.len(), height);
    if candidates > CANDIDATE_BUDGET {
        return Err(EquidError::EnumerationCap { candidates, budget: CANDIDATE_BUDGET });
    }
    // single-step increments of each generator coordinate along the orbit
    let points: Vec<GroupElement> = (1..=n_len as i64 + 1).map(|k| orbit.eval(&[k])).collect();
    let increments: Vec<Vec<Rational>> = (0..n_len)
        .map(|i| {
            gens.iter()
                .map(|&p| &points[i + 1].coords[p] - &points[i].coords[p])
                .collect()
        })
        .collect();
    let threshold = constant / rat_int(n_len as i64);

    let hit = (1..candidates as u64)
        .into_par_iter()
        .find_map_first(|k| {
            let coeffs = unrank_vector(k as u128, gens.len(), height);
            let mut worst = Rational::zero();
            for inc in &increments {
                let mut step = Rational::zero();
                for (c, d) in coeffs.iter().zip(inc) {
                    if *c != 0 {
                        step += rat_int(*c) * d;
                    }
                }
                let dist = crate::scalar::signed_frac(&step).abs();
                if dist > threshold {
                    return None;
                }
                if dist > worst {
                    worst = dist;
                }
            }
            Some((k, coeffs, worst))
        });

    Ok(match hit {
        Some((_, coeffs, worst)) => ObstructionReport {
            verdict: Verdict::Obstruction,
            witness: Some(coeffs),
            smoothness: Some(crate::scalar::format_rat(&worst)),
            height,
            constant: crate::scalar::format_rat(constant),
            n_len,
            candidates: candidates as u64 - 1,
        },
        None => ObstructionReport {
            verdict: Verdict::NoObstructionFound,
            witness: None,
            smoothness: None,
            height,
            constant: crate::scalar::format_rat(constant),
            n_len,
            candidates: candidates as u64 - 1,
        },
    })
}

/// The character with the given coefficients over the generators.
pub fn horizontal_from_coeffs(orbit: &PolySeq, coeffs: &[i64]) -> HorizontalChar {
    HorizontalChar::new(
        orbit.schema.clone(),
        coeffs.iter().map(|&c| BigInt::from(c)).collect(),
    )
}

/// Empirical character averages of an orbit.  Every non-trivial
/// horizontal or vertical character has Haar integral zero on the
/// nilmanifold, so the maximum empirical |average| over the finite
/// character family is the discrepancy proxy.
#[derive(Clone, Debug, Serialize)]
pub struct DistributionReport {
    pub n_len: usize,
    pub char_height: i64,
    pub horizontal_chars: u64,
    pub vertical_chars: u64,
    pub max_abs_average: f64,
    pub worst_character: String,
}

pub fn empirical_distribution_test(
    orbit: &PolySeq,
    n_len: usize,
    char_height: i64,
) -> Result<DistributionReport, EquidError> {
    if orbit.arity != 1 {
        return Err(EquidError::NotOneDimensional);
    }
    let schema = orbit.schema.clone();
    let gens = schema.generators.clone();
    if gens.len() > GENERATOR_CAP {
        return Err(EquidError::TooManyGenerators { generators: gens.len(), cap: GENERATOR_CAP });
    }
    let top = schema.top_index();
    let vert_positions: Vec<usize> = schema.positions_of(&top).to_vec();
    let h_count = vector_count(gens.len(), char_height);
    let v_count = vector_count(vert_positions.len(), char_height);
    if h_count + v_count > CANDIDATE_BUDGET {
        return Err(EquidError::EnumerationCap {
            candidates: h_count + v_count,
            budget: CANDIDATE_BUDGET,
        });
    }

    // orbit evaluations; vertical phases need the fundamental-domain
    // representative
    let raw: Vec<GroupElement> = (1..=n_len as i64).map(|k| orbit.eval(&[k])).collect();
    let reduced: Vec<GroupElement> = raw.iter().map(|x| x.reduce_mod_lattice().0).collect();

    let mut max_abs = 0f64;
    let mut worst = String::new();

    for k in 1..h_count {
        let coeffs = unrank_vector(k, gens.len(), char_height);
        let avg = weyl_sum(raw.iter().map(|x| {
            let mut acc = Rational::zero();
            for (c, &p) in coeffs.iter().zip(&gens) {
                if *c != 0 {
                    acc += rat_int(*c) * &x.coords[p];
                }
            }
            TorusPoint::new(acc)
        }));
        if avg > max_abs {
            max_abs = avg;
            worst = format!("horizontal {coeffs:?}");
        }
    }
    for k in 1..v_count {
        let coeffs = unrank_vector(k, vert_positions.len(), char_height);
        let eta = VerticalChar::new(
            schema.clone(),
            top.clone(),
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        );
        let avg = weyl_sum(reduced.iter().map(|x| eta.phase_of(&x.coords)));
        if avg > max_abs {
            max_abs = avg;
            worst = format!("vertical {coeffs:?}");
        }
    }

    Ok(DistributionReport {
        n_len,
        char_height,
        horizontal_chars: (h_count - 1) as u64,
        vertical_chars: (v_count - 1) as u64,
        max_abs_average: max_abs,
        worst_character: worst,
    })
}
