//! Exact rational scalars, torus points, and unit-phase vectors.
//!
//! Every frequency in the toolkit is an exact rational; the torus point
//! type canonicalizes modulo 1 into the fundamental domain
//! `I0 = (-1/2, 1/2]`, and phase vectors keep phases exact while carrying
//! optional double-precision weights from smoothing bumps.  Floats enter
//! only at the final rendering step.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

/// Arbitrary-precision rational, always stored in lowest terms with
/// positive denominator (guaranteed by `num_rational::Ratio`).
pub type Rational = num_rational::BigRational;

pub fn rat_i64(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Renders as `p/q`, the wire format used by every file and report.
pub fn format_rat(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_rat(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|e| format!("bad numerator {p:?}: {e}"))?;
            let q = BigInt::from_str(q.trim()).map_err(|e| format!("bad denominator {q:?}: {e}"))?;
            if q.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p = BigInt::from_str(s).map_err(|e| format!("bad rational {s:?}: {e}"))?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Serde adapter: rationals as `"p/q"` strings.
pub mod rat_serde {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        format_rat(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

pub mod rat_vec_serde {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(format_rat).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let ss = Vec::<String>::deserialize(d)?;
        ss.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// The signed fractional part: the unique `y` in `(-1/2, 1/2]` with
/// `x - y` an integer.
pub fn signed_frac(x: &Rational) -> Rational {
    // y = x - ceil(x - 1/2); the right endpoint 1/2 stays in place.
    let k = (x - rat_i64(1, 2)).ceil();
    x - k
}

/// Distance on the torus: `|signed_frac(x - y)|`, always in `[0, 1/2]`.
pub fn torus_dist_raw(x: &Rational, y: &Rational) -> Rational {
    signed_frac(&(x - y)).abs()
}

/// A point of the torus R/Z, stored as its canonical representative in
/// the fundamental domain `I0 = (-1/2, 1/2]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorusPoint(Rational);

impl TorusPoint {
    pub fn new(x: Rational) -> Self {
        TorusPoint(signed_frac(&x))
    }

    pub fn zero() -> Self {
        TorusPoint(Rational::zero())
    }

    /// The canonical representative in `I0`.
    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint::new(&self.0 + &other.0)
    }

    pub fn neg(&self) -> TorusPoint {
        TorusPoint::new(-&self.0)
    }

    pub fn scale(&self, k: &Rational) -> TorusPoint {
        TorusPoint::new(&self.0 * k)
    }

    pub fn scale_int(&self, k: i64) -> TorusPoint {
        self.scale(&rat_int(k))
    }

    pub fn dist(&self, other: &TorusPoint) -> Rational {
        torus_dist_raw(&self.0, &other.0)
    }

    pub fn dist_to_zero(&self) -> Rational {
        self.0.abs()
    }

    /// Float rendering of the representative.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Debug for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusPoint({})", format_rat(&self.0))
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rat(&self.0))
    }
}

/// Weight of a phase-vector entry.  `Exact1` marks entries of modulus
/// exactly one; smoothing bumps contribute `Approx` weights; entries of
/// charts that do not contain the point are `Zero`.
#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    Exact1,
    Zero,
    Approx(f64),
}

impl Weight {
    fn mul(&self, other: &Weight) -> Weight {
        match (self, other) {
            (Weight::Zero, _) | (_, Weight::Zero) => Weight::Zero,
            (Weight::Exact1, w) | (w, Weight::Exact1) => w.clone(),
            (Weight::Approx(a), Weight::Approx(b)) => Weight::Approx(a * b),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Weight::Exact1 => 1.0,
            Weight::Zero => 0.0,
            Weight::Approx(w) => *w,
        }
    }
}

/// One complex entry `weight * e(phase)` with the phase kept exact.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseEntry {
    pub weight: Weight,
    pub phase: TorusPoint,
}

impl PhaseEntry {
    pub fn unimodular(phase: TorusPoint) -> Self {
        PhaseEntry { weight: Weight::Exact1, phase }
    }

    pub fn zero() -> Self {
        PhaseEntry { weight: Weight::Zero, phase: TorusPoint::zero() }
    }

    pub fn weighted(weight: f64, phase: TorusPoint) -> Self {
        if weight == 0.0 {
            PhaseEntry::zero()
        } else {
            PhaseEntry { weight: Weight::Approx(weight), phase }
        }
    }

    pub fn mul(&self, other: &PhaseEntry) -> PhaseEntry {
        PhaseEntry {
            weight: self.weight.mul(&other.weight),
            phase: self.phase.add(&other.phase),
        }
    }

    pub fn conj(&self) -> PhaseEntry {
        PhaseEntry { weight: self.weight.clone(), phase: self.phase.neg() }
    }

    pub fn to_complex(&self) -> Complex64 {
        let w = self.weight.to_f64();
        if w == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let t = 2.0 * std::f64::consts::PI * self.phase.to_f64();
        Complex64::new(w * t.cos(), w * t.sin())
    }
}

/// A vector in C^D whose entries are exact phases with optional weights.
/// Supports the tensor product and complex conjugation.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseVector {
    pub entries: Vec<PhaseEntry>,
}

impl PhaseVector {
    pub fn scalar_phase(phase: TorusPoint) -> Self {
        PhaseVector { entries: vec![PhaseEntry::unimodular(phase)] }
    }

    pub fn one() -> Self {
        PhaseVector::scalar_phase(TorusPoint::zero())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// All entries of modulus exactly one.
    pub fn is_unimodular(&self) -> bool {
        self.entries.iter().all(|e| e.weight == Weight::Exact1)
    }

    /// Row-major tensor product: entry `(i, j)` is `self[i] * other[j]`.
    pub fn tensor(&self, other: &PhaseVector) -> PhaseVector {
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                entries.push(a.mul(b));
            }
        }
        PhaseVector { entries }
    }

    pub fn conj(&self) -> PhaseVector {
        PhaseVector { entries: self.entries.iter().map(PhaseEntry::conj).collect() }
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.entries.iter().map(PhaseEntry::to_complex).collect()
    }

    /// Euclidean norm of the float rendering.
    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| {
                let w = e.weight.to_f64();
                w * w
            })
            .sum::<f64>()
            .sqrt()
    }
}

/// The fundamental character `e(x) = exp(2 pi i x)` as a 1-dimensional
/// unimodular vector; the exact torus representation is retained.
pub fn phase(x: &TorusPoint) -> PhaseVector {
    PhaseVector::scalar_phase(x.clone())
}

/// "Irrational at scale N" for degree-d experiments: the denominator
/// exceeds `N^{d+1}` and the torus distance to every rational of
/// denominator at most `q0` exceeds `q0/N`.
pub fn is_generic_at_scale(x: &Rational, n: u64, d: u32, q0: u64) -> bool {
    let mut scale = BigInt::from(1);
    for _ in 0..=d {
        scale *= BigInt::from(n);
    }
    if x.denom() <= &scale {
        return false;
    }
    let threshold = Rational::new(BigInt::from(q0), BigInt::from(n));
    for q in 1..=q0 {
        // distance to the nearest p/q is |signed_frac(q x)| / q
        let dist = signed_frac(&(x * Rational::from_integer(BigInt::from(q))))
            .abs()
            / Rational::from_integer(BigInt::from(q));
        if dist <= threshold {
            return false;
        }
    }
    true
}

/// Exact binomial coefficient for integer `n` (possibly negative) and
/// natural `k`.
pub fn binomial(n: i64, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc *= BigInt::from(n - i);
    }
    for i in 1..=k as i64 {
        acc /= BigInt::from(i);
    }
    acc
}
