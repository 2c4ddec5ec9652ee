//! Polynomial sequences `g: Z^k -> G` in Taylor form.
//!
//! A sequence is stored by its Taylor coefficients over a finite downset
//! `J` of filtration indices: `g(n) = prod_{j in J} g_j^{binom(n, j)}`,
//! the product taken in the fixed graded-lexicographic completion of the
//! partial order.  Coefficients are unique for that order, so evaluation
//! and extraction are mutually inverse; derivatives and pointwise
//! products go through evaluate-and-re-extract.

pub mod cube;

use crate::nilgroup::{FiltIndex, GroupElement, IndexKind, NilSchema};
use crate::scalar::{binomial, Rational, TorusPoint};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("downset invalid: {0}")]
    BadDownset(String),
    #[error("domain arity {arity} incompatible with schema kind")]
    BadArity { arity: usize },
    #[error("coefficient at {index} leaves G_index: position {position}")]
    Support { index: FiltIndex, position: usize },
    #[error("inconsistent samples: no polynomial of this multidegree fits; first failure at {point:?}")]
    Inconsistent { point: Vec<i64> },
    #[error("missing sample at grid point {point:?}")]
    MissingSample { point: Vec<i64> },
    #[error("derivative order {order} exceeds the schema degree")]
    DegreeExceeded { order: u32 },
    #[error("operation requires a one-dimensional domain")]
    NotOneDimensional,
}

#[derive(Clone, Debug)]
pub struct PolySeq {
    pub schema: Arc<NilSchema>,
    /// Domain dimension k.
    pub arity: usize,
    /// Downset of Taylor indices, sorted by the fixed total order.
    pub downset: Vec<FiltIndex>,
    pub coeffs: BTreeMap<FiltIndex, GroupElement>,
}

/// The grid point `n = j` at which the coefficient `g_j` is read off.
fn index_point(j: &FiltIndex) -> Vec<i64> {
    match j {
        FiltIndex::Degree(d) => vec![*d as i64],
        FiltIndex::DegreeRank(d, _) => vec![*d as i64],
        FiltIndex::MultiDegree(v) => v.iter().map(|&x| x as i64).collect(),
    }
}

/// `binom(n, j)` for the index kinds that admit Taylor expansions.
fn index_binomial(n: &[i64], j: &FiltIndex) -> BigInt {
    match j {
        FiltIndex::Degree(d) => binomial(n[0], *d),
        FiltIndex::DegreeRank(d, _) => binomial(n[0], *d),
        FiltIndex::MultiDegree(v) => {
            let mut acc = BigInt::one();
            for (x, d) in n.iter().zip(v) {
                acc *= binomial(*x, *d);
            }
            acc
        }
    }
}

fn validate_downset(
    schema: &Arc<NilSchema>,
    arity: usize,
    downset: &[FiltIndex],
) -> Result<(), PolyError> {
    if downset.is_empty() {
        return Err(PolyError::BadDownset("empty downset".into()));
    }
    match schema.kind {
        IndexKind::Degree | IndexKind::DegreeRank => {
            if arity != 1 {
                return Err(PolyError::BadArity { arity });
            }
        }
        IndexKind::MultiDegree(k) => {
            if arity != k {
                return Err(PolyError::BadArity { arity });
            }
        }
    }
    for j in downset {
        if j.kind() != schema.kind {
            return Err(PolyError::BadDownset(format!("index {j} of foreign kind")));
        }
        if let FiltIndex::DegreeRank(_, r) = j {
            if *r != 0 {
                return Err(PolyError::BadDownset(
                    "degree-rank Taylor data is indexed by (d, 0)".into(),
                ));
            }
        }
    }
    for w in downset.windows(2) {
        if w[0].total_cmp(&w[1]) != std::cmp::Ordering::Less {
            return Err(PolyError::BadDownset("downset not sorted".into()));
        }
    }
    // downward closure within the Taylor index family
    for j in downset {
        let preds: Vec<FiltIndex> = match j {
            FiltIndex::DegreeRank(d, _) => {
                (0..=*d).map(|i| FiltIndex::DegreeRank(i, 0)).collect()
            }
            other => other.predecessors(),
        };
        for pred in preds {
            if !downset.contains(&pred) {
                return Err(PolyError::BadDownset(format!(
                    "{j} present but predecessor {pred} missing"
                )));
            }
        }
    }
    Ok(())
}

impl PolySeq {
    pub fn new(
        schema: Arc<NilSchema>,
        arity: usize,
        downset: Vec<FiltIndex>,
        coeffs: BTreeMap<FiltIndex, GroupElement>,
    ) -> Result<PolySeq, PolyError> {
        validate_downset(&schema, arity, &downset)?;
        for (j, g) in &coeffs {
            if !downset.contains(j) {
                return Err(PolyError::BadDownset(format!("coefficient at {j} outside J")));
            }
            let allowed = schema.positions_of(j);
            for p in g.support() {
                if !allowed.contains(&p) {
                    return Err(PolyError::Support { index: j.clone(), position: p });
                }
            }
        }
        // canonical form stores no identity coefficients
        let coeffs = coeffs.into_iter().filter(|(_, g)| !g.is_identity()).collect();
        Ok(PolySeq { schema, arity, downset, coeffs })
    }

    /// The constant sequence `n -> x`.
    pub fn constant(x: GroupElement) -> Result<PolySeq, PolyError> {
        let schema = x.schema.clone();
        let zero = FiltIndex::zero(schema.kind);
        let arity = match schema.kind {
            IndexKind::MultiDegree(k) => k,
            _ => 1,
        };
        let mut coeffs = BTreeMap::new();
        coeffs.insert(zero.clone(), x);
        PolySeq::new(schema, arity, vec![zero], coeffs)
    }

    /// The full downset of Taylor indices up to total grade `d`.
    pub fn degree_downset(schema: &Arc<NilSchema>, d: u32) -> Vec<FiltIndex> {
        let mut out: Vec<FiltIndex> = match schema.kind {
            IndexKind::Degree => (0..=d).map(FiltIndex::Degree).collect(),
            IndexKind::DegreeRank => (0..=d).map(|i| FiltIndex::DegreeRank(i, 0)).collect(),
            IndexKind::MultiDegree(k) => {
                let mut acc: Vec<Vec<u32>> = vec![vec![]];
                for _ in 0..k {
                    let mut next = Vec::new();
                    for p in &acc {
                        for x in 0..=d {
                            let mut q = p.clone();
                            q.push(x);
                            next.push(q);
                        }
                    }
                    acc = next;
                }
                acc.into_iter()
                    .filter(|v| v.iter().sum::<u32>() <= d)
                    .map(FiltIndex::MultiDegree)
                    .collect()
            }
        };
        out.sort_by(|a, b| a.total_cmp(b));
        out
    }

    /// Exact ordered product `prod_j g_j^{binom(n, j)}`.
    pub fn eval(&self, n: &[i64]) -> GroupElement {
        assert_eq!(n.len(), self.arity, "evaluation arity mismatch");
        let mut acc = GroupElement::identity(self.schema.clone());
        for j in &self.downset {
            let Some(g) = self.coeffs.get(j) else { continue };
            let e = index_binomial(n, j);
            if e.is_zero() {
                continue;
            }
            acc = acc.mul(&g.pow_int(&e));
        }
        acc
    }

    /// Recovers the unique Taylor form agreeing with the samples.  The
    /// samples must contain every grid point `n = j` for `j in J`; all
    /// remaining samples are cross-checked against the extracted form.
    pub fn extract(
        schema: Arc<NilSchema>,
        arity: usize,
        downset: Vec<FiltIndex>,
        samples: &BTreeMap<Vec<i64>, GroupElement>,
    ) -> Result<PolySeq, PolyError> {
        validate_downset(&schema, arity, &downset)?;
        let mut coeffs: BTreeMap<FiltIndex, GroupElement> = BTreeMap::new();
        for j in &downset {
            let point = index_point(j);
            let sample = samples
                .get(&point)
                .ok_or(PolyError::MissingSample { point: point.clone() })?;
            // prefix product over earlier indices at n = point
            let mut prefix = GroupElement::identity(schema.clone());
            for j2 in &downset {
                if j2 == j {
                    break;
                }
                if let Some(g) = coeffs.get(j2) {
                    let e = index_binomial(&point, j2);
                    if !e.is_zero() {
                        prefix = prefix.mul(&g.pow_int(&e));
                    }
                }
            }
            let gj = prefix.inverse().mul(sample);
            let allowed = schema.positions_of(j);
            for p in gj.support() {
                if !allowed.contains(&p) {
                    return Err(PolyError::Inconsistent { point });
                }
            }
            if !gj.is_identity() {
                coeffs.insert(j.clone(), gj);
            }
        }
        let seq = PolySeq { schema, arity, downset, coeffs };
        for (point, expected) in samples {
            if &seq.eval(point) != expected {
                return Err(PolyError::Inconsistent { point: point.clone() });
            }
        }
        Ok(seq)
    }

    /// Builds the Taylor form of an explicit map by sampling it on the
    /// grid spanned by the downset and extracting.
    pub fn from_fn(
        schema: Arc<NilSchema>,
        arity: usize,
        downset: Vec<FiltIndex>,
        f: impl Fn(&[i64]) -> GroupElement,
    ) -> Result<PolySeq, PolyError> {
        let max_per_axis: i64 = downset
            .iter()
            .map(|j| match j {
                FiltIndex::Degree(d) | FiltIndex::DegreeRank(d, _) => *d as i64,
                FiltIndex::MultiDegree(v) => v.iter().copied().max().unwrap_or(0) as i64,
            })
            .max()
            .unwrap_or(0);
        let mut samples: BTreeMap<Vec<i64>, GroupElement> = BTreeMap::new();
        let mut point = vec![0i64; arity];
        loop {
            samples.insert(point.clone(), f(&point));
            let mut axis = 0;
            loop {
                if axis == arity {
                    break;
                }
                point[axis] += 1;
                if point[axis] <= max_per_axis {
                    break;
                }
                point[axis] = 0;
                axis += 1;
            }
            if axis == arity {
                break;
            }
        }
        PolySeq::extract(schema, arity, downset, &samples)
    }

    /// The Taylor form of `n -> g(n+h) g(n)^{-1}`.
    pub fn derivative(&self, h: &[i64]) -> Result<PolySeq, PolyError> {
        assert_eq!(h.len(), self.arity);
        PolySeq::from_fn(self.schema.clone(), self.arity, self.downset.clone(), |n| {
            let np: Vec<i64> = n.iter().zip(h).map(|(a, b)| a + b).collect();
            self.eval(&np).mul(&self.eval(n).inverse())
        })
    }

    /// The Taylor form of `n -> g(n) g'(n)`.
    pub fn pointwise_product(&self, other: &PolySeq) -> Result<PolySeq, PolyError> {
        assert_eq!(self.arity, other.arity, "product arity mismatch");
        let mut downset = self.downset.clone();
        for j in &other.downset {
            if !downset.contains(j) {
                downset.push(j.clone());
            }
        }
        downset.sort_by(|a, b| a.total_cmp(b));
        PolySeq::from_fn(self.schema.clone(), self.arity, downset, |n| {
            self.eval(n).mul(&other.eval(n))
        })
    }

    pub fn inverse_seq(&self) -> Result<PolySeq, PolyError> {
        PolySeq::from_fn(self.schema.clone(), self.arity, self.downset.clone(), |n| {
            self.eval(n).inverse()
        })
    }

    /// Iterated multiplicative derivative evaluated pointwise.
    pub fn iterated_derivative_at(&self, hs: &[Vec<i64>], n: &[i64]) -> GroupElement {
        match hs.split_last() {
            None => self.eval(n),
            Some((h, rest)) => {
                let np: Vec<i64> = n.iter().zip(h).map(|(a, b)| a + b).collect();
                let upper = self.iterated_derivative_at(rest, &np);
                let lower = self.iterated_derivative_at(rest, n);
                upper.mul(&lower.inverse())
            }
        }
    }
}

/// Outcome of `verify_polynomial`.
#[derive(Clone, Debug)]
pub struct PolyReport {
    pub pass: bool,
    /// Shift tuple and offending position witnessing the first violation.
    pub witness: Option<(Vec<Vec<i64>>, usize)>,
    pub checked: usize,
}

/// Checks `partial_{h_1} ... partial_{h_m} g(n) in G_{i_1+...+i_m}` for
/// all orders `m <= max_order`, with shifts ranging over
/// `[-h_range, h_range]` (axis-aligned for multidegree schemas, where an
/// axis shift carries the corresponding unit index).  Exhaustive when
/// `k*m <= 6`, otherwise a seeded 500-tuple sample.
pub fn verify_polynomial(g: &PolySeq, max_order: u32, h_range: i64) -> PolyReport {
    let k = g.arity;
    let mut checked = 0usize;
    for m in 1..=max_order {
        for hs in shift_tuples(g, m, h_range, k) {
            checked += 1;
            let target = match g.schema.kind {
                IndexKind::Degree => FiltIndex::Degree(m),
                IndexKind::DegreeRank => FiltIndex::DegreeRank(m, 0),
                IndexKind::MultiDegree(kk) => {
                    let mut v = vec![0u32; kk];
                    for h in &hs {
                        for (axis, &c) in h.iter().enumerate() {
                            if c != 0 {
                                v[axis] += 1;
                            }
                        }
                    }
                    FiltIndex::MultiDegree(v)
                }
            };
            let allowed = g.schema.positions_of(&target);
            for n in sample_points(k) {
                let value = g.iterated_derivative_at(&hs, &n);
                for p in value.support() {
                    if !allowed.contains(&p) {
                        return PolyReport { pass: false, witness: Some((hs, p)), checked };
                    }
                }
            }
        }
    }
    PolyReport { pass: true, witness: None, checked }
}

fn sample_points(k: usize) -> Vec<Vec<i64>> {
    vec![vec![0; k], vec![1; k], vec![-2; k]]
}

fn shift_tuples(g: &PolySeq, m: u32, h_range: i64, k: usize) -> Vec<Vec<Vec<i64>>> {
    let singles: Vec<Vec<i64>> = match g.schema.kind {
        IndexKind::MultiDegree(kk) => {
            let mut out = Vec::new();
            for axis in 0..kk {
                for c in -h_range..=h_range {
                    if c != 0 {
                        let mut h = vec![0i64; kk];
                        h[axis] = c;
                        out.push(h);
                    }
                }
            }
            out
        }
        _ => (-h_range..=h_range).map(|c| vec![c]).collect(),
    };
    let exhaustive = (k as u32 * m) <= 6;
    if exhaustive {
        let mut tuples: Vec<Vec<Vec<i64>>> = vec![vec![]];
        for _ in 0..m {
            let mut next = Vec::new();
            for t in &tuples {
                for s in &singles {
                    let mut u = t.clone();
                    u.push(s.clone());
                    next.push(u);
                }
            }
            tuples = next;
        }
        tuples
    } else {
        let mut rng = crate::rng::DetRng::new(0x5EED);
        (0..500)
            .map(|_| {
                (0..m)
                    .map(|_| singles[rng.below(singles.len() as u64) as usize].clone())
                    .collect()
            })
            .collect()
    }
}

/// The `i`-th horizontal Taylor coefficient of a one-dimensional orbit:
/// the i-fold derivative at 0, projected onto the coordinates of
/// `G_(i,1)` modulo `G_(i,2)` and modulo the lattice.
pub fn horizontal_taylor(g: &PolySeq, i: u32) -> Result<Vec<TorusPoint>, PolyError> {
    if g.arity != 1 {
        return Err(PolyError::NotOneDimensional);
    }
    let max_grade = g.schema.weights.iter().map(|w| w.grade()).max().unwrap_or(0);
    if i > max_grade {
        return Err(PolyError::DegreeExceeded { order: i });
    }
    let positions = horizontal_positions(&g.schema, i);
    let value = if i == 0 {
        g.eval(&[0])
    } else {
        let hs: Vec<Vec<i64>> = (0..i).map(|_| vec![1]).collect();
        g.iterated_derivative_at(&hs, &[0])
    };
    Ok(positions
        .iter()
        .map(|&p| TorusPoint::new(value.coords[p].clone()))
        .collect())
}

/// Coordinates of the `i`-th horizontal space `G_(i,1)/G_(i,2)`: for a
/// degree-rank schema straight from the filtration, otherwise from the
/// degree-rank filtration induced by weight and depth.  Either way these
/// are the weight-i generator positions.
pub fn horizontal_positions(schema: &Arc<NilSchema>, i: u32) -> Vec<usize> {
    if schema.kind == IndexKind::DegreeRank {
        let upper = schema.positions_of(&FiltIndex::DegreeRank(i, 1).normalized());
        let lower = schema.positions_of(&FiltIndex::DegreeRank(i, 2).normalized());
        upper.iter().copied().filter(|p| !lower.contains(p)).collect()
    } else {
        (0..schema.dim())
            .filter(|&p| schema.weights[p].grade() == i && schema.depths[p] == 1)
            .collect()
    }
}

// ---------------------------------------------------------------------
// serialization: schema name + (index, coordinates) pairs

#[derive(serde::Serialize, serde::Deserialize)]
pub struct PolySeqFile {
    pub schema: String,
    pub arity: usize,
    pub downset: Vec<FiltIndex>,
    pub coeffs: Vec<(FiltIndex, Vec<String>)>,
}

impl PolySeqFile {
    pub fn from_seq(g: &PolySeq) -> PolySeqFile {
        PolySeqFile {
            schema: g.schema.name.clone(),
            arity: g.arity,
            downset: g.downset.clone(),
            coeffs: g
                .coeffs
                .iter()
                .map(|(j, x)| (j.clone(), x.coords.iter().map(crate::scalar::format_rat).collect()))
                .collect(),
        }
    }

    pub fn into_seq(self, schema: Arc<NilSchema>) -> Result<PolySeq, PolyError> {
        let mut coeffs = BTreeMap::new();
        for (j, coords) in self.coeffs {
            let coords: Result<Vec<Rational>, _> =
                coords.iter().map(|s| crate::scalar::parse_rat(s)).collect();
            let coords = coords.map_err(PolyError::BadDownset)?;
            coeffs.insert(j, GroupElement::new(schema.clone(), coords));
        }
        PolySeq::new(schema, self.arity, self.downset, coeffs)
    }
}

#[cfg(test)]
mod tests;
