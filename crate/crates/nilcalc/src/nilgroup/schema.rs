//! Schemas of explicitly-coordinatized filtered nilpotent Lie groups.
//!
//! A schema fixes an ordered Mal'cev basis of the second kind: every
//! group element is `e_1^{t_1} ... e_m^{t_m}` with rational coordinates,
//! and the commutator table expands `[e_i, e_j]` (i < j) as a normal-form
//! word over basis elements strictly after `j`, which makes collection
//! terminate.  The lattice is the integer-coordinate subgroup.

use super::collect;
use super::index::{FiltIndex, IndexKind};
use crate::poly::BiPoly;
use crate::scalar::{rat_serde, Rational, TorusPoint};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("schema {name}: {msg}")]
    Invalid { name: String, msg: String },
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("schema file: {0}")]
    Io(String),
}

/// Word over basis positions with rational exponents, in normal order.
pub type Word = Vec<(usize, Rational)>;

#[derive(Clone, Debug, PartialEq)]
pub struct NilSchema {
    pub name: String,
    pub kind: IndexKind,
    /// Nilpotency class, at most 4.
    pub class: u32,
    pub basis: Vec<String>,
    /// `[e_i, e_j]` for i < j as a word over positions > j.  Absent pairs
    /// commute.
    pub commutators: BTreeMap<(usize, usize), Word>,
    /// Index -> sorted basis positions spanning `G_i`; indices absent
    /// from the downset have trivial `G_i`.
    pub filtration: BTreeMap<FiltIndex, Vec<usize>>,
    /// Depth-1 (non-commutator) basis positions, the horizontal generators.
    pub generators: Vec<usize>,
    /// Native degree of each basis position.
    pub weights: Vec<FiltIndex>,
    /// Iterated-commutator depth of each basis position (1 = generator).
    pub depths: Vec<u32>,
    /// Normal-form swap expansions, computed once at construction:
    /// `e_j^t e_i^s = e_i^s e_j^t prod_p e_p^{Q_p(s,t)}`.
    pub(crate) swaps: BTreeMap<(usize, usize), Vec<(usize, BiPoly)>>,
}

impl NilSchema {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Positions spanning `G_i`; empty when the index lies outside the
    /// degree downset.
    pub fn positions_of(&self, index: &FiltIndex) -> &[usize] {
        static EMPTY: &[usize] = &[];
        self.filtration
            .get(&index.normalized())
            .map(|v| v.as_slice())
            .unwrap_or(EMPTY)
    }

    pub fn downset(&self) -> Vec<FiltIndex> {
        self.filtration.keys().cloned().collect()
    }

    /// The maximal filtration index carrying a nontrivial subgroup.
    pub fn top_index(&self) -> FiltIndex {
        self.filtration
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(k, _)| k.clone())
            .max_by(|a, b| a.total_cmp(b))
            .expect("schema has an empty filtration")
    }

    /// Builds the runtime schema: validates the structural invariants and
    /// precomputes the swap expansions that drive collection.
    pub fn build(
        name: impl Into<String>,
        kind: IndexKind,
        class: u32,
        basis: Vec<String>,
        commutators: BTreeMap<(usize, usize), Word>,
        filtration: BTreeMap<FiltIndex, Vec<usize>>,
        generators: Vec<usize>,
        weights: Vec<FiltIndex>,
        depths: Vec<u32>,
    ) -> Result<Arc<NilSchema>, SchemaError> {
        let name = name.into();
        let m = basis.len();
        let err = |msg: String| SchemaError::Invalid { name: name.clone(), msg };
        if !(1..=4).contains(&class) {
            return Err(err(format!("nilpotency class {class} outside 1..=4")));
        }
        if weights.len() != m || depths.len() != m {
            return Err(err("weights/depths length mismatch".into()));
        }
        let mut commutators = commutators;
        for ((i, j), word) in commutators.iter_mut() {
            if !(i < j && *j < m) {
                return Err(err(format!("commutator key ({i},{j}) out of range")));
            }
            word.retain(|(_, e)| !e.is_zero());
            for (p, _) in word.iter() {
                if *p <= *j {
                    return Err(err(format!(
                        "[e_{i}, e_{j}] references position {p}, not strictly after {j}"
                    )));
                }
            }
            if !word.windows(2).all(|w| w[0].0 < w[1].0) {
                return Err(err(format!("[e_{i}, e_{j}] word not in normal order")));
            }
        }
        for (idx, positions) in &filtration {
            if idx.kind() != kind {
                return Err(err(format!("filtration index {idx} of foreign kind")));
            }
            if !positions.windows(2).all(|w| w[0] < w[1]) {
                return Err(err(format!("positions of G_{idx} not sorted")));
            }
            if positions.iter().any(|p| *p >= m) {
                return Err(err(format!("positions of G_{idx} out of range")));
            }
        }
        // the degree set is a downset
        for idx in filtration.keys() {
            for pred in idx.predecessors() {
                if !filtration.contains_key(&pred.normalized()) {
                    return Err(err(format!(
                        "degree set not a downset: {idx} present, predecessor {pred} absent"
                    )));
                }
            }
        }
        let swaps = collect::compute_swaps(m, &commutators)
            .map_err(|msg| SchemaError::Invalid { name: name.clone(), msg })?;
        Ok(Arc::new(NilSchema {
            name,
            kind,
            class,
            basis,
            commutators,
            filtration,
            generators,
            weights,
            depths,
            swaps,
        }))
    }

    pub fn same_schema(&self, other: &NilSchema) -> bool {
        std::ptr::eq(self, other)
            || (self.name == other.name
                && self.basis == other.basis
                && self.commutators == other.commutators
                && self.filtration == other.filtration)
    }
}

/// A homomorphism `G -> T` vanishing on the lattice and on commutators:
/// integer coefficients over the generator positions.
#[derive(Clone, Debug, PartialEq)]
pub struct HorizontalChar {
    pub schema: Arc<NilSchema>,
    /// Coefficient per entry of `schema.generators`.
    pub coeffs: Vec<BigInt>,
}

impl HorizontalChar {
    pub fn new(schema: Arc<NilSchema>, coeffs: Vec<BigInt>) -> Self {
        assert_eq!(coeffs.len(), schema.generators.len());
        HorizontalChar { schema, coeffs }
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value `xi(x) mod 1`.
    pub fn apply(&self, coords: &[Rational]) -> TorusPoint {
        let mut acc = Rational::zero();
        for (c, &p) in self.coeffs.iter().zip(&self.schema.generators) {
            acc += Rational::from_integer(c.clone()) * &coords[p];
        }
        TorusPoint::new(acc)
    }
}

/// A vertical character on `G_d`: integer coefficients over the positions
/// spanning `G_d`, mapping the lattice part to the integers.
#[derive(Clone, Debug, PartialEq)]
pub struct VerticalChar {
    pub schema: Arc<NilSchema>,
    pub index: FiltIndex,
    /// Coefficient per entry of `schema.positions_of(index)`.
    pub coeffs: Vec<BigInt>,
}

impl VerticalChar {
    pub fn new(schema: Arc<NilSchema>, index: FiltIndex, coeffs: Vec<BigInt>) -> Self {
        assert_eq!(coeffs.len(), schema.positions_of(&index).len());
        VerticalChar { schema, index, coeffs }
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `eta(g_d) mod 1` read off the `G_d` coordinates of `coords`.
    pub fn phase_of(&self, coords: &[Rational]) -> TorusPoint {
        let mut acc = Rational::zero();
        for (c, &p) in self.coeffs.iter().zip(self.schema.positions_of(&self.index)) {
            acc += Rational::from_integer(c.clone()) * &coords[p];
        }
        TorusPoint::new(acc)
    }
}

/// Outcome of `verify_schema`: pass, or the first violated axiom with a
/// witness.
#[derive(Clone, Debug, Serialize)]
pub struct SchemaReport {
    pub schema: String,
    pub pass: bool,
    pub failure: Option<String>,
}

/// Checks, exactly: associativity on a deterministic sample of 200
/// rational triples, the inverse law, consistency of the commutator table
/// with the collected commutator, filtration nesting, and the basis-level
/// inclusion `[G_i, G_j] <= G_{i+j}`.
pub fn verify_schema(schema: &Arc<NilSchema>) -> SchemaReport {
    let fail = |msg: String| SchemaReport {
        schema: schema.name.clone(),
        pass: false,
        failure: Some(msg),
    };
    let mut rng = crate::rng::DetRng::new(0xA55A);
    let m = schema.dim();

    // associativity and inverse law on sampled rational elements
    for trial in 0..200 {
        let sample = |rng: &mut crate::rng::DetRng| {
            let coords: Vec<Rational> = (0..m).map(|_| rng.rational(3, 3)).collect();
            collect::GroupElement::new(schema.clone(), coords)
        };
        let (x, y, z) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
        let lhs = x.mul(&y).mul(&z);
        let rhs = x.mul(&y.mul(&z));
        if lhs != rhs {
            return fail(format!(
                "associativity violated on trial {trial}: ({:?})*({:?})*({:?})",
                x.coords, y.coords, z.coords
            ));
        }
        if !x.mul(&x.inverse()).is_identity() {
            return fail(format!("inverse law violated: {:?}", x.coords));
        }
    }

    // table consistency: collected [e_i, e_j] equals the table word
    for i in 0..m {
        for j in (i + 1)..m {
            let ei = collect::GroupElement::generator(schema.clone(), i);
            let ej = collect::GroupElement::generator(schema.clone(), j);
            let comm = ei.commutator(&ej);
            let mut expected = vec![Rational::zero(); m];
            if let Some(word) = schema.commutators.get(&(i, j)) {
                for (p, e) in word {
                    expected[*p] = e.clone();
                }
            }
            if comm.coords != expected {
                return fail(format!(
                    "commutator table inconsistent at (e_{i}, e_{j}): collected {:?}, table {:?}",
                    comm.coords, expected
                ));
            }
        }
    }

    // filtration nesting
    let downset = schema.downset();
    for a in &downset {
        for b in &downset {
            if a.leq(b) {
                let pa = schema.positions_of(a);
                let pb = schema.positions_of(b);
                if !pb.iter().all(|p| pa.contains(p)) {
                    return fail(format!(
                        "filtration not nested: G_{b} not inside G_{a}"
                    ));
                }
            }
        }
    }

    // basis-level commutator inclusion [G_i, G_j] <= G_{i+j}
    for a in &downset {
        for b in &downset {
            let target = a.add(b);
            let allowed = schema.positions_of(&target);
            for &p in schema.positions_of(a) {
                for &q in schema.positions_of(b) {
                    let (lo, hi) = if p < q { (p, q) } else { (q, p) };
                    if lo == hi {
                        continue;
                    }
                    let ep = collect::GroupElement::generator(schema.clone(), lo);
                    let eq = collect::GroupElement::generator(schema.clone(), hi);
                    let comm = ep.commutator(&eq);
                    for (pos, c) in comm.coords.iter().enumerate() {
                        if !c.is_zero() && !allowed.contains(&pos) {
                            return fail(format!(
                                "[G_{a}, G_{b}] escapes G_{target}: witness (e_{lo}, e_{hi}) hits position {pos}"
                            ));
                        }
                    }
                }
            }
        }
    }

    SchemaReport { schema: schema.name.clone(), pass: true, failure: None }
}

// ---------------------------------------------------------------------
// file format

#[derive(Serialize, Deserialize)]
struct CommutatorEntry {
    i: usize,
    j: usize,
    word: Vec<(usize, WireRat)>,
}

#[derive(Serialize, Deserialize)]
struct WireRat(#[serde(with = "rat_serde")] Rational);

#[derive(Serialize, Deserialize)]
struct FiltrationEntry {
    index: FiltIndex,
    positions: Vec<usize>,
}

/// JSON-shaped schema document with rationals as `p/q` strings.
#[derive(Serialize, Deserialize)]
pub struct SchemaFile {
    pub name: String,
    pub kind: String,
    pub class: u32,
    pub basis: Vec<String>,
    commutators: Vec<CommutatorEntry>,
    filtration: Vec<FiltrationEntry>,
    pub generators: Vec<usize>,
    #[serde(default)]
    weights: Option<Vec<FiltIndex>>,
    #[serde(default)]
    depths: Option<Vec<u32>>,
}

impl SchemaFile {
    pub fn from_schema(s: &NilSchema) -> SchemaFile {
        SchemaFile {
            name: s.name.clone(),
            kind: match s.kind {
                IndexKind::Degree => "degree".into(),
                IndexKind::MultiDegree(k) => format!("multidegree:{k}"),
                IndexKind::DegreeRank => "degree_rank".into(),
            },
            class: s.class,
            basis: s.basis.clone(),
            commutators: s
                .commutators
                .iter()
                .map(|((i, j), w)| CommutatorEntry {
                    i: *i,
                    j: *j,
                    word: w.iter().map(|(p, e)| (*p, WireRat(e.clone()))).collect(),
                })
                .collect(),
            filtration: s
                .filtration
                .iter()
                .map(|(k, v)| FiltrationEntry { index: k.clone(), positions: v.clone() })
                .collect(),
            generators: s.generators.clone(),
            weights: Some(s.weights.clone()),
            depths: Some(s.depths.clone()),
        }
    }

    pub fn into_schema(self) -> Result<Arc<NilSchema>, SchemaError> {
        let kind = match self.kind.as_str() {
            "degree" => IndexKind::Degree,
            "degree_rank" => IndexKind::DegreeRank,
            other => match other.strip_prefix("multidegree:") {
                Some(k) => IndexKind::MultiDegree(
                    k.parse().map_err(|_| SchemaError::Io(format!("bad kind {other:?}")))?,
                ),
                None => return Err(SchemaError::Io(format!("unknown kind {other:?}"))),
            },
        };
        let m = self.basis.len();
        let commutators: BTreeMap<(usize, usize), Word> = self
            .commutators
            .into_iter()
            .map(|c| ((c.i, c.j), c.word.into_iter().map(|(p, w)| (p, w.0)).collect()))
            .collect();
        let filtration: BTreeMap<FiltIndex, Vec<usize>> = self
            .filtration
            .into_iter()
            .map(|f| (f.index.normalized(), f.positions))
            .collect();
        let comm_support: Vec<usize> = commutators
            .values()
            .flat_map(|w| w.iter().map(|(p, _)| *p))
            .collect();
        let weights = match self.weights {
            Some(w) => w,
            None => (0..m)
                .map(|p| {
                    filtration
                        .iter()
                        .filter(|(_, v)| v.contains(&p))
                        .map(|(k, _)| k.clone())
                        .max_by(|a, b| a.total_cmp(b))
                        .unwrap_or_else(|| FiltIndex::zero(kind))
                })
                .collect(),
        };
        let depths = match self.depths {
            Some(d) => d,
            None => (0..m)
                .map(|p| if comm_support.contains(&p) { 2 } else { 1 })
                .collect(),
        };
        NilSchema::build(
            self.name, kind, self.class, self.basis, commutators, filtration,
            self.generators, weights, depths,
        )
    }
}

pub fn schema_to_json(s: &NilSchema) -> String {
    serde_json::to_string_pretty(&SchemaFile::from_schema(s)).expect("schema serializes")
}

pub fn schema_from_json(text: &str) -> Result<Arc<NilSchema>, SchemaError> {
    let file: SchemaFile =
        serde_json::from_str(text).map_err(|e| SchemaError::Io(e.to_string()))?;
    file.into_schema()
}
