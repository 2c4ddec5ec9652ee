//! Exact multiplication by commutator collection.
//!
//! Multiplication concatenates two normal-form words and restores normal
//! form by swapping adjacent out-of-order powers.  Each swap of
//! `e_j^t e_i^s` (i < j) appends correction factors on positions strictly
//! after `j`, so collection terminates.  The correction exponents are
//! polynomials `Q_p(s, t)` fixed by the schema; they are computed once at
//! schema construction by collecting single-letter words on an integer
//! grid and interpolating, then verified on extra grid points.

use super::schema::{NilSchema, Word};
use crate::poly::{BiPoly, UniPoly};
use crate::scalar::{rat_int, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("schema mismatch: {0} vs {1}")]
    SchemaMismatch(String, String),
}

/// Interpolation grid 0..=GRID_DEG captures polynomials of degree up to
/// GRID_DEG per variable; class <= 4 needs at most 4.
const GRID_DEG: i64 = 6;
/// Extra integer points at which interpolated rules are re-checked
/// against letter-level collection.
const CHECK_POINTS: [(i64, i64); 3] = [(7, 2), (2, 7), (7, 7)];

const MAX_COLLECT_STEPS: usize = 2_000_000;

enum Rules<'a> {
    /// All swap rules available (runtime).
    Full(&'a BTreeMap<(usize, usize), Vec<(usize, BiPoly)>>),
    /// Construction phase: rules computed so far, plus the single-letter
    /// relation for the pair currently being derived.
    Building {
        done: &'a BTreeMap<(usize, usize), Vec<(usize, BiPoly)>>,
        base_pair: (usize, usize),
        base_word: &'a Word,
    },
}

impl<'a> Rules<'a> {
    fn rule(&self, pair: (usize, usize)) -> Option<&'a [(usize, BiPoly)]> {
        match self {
            Rules::Full(map) => map.get(&pair).map(|v| v.as_slice()),
            Rules::Building { done, .. } => done.get(&pair).map(|v| v.as_slice()),
        }
    }
}

/// Collects an arbitrary word into normal-form coordinates.
fn collect_word(m: usize, word: Vec<(usize, Rational)>, rules: &Rules) -> Vec<Rational> {
    let mut w: Vec<(usize, Rational)> = word.into_iter().filter(|(_, e)| !e.is_zero()).collect();
    let mut steps = 0usize;
    loop {
        // merge adjacent equal positions, drop zeros
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(w.len());
        for (p, e) in w.into_iter() {
            match merged.last_mut() {
                Some((q, f)) if *q == p => {
                    *f += e;
                    if f.is_zero() {
                        merged.pop();
                    }
                }
                _ => merged.push((p, e)),
            }
        }
        w = merged;

        let Some(k) = w.windows(2).position(|ab| ab[0].0 > ab[1].0) else {
            break;
        };
        steps += 1;
        assert!(steps < MAX_COLLECT_STEPS, "collection did not terminate");
        let (a, ea) = w[k].clone();
        let (b, eb) = w[k + 1].clone();
        // e_a^{ea} e_b^{eb} -> e_b^{eb} e_a^{ea} * corrections
        if let Some(rule) = rules.rule((b, a)) {
            let mut repl: Vec<(usize, Rational)> = vec![(b, eb.clone()), (a, ea.clone())];
            for (p, q) in rule {
                let c = q.eval(&eb, &ea);
                if !c.is_zero() {
                    repl.push((*p, c));
                }
            }
            w.splice(k..k + 2, repl);
        } else if let Rules::Building { base_pair, base_word, .. } = rules {
            assert_eq!((b, a), *base_pair, "missing swap rule for ({b},{a})");
            // peel one letter off each power and use the table relation:
            // e_a e_b = e_b e_a [e_a, e_b], with [e_a, e_b] = inverse of
            // the stored [e_b, e_a] word
            assert!(
                ea.is_integer() && eb.is_integer() && ea.is_positive() && eb.is_positive(),
                "construction words must have positive integer letters on the base pair"
            );
            // e_a^{ea} e_b^{eb} = e_a^{ea-1} e_b e_a [e_a,e_b] e_b^{eb-1}
            let one = Rational::one();
            let mut repl: Vec<(usize, Rational)> = Vec::new();
            if ea > one {
                repl.push((a, &ea - &one));
            }
            repl.push((b, one.clone()));
            repl.push((a, one.clone()));
            // inverse word: reversed with negated exponents
            for (p, e) in base_word.iter().rev() {
                repl.push((*p, -e.clone()));
            }
            if eb > one {
                repl.push((b, &eb - &one));
            }
            w.splice(k..k + 2, repl);
        } else {
            panic!("missing swap rule for pair ({b},{a})");
        }
    }
    let mut coords = vec![Rational::zero(); m];
    for (p, e) in w {
        coords[p] = e;
    }
    coords
}

/// Derives all swap rules for a commutator table, in descending order of
/// the left position so every recursive need is already available.
pub(crate) fn compute_swaps(
    m: usize,
    table: &BTreeMap<(usize, usize), Word>,
) -> Result<BTreeMap<(usize, usize), Vec<(usize, BiPoly)>>, String> {
    let empty: Word = Vec::new();
    let mut done: BTreeMap<(usize, usize), Vec<(usize, BiPoly)>> = BTreeMap::new();
    if m == 0 {
        return Ok(done);
    }
    let nodes: Vec<Rational> = (0..=GRID_DEG).map(rat_int).collect();
    for i in (0..m.saturating_sub(1)).rev() {
        for j in ((i + 1)..m).rev() {
            let base_word = table.get(&(i, j)).unwrap_or(&empty);
            let letters_for = |s: i64, t: i64| -> Vec<(usize, Rational)> {
                let mut word = Vec::with_capacity((s + t) as usize);
                for _ in 0..t {
                    word.push((j, Rational::one()));
                }
                for _ in 0..s {
                    word.push((i, Rational::one()));
                }
                word
            };
            let collect_at = |s: i64, t: i64, done: &BTreeMap<_, _>| -> Result<Vec<Rational>, String> {
                let rules = Rules::Building { done, base_pair: (i, j), base_word };
                let coords = collect_word(m, letters_for(s, t), &rules);
                if coords[i] != rat_int(s) || coords[j] != rat_int(t) {
                    return Err(format!(
                        "collection of e_{j}^{t} e_{i}^{s} corrupted the ({i},{j}) coordinates"
                    ));
                }
                for (p, c) in coords.iter().enumerate() {
                    if p != i && p != j && p <= j && !c.is_zero() {
                        return Err(format!(
                            "collection of e_{j}^{t} e_{i}^{s} leaked onto early position {p}"
                        ));
                    }
                }
                Ok(coords)
            };
            // grid of tail coordinates
            let mut grids: Vec<Vec<Vec<Rational>>> =
                vec![vec![vec![Rational::zero(); nodes.len()]; nodes.len()]; m];
            for (si, s) in (0..=GRID_DEG).enumerate() {
                for (ti, t) in (0..=GRID_DEG).enumerate() {
                    let coords = collect_at(s, t, &done)?;
                    for (p, c) in coords.into_iter().enumerate() {
                        if p > j {
                            grids[p][si][ti] = c;
                        }
                    }
                }
            }
            let mut rule: Vec<(usize, BiPoly)> = Vec::new();
            for (p, grid) in grids.iter().enumerate().skip(j + 1) {
                let bp = BiPoly::interpolate_grid(&nodes, grid);
                if !bp.coeffs.iter().all(|row| row.iter().all(|c| c.is_zero())) {
                    rule.push((p, bp));
                }
            }
            // re-check the interpolated rule on points off the grid
            for (s, t) in CHECK_POINTS {
                let expected = collect_at(s, t, &done)?;
                for (p, bp) in &rule {
                    if bp.eval(&rat_int(s), &rat_int(t)) != expected[*p] {
                        return Err(format!(
                            "swap rule for (e_{i}, e_{j}) fails verification at ({s},{t}); \
                             commutator structure exceeds the supported class"
                        ));
                    }
                }
                for (p, c) in expected.iter().enumerate() {
                    if p > j && !c.is_zero() && !rule.iter().any(|(q, _)| *q == p) {
                        return Err(format!(
                            "swap rule for (e_{i}, e_{j}) misses position {p} at ({s},{t})"
                        ));
                    }
                }
            }
            done.insert((i, j), rule);
        }
    }
    Ok(done)
}

/// A point of the group in coordinates of the second kind.
#[derive(Clone, PartialEq)]
pub struct GroupElement {
    pub schema: Arc<NilSchema>,
    pub coords: Vec<Rational>,
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect();
        write!(f, "{}({})", self.schema.name, parts.join(", "))
    }
}

impl GroupElement {
    pub fn new(schema: Arc<NilSchema>, coords: Vec<Rational>) -> Self {
        assert_eq!(coords.len(), schema.dim(), "coordinate dimension mismatch");
        GroupElement { schema, coords }
    }

    pub fn identity(schema: Arc<NilSchema>) -> Self {
        let m = schema.dim();
        GroupElement::new(schema, vec![Rational::zero(); m])
    }

    pub fn generator(schema: Arc<NilSchema>, p: usize) -> Self {
        Self::generator_power(schema, p, Rational::one())
    }

    pub fn generator_power(schema: Arc<NilSchema>, p: usize, t: Rational) -> Self {
        let m = schema.dim();
        let mut coords = vec![Rational::zero(); m];
        coords[p] = t;
        GroupElement::new(schema, coords)
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, _)| p)
            .collect()
    }

    fn word(&self) -> Vec<(usize, Rational)> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (p, c.clone()))
            .collect()
    }

    pub fn try_mul(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        if !self.schema.same_schema(&other.schema) {
            return Err(GroupError::SchemaMismatch(
                self.schema.name.clone(),
                other.schema.name.clone(),
            ));
        }
        let mut word = self.word();
        word.extend(other.word());
        let coords = collect_word(self.schema.dim(), word, &Rules::Full(&self.schema.swaps));
        Ok(GroupElement { schema: self.schema.clone(), coords })
    }

    /// Normal-form product; panics on schema mismatch (see `try_mul`).
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        self.try_mul(other).unwrap()
    }

    pub fn inverse(&self) -> GroupElement {
        let word: Vec<(usize, Rational)> = self
            .word()
            .into_iter()
            .rev()
            .map(|(p, e)| (p, -e))
            .collect();
        let coords = collect_word(self.schema.dim(), word, &Rules::Full(&self.schema.swaps));
        GroupElement { schema: self.schema.clone(), coords }
    }

    /// `x^t` for integer `t`, by binary powering.
    pub fn pow_int(&self, t: &BigInt) -> GroupElement {
        if t.is_zero() {
            return GroupElement::identity(self.schema.clone());
        }
        let base = if t.is_negative() { self.inverse() } else { self.clone() };
        let mut n = t.abs().to_biguint().unwrap();
        let mut acc = GroupElement::identity(self.schema.clone());
        let mut sq = base;
        let one = num_bigint::BigUint::one();
        while !n.is_zero() {
            if (&n & &one) == one {
                acc = acc.mul(&sq);
            }
            n >>= 1;
            if !n.is_zero() {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    pub fn pow_i64(&self, t: i64) -> GroupElement {
        self.pow_int(&BigInt::from(t))
    }

    /// `x^t` for rational `t`: the one-parameter curve through `x`,
    /// obtained by interpolating the integer powers coordinatewise and
    /// checked on extra integer points.
    pub fn power(&self, t: &Rational) -> GroupElement {
        if t.is_integer() {
            return self.pow_int(&t.to_integer());
        }
        let m = self.schema.dim();
        let nodes: Vec<Rational> = (0..=GRID_DEG).map(rat_int).collect();
        let mut values: Vec<Vec<Rational>> = vec![Vec::with_capacity(nodes.len()); m];
        let mut acc = GroupElement::identity(self.schema.clone());
        for n in 0..=GRID_DEG {
            if n > 0 {
                acc = acc.mul(self);
            }
            for (p, v) in values.iter_mut().enumerate() {
                v.push(acc.coords[p].clone());
            }
        }
        let curves: Vec<UniPoly> = values
            .iter()
            .map(|v| UniPoly::interpolate(&nodes, v))
            .collect();
        // curve must keep matching true integer powers past the grid
        let x7 = acc.mul(self);
        for (p, c) in curves.iter().enumerate() {
            assert_eq!(
                c.eval(&rat_int(GRID_DEG + 1)),
                x7.coords[p],
                "power curve verification failed; class bound exceeded"
            );
        }
        let coords = curves.iter().map(|c| c.eval(t)).collect();
        GroupElement { schema: self.schema.clone(), coords }
    }

    /// `[x, y] = x^{-1} y^{-1} x y`, exact normal form.
    pub fn commutator(&self, other: &GroupElement) -> GroupElement {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// Splits `x = reduced * gamma` with `gamma` in the integer lattice
    /// and every coordinate of `reduced` in `(-1/2, 1/2]`.  Reduction
    /// proceeds in ascending basis order, so earlier coordinates stay
    /// reduced when later corrections appear.
    pub fn reduce_mod_lattice(&self) -> (GroupElement, GroupElement) {
        let m = self.schema.dim();
        let mut reduced = self.clone();
        let mut gamma_word: Vec<(usize, Rational)> = Vec::new();
        for p in 0..m {
            let k = (&reduced.coords[p] - crate::scalar::rat_i64(1, 2)).ceil();
            if !k.is_zero() {
                let step = GroupElement::generator_power(self.schema.clone(), p, -k.clone());
                reduced = reduced.mul(&step);
                gamma_word.push((p, k));
            }
        }
        gamma_word.reverse();
        let coords = collect_word(m, gamma_word, &Rules::Full(&self.schema.swaps));
        let gamma = GroupElement { schema: self.schema.clone(), coords };
        debug_assert!(gamma.coords.iter().all(|c| c.is_integer()));
        (reduced, gamma)
    }

    /// Float rendering of the coordinates.
    pub fn coords_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}
