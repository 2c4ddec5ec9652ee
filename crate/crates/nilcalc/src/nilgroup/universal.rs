//! Universal nilpotent groups of a given dimension vector and degree-rank.
//!
//! The group generated by formal generators `e_{i,j}` of degree `i`
//! (1 <= j <= D_i), with every iterated commutator of total degree > d
//! trivial, and those of total degree exactly d with more than r letters
//! trivial.  A Mal'cev basis of basic (Hall) group commutators is
//! enumerated, and the commutator table is extracted exactly inside a
//! weight-truncated free associative algebra.  The algebra model is used
//! only here, at construction time; runtime arithmetic stays with the
//! table-driven collection engine.

use super::index::{FiltIndex, IndexKind};
use super::schema::{NilSchema, SchemaError, Word};
use crate::scalar::Rational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Element of the free associative algebra on weighted letters, truncated
/// above total weight `cap`: monomial word -> coefficient.
#[derive(Clone, Debug, PartialEq)]
struct Elt {
    terms: BTreeMap<Vec<u8>, Rational>,
}

struct Algebra {
    letter_weight: Vec<u32>,
    cap: u32,
}

impl Algebra {
    fn weight(&self, word: &[u8]) -> u32 {
        word.iter().map(|&l| self.letter_weight[l as usize]).sum()
    }

    fn zero(&self) -> Elt {
        Elt { terms: BTreeMap::new() }
    }

    fn one(&self) -> Elt {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), Rational::one());
        Elt { terms }
    }

    fn letter(&self, l: usize) -> Elt {
        let mut terms = BTreeMap::new();
        terms.insert(vec![l as u8], Rational::one());
        Elt { terms }
    }

    fn add(&self, a: &Elt, b: &Elt) -> Elt {
        let mut terms = a.terms.clone();
        for (k, v) in &b.terms {
            let e = terms.entry(k.clone()).or_insert_with(Rational::zero);
            *e += v;
            if e.is_zero() {
                terms.remove(k);
            }
        }
        Elt { terms }
    }

    fn scale(&self, a: &Elt, c: &Rational) -> Elt {
        if c.is_zero() {
            return self.zero();
        }
        Elt { terms: a.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        let mut terms: BTreeMap<Vec<u8>, Rational> = BTreeMap::new();
        for (ka, va) in &a.terms {
            let wa = self.weight(ka);
            for (kb, vb) in &b.terms {
                if wa + self.weight(kb) > self.cap {
                    continue;
                }
                let mut k = ka.clone();
                k.extend_from_slice(kb);
                let e = terms.entry(k).or_insert_with(Rational::zero);
                *e += va * vb;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Elt { terms }
    }

    /// exp of an element with zero constant term.
    fn exp(&self, x: &Elt) -> Elt {
        debug_assert!(!x.terms.contains_key(&Vec::new()));
        let mut acc = self.one();
        let mut term = self.one();
        let mut factorial = Rational::one();
        for k in 1..=(self.cap as i64) {
            term = self.mul(&term, x);
            if term.terms.is_empty() {
                break;
            }
            factorial *= Rational::from_integer(k.into());
            acc = self.add(&acc, &self.scale(&term, &(Rational::one() / &factorial)));
        }
        acc
    }

    /// log of a grouplike element `1 + y`.
    fn log(&self, g: &Elt) -> Elt {
        let mut y = g.clone();
        y.terms.remove(&Vec::new());
        let mut acc = self.zero();
        let mut power = self.one();
        for k in 1..=(self.cap as i64) {
            power = self.mul(&power, &y);
            if power.terms.is_empty() {
                break;
            }
            let sign = if k % 2 == 1 { Rational::one() } else { -Rational::one() };
            acc = self.add(&acc, &self.scale(&power, &(sign / Rational::from_integer(k.into()))));
        }
        acc
    }

    fn inv(&self, g: &Elt) -> Elt {
        // (1+y)^{-1} = sum (-y)^k
        let mut y = g.clone();
        y.terms.remove(&Vec::new());
        let neg_y = self.scale(&y, &-Rational::one());
        let mut acc = self.one();
        let mut power = self.one();
        for _ in 1..=self.cap {
            power = self.mul(&power, &neg_y);
            if power.terms.is_empty() {
                break;
            }
            acc = self.add(&acc, &power);
        }
        acc
    }

    fn group_comm(&self, a: &Elt, b: &Elt) -> Elt {
        let t = self.mul(&self.inv(a), &self.inv(b));
        self.mul(&self.mul(&t, a), b)
    }

    fn group_pow(&self, g: &Elt, t: &Rational) -> Elt {
        self.exp(&self.scale(&self.log(g), t))
    }

    /// The weight-w graded part.
    fn graded(&self, x: &Elt, w: u32) -> Elt {
        Elt {
            terms: x
                .terms
                .iter()
                .filter(|(k, _)| self.weight(k) == w)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

/// A basic commutator in the Hall enumeration.
#[derive(Clone, Debug)]
enum HallTree {
    Gen(usize),
    Comm(usize, usize), // indices into the basis list: [basis[a], basis[b]]
}

struct HallElt {
    tree: HallTree,
    weight: u32,
    depth: u32,
    label: String,
}

/// Enumerates the Hall basis of basic commutators on weighted generators
/// up to total weight `deg`, in ascending (weight, depth) order.  The
/// basis order is itself the Hall order: `[a, b]` is basic when `a > b`
/// and, for `a = [x, y]`, `y <= b`.
fn hall_basis(gen_weights: &[u32], gen_labels: &[String], deg: u32) -> Vec<HallElt> {
    let mut basis: Vec<HallElt> = Vec::new();
    for w in 1..=deg {
        for (g, (&gw, label)) in gen_weights.iter().zip(gen_labels).enumerate() {
            if gw == w {
                basis.push(HallElt {
                    tree: HallTree::Gen(g),
                    weight: w,
                    depth: 1,
                    label: label.clone(),
                });
            }
        }
        let n = basis.len(); // only elements of weight <= w present
        let mut new_elts: Vec<HallElt> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if basis[a].weight + basis[b].weight != w {
                    continue;
                }
                if a <= b {
                    continue;
                }
                if let HallTree::Comm(_, y) = basis[a].tree {
                    if y > b {
                        continue;
                    }
                }
                new_elts.push(HallElt {
                    tree: HallTree::Comm(a, b),
                    weight: w,
                    depth: basis[a].depth + basis[b].depth,
                    label: format!("[{},{}]", basis[a].label, basis[b].label),
                });
            }
        }
        new_elts.sort_by_key(|e| e.depth);
        basis.extend(new_elts);
    }
    basis
}

/// Solves `sum_p t_p leaders[p] == target` exactly (the leaders are
/// linearly independent).
fn solve_graded(
    alg: &Algebra,
    leaders: &[Elt],
    target: &Elt,
) -> Result<Vec<Rational>, String> {
    let mut monos: Vec<Vec<u8>> = Vec::new();
    for e in leaders.iter().chain(std::iter::once(target)) {
        for k in e.terms.keys() {
            if !monos.contains(k) {
                monos.push(k.clone());
            }
        }
    }
    let rows = monos.len();
    let cols = leaders.len();
    let mut a: Vec<Vec<Rational>> = vec![vec![Rational::zero(); cols + 1]; rows];
    for (r, mono) in monos.iter().enumerate() {
        for (c, l) in leaders.iter().enumerate() {
            if let Some(v) = l.terms.get(mono) {
                a[r][c] = v.clone();
            }
        }
        if let Some(v) = target.terms.get(mono) {
            a[r][cols] = v.clone();
        }
    }
    let _ = alg;
    // Gaussian elimination
    let mut pivot_row = 0usize;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for c in 0..cols {
        let Some(r) = (pivot_row..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, r);
        let inv = Rational::one() / a[pivot_row][c].clone();
        for x in a[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        for r2 in 0..rows {
            if r2 != pivot_row && !a[r2][c].is_zero() {
                let f = a[r2][c].clone();
                for cc in 0..=cols {
                    let sub = &a[pivot_row][cc] * &f;
                    a[r2][cc] = &a[r2][cc] - sub;
                }
            }
        }
        pivots.push((pivot_row, c));
        pivot_row += 1;
    }
    for r in pivot_row..rows {
        if !a[r][cols].is_zero() {
            return Err("graded component outside the Hall span".into());
        }
    }
    let mut t = vec![Rational::zero(); cols];
    for (r, c) in pivots {
        t[c] = a[r][cols].clone();
    }
    Ok(t)
}

/// Reference multiplication inside the algebra model, bypassing the
/// collection engine entirely: embeds both coordinate vectors as
/// products of Hall-element powers, multiplies the truncated series, and
/// peels second-kind coordinates back out.  Test oracle only.
#[doc(hidden)]
pub fn magnus_mul_oracle(
    dims: &[u32],
    d: u32,
    r: u32,
    pairs: &[(Vec<Rational>, Vec<Rational>)],
) -> Vec<Vec<Rational>> {
    let mut gen_weights: Vec<u32> = Vec::new();
    let mut gen_labels: Vec<String> = Vec::new();
    for (i, &count) in dims.iter().enumerate() {
        for j in 0..count {
            gen_weights.push(i as u32 + 1);
            gen_labels.push(format!("e{}_{}", i + 1, j + 1));
        }
    }
    let full = hall_basis(&gen_weights, &gen_labels, d);
    let kept: Vec<usize> = (0..full.len())
        .filter(|&p| !(full[p].weight == d && full[p].depth > r))
        .collect();
    let alg = Algebra { letter_weight: gen_weights, cap: d };
    let mut gr: Vec<Elt> = Vec::with_capacity(full.len());
    for e in &full {
        let v = match &e.tree {
            HallTree::Gen(g) => alg.exp(&alg.letter(*g)),
            HallTree::Comm(a, b) => alg.group_comm(&gr[*a], &gr[*b]),
        };
        gr.push(v);
    }
    let leaders: Vec<Elt> = full
        .iter()
        .zip(&gr)
        .map(|(e, g)| alg.graded(&alg.log(g), e.weight))
        .collect();
    let peel = |elt: &Elt| -> Vec<Rational> {
        let mut rem = elt.clone();
        let mut coords = vec![Rational::zero(); full.len()];
        for w in 1..=d {
            let block: Vec<usize> = (0..full.len()).filter(|&p| full[p].weight == w).collect();
            if block.is_empty() {
                continue;
            }
            let target = alg.graded(&alg.log(&rem), w);
            let block_leaders: Vec<Elt> = block.iter().map(|&p| leaders[p].clone()).collect();
            let t = solve_graded(&alg, &block_leaders, &target).expect("peel");
            for (&p, tp) in block.iter().zip(t) {
                if !tp.is_zero() {
                    rem = alg.mul(&alg.group_pow(&gr[p], &-tp.clone()), &rem);
                }
                coords[p] = tp;
            }
        }
        assert_eq!(rem, alg.one(), "peel remainder");
        coords
    };
    let embed = |coords: &[Rational]| -> Elt {
        let mut acc = alg.one();
        for (slot, &p) in kept.iter().enumerate() {
            if !coords[slot].is_zero() {
                acc = alg.mul(&acc, &alg.group_pow(&gr[p], &coords[slot]));
            }
        }
        acc
    };
    pairs
        .iter()
        .map(|(x, y)| {
            let prod = alg.mul(&embed(x), &embed(y));
            let coords = peel(&prod);
            kept.iter().map(|&p| coords[p].clone()).collect()
        })
        .collect()
}

/// Builds the universal nilpotent group `G^{D}` of degree-rank `(d, r)`.
pub fn universal(
    dims: &[u32],
    d: u32,
    r: u32,
    max_dim: usize,
) -> Result<Arc<NilSchema>, SchemaError> {
    if dims.len() > d as usize {
        return Err(SchemaError::Unsupported(format!(
            "dimension vector has {} degrees but the degree bound is {d}",
            dims.len()
        )));
    }
    if !(1..=4).contains(&d) {
        return Err(SchemaError::Unsupported(format!("degree {d} outside 1..=4")));
    }
    if r < 1 || r > d {
        return Err(SchemaError::Unsupported(format!("rank {r} outside 1..={d}")));
    }
    let mut gen_weights: Vec<u32> = Vec::new();
    let mut gen_labels: Vec<String> = Vec::new();
    for (i, &count) in dims.iter().enumerate() {
        for j in 0..count {
            gen_weights.push(i as u32 + 1);
            gen_labels.push(format!("e{}_{}", i + 1, j + 1));
        }
    }
    if gen_weights.is_empty() {
        return Err(SchemaError::Unsupported("empty dimension vector".into()));
    }

    let full = hall_basis(&gen_weights, &gen_labels, d);
    // rank cut: weight-d commutators with more than r letters die
    let kept: Vec<usize> = (0..full.len())
        .filter(|&p| !(full[p].weight == d && full[p].depth > r))
        .collect();
    if kept.len() > max_dim {
        return Err(SchemaError::Unsupported(format!(
            "universal group dimension {} exceeds the cap {max_dim}",
            kept.len()
        )));
    }
    // keep must be an order ideal of the (weight, depth) sort for the
    // trailing-quotient construction to be valid
    debug_assert!(kept.windows(2).all(|w| w[0] < w[1]));

    let alg = Algebra { letter_weight: gen_weights.clone(), cap: d };
    // group elements of the full basis
    let mut gr: Vec<Elt> = Vec::with_capacity(full.len());
    for e in &full {
        let v = match &e.tree {
            HallTree::Gen(g) => alg.exp(&alg.letter(*g)),
            HallTree::Comm(a, b) => alg.group_comm(&gr[*a], &gr[*b]),
        };
        gr.push(v);
    }
    // graded leaders of log(gr[p]) per weight block
    let leaders: Vec<Elt> = full
        .iter()
        .zip(&gr)
        .map(|(e, g)| alg.graded(&alg.log(g), e.weight))
        .collect();

    // peel second-kind coordinates inside the full group
    let peel = |elt: &Elt| -> Result<Vec<Rational>, String> {
        let mut rem = elt.clone();
        let mut coords = vec![Rational::zero(); full.len()];
        for w in 1..=d {
            let block: Vec<usize> = (0..full.len()).filter(|&p| full[p].weight == w).collect();
            if block.is_empty() {
                continue;
            }
            let target = alg.graded(&alg.log(&rem), w);
            let block_leaders: Vec<Elt> = block.iter().map(|&p| leaders[p].clone()).collect();
            let t = solve_graded(&alg, &block_leaders, &target)?;
            for (&p, tp) in block.iter().zip(t) {
                if !tp.is_zero() {
                    rem = alg.mul(&alg.group_pow(&gr[p], &-tp.clone()), &rem);
                }
                coords[p] = tp;
            }
        }
        if rem != alg.one() {
            return Err("peeling left a nonidentity remainder".into());
        }
        Ok(coords)
    };

    // commutator table over the full basis, then quotient by the cut
    let mut commutators: BTreeMap<(usize, usize), Word> = BTreeMap::new();
    let pos_of_full: BTreeMap<usize, usize> =
        kept.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    for (pi, &p) in kept.iter().enumerate() {
        for &q in kept.iter().skip(pi + 1) {
            let qi = pos_of_full[&q];
            let c = alg.group_comm(&gr[p], &gr[q]);
            let coords = peel(&c).map_err(|msg| SchemaError::Invalid {
                name: "universal".into(),
                msg,
            })?;
            let mut word: Word = Vec::new();
            for (fp, v) in coords.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                if !v.is_integer() {
                    return Err(SchemaError::Invalid {
                        name: "universal".into(),
                        msg: format!("non-integer structure constant {v} in the Hall table"),
                    });
                }
                match pos_of_full.get(&fp) {
                    Some(&np) => {
                        if np <= qi {
                            return Err(SchemaError::Invalid {
                                name: "universal".into(),
                                msg: format!("commutator [{pi},{qi}] hits early position {np}"),
                            });
                        }
                        word.push((np, v.clone()));
                    }
                    None => {
                        // support on a cut (central) basis element: dies in
                        // the quotient
                    }
                }
            }
            word.sort_by_key(|(p, _)| *p);
            if !word.is_empty() {
                commutators.insert((pi, qi), word);
            }
        }
    }

    // degree-rank filtration on the kept basis
    let mut filtration: BTreeMap<FiltIndex, Vec<usize>> = BTreeMap::new();
    for dd in 0..=d {
        for rr in 0..=dd.min(if dd < d { dd } else { r }) {
            let idx = FiltIndex::DegreeRank(dd, rr);
            let positions: Vec<usize> = kept
                .iter()
                .enumerate()
                .filter(|(_, &p)| {
                    let e = &full[p];
                    e.weight > dd || (e.weight == dd && e.depth >= rr.max(1))
                })
                .map(|(np, _)| np)
                .collect();
            filtration.insert(idx, positions);
        }
    }

    let name = format!(
        "universal({},deg_rank({d},{r}))",
        dims.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    );
    let basis: Vec<String> = kept.iter().map(|&p| full[p].label.clone()).collect();
    let generators: Vec<usize> = kept
        .iter()
        .enumerate()
        .filter(|(_, &p)| matches!(full[p].tree, HallTree::Gen(_)))
        .map(|(np, _)| np)
        .collect();
    let weights: Vec<FiltIndex> =
        kept.iter().map(|&p| FiltIndex::DegreeRank(full[p].weight, 0)).collect();
    let depths: Vec<u32> = kept.iter().map(|&p| full[p].depth).collect();
    let class = depths.iter().copied().max().unwrap_or(1);
    NilSchema::build(
        name,
        IndexKind::DegreeRank,
        class,
        basis,
        commutators,
        filtration,
        generators,
        weights,
        depths,
    )
}
