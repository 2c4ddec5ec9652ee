//! Catalog of concrete filtered groups: tori, the Heisenberg group under
//! its two filtrations, free 2-step groups, universal groups, the
//! 7-dimensional multidegree group of the multilinearisation example, and
//! binary products.

use super::index::{FiltIndex, IndexKind};
use super::schema::{NilSchema, SchemaError, Word};
use super::universal;
use crate::scalar::{rat_int, Rational};
use std::collections::BTreeMap;
use std::sync::Arc;

pub const UNIVERSAL_DIM_CAP: usize = 12;

/// The torus `T^k` with the degree-`d` filtration `G_i = R^k` for `i <= d`.
pub fn torus(k: usize, d: u32) -> Result<Arc<NilSchema>, SchemaError> {
    if k == 0 || d == 0 {
        return Err(SchemaError::Unsupported("torus needs k >= 1 and d >= 1".into()));
    }
    let basis: Vec<String> = (0..k).map(|i| format!("x{}", i + 1)).collect();
    let all: Vec<usize> = (0..k).collect();
    let mut filtration = BTreeMap::new();
    for i in 0..=d {
        filtration.insert(FiltIndex::Degree(i), all.clone());
    }
    NilSchema::build(
        format!("torus({k},{d})"),
        IndexKind::Degree,
        1,
        basis,
        BTreeMap::new(),
        filtration,
        all,
        vec![FiltIndex::Degree(d); k],
        vec![1; k],
    )
}

/// The Heisenberg group with basis `(e1, e2, e12)`, `[e1, e2] = e12`, and
/// the lower central series filtration of degree <= 2.
pub fn heisenberg() -> Result<Arc<NilSchema>, SchemaError> {
    let mut commutators: BTreeMap<(usize, usize), Word> = BTreeMap::new();
    commutators.insert((0, 1), vec![(2, rat_int(1))]);
    let mut filtration = BTreeMap::new();
    filtration.insert(FiltIndex::Degree(0), vec![0, 1, 2]);
    filtration.insert(FiltIndex::Degree(1), vec![0, 1, 2]);
    filtration.insert(FiltIndex::Degree(2), vec![2]);
    NilSchema::build(
        "heisenberg",
        IndexKind::Degree,
        2,
        vec!["e1".into(), "e2".into(), "e12".into()],
        commutators,
        filtration,
        vec![0, 1],
        vec![FiltIndex::Degree(1), FiltIndex::Degree(1), FiltIndex::Degree(2)],
        vec![1, 1, 2],
    )
}

/// The Heisenberg group with the degree-rank (3,2) filtration that models
/// the phase `{alpha n^2} beta n`: the basis keeps the `(e1, e2, e12)`
/// fundamental-domain order, with `G_(2,0) = <e1, e12>` and
/// `G_(2,2) = <e12>`, so `e1` carries degree 2 and `e2` degree 1.
pub fn heisenberg_degrank32() -> Result<Arc<NilSchema>, SchemaError> {
    let mut commutators: BTreeMap<(usize, usize), Word> = BTreeMap::new();
    commutators.insert((0, 1), vec![(2, rat_int(1))]);
    let mut filtration = BTreeMap::new();
    let all = vec![0usize, 1, 2];
    for (d, r, positions) in [
        (0u32, 0u32, all.clone()),
        (1, 0, all.clone()),
        (1, 1, all.clone()),
        (2, 0, vec![0, 2]),
        (2, 1, vec![0, 2]),
        (2, 2, vec![2]),
        (3, 0, vec![2]),
        (3, 1, vec![2]),
        (3, 2, vec![2]),
    ] {
        filtration.insert(FiltIndex::DegreeRank(d, r), positions);
    }
    NilSchema::build(
        "heisenberg_degrank32",
        IndexKind::DegreeRank,
        2,
        vec!["e1".into(), "e2".into(), "e12".into()],
        commutators,
        filtration,
        vec![0, 1],
        vec![
            FiltIndex::DegreeRank(2, 0),
            FiltIndex::DegreeRank(1, 0),
            FiltIndex::DegreeRank(3, 0),
        ],
        vec![1, 1, 2],
    )
}

/// The free 2-step nilpotent group on `k` generators with the lower
/// central series filtration.
pub fn free2step(k: usize) -> Result<Arc<NilSchema>, SchemaError> {
    let dim = k + k * (k - 1) / 2;
    if k < 2 || dim > UNIVERSAL_DIM_CAP {
        return Err(SchemaError::Unsupported(format!(
            "free2step({k}) has dimension {dim}, outside the supported range"
        )));
    }
    let mut basis: Vec<String> = (0..k).map(|i| format!("e{}", i + 1)).collect();
    let mut commutators: BTreeMap<(usize, usize), Word> = BTreeMap::new();
    let mut pos = k;
    for i in 0..k {
        for j in (i + 1)..k {
            basis.push(format!("c{}_{}", i + 1, j + 1));
            commutators.insert((i, j), vec![(pos, rat_int(1))]);
            pos += 1;
        }
    }
    let mut filtration = BTreeMap::new();
    let all: Vec<usize> = (0..dim).collect();
    filtration.insert(FiltIndex::Degree(0), all.clone());
    filtration.insert(FiltIndex::Degree(1), all);
    filtration.insert(FiltIndex::Degree(2), (k..dim).collect());
    let mut weights = vec![FiltIndex::Degree(1); k];
    weights.extend(vec![FiltIndex::Degree(2); dim - k]);
    let mut depths = vec![1u32; k];
    depths.extend(vec![2u32; dim - k]);
    NilSchema::build(
        format!("free2step({k})"),
        IndexKind::Degree,
        2,
        basis,
        commutators,
        filtration,
        (0..k).collect(),
        weights,
        depths,
    )
}

/// Universal nilpotent group of dimension vector `dims` and degree-rank
/// `(d, r)`; total dimension capped at 12.
pub fn universal_group(dims: &[u32], d: u32, r: u32) -> Result<Arc<NilSchema>, SchemaError> {
    universal::universal(dims, d, r, UNIVERSAL_DIM_CAP)
}

/// The 7-dimensional multidegree-(1,1) group `a1,a2,a12,b1,b2,b12,c12`
/// with `[a1,b2] = c12`, `[a2,b1] = c12^{-1}`, all other generator pairs
/// commuting.
pub fn app_c_multidegree() -> Result<Arc<NilSchema>, SchemaError> {
    let basis: Vec<String> = ["a1", "a2", "a12", "b1", "b2", "b12", "c12"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut commutators: BTreeMap<(usize, usize), Word> = BTreeMap::new();
    commutators.insert((0, 4), vec![(6, rat_int(1))]); // [a1, b2] = c12
    commutators.insert((1, 3), vec![(6, rat_int(-1))]); // [a2, b1] = c12^{-1}
    let mut filtration = BTreeMap::new();
    filtration.insert(FiltIndex::MultiDegree(vec![0, 0]), (0..7).collect());
    filtration.insert(FiltIndex::MultiDegree(vec![1, 0]), vec![0, 1, 2, 6]);
    filtration.insert(FiltIndex::MultiDegree(vec![0, 1]), vec![3, 4, 5, 6]);
    filtration.insert(FiltIndex::MultiDegree(vec![1, 1]), vec![6]);
    NilSchema::build(
        "appC_multidegree",
        IndexKind::MultiDegree(2),
        2,
        basis,
        commutators,
        filtration,
        vec![0, 1, 2, 3, 4, 5],
        vec![
            FiltIndex::MultiDegree(vec![1, 0]),
            FiltIndex::MultiDegree(vec![1, 0]),
            FiltIndex::MultiDegree(vec![1, 0]),
            FiltIndex::MultiDegree(vec![0, 1]),
            FiltIndex::MultiDegree(vec![0, 1]),
            FiltIndex::MultiDegree(vec![0, 1]),
            FiltIndex::MultiDegree(vec![1, 1]),
        ],
        vec![1, 1, 1, 1, 1, 1, 2],
    )
}

/// Direct product of two schemas over the same index kind.
pub fn product(s1: &Arc<NilSchema>, s2: &Arc<NilSchema>) -> Result<Arc<NilSchema>, SchemaError> {
    if s1.kind != s2.kind {
        return Err(SchemaError::Unsupported(format!(
            "product of different filtration kinds ({:?} vs {:?})",
            s1.kind, s2.kind
        )));
    }
    let off = s1.dim();
    let mut basis: Vec<String> = s1.basis.iter().map(|b| format!("L.{b}")).collect();
    basis.extend(s2.basis.iter().map(|b| format!("R.{b}")));
    let mut commutators = s1.commutators.clone();
    for ((i, j), w) in &s2.commutators {
        commutators.insert(
            (i + off, j + off),
            w.iter().map(|(p, e)| (p + off, e.clone())).collect::<Vec<(usize, Rational)>>(),
        );
    }
    // (G x G')_i = G_i x G'_i over the union of the downsets
    let mut filtration: BTreeMap<FiltIndex, Vec<usize>> = BTreeMap::new();
    let mut indices: Vec<FiltIndex> = s1.filtration.keys().cloned().collect();
    for k in s2.filtration.keys() {
        if !indices.contains(k) {
            indices.push(k.clone());
        }
    }
    for idx in indices {
        let mut positions: Vec<usize> = s1.positions_of(&idx).to_vec();
        positions.extend(s2.positions_of(&idx).iter().map(|p| p + off));
        filtration.insert(idx, positions);
    }
    let mut generators = s1.generators.clone();
    generators.extend(s2.generators.iter().map(|p| p + off));
    let mut weights = s1.weights.clone();
    weights.extend(s2.weights.iter().cloned());
    let mut depths = s1.depths.clone();
    depths.extend(s2.depths.iter().cloned());
    NilSchema::build(
        format!("product({},{})", s1.name, s2.name),
        s1.kind,
        s1.class.max(s2.class),
        basis,
        commutators,
        filtration,
        generators,
        weights,
        depths,
    )
}

/// Looks up a catalog schema by a textual spec such as `torus(1,2)`,
/// `heisenberg`, `free2step(3)`, `universal(2,0,0;3,3)`,
/// `appC_multidegree`, or `product(heisenberg,torus(1,2))`.
pub fn by_name(spec: &str) -> Result<Arc<NilSchema>, SchemaError> {
    let spec = spec.trim();
    if spec == "heisenberg" {
        return heisenberg();
    }
    if spec == "heisenberg_degrank32" {
        return heisenberg_degrank32();
    }
    if spec == "appC_multidegree" {
        return app_c_multidegree();
    }
    if let Some(args) = spec.strip_prefix("torus(").and_then(|s| s.strip_suffix(')')) {
        let parts: Vec<&str> = args.split(',').collect();
        if parts.len() == 2 {
            let k = parts[0].trim().parse().map_err(|_| bad(spec))?;
            let d = parts[1].trim().parse().map_err(|_| bad(spec))?;
            return torus(k, d);
        }
    }
    if let Some(args) = spec.strip_prefix("free2step(").and_then(|s| s.strip_suffix(')')) {
        let k = args.trim().parse().map_err(|_| bad(spec))?;
        return free2step(k);
    }
    if let Some(args) = spec.strip_prefix("universal(").and_then(|s| s.strip_suffix(')')) {
        let (dims_s, dr_s) = args.split_once(';').ok_or_else(|| bad(spec))?;
        let dims: Vec<u32> = dims_s
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| bad(spec)))
            .collect::<Result<_, _>>()?;
        let dr: Vec<u32> = dr_s
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| bad(spec)))
            .collect::<Result<_, _>>()?;
        if dr.len() != 2 {
            return Err(bad(spec));
        }
        return universal_group(&dims, dr[0], dr[1]);
    }
    if let Some(args) = spec.strip_prefix("product(").and_then(|s| s.strip_suffix(')')) {
        // split at the top-level comma
        let mut depth = 0usize;
        for (i, c) in args.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    let s1 = by_name(&args[..i])?;
                    let s2 = by_name(&args[i + 1..])?;
                    return product(&s1, &s2);
                }
                _ => {}
            }
        }
        return Err(bad(spec));
    }
    Err(bad(spec))
}

fn bad(spec: &str) -> SchemaError {
    SchemaError::Unsupported(format!("unknown catalog spec {spec:?}"))
}
