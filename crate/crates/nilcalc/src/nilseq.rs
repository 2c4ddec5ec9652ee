//! Nilcharacters: vertical-frequency functions on filtered nilmanifolds,
//! evaluated along polynomial orbits.
//!
//! A nilcharacter spec bundles a schema, an orbit, a vertical character
//! `eta` on the top filtration group, and a smoothing atlas over the
//! horizontal (generator) coordinates.  Evaluation reduces the orbit
//! point into the fundamental domain and emits, per chart, the weighted
//! phase `phi_k(horiz) e(eta(vert))`; phases stay exact, only the bump
//! weights are floating point.  The degenerate single-chart mode keeps
//! the discontinuous fundamental-domain function and flags evaluations
//! that land near its boundary, which is where the exact bracket-phase
//! identities live.

use crate::nilgroup::{FiltIndex, GroupElement, NilSchema, VerticalChar};
use crate::polyseq::PolySeq;
use crate::rng::DetRng;
use crate::scalar::{
    rat_i64, signed_frac, PhaseEntry, PhaseVector, Rational, TorusPoint,
};
use num_traits::{ToPrimitive, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NilseqError {
    #[error("atlas: {0}")]
    Atlas(String),
    #[error("coverage gap at the evaluated point (all chart weights vanish)")]
    CoverageGap,
}

/// Partition-of-unity atlas over the `h`-torus of horizontal coordinates.
#[derive(Clone, Debug)]
pub struct SmoothingAtlas {
    pub h_dim: usize,
    pub kind: AtlasKind,
}

#[derive(Clone, Debug)]
pub enum AtlasKind {
    /// The discontinuous fundamental-domain chart; evaluations whose
    /// non-vertical coordinates come within `boundary_tol` (torus
    /// distance) of the domain boundary are flagged.
    Unsmoothed { boundary_tol: Rational },
    /// cos^2-taper bumps of a common radius around rational centers,
    /// normalized so the squared weights sum to one.
    Smooth { centers: Vec<Vec<Rational>>, radius: Rational },
}

impl SmoothingAtlas {
    pub fn unsmoothed(h_dim: usize) -> SmoothingAtlas {
        SmoothingAtlas {
            h_dim,
            kind: AtlasKind::Unsmoothed { boundary_tol: rat_i64(1, 1_000_000) },
        }
    }

    /// Regular grid of `per_axis^h` charts of the given radius.
    pub fn regular(h_dim: usize, per_axis: u32, radius: Rational) -> Result<SmoothingAtlas, NilseqError> {
        if radius > rat_i64(1, 8) || radius <= Rational::zero() {
            return Err(NilseqError::Atlas(format!(
                "chart radius {radius} outside (0, 1/8]"
            )));
        }
        let mut centers: Vec<Vec<Rational>> = vec![vec![]];
        for _ in 0..h_dim {
            let mut next = Vec::new();
            for c in &centers {
                for i in 0..per_axis {
                    let mut cc = c.clone();
                    cc.push(rat_i64(i as i64, per_axis as i64));
                    next.push(cc);
                }
            }
            centers = next;
        }
        let atlas = SmoothingAtlas { h_dim, kind: AtlasKind::Smooth { centers, radius } };
        atlas.verify_coverage()?;
        Ok(atlas)
    }

    pub fn chart_count(&self) -> usize {
        match &self.kind {
            AtlasKind::Unsmoothed { .. } => 1,
            AtlasKind::Smooth { centers, .. } => centers.len(),
        }
    }

    /// Every point of a mesh-`r/4` grid must lie strictly inside some
    /// chart ball.
    pub fn verify_coverage(&self) -> Result<(), NilseqError> {
        let AtlasKind::Smooth { centers, radius } = &self.kind else {
            return Ok(());
        };
        let steps = (4f64 / radius.to_f64().unwrap()).ceil() as i64 + 1;
        let mut point = vec![0i64; self.h_dim];
        loop {
            let coords: Vec<Rational> =
                point.iter().map(|&i| rat_i64(i, steps)).collect();
            let covered = centers.iter().any(|c| {
                let d2 = dist2(&coords, c);
                &d2 < &(radius * radius)
            });
            if !covered {
                return Err(NilseqError::Atlas(format!(
                    "coverage gap near grid point {point:?}"
                )));
            }
            let mut axis = 0;
            loop {
                if axis == self.h_dim {
                    return Ok(());
                }
                point[axis] += 1;
                if point[axis] < steps {
                    break;
                }
                point[axis] = 0;
                axis += 1;
            }
        }
    }
}

fn dist2(x: &[Rational], c: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (a, b) in x.iter().zip(c) {
        let d = signed_frac(&(a - b));
        acc += &d * &d;
    }
    acc
}

/// cos^2 taper: `b(t) = cos^2(pi t / 2)` for `|t| <= 1`, else 0.
fn bump(t: f64) -> f64 {
    if t.abs() >= 1.0 {
        0.0
    } else {
        let c = (std::f64::consts::PI * t / 2.0).cos();
        c * c
    }
}

/// A nilcharacter: schema + orbit + vertical character + atlas.
#[derive(Clone, Debug)]
pub struct NilcharSpec {
    pub schema: Arc<NilSchema>,
    pub orbit: PolySeq,
    pub vertical: VerticalChar,
    pub atlas: SmoothingAtlas,
}

/// One evaluation: a unit vector of weighted exact phases, plus the
/// boundary flag of the unsmoothed mode.
#[derive(Clone, Debug)]
pub struct NilcharValue {
    pub vector: PhaseVector,
    pub flagged: bool,
}

impl NilcharValue {
    /// The exact phase of the single-chart mode.
    pub fn scalar_phase(&self) -> &TorusPoint {
        assert_eq!(self.vector.dim(), 1, "scalar phase of a multi-chart value");
        &self.vector.entries[0].phase
    }
}

impl NilcharSpec {
    pub fn output_dim(&self) -> usize {
        self.atlas.chart_count()
    }

    /// `chi(n) = F(g(n) Gamma)`.
    pub fn eval(&self, n: &[i64]) -> Result<NilcharValue, NilseqError> {
        let x = self.orbit.eval(n);
        self.eval_at_element(&x)
    }

    /// Evaluates `F` at an explicit group point `x Gamma`.
    pub fn eval_at_element(&self, x: &GroupElement) -> Result<NilcharValue, NilseqError> {
        let (reduced, _) = x.reduce_mod_lattice();
        let gens = &self.schema.generators;
        match &self.atlas.kind {
            AtlasKind::Unsmoothed { boundary_tol } => {
                let vert_positions = self.schema.positions_of(&self.vertical.index);
                let boundary = TorusPoint::new(rat_i64(1, 2));
                let flagged = (0..self.schema.dim())
                    .filter(|p| !vert_positions.contains(p))
                    .any(|p| {
                        TorusPoint::new(reduced.coords[p].clone()).dist(&boundary) <= *boundary_tol
                    });
                let phase = self.vertical.phase_of(&reduced.coords);
                Ok(NilcharValue { vector: PhaseVector::scalar_phase(phase), flagged })
            }
            AtlasKind::Smooth { centers, radius } => {
                let r2 = radius * radius;
                let horiz: Vec<Rational> =
                    gens.iter().map(|&p| reduced.coords[p].clone()).collect();
                let mut raw: Vec<Option<(f64, TorusPoint)>> = Vec::with_capacity(centers.len());
                let mut total = 0f64;
                for center in centers {
                    let d2 = dist2(&horiz, center);
                    if d2 >= r2 {
                        raw.push(None);
                        continue;
                    }
                    // representative whose horizontal coordinates lie in
                    // this chart's ball, built in ascending basis order so
                    // earlier coordinates stay put
                    let mut rep = reduced.clone();
                    for (&p, c) in gens.iter().zip(center) {
                        let shift = &rep.coords[p] - c - signed_frac(&(&rep.coords[p] - c));
                        if !shift.is_zero() {
                            debug_assert!(shift.is_integer());
                            rep = rep.mul(&GroupElement::generator_power(
                                self.schema.clone(),
                                p,
                                -shift,
                            ));
                        }
                    }
                    let t = (d2.to_f64().unwrap()).sqrt() / radius.to_f64().unwrap();
                    let w = bump(t);
                    total += w * w;
                    raw.push(Some((w, self.vertical.phase_of(&rep.coords))));
                }
                if total <= 0.0 {
                    return Err(NilseqError::CoverageGap);
                }
                let scale = total.sqrt();
                let entries: Vec<PhaseEntry> = raw
                    .into_iter()
                    .map(|slot| match slot {
                        None => PhaseEntry::zero(),
                        Some((w, phase)) => PhaseEntry::weighted(w / scale, phase),
                    })
                    .collect();
                Ok(NilcharValue { vector: PhaseVector { entries }, flagged: false })
            }
        }
    }
}

/// Outcome of the equivariance check `F(g_d x) = e(eta(g_d)) F(x)`.
#[derive(Clone, Debug)]
pub struct EquivarianceReport {
    pub trials: usize,
    pub used: usize,
    /// Components whose exact phases disagreed.
    pub phase_mismatches: usize,
    /// Largest weight discrepancy across components.
    pub max_weight_discrepancy: f64,
}

impl EquivarianceReport {
    pub fn pass(&self, tol: f64) -> bool {
        self.phase_mismatches == 0 && self.max_weight_discrepancy <= tol
    }
}

/// Samples random central `g_d` and random `x` and compares `F(g_d x)`
/// against `e(eta(g_d)) F(x)` exactly in phase and to float precision in
/// weight.
pub fn verify_equivariance(spec: &NilcharSpec, trials: usize, seed: u64) -> EquivarianceReport {
    let mut rng = DetRng::new(seed);
    let vert_positions: Vec<usize> = spec.schema.positions_of(&spec.vertical.index).to_vec();
    let mut used = 0usize;
    let mut phase_mismatches = 0usize;
    let mut max_weight = 0f64;
    for _ in 0..trials {
        let mut coords = vec![Rational::zero(); spec.schema.dim()];
        for c in coords.iter_mut() {
            *c = rng.rational(4, 5);
        }
        let x = GroupElement::new(spec.schema.clone(), coords);
        let mut central = vec![Rational::zero(); spec.schema.dim()];
        for &p in &vert_positions {
            central[p] = rng.rational(4, 5);
        }
        let g_d = GroupElement::new(spec.schema.clone(), central);
        let lhs = match spec.eval_at_element(&g_d.mul(&x)) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let rhs_base = match spec.eval_at_element(&x) {
            Ok(v) => v,
            Err(_) => continue,
        };
        if lhs.flagged || rhs_base.flagged {
            continue;
        }
        used += 1;
        let shift = spec.vertical.phase_of(&g_d.coords);
        for (l, r) in lhs.vector.entries.iter().zip(&rhs_base.vector.entries) {
            let expected = PhaseEntry { weight: r.weight.clone(), phase: r.phase.add(&shift) };
            let (wl, wr) = (l.weight.to_f64(), expected.weight.to_f64());
            max_weight = max_weight.max((wl - wr).abs());
            if wl > 0.0 && wr > 0.0 && l.phase != expected.phase {
                phase_mismatches += 1;
            }
        }
    }
    EquivarianceReport { trials, used, phase_mismatches, max_weight_discrepancy: max_weight }
}

// ---------------------------------------------------------------------
// catalog nilcharacters

/// The Heisenberg bracket character: orbit `e2^{beta n} e1^{alpha n}` and
/// vertical frequency `eta(e12^t) = -t`, whose single-chart value is
/// exactly `e({alpha n} beta n)`.
pub fn heisenberg_bracket(
    alpha: &Rational,
    beta: &Rational,
    atlas: SmoothingAtlas,
) -> NilcharSpec {
    let schema = crate::nilgroup::catalog::heisenberg().expect("catalog heisenberg");
    let orbit = PolySeq::from_fn(schema.clone(), 1, PolySeq::degree_downset(&schema, 2), |n| {
        let e2 = GroupElement::generator_power(schema.clone(), 1, beta * crate::scalar::rat_int(n[0]));
        let e1 = GroupElement::generator_power(schema.clone(), 0, alpha * crate::scalar::rat_int(n[0]));
        e2.mul(&e1)
    })
    .expect("linear orbit is polynomial");
    let vertical = VerticalChar::new(
        schema.clone(),
        FiltIndex::Degree(2),
        vec![num_bigint::BigInt::from(-1)],
    );
    NilcharSpec { schema, orbit, vertical, atlas }
}

/// The degree-rank (3,2) bracket character: orbit `e2^{beta n} e1^{alpha
/// n^2}` on the (3,2)-filtered Heisenberg group; its single-chart value
/// is exactly `e({alpha n^2} beta n)`.
pub fn degrank32_bracket(alpha: &Rational, beta: &Rational, atlas: SmoothingAtlas) -> NilcharSpec {
    let schema = crate::nilgroup::catalog::heisenberg_degrank32().expect("catalog degrank32");
    let orbit = PolySeq::from_fn(schema.clone(), 1, PolySeq::degree_downset(&schema, 3), |n| {
        let e2 = GroupElement::generator_power(schema.clone(), 1, beta * crate::scalar::rat_int(n[0]));
        let e1 = GroupElement::generator_power(
            schema.clone(),
            0,
            alpha * crate::scalar::rat_int(n[0] * n[0]),
        );
        e2.mul(&e1)
    })
    .expect("quadratic orbit is polynomial for the (3,2) filtration");
    let vertical = VerticalChar::new(
        schema.clone(),
        FiltIndex::DegreeRank(3, 2),
        vec![num_bigint::BigInt::from(-1)],
    );
    NilcharSpec { schema, orbit, vertical, atlas }
}

/// The two-variable multilinearisation character on the 7-dimensional
/// multidegree group: orbit `a1^{alpha n1} a2^{beta n1} b1^{alpha n2}
/// b2^{beta n2} c12^{-alpha beta n1 n2}` with `eta(c12^t) = -t`.  Its
/// diagonal single-chart value is exactly
/// `e(2 {alpha n} beta n - {alpha n}{beta n})`.
pub fn multilinear_appc(alpha: &Rational, beta: &Rational, atlas: SmoothingAtlas) -> NilcharSpec {
    let schema = crate::nilgroup::catalog::app_c_multidegree().expect("catalog appC");
    let downset = vec![
        FiltIndex::MultiDegree(vec![0, 0]),
        FiltIndex::MultiDegree(vec![0, 1]),
        FiltIndex::MultiDegree(vec![1, 0]),
        FiltIndex::MultiDegree(vec![1, 1]),
    ];
    let orbit = PolySeq::from_fn(schema.clone(), 2, downset, |n| {
        let (n1, n2) = (crate::scalar::rat_int(n[0]), crate::scalar::rat_int(n[1]));
        let mut coords = vec![Rational::zero(); 7];
        coords[0] = alpha * &n1;
        coords[1] = beta * &n1;
        coords[3] = alpha * &n2;
        coords[4] = beta * &n2;
        coords[6] = -(alpha * beta) * &n1 * &n2;
        GroupElement::new(schema.clone(), coords)
    })
    .expect("multilinear orbit is polynomial");
    let vertical = VerticalChar::new(
        schema.clone(),
        FiltIndex::MultiDegree(vec![1, 1]),
        vec![num_bigint::BigInt::from(-1)],
    );
    NilcharSpec { schema, orbit, vertical, atlas }
}

/// The skew-torus demonstration: iterating the Heisenberg linear action
/// whose projection obeys `pi(gt^n xt) = n(n+1)/2 alpha + n beta + gamma`
/// exactly.  The pair realizing this closed form under the `[g, h] =
/// g^{-1} h^{-1} g h` convention is `gt = e1^{-alpha} e2 e12^{alpha +
/// beta}`, `xt = e12^{gamma}`.
pub fn linear_lift_eval(
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
    n: u32,
) -> TorusPoint {
    let schema = crate::nilgroup::catalog::heisenberg().expect("catalog heisenberg");
    let gt = GroupElement::new(schema.clone(), vec![-alpha.clone(), crate::scalar::rat_int(1), alpha + beta]);
    let mut x = GroupElement::new(schema.clone(), vec![Rational::zero(), Rational::zero(), gamma.clone()]);
    for _ in 0..n {
        x = gt.mul(&x);
    }
    // the e2 coordinate is the integer n; reducing into the fundamental
    // domain kills it and leaves the skew coordinate
    debug_assert!(x.coords[1].is_integer());
    let (reduced, _) = x.reduce_mod_lattice();
    TorusPoint::new(reduced.coords[2].clone())
}

/// One walk of the iterated action, reading the skew coordinate at every
/// step: returns `pi(gt^n xt)` for `n = 0..=n_max`.
pub fn linear_lift_orbit(
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
    n_max: u32,
) -> Vec<TorusPoint> {
    let schema = crate::nilgroup::catalog::heisenberg().expect("catalog heisenberg");
    let gt = GroupElement::new(
        schema.clone(),
        vec![-alpha.clone(), crate::scalar::rat_int(1), alpha + beta],
    );
    let mut x = GroupElement::new(
        schema.clone(),
        vec![Rational::zero(), Rational::zero(), gamma.clone()],
    );
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for _ in 0..=n_max {
        let (reduced, _) = x.reduce_mod_lattice();
        out.push(TorusPoint::new(reduced.coords[2].clone()));
        x = gt.mul(&x);
    }
    out
}

/// Closed form of the lift projection.
pub fn linear_lift_closed_form(
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
    n: u32,
) -> TorusPoint {
    let n = crate::scalar::rat_int(n as i64);
    let half = rat_i64(1, 2);
    TorusPoint::new(&n * (&n + crate::scalar::rat_int(1)) * half * alpha + &n * beta + gamma)
}
