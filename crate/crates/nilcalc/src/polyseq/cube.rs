//! Host-Kra cube groups and the membership recursion.
//!
//! `HK^{i_1,...,i_m}(G)` is the subgroup of `G^{2^m}` generated by the
//! upper-face embeddings `iota_omega(g)` with `g in G_{sum_{l in omega}
//! i_l}`.  A cube `(g_1, g_2)` of order m lies in the group iff its front
//! face `g_1` does at order m-1 and the difference face `g_2 g_1^{-1}`
//! does in the filtration shifted by `i_m`; the recursion bottoms out in
//! a coordinate-support check and assembles a generator factorization as
//! the membership certificate.

use crate::nilgroup::{FiltIndex, GroupElement, NilSchema};
use std::sync::Arc;

/// A cube of order m: `2^m` vertices indexed by subset masks (bit `l`
/// set when `l+1` lies in the subset).
#[derive(Clone, Debug)]
pub struct Cube {
    pub schema: Arc<NilSchema>,
    pub degrees: Vec<FiltIndex>,
    pub vertices: Vec<GroupElement>,
}

impl Cube {
    pub fn new(schema: Arc<NilSchema>, degrees: Vec<FiltIndex>, vertices: Vec<GroupElement>) -> Cube {
        assert_eq!(vertices.len(), 1 << degrees.len(), "cube needs 2^m vertices");
        Cube { schema, degrees, vertices }
    }

    pub fn order(&self) -> usize {
        self.degrees.len()
    }
}

/// One generator of the cube group: the element `g` placed on every
/// vertex whose mask contains `mask`.
#[derive(Clone, Debug)]
pub struct CubeGenerator {
    pub mask: u32,
    pub element: GroupElement,
}

#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    /// Ordered generator factorization reproducing the cube when member.
    pub certificate: Vec<CubeGenerator>,
}

/// Decides membership of the cube in `HK^{degrees}(G)` and produces the
/// generator factorization.
pub fn hk_membership(cube: &Cube) -> Membership {
    let shift = FiltIndex::zero(cube.degrees.first().map(|d| d.kind()).unwrap_or(cube.schema.kind));
    match member_rec(&cube.schema, &cube.degrees, &shift, &cube.vertices) {
        Some(certificate) => Membership { member: true, certificate },
        None => Membership { member: false, certificate: Vec::new() },
    }
}

fn member_rec(
    schema: &Arc<NilSchema>,
    degrees: &[FiltIndex],
    shift: &FiltIndex,
    vertices: &[GroupElement],
) -> Option<Vec<CubeGenerator>> {
    match degrees.split_last() {
        None => {
            let g = &vertices[0];
            let allowed = schema.positions_of(shift);
            if g.support().iter().all(|p| allowed.contains(p)) {
                if g.is_identity() {
                    Some(Vec::new())
                } else {
                    Some(vec![CubeGenerator { mask: 0, element: g.clone() }])
                }
            } else {
                None
            }
        }
        Some((last, front_degrees)) => {
            let half = vertices.len() / 2;
            let front = &vertices[..half];
            let back = &vertices[half..];
            let diff: Vec<GroupElement> = back
                .iter()
                .zip(front)
                .map(|(b, f)| b.mul(&f.inverse()))
                .collect();
            let front_cert = member_rec(schema, front_degrees, shift, front)?;
            let diff_cert = member_rec(schema, front_degrees, &shift.add(last), &diff)?;
            let top_bit = 1u32 << front_degrees.len();
            let mut certificate: Vec<CubeGenerator> = diff_cert
                .into_iter()
                .map(|g| CubeGenerator { mask: g.mask | top_bit, element: g.element })
                .collect();
            certificate.extend(front_cert);
            Some(certificate)
        }
    }
}

/// Multiplies a generator factorization back out; used to check
/// certificates independently of the recursion.
pub fn expand_certificate(
    schema: &Arc<NilSchema>,
    order: usize,
    certificate: &[CubeGenerator],
) -> Vec<GroupElement> {
    let mut vertices = vec![GroupElement::identity(schema.clone()); 1 << order];
    for gen in certificate {
        for (mask, v) in vertices.iter_mut().enumerate() {
            if mask as u32 & gen.mask == gen.mask {
                *v = v.mul(&gen.element);
            }
        }
    }
    vertices
}

/// Certificate generators must sit in the filtration group of their face.
pub fn certificate_degrees_ok(cube: &Cube, certificate: &[CubeGenerator]) -> bool {
    certificate.iter().all(|gen| {
        let mut idx = FiltIndex::zero(cube.schema.kind);
        for (l, d) in cube.degrees.iter().enumerate() {
            if gen.mask & (1 << l) != 0 {
                idx = idx.add(d);
            }
        }
        let allowed = cube.schema.positions_of(&idx);
        gen.element.support().iter().all(|p| allowed.contains(p))
    })
}
