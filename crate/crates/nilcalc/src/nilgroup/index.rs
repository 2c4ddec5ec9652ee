//! Filtration indices: degree, multidegree, and degree-rank orderings.
//!
//! Addition is componentwise; the order is total for degree and
//! degree-rank (lexicographic on the latter) and the product order for
//! multidegree.  Degree-rank indices follow the convention
//! `G_{(d,r)} = G_{(d+1,0)}`.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltIndex {
    Degree(u32),
    MultiDegree(Vec<u32>),
    DegreeRank(u32, u32),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IndexKind {
    Degree,
    MultiDegree(usize),
    DegreeRank,
}

impl FiltIndex {
    pub fn kind(&self) -> IndexKind {
        match self {
            FiltIndex::Degree(_) => IndexKind::Degree,
            FiltIndex::MultiDegree(v) => IndexKind::MultiDegree(v.len()),
            FiltIndex::DegreeRank(_, _) => IndexKind::DegreeRank,
        }
    }

    pub fn zero(kind: IndexKind) -> FiltIndex {
        match kind {
            IndexKind::Degree => FiltIndex::Degree(0),
            IndexKind::MultiDegree(k) => FiltIndex::MultiDegree(vec![0; k]),
            IndexKind::DegreeRank => FiltIndex::DegreeRank(0, 0),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FiltIndex::Degree(d) => *d == 0,
            FiltIndex::MultiDegree(v) => v.iter().all(|&x| x == 0),
            FiltIndex::DegreeRank(d, r) => *d == 0 && *r == 0,
        }
    }

    /// Applies the convention `(d, r) = (d+1, 0)` for `r > d`.
    pub fn normalized(&self) -> FiltIndex {
        match self {
            FiltIndex::DegreeRank(d, r) if r > d => FiltIndex::DegreeRank(d + 1, 0),
            other => other.clone(),
        }
    }

    pub fn add(&self, other: &FiltIndex) -> FiltIndex {
        match (self, other) {
            (FiltIndex::Degree(a), FiltIndex::Degree(b)) => FiltIndex::Degree(a + b),
            (FiltIndex::MultiDegree(a), FiltIndex::MultiDegree(b)) if a.len() == b.len() => {
                FiltIndex::MultiDegree(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (FiltIndex::DegreeRank(d1, r1), FiltIndex::DegreeRank(d2, r2)) => {
                FiltIndex::DegreeRank(d1 + d2, r1 + r2).normalized()
            }
            _ => panic!("filtration index kind mismatch: {self:?} + {other:?}"),
        }
    }

    /// The partial order of the filtration ordering.
    pub fn leq(&self, other: &FiltIndex) -> bool {
        match (self, other) {
            (FiltIndex::Degree(a), FiltIndex::Degree(b)) => a <= b,
            (FiltIndex::MultiDegree(a), FiltIndex::MultiDegree(b)) if a.len() == b.len() => {
                a.iter().zip(b).all(|(x, y)| x <= y)
            }
            (FiltIndex::DegreeRank(..), FiltIndex::DegreeRank(..)) => {
                self.total_cmp(other) != Ordering::Greater
            }
            _ => panic!("filtration index kind mismatch: {self:?} vs {other:?}"),
        }
    }

    /// Total degree: the grade used by the graded-lexicographic completion.
    pub fn grade(&self) -> u32 {
        match self {
            FiltIndex::Degree(d) => *d,
            FiltIndex::MultiDegree(v) => v.iter().sum(),
            FiltIndex::DegreeRank(d, _) => *d,
        }
    }

    /// Fixed total order extending the partial order: the natural order
    /// for degree, lexicographic for degree-rank, graded-lexicographic
    /// for multidegree.
    pub fn total_cmp(&self, other: &FiltIndex) -> Ordering {
        match (self, other) {
            (FiltIndex::Degree(a), FiltIndex::Degree(b)) => a.cmp(b),
            (FiltIndex::MultiDegree(a), FiltIndex::MultiDegree(b)) if a.len() == b.len() => {
                let ga: u32 = a.iter().sum();
                let gb: u32 = b.iter().sum();
                ga.cmp(&gb).then_with(|| a.cmp(b))
            }
            (FiltIndex::DegreeRank(d1, r1), FiltIndex::DegreeRank(d2, r2)) => {
                d1.cmp(d2).then(r1.cmp(r2))
            }
            _ => panic!("filtration index kind mismatch: {self:?} vs {other:?}"),
        }
    }

    /// All indices weakly below `self` in the partial order (used to check
    /// that a degree set is a downset).
    pub fn predecessors(&self) -> Vec<FiltIndex> {
        match self {
            FiltIndex::Degree(d) => (0..=*d).map(FiltIndex::Degree).collect(),
            FiltIndex::MultiDegree(v) => {
                let mut out = vec![vec![]];
                for &c in v {
                    let mut next = Vec::new();
                    for prefix in &out {
                        for x in 0..=c {
                            let mut p: Vec<u32> = prefix.clone();
                            p.push(x);
                            next.push(p);
                        }
                    }
                    out = next;
                }
                out.into_iter().map(FiltIndex::MultiDegree).collect()
            }
            FiltIndex::DegreeRank(d, r) => {
                let mut out = Vec::new();
                for dd in 0..=*d {
                    let top = if dd < *d { dd } else { *r };
                    for rr in 0..=top.min(dd) {
                        out.push(FiltIndex::DegreeRank(dd, rr));
                    }
                }
                out
            }
        }
    }
}

impl PartialOrd for FiltIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiltIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        fn rank(i: &FiltIndex) -> u8 {
            match i {
                FiltIndex::Degree(_) => 0,
                FiltIndex::MultiDegree(_) => 1,
                FiltIndex::DegreeRank(..) => 2,
            }
        }
        if self.kind() == other.kind() {
            self.total_cmp(other)
        } else {
            rank(self).cmp(&rank(other)).then_with(|| match (self, other) {
                (FiltIndex::MultiDegree(a), FiltIndex::MultiDegree(b)) => {
                    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
                }
                _ => Ordering::Equal,
            })
        }
    }
}

impl fmt::Debug for FiltIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltIndex::Degree(d) => write!(f, "deg {d}"),
            FiltIndex::MultiDegree(v) => write!(f, "mdeg {v:?}"),
            FiltIndex::DegreeRank(d, r) => write!(f, "dr ({d},{r})"),
        }
    }
}

impl fmt::Display for FiltIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_rank_convention() {
        assert_eq!(
            FiltIndex::DegreeRank(1, 2).normalized(),
            FiltIndex::DegreeRank(2, 0)
        );
        // (1,0)+(2,0) = (3,0)
        assert_eq!(
            FiltIndex::DegreeRank(1, 0).add(&FiltIndex::DegreeRank(2, 0)),
            FiltIndex::DegreeRank(3, 0)
        );
    }

    #[test]
    fn multidegree_partial_order() {
        let a = FiltIndex::MultiDegree(vec![1, 0]);
        let b = FiltIndex::MultiDegree(vec![0, 1]);
        let top = FiltIndex::MultiDegree(vec![1, 1]);
        assert!(!a.leq(&b) && !b.leq(&a));
        assert!(a.leq(&top) && b.leq(&top));
        assert_eq!(a.add(&b), top);
        // graded-lex tiebreak
        assert_eq!(b.total_cmp(&a), Ordering::Less);
    }

    #[test]
    fn degree_rank_initial_segment() {
        let preds = FiltIndex::DegreeRank(2, 1).predecessors();
        // (0,0),(1,0),(1,1),(2,0),(2,1)
        assert_eq!(preds.len(), 5);
        assert!(preds.contains(&FiltIndex::DegreeRank(1, 1)));
        assert!(!preds.contains(&FiltIndex::DegreeRank(2, 2)));
    }

    #[test]
    fn addition_is_commutative() {
        let mut rng = crate::rng::DetRng::new(9);
        for _ in 0..200 {
            let a = FiltIndex::MultiDegree(vec![
                rng.below(4) as u32,
                rng.below(4) as u32,
                rng.below(4) as u32,
            ]);
            let b = FiltIndex::MultiDegree(vec![
                rng.below(4) as u32,
                rng.below(4) as u32,
                rng.below(4) as u32,
            ]);
            assert_eq!(a.add(&b), b.add(&a));
            assert!(FiltIndex::zero(a.kind()).leq(&a));
        }
    }
}
