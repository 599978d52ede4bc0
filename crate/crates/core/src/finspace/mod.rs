//! Finite spaces as preorders, continuous maps, and the constructions built
//! from them.

mod construct;
mod enumerate;
mod map;
pub mod opens;

use std::sync::Arc;

use crate::budget::Limits;
use crate::error::{Error, Result};
use crate::pointset::PointSet;

pub use construct::{ConfigurationSpace, Product, Pullback, Subspace};
pub use enumerate::{enumerate_maps, MapIter, MapSearch, VarOrder};
pub use map::CMap;

/// Shared handle to an immutable space.
pub type Space = Arc<FinSpace>;

/// A finite topological space, stored as its specialization preorder.
///
/// `up[x]` is the minimal open set `U_x = { y : reach(x, y) }` and
/// `down[y] = { x : reach(x, y) }` is the closure of `y`.
#[derive(Clone, Debug)]
pub struct FinSpace {
    up: Vec<PointSet>,
    down: Vec<PointSet>,
    labels: Vec<Option<String>>,
}

impl PartialEq for FinSpace {
    fn eq(&self, other: &Self) -> bool {
        self.up == other.up
    }
}

impl Eq for FinSpace {}

impl FinSpace {
    /// Space on `n` points whose reach relation is the reflexive-transitive
    /// closure of `pairs`.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut up: Vec<PointSet> = (0..n).map(|x| PointSet::singleton(n, x)).collect();
        for &(a, b) in pairs {
            for i in [a, b] {
                if i >= n {
                    return Err(Error::OutOfRange { index: i, size: n });
                }
            }
            up[a].insert(b);
        }
        // Warshall over bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        Ok(FinSpace::from_up_unchecked(up))
    }

    /// Space from explicit minimal open sets; rejects non-preorders.
    pub fn from_up_sets(up: Vec<PointSet>) -> Result<Self> {
        let n = up.len();
        for (x, ux) in up.iter().enumerate() {
            if ux.universe() != n {
                return Err(Error::NotPreorder(format!(
                    "row {x} has universe {} instead of {n}",
                    ux.universe()
                )));
            }
            if !ux.contains(x) {
                return Err(Error::NotPreorder(format!("reach({x}, {x}) is missing")));
            }
            for y in ux.iter() {
                if !up[y].is_subset(ux) {
                    let z = up[y].difference(ux).first().unwrap_or(y);
                    return Err(Error::NotPreorder(format!(
                        "reach({x}, {y}) and reach({y}, {z}) hold but reach({x}, {z}) does not"
                    )));
                }
            }
        }
        Ok(FinSpace::from_up_unchecked(up))
    }

    pub(crate) fn from_up_unchecked(up: Vec<PointSet>) -> Self {
        let n = up.len();
        let mut down: Vec<PointSet> = (0..n).map(|_| PointSet::empty(n)).collect();
        for (x, ux) in up.iter().enumerate() {
            for y in ux.iter() {
                down[y].insert(x);
            }
        }
        FinSpace {
            up,
            down,
            labels: vec![None; n],
        }
    }

    pub fn empty() -> Self {
        FinSpace::from_up_unchecked(Vec::new())
    }

    pub fn point() -> Self {
        FinSpace::discrete(1)
    }

    pub fn discrete(n: usize) -> Self {
        FinSpace::from_up_unchecked((0..n).map(|x| PointSet::singleton(n, x)).collect())
    }

    pub fn indiscrete(n: usize) -> Self {
        FinSpace::from_up_unchecked((0..n).map(|_| PointSet::full(n)).collect())
    }

    /// Two points with `{0}` open and `U_1 = {0, 1}`.
    pub fn sierpinski() -> Self {
        FinSpace::new(2, &[(1, 0)]).expect("static pairs are in range")
    }

    /// The four-point model of the circle: two closed points 0 and 1 below
    /// two open points 2 and 3.
    pub fn pseudocircle() -> Self {
        FinSpace::new(4, &[(2, 0), (2, 1), (3, 0), (3, 1)]).expect("static pairs are in range")
    }

    /// Adds a point reaching every other point; the result is contractible.
    pub fn cone(&self) -> Self {
        let n = self.n() + 1;
        let mut up: Vec<PointSet> = self
            .up
            .iter()
            .map(|u| PointSet::from_indices(n, u.iter()))
            .collect();
        up.push(PointSet::full(n));
        FinSpace::from_up_unchecked(up)
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::Mismatch(format!(
                "{} labels for {} points",
                labels.len(),
                self.n()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn into_space(self) -> Space {
        Arc::new(self)
    }

    pub fn n(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn label(&self, x: usize) -> Option<&str> {
        self.labels.get(x).and_then(|l| l.as_deref())
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn reach(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// `U_x` as a bare point set.
    pub fn up_set(&self, x: usize) -> &PointSet {
        &self.up[x]
    }

    /// Points whose minimal open set contains `y`.
    pub fn down_set(&self, y: usize) -> &PointSet {
        &self.down[y]
    }

    pub fn check_point(&self, x: usize) -> Result<()> {
        if x < self.n() {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                index: x,
                size: self.n(),
            })
        }
    }

    pub fn all_points(&self) -> PointSet {
        PointSet::full(self.n())
    }

    /// Strict reach pairs `(x, y)` with `x != y`, in lexicographic order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|x| {
                self.up[x]
                    .iter()
                    .filter(move |&y| y != x)
                    .map(move |y| (x, y))
            })
            .collect()
    }

    /// Finite Hausdorff spaces are exactly the discrete ones.
    pub fn is_hausdorff(&self) -> bool {
        self.up.iter().all(|u| u.len() == 1)
    }

    /// No two distinct points reach each other.
    pub fn is_t0(&self) -> bool {
        self.strict_pairs().iter().all(|&(x, y)| !self.reach(y, x))
    }

    pub fn is_open(&self, members: &PointSet) -> bool {
        self.first_open_violation(members).is_none()
    }

    fn first_open_violation(&self, members: &PointSet) -> Option<(usize, usize)> {
        members
            .iter()
            .find_map(|x| self.up[x].difference(members).first().map(|m| (x, m)))
    }

    pub fn minimal_open(self: &Arc<Self>, x: usize) -> Result<OpenSet> {
        self.check_point(x)?;
        Ok(OpenSet {
            space: Arc::clone(self),
            members: self.up[x].clone(),
        })
    }

    /// Every open set, ordered by membership bitmask read as an integer.
    pub fn all_open_sets(self: &Arc<Self>, limits: &Limits) -> Result<Vec<OpenSet>> {
        let n = self.n();
        if n > limits.max_points || n >= 64 {
            return Err(Error::ResourceLimit {
                what: "open-set enumeration",
                size: n,
                limit: limits.max_points.min(63),
            });
        }
        let up_masks: Vec<u64> = self
            .up
            .iter()
            .map(|u| u.iter().fold(0u64, |m, y| m | 1 << y))
            .collect();
        Ok((0..1u64 << n)
            .filter(|&mask| (0..n).all(|x| mask >> x & 1 == 0 || up_masks[x] & !mask == 0))
            .map(|mask| OpenSet {
                space: Arc::clone(self),
                members: PointSet::from_mask(n, mask),
            })
            .collect())
    }

    /// Connected components, each as a point set, ordered by least member.
    pub fn components(&self) -> Vec<PointSet> {
        let n = self.n();
        let mut seen = PointSet::empty(n);
        let mut out = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = PointSet::singleton(n, start);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for y in self.up[x].union(&self.down[x]).iter() {
                    if !comp.contains(y) {
                        comp.insert(y);
                        stack.push(y);
                    }
                }
            }
            seen.union_with(&comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Whether `self` and `other` have the same reach relation after some
    /// relabelling; brute force over permutations.
    pub fn is_isomorphic(&self, other: &FinSpace) -> bool {
        if self.n() != other.n() {
            return false;
        }
        let count = |s: &FinSpace| {
            let mut v: Vec<(usize, usize)> = (0..s.n())
                .map(|x| (s.up[x].len(), s.down[x].len()))
                .collect();
            v.sort_unstable();
            v
        };
        if count(self) != count(other) {
            return false;
        }
        let n = self.n();
        let mut perm: Vec<usize> = Vec::with_capacity(n);
        let mut used = vec![false; n];
        self.iso_extend(other, &mut perm, &mut used)
    }

    fn iso_extend(&self, other: &FinSpace, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = perm.len();
        if i == self.n() {
            return true;
        }
        for j in 0..self.n() {
            if used[j] {
                continue;
            }
            let consistent = (0..i).all(|a| {
                self.reach(a, i) == other.reach(perm[a], j)
                    && self.reach(i, a) == other.reach(j, perm[a])
            });
            if consistent {
                perm.push(j);
                used[j] = true;
                if self.iso_extend(other, perm, used) {
                    return true;
                }
                used[j] = false;
                perm.pop();
            }
        }
        false
    }
}

/// A reach-closed subset of a space's points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenSet {
    space: Space,
    members: PointSet,
}

impl OpenSet {
    pub fn new(space: &Space, members: PointSet) -> Result<Self> {
        if members.universe() != space.n() {
            return Err(Error::Mismatch(format!(
                "point set over {} points used in a space with {}",
                members.universe(),
                space.n()
            )));
        }
        if let Some((point, missing)) = space.first_open_violation(&members) {
            return Err(Error::NotOpen { point, missing });
        }
        Ok(OpenSet {
            space: Arc::clone(space),
            members,
        })
    }

    pub(crate) fn new_unchecked(space: &Space, members: PointSet) -> Self {
        OpenSet {
            space: Arc::clone(space),
            members,
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn members(&self) -> &PointSet {
        &self.members
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.to_vec()
    }
}

pub(crate) fn same_space(a: &Space, b: &Space) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: FinSpace) -> Space {
        s.into_space()
    }

    #[test]
    fn make_space_examples() {
        let one = FinSpace::new(1, &[]).unwrap();
        assert!(one.reach(0, 0));
        assert_eq!(one.n(), 1);

        let d2 = FinSpace::new(2, &[]).unwrap();
        assert!(d2.is_hausdorff());

        let s = FinSpace::new(2, &[(1, 0)]).unwrap();
        assert_eq!(s.up_set(0).to_vec(), vec![0]);
        assert_eq!(s.up_set(1).to_vec(), vec![0, 1]);
        assert!(!s.is_hausdorff());
    }

    #[test]
    fn closure_is_transitive() {
        let s = FinSpace::new(3, &[(2, 1), (1, 0)]).unwrap();
        assert!(s.reach(2, 0));
        assert!(!s.reach(0, 2));
        assert_eq!(s.down_set(0).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn out_of_range_pair() {
        assert!(matches!(
            FinSpace::new(2, &[(0, 2)]),
            Err(Error::OutOfRange { index: 2, size: 2 })
        ));
    }

    #[test]
    fn from_up_sets_rejects_non_preorders() {
        let bad = vec![PointSet::from_indices(2, [0, 1]), PointSet::empty(2)];
        assert!(matches!(
            FinSpace::from_up_sets(bad),
            Err(Error::NotPreorder(_))
        ));
        let nontrans = vec![
            PointSet::from_indices(3, [0, 1]),
            PointSet::from_indices(3, [1, 2]),
            PointSet::from_indices(3, [2]),
        ];
        assert!(FinSpace::from_up_sets(nontrans).is_err());
    }

    #[test]
    fn hausdorff_examples() {
        assert!(FinSpace::discrete(2).is_hausdorff());
        assert!(!FinSpace::sierpinski().is_hausdorff());
        assert!(FinSpace::point().is_hausdorff());
    }

    #[test]
    fn minimal_open_examples() {
        let d = sp(FinSpace::discrete(3));
        assert_eq!(d.minimal_open(1).unwrap().to_vec(), vec![1]);
        let s = sp(FinSpace::sierpinski());
        assert_eq!(s.minimal_open(1).unwrap().to_vec(), vec![0, 1]);
        assert_eq!(s.minimal_open(0).unwrap().to_vec(), vec![0]);
        assert!(s.minimal_open(2).is_err());
    }

    #[test]
    fn all_open_sets_examples() {
        let lim = Limits::default();
        let lists = |s: FinSpace| -> Vec<Vec<usize>> {
            sp(s)
                .all_open_sets(&lim)
                .unwrap()
                .iter()
                .map(OpenSet::to_vec)
                .collect()
        };
        assert_eq!(lists(FinSpace::point()), vec![vec![], vec![0]]);
        assert_eq!(
            lists(FinSpace::sierpinski()),
            vec![vec![], vec![0], vec![0, 1]]
        );
        assert_eq!(
            lists(FinSpace::discrete(2)),
            vec![vec![], vec![0], vec![1], vec![0, 1]]
        );
        // Down-closed subsets of {0,1} < {2,3}: four inside {0,1}, then three more.
        assert_eq!(lists(FinSpace::pseudocircle()).len(), 7);
    }

    #[test]
    fn all_open_sets_enforces_limit() {
        let lim = Limits {
            max_points: 3,
            ..Limits::default()
        };
        assert!(matches!(
            sp(FinSpace::discrete(4)).all_open_sets(&lim),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn open_set_validation() {
        let s = sp(FinSpace::sierpinski());
        assert!(OpenSet::new(&s, PointSet::from_indices(2, [0])).is_ok());
        assert!(matches!(
            OpenSet::new(&s, PointSet::from_indices(2, [1])),
            Err(Error::NotOpen {
                point: 1,
                missing: 0
            })
        ));
    }

    #[test]
    fn components_and_isomorphism() {
        let c = FinSpace::pseudocircle();
        assert!(c.is_connected());
        assert_eq!(FinSpace::discrete(3).components().len(), 3);
        let s1 = FinSpace::new(2, &[(1, 0)]).unwrap();
        let s2 = FinSpace::new(2, &[(0, 1)]).unwrap();
        assert!(s1.is_isomorphic(&s2));
        assert!(!s1.is_isomorphic(&FinSpace::discrete(2)));
        assert!(FinSpace::point().cone().is_isomorphic(&s1));
    }
}
