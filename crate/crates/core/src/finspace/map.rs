use std::sync::Arc;

use super::{same_space, Space};
use crate::error::{Error, Result};
use crate::pointset::PointSet;

/// A continuous map between finite spaces.
///
/// Continuity for finite spaces is preservation of the reach relation, and
/// every public constructor checks it.
#[derive(Clone, Debug)]
pub struct CMap {
    source: Space,
    target: Space,
    assignment: Vec<usize>,
}

impl PartialEq for CMap {
    fn eq(&self, other: &Self) -> bool {
        self.assignment == other.assignment
            && same_space(&self.source, &other.source)
            && same_space(&self.target, &other.target)
    }
}

impl Eq for CMap {}

impl CMap {
    pub fn new(source: &Space, target: &Space, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.n() {
            return Err(Error::AssignmentLength {
                expected: source.n(),
                got: assignment.len(),
            });
        }
        for &y in &assignment {
            target.check_point(y)?;
        }
        for x in 0..source.n() {
            let fx = assignment[x];
            for x2 in source.up_set(x).iter() {
                let fx2 = assignment[x2];
                if !target.reach(fx, fx2) {
                    return Err(Error::Discontinuous { x, x2, fx, fx2 });
                }
            }
        }
        Ok(CMap::new_unchecked(source, target, assignment))
    }

    pub(crate) fn new_unchecked(source: &Space, target: &Space, assignment: Vec<usize>) -> Self {
        CMap {
            source: Arc::clone(source),
            target: Arc::clone(target),
            assignment,
        }
    }

    pub fn identity(space: &Space) -> Self {
        CMap::new_unchecked(space, space, (0..space.n()).collect())
    }

    pub fn constant(source: &Space, target: &Space, y: usize) -> Result<Self> {
        target.check_point(y)?;
        Ok(CMap::new_unchecked(source, target, vec![y; source.n()]))
    }

    pub fn source(&self) -> &Space {
        &self.source
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &CMap) -> Result<CMap> {
        if !same_space(&inner.target, &self.source) {
            return Err(Error::Mismatch(
                "inner map's target is not the outer map's source".into(),
            ));
        }
        let assignment = inner
            .assignment
            .iter()
            .map(|&y| self.assignment[y])
            .collect();
        Ok(CMap::new_unchecked(&inner.source, &self.target, assignment))
    }

    /// Same assignment, re-homed onto structurally equal endpoint spaces.
    pub fn rehome(&self, source: &Space, target: &Space) -> Result<CMap> {
        if !same_space(&self.source, source) || !same_space(&self.target, target) {
            return Err(Error::Mismatch("rehome onto different spaces".into()));
        }
        Ok(CMap::new_unchecked(source, target, self.assignment.clone()))
    }

    pub fn is_constant(&self) -> bool {
        self.assignment.windows(2).all(|w| w[0] == w[1])
    }

    pub fn image(&self) -> PointSet {
        PointSet::from_indices(self.target.n(), self.assignment.iter().copied())
    }

    /// Preimages of every target point, indexed by target point.
    pub fn fibers(&self) -> Vec<PointSet> {
        let mut out = vec![PointSet::empty(self.source.n()); self.target.n()];
        for (x, &y) in self.assignment.iter().enumerate() {
            out[y].insert(x);
        }
        out
    }

    /// Whether `self(x) != other(x)` for every `x`.
    pub fn coincidence_free_with(&self, other: &CMap) -> bool {
        self.assignment
            .iter()
            .zip(&other.assignment)
            .all(|(a, b)| a != b)
    }

    /// Whether every connected component of the target meets the image.
    pub fn meets_every_component(&self) -> bool {
        let image = self.image();
        self.target
            .components()
            .iter()
            .all(|c| !c.is_disjoint(&image))
    }

    pub fn same_endpoints(&self, other: &CMap) -> bool {
        same_space(&self.source, &other.source) && same_space(&self.target, &other.target)
    }
}
