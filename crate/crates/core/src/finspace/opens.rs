//! Search for the maximal open sets satisfying a property that is inherited
//! by open subsets (local sections, lifts, nullhomotopic inclusions).

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use super::FinSpace;
use crate::budget::Budget;
use crate::error::Result;
use crate::pointset::PointSet;

/// Result of [`maximal_hereditary_opens`].
#[derive(Clone, Debug)]
pub struct MaximalOpens<W> {
    /// Maximal qualifying opens with the witness the test produced.
    pub sets: Vec<(PointSet, W)>,
    /// Points lying in no qualifying open.
    pub uncoverable: PointSet,
}

struct Key(PointSet);

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for Key {}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .len()
            .cmp(&self.0.len())
            .then_with(|| self.0.cmp_mask(&other.0))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finds every maximal nonempty open `U` with `test(U) = Some(_)`.
///
/// `test` must be hereditary: if it accepts `U` it accepts every open subset.
/// Points whose minimal open set fails cannot lie in any accepted open, so
/// they and everything reaching them are cut first; the remaining lattice is
/// descended largest-first, one up-closed chunk at a time.
pub fn maximal_hereditary_opens<W, F>(
    space: &FinSpace,
    budget: &Budget,
    mut test: F,
) -> Result<MaximalOpens<W>>
where
    F: FnMut(&PointSet) -> Result<Option<W>>,
{
    let n = space.n();
    let mut root = PointSet::full(n);
    for x in 0..n {
        budget.spend(1)?;
        if test(space.up_set(x))?.is_none() {
            root.difference_with(space.down_set(x));
        }
    }
    let uncoverable = space.all_points().difference(&root);

    let mut sets: Vec<(PointSet, W)> = Vec::new();
    let mut queue = BTreeSet::new();
    let mut seen = HashSet::new();
    if !root.is_empty() {
        seen.insert(root.clone());
        queue.insert(Key(root));
    }
    while let Some(Key(v)) = queue.pop_first() {
        if sets.iter().any(|(s, _)| v.is_subset(s)) {
            continue;
        }
        budget.spend(1)?;
        if let Some(w) = test(&v)? {
            sets.push((v, w));
            continue;
        }
        for x in v.iter() {
            let mut child = v.clone();
            child.difference_with(space.down_set(x));
            if !child.is_empty() && seen.insert(child.clone()) {
                queue.insert(Key(child));
            }
        }
    }
    Ok(MaximalOpens { sets, uncoverable })
}
