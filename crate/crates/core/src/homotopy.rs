//! Homotopy of maps between finite spaces.
//!
//! Two maps are homotopic exactly when a fence joins them: a chain of
//! continuous maps in which consecutive maps are pointwise comparable in the
//! reach order. This module searches that comparability graph directly and,
//! independently, computes cores by removing beat points.

use std::collections::HashMap;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::finspace::opens::maximal_hereditary_opens;
use crate::finspace::{CMap, FinSpace, MapSearch, OpenSet, Space, Subspace};
use crate::pointset::PointSet;
use crate::setcover::{min_cover, Cover};

/// Direction of one fence step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// Next map is pointwise in the minimal open set of the current one.
    Below,
    /// Next map is pointwise above the current one.
    Above,
}

/// Pointwise comparison of two maps with a common target.
pub fn compare(a: &CMap, b: &CMap) -> Option<Step> {
    let t = a.target();
    let n = a.assignment().len();
    if (0..n).all(|x| t.reach(a.apply(x), b.apply(x))) {
        Some(Step::Below)
    } else if (0..n).all(|x| t.reach(b.apply(x), a.apply(x))) {
        Some(Step::Above)
    } else {
        None
    }
}

/// A chain of maps witnessing a homotopy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fence {
    maps: Vec<CMap>,
}

impl Fence {
    pub fn new(maps: Vec<CMap>) -> Result<Self> {
        let fence = Fence { maps };
        fence.validate()?;
        Ok(fence)
    }

    pub fn maps(&self) -> &[CMap] {
        &self.maps
    }

    /// Number of comparability steps.
    pub fn len(&self) -> usize {
        self.maps.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> &CMap {
        &self.maps[0]
    }

    pub fn end(&self) -> &CMap {
        self.maps.last().expect("fences hold at least one map")
    }

    /// Re-checks continuity of every map and comparability of every step.
    pub fn validate(&self) -> Result<()> {
        let first = self
            .maps
            .first()
            .ok_or_else(|| Error::Mismatch("a fence needs at least one map".into()))?;
        for m in &self.maps {
            if !m.same_endpoints(first) {
                return Err(Error::Mismatch(
                    "fence maps have different endpoints".into(),
                ));
            }
            CMap::new(m.source(), m.target(), m.assignment().to_vec())?;
        }
        for (i, w) in self.maps.windows(2).enumerate() {
            if compare(&w[0], &w[1]).is_none() {
                return Err(Error::Mismatch(format!(
                    "fence step {i} is not pointwise comparable"
                )));
            }
        }
        Ok(())
    }
}

/// Maps pointwise below or above `h`, lexicographically, below first.
fn neighbors(h: &CMap, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let t = h.target();
    let below: Vec<PointSet> = h
        .assignment()
        .iter()
        .map(|&y| t.up_set(y).clone())
        .collect();
    let above: Vec<PointSet> = h
        .assignment()
        .iter()
        .map(|&y| t.down_set(y).clone())
        .collect();
    let mut out = Vec::new();
    for allowed in [below, above] {
        for m in MapSearch::new(h.source(), t)
            .allowed(allowed)
            .iter(budget)?
        {
            let m = m?;
            if m.assignment() != h.assignment() {
                out.push(m.assignment().to_vec());
            }
        }
    }
    Ok(out)
}

struct Bfs {
    nodes: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
}

impl Bfs {
    fn path_to(&self, mut i: usize, start: &CMap) -> Fence {
        let mut idx = vec![i];
        while let Some(p) = self.parent[i] {
            idx.push(p);
            i = p;
        }
        idx.reverse();
        Fence {
            maps: idx
                .into_iter()
                .map(|j| CMap::new_unchecked(start.source(), start.target(), self.nodes[j].clone()))
                .collect(),
        }
    }
}

/// Breadth-first search of the homotopy class of `start`, stopping at the
/// first map accepted by `goal`. Each expanded map costs one budget node on
/// top of the enumeration nodes.
fn search_class<F>(start: &CMap, budget: &Budget, mut goal: F) -> Result<(Bfs, Option<usize>)>
where
    F: FnMut(&[usize]) -> Result<bool>,
{
    let mut bfs = Bfs {
        nodes: vec![start.assignment().to_vec()],
        parent: vec![None],
    };
    if goal(start.assignment())? {
        return Ok((bfs, Some(0)));
    }
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    index.insert(start.assignment().to_vec(), 0);
    let mut head = 0;
    while head < bfs.nodes.len() {
        budget.spend(1)?;
        let h = CMap::new_unchecked(start.source(), start.target(), bfs.nodes[head].clone());
        for nb in neighbors(&h, budget)? {
            if index.contains_key(&nb) {
                continue;
            }
            let i = bfs.nodes.len();
            index.insert(nb.clone(), i);
            bfs.nodes.push(nb);
            bfs.parent.push(Some(head));
            if goal(&bfs.nodes[i])? {
                return Ok((bfs, Some(i)));
            }
        }
        head += 1;
    }
    Ok((bfs, None))
}

/// A fence from `f` to `g` when one exists.
pub fn homotopic(f: &CMap, g: &CMap, budget: &Budget) -> Result<Option<Fence>> {
    if !f.same_endpoints(g) {
        return Err(Error::Mismatch(
            "homotopy between maps with different endpoints".into(),
        ));
    }
    let (bfs, hit) = search_class(f, budget, |a| Ok(a == g.assignment()))?;
    Ok(hit.map(|i| bfs.path_to(i, f)))
}

/// Every map homotopic to `f`, in breadth-first order from `f`.
pub fn homotopy_class(f: &CMap, budget: &Budget) -> Result<Vec<CMap>> {
    let (bfs, _) = search_class(f, budget, |_| Ok(false))?;
    Ok(bfs
        .nodes
        .into_iter()
        .map(|a| CMap::new_unchecked(f.source(), f.target(), a))
        .collect())
}

/// Searches the class of `start` for a map accepted by `goal`, returning the
/// fence to it.
pub fn find_in_class<F>(start: &CMap, budget: &Budget, goal: F) -> Result<Option<Fence>>
where
    F: FnMut(&[usize]) -> Result<bool>,
{
    let (bfs, hit) = search_class(start, budget, goal)?;
    Ok(hit.map(|i| bfs.path_to(i, start)))
}

/// A fence from `f` to a constant map, if `f` is nullhomotopic.
pub fn nullhomotopy(f: &CMap, budget: &Budget) -> Result<Option<Fence>> {
    find_in_class(f, budget, |a| Ok(a.windows(2).all(|w| w[0] == w[1])))
}

/// Whether `incl` (typically the inclusion of an open subspace) is homotopic
/// to a constant map.
pub fn is_nullhomotopic_in(incl: &CMap, budget: &Budget) -> Result<bool> {
    Ok(nullhomotopy(incl, budget)?.is_some())
}

/// The beat-point core of a space with its retraction data.
#[derive(Clone, Debug)]
pub struct Core {
    pub space: Space,
    pub inclusion: CMap,
    pub retraction: CMap,
    /// Removed points in removal order.
    pub removed: Vec<usize>,
}

fn beat_target(space: &FinSpace, alive: &PointSet, x: usize) -> Option<usize> {
    let mut hat_up = space.up_set(x).intersection(alive);
    hat_up.remove(x);
    if let Some(m) = hat_up.iter().find(|&m| hat_up.is_subset(space.up_set(m))) {
        return Some(m);
    }
    let mut hat_down = space.down_set(x).intersection(alive);
    hat_down.remove(x);
    let found = hat_down
        .iter()
        .find(|&m| hat_down.is_subset(space.down_set(m)));
    found
}

/// Repeatedly removes the lowest-index beat point until none is left.
pub fn core(space: &Space) -> Core {
    let n = space.n();
    let mut alive = space.all_points();
    let mut redirect: Vec<usize> = (0..n).collect();
    let mut removed = Vec::new();
    loop {
        let next = alive
            .iter()
            .find_map(|x| beat_target(space, &alive, x).map(|m| (x, m)));
        let Some((x, m)) = next else { break };
        alive.remove(x);
        redirect[x] = m;
        removed.push(x);
    }
    let sub = Subspace::new(space, &alive).expect("alive set lives in this space");
    let assignment = (0..n)
        .map(|x| {
            let mut y = x;
            while !alive.contains(y) {
                y = redirect[y];
            }
            sub.index_of(y).expect("resolved point is alive")
        })
        .collect();
    let retraction = CMap::new_unchecked(space, &sub.space, assignment);
    debug_assert!(CMap::new(space, &sub.space, retraction.assignment().to_vec()).is_ok());
    Core {
        space: sub.space,
        inclusion: sub.inclusion,
        retraction,
        removed,
    }
}

/// Contractibility via the core: nonempty with a one-point core.
pub fn is_contractible(space: &Space) -> bool {
    !space.is_empty() && core(space).space.n() == 1
}

/// Contractibility via fence search: the identity is nullhomotopic.
pub fn is_contractible_by_fence(space: &Space, budget: &Budget) -> Result<bool> {
    if space.is_empty() {
        return Ok(false);
    }
    is_nullhomotopic_in(&CMap::identity(space), budget)
}

/// LS-category with a minimum cover by opens contractible in the space.
#[derive(Clone, Debug)]
pub struct CatOutcome {
    pub value: ExtNat,
    pub cover: Vec<OpenSet>,
    /// The space is empty and the value is the `Finite(1)` convention.
    pub degenerate: bool,
}

pub fn cat(space: &Space, budget: &Budget) -> Result<CatOutcome> {
    if space.is_empty() {
        return Ok(CatOutcome {
            value: ExtNat::ONE,
            cover: Vec::new(),
            degenerate: true,
        });
    }
    let found = maximal_hereditary_opens(space, budget, |u| {
        let sub = Subspace::new(space, u)?;
        Ok(is_nullhomotopic_in(&sub.inclusion, budget)?.then_some(()))
    })?;
    let sets: Vec<PointSet> = found.sets.into_iter().map(|(s, _)| s).collect();
    match min_cover(&space.all_points(), &sets, budget)? {
        Cover::Uncovered(_) => Ok(CatOutcome {
            value: ExtNat::Infinite,
            cover: Vec::new(),
            degenerate: false,
        }),
        Cover::Covered(idx) => Ok(CatOutcome {
            value: ExtNat::Finite(idx.len() as u32),
            cover: idx
                .into_iter()
                .map(|i| OpenSet::new_unchecked(space, sets[i].clone()))
                .collect(),
            degenerate: false,
        }),
    }
}
