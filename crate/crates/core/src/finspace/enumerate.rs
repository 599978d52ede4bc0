use super::{CMap, Space};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::pointset::PointSet;

/// Variable ordering for the backtracking search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum VarOrder {
    /// Assign source points in index order; maps come out lexicographically.
    #[default]
    Lexicographic,
    /// Smallest remaining domain first, ties broken by index. Output order
    /// is still deterministic but no longer lexicographic.
    MostConstrained,
}

/// A constrained search for continuous maps `source → target`.
#[derive(Clone, Debug)]
pub struct MapSearch {
    source: Space,
    target: Space,
    allowed: Option<Vec<PointSet>>,
    order: VarOrder,
    value_order: Option<Vec<Vec<usize>>>,
}

impl MapSearch {
    pub fn new(source: &Space, target: &Space) -> Self {
        MapSearch {
            source: source.clone(),
            target: target.clone(),
            allowed: None,
            order: VarOrder::Lexicographic,
            value_order: None,
        }
    }

    /// Per-source-point sets of permitted images.
    pub fn allowed(mut self, allowed: Vec<PointSet>) -> Self {
        self.allowed = Some(allowed);
        self
    }

    pub fn order(mut self, order: VarOrder) -> Self {
        self.order = order;
        self
    }

    /// Per-source-point preference order over target points. Targets missing
    /// from a point's list are never tried for it.
    pub fn value_order(mut self, order: Vec<Vec<usize>>) -> Self {
        self.value_order = Some(order);
        self
    }

    pub fn iter<'b>(&self, budget: &'b Budget) -> Result<MapIter<'b>> {
        let n = self.source.n();
        let m = self.target.n();
        let domains = match &self.allowed {
            Some(a) => {
                if a.len() != n {
                    return Err(Error::AssignmentLength {
                        expected: n,
                        got: a.len(),
                    });
                }
                if let Some(bad) = a.iter().find(|d| d.universe() != m) {
                    return Err(Error::Mismatch(format!(
                        "constraint over {} points for a target with {m}",
                        bad.universe()
                    )));
                }
                a.clone()
            }
            None => vec![PointSet::full(m); n],
        };
        if let Some(vo) = &self.value_order {
            if vo.len() != n {
                return Err(Error::AssignmentLength {
                    expected: n,
                    got: vo.len(),
                });
            }
        }
        Ok(MapIter {
            search: self.clone(),
            budget,
            domains,
            assigned: vec![false; n],
            assignment: vec![0; n],
            stack: Vec::new(),
            state: State::Fresh,
        })
    }

    pub fn first(&self, budget: &Budget) -> Result<Option<CMap>> {
        self.iter(budget)?.next().transpose()
    }

    /// Every matching map. Fails on budget exhaustion rather than returning
    /// a partial list.
    pub fn collect(&self, budget: &Budget) -> Result<Vec<CMap>> {
        self.iter(budget)?.collect()
    }
}

/// Continuous maps respecting `constraints`, lexicographically.
pub fn enumerate_maps<'b>(
    source: &Space,
    target: &Space,
    constraints: Option<Vec<PointSet>>,
    budget: &'b Budget,
) -> Result<MapIter<'b>> {
    let mut search = MapSearch::new(source, target);
    if let Some(c) = constraints {
        search = search.allowed(c);
    }
    search.iter(budget)
}

#[derive(Debug)]
struct Frame {
    var: usize,
    candidates: Vec<usize>,
    next: usize,
    saved: Vec<PointSet>,
}

#[derive(Debug, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

/// Lazy stream of maps; yields one `Err` and stops if the budget runs out.
#[derive(Debug)]
pub struct MapIter<'b> {
    search: MapSearch,
    budget: &'b Budget,
    domains: Vec<PointSet>,
    assigned: Vec<bool>,
    assignment: Vec<usize>,
    stack: Vec<Frame>,
    state: State,
}

impl MapIter<'_> {
    fn pick_var(&self) -> Option<usize> {
        let free = (0..self.assigned.len()).filter(|&x| !self.assigned[x]);
        match self.search.order {
            VarOrder::Lexicographic => free.min(),
            VarOrder::MostConstrained => free.min_by_key(|&x| (self.domains[x].len(), x)),
        }
    }

    fn candidates(&self, var: usize) -> Vec<usize> {
        match &self.search.value_order {
            Some(vo) => vo[var]
                .iter()
                .copied()
                .filter(|&y| y < self.domains[var].universe() && self.domains[var].contains(y))
                .collect(),
            None => self.domains[var].to_vec(),
        }
    }

    fn push_frame(&mut self, var: usize) {
        let candidates = self.candidates(var);
        self.stack.push(Frame {
            var,
            candidates,
            next: 0,
            saved: self.domains.clone(),
        });
    }

    /// Assigns `var := y` and narrows the free domains; false on a wipe-out.
    fn propagate(&mut self, var: usize, y: usize) -> bool {
        let src = &self.search.source;
        let tgt = &self.search.target;
        self.assigned[var] = true;
        self.assignment[var] = y;
        for x in 0..self.assigned.len() {
            if self.assigned[x] {
                continue;
            }
            if src.reach(var, x) {
                self.domains[x].intersect_with(tgt.up_set(y));
            }
            if src.reach(x, var) {
                self.domains[x].intersect_with(tgt.down_set(y));
            }
            if self.domains[x].is_empty() {
                return false;
            }
        }
        true
    }

    fn advance(&mut self) -> Result<Option<Vec<usize>>> {
        if self.state == State::Fresh {
            self.state = State::Running;
            if self.domains.iter().any(PointSet::is_empty) {
                return Ok(None);
            }
            match self.pick_var() {
                None => return Ok(Some(Vec::new())),
                Some(v) => self.push_frame(v),
            }
        }
        while let Some(frame) = self.stack.last_mut() {
            if frame.next >= frame.candidates.len() {
                let var = frame.var;
                self.stack.pop();
                self.assigned[var] = false;
                continue;
            }
            let var = frame.var;
            let y = frame.candidates[frame.next];
            frame.next += 1;
            self.domains.clone_from(&frame.saved);
            self.budget.spend(1)?;
            // Frames above this one were popped, so their vars are free again.
            if !self.propagate(var, y) {
                self.assigned[var] = false;
                continue;
            }
            match self.pick_var() {
                None => {
                    let out = self.assignment.clone();
                    self.assigned[var] = false;
                    return Ok(Some(out));
                }
                Some(next_var) => self.push_frame(next_var),
            }
        }
        Ok(None)
    }
}

impl Iterator for MapIter<'_> {
    type Item = Result<CMap>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.state == State::Done {
            return None;
        }
        match self.advance() {
            Ok(Some(a)) => Some(Ok(CMap::new_unchecked(
                &self.search.source,
                &self.search.target,
                a,
            ))),
            Ok(None) => {
                self.state = State::Done;
                None
            }
            Err(e) => {
                self.state = State::Done;
                Some(Err(e))
            }
        }
    }
}
