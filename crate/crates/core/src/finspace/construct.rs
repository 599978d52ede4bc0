use std::collections::HashMap;
use std::sync::Arc;

use super::{same_space, CMap, FinSpace, Space};
use crate::budget::Limits;
use crate::error::{Error, Result};
use crate::pointset::PointSet;

fn check_size(what: &'static str, size: usize, limits: &Limits) -> Result<()> {
    if size > limits.max_product {
        Err(Error::ResourceLimit {
            what,
            size,
            limit: limits.max_product,
        })
    } else {
        Ok(())
    }
}

/// Restricts the reach relation of `ambient` to the listed points.
fn induced(ambient: &FinSpace, points: &[usize]) -> FinSpace {
    let m = points.len();
    let mut index = vec![usize::MAX; ambient.n()];
    for (i, &p) in points.iter().enumerate() {
        index[p] = i;
    }
    let up = points
        .iter()
        .map(|&p| {
            PointSet::from_indices(
                m,
                ambient
                    .up_set(p)
                    .iter()
                    .filter(|&q| index[q] != usize::MAX)
                    .map(|q| index[q]),
            )
        })
        .collect();
    FinSpace::from_up_unchecked(up)
}

/// A subspace together with its inclusion.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub space: Space,
    pub inclusion: CMap,
    /// Ambient index of each subspace point, ascending.
    pub points: Vec<usize>,
}

impl Subspace {
    pub fn new(ambient: &Space, members: &PointSet) -> Result<Self> {
        if members.universe() != ambient.n() {
            return Err(Error::Mismatch(format!(
                "subset of {} points taken in a space with {}",
                members.universe(),
                ambient.n()
            )));
        }
        let points = members.to_vec();
        let mut space = induced(ambient, &points);
        if ambient.labels().iter().any(Option::is_some) {
            space.labels = points
                .iter()
                .map(|&p| ambient.labels()[p].clone())
                .collect();
        }
        let space = Arc::new(space);
        let inclusion = CMap::new_unchecked(&space, ambient, points.clone());
        Ok(Subspace {
            space,
            inclusion,
            points,
        })
    }

    /// Subspace index of an ambient point, if it is a member.
    pub fn index_of(&self, ambient_point: usize) -> Option<usize> {
        self.points.binary_search(&ambient_point).ok()
    }

    /// `f` restricted to this subspace (`f ∘ inclusion`).
    pub fn restrict(&self, f: &CMap) -> Result<CMap> {
        f.compose(&self.inclusion)
    }
}

/// `X × Y` with pairs in lexicographic order and its two projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub space: Space,
    pub first: CMap,
    pub second: CMap,
    left_n: usize,
    right_n: usize,
}

impl Product {
    pub fn new(left: &Space, right: &Space, limits: &Limits) -> Result<Self> {
        let (a, b) = (left.n(), right.n());
        check_size("product", a * b, limits)?;
        let n = a * b;
        let up = (0..n)
            .map(|i| {
                let (x, y) = (i / b, i % b);
                PointSet::from_indices(
                    n,
                    left.up_set(x)
                        .iter()
                        .flat_map(|x2| right.up_set(y).iter().map(move |y2| x2 * b + y2)),
                )
            })
            .collect();
        let space = Arc::new(FinSpace::from_up_unchecked(up));
        let first = CMap::new_unchecked(&space, left, (0..n).map(|i| i / b).collect());
        let second = CMap::new_unchecked(&space, right, (0..n).map(|i| i % b).collect());
        Ok(Product {
            space,
            first,
            second,
            left_n: a,
            right_n: b,
        })
    }

    pub fn index(&self, x: usize, y: usize) -> usize {
        debug_assert!(x < self.left_n && y < self.right_n);
        x * self.right_n + y
    }

    pub fn pair(&self, i: usize) -> (usize, usize) {
        (i / self.right_n, i % self.right_n)
    }

    /// The product map `f × g` between two products.
    pub fn map_between(source: &Product, target: &Product, f: &CMap, g: &CMap) -> Result<CMap> {
        if !same_space(f.source(), source.first.target())
            || !same_space(g.source(), source.second.target())
            || !same_space(f.target(), target.first.target())
            || !same_space(g.target(), target.second.target())
        {
            return Err(Error::Mismatch(
                "factor maps do not match the products".into(),
            ));
        }
        let assignment = (0..source.space.n())
            .map(|i| {
                let (x, y) = source.pair(i);
                target.index(f.apply(x), g.apply(y))
            })
            .collect();
        Ok(CMap::new_unchecked(
            &source.space,
            &target.space,
            assignment,
        ))
    }
}

/// The canonical pullback `X ×_B E` of `p: E → B` along `g: X → B`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub space: Space,
    /// `g*(p)`: the projection onto `X`.
    pub to_x: CMap,
    /// The projection onto `E`.
    pub to_e: CMap,
    pub pairs: Vec<(usize, usize)>,
}

impl Pullback {
    pub fn new(p: &CMap, g: &CMap, limits: &Limits) -> Result<Self> {
        if !same_space(p.target(), g.target()) {
            return Err(Error::Mismatch("p and g have different targets".into()));
        }
        let (x_space, e_space) = (g.source(), p.source());
        check_size(
            "pullback ambient product",
            x_space.n() * e_space.n(),
            limits,
        )?;
        let fibers = p.fibers();
        let pairs: Vec<(usize, usize)> = (0..x_space.n())
            .flat_map(|x| {
                fibers[g.apply(x)]
                    .iter()
                    .map(move |e| (x, e))
                    .collect::<Vec<_>>()
            })
            .collect();
        let index: HashMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(i, &pr)| (pr, i)).collect();
        let m = pairs.len();
        let up = pairs
            .iter()
            .map(|&(x, e)| {
                let mut row = PointSet::empty(m);
                for x2 in x_space.up_set(x).iter() {
                    for e2 in e_space.up_set(e).iter() {
                        if let Some(&j) = index.get(&(x2, e2)) {
                            row.insert(j);
                        }
                    }
                }
                row
            })
            .collect();
        let space = Arc::new(FinSpace::from_up_unchecked(up));
        let to_x = CMap::new_unchecked(&space, x_space, pairs.iter().map(|pr| pr.0).collect());
        let to_e = CMap::new_unchecked(&space, e_space, pairs.iter().map(|pr| pr.1).collect());
        Ok(Pullback {
            space,
            to_x,
            to_e,
            pairs,
        })
    }
}

/// Ordered configuration space `F(X, k)` with its coordinate projections.
#[derive(Clone, Debug)]
pub struct ConfigurationSpace {
    /// `spaces[r - 1]` is `F(X, r)`; `F(X, 1)` is `X` itself.
    spaces: Vec<Space>,
    tuples: Vec<Vec<usize>>,
    /// `projections[r - 1]` is `π_{k,r}: F(X, k) → F(X, r)`.
    projections: Vec<CMap>,
}

fn distinct_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !cur.contains(&x) {
                cur.push(x);
                extend(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn tuple_space(base: &FinSpace, tuples: &[Vec<usize>]) -> FinSpace {
    let m = tuples.len();
    let up = tuples
        .iter()
        .map(|t| {
            PointSet::from_indices(
                m,
                tuples.iter().enumerate().filter_map(|(j, t2)| {
                    t.iter()
                        .zip(t2)
                        .all(|(&a, &b)| base.reach(a, b))
                        .then_some(j)
                }),
            )
        })
        .collect();
    FinSpace::from_up_unchecked(up)
}

impl ConfigurationSpace {
    pub fn new(base: &Space, k: usize, limits: &Limits) -> Result<Self> {
        if k == 0 {
            return Err(Error::Config("configuration spaces need k >= 1".into()));
        }
        let power = base.n().checked_pow(k as u32).unwrap_or(usize::MAX);
        check_size("configuration space ambient power", power, limits)?;

        let mut spaces = vec![Arc::clone(base)];
        let mut all_tuples = vec![(0..base.n()).map(|x| vec![x]).collect::<Vec<_>>()];
        for r in 2..=k {
            let tuples = distinct_tuples(base.n(), r);
            spaces.push(Arc::new(tuple_space(base, &tuples)));
            all_tuples.push(tuples);
        }
        let top = &all_tuples[k - 1];
        let projections = (1..=k)
            .map(|r| {
                let index: HashMap<&[usize], usize> = all_tuples[r - 1]
                    .iter()
                    .enumerate()
                    .map(|(i, t)| (t.as_slice(), i))
                    .collect();
                let assignment = top.iter().map(|t| index[&t[..r]]).collect();
                CMap::new_unchecked(&spaces[k - 1], &spaces[r - 1], assignment)
            })
            .collect();
        Ok(ConfigurationSpace {
            tuples: all_tuples.pop().unwrap_or_default(),
            spaces,
            projections,
        })
    }

    pub fn k(&self) -> usize {
        self.spaces.len()
    }

    pub fn space(&self) -> &Space {
        &self.spaces[self.k() - 1]
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    /// `π_{k,r}` for `1 <= r <= k`.
    pub fn projection(&self, r: usize) -> Result<&CMap> {
        if r == 0 || r > self.k() {
            return Err(Error::OutOfRange {
                index: r,
                size: self.k(),
            });
        }
        Ok(&self.projections[r - 1])
    }
}
