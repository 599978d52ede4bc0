//! Seeded generators for spaces, maps and diagrams.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::budget::{Budget, Limits};
use crate::error::Result;
use crate::finspace::{CMap, FinSpace, MapSearch, Product, Space, Subspace};
use crate::homotopy::homotopy_class;
use crate::pointset::PointSet;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent stream for instance `index` of the claim numbered `claim`.
pub fn instance_rng(seed: u64, claim: u64, index: u64) -> ChaCha8Rng {
    let s = splitmix(splitmix(splitmix(seed) ^ claim) ^ index);
    ChaCha8Rng::seed_from_u64(s)
}

/// A space on `lo..=hi` points whose reach relation is the closure of
/// randomly drawn pairs.
pub fn random_space<R: Rng>(rng: &mut R, lo: usize, hi: usize) -> FinSpace {
    let n = rng.gen_range(lo..=hi);
    let density = rng.gen_range(0.0..0.6);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    FinSpace::new(n, &pairs).expect("indices are in range")
}

/// A contractible space: the cone on a random space.
pub fn random_contractible<R: Rng>(rng: &mut R, hi: usize) -> FinSpace {
    let base = random_space(rng, 0, hi.saturating_sub(1));
    base.cone()
}

/// A continuous map found by search with shuffled value orders.
/// `None` only when no map exists (empty target, nonempty source).
pub fn random_map<R: Rng>(
    rng: &mut R,
    source: &Space,
    target: &Space,
    budget: &Budget,
) -> Result<Option<CMap>> {
    random_map_within(rng, source, target, None, budget)
}

pub fn random_map_within<R: Rng>(
    rng: &mut R,
    source: &Space,
    target: &Space,
    allowed: Option<Vec<PointSet>>,
    budget: &Budget,
) -> Result<Option<CMap>> {
    let order = (0..source.n())
        .map(|_| {
            let mut v: Vec<usize> = (0..target.n()).collect();
            v.shuffle(rng);
            v
        })
        .collect();
    let mut search = MapSearch::new(source, target).value_order(order);
    if let Some(a) = allowed {
        search = search.allowed(a);
    }
    search.first(budget)
}

/// A uniformly chosen member of the homotopy class of `f`.
pub fn random_homotopic<R: Rng>(rng: &mut R, f: &CMap, budget: &Budget) -> Result<CMap> {
    let class = homotopy_class(f, budget)?;
    Ok(class.choose(rng).cloned().unwrap_or_else(|| f.clone()))
}

/// A random nonempty open subset.
pub fn random_open<R: Rng>(rng: &mut R, space: &FinSpace) -> PointSet {
    let n = space.n();
    let mut u = PointSet::empty(n);
    let k = rng.gen_range(1..=n.max(1));
    for _ in 0..k {
        let x = rng.gen_range(0..n);
        u.union_with(space.up_set(x));
    }
    u
}

/// A retraction `r: X → B` onto an open subspace `B`, if one is found.
pub fn random_retraction<R: Rng>(
    rng: &mut R,
    x: &Space,
    budget: &Budget,
) -> Result<Option<(Subspace, CMap)>> {
    if x.is_empty() {
        return Ok(None);
    }
    for _ in 0..8 {
        let b = random_open(rng, x);
        let sub = Subspace::new(x, &b)?;
        let allowed = (0..x.n())
            .map(|p| match sub.index_of(p) {
                Some(i) => PointSet::singleton(sub.space.n(), i),
                None => sub.space.all_points(),
            })
            .collect();
        if let Some(r) = random_map_within(rng, x, &sub.space, Some(allowed), budget)? {
            return Ok(Some((sub, r)));
        }
    }
    Ok(None)
}

/// The projection `B × F → B` for a random fibre `F`.
pub fn random_projection<R: Rng>(
    rng: &mut R,
    base: &Space,
    fibre_hi: usize,
    limits: &Limits,
) -> Result<CMap> {
    let fibre = random_space(rng, 1, fibre_hi).into_space();
    let prod = Product::new(base, &fibre, limits)?;
    Ok(prod.first)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = random_space(&mut instance_rng(7, 1, 3), 0, 5);
        let b = random_space(&mut instance_rng(7, 1, 3), 0, 5);
        assert_eq!(a, b);
        let draws: Vec<u64> = (0..4).map(|i| instance_rng(7, 1, i).gen()).collect();
        let mut dedup = draws.clone();
        dedup.dedup();
        assert_eq!(draws, dedup);
    }

    #[test]
    fn generated_maps_are_continuous() {
        let budget = Budget::new(100_000);
        for i in 0..50 {
            let mut rng = instance_rng(1, 2, i);
            let x = random_space(&mut rng, 0, 4).into_space();
            let y = random_space(&mut rng, 1, 4).into_space();
            let f = random_map(&mut rng, &x, &y, &budget).unwrap().unwrap();
            CMap::new(&x, &y, f.assignment().to_vec()).unwrap();
        }
    }

    #[test]
    fn retractions_fix_their_image() {
        let budget = Budget::new(100_000);
        for i in 0..50 {
            let mut rng = instance_rng(3, 0, i);
            let x = random_space(&mut rng, 1, 4).into_space();
            if let Some((sub, r)) = random_retraction(&mut rng, &x, &budget).unwrap() {
                assert!(x.is_open(&PointSet::from_indices(x.n(), sub.points.iter().copied())));
                assert_eq!(
                    r.compose(&sub.inclusion).unwrap(),
                    CMap::identity(&sub.space)
                );
            }
        }
    }

    #[test]
    fn cones_are_contractible() {
        for i in 0..30 {
            let z = random_contractible(&mut instance_rng(4, 0, i), 4).into_space();
            assert!(crate::homotopy::is_contractible(&z));
        }
    }
}
