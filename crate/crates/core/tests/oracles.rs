//! Library invariants against brute-force oracles on small random spaces.

use proptest::prelude::*;

use secnum_core::homotopy::{cat, homotopic, is_contractible};
use secnum_core::sectional::{relative_sec, sec, secat, Route};
use secnum_core::{Budget, CMap, ExtNat, FinSpace, Limits, Space};

/// `r[x][y]` iff `y ∈ U_x`.
type Rel = Vec<Vec<bool>>;

fn closure(n: usize, pairs: &[(usize, usize)]) -> Rel {
    let mut r = vec![vec![false; n]; n];
    for (x, row) in r.iter_mut().enumerate() {
        row[x] = true;
    }
    for &(a, b) in pairs {
        r[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

fn space_of(r: &Rel) -> Space {
    let n = r.len();
    let pairs: Vec<_> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| r[x][y])
        .collect();
    FinSpace::new(n, &pairs).unwrap().into_space()
}

fn rel() -> impl Strategy<Value = Rel> {
    (0usize..=3).prop_flat_map(|n| {
        let pair = (0..n.max(1), 0..n.max(1));
        proptest::collection::vec(pair, 0..=4).prop_map(move |ps| {
            let ps: Vec<_> = if n == 0 { Vec::new() } else { ps };
            closure(n, &ps)
        })
    })
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

fn is_open(r: &Rel, u: &[usize]) -> bool {
    u.iter()
        .all(|&x| (0..r.len()).all(|y| !r[x][y] || u.contains(&y)))
}

fn opens(r: &Rel) -> Vec<Vec<usize>> {
    subsets(r.len()).filter(|u| is_open(r, u)).collect()
}

/// Continuous maps from the subspace on `dom` into `tgt`, as full-length
/// vectors indexed by points of `dom`.
fn maps_on(src: &Rel, dom: &[usize], tgt: &Rel) -> Vec<Vec<usize>> {
    let m = tgt.len();
    let mut out = Vec::new();
    if m == 0 {
        if dom.is_empty() {
            out.push(Vec::new());
        }
        return out;
    }
    for code in 0..m.pow(dom.len() as u32) {
        let mut c = code;
        let a: Vec<usize> = dom
            .iter()
            .map(|_| {
                let v = c % m;
                c /= m;
                v
            })
            .collect();
        let ok =
            (0..dom.len()).all(|i| (0..dom.len()).all(|j| !src[dom[i]][dom[j]] || tgt[a[i]][a[j]]));
        if ok {
            out.push(a);
        }
    }
    out
}

/// Least number of members of `good` covering `0..n`, or `None`.
fn min_cover(n: usize, good: &[Vec<usize>]) -> Option<u32> {
    if n == 0 {
        return Some(1);
    }
    let masks: Vec<u32> = good
        .iter()
        .map(|u| u.iter().map(|i| 1 << i).sum())
        .collect();
    let full = (1u32 << n) - 1;
    (1..=masks.len()).find_map(|k| {
        let hit = (0u64..1 << masks.len())
            .filter(|c| c.count_ones() as usize == k)
            .any(|c| {
                (0..masks.len())
                    .filter(|i| c >> i & 1 == 1)
                    .fold(0, |a, i| a | masks[i])
                    == full
            });
        hit.then_some(k as u32)
    })
}

fn to_ext(v: Option<u32>) -> ExtNat {
    v.map_or(ExtNat::Infinite, ExtNat::Finite)
}

fn oracle_sec(x: &Rel, y: &Rel, f: &[usize]) -> ExtNat {
    let good: Vec<_> = opens(y)
        .into_iter()
        .filter(|u| !u.is_empty())
        .filter(|u| {
            maps_on(y, u, x)
                .iter()
                .any(|s| s.iter().zip(u.iter()).all(|(&sx, &p)| f[sx] == p))
        })
        .collect();
    to_ext(min_cover(y.len(), &good))
}

/// Pointwise comparability graph on maps `dom → tgt`; component of `start`.
fn class(src: &Rel, dom: &[usize], tgt: &Rel, start: &[usize]) -> Vec<Vec<usize>> {
    let all = maps_on(src, dom, tgt);
    let le = |a: &[usize], b: &[usize]| a.iter().zip(b).all(|(&p, &q)| tgt[p][q]);
    let mut seen = vec![false; all.len()];
    let mut stack: Vec<usize> = all.iter().position(|m| m == start).into_iter().collect();
    for &i in &stack {
        seen[i] = true;
    }
    while let Some(i) = stack.pop() {
        for j in 0..all.len() {
            if !seen[j] && (le(&all[i], &all[j]) || le(&all[j], &all[i])) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    all.into_iter()
        .zip(seen)
        .filter(|(_, s)| *s)
        .map(|(m, _)| m)
        .collect()
}

fn oracle_cat(x: &Rel) -> ExtNat {
    let good: Vec<_> = opens(x)
        .into_iter()
        .filter(|u| !u.is_empty())
        .filter(|u| {
            class(x, u, x, u)
                .iter()
                .any(|m| m.iter().all(|&v| v == m[0]))
        })
        .collect();
    to_ext(min_cover(x.len(), &good))
}

fn oracle_secat(x: &Rel, y: &Rel, f: &[usize]) -> ExtNat {
    let good: Vec<_> = opens(y)
        .into_iter()
        .filter(|u| !u.is_empty())
        .filter(|u| {
            let incl = class(y, u, y, u);
            maps_on(y, u, x)
                .iter()
                .any(|s| incl.contains(&s.iter().map(|&v| f[v]).collect::<Vec<_>>()))
        })
        .collect();
    to_ext(min_cover(y.len(), &good))
}

fn budget() -> Budget {
    Budget::new(10_000_000)
}

fn map_strategy() -> impl Strategy<Value = (Rel, Rel, Vec<usize>)> {
    (rel(), rel(), any::<u64>()).prop_filter_map("no continuous map", |(x, y, pick)| {
        let all = maps_on(&x, &(0..x.len()).collect::<Vec<_>>(), &y);
        if all.is_empty() {
            return None;
        }
        let f = all[(pick % all.len() as u64) as usize].clone();
        Some((x, y, f))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn open_sets_match_reach_closed_subsets(r in rel()) {
        let x = space_of(&r);
        let lib = x.all_open_sets(&Limits::default()).unwrap();
        prop_assert_eq!(lib.len(), opens(&r).len());
        for u in &lib {
            prop_assert!(is_open(&r, &u.to_vec()));
        }
    }

    #[test]
    fn sec_matches_exhaustive_cover((x, y, f) in map_strategy()) {
        let (xs, ys) = (space_of(&x), space_of(&y));
        let m = CMap::new(&xs, &ys, f.clone()).unwrap();
        prop_assert_eq!(sec(&m, &budget()).unwrap().value, oracle_sec(&x, &y, &f));
    }

    #[test]
    fn secat_matches_exhaustive_cover((x, y, f) in map_strategy()) {
        let (xs, ys) = (space_of(&x), space_of(&y));
        let m = CMap::new(&xs, &ys, f.clone()).unwrap();
        prop_assert_eq!(secat(&m, &budget()).unwrap().value, oracle_secat(&x, &y, &f));
    }

    #[test]
    fn cat_matches_exhaustive_cover(r in rel()) {
        let x = space_of(&r);
        prop_assert_eq!(cat(&x, &budget()).unwrap().value, oracle_cat(&r));
    }

    #[test]
    fn homotopic_matches_comparability_component((x, y, f) in map_strategy(), pick in any::<u64>()) {
        let dom: Vec<usize> = (0..x.len()).collect();
        let all = maps_on(&x, &dom, &y);
        let g = all[(pick % all.len() as u64) as usize].clone();
        let same = class(&x, &dom, &y, &f).contains(&g);
        let (xs, ys) = (space_of(&x), space_of(&y));
        let (fm, gm) = (CMap::new(&xs, &ys, f).unwrap(), CMap::new(&xs, &ys, g).unwrap());
        let fence = homotopic(&fm, &gm, &budget()).unwrap();
        prop_assert_eq!(fence.is_some(), same);
        if let Some(fence) = fence {
            fence.validate().unwrap();
        }
    }

    #[test]
    fn contractible_iff_identity_is_nullhomotopic(r in rel()) {
        let dom: Vec<usize> = (0..r.len()).collect();
        let oracle = !r.is_empty() && class(&r, &dom, &r, &dom).iter().any(|m| m.iter().all(|&v| v == m[0]));
        prop_assert_eq!(is_contractible(&space_of(&r)), oracle);
    }

    #[test]
    fn identity_relative_sec_is_sec((x, y, f) in map_strategy()) {
        let (xs, ys) = (space_of(&x), space_of(&y));
        let p = CMap::new(&xs, &ys, f).unwrap();
        let id = CMap::identity(&ys);
        let lim = Limits::default();
        let s = sec(&p, &budget()).unwrap().value;
        prop_assert_eq!(relative_sec(&p, &id, Route::Pullback, &lim, &budget()).unwrap().value, s);
        prop_assert_eq!(relative_sec(&p, &id, Route::Lift, &lim, &budget()).unwrap().value, s);
    }
}
