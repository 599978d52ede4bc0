//! Fixed-point and coincidence properties, and per-instance checkers for
//! the theorems relating them to relative sectional numbers of
//! configuration-space projections.

use serde::Serialize;

use crate::budget::{Budget, Limits};
use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::finspace::{CMap, ConfigurationSpace, FinSpace, MapSearch, Space, VarOrder};
use crate::pointset::PointSet;
use crate::sectional::{relative_sec, Route};

pub const CLAIM_REMARK: &str = "remark_sec1_iff_not_cp";
pub const CLAIM_KEY_LEMMA: &str = "key_lemma_k";
pub const CLAIM_MAIN_THEOREM: &str = "main_theorem";
pub const CLAIM_CP_IMPLIES_FPP: &str = "cp_implies_fpp";
pub const CLAIM_CP_IMPLIES_FPP_CONSTRUCTION: &str = "cp_implies_fpp_construction";

/// Outcome of a search for a coincidence-free (or fixed-point-free) map.
#[derive(Clone, Debug)]
pub struct CoincidenceVerdict {
    /// No counterexample was found. Only meaningful when `exhaustive`.
    pub holds: bool,
    /// A map disagreeing with the reference map everywhere.
    pub witness: Option<CMap>,
    /// False when the budget cut the search short.
    pub exhaustive: bool,
}

impl CoincidenceVerdict {
    /// `Some(holds)` for exhaustive verdicts.
    pub fn decided(&self) -> Option<bool> {
        self.exhaustive.then_some(self.holds)
    }
}

fn avoid_search(search: MapSearch, budget: &Budget) -> Result<CoincidenceVerdict> {
    match search.first(budget) {
        Ok(Some(f)) => Ok(CoincidenceVerdict {
            holds: false,
            witness: Some(f),
            exhaustive: true,
        }),
        Ok(None) => Ok(CoincidenceVerdict {
            holds: true,
            witness: None,
            exhaustive: true,
        }),
        Err(e) if e.is_budget() => Ok(CoincidenceVerdict {
            holds: true,
            witness: None,
            exhaustive: false,
        }),
        Err(e) => Err(e),
    }
}

/// Every continuous self-map of `x` has a fixed point.
pub fn has_fpp(x: &Space, budget: &Budget) -> Result<CoincidenceVerdict> {
    let n = x.n();
    let allowed = (0..n)
        .map(|i| {
            let mut s = PointSet::full(n);
            s.remove(i);
            s
        })
        .collect();
    let verdict = avoid_search(MapSearch::new(x, x).allowed(allowed), budget)?;
    if let Some(f) = &verdict.witness {
        debug_assert!((0..n).all(|i| f.apply(i) != i));
    }
    Ok(verdict)
}

/// Every continuous `f: X → Y` meets `g` somewhere.
pub fn has_cp(g: &CMap, budget: &Budget) -> Result<CoincidenceVerdict> {
    let m = g.target().n();
    let allowed = (0..g.source().n())
        .map(|x| {
            let mut s = PointSet::full(m);
            s.remove(g.apply(x));
            s
        })
        .collect();
    let search = MapSearch::new(g.source(), g.target())
        .allowed(allowed)
        .order(VarOrder::MostConstrained);
    let verdict = avoid_search(search, budget)?;
    if let Some(f) = &verdict.witness {
        debug_assert!(f.coincidence_free_with(g));
    }
    Ok(verdict)
}

/// Outcome of one claim on one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Status {
    #[serde(rename = "verified")]
    Verified,
    #[serde(rename = "hypothesis-not-met")]
    HypothesisNotMet,
    #[serde(rename = "VIOLATED")]
    Violated,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub claim: &'static str,
    pub status: Status,
    pub detail: String,
}

/// The triple `(X, Y; g)` in serializable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceDoc {
    pub x: SpaceDoc,
    pub y: SpaceDoc,
    pub g: Vec<usize>,
}

/// A space as its point count and strict reach pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceDoc {
    pub n: usize,
    pub reach: Vec<(usize, usize)>,
}

impl SpaceDoc {
    pub fn of(space: &FinSpace) -> Self {
        SpaceDoc {
            n: space.n(),
            reach: space.strict_pairs(),
        }
    }
}

impl InstanceDoc {
    pub fn of(g: &CMap) -> Self {
        InstanceDoc {
            x: SpaceDoc::of(g.source()),
            y: SpaceDoc::of(g.target()),
            g: g.assignment().to_vec(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Quantities {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cp: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fpp: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// `sec_g(π_{k,1}^Y)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sec_g: Option<ExtNat>,
    pub hausdorff: bool,
    pub y_points: usize,
    /// Whether the claimed equivalence holds, recorded even off-hypothesis.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub biconditional: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub instance: InstanceDoc,
    pub quantities: Quantities,
    pub conclusions: Vec<Conclusion>,
}

impl TheoremReport {
    fn new(g: &CMap) -> Self {
        TheoremReport {
            instance: InstanceDoc::of(g),
            quantities: Quantities {
                hausdorff: g.target().is_hausdorff(),
                y_points: g.target().n(),
                ..Quantities::default()
            },
            conclusions: Vec::new(),
        }
    }

    fn conclude(&mut self, claim: &'static str, status: Status, detail: impl Into<String>) {
        self.conclusions.push(Conclusion {
            claim,
            status,
            detail: detail.into(),
        });
    }

    fn inconclusive(mut self, claim: &'static str, what: &str) -> Self {
        self.conclude(
            claim,
            Status::Inconclusive,
            format!("budget exhausted while computing {what}"),
        );
        self
    }

    /// Status of `claim`, if this report concludes on it.
    pub fn status(&self, claim: &str) -> Option<Status> {
        self.conclusions
            .iter()
            .find(|c| c.claim == claim)
            .map(|c| c.status)
    }

    pub fn is_violated(&self) -> bool {
        self.conclusions
            .iter()
            .any(|c| c.status == Status::Violated)
    }
}

fn settle<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_budget() => Ok(None),
        Err(e) => Err(e),
    }
}

/// `sec_g(π_{k,1}^Y)` through the canonical pullback.
pub fn sec_g_projection(g: &CMap, k: usize, limits: &Limits, budget: &Budget) -> Result<ExtNat> {
    let conf = ConfigurationSpace::new(g.target(), k, limits)?;
    let pi = conf.projection(1)?;
    Ok(relative_sec(pi, g, Route::Pullback, limits, budget)?.value)
}

/// `sec_g(π_{2,1}^Y) = 1` exactly when `(X, Y; g)` fails CP. No hypotheses.
pub fn check_remark(g: &CMap, limits: &Limits, budget: &Budget) -> Result<TheoremReport> {
    let mut report = TheoremReport::new(g);
    let cp = has_cp(g, budget)?;
    let Some(cp_holds) = cp.decided() else {
        return Ok(report.inconclusive(CLAIM_REMARK, "CP"));
    };
    report.quantities.cp = Some(cp_holds);
    let Some(sec) = settle(sec_g_projection(g, 2, limits, budget))? else {
        return Ok(report.inconclusive(CLAIM_REMARK, "sec_g"));
    };
    report.quantities.sec_g = Some(sec);
    let agree = (sec == ExtNat::ONE) == !cp_holds;
    report.quantities.biconditional = Some(agree);
    let status = if agree {
        Status::Verified
    } else {
        Status::Violated
    };
    report.conclude(CLAIM_REMARK, status, format!("cp={cp_holds} sec_g={sec}"));
    Ok(report)
}

/// `sec_g(π_{k,1}^Y) ≤ k` for Hausdorff `Y` with at least `k` points.
pub fn check_key_lemma(
    g: &CMap,
    k: usize,
    limits: &Limits,
    budget: &Budget,
) -> Result<TheoremReport> {
    if k < 2 {
        return Err(Error::Config(format!("key lemma needs k >= 2, got {k}")));
    }
    let mut report = TheoremReport::new(g);
    report.quantities.k = Some(k);
    let Some(sec) = settle(sec_g_projection(g, k, limits, budget))? else {
        return Ok(report.inconclusive(CLAIM_KEY_LEMMA, "sec_g"));
    };
    report.quantities.sec_g = Some(sec);
    let bound = ExtNat::Finite(k as u32);
    report.quantities.biconditional = Some(sec <= bound);
    let y = g.target();
    if !y.is_hausdorff() {
        report.conclude(
            CLAIM_KEY_LEMMA,
            Status::HypothesisNotMet,
            format!("Y not Hausdorff; sec_g={sec}"),
        );
    } else if y.n() < k {
        report.conclude(
            CLAIM_KEY_LEMMA,
            Status::HypothesisNotMet,
            format!("|Y| < {k}; sec_g={sec}"),
        );
    } else if sec <= bound {
        report.conclude(
            CLAIM_KEY_LEMMA,
            Status::Verified,
            format!("sec_g={sec} <= {k}"),
        );
    } else {
        report.conclude(
            CLAIM_KEY_LEMMA,
            Status::Violated,
            format!("sec_g={sec} > {k}"),
        );
    }
    Ok(report)
}

/// For Hausdorff `Y` with at least two points: CP exactly when
/// `sec_g(π_{2,1}^Y) = 2`.
pub fn check_main_theorem(g: &CMap, limits: &Limits, budget: &Budget) -> Result<TheoremReport> {
    let mut report = TheoremReport::new(g);
    let cp = has_cp(g, budget)?;
    let Some(cp_holds) = cp.decided() else {
        return Ok(report.inconclusive(CLAIM_MAIN_THEOREM, "CP"));
    };
    report.quantities.cp = Some(cp_holds);
    let Some(sec) = settle(sec_g_projection(g, 2, limits, budget))? else {
        return Ok(report.inconclusive(CLAIM_MAIN_THEOREM, "sec_g"));
    };
    report.quantities.sec_g = Some(sec);
    let holds = cp_holds == (sec == ExtNat::Finite(2));
    report.quantities.biconditional = Some(holds);
    let detail = format!("cp={cp_holds} sec_g={sec} biconditional={holds}");
    let y = g.target();
    let status = if !y.is_hausdorff() || y.n() < 2 {
        Status::HypothesisNotMet
    } else if holds {
        Status::Verified
    } else {
        Status::Violated
    };
    report.conclude(CLAIM_MAIN_THEOREM, status, detail);
    Ok(report)
}

/// CP for `(X, Y; g)` forces FPP on `Y`. Also re-derives the contrapositive:
/// a fixed-point-free `f` on `Y` makes `f ∘ g` coincidence-free with `g`.
pub fn check_cp_implies_fpp(g: &CMap, budget: &Budget) -> Result<TheoremReport> {
    let mut report = TheoremReport::new(g);
    let cp = has_cp(g, budget)?;
    let fpp = has_fpp(g.target(), budget)?;
    report.quantities.cp = cp.decided();
    report.quantities.fpp = fpp.decided();

    match (cp.decided(), fpp.decided()) {
        (None, _) => return Ok(report.inconclusive(CLAIM_CP_IMPLIES_FPP, "CP")),
        (Some(false), _) => {
            report.conclude(CLAIM_CP_IMPLIES_FPP, Status::HypothesisNotMet, "CP fails")
        }
        (Some(true), Some(true)) => {
            report.conclude(CLAIM_CP_IMPLIES_FPP, Status::Verified, "CP and FPP hold")
        }
        (Some(true), Some(false)) => report.conclude(
            CLAIM_CP_IMPLIES_FPP,
            Status::Violated,
            "CP holds but Y has no FPP",
        ),
        (Some(true), None) => return Ok(report.inconclusive(CLAIM_CP_IMPLIES_FPP, "FPP")),
    }

    if let Some(f) = &fpp.witness {
        let fg = f.compose(g)?;
        let revalidated = CMap::new(fg.source(), fg.target(), fg.assignment().to_vec())?;
        let status = if revalidated.coincidence_free_with(g) {
            Status::Verified
        } else {
            Status::Violated
        };
        report.conclude(
            CLAIM_CP_IMPLIES_FPP_CONSTRUCTION,
            status,
            format!("f.g = {:?}", revalidated.assignment()),
        );
    } else {
        report.conclude(
            CLAIM_CP_IMPLIES_FPP_CONSTRUCTION,
            Status::HypothesisNotMet,
            "Y has FPP",
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: FinSpace) -> Space {
        s.into_space()
    }

    fn b() -> Budget {
        Budget::new(1_000_000)
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn fpp_examples() {
        assert!(has_fpp(&sp(FinSpace::point()), &b()).unwrap().holds);
        assert!(has_fpp(&sp(FinSpace::sierpinski()), &b()).unwrap().holds);
        let c = has_fpp(&sp(FinSpace::pseudocircle()), &b()).unwrap();
        assert!(!c.holds && c.exhaustive);
        assert_eq!(c.witness.unwrap().assignment(), &[1, 0, 3, 2]);
    }

    #[test]
    fn cp_examples() {
        let x = sp(FinSpace::sierpinski());
        let pt = sp(FinSpace::point());
        assert!(
            has_cp(&CMap::constant(&x, &pt, 0).unwrap(), &b())
                .unwrap()
                .holds
        );

        let y = sp(FinSpace::discrete(3));
        let g = CMap::constant(&x, &y, 1).unwrap();
        let v = has_cp(&g, &b()).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert!(w.is_constant() && w.coincidence_free_with(&g));

        assert!(has_cp(&CMap::identity(&x), &b()).unwrap().holds);
    }

    #[test]
    fn exhausted_search_is_not_exhaustive() {
        let c = sp(FinSpace::pseudocircle());
        let v = has_fpp(&c, &Budget::new(1)).unwrap();
        assert!(!v.exhaustive);
        assert_eq!(v.decided(), None);
    }

    #[test]
    fn remark_examples() {
        let x = sp(FinSpace::sierpinski());
        let d2 = sp(FinSpace::discrete(2));
        let r = check_remark(&CMap::constant(&x, &d2, 0).unwrap(), &lim(), &b()).unwrap();
        assert_eq!(r.status(CLAIM_REMARK), Some(Status::Verified));
        assert_eq!(r.quantities.sec_g, Some(ExtNat::ONE));
        assert_eq!(r.quantities.cp, Some(false));

        let s = sp(FinSpace::sierpinski());
        let r = check_remark(&CMap::identity(&s), &lim(), &b()).unwrap();
        assert_eq!(r.status(CLAIM_REMARK), Some(Status::Verified));
        assert_eq!(r.quantities.sec_g, Some(ExtNat::Infinite));

        let pt = sp(FinSpace::point());
        let r = check_remark(&CMap::constant(&x, &pt, 0).unwrap(), &lim(), &b()).unwrap();
        assert_eq!(r.quantities.cp, Some(true));
        assert_eq!(r.quantities.sec_g, Some(ExtNat::Infinite));
    }

    #[test]
    fn key_lemma_examples() {
        let x = sp(FinSpace::pseudocircle());
        let d2 = sp(FinSpace::discrete(2));
        let g = CMap::new(&x, &d2, vec![0, 0, 0, 0]).unwrap();
        let r = check_key_lemma(&g, 2, &lim(), &b()).unwrap();
        assert_eq!(r.status(CLAIM_KEY_LEMMA), Some(Status::Verified));
        assert_eq!(r.quantities.sec_g, Some(ExtNat::ONE));

        let s = sp(FinSpace::sierpinski());
        let r = check_key_lemma(&CMap::identity(&s), 2, &lim(), &b()).unwrap();
        assert_eq!(r.status(CLAIM_KEY_LEMMA), Some(Status::HypothesisNotMet));
        assert_eq!(r.quantities.sec_g, Some(ExtNat::Infinite));

        let pt = sp(FinSpace::point());
        let r = check_key_lemma(&CMap::identity(&pt), 2, &lim(), &b()).unwrap();
        assert_eq!(r.status(CLAIM_KEY_LEMMA), Some(Status::HypothesisNotMet));
        assert_eq!(r.quantities.sec_g, Some(ExtNat::Infinite));

        assert!(matches!(
            check_key_lemma(&g, 1, &lim(), &b()),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn main_theorem_examples() {
        let x = sp(FinSpace::sierpinski());
        let d2 = sp(FinSpace::discrete(2));
        let r = check_main_theorem(&CMap::constant(&x, &d2, 1).unwrap(), &lim(), &b()).unwrap();
        assert_eq!(r.status(CLAIM_MAIN_THEOREM), Some(Status::Verified));

        let s = sp(FinSpace::sierpinski());
        let r = check_main_theorem(&CMap::identity(&s), &lim(), &b()).unwrap();
        assert_eq!(r.status(CLAIM_MAIN_THEOREM), Some(Status::HypothesisNotMet));
        assert_eq!(r.quantities.cp, Some(true));
        assert_eq!(r.quantities.sec_g, Some(ExtNat::Infinite));
        assert_eq!(r.quantities.biconditional, Some(false));

        let pt = sp(FinSpace::point());
        let r = check_main_theorem(&CMap::constant(&x, &pt, 0).unwrap(), &lim(), &b()).unwrap();
        assert_eq!(r.status(CLAIM_MAIN_THEOREM), Some(Status::HypothesisNotMet));
        assert_eq!(r.quantities.sec_g, Some(ExtNat::Infinite));
    }

    #[test]
    fn identity_on_discrete_two_has_sec_two() {
        let d2 = sp(FinSpace::discrete(2));
        let r = check_main_theorem(&CMap::identity(&d2), &lim(), &b()).unwrap();
        assert_eq!(r.quantities.cp, Some(false));
        assert_eq!(r.status(CLAIM_MAIN_THEOREM), Some(Status::Verified));
    }

    #[test]
    fn cp_implies_fpp_examples() {
        let s = sp(FinSpace::sierpinski());
        let r = check_cp_implies_fpp(&CMap::identity(&s), &b()).unwrap();
        assert_eq!(r.status(CLAIM_CP_IMPLIES_FPP), Some(Status::Verified));

        let c = sp(FinSpace::pseudocircle());
        let x = sp(FinSpace::sierpinski());
        let g = CMap::new(&x, &c, vec![0, 2]).unwrap();
        let r = check_cp_implies_fpp(&g, &b()).unwrap();
        assert_eq!(r.quantities.cp, Some(false));
        assert_eq!(
            r.status(CLAIM_CP_IMPLIES_FPP),
            Some(Status::HypothesisNotMet)
        );
        assert_eq!(
            r.status(CLAIM_CP_IMPLIES_FPP_CONSTRUCTION),
            Some(Status::Verified)
        );

        let pt = sp(FinSpace::point());
        let r = check_cp_implies_fpp(&CMap::constant(&x, &pt, 0).unwrap(), &b()).unwrap();
        assert_eq!(r.status(CLAIM_CP_IMPLIES_FPP), Some(Status::Verified));
    }

    #[test]
    fn report_json_uses_stable_names() {
        let s = sp(FinSpace::sierpinski());
        let r = check_main_theorem(&CMap::identity(&s), &lim(), &b()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["conclusions"][0]["claim"], "main_theorem");
        assert_eq!(v["conclusions"][0]["status"], "hypothesis-not-met");
        assert_eq!(v["quantities"]["sec_g"], "infinite");
        assert_eq!(v["instance"]["y"]["reach"], serde_json::json!([[1, 0]]));
    }
}
