//! Sectional number and sectional category, absolute and relative.
//!
//! `sec(f)` is the least size of an open cover of the codomain whose members
//! carry local sections of `f`; `secat(f)` relaxes the section equation to
//! homotopy. The relative versions work over the canonical pullback, or
//! equivalently with lifts of `g` through `p`. Both routes are implemented
//! and never share code past the cover search.

use serde::{Serialize, Serializer};

use crate::budget::{Budget, Limits};
use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::finspace::opens::maximal_hereditary_opens;
use crate::finspace::{same_space, CMap, MapSearch, OpenSet, Pullback, Space, Subspace, VarOrder};
use crate::homotopy::{find_in_class, homotopic, is_contractible};
use crate::pointset::PointSet;
use crate::setcover::{min_cover, Cover};

/// What the witness attached to a cover element satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// `f ∘ s = incl_U`.
    Section,
    /// `f ∘ s ≃ incl_U` as maps into the codomain.
    HomotopySection,
    /// `p ∘ σ = g|_U`.
    Lift,
}

impl Mode {
    fn equation(self) -> &'static str {
        match self {
            Mode::Section => "f . s = incl_U",
            Mode::HomotopySection => "f . s ~ incl_U",
            Mode::Lift => "p . sigma = g|_U",
        }
    }
}

/// How a relative sectional number is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Sections of the canonical pullback `g*(p)`.
    Pullback,
    /// Lifts `σ: U → E` with `p ∘ σ = g|_U`, without building the pullback.
    Lift,
}

/// A minimum cover together with one witness map per member.
#[derive(Clone, Debug)]
pub struct CoverCertificate {
    pub mode: Mode,
    pub base: Space,
    pub cover: Vec<OpenSet>,
    /// `witnesses[i]` has the subspace on `cover[i]` as source.
    pub witnesses: Vec<CMap>,
}

#[derive(Serialize)]
struct CertificateDoc<'a> {
    schema: &'static str,
    mode: Mode,
    base_points: usize,
    value: ExtNat,
    degenerate: bool,
    cover: Vec<Vec<usize>>,
    witnesses: Vec<&'a [usize]>,
    uncovered_point: Option<usize>,
    equations: Vec<&'static str>,
}

pub const CERTIFICATE_SCHEMA: &str = "secnum.cover-certificate/1";

impl CoverCertificate {
    /// Cover members are open and jointly cover the base.
    pub fn verify_cover(&self) -> Result<()> {
        let mut union = PointSet::empty(self.base.n());
        for u in &self.cover {
            OpenSet::new(&self.base, u.members().clone())?;
            union.union_with(u.members());
        }
        if union.len() != self.base.n() {
            return Err(Error::Mismatch("certificate cover misses points".into()));
        }
        if self.witnesses.len() != self.cover.len() {
            return Err(Error::Mismatch(
                "one witness per cover element expected".into(),
            ));
        }
        Ok(())
    }

    fn restricted(&self, i: usize) -> Result<(Subspace, CMap)> {
        let sub = Subspace::new(&self.base, self.cover[i].members())?;
        let w = &self.witnesses[i];
        let w = CMap::new(&sub.space, w.target(), w.assignment().to_vec())?;
        Ok((sub, w))
    }

    /// Each witness is a strict local section of `f`.
    pub fn verify_sections(&self, f: &CMap) -> Result<()> {
        self.verify_cover()?;
        for i in 0..self.cover.len() {
            let (sub, s) = self.restricted(i)?;
            if f.compose(&s)? != sub.inclusion {
                return Err(Error::Mismatch(format!("witness {i} is not a section")));
            }
        }
        Ok(())
    }

    /// Each witness is a homotopy local section of `f`.
    pub fn verify_homotopy_sections(&self, f: &CMap, budget: &Budget) -> Result<()> {
        self.verify_cover()?;
        for i in 0..self.cover.len() {
            let (sub, s) = self.restricted(i)?;
            if homotopic(&f.compose(&s)?, &sub.inclusion, budget)?.is_none() {
                return Err(Error::Mismatch(format!(
                    "witness {i} is not a homotopy section"
                )));
            }
        }
        Ok(())
    }

    /// Each witness lifts `g` through `p` over its cover element.
    pub fn verify_lifts(&self, p: &CMap, g: &CMap) -> Result<()> {
        self.verify_cover()?;
        for i in 0..self.cover.len() {
            let (sub, sigma) = self.restricted(i)?;
            if p.compose(&sigma)? != sub.restrict(g)? {
                return Err(Error::Mismatch(format!("witness {i} is not a lift")));
            }
        }
        Ok(())
    }
}

/// Value of a sectional invariant plus the evidence for it.
#[derive(Clone, Debug)]
pub struct SecOutcome {
    pub value: ExtNat,
    /// Empty base: the value is the `Finite(1)` convention.
    pub degenerate: bool,
    /// For `Infinite`: a point lying in no admissible open.
    pub uncovered_point: Option<usize>,
    pub certificate: Option<CoverCertificate>,
    pub mode: Mode,
}

impl SecOutcome {
    pub fn to_json(&self) -> serde_json::Value {
        let (base_points, cover, witnesses) = match &self.certificate {
            Some(c) => (
                c.base.n(),
                c.cover.iter().map(OpenSet::to_vec).collect(),
                c.witnesses.iter().map(CMap::assignment).collect(),
            ),
            None => (0, Vec::new(), Vec::new()),
        };
        let doc = CertificateDoc {
            schema: CERTIFICATE_SCHEMA,
            mode: self.mode,
            base_points,
            value: self.value,
            degenerate: self.degenerate,
            cover,
            witnesses,
            uncovered_point: self.uncovered_point,
            equations: vec![self.mode.equation()],
        };
        serde_json::to_value(doc).expect("certificate documents serialize")
    }
}

fn cover_outcome<F>(base: &Space, mode: Mode, budget: &Budget, test: F) -> Result<SecOutcome>
where
    F: FnMut(&PointSet) -> Result<Option<CMap>>,
{
    if base.is_empty() {
        return Ok(SecOutcome {
            value: ExtNat::ONE,
            degenerate: true,
            uncovered_point: None,
            certificate: Some(CoverCertificate {
                mode,
                base: base.clone(),
                cover: Vec::new(),
                witnesses: Vec::new(),
            }),
            mode,
        });
    }
    let found = maximal_hereditary_opens(base, budget, test)?;
    if let Some(p) = found.uncoverable.first() {
        return Ok(SecOutcome {
            value: ExtNat::Infinite,
            degenerate: false,
            uncovered_point: Some(p),
            certificate: None,
            mode,
        });
    }
    let sets: Vec<PointSet> = found.sets.iter().map(|(s, _)| s.clone()).collect();
    match min_cover(&base.all_points(), &sets, budget)? {
        Cover::Uncovered(p) => Ok(SecOutcome {
            value: ExtNat::Infinite,
            degenerate: false,
            uncovered_point: Some(p),
            certificate: None,
            mode,
        }),
        Cover::Covered(idx) => Ok(SecOutcome {
            value: ExtNat::Finite(idx.len() as u32),
            degenerate: false,
            uncovered_point: None,
            certificate: Some(CoverCertificate {
                mode,
                base: base.clone(),
                cover: idx
                    .iter()
                    .map(|&i| OpenSet::new_unchecked(base, sets[i].clone()))
                    .collect(),
                witnesses: idx.iter().map(|&i| found.sets[i].1.clone()).collect(),
            }),
            mode,
        }),
    }
}

/// A map `U → target` with each `u` sent into `allowed_by_point[points[u]]`.
fn constrained_map(
    sub: &Subspace,
    target: &Space,
    allowed_by_point: impl Fn(usize) -> PointSet,
    budget: &Budget,
) -> Result<Option<CMap>> {
    let allowed = sub.points.iter().map(|&p| allowed_by_point(p)).collect();
    MapSearch::new(&sub.space, target)
        .allowed(allowed)
        .order(VarOrder::MostConstrained)
        .first(budget)
}

fn local_section(
    f: &CMap,
    fibers: &[PointSet],
    u: &PointSet,
    mode: Mode,
    budget: &Budget,
) -> Result<Option<CMap>> {
    let sub = Subspace::new(f.target(), u)?;
    match mode {
        Mode::Section => constrained_map(&sub, f.source(), |y| fibers[y].clone(), budget),
        Mode::HomotopySection => {
            let image = f.image();
            let reachable = f
                .target()
                .components()
                .iter()
                .all(|k| k.is_disjoint(u) || !k.is_disjoint(&image));
            if !reachable {
                return Ok(None);
            }
            // Walk the class of incl_U; stop at the first map that lifts strictly.
            let mut found = None;
            find_in_class(&sub.inclusion, budget, |h| {
                let allowed = h.iter().map(|&y| fibers[y].clone()).collect();
                let s = MapSearch::new(&sub.space, f.source())
                    .allowed(allowed)
                    .order(VarOrder::MostConstrained)
                    .first(budget)?;
                let hit = s.is_some();
                found = s;
                Ok(hit)
            })?;
            Ok(found)
        }
        Mode::Lift => Err(Error::Mismatch("lift mode needs a relative problem".into())),
    }
}

/// Maximal opens of the codomain admitting a local section in `mode`.
pub fn sectionable_opens(f: &CMap, mode: Mode, budget: &Budget) -> Result<Vec<(OpenSet, CMap)>> {
    let fibers = f.fibers();
    let found = maximal_hereditary_opens(f.target(), budget, |u| {
        local_section(f, &fibers, u, mode, budget)
    })?;
    Ok(found
        .sets
        .into_iter()
        .map(|(s, w)| (OpenSet::new_unchecked(f.target(), s), w))
        .collect())
}

fn sectional(f: &CMap, mode: Mode, budget: &Budget) -> Result<SecOutcome> {
    let fibers = f.fibers();
    cover_outcome(f.target(), mode, budget, |u| {
        local_section(f, &fibers, u, mode, budget)
    })
}

/// Sectional number.
pub fn sec(f: &CMap, budget: &Budget) -> Result<SecOutcome> {
    sectional(f, Mode::Section, budget)
}

/// Sectional category (Schwarz genus).
pub fn secat(f: &CMap, budget: &Budget) -> Result<SecOutcome> {
    sectional(f, Mode::HomotopySection, budget)
}

/// Maximal opens of `X` admitting a lift of `g` through `p`.
pub fn lift_opens(p: &CMap, g: &CMap, budget: &Budget) -> Result<Vec<(OpenSet, CMap)>> {
    check_relative(p, g)?;
    let fibers = p.fibers();
    let found = maximal_hereditary_opens(g.source(), budget, |u| {
        let sub = Subspace::new(g.source(), u)?;
        constrained_map(&sub, p.source(), |x| fibers[g.apply(x)].clone(), budget)
    })?;
    Ok(found
        .sets
        .into_iter()
        .map(|(s, w)| (OpenSet::new_unchecked(g.source(), s), w))
        .collect())
}

fn check_relative(p: &CMap, g: &CMap) -> Result<()> {
    if same_space(p.target(), g.target()) {
        Ok(())
    } else {
        Err(Error::Mismatch("p and g must share a target".into()))
    }
}

/// Relative sectional number `sec_g(p)`.
pub fn relative_sec(
    p: &CMap,
    g: &CMap,
    route: Route,
    limits: &Limits,
    budget: &Budget,
) -> Result<SecOutcome> {
    check_relative(p, g)?;
    match route {
        Route::Pullback => {
            let pb = Pullback::new(p, g, limits)?;
            sec(&pb.to_x, budget)
        }
        Route::Lift => {
            let fibers = p.fibers();
            cover_outcome(g.source(), Mode::Lift, budget, |u| {
                let sub = Subspace::new(g.source(), u)?;
                constrained_map(&sub, p.source(), |x| fibers[g.apply(x)].clone(), budget)
            })
        }
    }
}

/// Relative sectional category `secat_g(p) = secat(g*(p))`.
pub fn relative_secat(p: &CMap, g: &CMap, limits: &Limits, budget: &Budget) -> Result<SecOutcome> {
    check_relative(p, g)?;
    let pb = Pullback::new(p, g, limits)?;
    secat(&pb.to_x, budget)
}

/// Computable bounds on the relative topological complexity `TC_g(f)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TcBounds {
    pub lower: ExtNat,
    #[serde(serialize_with = "ser_upper")]
    pub upper: Option<ExtNat>,
    pub exact: bool,
    pub degenerate: bool,
}

fn ser_upper<S: Serializer>(v: &Option<ExtNat>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => x.serialize(s),
        None => s.serialize_str("unknown"),
    }
}

/// `sec_g(f)` always bounds `TC_g(f)` from below; with a contractible
/// domain `Z` the two agree since `TC(Z) = 1`.
pub fn relative_tc_bounds(
    f: &CMap,
    g: &CMap,
    limits: &Limits,
    budget: &Budget,
) -> Result<TcBounds> {
    let lower = relative_sec(f, g, Route::Pullback, limits, budget)?;
    let exact = is_contractible(f.source());
    Ok(TcBounds {
        lower: lower.value,
        upper: exact.then_some(lower.value),
        exact,
        degenerate: lower.degenerate,
    })
}
