//! Suite configuration, execution and reports.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::census::{canonical_mask, census_spaces, census_up_to, MAX_CENSUS_POINTS};
use super::checks::{pullback_secat_regression, random_check, run_check, Cx, Inst, Outcome};
use super::claims::{position, Source, CLAIMS};
use super::par::Executor;
use super::random::instance_rng;
use crate::budget::{Budget, Limits, DEFAULT_BUDGET};
use crate::coincidence::{
    check_cp_implies_fpp, check_key_lemma, check_main_theorem, check_remark, has_cp, has_fpp,
    Status, TheoremReport, CLAIM_KEY_LEMMA, CLAIM_MAIN_THEOREM,
};
use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::finspace::{
    enumerate_maps, CMap, ConfigurationSpace, FinSpace, Product, Pullback, Space, Subspace,
};
use crate::format::Document;
use crate::homotopy::{
    cat, core, homotopic, homotopy_class, is_contractible, is_contractible_by_fence,
};
use crate::pointset::PointSet;

pub const REPORT_SCHEMA: &str = "secnum.suite-report/1";

/// Everything that determines a suite run. Thread count and output path
/// are not echoed into the report, so reports do not depend on them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Largest spaces `X`, `Y` in the exhaustive triple census.
    pub census_points: usize,
    /// Largest spaces in the homotopy and category census.
    pub space_census_points: usize,
    /// Largest spaces whose full hom-sets are examined.
    pub map_census_points: usize,
    /// Largest discrete target for the Hausdorff-gated theorems.
    pub hausdorff_points: usize,
    /// Largest discrete target for the configuration bound.
    pub key_lemma_points: usize,
    pub k_min: usize,
    pub k_max: usize,
    /// Largest domain `X` paired with discrete targets.
    pub domain_points: usize,
    /// Largest spaces drawn for random instances.
    pub random_points: usize,
    pub instances: usize,
    pub tc_instances: usize,
    /// Search budget per instance.
    pub budget: u64,
    pub max_product: usize,
    #[serde(skip_serializing)]
    pub threads: usize,
    /// Restricts the run to these claim ids.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claims: Option<Vec<String>>,
    #[serde(skip_serializing)]
    pub out: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            census_points: 3,
            space_census_points: 5,
            map_census_points: 3,
            hausdorff_points: 4,
            key_lemma_points: 5,
            k_min: 2,
            k_max: 3,
            domain_points: 3,
            random_points: 4,
            instances: 500,
            tc_instances: 100,
            budget: DEFAULT_BUDGET,
            max_product: Limits::default().max_product,
            threads: 0,
            claims: None,
            out: None,
        }
    }
}

fn bounded(name: &str, v: usize, lo: usize, hi: usize) -> Result<()> {
    if (lo..=hi).contains(&v) {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} = {v} outside {lo}..={hi}")))
    }
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SuiteConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        bounded("census_points", self.census_points, 0, 4)?;
        bounded(
            "space_census_points",
            self.space_census_points,
            0,
            MAX_CENSUS_POINTS,
        )?;
        bounded("map_census_points", self.map_census_points, 0, 4)?;
        bounded("hausdorff_points", self.hausdorff_points, 2, 6)?;
        bounded("key_lemma_points", self.key_lemma_points, 2, 6)?;
        bounded("k_min", self.k_min, 2, 4)?;
        bounded("k_max", self.k_max, self.k_min, 4)?;
        bounded("domain_points", self.domain_points, 0, 4)?;
        bounded("random_points", self.random_points, 1, 6)?;
        bounded("instances", self.instances, 0, 100_000)?;
        bounded("tc_instances", self.tc_instances, 0, 100_000)?;
        bounded("threads", self.threads, 0, 1024)?;
        bounded("max_product", self.max_product, 1, 1 << 20)?;
        if self.budget == 0 {
            return Err(Error::Config("budget must be positive".into()));
        }
        if let Some(ids) = &self.claims {
            for id in ids {
                if position(id).is_none() {
                    return Err(Error::Config(format!("unknown claim `{id}`")));
                }
            }
        }
        Ok(())
    }

    fn enabled(&self, id: &str) -> bool {
        self.claims
            .as_ref()
            .is_none_or(|c| c.iter().any(|x| x == id))
    }

    fn any_enabled(&self, ids: &[&str]) -> bool {
        ids.iter().any(|id| self.enabled(id))
    }

    fn limits(&self) -> Limits {
        Limits {
            max_product: self.max_product,
            budget: self.budget,
            ..Limits::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub instances: usize,
    pub verified: usize,
    pub hypothesis_not_met: usize,
    pub violated: usize,
    pub inconclusive: usize,
}

impl Tally {
    fn add(&mut self, s: Status) {
        self.instances += 1;
        match s {
            Status::Verified => self.verified += 1,
            Status::HypothesisNotMet => self.hypothesis_not_met += 1,
            Status::Violated => self.violated += 1,
            Status::Inconclusive => self.inconclusive += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimTally {
    pub id: &'static str,
    pub statement: &'static str,
    pub gated: bool,
    #[serde(flatten)]
    pub tally: Tally,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub claim: &'static str,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
}

/// Main-theorem data on targets outside its hypotheses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OffHypothesis {
    pub instances: usize,
    pub cp_holds: usize,
    pub biconditional_holds: usize,
    /// Non-Hausdorff `Y` with `|Y| >= 2`, CP and `sec_g = 2`.
    pub cp_with_sec_two: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cp_with_sec_two_example: Option<String>,
    /// CP holds but `sec_g` is infinite.
    pub cp_with_sec_infinite: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub spaces_by_size: Vec<usize>,
    pub posets_by_size: Vec<usize>,
    pub fpp_by_size: Vec<usize>,
    pub contractible_by_size: Vec<usize>,
    /// Spaces of each size by LS-category (`"1"`, `"2"`, ..., `"infinite"`).
    pub cat_by_size: Vec<BTreeMap<String, usize>>,
    pub triples: usize,
    pub main_theorem_off_hypothesis: OffHypothesis,
}

pub const INCONCLUSIVE_RECORDS: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub config: SuiteConfig,
    pub claims: Vec<ClaimTally>,
    pub totals: Tally,
    pub violations: Vec<Record>,
    /// The first few inconclusive results; the count is in `totals`.
    pub inconclusive: Vec<Record>,
    pub census: CensusSummary,
}

impl SuiteReport {
    /// 0 when clean, 2 with a violation, 3 with an inconclusive gated claim.
    pub fn exit_code(&self) -> i32 {
        if self.totals.violated > 0 {
            2
        } else if self
            .claims
            .iter()
            .any(|c| c.gated && c.tally.inconclusive > 0)
        {
            3
        } else {
            0
        }
    }

    pub fn tally(&self, id: &str) -> Option<&Tally> {
        self.claims.iter().find(|c| c.id == id).map(|c| &c.tally)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// A report plus wall-clock seconds per claim group.
pub struct SuiteRun {
    pub report: SuiteReport,
    pub timings: BTreeMap<String, f64>,
}

impl SuiteRun {
    /// Writes the report to `path` and timings to `<path>.timings.json`.
    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.report.to_json())?;
        let mut side = path.as_os_str().to_owned();
        side.push(".timings.json");
        let mut t = serde_json::to_string_pretty(&self.timings)?;
        t.push('\n');
        std::fs::write(PathBuf::from(side), t)?;
        Ok(())
    }
}

struct Runner<'a> {
    cfg: &'a SuiteConfig,
    exec: Executor,
    limits: Limits,
    outcomes: Vec<Outcome>,
    timings: BTreeMap<String, f64>,
    census: CensusSummary,
}

fn from_report(report: &TheoremReport, claim: &'static str) -> Option<Outcome> {
    let c = report.conclusions.iter().find(|c| c.claim == claim)?;
    let instance = matches!(c.status, Status::Violated | Status::Inconclusive)
        .then(|| serde_json::to_string(&report.instance).expect("instances serialize"));
    Some(Outcome {
        claim: c.claim,
        status: c.status,
        detail: c.detail.clone(),
        instance,
    })
}

fn error_outcome(claim: &'static str, e: Error) -> Outcome {
    let status = if matches!(
        e,
        Error::BudgetExhausted { .. } | Error::ResourceLimit { .. }
    ) {
        Status::Inconclusive
    } else {
        Status::Violated
    };
    Outcome {
        claim,
        status,
        detail: e.to_string(),
        instance: None,
    }
}

fn ext_key(v: ExtNat) -> String {
    v.to_string()
}

/// Every continuous `g: X → Y` for `X`, `Y` drawn from the given lists.
fn all_triples(xs: &[Space], ys: &[Space]) -> Result<Vec<CMap>> {
    let budget = Budget::unlimited();
    let mut out = Vec::new();
    for x in xs {
        for y in ys {
            for g in enumerate_maps(x, y, None, &budget)? {
                out.push(g?);
            }
        }
    }
    Ok(out)
}

fn arcs(spaces: Vec<FinSpace>) -> Vec<Space> {
    spaces.into_iter().map(FinSpace::into_space).collect()
}

impl<'a> Runner<'a> {
    fn timed<F>(&mut self, name: &str, ids: &[&str], f: F) -> Result<()>
    where
        F: FnOnce(&mut Self) -> Result<Vec<Outcome>>,
    {
        if !self.cfg.any_enabled(ids) {
            return Ok(());
        }
        let start = Instant::now();
        let out = f(self)?;
        let cfg = self.cfg;
        self.outcomes
            .extend(out.into_iter().filter(|o| cfg.enabled(o.claim)));
        self.timings
            .insert(name.to_owned(), start.elapsed().as_secs_f64());
        Ok(())
    }

    fn budget(&self) -> Budget {
        Budget::new(self.cfg.budget)
    }

    fn census_group(&mut self) -> Result<()> {
        let n_max = self.cfg.space_census_points;
        let mut by_size = Vec::new();
        let mut posets = Vec::new();
        for n in 0..=n_max {
            by_size.push(census_spaces(n, false)?);
            posets.push(census_spaces(n, true)?.len());
        }
        self.census.spaces_by_size = by_size.iter().map(Vec::len).collect();
        self.census.posets_by_size = posets;
        self.timed("census_soundness", &["census_soundness"], |r| {
            let sizes: Vec<(usize, &Vec<FinSpace>)> = by_size.iter().enumerate().collect();
            let out = r.exec.map(&sizes, |(n, spaces)| {
                let mut inst = Inst::new();
                let mut ok = true;
                let mut detail = format!("{} spaces on {n} points", spaces.len());
                for (i, s) in spaces.iter().enumerate() {
                    let revalidated =
                        FinSpace::from_up_sets((0..s.n()).map(|x| s.up_set(x).clone()).collect());
                    match revalidated {
                        Ok(r)
                            if r == *s
                                && s.n() == *n
                                && canonical_mask(&r) == canonical_mask(s) => {}
                        _ => {
                            ok = false;
                            detail = format!("space {i} fails revalidation");
                        }
                    }
                    for (j, t) in spaces.iter().enumerate().take(i) {
                        if s.is_isomorphic(t) {
                            ok = false;
                            detail = format!("spaces {j} and {i} are homeomorphic");
                        }
                    }
                }
                let labeled = labeled_preorders(*n);
                let orbit_sum: usize = spaces
                    .iter()
                    .map(|s| factorial(*n) / automorphisms(s))
                    .sum();
                if orbit_sum != labeled {
                    ok = false;
                    detail = format!("orbits cover {orbit_sum} of {labeled} labeled preorders");
                }
                inst.check("census_soundness", ok, detail);
                inst.finish()
            })?;
            Ok(out.into_iter().flatten().collect())
        })
    }

    fn spaces_group(&mut self) -> Result<()> {
        let ids = [
            "open_set_lattice",
            "hausdorff_iff_discrete",
            "configuration_subspace",
            "pullback_along_identity",
        ];
        let spaces = arcs(census_up_to(self.cfg.space_census_points, false)?);
        let limits = self.limits;
        let op_limits = Limits {
            max_points: MAX_CENSUS_POINTS,
            ..limits
        };
        self.timed("spaces", &ids, |r| {
            let out = r.exec.map(&spaces, |x| {
                let mut inst = Inst::new();
                inst.space("X", x);
                let run = |inst: &mut Inst| -> Result<()> {
                    let opens = x.all_open_sets(&op_limits)?;
                    let members: Vec<&PointSet> = opens.iter().map(|o| o.members()).collect();
                    let mut lattice = true;
                    for p in 0..x.n() {
                        let u = x.minimal_open(p)?;
                        lattice &= u.members().contains(p) && members.contains(&u.members());
                        lattice &= members
                            .iter()
                            .all(|v| !v.contains(p) || u.members().is_subset(v));
                    }
                    for a in &members {
                        for b in &members {
                            lattice &= members.contains(&&a.union(b))
                                && members.contains(&&a.intersection(b));
                        }
                    }
                    inst.check(
                        "open_set_lattice",
                        lattice,
                        format!("{} opens", opens.len()),
                    );

                    let singletons = (0..x.n()).all(|p| x.is_open(&PointSet::singleton(x.n(), p)));
                    inst.check(
                        "hausdorff_iff_discrete",
                        x.is_hausdorff() == singletons
                            && x.is_hausdorff() == (**x == FinSpace::discrete(x.n())),
                        format!(
                            "hausdorff={} singletons_open={singletons}",
                            x.is_hausdorff()
                        ),
                    );

                    let conf = ConfigurationSpace::new(x, 2, &limits)?;
                    let prod = Product::new(x, x, &limits)?;
                    let off: Vec<usize> = (0..prod.space.n())
                        .filter(|&i| {
                            let (a, b) = prod.pair(i);
                            a != b
                        })
                        .collect();
                    let sub = Subspace::new(
                        &prod.space,
                        &PointSet::from_indices(prod.space.n(), off.iter().copied()),
                    )?;
                    let tuples_match = conf
                        .tuples()
                        .iter()
                        .zip(&sub.points)
                        .all(|(t, &i)| prod.pair(i) == (t[0], t[1]));
                    inst.check(
                        "configuration_subspace",
                        **conf.space() == *sub.space
                            && conf.tuples().len() == off.len()
                            && tuples_match,
                        format!("{} configurations", off.len()),
                    );

                    if x.n() <= 4 {
                        let s = FinSpace::sierpinski().into_space();
                        let unlimited = Budget::unlimited();
                        for p in enumerate_maps(x, &s, None, &unlimited)? {
                            let p = p?;
                            let pb = Pullback::new(&p, &CMap::identity(&s), &limits)?;
                            let iso = pb.to_x.source().is_isomorphic(x);
                            let conj = (0..pb.pairs.len()).all(|i| {
                                let (b, e) = pb.pairs[i];
                                pb.to_x.apply(i) == b && p.apply(e) == b
                            });
                            inst.check(
                                "pullback_along_identity",
                                iso && conj,
                                format!("p = {:?}", p.assignment()),
                            );
                        }
                    }
                    Ok(())
                };
                if let Err(e) = run(&mut inst) {
                    return inst.fail("open_set_lattice", e);
                }
                inst.finish()
            })?;
            Ok(out.into_iter().flatten().collect())
        })
    }

    fn maps_group(&mut self) -> Result<()> {
        let ids = ["map_enumeration_closure", "homotopy_equivalence_relation"];
        let spaces = arcs(census_up_to(self.cfg.map_census_points, false)?);
        let pairs: Vec<(Space, Space)> = spaces
            .iter()
            .flat_map(|x| spaces.iter().map(move |y| (x.clone(), y.clone())))
            .collect();
        let limit = self.cfg.budget;
        self.timed("maps", &ids, |r| {
            let out = r.exec.map(&pairs, |(x, y)| {
                let mut inst = Inst::new();
                inst.space("X", x);
                inst.space("Y", y);
                let budget = Budget::new(limit);
                let run = |inst: &mut Inst| -> Result<()> {
                    let maps = enumerate_maps(x, y, None, &budget)?.collect::<Result<Vec<_>>>()?;
                    let idx = CMap::identity(x);
                    let idy = CMap::identity(y);
                    let mut closed = true;
                    for f in &maps {
                        closed &= f.compose(&idx)? == *f && idy.compose(f)? == *f;
                    }
                    if std::sync::Arc::ptr_eq(x, y) {
                        for f in &maps {
                            for g in &maps {
                                let fg = f.compose(g)?;
                                closed &= CMap::new(x, x, fg.assignment().to_vec()).is_ok();
                            }
                        }
                    }
                    inst.check(
                        "map_enumeration_closure",
                        closed,
                        format!("{} maps", maps.len()),
                    );

                    let mut classes: Vec<Vec<Vec<usize>>> = Vec::with_capacity(maps.len());
                    for f in &maps {
                        let mut class: Vec<Vec<usize>> = homotopy_class(f, &budget)?
                            .iter()
                            .map(|h| h.assignment().to_vec())
                            .collect();
                        class.sort();
                        classes.push(class);
                    }
                    let mut equivalence = true;
                    for (i, f) in maps.iter().enumerate() {
                        let own = &classes[i];
                        equivalence &= own.binary_search(&f.assignment().to_vec()).is_ok();
                        for (j, g) in maps.iter().enumerate() {
                            if own.binary_search(&g.assignment().to_vec()).is_ok() {
                                equivalence &= classes[j] == *own;
                            }
                        }
                    }
                    let distinct = {
                        let mut c = classes.clone();
                        c.sort();
                        c.dedup();
                        c.len()
                    };
                    inst.check(
                        "homotopy_equivalence_relation",
                        equivalence,
                        format!("{} maps in {distinct} classes", maps.len()),
                    );
                    Ok(())
                };
                if let Err(e) = run(&mut inst) {
                    return inst.fail("homotopy_equivalence_relation", e);
                }
                inst.finish()
            })?;
            Ok(out.into_iter().flatten().collect())
        })
    }

    fn homotopy_group(&mut self) -> Result<()> {
        let ids = [
            "contractibility_oracles",
            "core_retraction",
            "cat_core_invariance",
            "cat_one_iff_contractible",
            "fpp_iff_cp_identity",
        ];
        let n_max = self.cfg.space_census_points;
        let spaces = arcs(census_up_to(n_max, false)?);
        let limit = self.cfg.budget;
        let mut stats: Vec<(usize, bool, bool, Option<ExtNat>)> = Vec::new();
        self.timed("homotopy", &ids, |r| {
            let out = r.exec.map(&spaces, |x| {
                let mut inst = Inst::new();
                inst.space("X", x);
                let budget = Budget::new(limit);
                let mut stat = (x.n(), false, false, None);
                let run = |inst: &mut Inst,
                           stat: &mut (usize, bool, bool, Option<ExtNat>)|
                 -> Result<()> {
                    let by_core = is_contractible(x);
                    let by_fence = is_contractible_by_fence(x, &budget)?;
                    inst.check(
                        "contractibility_oracles",
                        by_core == by_fence,
                        format!("core={by_core} fence={by_fence}"),
                    );
                    stat.2 = by_core;

                    let c = core(x);
                    let ri = c.retraction.compose(&c.inclusion)?;
                    let ir = c.inclusion.compose(&c.retraction)?;
                    let deformation = homotopic(&ir, &CMap::identity(x), &budget)?.is_some();
                    inst.check(
                        "core_retraction",
                        ri == CMap::identity(&c.space) && deformation,
                        format!("core has {} points", c.space.n()),
                    );

                    let cx = cat(x, &budget)?.value;
                    let cc = cat(&c.space, &budget)?.value;
                    inst.check(
                        "cat_core_invariance",
                        cx == cc,
                        format!("cat(X)={cx} cat(core)={cc}"),
                    );
                    let detail = format!("cat={cx} contractible={by_core}");
                    if x.is_empty() {
                        inst.gate("cat_one_iff_contractible", format!("empty space; {detail}"));
                    } else {
                        inst.check(
                            "cat_one_iff_contractible",
                            (cx == ExtNat::ONE) == by_core,
                            detail,
                        );
                    }
                    stat.3 = Some(cx);

                    let fpp = has_fpp(x, &budget)?;
                    let cp = has_cp(&CMap::identity(x), &budget)?;
                    match (fpp.decided(), cp.decided()) {
                        (Some(a), Some(b)) => {
                            inst.check("fpp_iff_cp_identity", a == b, format!("fpp={a} cp={b}"))
                        }
                        _ => inst.push(
                            "fpp_iff_cp_identity",
                            Status::Inconclusive,
                            "budget exhausted",
                        ),
                    }
                    stat.1 = fpp.holds && fpp.exhaustive;
                    Ok(())
                };
                let out = match run(&mut inst, &mut stat) {
                    Ok(()) => inst.finish(),
                    Err(e) => inst.fail("contractibility_oracles", e),
                };
                (out, stat)
            })?;
            let mut all = Vec::new();
            for (o, s) in out {
                all.extend(o);
                stats.push(s);
            }
            Ok(all)
        })?;
        if !stats.is_empty() {
            let mut fpp = vec![0; n_max + 1];
            let mut contractible = vec![0; n_max + 1];
            let mut cats = vec![BTreeMap::new(); n_max + 1];
            for (n, f, c, k) in stats {
                fpp[n] += f as usize;
                contractible[n] += c as usize;
                if let Some(k) = k {
                    *cats[n].entry(ext_key(k)).or_insert(0) += 1;
                }
            }
            self.census.fpp_by_size = fpp;
            self.census.contractible_by_size = contractible;
            self.census.cat_by_size = cats;
        }
        Ok(())
    }

    fn random_group(&mut self) -> Result<()> {
        let seed = self.cfg.seed;
        for (ci, claim) in CLAIMS.iter().enumerate() {
            let count = match claim.source {
                Source::Random => self.cfg.instances,
                Source::RandomTc => self.cfg.tc_instances,
                _ => continue,
            };
            let check = random_check(claim.id).expect("every random claim has a check");
            let limits = self.limits;
            let limit = self.cfg.budget;
            let max_points = self.cfg.random_points;
            self.timed(claim.id, &[claim.id], |r| {
                let out = r.exec.map_range(count, |i| {
                    let budget = Budget::new(limit);
                    let cx = Cx {
                        limits: &limits,
                        budget: &budget,
                        max_points,
                    };
                    let mut rng = instance_rng(seed, ci as u64, i as u64);
                    run_check(claim.id, check, &mut rng, &cx)
                })?;
                Ok(out.into_iter().flatten().collect())
            })?;
        }
        Ok(())
    }

    fn fixed_group(&mut self) -> Result<()> {
        let limits = self.limits;
        let budget = self.budget();
        self.timed(
            "pullback_secat_regression",
            &["pullback_secat_regression"],
            |_| {
                let cx = Cx {
                    limits: &limits,
                    budget: &budget,
                    max_points: 0,
                };
                Ok(pullback_secat_regression(&cx))
            },
        )
    }

    fn coincidence_group(&mut self) -> Result<()> {
        let ids = [
            "cp_witness_revalidates",
            "cp_target_restriction",
            crate::coincidence::CLAIM_REMARK,
            CLAIM_MAIN_THEOREM,
            CLAIM_KEY_LEMMA,
            crate::coincidence::CLAIM_CP_IMPLIES_FPP,
            crate::coincidence::CLAIM_CP_IMPLIES_FPP_CONSTRUCTION,
        ];
        if !self.cfg.any_enabled(&ids) {
            return Ok(());
        }
        let spaces = arcs(census_up_to(self.cfg.census_points, false)?);
        let triples = all_triples(&spaces, &spaces)?;
        self.census.triples = triples.len();
        let limits = self.limits;
        let limit = self.cfg.budget;
        let mut reports: Vec<Option<TheoremReport>> = Vec::new();
        self.timed("coincidence_census", &ids, |r| {
            let out = r.exec.map(&triples, |g| {
                let budget = Budget::new(limit);
                let mut out = Vec::new();
                let mut off = None;
                match cp_witness_checks(g, &budget) {
                    Ok(o) => out.extend(o),
                    Err(e) => out.push(error_outcome("cp_witness_revalidates", e)),
                }
                match check_remark(g, &limits, &Budget::new(limit)) {
                    Ok(rep) => out.extend(from_report(&rep, crate::coincidence::CLAIM_REMARK)),
                    Err(e) => out.push(error_outcome(crate::coincidence::CLAIM_REMARK, e)),
                }
                match check_cp_implies_fpp(g, &Budget::new(limit)) {
                    Ok(rep) => {
                        out.extend(from_report(&rep, crate::coincidence::CLAIM_CP_IMPLIES_FPP));
                        out.extend(from_report(
                            &rep,
                            crate::coincidence::CLAIM_CP_IMPLIES_FPP_CONSTRUCTION,
                        ));
                    }
                    Err(e) => out.push(error_outcome(crate::coincidence::CLAIM_CP_IMPLIES_FPP, e)),
                }
                // Hausdorff targets are covered exhaustively by the dedicated group.
                if !g.target().is_hausdorff() {
                    match check_main_theorem(g, &limits, &Budget::new(limit)) {
                        Ok(rep) => {
                            out.extend(from_report(&rep, CLAIM_MAIN_THEOREM));
                            off = Some(rep);
                        }
                        Err(e) => out.push(error_outcome(CLAIM_MAIN_THEOREM, e)),
                    }
                    match check_key_lemma(g, 2, &limits, &Budget::new(limit)) {
                        Ok(rep) => out.extend(from_report(&rep, CLAIM_KEY_LEMMA)),
                        Err(e) => out.push(error_outcome(CLAIM_KEY_LEMMA, e)),
                    }
                }
                (out, off)
            })?;
            let mut all = Vec::new();
            for (o, rep) in out {
                all.extend(o);
                reports.push(rep);
            }
            Ok(all)
        })?;
        let off = &mut self.census.main_theorem_off_hypothesis;
        for rep in reports.into_iter().flatten() {
            let q = &rep.quantities;
            if rep.status(CLAIM_MAIN_THEOREM) != Some(Status::HypothesisNotMet) {
                continue;
            }
            off.instances += 1;
            let cp = q.cp == Some(true);
            off.cp_holds += cp as usize;
            off.biconditional_holds += (q.biconditional == Some(true)) as usize;
            if cp && q.sec_g == Some(ExtNat::Infinite) {
                off.cp_with_sec_infinite += 1;
            }
            if cp && q.sec_g == Some(ExtNat::Finite(2)) && q.y_points >= 2 && !q.hausdorff {
                off.cp_with_sec_two += 1;
                if off.cp_with_sec_two_example.is_none() {
                    off.cp_with_sec_two_example = serde_json::to_string(&rep.instance).ok();
                }
            }
        }
        Ok(())
    }

    fn hausdorff_group(&mut self) -> Result<()> {
        let ids = [CLAIM_MAIN_THEOREM, CLAIM_KEY_LEMMA];
        let xs = arcs(census_up_to(self.cfg.domain_points, false)?);
        let limits = self.limits;
        let limit = self.cfg.budget;
        let main_targets: Vec<Space> = (2..=self.cfg.hausdorff_points)
            .map(|n| FinSpace::discrete(n).into_space())
            .collect();
        let main = all_triples(&xs, &main_targets)?;
        self.timed("main_theorem_hausdorff", &ids[..1], |r| {
            let out = r.exec.map(&main, |g| {
                match check_main_theorem(g, &limits, &Budget::new(limit)) {
                    Ok(rep) => from_report(&rep, CLAIM_MAIN_THEOREM)
                        .into_iter()
                        .collect::<Vec<_>>(),
                    Err(e) => vec![error_outcome(CLAIM_MAIN_THEOREM, e)],
                }
            })?;
            Ok(out.into_iter().flatten().collect())
        })?;
        let mut work: Vec<(usize, CMap)> = Vec::new();
        for k in self.cfg.k_min..=self.cfg.k_max {
            let targets: Vec<Space> = (k..=self.cfg.key_lemma_points.max(k))
                .map(|n| FinSpace::discrete(n).into_space())
                .collect();
            work.extend(all_triples(&xs, &targets)?.into_iter().map(|g| (k, g)));
        }
        self.timed("key_lemma_hausdorff", &ids[1..], |r| {
            let out = r.exec.map(&work, |(k, g)| {
                match check_key_lemma(g, *k, &limits, &Budget::new(limit)) {
                    Ok(rep) => from_report(&rep, CLAIM_KEY_LEMMA)
                        .into_iter()
                        .collect::<Vec<_>>(),
                    Err(e) => vec![error_outcome(CLAIM_KEY_LEMMA, e)],
                }
            })?;
            Ok(out.into_iter().flatten().collect())
        })
    }

    fn finish(self) -> SuiteRun {
        let mut tallies: Vec<ClaimTally> = CLAIMS
            .iter()
            .map(|c| ClaimTally {
                id: c.id,
                statement: c.statement,
                gated: c.gated,
                tally: Tally::default(),
            })
            .collect();
        let mut totals = Tally::default();
        let mut violations = Vec::new();
        let mut inconclusive = Vec::new();
        for o in self.outcomes {
            let i = position(o.claim).expect("outcomes use registered claims");
            tallies[i].tally.add(o.status);
            totals.add(o.status);
            let rec = || Record {
                claim: o.claim,
                detail: o.detail.clone(),
                instance: o.instance.clone(),
            };
            match o.status {
                Status::Violated => violations.push(rec()),
                Status::Inconclusive if inconclusive.len() < INCONCLUSIVE_RECORDS => {
                    inconclusive.push(rec())
                }
                _ => {}
            }
        }
        let cfg = self.cfg;
        tallies.retain(|t| cfg.enabled(t.id));
        SuiteRun {
            report: SuiteReport {
                schema: REPORT_SCHEMA,
                config: self.cfg.clone(),
                claims: tallies,
                totals,
                violations,
                inconclusive,
                census: self.census,
            },
            timings: self.timings,
        }
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn automorphisms(s: &FinSpace) -> usize {
    fn go(s: &FinSpace, perm: &mut Vec<usize>, used: &mut [bool]) -> usize {
        let i = perm.len();
        if i == s.n() {
            return 1;
        }
        let mut count = 0;
        for v in 0..s.n() {
            if used[v] {
                continue;
            }
            let fits = (0..i).all(|j| {
                s.reach(i, j) == s.reach(v, perm[j]) && s.reach(j, i) == s.reach(perm[j], v)
            });
            if fits {
                used[v] = true;
                perm.push(v);
                count += go(s, perm, used);
                perm.pop();
                used[v] = false;
            }
        }
        count
    }
    go(s, &mut Vec::new(), &mut vec![false; s.n()])
}

/// Reflexive transitive relations on `n` labeled points, counted by
/// validating every candidate up-set family.
fn labeled_preorders(n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    let bits = n * (n - 1);
    let mut count = 0;
    for mask in 0u32..(1 << bits) {
        let mut up: Vec<PointSet> = (0..n).map(|i| PointSet::singleton(n, i)).collect();
        let mut k = 0;
        for (i, u) in up.iter_mut().enumerate() {
            for j in 0..n {
                if i != j {
                    if mask & (1 << k) != 0 {
                        u.insert(j);
                    }
                    k += 1;
                }
            }
        }
        count += FinSpace::from_up_sets(up).is_ok() as usize;
    }
    count
}

/// Witness revalidation and the target-restriction property for one triple.
fn cp_witness_checks(g: &CMap, budget: &Budget) -> Result<Vec<Outcome>> {
    let mut inst = Inst::new();
    inst.space("X", g.source());
    inst.space("Y", g.target());
    inst.map("g", g);
    let cp = has_cp(g, budget)?;
    if !cp.exhaustive {
        inst.push(
            "cp_witness_revalidates",
            Status::Inconclusive,
            "budget exhausted",
        );
        return Ok(inst.finish());
    }
    let Some(w) = &cp.witness else {
        inst.gate("cp_witness_revalidates", "CP holds; no witness");
        inst.gate("cp_target_restriction", "CP holds; no witness");
        return Ok(inst.finish());
    };
    inst.map("w", w);
    let valid = CMap::new(g.source(), g.target(), w.assignment().to_vec()).is_ok()
        && w.coincidence_free_with(g);
    inst.check(
        "cp_witness_revalidates",
        valid,
        format!("w = {:?}", w.assignment()),
    );

    let y = g.target();
    let image = g.image();
    let mut tested = 0;
    let mut ok = true;
    let limits = Limits {
        max_points: MAX_CENSUS_POINTS,
        ..Limits::default()
    };
    for a in y.all_open_sets(&limits)? {
        if a.members().len() == y.n() || !image.is_subset(a.members()) {
            continue;
        }
        let sub = Subspace::new(y, a.members())?;
        let into_a = CMap::new(
            g.source(),
            &sub.space,
            g.assignment()
                .iter()
                .map(|&v| sub.index_of(v).expect("image lies in A"))
                .collect(),
        )?;
        let restricted = has_cp(&into_a, budget)?;
        if restricted.decided() == Some(true) {
            tested += 1;
            ok &= !w.image().is_subset(a.members());
        }
    }
    if tested == 0 {
        inst.gate("cp_target_restriction", "no open A with CP for (X, A; g)");
    } else {
        inst.check(
            "cp_target_restriction",
            ok,
            format!("{tested} opens with CP"),
        );
    }
    Ok(inst.finish())
}

/// Runs every enabled claim. Identical configurations give identical
/// reports whatever the thread count.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteRun> {
    cfg.validate()?;
    let mut r = Runner {
        cfg,
        exec: Executor::new(cfg.threads),
        limits: cfg.limits(),
        outcomes: Vec::new(),
        timings: BTreeMap::new(),
        census: CensusSummary::default(),
    };
    r.census_group()?;
    r.spaces_group()?;
    r.maps_group()?;
    r.homotopy_group()?;
    r.random_group()?;
    r.fixed_group()?;
    r.coincidence_group()?;
    r.hausdorff_group()?;
    Ok(r.finish())
}

/// The document form of a triple, for reproducing a reported instance.
pub fn triple_document(g: &CMap) -> Result<String> {
    let mut doc = Document::new();
    doc.add_space("X", g.source().clone())?;
    if !std::sync::Arc::ptr_eq(g.source(), g.target()) {
        doc.add_space("Y", g.target().clone())?;
    }
    doc.add_map("g", g.clone())?;
    doc.to_text()
}
