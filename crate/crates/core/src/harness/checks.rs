//! Per-instance property checks on seeded random instances.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::random::{
    random_contractible, random_homotopic, random_map, random_map_within, random_projection,
    random_retraction, random_space,
};
use crate::budget::{Budget, Limits};
use crate::coincidence::Status;
use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::finspace::{CMap, FinSpace, Product, Pullback, Space, Subspace};
use crate::format::Document;
use crate::homotopy::{cat, homotopic};
use crate::pointset::PointSet;
use crate::sectional::{relative_sec, relative_secat, relative_tc_bounds, sec, secat, Route};

/// One verdict of one claim on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub claim: &'static str,
    pub status: Status,
    pub detail: String,
    /// The instance as a space/map document, kept for violations and
    /// inconclusive results.
    pub instance: Option<String>,
}

/// Shared inputs of a check.
pub struct Cx<'a> {
    pub limits: &'a Limits,
    pub budget: &'a Budget,
    pub max_points: usize,
}

/// Collects the instance and the verdicts of one check.
#[derive(Default)]
pub struct Inst {
    doc: Document,
    out: Vec<Outcome>,
}

impl Inst {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn space(&mut self, name: &str, s: &Space) {
        let _ = self.doc.add_space(name, s.clone());
    }

    pub fn map(&mut self, name: &str, m: &CMap) {
        let _ = self.doc.add_map(name, m.clone());
    }

    pub fn check(&mut self, claim: &'static str, ok: bool, detail: impl Into<String>) {
        let status = if ok {
            Status::Verified
        } else {
            Status::Violated
        };
        self.push(claim, status, detail);
    }

    pub fn gate(&mut self, claim: &'static str, detail: impl Into<String>) {
        self.push(claim, Status::HypothesisNotMet, detail);
    }

    pub fn push(&mut self, claim: &'static str, status: Status, detail: impl Into<String>) {
        self.out.push(Outcome {
            claim,
            status,
            detail: detail.into(),
            instance: None,
        });
    }

    /// Attaches the instance text to non-verified outcomes.
    pub fn finish(mut self) -> Vec<Outcome> {
        if self
            .out
            .iter()
            .any(|o| matches!(o.status, Status::Violated | Status::Inconclusive))
        {
            let text = self
                .doc
                .to_text()
                .unwrap_or_else(|e| format!("# unprintable: {e}\n"));
            for o in &mut self.out {
                if matches!(o.status, Status::Violated | Status::Inconclusive) {
                    o.instance = Some(text.clone());
                }
            }
        }
        self.out
    }

    /// Turns an error raised mid-check into a verdict for `claim`.
    pub fn fail(mut self, claim: &'static str, err: Error) -> Vec<Outcome> {
        let status = match err {
            Error::BudgetExhausted { .. } | Error::ResourceLimit { .. } => Status::Inconclusive,
            _ => Status::Violated,
        };
        self.out.clear();
        self.push(claim, status, err.to_string());
        self.finish()
    }
}

pub type Check = fn(&mut ChaCha8Rng, &Cx, &mut Inst) -> Result<()>;

/// The random check for a claim id.
pub fn random_check(id: &str) -> Option<Check> {
    Some(match id {
        "secat_le_sec" => secat_le_sec,
        "commuting_triangle" => commuting_triangle,
        "homotopy_triangle" => homotopy_triangle,
        "secat_homotopy_invariance" => secat_homotopy_invariance,
        "secat_le_cat" => secat_le_cat,
        "nullhomotopic_secat_eq_cat" => nullhomotopic_secat_eq_cat,
        "square_rule" => square_rule,
        "homotopy_square_rule" => homotopy_square_rule,
        "product_stability" => product_stability,
        "relative_le_absolute" => relative_le_absolute,
        "denominator_bound" => denominator_bound,
        "relative_secat_le_secat" => relative_secat_le_secat,
        "relative_secat_le_cat" => relative_secat_le_cat,
        "relative_secat_homotopy_invariance" => relative_secat_homotopy_invariance,
        "composition_chain" => composition_chain,
        "retraction_example" => retraction_example,
        "route_equivalence" => route_equivalence,
        "relative_identity" => relative_identity,
        "tc_exact_contractible" => tc_exact_contractible,
        "tc_lower_bound" => tc_lower_bound,
        _ => return None,
    })
}

/// Runs `check` with `claim` as the verdict for errors.
pub fn run_check(claim: &'static str, check: Check, rng: &mut ChaCha8Rng, cx: &Cx) -> Vec<Outcome> {
    let mut inst = Inst::new();
    match check(rng, cx, &mut inst) {
        Ok(()) => inst.finish(),
        Err(e) => inst.fail(claim, e),
    }
}

fn space(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Space {
    random_space(rng, lo, hi).into_space()
}

fn map(rng: &mut ChaCha8Rng, cx: &Cx, x: &Space, y: &Space) -> Result<CMap> {
    random_map(rng, x, y, cx.budget)?
        .ok_or_else(|| Error::Mismatch("no map into an empty space".into()))
}

/// Source, target and a map between them, named `X`, `Y`, `f`.
fn arrow(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst, x_lo: usize) -> Result<CMap> {
    let x = space(rng, x_lo, cx.max_points);
    let y = space(rng, 1, cx.max_points);
    let f = map(rng, cx, &x, &y)?;
    inst.space("X", &x);
    inst.space("Y", &y);
    inst.map("f", &f);
    Ok(f)
}

/// `p: E → B` and `g: X → B`.
fn relative_pair(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<(CMap, CMap)> {
    let b = space(rng, 1, cx.max_points);
    let e = space(rng, 0, cx.max_points);
    let x = space(rng, 0, cx.max_points);
    let p = map(rng, cx, &e, &b)?;
    let g = map(rng, cx, &x, &b)?;
    inst.space("B", &b);
    inst.space("E", &e);
    inst.space("X", &x);
    inst.map("p", &p);
    inst.map("g", &g);
    Ok((p, g))
}

fn secs(f: &CMap, b: &Budget) -> Result<(ExtNat, ExtNat)> {
    Ok((sec(f, b)?.value, secat(f, b)?.value))
}

fn secat_le_sec(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let f = arrow(rng, cx, inst, 0)?;
    let (s, sc) = secs(&f, cx.budget)?;
    inst.check("secat_le_sec", sc <= s, format!("secat={sc} sec={s}"));
    Ok(())
}

/// `f: X → Y`, `h: W → X`.
fn triangle(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<(CMap, CMap)> {
    let f = arrow(rng, cx, inst, 1)?;
    let w = space(rng, 0, cx.max_points);
    let h = map(rng, cx, &w, f.source())?;
    inst.space("W", &w);
    inst.map("h", &h);
    Ok((f, h))
}

fn commuting_triangle(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let (f, h) = triangle(rng, cx, inst)?;
    let f2 = f.compose(&h)?;
    let (s, sc) = secs(&f, cx.budget)?;
    let (s2, sc2) = secs(&f2, cx.budget)?;
    inst.check(
        "commuting_triangle",
        s2 >= s && sc2 >= sc,
        format!("sec(f')={s2} sec(f)={s} secat(f')={sc2} secat(f)={sc}"),
    );
    Ok(())
}

fn homotopy_triangle(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let (f, h) = triangle(rng, cx, inst)?;
    let f2 = random_homotopic(rng, &f.compose(&h)?, cx.budget)?;
    inst.map("f2", &f2);
    let sc = secat(&f, cx.budget)?.value;
    let sc2 = secat(&f2, cx.budget)?.value;
    inst.check(
        "homotopy_triangle",
        sc2 >= sc,
        format!("secat(f')={sc2} secat(f)={sc}"),
    );
    Ok(())
}

fn secat_homotopy_invariance(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let f = arrow(rng, cx, inst, 0)?;
    let f2 = random_homotopic(rng, &f, cx.budget)?;
    inst.map("f2", &f2);
    let a = secat(&f, cx.budget)?.value;
    let b = secat(&f2, cx.budget)?.value;
    inst.check(
        "secat_homotopy_invariance",
        a == b,
        format!("secat(f)={a} secat(f')={b}"),
    );
    Ok(())
}

fn secat_le_cat(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let f = arrow(rng, cx, inst, 1)?;
    let sc = secat(&f, cx.budget)?.value;
    let c = cat(f.target(), cx.budget)?.value;
    let detail = format!("secat={sc} cat={c}");
    if f.meets_every_component() {
        inst.check("secat_le_cat", sc <= c, detail);
    } else {
        inst.gate("secat_le_cat", format!("f misses a component; {detail}"));
    }
    Ok(())
}

fn nullhomotopic_secat_eq_cat(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let x = space(rng, 1, cx.max_points);
    let mut y = space(rng, 1, cx.max_points);
    for _ in 0..4 {
        if y.is_connected() {
            break;
        }
        y = space(rng, 1, cx.max_points);
    }
    let y0 = rng.gen_range(0..y.n());
    let f = random_homotopic(rng, &CMap::constant(&x, &y, y0)?, cx.budget)?;
    inst.space("X", &x);
    inst.space("Y", &y);
    inst.map("f", &f);
    let sc = secat(&f, cx.budget)?.value;
    let c = cat(&y, cx.budget)?.value;
    let detail = format!("secat={sc} cat={c}");
    if y.is_connected() {
        inst.check("nullhomotopic_secat_eq_cat", sc == c, detail);
    } else {
        inst.gate(
            "nullhomotopic_secat_eq_cat",
            format!("Y disconnected; {detail}"),
        );
    }
    Ok(())
}

/// A strictly commuting square `f' ∘ φ = ψ ∘ f`, returned as `(f, ψ, f', φ)`.
fn strict_square(
    rng: &mut ChaCha8Rng,
    cx: &Cx,
    inst: &mut Inst,
) -> Result<(CMap, CMap, CMap, CMap)> {
    let f = arrow(rng, cx, inst, 0)?;
    let y2 = space(rng, 1, cx.max_points);
    let psi = map(rng, cx, f.target(), &y2)?;
    let mut square = None;
    for _ in 0..4 {
        let x2 = space(rng, 1, cx.max_points);
        let f2 = map(rng, cx, &x2, &y2)?;
        let fibers = f2.fibers();
        let allowed = (0..f.source().n())
            .map(|x| fibers[psi.apply(f.apply(x))].clone())
            .collect();
        if let Some(phi) = random_map_within(rng, f.source(), &x2, Some(allowed), cx.budget)? {
            square = Some((f2, phi));
            break;
        }
    }
    let (f2, phi) = match square {
        Some(s) => s,
        None => (psi.compose(&f)?, CMap::identity(f.source())),
    };
    debug_assert_eq!(f2.compose(&phi)?, psi.compose(&f)?);
    inst.space("Y2", &y2);
    inst.space("X2", f2.source());
    inst.map("psi", &psi);
    inst.map("f2", &f2);
    inst.map("phi", &phi);
    Ok((f, psi, f2, phi))
}

fn square_rule(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let (f, psi, f2, phi) = strict_square(rng, cx, inst)?;
    if f2.compose(&phi)? != psi.compose(&f)? {
        inst.check("square_rule", false, "generated square does not commute");
        return Ok(());
    }
    let (s, sc) = secs(&f, cx.budget)?;
    let (sp, scp) = secs(&psi, cx.budget)?;
    let (s2, sc2) = secs(&f2, cx.budget)?;
    inst.check(
        "square_rule",
        s * sp >= s2 && sc * scp >= sc2,
        format!("sec: {s}*{sp} vs {s2}; secat: {sc}*{scp} vs {sc2}"),
    );
    Ok(())
}

fn homotopy_square_rule(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let (f, psi, f2, phi) = strict_square(rng, cx, inst)?;
    let phi = random_homotopic(rng, &phi, cx.budget)?;
    let f = random_homotopic(rng, &f, cx.budget)?;
    inst.map("phi_h", &phi);
    inst.map("f_h", &f);
    if homotopic(&f2.compose(&phi)?, &psi.compose(&f)?, cx.budget)?.is_none() {
        inst.check(
            "homotopy_square_rule",
            false,
            "square does not commute up to homotopy",
        );
        return Ok(());
    }
    let sc = secat(&f, cx.budget)?.value;
    let scp = secat(&psi, cx.budget)?.value;
    let sc2 = secat(&f2, cx.budget)?.value;
    inst.check(
        "homotopy_square_rule",
        sc * scp >= sc2,
        format!("secat: {sc}*{scp} vs {sc2}"),
    );
    Ok(())
}

fn product_stability(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let small = cx.max_points.min(3);
    let z = space(rng, 1, 2);
    let x = space(rng, 0, small);
    let y = space(rng, 1, small);
    let f = map(rng, cx, &x, &y)?;
    let zx = Product::new(&z, &x, cx.limits)?;
    let zy = Product::new(&z, &y, cx.limits)?;
    let idf = Product::map_between(&zx, &zy, &CMap::identity(&z), &f)?;
    inst.space("Z", &z);
    inst.space("X", &x);
    inst.space("Y", &y);
    inst.space("ZX", &zx.space);
    inst.space("ZY", &zy.space);
    inst.map("f", &f);
    inst.map("idf", &idf);
    let (s, sc) = secs(&f, cx.budget)?;
    let (s2, sc2) = secs(&idf, cx.budget)?;
    let detail = format!("sec: {s} vs {s2}; secat: {sc} vs {sc2}");
    if z.is_empty() {
        inst.gate("product_stability", detail);
    } else {
        inst.check("product_stability", s == s2 && sc == sc2, detail);
    }
    Ok(())
}

fn relative_le_absolute(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let (p, g) = relative_pair(rng, cx, inst)?;
    let rs = relative_sec(&p, &g, Route::Pullback, cx.limits, cx.budget)?.value;
    let s = sec(&p, cx.budget)?.value;
    inst.check(
        "relative_le_absolute",
        rs <= s,
        format!("sec_g={rs} sec={s}"),
    );
    Ok(())
}

fn denominator_bound(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let (p, g) = relative_pair(rng, cx, inst)?;
    let rs = relative_sec(&p, &g, Route::Pullback, cx.limits, cx.budget)?.value;
    let rsc = relative_secat(&p, &g, cx.limits, cx.budget)?.value;
    let (sg, scg) = secs(&g, cx.budget)?;
    let (sp, scp) = secs(&p, cx.budget)?;
    inst.check(
        "denominator_bound",
        rs * sg >= sp && rsc * scg >= scp,
        format!("sec: {rs}*{sg} vs {sp}; secat: {rsc}*{scg} vs {scp}"),
    );
    Ok(())
}

fn relative_secat_le_secat(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let (p, g) = relative_pair(rng, cx, inst)?;
    let rs = relative_sec(&p, &g, Route::Pullback, cx.limits, cx.budget)?.value;
    let rsc = relative_secat(&p, &g, cx.limits, cx.budget)?.value;
    inst.check(
        "relative_secat_le_secat",
        rsc <= rs,
        format!("secat_g={rsc} sec_g={rs}"),
    );
    Ok(())
}

fn relative_secat_le_cat(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let (p, g) = relative_pair(rng, cx, inst)?;
    let pb = Pullback::new(&p, &g, cx.limits)?;
    let rsc = secat(&pb.to_x, cx.budget)?.value;
    let c = cat(g.source(), cx.budget)?.value;
    let detail = format!("secat_g={rsc} cat(X)={c}");
    if pb.to_x.meets_every_component() {
        inst.check("relative_secat_le_cat", rsc <= c, detail);
    } else {
        inst.gate(
            "relative_secat_le_cat",
            format!("g*(p) misses a component; {detail}"),
        );
    }
    Ok(())
}

fn relative_secat_homotopy_invariance(
    rng: &mut ChaCha8Rng,
    cx: &Cx,
    inst: &mut Inst,
) -> Result<()> {
    let b = space(rng, 1, cx.max_points.min(3));
    let x = space(rng, 1, cx.max_points);
    let g = map(rng, cx, &x, &b)?;
    let g2 = random_homotopic(rng, &g, cx.budget)?;
    let projection = rng.gen_bool(0.5);
    let p = if projection {
        random_projection(rng, &b, 2, cx.limits)?
    } else {
        let e = space(rng, 0, cx.max_points);
        map(rng, cx, &e, &b)?
    };
    inst.space("B", &b);
    inst.space("X", &x);
    inst.space("E", p.source());
    inst.map("p", &p);
    inst.map("g", &g);
    inst.map("g2", &g2);
    let a = relative_secat(&p, &g, cx.limits, cx.budget)?.value;
    let a2 = relative_secat(&p, &g2, cx.limits, cx.budget)?.value;
    let detail = format!("secat_g={a} secat_g'={a2}");
    if projection {
        inst.check("relative_secat_homotopy_invariance", a == a2, detail);
    } else {
        inst.gate(
            "relative_secat_homotopy_invariance",
            format!("p not a product projection; {detail}"),
        );
    }
    Ok(())
}

fn composition_chain(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let b = space(rng, 1, cx.max_points);
    let e2 = space(rng, 1, cx.max_points);
    let e1 = space(rng, 0, cx.max_points);
    let x = space(rng, 0, cx.max_points);
    let p1 = map(rng, cx, &e1, &e2)?;
    let p2 = map(rng, cx, &e2, &b)?;
    let g = map(rng, cx, &x, &b)?;
    for (n, s) in [("B", &b), ("E1", &e1), ("E2", &e2), ("X", &x)] {
        inst.space(n, s);
    }
    inst.map("p1", &p1);
    inst.map("p2", &p2);
    inst.map("g", &g);
    let lo = relative_sec(&p2, &g, Route::Pullback, cx.limits, cx.budget)?.value;
    let mid = relative_sec(&p2.compose(&p1)?, &g, Route::Pullback, cx.limits, cx.budget)?.value;
    let s1 = sec(&p1, cx.budget)?.value;
    inst.check(
        "composition_chain",
        lo <= mid && mid <= lo * s1,
        format!("sec_g(p2)={lo} sec_g(p2.p1)={mid} sec(p1)={s1}"),
    );
    Ok(())
}

fn retraction_example(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let x = space(rng, 1, cx.max_points);
    inst.space("X", &x);
    let Some((sub, r)) = random_retraction(rng, &x, cx.budget)? else {
        inst.gate(
            "retraction_example",
            "no retraction onto the drawn open subsets",
        );
        return Ok(());
    };
    let e = space(rng, 0, cx.max_points);
    let p = map(rng, cx, &e, &sub.space)?;
    inst.space("B", &sub.space);
    inst.space("E", &e);
    inst.map("r", &r);
    inst.map("p", &p);
    let rs = relative_sec(&p, &r, Route::Pullback, cx.limits, cx.budget)?.value;
    let s = sec(&p, cx.budget)?.value;
    inst.check("retraction_example", rs == s, format!("sec_r={rs} sec={s}"));
    Ok(())
}

fn route_equivalence(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let (p, g) = relative_pair(rng, cx, inst)?;
    let pb = Pullback::new(&p, &g, cx.limits)?;
    let via_pullback = sec(&pb.to_x, cx.budget)?;
    let via_lift = relative_sec(&p, &g, Route::Lift, cx.limits, cx.budget)?;
    let mut certified = true;
    if let Some(c) = &via_pullback.certificate {
        certified &= c.verify_sections(&pb.to_x).is_ok();
    }
    if let Some(c) = &via_lift.certificate {
        certified &= c.verify_lifts(&p, &g).is_ok();
    }
    inst.check(
        "route_equivalence",
        via_pullback.value == via_lift.value && certified,
        format!(
            "pullback={} lift={} certificates={}",
            via_pullback.value,
            via_lift.value,
            if certified { "ok" } else { "invalid" }
        ),
    );
    Ok(())
}

fn relative_identity(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let p = arrow(rng, cx, inst, 0)?;
    let id = CMap::identity(p.target());
    let rs = relative_sec(&p, &id, Route::Pullback, cx.limits, cx.budget)?.value;
    let rsc = relative_secat(&p, &id, cx.limits, cx.budget)?.value;
    let (s, sc) = secs(&p, cx.budget)?;
    inst.check(
        "relative_identity",
        rs == s && rsc == sc,
        format!("sec: {rs} vs {s}; secat: {rsc} vs {sc}"),
    );
    Ok(())
}

fn tc_instance(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst, z: Space) -> Result<(CMap, CMap)> {
    let y = space(rng, 1, cx.max_points);
    let x = space(rng, 0, cx.max_points);
    let f = map(rng, cx, &z, &y)?;
    let g = map(rng, cx, &x, &y)?;
    inst.space("Z", &z);
    inst.space("Y", &y);
    inst.space("X", &x);
    inst.map("f", &f);
    inst.map("g", &g);
    Ok((f, g))
}

fn tc_exact_contractible(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let z = random_contractible(rng, cx.max_points).into_space();
    let (f, g) = tc_instance(rng, cx, inst, z)?;
    let t = relative_tc_bounds(&f, &g, cx.limits, cx.budget)?;
    let s = relative_sec(&f, &g, Route::Lift, cx.limits, cx.budget)?.value;
    inst.check(
        "tc_exact_contractible",
        t.exact && t.upper == Some(t.lower) && t.lower == s,
        format!(
            "lower={} upper={:?} exact={} sec_g={s}",
            t.lower, t.upper, t.exact
        ),
    );
    Ok(())
}

fn tc_lower_bound(rng: &mut ChaCha8Rng, cx: &Cx, inst: &mut Inst) -> Result<()> {
    let z = space(rng, 1, cx.max_points);
    let (f, g) = tc_instance(rng, cx, inst, z)?;
    let t = relative_tc_bounds(&f, &g, cx.limits, cx.budget)?;
    let s = relative_sec(&f, &g, Route::Lift, cx.limits, cx.budget)?.value;
    let interval = t.upper.is_none_or(|u| t.lower <= u);
    let exact_ok = t.exact == crate::homotopy::is_contractible(f.source());
    inst.check(
        "tc_lower_bound",
        t.lower == s && interval && exact_ok,
        format!(
            "lower={} upper={:?} exact={} sec_g={s}",
            t.lower, t.upper, t.exact
        ),
    );
    Ok(())
}

/// The fixed instance: `p` the constant map from a point to the cone on
/// the pseudocircle, `g` the inclusion of the pseudocircle as an open
/// subspace. `secat(p) = 1` while `secat(g*(p)) = cat(C) = 2`.
pub fn pullback_secat_regression(cx: &Cx) -> Vec<Outcome> {
    let claim = "pullback_secat_regression";
    let mut inst = Inst::new();
    let run = |inst: &mut Inst| -> Result<()> {
        let c = FinSpace::pseudocircle();
        let b = c.cone().into_space();
        let pt = FinSpace::point().into_space();
        let p = CMap::constant(&pt, &b, 0)?;
        let a = Subspace::new(&b, &PointSet::from_indices(b.n(), 0..c.n()))?;
        inst.space("B", &b);
        inst.space("P", &pt);
        inst.space("A", &a.space);
        inst.map("p", &p);
        inst.map("g", &a.inclusion);
        let pb = Pullback::new(&p, &a.inclusion, cx.limits)?;
        let (s, sc) = secs(&p, cx.budget)?;
        let (s2, sc2) = secs(&pb.to_x, cx.budget)?;
        inst.check(
            claim,
            s2 <= s && sc2 > sc,
            format!("sec: {s2} <= {s}; secat: {sc2} > {sc}"),
        );
        Ok(())
    };
    match run(&mut inst) {
        Ok(()) => inst.finish(),
        Err(e) => inst.fail(claim, e),
    }
}
