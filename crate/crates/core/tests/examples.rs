use secnum_core::coincidence::{
    check_cp_implies_fpp, check_key_lemma, check_main_theorem, check_remark, has_cp, has_fpp,
    Status, CLAIM_CP_IMPLIES_FPP, CLAIM_KEY_LEMMA, CLAIM_MAIN_THEOREM, CLAIM_REMARK,
};
use secnum_core::finspace::{enumerate_maps, ConfigurationSpace, Product, Pullback, Subspace};
use secnum_core::format::Document;
use secnum_core::harness::census_spaces;
use secnum_core::homotopy::{cat, core, homotopic, is_contractible, is_nullhomotopic_in};
use secnum_core::sectional::{
    relative_sec, relative_tc_bounds, sec, secat, sectionable_opens, Mode, Route,
};
use secnum_core::{Budget, CMap, Error, ExtNat, FinSpace, Limits, PointSet, Space};

fn s() -> Space {
    FinSpace::sierpinski().into_space()
}

fn c() -> Space {
    FinSpace::pseudocircle().into_space()
}

fn d(n: usize) -> Space {
    FinSpace::discrete(n).into_space()
}

fn pt() -> Space {
    FinSpace::point().into_space()
}

fn b() -> Budget {
    Budget::new(10_000_000)
}

fn lim() -> Limits {
    Limits::default()
}

fn opens(x: &Space) -> Vec<Vec<usize>> {
    x.all_open_sets(&lim())
        .unwrap()
        .iter()
        .map(|u| u.to_vec())
        .collect()
}

fn pi21(y: &Space) -> CMap {
    ConfigurationSpace::new(y, 2, &lim())
        .unwrap()
        .projection(1)
        .unwrap()
        .clone()
}

fn set(n: usize, pts: &[usize]) -> PointSet {
    PointSet::from_indices(n, pts.iter().copied())
}

#[test]
fn sierpinski_basics() {
    let s = s();
    assert!(s.reach(1, 0) && !s.reach(0, 1));
    assert_eq!(s.minimal_open(1).unwrap().to_vec(), vec![0, 1]);
    assert_eq!(s.minimal_open(0).unwrap().to_vec(), vec![0]);
    assert_eq!(opens(&s), vec![vec![], vec![0], vec![0, 1]]);
    assert!(!s.is_hausdorff());
    assert!(d(2).is_hausdorff() && pt().is_hausdorff());
    assert_eq!(opens(&d(2)).len(), 4);
    assert_eq!(opens(&c()).len(), 7);
}

#[test]
fn swap_on_sierpinski_is_discontinuous() {
    let s = s();
    let e = CMap::new(&s, &s, vec![1, 0]).unwrap_err();
    assert!(matches!(e, Error::Discontinuous { x: 1, x2: 0, .. }), "{e}");
    assert!(e.to_string().contains("discontinuous"));
}

#[test]
fn products_subspaces_and_configurations() {
    let p = Product::new(&s(), &s(), &lim()).unwrap();
    assert_eq!(p.space.n(), 4);
    let off = set(4, &[p.index(0, 1), p.index(1, 0)]);
    let sub = Subspace::new(&p.space, &off).unwrap();
    assert!(sub.space.is_isomorphic(&FinSpace::discrete(2)));

    let dd = Product::new(&d(2), &d(2), &lim()).unwrap();
    assert!(dd.space.is_isomorphic(&FinSpace::discrete(4)));

    assert_eq!(
        ConfigurationSpace::new(&pt(), 2, &lim())
            .unwrap()
            .space()
            .n(),
        0
    );
    let fs = ConfigurationSpace::new(&s(), 2, &lim()).unwrap();
    assert!(fs.space().is_isomorphic(&FinSpace::discrete(2)));
    assert_eq!(fs.tuples(), &[vec![0, 1], vec![1, 0]]);
}

#[test]
fn pullbacks() {
    let p = CMap::constant(&pt(), &s(), 0).unwrap();
    let id = CMap::identity(&s());
    let pb = Pullback::new(&p, &id, &lim()).unwrap();
    assert!(pb.space.is_isomorphic(&FinSpace::point()));

    let e = FinSpace::empty().into_space();
    let p = CMap::new(&e, &s(), vec![]).unwrap();
    assert_eq!(Pullback::new(&p, &id, &lim()).unwrap().space.n(), 0);
}

#[test]
fn map_counts() {
    let s = s();
    assert_eq!(enumerate_maps(&pt(), &c(), None, &b()).unwrap().count(), 4);
    let all: Vec<_> = enumerate_maps(&s, &s, None, &b())
        .unwrap()
        .collect::<Result<_, _>>()
        .unwrap();
    assert_eq!(all.len(), 3);
    let off = vec![set(2, &[1]), set(2, &[0])];
    assert_eq!(enumerate_maps(&s, &s, Some(off), &b()).unwrap().count(), 0);
}

#[test]
fn homotopy_examples() {
    let s = s();
    let id = CMap::identity(&s);
    assert_eq!(homotopic(&id, &id, &b()).unwrap().unwrap().len(), 0);
    let top = CMap::constant(&s, &s, 1).unwrap();
    assert_eq!(homotopic(&id, &top, &b()).unwrap().unwrap().len(), 1);
    let d2 = d(2);
    let (a, z) = (
        CMap::constant(&d2, &d2, 0).unwrap(),
        CMap::constant(&d2, &d2, 1).unwrap(),
    );
    assert!(homotopic(&a, &z, &b()).unwrap().is_none());

    assert_eq!(core(&s).space.n(), 1);
    assert_eq!(core(&c()).space.n(), 4);
    assert_eq!(core(&d(3)).space.n(), 3);
    assert!(is_contractible(&s) && is_contractible(&pt()) && !is_contractible(&c()));

    let empty = Subspace::new(&s, &PointSet::empty(2)).unwrap();
    assert!(is_nullhomotopic_in(&empty.inclusion, &b()).unwrap());
    let zero = Subspace::new(&s, &set(2, &[0])).unwrap();
    assert!(is_nullhomotopic_in(&zero.inclusion, &b()).unwrap());
    assert!(!is_nullhomotopic_in(&CMap::identity(&c()), &b()).unwrap());

    assert_eq!(cat(&pt(), &b()).unwrap().value, ExtNat::ONE);
    assert_eq!(cat(&s, &b()).unwrap().value, ExtNat::ONE);
    assert_eq!(cat(&c(), &b()).unwrap().value, ExtNat::Finite(2));
}

#[test]
fn sectional_examples() {
    let y = s();
    assert_eq!(
        sectionable_opens(&CMap::identity(&y), Mode::Section, &b())
            .unwrap()
            .len(),
        1
    );
    let e = FinSpace::empty().into_space();
    let none = CMap::new(&e, &y, vec![]).unwrap();
    assert!(sectionable_opens(&none, Mode::Section, &b())
        .unwrap()
        .is_empty());

    let pi = pi21(&y);
    let got: Vec<_> = sectionable_opens(&pi, Mode::Section, &b())
        .unwrap()
        .iter()
        .map(|(u, _)| u.to_vec())
        .collect();
    assert_eq!(got, vec![vec![0]]);
    let out = sec(&pi, &b()).unwrap();
    assert_eq!(out.value, ExtNat::Infinite);
    assert_eq!(out.uncovered_point, Some(1));

    assert_eq!(sec(&pi21(&d(2)), &b()).unwrap().value, ExtNat::ONE);
    assert_eq!(
        secat(&CMap::constant(&pt(), &c(), 0).unwrap(), &b())
            .unwrap()
            .value,
        ExtNat::Finite(2)
    );
}

#[test]
fn relative_examples() {
    let y = s();
    let id = CMap::identity(&y);
    let pi = pi21(&y);
    for route in [Route::Pullback, Route::Lift] {
        assert_eq!(
            relative_sec(&pi, &id, route, &lim(), &b()).unwrap().value,
            ExtNat::Infinite
        );
    }
    let g = CMap::constant(&pt(), &y, 1).unwrap();
    assert_eq!(
        relative_sec(&id, &g, Route::Lift, &lim(), &b())
            .unwrap()
            .value,
        ExtNat::ONE
    );

    let t = relative_tc_bounds(&id, &id, &lim(), &b()).unwrap();
    assert!(t.exact);
    assert_eq!((t.lower, t.upper), (ExtNat::ONE, Some(ExtNat::ONE)));
    let cid = CMap::identity(&c());
    let t = relative_tc_bounds(&cid, &cid, &lim(), &b()).unwrap();
    assert!(!t.exact && t.upper.is_none());
}

#[test]
fn fixed_points_and_coincidences() {
    assert!(has_fpp(&pt(), &b()).unwrap().holds);
    assert!(has_fpp(&s(), &b()).unwrap().holds);
    let v = has_fpp(&c(), &b()).unwrap();
    assert!(!v.holds);
    let w = v.witness.unwrap();
    assert!((0..4).all(|x| w.apply(x) != x));

    assert!(
        has_cp(&CMap::constant(&s(), &pt(), 0).unwrap(), &b())
            .unwrap()
            .holds
    );
    let g = CMap::constant(&s(), &d(2), 0).unwrap();
    let v = has_cp(&g, &b()).unwrap();
    assert!(!v.holds && v.witness.unwrap().assignment() == [1, 1]);
    assert!(has_cp(&CMap::identity(&s()), &b()).unwrap().holds);
}

#[test]
fn theorem_checkers() {
    let id = CMap::identity(&s());
    let onto_pt = CMap::constant(&s(), &pt(), 0).unwrap();
    let to_d2 = CMap::constant(&s(), &d(2), 0).unwrap();

    let r = check_remark(&to_d2, &lim(), &b()).unwrap();
    assert_eq!(r.status(CLAIM_REMARK), Some(Status::Verified));
    assert_eq!(r.quantities.sec_g, Some(ExtNat::ONE));
    let r = check_remark(&id, &lim(), &b()).unwrap();
    assert_eq!(r.status(CLAIM_REMARK), Some(Status::Verified));
    assert_eq!(r.quantities.sec_g, Some(ExtNat::Infinite));
    let r = check_remark(&onto_pt, &lim(), &b()).unwrap();
    assert_eq!(
        (r.status(CLAIM_REMARK), r.quantities.cp),
        (Some(Status::Verified), Some(true))
    );

    let r = check_key_lemma(&to_d2, 2, &lim(), &b()).unwrap();
    assert_eq!(r.status(CLAIM_KEY_LEMMA), Some(Status::Verified));
    let r = check_key_lemma(&id, 2, &lim(), &b()).unwrap();
    assert_eq!(r.status(CLAIM_KEY_LEMMA), Some(Status::HypothesisNotMet));
    assert_eq!(r.quantities.sec_g, Some(ExtNat::Infinite));
    let r = check_key_lemma(&onto_pt, 2, &lim(), &b()).unwrap();
    assert_eq!(r.status(CLAIM_KEY_LEMMA), Some(Status::HypothesisNotMet));

    let r = check_main_theorem(&to_d2, &lim(), &b()).unwrap();
    assert_eq!(r.status(CLAIM_MAIN_THEOREM), Some(Status::Verified));
    let r = check_main_theorem(&id, &lim(), &b()).unwrap();
    assert_eq!(r.status(CLAIM_MAIN_THEOREM), Some(Status::HypothesisNotMet));
    assert_eq!(r.quantities.biconditional, Some(false));
    let r = check_main_theorem(&onto_pt, &lim(), &b()).unwrap();
    assert_eq!(r.status(CLAIM_MAIN_THEOREM), Some(Status::HypothesisNotMet));

    assert_eq!(
        check_cp_implies_fpp(&id, &b())
            .unwrap()
            .status(CLAIM_CP_IMPLIES_FPP),
        Some(Status::Verified)
    );
    assert_eq!(
        check_cp_implies_fpp(&onto_pt, &b())
            .unwrap()
            .status(CLAIM_CP_IMPLIES_FPP),
        Some(Status::Verified)
    );
    let into_c = CMap::constant(&s(), &c(), 2).unwrap();
    let r = check_cp_implies_fpp(&into_c, &b()).unwrap();
    assert_eq!(r.quantities.cp, Some(false));
}

#[test]
fn census_counts() {
    assert_eq!(census_spaces(1, false).unwrap().len(), 1);
    assert_eq!(census_spaces(2, false).unwrap().len(), 3);
    assert_eq!(census_spaces(3, true).unwrap().len(), 5);
    assert!(matches!(
        census_spaces(6, false),
        Err(Error::ResourceLimit { .. })
    ));
}

#[test]
fn document_round_trip() {
    let text = "space S 2\nreach 1 0\nlabel 1 top\nmap id S S\nsend 0 0\nsend 1 1\n";
    let doc = Document::parse(text).unwrap();
    assert_eq!(doc.space("S").unwrap().label(1), Some("top"));
    let again = Document::parse(&doc.to_text().unwrap()).unwrap();
    assert_eq!(again.map("id").unwrap(), doc.map("id").unwrap());
    assert!(matches!(
        Document::parse("space S 2\nreach 1 0\nmap f S S\nsend 0 1\nsend 1 0\n"),
        Err(Error::Parse { line: 3, .. })
    ));
}

#[test]
fn every_claim_is_documented() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/claims.md");
    let doc = std::fs::read_to_string(path).unwrap();
    for c in secnum_core::harness::CLAIMS {
        assert!(doc.contains(&format!("`{}`", c.id)), "{} is undocumented", c.id);
    }
}
