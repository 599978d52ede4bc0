//! Registry of every property the suite checks.

use crate::coincidence::{
    CLAIM_CP_IMPLIES_FPP, CLAIM_CP_IMPLIES_FPP_CONSTRUCTION, CLAIM_KEY_LEMMA, CLAIM_MAIN_THEOREM,
    CLAIM_REMARK,
};

/// How instances for a claim are produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// Seeded random instances, `instances` of them.
    Random,
    /// Seeded random instances, `tc_instances` of them.
    RandomTc,
    /// Exhaustive enumeration over the census.
    Census,
    /// One fixed instance.
    Fixed,
}

#[derive(Clone, Copy, Debug)]
pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub source: Source,
    /// Counted towards the exit status when inconclusive.
    pub gated: bool,
}

const fn claim(id: &'static str, statement: &'static str, source: Source) -> Claim {
    Claim {
        id,
        statement,
        source,
        gated: true,
    }
}

pub const CLAIMS: &[Claim] = &[
    // Spaces and maps.
    claim(
        "census_soundness",
        "census spaces are preorders, pairwise non-homeomorphic, canonical",
        Source::Census,
    ),
    claim(
        "open_set_lattice",
        "U_x is the least open containing x; opens closed under union and intersection",
        Source::Census,
    ),
    claim(
        "hausdorff_iff_discrete",
        "Hausdorff iff every singleton is open",
        Source::Census,
    ),
    claim(
        "configuration_subspace",
        "F(X,2) equals the off-diagonal subspace of X x X",
        Source::Census,
    ),
    claim(
        "pullback_along_identity",
        "1_B*(p) has source homeomorphic to E",
        Source::Census,
    ),
    claim(
        "map_enumeration_closure",
        "composites of enumerated maps revalidate; identity is neutral",
        Source::Census,
    ),
    // Homotopy.
    claim(
        "homotopy_equivalence_relation",
        "fence homotopy is reflexive, symmetric and transitive",
        Source::Census,
    ),
    claim(
        "contractibility_oracles",
        "core(X) is a point iff 1_X is fence-homotopic to a constant",
        Source::Census,
    ),
    claim(
        "core_retraction",
        "r . i = 1 on the core and i . r ~ 1_X",
        Source::Census,
    ),
    claim(
        "cat_core_invariance",
        "cat(X) = cat(core(X))",
        Source::Census,
    ),
    claim(
        "cat_one_iff_contractible",
        "cat(X) = 1 iff X is contractible",
        Source::Census,
    ),
    // Sectional numbers.
    claim("secat_le_sec", "secat(f) <= sec(f)", Source::Random),
    claim(
        "commuting_triangle",
        "f' = f . h implies sec(f') >= sec(f) and secat(f') >= secat(f)",
        Source::Random,
    ),
    claim(
        "homotopy_triangle",
        "f' ~ f . h implies secat(f') >= secat(f)",
        Source::Random,
    ),
    claim(
        "secat_homotopy_invariance",
        "f ~ f' implies secat(f) = secat(f')",
        Source::Random,
    ),
    claim(
        "secat_le_cat",
        "secat(f) <= cat(Y) when f meets every component of Y",
        Source::Random,
    ),
    claim(
        "nullhomotopic_secat_eq_cat",
        "f nullhomotopic, X nonempty, Y connected implies secat(f) = cat(Y)",
        Source::Random,
    ),
    claim(
        "square_rule",
        "f'.phi = psi.f implies sec(f) sec(psi) >= sec(f') and secat(f) secat(psi) >= secat(f')",
        Source::Random,
    ),
    claim(
        "homotopy_square_rule",
        "f'.phi ~ psi.f implies secat(f) secat(psi) >= secat(f')",
        Source::Random,
    ),
    claim(
        "product_stability",
        "sec(1_Z x f) = sec(f) and secat(1_Z x f) = secat(f) for nonempty Z",
        Source::Random,
    ),
    claim(
        "pullback_secat_regression",
        "a canonical pullback along an open inclusion can raise secat while sec does not rise",
        Source::Fixed,
    ),
    // Relative sectional numbers.
    claim("relative_le_absolute", "sec_g(p) <= sec(p)", Source::Random),
    claim(
        "denominator_bound",
        "sec_g(p) sec(g) >= sec(p) and secat_g(p) secat(g) >= secat(p)",
        Source::Random,
    ),
    claim(
        "relative_secat_le_secat",
        "secat_g(p) <= sec_g(p)",
        Source::Random,
    ),
    claim(
        "relative_secat_le_cat",
        "secat_g(p) <= cat(X) when g*(p) meets every component of X",
        Source::Random,
    ),
    claim(
        "relative_secat_homotopy_invariance",
        "g ~ g' implies secat_g(p) = secat_g'(p) for product projections p",
        Source::Random,
    ),
    claim(
        "composition_chain",
        "sec_g(p2) <= sec_g(p2 . p1) <= sec_g(p2) sec(p1)",
        Source::Random,
    ),
    claim(
        "retraction_example",
        "r: X -> B a retraction onto an open B implies sec_r(p) = sec(p)",
        Source::Random,
    ),
    claim(
        "route_equivalence",
        "sec_g(p) by pullback sections equals sec_g(p) by lifts; certificates verify",
        Source::Random,
    ),
    claim(
        "relative_identity",
        "sec_1(p) = sec(p) and secat_1(p) = secat(p)",
        Source::Random,
    ),
    claim(
        "tc_exact_contractible",
        "Z contractible implies TC_g(f) = sec_g(f), reported exactly",
        Source::RandomTc,
    ),
    claim(
        "tc_lower_bound",
        "the reported lower bound is sec_g(f) and lower <= upper",
        Source::RandomTc,
    ),
    // Coincidence.
    claim(
        "fpp_iff_cp_identity",
        "X has FPP iff (X, X; 1_X) has CP",
        Source::Census,
    ),
    claim(
        "cp_witness_revalidates",
        "every coincidence-free witness is continuous and avoids g",
        Source::Census,
    ),
    claim(
        "cp_target_restriction",
        "if g lands in an open A and (X, A; g) has CP, witnesses into Y leave A",
        Source::Census,
    ),
    claim(
        CLAIM_REMARK,
        "sec_g(pi_{2,1}) = 1 iff (X, Y; g) fails CP",
        Source::Census,
    ),
    claim(
        CLAIM_KEY_LEMMA,
        "Y Hausdorff with |Y| >= k implies sec_g(pi_{k,1}) <= k",
        Source::Census,
    ),
    claim(
        CLAIM_MAIN_THEOREM,
        "Y Hausdorff with |Y| >= 2: CP iff sec_g(pi_{2,1}) = 2",
        Source::Census,
    ),
    claim(
        CLAIM_CP_IMPLIES_FPP,
        "(X, Y; g) has CP implies Y has FPP",
        Source::Census,
    ),
    claim(
        CLAIM_CP_IMPLIES_FPP_CONSTRUCTION,
        "a fixed-point-free f on Y makes f . g coincidence-free with g",
        Source::Census,
    ),
];

pub fn lookup(id: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.id == id)
}

pub fn position(id: &str) -> Option<usize> {
    CLAIMS.iter().position(|c| c.id == id)
}
