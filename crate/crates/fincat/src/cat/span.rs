//! The iso-comma span, pullbacks of surjective equivalences, and zigzag
//! closure.
//!
//! Given an equivalence `F: A -> B`, the apex category has as objects the
//! triples `(a, b, l)` with `l: F(a) -> b` invertible, and as morphisms the
//! pairs `(f, g)` making the evident square commute: `g ∘ l = l' ∘ F(f)`.
//! Both projections are surjective equivalences, which the builder certifies
//! by re-running the property checker rather than trusting the construction.

use super::{
    check_functor_properties, structural, validate_functor, CatError, FinCategory, FinFunctor,
    FunctorPropertyReport,
};
use crate::oracle::{self, SearchBudget, SearchOutcome};
use crate::tuple_id;
use serde::Serialize;
use std::collections::BTreeMap;

/// An object of the iso-comma apex: `ell` is invertible from `F(a)` to `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoCommaObject {
    pub a: String,
    pub b: String,
    pub ell: String,
}

impl IsoCommaObject {
    pub fn id(&self) -> String {
        tuple_id(&[&self.a, &self.b, &self.ell])
    }
}

/// Why a span construction refused its input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpanRejection {
    /// The input functor is not a certified equivalence; the report carries
    /// the evidence. The left leg alone would still work, but the right leg
    /// could not be certified, so nothing is emitted.
    NotAnEquivalence(Box<FunctorPropertyReport>),
    Invalid(CatError),
}

impl From<CatError> for SpanRejection {
    fn from(e: CatError) -> Self {
        SpanRejection::Invalid(e)
    }
}

impl std::fmt::Display for SpanRejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpanRejection::NotAnEquivalence(_) => {
                write!(f, "input functor is not a certified equivalence")
            }
            SpanRejection::Invalid(e) => write!(f, "{e}"),
        }
    }
}

/// A morphism of the iso-comma apex, kept with its components so later
/// stages can look composites up by component pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatApexMorphism {
    pub id: String,
    pub src: String,
    pub tgt: String,
    pub f: String,
    pub g: String,
}

/// A constructed span with its certification report.
#[derive(Debug, Clone)]
pub struct CatSpanResult {
    pub apex: FinCategory,
    pub left_leg: FinFunctor,
    pub right_leg: FinFunctor,
    pub left_report: FunctorPropertyReport,
    pub right_report: FunctorPropertyReport,
    pub objects: Vec<IsoCommaObject>,
    pub apex_morphisms: Vec<CatApexMorphism>,
}

impl CatSpanResult {
    pub fn both_legs_certified(&self) -> bool {
        self.left_report.certifies_surjective_equivalence()
            && self.right_report.certifies_surjective_equivalence()
    }

    pub fn object_id(&self, a: &str, b: &str, ell: &str) -> Option<String> {
        self.objects
            .iter()
            .find(|o| o.a == a && o.b == b && o.ell == ell)
            .map(|o| o.id())
    }

    pub fn morphism_id(&self, src: &str, tgt: &str, f: &str, g: &str) -> Option<&str> {
        self.apex_morphisms
            .iter()
            .find(|m| m.src == src && m.tgt == tgt && m.f == f && m.g == g)
            .map(|m| m.id.as_str())
    }
}

/// Builds the iso-comma span over an equivalence.
///
/// Refuses inputs that are not certified equivalences: the right leg of the
/// span could not be certified for them, and downstream constructions
/// consume certified spans only.
pub fn build_span_cat(f: &FinFunctor) -> Result<CatSpanResult, SpanRejection> {
    let report = check_functor_properties(f)?;
    if !report.certifies_equivalence() {
        return Err(SpanRejection::NotAnEquivalence(Box::new(report)));
    }
    let a_cat = f.source();
    let b_cat = f.target();

    // Objects: triples (a, b, l) with l: F(a) -> b invertible.
    let mut objs: Vec<IsoCommaObject> = Vec::new();
    for a in 0..a_cat.object_count() {
        for b in 0..b_cat.object_count() {
            for ell in b_cat.hom_ixs(f.obj_ix(a), b) {
                if b_cat.is_iso_ix(ell) {
                    objs.push(IsoCommaObject {
                        a: a_cat.objects()[a].clone(),
                        b: b_cat.objects()[b].clone(),
                        ell: b_cat.morphisms()[ell].clone(),
                    });
                }
            }
        }
    }

    // Morphisms: pairs (f, g) between triples with g ∘ l = l' ∘ F(f).
    // The identifier includes source and target triples since the same
    // component pair can connect several triples.
    let mut mors: Vec<CatApexMorphism> = Vec::new();
    for o1 in &objs {
        let a1 = a_cat.object_ix(&o1.a).unwrap();
        let b1 = b_cat.object_ix(&o1.b).unwrap();
        let l1 = b_cat.morphism_ix(&o1.ell).unwrap();
        for o2 in &objs {
            let a2 = a_cat.object_ix(&o2.a).unwrap();
            let b2 = b_cat.object_ix(&o2.b).unwrap();
            let l2 = b_cat.morphism_ix(&o2.ell).unwrap();
            for fm in a_cat.hom_ixs(a1, a2) {
                for gm in b_cat.hom_ixs(b1, b2) {
                    if b_cat.compose_ix(gm, l1) == b_cat.compose_ix(l2, f.mor_ix(fm)) {
                        let o1id = o1.id();
                        let o2id = o2.id();
                        let id = tuple_id(&[
                            &o1id,
                            &o2id,
                            &a_cat.morphisms()[fm],
                            &b_cat.morphisms()[gm],
                        ]);
                        mors.push(CatApexMorphism {
                            id,
                            src: o1id,
                            tgt: o2id,
                            f: a_cat.morphisms()[fm].clone(),
                            g: b_cat.morphisms()[gm].clone(),
                        });
                    }
                }
            }
        }
    }

    let mor_lookup: BTreeMap<(&str, &str, &str, &str), &str> = mors
        .iter()
        .map(|m| {
            (
                (m.src.as_str(), m.tgt.as_str(), m.f.as_str(), m.g.as_str()),
                m.id.as_str(),
            )
        })
        .collect();

    let identities: Vec<(String, String)> = objs
        .iter()
        .map(|o| {
            let a = a_cat.object_ix(&o.a).unwrap();
            let b = b_cat.object_ix(&o.b).unwrap();
            let oid = o.id();
            let key = (
                oid.as_str(),
                oid.as_str(),
                a_cat.morphisms()[a_cat.identity_ix(a)].as_str(),
                b_cat.morphisms()[b_cat.identity_ix(b)].as_str(),
            );
            (oid.clone(), mor_lookup[&key].to_string())
        })
        .collect();

    let mut compose: Vec<(String, String, String)> = Vec::new();
    for m1 in &mors {
        for m2 in &mors {
            if m1.tgt != m2.src {
                continue;
            }
            let fa = a_cat.compose(&m2.f, &m1.f).expect("composable");
            let gb = b_cat.compose(&m2.g, &m1.g).expect("composable");
            let key = (m1.src.as_str(), m2.tgt.as_str(), fa, gb);
            let result = mor_lookup
                .get(&key)
                .ok_or_else(|| structural("apex composite escaped the enumerated morphisms"))?;
            compose.push((m2.id.clone(), m1.id.clone(), result.to_string()));
        }
    }

    let apex = FinCategory::from_tables(
        &format!("span({})", f.name()),
        objs.iter().map(|o| o.id()).collect(),
        mors.iter()
            .map(|m| (m.id.clone(), m.src.clone(), m.tgt.clone()))
            .collect(),
        identities,
        compose,
    )?;

    let left_obj: BTreeMap<String, String> = objs.iter().map(|o| (o.id(), o.a.clone())).collect();
    let left_mor: BTreeMap<String, String> =
        mors.iter().map(|m| (m.id.clone(), m.f.clone())).collect();
    let right_obj: BTreeMap<String, String> = objs.iter().map(|o| (o.id(), o.b.clone())).collect();
    let right_mor: BTreeMap<String, String> =
        mors.iter().map(|m| (m.id.clone(), m.g.clone())).collect();

    let left_leg = FinFunctor::from_maps(
        &format!("P({})", f.name()),
        apex.clone(),
        a_cat.clone(),
        &left_obj,
        &left_mor,
    )?;
    let right_leg = FinFunctor::from_maps(
        &format!("Q({})", f.name()),
        apex.clone(),
        b_cat.clone(),
        &right_obj,
        &right_mor,
    )?;

    let left_report = check_functor_properties(&left_leg)?;
    let right_report = check_functor_properties(&right_leg)?;

    Ok(CatSpanResult {
        apex,
        left_leg,
        right_leg,
        left_report,
        right_report,
        objects: objs,
        apex_morphisms: mors,
    })
}

/// A strict pullback with its two projections.
#[derive(Debug, Clone)]
pub struct PullbackResult {
    pub apex: FinCategory,
    pub to_left: FinFunctor,
    pub to_right: FinFunctor,
}

/// Strict pullback of two functors with a common target.
///
/// Objects are pairs agreeing in the target, morphisms likewise; the two
/// projections are returned as functors. Surjective equivalences are stable
/// under this construction, which the tests verify on the whole catalog.
pub fn pullback_span(p: &FinFunctor, f: &FinFunctor) -> Result<PullbackResult, CatError> {
    if p.target() != f.target() {
        return Err(structural(format!(
            "pullback of {} and {}: targets differ",
            p.name(),
            f.name()
        )));
    }
    let x = p.source();
    let y = f.source();

    let mut objs: Vec<(usize, usize, String)> = Vec::new();
    for ox in 0..x.object_count() {
        for oy in 0..y.object_count() {
            if p.obj_ix(ox) == f.obj_ix(oy) {
                objs.push((ox, oy, tuple_id(&[&x.objects()[ox], &y.objects()[oy]])));
            }
        }
    }
    let obj_id: BTreeMap<(usize, usize), String> =
        objs.iter().map(|&(a, b, ref id)| ((a, b), id.clone())).collect();

    let mut mors: Vec<(usize, usize, String, String, String)> = Vec::new();
    for mx in 0..x.morphism_count() {
        for my in 0..y.morphism_count() {
            if p.mor_ix(mx) != f.mor_ix(my) {
                continue;
            }
            let s = match obj_id.get(&(x.src_ix(mx), y.src_ix(my))) {
                Some(s) => s.clone(),
                None => continue,
            };
            let t = match obj_id.get(&(x.tgt_ix(mx), y.tgt_ix(my))) {
                Some(t) => t.clone(),
                None => continue,
            };
            let id = tuple_id(&[&x.morphisms()[mx], &y.morphisms()[my]]);
            mors.push((mx, my, id, s, t));
        }
    }
    let mor_id: BTreeMap<(usize, usize), String> = mors
        .iter()
        .map(|&(a, b, ref id, _, _)| ((a, b), id.clone()))
        .collect();

    let identities: Vec<(String, String)> = objs
        .iter()
        .map(|&(ox, oy, ref id)| {
            (
                id.clone(),
                mor_id[&(x.identity_ix(ox), y.identity_ix(oy))].clone(),
            )
        })
        .collect();

    let mut compose = Vec::new();
    for &(m1x, m1y, ref id1, _, ref t1) in &mors {
        for &(m2x, m2y, ref id2, ref s2, _) in &mors {
            if t1 != s2 {
                continue;
            }
            let cx = x.compose_ix(m2x, m1x).expect("composable");
            let cy = y.compose_ix(m2y, m1y).expect("composable");
            compose.push((id2.clone(), id1.clone(), mor_id[&(cx, cy)].clone()));
        }
    }

    let apex = FinCategory::from_tables(
        &format!("pullback({},{})", p.name(), f.name()),
        objs.iter().map(|o| o.2.clone()).collect(),
        mors.iter()
            .map(|m| (m.2.clone(), m.3.clone(), m.4.clone()))
            .collect(),
        identities,
        compose,
    )?;

    let to_left = FinFunctor::from_maps(
        &format!("pr1({})", p.name()),
        apex.clone(),
        x.clone(),
        &objs
            .iter()
            .map(|&(ox, _, ref id)| (id.clone(), x.objects()[ox].clone()))
            .collect(),
        &mors
            .iter()
            .map(|&(mx, _, ref id, _, _)| (id.clone(), x.morphisms()[mx].clone()))
            .collect(),
    )?;
    let to_right = FinFunctor::from_maps(
        &format!("pr2({})", f.name()),
        apex.clone(),
        y.clone(),
        &objs
            .iter()
            .map(|&(_, oy, ref id)| (id.clone(), y.objects()[oy].clone()))
            .collect(),
        &mors
            .iter()
            .map(|&(_, my, ref id, _, _)| (id.clone(), y.morphisms()[my].clone()))
            .collect(),
    )?;

    Ok(PullbackResult {
        apex,
        to_left,
        to_right,
    })
}

/// The finest partition of the catalog in which two categories joined by a
/// certified surjective equivalence (in either direction) share a block.
///
/// Blocks are lists of catalog indices, each sorted, and the blocks are
/// sorted by their least element.
pub fn zigzag_closure(
    catalog: &[FinCategory],
    edges: &[FinFunctor],
) -> Result<Vec<Vec<usize>>, CatError> {
    let find_member = |c: &FinCategory, role: &str, edge: &FinFunctor| -> Result<usize, CatError> {
        catalog.iter().position(|k| k == c).ok_or_else(|| {
            structural(format!(
                "edge {} has a {role} outside the catalog",
                edge.name()
            ))
        })
    };

    let mut parent: Vec<usize> = (0..catalog.len()).collect();
    fn root(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }

    for edge in edges {
        let report = check_functor_properties(edge)?;
        if !report.certifies_surjective_equivalence() {
            return Err(structural(format!(
                "edge {} is not a certified surjective equivalence",
                edge.name()
            )));
        }
        let s = find_member(edge.source(), "source", edge)?;
        let t = find_member(edge.target(), "target", edge)?;
        let (rs, rt) = (root(&mut parent, s), root(&mut parent, t));
        if rs != rt {
            parent[rs.max(rt)] = rs.min(rt);
        }
    }

    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..catalog.len() {
        let r = root(&mut parent, i);
        blocks.entry(r).or_default().push(i);
    }
    Ok(blocks.into_values().collect())
}

/// Exhaustively searches for an equivalence between two categories.
///
/// Enumerates all functors in lexicographic order and returns the first
/// certified equivalence, a proof of exhaustion, or a budget overflow.
pub fn oracle_equivalence_cat(
    a: &FinCategory,
    b: &FinCategory,
    budget: SearchBudget,
) -> Result<SearchOutcome<FinFunctor>, CatError> {
    super::validate_category(a)?;
    super::validate_category(b)?;
    Ok(oracle::enumerate_functors(
        a,
        b,
        oracle::MapPredicate::Equivalence,
        budget,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::validate_category;
    use crate::fixtures;
    use crate::oracle::SearchStatus;

    #[test]
    fn span_over_identity_of_walking_iso_has_four_objects() {
        let iso = fixtures::walking_iso();
        let f = FinFunctor::identity(&iso);
        let span = build_span_cat(&f).unwrap();
        // Each of the 2 objects pairs with each of its 2 iso-targets.
        assert_eq!(span.apex.object_count(), 4);
        assert_eq!(validate_category(&span.apex), Ok(()));
        assert!(span.both_legs_certified());
    }

    #[test]
    fn span_over_collapse_to_terminal_has_two_objects() {
        let f = fixtures::collapse_iso_to_terminal();
        let span = build_span_cat(&f).unwrap();
        assert_eq!(span.apex.object_count(), 2);
        assert!(span.both_legs_certified());
    }

    #[test]
    fn span_over_identity_of_terminal_is_terminal() {
        let one = fixtures::terminal_category();
        let span = build_span_cat(&FinFunctor::identity(&one)).unwrap();
        assert_eq!(span.apex.object_count(), 1);
        assert_eq!(span.apex.morphism_count(), 1);
        assert!(span.both_legs_certified());
    }

    #[test]
    fn span_refuses_non_equivalences() {
        let f = fixtures::include_terminal_into_discrete_two();
        match build_span_cat(&f) {
            Err(SpanRejection::NotAnEquivalence(report)) => {
                assert!(!report.essentially_surjective);
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn pullback_of_identities_is_the_common_source() {
        let iso = fixtures::walking_iso();
        let id = FinFunctor::identity(&iso);
        let pb = pullback_span(&id, &id).unwrap();
        assert_eq!(pb.apex.object_count(), iso.object_count());
        assert_eq!(pb.apex.morphism_count(), iso.morphism_count());
        assert_eq!(validate_category(&pb.apex), Ok(()));
    }

    #[test]
    fn pullback_of_collapse_along_itself_has_four_objects() {
        let f = fixtures::collapse_iso_to_terminal();
        let pb = pullback_span(&f, &f).unwrap();
        assert_eq!(pb.apex.object_count(), 4);
        // All four objects are pairwise isomorphic.
        for a in 0..4 {
            for b in 0..4 {
                assert!(pb.apex.hom_ixs(a, b).iter().any(|&m| pb.apex.is_iso_ix(m)));
            }
        }
    }

    #[test]
    fn pullback_rejects_mismatched_targets() {
        let f = fixtures::collapse_iso_to_terminal();
        let id2 = FinFunctor::identity(&fixtures::discrete_two());
        assert!(matches!(
            pullback_span(&f, &id2),
            Err(CatError::Structural(_))
        ));
    }

    #[test]
    fn zigzag_closure_of_smoke_cases() {
        let one = fixtures::terminal_category();
        let iso = fixtures::walking_iso();
        let d2 = fixtures::discrete_two();

        // Singleton catalog, no edges.
        let p = zigzag_closure(&[one.clone()], &[]).unwrap();
        assert_eq!(p, vec![vec![0]]);

        // One edge joins the walking iso to the terminal category.
        let edge = fixtures::collapse_iso_to_terminal();
        let p = zigzag_closure(&[iso.clone(), one.clone()], &[edge.clone()]).unwrap();
        assert_eq!(p, vec![vec![0, 1]]);

        let p = zigzag_closure(&[iso, one, d2], &[edge]).unwrap();
        assert_eq!(p, vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn zigzag_closure_rejects_edges_outside_the_catalog() {
        let one = fixtures::terminal_category();
        let edge = fixtures::collapse_iso_to_terminal();
        assert!(matches!(
            zigzag_closure(&[one], &[edge]),
            Err(CatError::Structural(_))
        ));
    }

    #[test]
    fn oracle_finds_the_equivalence_between_iso_and_terminal() {
        let iso = fixtures::walking_iso();
        let one = fixtures::terminal_category();
        let out = oracle_equivalence_cat(&iso, &one, SearchBudget::functors()).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        let w = out.witness.unwrap();
        assert!(check_functor_properties(&w).unwrap().certifies_equivalence());
    }

    #[test]
    fn oracle_exhausts_on_terminal_vs_discrete_two() {
        let one = fixtures::terminal_category();
        let d2 = fixtures::discrete_two();
        let out = oracle_equivalence_cat(&one, &d2, SearchBudget::functors()).unwrap();
        assert_eq!(out.status, SearchStatus::Exhausted);
        // Exactly the two functors 1 -> discrete-2 exist.
        assert_eq!(out.candidates_examined, 2);
    }

    #[test]
    fn oracle_finds_identity_on_self() {
        let iso = fixtures::walking_iso();
        let out = oracle_equivalence_cat(&iso, &iso, SearchBudget::functors()).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
    }
}
