//! Finite categories and functors as composition tables.
//!
//! Objects and morphisms are opaque string identifiers. Constructors perform
//! the structural checks (no dangling identifiers, composition total on
//! composable pairs and absent otherwise); [`validate_category`] checks the
//! axioms proper, so deliberately broken tables can be built and then
//! reported on. Identifiers are stored sorted, and every search in this
//! crate walks them in that order, which is what makes witnesses
//! reproducible.

mod span;

pub use span::{
    build_span_cat, oracle_equivalence_cat, pullback_span, zigzag_closure, CatApexMorphism,
    CatSpanResult, IsoCommaObject, PullbackResult, SpanRejection,
};

use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    /// A table refers to an unknown identifier, misses a required entry, or
    /// contains an entry it must not contain.
    #[error("structural error: {0}")]
    Structural(String),
    /// A well-formed table violates a category axiom.
    #[error("axiom violation [{axiom}] at {offender}")]
    Axiom { axiom: &'static str, offender: String },
}

pub(crate) fn structural(msg: impl Into<String>) -> CatError {
    CatError::Structural(msg.into())
}

/// A finite category: objects, morphisms, and a composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    identity: Vec<usize>,
    compose: Vec<Vec<Option<usize>>>,
    obj_index: BTreeMap<String, usize>,
    mor_index: BTreeMap<String, usize>,
}

impl FinCategory {
    /// Builds a category from raw tables, checking structural integrity
    /// only. Axiom violations survive so they can be reported by
    /// [`validate_category`].
    pub fn from_tables(
        name: &str,
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        identities: Vec<(String, String)>,
        compose: Vec<(String, String, String)>,
    ) -> Result<Self, CatError> {
        let mut objects = objects;
        objects.sort();
        let obj_index: BTreeMap<String, usize> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), i))
            .collect();
        if obj_index.len() != objects.len() {
            return Err(structural(format!("duplicate object id in category {name}")));
        }

        let mut morphism_rows = morphisms;
        morphism_rows.sort_by(|a, b| a.0.cmp(&b.0));
        let mor_names: Vec<String> = morphism_rows.iter().map(|m| m.0.clone()).collect();
        let mor_index: BTreeMap<String, usize> = mor_names
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        if mor_index.len() != mor_names.len() {
            return Err(structural(format!("duplicate morphism id in category {name}")));
        }

        let look_obj = |id: &str| -> Result<usize, CatError> {
            obj_index
                .get(id)
                .copied()
                .ok_or_else(|| structural(format!("unknown object id {id:?} in category {name}")))
        };
        let look_mor = |id: &str| -> Result<usize, CatError> {
            mor_index
                .get(id)
                .copied()
                .ok_or_else(|| structural(format!("unknown morphism id {id:?} in category {name}")))
        };

        let mut src = Vec::with_capacity(mor_names.len());
        let mut tgt = Vec::with_capacity(mor_names.len());
        for (_, s, t) in &morphism_rows {
            src.push(look_obj(s)?);
            tgt.push(look_obj(t)?);
        }

        let mut identity = vec![usize::MAX; objects.len()];
        for (obj, mor) in &identities {
            let o = look_obj(obj)?;
            let m = look_mor(mor)?;
            if identity[o] != usize::MAX {
                return Err(structural(format!("two identities declared for object {obj:?}")));
            }
            identity[o] = m;
        }
        if let Some(o) = identity.iter().position(|&m| m == usize::MAX) {
            return Err(structural(format!(
                "no identity declared for object {:?}",
                objects[o]
            )));
        }

        let n = mor_names.len();
        let mut table = vec![vec![None; n]; n];
        for (g, f, r) in &compose {
            let gi = look_mor(g)?;
            let fi = look_mor(f)?;
            let ri = look_mor(r)?;
            if tgt[fi] != src[gi] {
                return Err(structural(format!(
                    "compose entry ({g:?}, {f:?}) is not a composable pair"
                )));
            }
            if table[gi][fi].is_some() {
                return Err(structural(format!("duplicate compose entry ({g:?}, {f:?})")));
            }
            table[gi][fi] = Some(ri);
        }
        for gi in 0..n {
            for fi in 0..n {
                if tgt[fi] == src[gi] && table[gi][fi].is_none() {
                    return Err(structural(format!(
                        "missing compose entry for composable pair ({:?}, {:?})",
                        mor_names[gi], mor_names[fi]
                    )));
                }
            }
        }

        Ok(FinCategory {
            name: name.to_string(),
            objects,
            morphisms: mor_names,
            src,
            tgt,
            identity,
            compose: table,
            obj_index,
            mor_index,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[String] {
        &self.morphisms
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_ix(&self, id: &str) -> Option<usize> {
        self.obj_index.get(id).copied()
    }

    pub fn morphism_ix(&self, id: &str) -> Option<usize> {
        self.mor_index.get(id).copied()
    }

    pub fn src_ix(&self, m: usize) -> usize {
        self.src[m]
    }

    pub fn tgt_ix(&self, m: usize) -> usize {
        self.tgt[m]
    }

    pub fn identity_ix(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn compose_ix(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    pub fn src_of(&self, m: &str) -> Option<&str> {
        self.morphism_ix(m).map(|i| self.objects[self.src[i]].as_str())
    }

    pub fn tgt_of(&self, m: &str) -> Option<&str> {
        self.morphism_ix(m).map(|i| self.objects[self.tgt[i]].as_str())
    }

    /// `compose(g, f)` is `g ∘ f`, defined when `tgt(f) = src(g)`.
    pub fn compose(&self, g: &str, f: &str) -> Option<&str> {
        let gi = self.morphism_ix(g)?;
        let fi = self.morphism_ix(f)?;
        self.compose[gi][fi].map(|r| self.morphisms[r].as_str())
    }

    pub fn is_identity_ix(&self, m: usize) -> bool {
        self.identity[self.src[m]] == m
    }

    pub fn hom_ixs(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.src[m] == a && self.tgt[m] == b)
            .collect()
    }

    /// Finds a two-sided inverse by scanning the composition table. Nothing
    /// cached is trusted; every call re-verifies.
    pub fn inverse_ix(&self, m: usize) -> Option<usize> {
        let a = self.src[m];
        let b = self.tgt[m];
        for g in self.hom_ixs(b, a) {
            if self.compose[g][m] == Some(self.identity[a])
                && self.compose[m][g] == Some(self.identity[b])
            {
                return Some(g);
            }
        }
        None
    }

    pub fn is_iso_ix(&self, m: usize) -> bool {
        self.inverse_ix(m).is_some()
    }
}

/// Checks the category axioms, reporting the first violation.
pub fn validate_category(c: &FinCategory) -> Result<(), CatError> {
    for o in 0..c.objects.len() {
        let id = c.identity[o];
        if c.src[id] != o || c.tgt[id] != o {
            return Err(CatError::Axiom {
                axiom: "identity-endpoints",
                offender: format!("identity({}) = {}", c.objects[o], c.morphisms[id]),
            });
        }
    }
    for f in 0..c.morphisms.len() {
        let left = c.compose[c.identity[c.tgt[f]]][f];
        if left != Some(f) {
            return Err(CatError::Axiom {
                axiom: "left-unit",
                offender: format!(
                    "({}, {})",
                    c.morphisms[c.identity[c.tgt[f]]], c.morphisms[f]
                ),
            });
        }
        let right = c.compose[f][c.identity[c.src[f]]];
        if right != Some(f) {
            return Err(CatError::Axiom {
                axiom: "right-unit",
                offender: format!(
                    "({}, {})",
                    c.morphisms[f], c.morphisms[c.identity[c.src[f]]]
                ),
            });
        }
    }
    for h in 0..c.morphisms.len() {
        for g in 0..c.morphisms.len() {
            if c.tgt[g] != c.src[h] {
                continue;
            }
            for f in 0..c.morphisms.len() {
                if c.tgt[f] != c.src[g] {
                    continue;
                }
                let gf = c.compose[g][f].expect("total on composable pairs");
                let hg = c.compose[h][g].expect("total on composable pairs");
                if c.compose[h][gf] != c.compose[hg][f] {
                    return Err(CatError::Axiom {
                        axiom: "associativity",
                        offender: format!(
                            "({}, {}, {})",
                            c.morphisms[h], c.morphisms[g], c.morphisms[f]
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

/// A functor presented by its object and morphism assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    name: String,
    source: FinCategory,
    target: FinCategory,
    obj_map: Vec<usize>,
    mor_map: Vec<usize>,
}

impl FinFunctor {
    pub fn from_maps(
        name: &str,
        source: FinCategory,
        target: FinCategory,
        obj_map: &BTreeMap<String, String>,
        mor_map: &BTreeMap<String, String>,
    ) -> Result<Self, CatError> {
        let mut o = vec![usize::MAX; source.object_count()];
        for (k, v) in obj_map {
            let ki = source
                .object_ix(k)
                .ok_or_else(|| structural(format!("obj_map key {k:?} not in source")))?;
            let vi = target
                .object_ix(v)
                .ok_or_else(|| structural(format!("obj_map value {v:?} not in target")))?;
            o[ki] = vi;
        }
        if let Some(i) = o.iter().position(|&x| x == usize::MAX) {
            return Err(structural(format!(
                "obj_map missing entry for {:?}",
                source.objects()[i]
            )));
        }
        let mut m = vec![usize::MAX; source.morphism_count()];
        for (k, v) in mor_map {
            let ki = source
                .morphism_ix(k)
                .ok_or_else(|| structural(format!("mor_map key {k:?} not in source")))?;
            let vi = target
                .morphism_ix(v)
                .ok_or_else(|| structural(format!("mor_map value {v:?} not in target")))?;
            m[ki] = vi;
        }
        if let Some(i) = m.iter().position(|&x| x == usize::MAX) {
            return Err(structural(format!(
                "mor_map missing entry for {:?}",
                source.morphisms()[i]
            )));
        }
        Ok(FinFunctor {
            name: name.to_string(),
            source,
            target,
            obj_map: o,
            mor_map: m,
        })
    }

    pub(crate) fn from_index_maps(
        name: &str,
        source: FinCategory,
        target: FinCategory,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Self {
        FinFunctor {
            name: name.to_string(),
            source,
            target,
            obj_map,
            mor_map,
        }
    }

    pub fn identity(c: &FinCategory) -> FinFunctor {
        FinFunctor {
            name: format!("id_{}", c.name()),
            source: c.clone(),
            target: c.clone(),
            obj_map: (0..c.object_count()).collect(),
            mor_map: (0..c.morphism_count()).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &FinCategory {
        &self.source
    }

    pub fn target(&self) -> &FinCategory {
        &self.target
    }

    pub fn obj_ix(&self, o: usize) -> usize {
        self.obj_map[o]
    }

    pub fn mor_ix(&self, m: usize) -> usize {
        self.mor_map[m]
    }

    pub fn apply_obj(&self, id: &str) -> Option<&str> {
        let i = self.source.object_ix(id)?;
        Some(self.target.objects()[self.obj_map[i]].as_str())
    }

    pub fn apply_mor(&self, id: &str) -> Option<&str> {
        let i = self.source.morphism_ix(id)?;
        Some(self.target.morphisms()[self.mor_map[i]].as_str())
    }

    /// Composes `self` after `first`, i.e. the functor `self ∘ first`.
    pub fn compose_after(&self, first: &FinFunctor) -> Result<FinFunctor, CatError> {
        if first.target != self.source {
            return Err(structural(format!(
                "cannot compose functors {} and {}: middle categories differ",
                self.name, first.name
            )));
        }
        Ok(FinFunctor {
            name: format!("{}.{}", self.name, first.name),
            source: first.source.clone(),
            target: self.target.clone(),
            obj_map: first.obj_map.iter().map(|&o| self.obj_map[o]).collect(),
            mor_map: first.mor_map.iter().map(|&m| self.mor_map[m]).collect(),
        })
    }
}

/// Checks that a functor preserves src, tgt, identities, and composition.
pub fn validate_functor(f: &FinFunctor) -> Result<(), CatError> {
    let s = &f.source;
    let t = &f.target;
    for m in 0..s.morphism_count() {
        let fm = f.mor_map[m];
        if t.src_ix(fm) != f.obj_map[s.src_ix(m)] || t.tgt_ix(fm) != f.obj_map[s.tgt_ix(m)] {
            return Err(CatError::Axiom {
                axiom: "functor-endpoints",
                offender: s.morphisms()[m].clone(),
            });
        }
    }
    for o in 0..s.object_count() {
        if f.mor_map[s.identity_ix(o)] != t.identity_ix(f.obj_map[o]) {
            return Err(CatError::Axiom {
                axiom: "functor-identity",
                offender: s.objects()[o].clone(),
            });
        }
    }
    for g in 0..s.morphism_count() {
        for m in 0..s.morphism_count() {
            if let Some(gm) = s.compose_ix(g, m) {
                let lhs = t.compose_ix(f.mor_map[g], f.mor_map[m]);
                if lhs != Some(f.mor_map[gm]) {
                    return Err(CatError::Axiom {
                        axiom: "functor-composition",
                        offender: format!("({}, {})", s.morphisms()[g], s.morphisms()[m]),
                    });
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullnessWitness {
    pub src_obj: String,
    pub tgt_obj: String,
    pub mor: String,
    pub preimage: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PropertyFailure {
    NotSurjectiveOnObjects { missed: String },
    NotEssentiallySurjective { missed: String },
    NotFull { src_obj: String, tgt_obj: String, mor: String },
    NotFaithful { first: String, second: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PropertyWitnesses {
    /// target object -> a source object mapped onto it (when surjective).
    pub object_preimages: BTreeMap<String, String>,
    /// target object -> (source object, invertible morphism into the target).
    pub essential_witnesses: BTreeMap<String, (String, String)>,
    pub fullness_witnesses: Vec<FullnessWitness>,
    pub failures: Vec<PropertyFailure>,
}

/// The four functor properties, computed exhaustively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctorPropertyReport {
    pub surjective_on_objects: bool,
    pub essentially_surjective: bool,
    pub full: bool,
    pub faithful: bool,
    pub witnesses: PropertyWitnesses,
}

impl FunctorPropertyReport {
    /// Surjective on objects, full, and faithful.
    pub fn certifies_surjective_equivalence(&self) -> bool {
        self.surjective_on_objects && self.full && self.faithful
    }

    /// Essentially surjective on objects, full, and faithful.
    pub fn certifies_equivalence(&self) -> bool {
        self.essentially_surjective && self.full && self.faithful
    }
}

/// Computes all four functor property flags exhaustively.
///
/// Essential surjectivity searches, for each target object, for an
/// invertible morphism out of an object in the image; witnesses are the
/// lexicographically first found.
pub fn check_functor_properties(f: &FinFunctor) -> Result<FunctorPropertyReport, CatError> {
    validate_functor(f)?;
    let s = f.source();
    let t = f.target();
    let mut w = PropertyWitnesses::default();

    let mut surjective_on_objects = true;
    for b in 0..t.object_count() {
        match (0..s.object_count()).find(|&a| f.obj_map[a] == b) {
            Some(a) => {
                w.object_preimages
                    .insert(t.objects()[b].clone(), s.objects()[a].clone());
            }
            None => {
                surjective_on_objects = false;
                w.failures.push(PropertyFailure::NotSurjectiveOnObjects {
                    missed: t.objects()[b].clone(),
                });
            }
        }
    }

    let mut essentially_surjective = true;
    for b in 0..t.object_count() {
        let mut found = None;
        'outer: for a in 0..s.object_count() {
            for ell in t.hom_ixs(f.obj_map[a], b) {
                if t.is_iso_ix(ell) {
                    found = Some((a, ell));
                    break 'outer;
                }
            }
        }
        match found {
            Some((a, ell)) => {
                w.essential_witnesses.insert(
                    t.objects()[b].clone(),
                    (s.objects()[a].clone(), t.morphisms()[ell].clone()),
                );
            }
            None => {
                essentially_surjective = false;
                w.failures.push(PropertyFailure::NotEssentiallySurjective {
                    missed: t.objects()[b].clone(),
                });
            }
        }
    }

    let mut full = true;
    for a in 0..s.object_count() {
        for a2 in 0..s.object_count() {
            for g in t.hom_ixs(f.obj_map[a], f.obj_map[a2]) {
                let pre = s
                    .hom_ixs(a, a2)
                    .into_iter()
                    .find(|&m| f.mor_map[m] == g);
                match pre {
                    Some(m) => w.fullness_witnesses.push(FullnessWitness {
                        src_obj: s.objects()[a].clone(),
                        tgt_obj: s.objects()[a2].clone(),
                        mor: t.morphisms()[g].clone(),
                        preimage: s.morphisms()[m].clone(),
                    }),
                    None => {
                        full = false;
                        w.failures.push(PropertyFailure::NotFull {
                            src_obj: s.objects()[a].clone(),
                            tgt_obj: s.objects()[a2].clone(),
                            mor: t.morphisms()[g].clone(),
                        });
                    }
                }
            }
        }
    }

    let mut faithful = true;
    for m1 in 0..s.morphism_count() {
        for m2 in (m1 + 1)..s.morphism_count() {
            if s.src_ix(m1) == s.src_ix(m2)
                && s.tgt_ix(m1) == s.tgt_ix(m2)
                && f.mor_map[m1] == f.mor_map[m2]
            {
                faithful = false;
                w.failures.push(PropertyFailure::NotFaithful {
                    first: s.morphisms()[m1].clone(),
                    second: s.morphisms()[m2].clone(),
                });
            }
        }
    }

    Ok(FunctorPropertyReport {
        surjective_on_objects,
        essentially_surjective,
        full,
        faithful,
        witnesses: w,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn terminal_category_validates() {
        let one = fixtures::terminal_category();
        assert_eq!(validate_category(&one), Ok(()));
    }

    #[test]
    fn walking_iso_validates() {
        let iso = fixtures::walking_iso();
        assert_eq!(validate_category(&iso), Ok(()));
        assert!(iso.is_iso_ix(iso.morphism_ix("iso").unwrap()));
    }

    #[test]
    fn redirected_compose_entry_is_a_unit_law_failure() {
        // The walking iso with compose(inv, iso) redirected to a non-identity
        // endomorphism slot. There is no such slot in the walking iso, so the
        // fixture adds a spurious endomorphism "e" on object 0.
        let broken = FinCategory::from_tables(
            "broken-iso",
            vec!["0".into(), "1".into()],
            vec![
                ("id0".into(), "0".into(), "0".into()),
                ("id1".into(), "1".into(), "1".into()),
                ("iso".into(), "0".into(), "1".into()),
                ("inv".into(), "1".into(), "0".into()),
                ("e".into(), "0".into(), "0".into()),
            ],
            vec![("0".into(), "id0".into()), ("1".into(), "id1".into())],
            vec![
                ("id0".into(), "id0".into(), "id0".into()),
                ("id1".into(), "id1".into(), "id1".into()),
                ("iso".into(), "id0".into(), "iso".into()),
                ("id1".into(), "iso".into(), "iso".into()),
                ("inv".into(), "id1".into(), "inv".into()),
                ("id0".into(), "inv".into(), "inv".into()),
                // Redirected: should be id0.
                ("inv".into(), "iso".into(), "e".into()),
                ("iso".into(), "inv".into(), "id1".into()),
                ("e".into(), "id0".into(), "e".into()),
                ("id0".into(), "e".into(), "e".into()),
                ("e".into(), "e".into(), "e".into()),
                ("e".into(), "inv".into(), "inv".into()),
                ("iso".into(), "e".into(), "iso".into()),
                ("inv".into(), "e".into(), "e".into()),
                ("e".into(), "iso".into(), "iso".into()),
            ],
        )
        .unwrap();
        let err = validate_category(&broken).unwrap_err();
        match err {
            CatError::Axiom { axiom, .. } => {
                assert!(axiom == "associativity" || axiom.contains("unit"))
            }
            other => panic!("expected axiom violation, got {other:?}"),
        }
    }

    #[test]
    fn dangling_identifier_is_structural() {
        let err = FinCategory::from_tables(
            "bad",
            vec!["0".into()],
            vec![("f".into(), "0".into(), "nowhere".into())],
            vec![("0".into(), "f".into())],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, CatError::Structural(_)));
    }

    #[test]
    fn identity_functor_has_all_four_properties() {
        let iso = fixtures::walking_iso();
        let f = FinFunctor::identity(&iso);
        let report = check_functor_properties(&f).unwrap();
        assert!(report.surjective_on_objects);
        assert!(report.essentially_surjective);
        assert!(report.full);
        assert!(report.faithful);
        assert!(report.certifies_surjective_equivalence());
        assert!(report.certifies_equivalence());
    }

    #[test]
    fn collapse_functor_iso_to_terminal_is_a_surjective_equivalence() {
        let f = fixtures::collapse_iso_to_terminal();
        let report = check_functor_properties(&f).unwrap();
        assert!(report.certifies_surjective_equivalence());
        assert!(report.certifies_equivalence());
    }

    #[test]
    fn inclusion_of_terminal_into_iso_is_essentially_surjective_only() {
        let f = fixtures::include_terminal_into_iso();
        let report = check_functor_properties(&f).unwrap();
        assert!(!report.surjective_on_objects);
        assert!(report.essentially_surjective);
        assert!(report.full);
        assert!(report.faithful);
        // The witness for the missed object is the iso.
        let (_, ell) = &report.witnesses.essential_witnesses["1"];
        assert_eq!(ell, "iso");
    }
}
