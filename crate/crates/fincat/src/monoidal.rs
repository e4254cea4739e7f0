//! Monoidal structures on finite categories and the monoidal span.
//!
//! A monoidal structure is a total tensor table on objects and morphisms,
//! a unit object, and per-tuple associator and unitor components. Pentagon
//! and triangle coherence are checked exhaustively over all tuples; nothing
//! is sampled. Strong monoidal functor data carries the coherence family
//! `phi` and the unit comparison; the strictness flag is re-derived by the
//! validator rather than trusted.
//!
//! The span over a monoidal equivalence reuses the iso-comma apex on the
//! underlying functor and equips it with the tensor
//! `(a,b,l) ⊗ (a~,b~,l~) = (a⊗a~, b⊗b~, (l⊗l~) ∘ phi⁻¹)`, with unit
//! `(I, I, phi_unit⁻¹)` and the associator and unitors inherited
//! componentwise. Both projections preserve all of that on the nose, which
//! is the point: the legs are strict monoidal surjective equivalences even
//! though the monoidal categories themselves need not be strict.

use crate::cat::{
    build_span_cat, check_functor_properties, validate_category, validate_functor, CatError,
    CatSpanResult, FinCategory, FinFunctor, FunctorPropertyReport, SpanRejection,
};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonError {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("axiom violation [{axiom}] at {offender}")]
    Axiom { axiom: &'static str, offender: String },
    #[error(transparent)]
    Cat(#[from] CatError),
}

fn structural(msg: impl Into<String>) -> MonError {
    MonError::Structural(msg.into())
}

fn axiom(axiom: &'static str, offender: impl Into<String>) -> MonError {
    MonError::Axiom {
        axiom,
        offender: offender.into(),
    }
}

/// A monoidal structure on a finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalStructure {
    base: FinCategory,
    tensor_obj: Vec<Vec<usize>>,
    tensor_mor: Vec<Vec<usize>>,
    unit: usize,
    associator: Vec<Vec<Vec<usize>>>,
    left_unitor: Vec<usize>,
    right_unitor: Vec<usize>,
}

impl MonoidalStructure {
    /// Builds from explicit tables. Tensor tables are required total; the
    /// associator needs one component per object triple and the unitors one
    /// per object.
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        base: FinCategory,
        tensor_obj: &[(String, String, String)],
        tensor_mor: &[(String, String, String)],
        unit: &str,
        associator: &[(String, String, String, String)],
        left_unitor: &[(String, String)],
        right_unitor: &[(String, String)],
    ) -> Result<Self, MonError> {
        let no = base.object_count();
        let nm = base.morphism_count();
        let obj = |id: &str| {
            base.object_ix(id)
                .ok_or_else(|| structural(format!("unknown object {id:?} in tensor tables")))
        };
        let mor = |id: &str| {
            base.morphism_ix(id)
                .ok_or_else(|| structural(format!("unknown morphism {id:?} in tensor tables")))
        };

        let mut tobj = vec![vec![usize::MAX; no]; no];
        for (a, b, r) in tensor_obj {
            tobj[obj(a)?][obj(b)?] = obj(r)?;
        }
        if tobj.iter().flatten().any(|&x| x == usize::MAX) {
            return Err(structural("partial tensor table on objects"));
        }
        let mut tmor = vec![vec![usize::MAX; nm]; nm];
        for (f, g, r) in tensor_mor {
            tmor[mor(f)?][mor(g)?] = mor(r)?;
        }
        if tmor.iter().flatten().any(|&x| x == usize::MAX) {
            return Err(structural("partial tensor table on morphisms"));
        }
        let mut assoc = vec![vec![vec![usize::MAX; no]; no]; no];
        for (a, b, c, m) in associator {
            assoc[obj(a)?][obj(b)?][obj(c)?] = mor(m)?;
        }
        if assoc.iter().flatten().flatten().any(|&x| x == usize::MAX) {
            return Err(structural("partial associator table"));
        }
        let fill_unitor = |rows: &[(String, String)], which: &str| -> Result<Vec<usize>, MonError> {
            let mut v = vec![usize::MAX; no];
            for (a, m) in rows {
                v[obj(a)?] = mor(m)?;
            }
            if v.iter().any(|&x| x == usize::MAX) {
                return Err(structural(format!("partial {which} unitor table")));
            }
            Ok(v)
        };
        Ok(MonoidalStructure {
            unit: obj(unit)?,
            left_unitor: fill_unitor(left_unitor, "left")?,
            right_unitor: fill_unitor(right_unitor, "right")?,
            base,
            tensor_obj: tobj,
            tensor_mor: tmor,
            associator: assoc,
        })
    }

    /// Convenience constructor for structures whose associator and unitors
    /// are all identities, given the tensor on objects; the tensor on
    /// morphisms is derived from a function on morphism indices.
    pub fn strict_from(
        base: FinCategory,
        unit: &str,
        tensor_obj: impl Fn(&str, &str) -> String,
        tensor_mor: impl Fn(&str, &str) -> String,
    ) -> Result<Self, MonError> {
        let objs = base.objects().to_vec();
        let mors = base.morphisms().to_vec();
        let mut to = Vec::new();
        for a in &objs {
            for b in &objs {
                to.push((a.clone(), b.clone(), tensor_obj(a, b)));
            }
        }
        let mut tm = Vec::new();
        for f in &mors {
            for g in &mors {
                tm.push((f.clone(), g.clone(), tensor_mor(f, g)));
            }
        }
        let ident = |o: &str| -> String {
            let ix = base.object_ix(o).expect("object");
            base.morphisms()[base.identity_ix(ix)].clone()
        };
        let mut assoc = Vec::new();
        for a in &objs {
            for b in &objs {
                for c in &objs {
                    let abc = tensor_obj(&tensor_obj(a, b), c);
                    assoc.push((a.clone(), b.clone(), c.clone(), ident(&abc)));
                }
            }
        }
        let lu: Vec<(String, String)> = objs
            .iter()
            .map(|a| (a.clone(), ident(a)))
            .collect();
        let ru = lu.clone();
        MonoidalStructure::from_tables(base, &to, &tm, unit, &assoc, &lu, &ru)
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn unit_ix(&self) -> usize {
        self.unit
    }

    pub fn unit(&self) -> &str {
        &self.base.objects()[self.unit]
    }

    pub fn tensor_obj_ix(&self, a: usize, b: usize) -> usize {
        self.tensor_obj[a][b]
    }

    pub fn tensor_mor_ix(&self, f: usize, g: usize) -> usize {
        self.tensor_mor[f][g]
    }

    pub fn associator_ix(&self, a: usize, b: usize, c: usize) -> usize {
        self.associator[a][b][c]
    }

    pub fn left_unitor_ix(&self, a: usize) -> usize {
        self.left_unitor[a]
    }

    pub fn right_unitor_ix(&self, a: usize) -> usize {
        self.right_unitor[a]
    }

    pub fn tensor_obj(&self, a: &str, b: &str) -> Option<&str> {
        let ai = self.base.object_ix(a)?;
        let bi = self.base.object_ix(b)?;
        Some(self.base.objects()[self.tensor_obj[ai][bi]].as_str())
    }

    pub fn tensor_mor(&self, f: &str, g: &str) -> Option<&str> {
        let fi = self.base.morphism_ix(f)?;
        let gi = self.base.morphism_ix(g)?;
        Some(self.base.morphisms()[self.tensor_mor[fi][gi]].as_str())
    }
}

/// Checks tensor functoriality, naturality and invertibility of the
/// associator and unitors, and the pentagon and triangle axioms, all over
/// every tuple.
pub fn validate_monoidal(m: &MonoidalStructure) -> Result<(), MonError> {
    validate_category(&m.base)?;
    let c = &m.base;
    let no = c.object_count();
    let nm = c.morphism_count();

    for a in 0..no {
        for b in 0..no {
            let t = m.tensor_obj[a][b];
            if m.tensor_mor[c.identity_ix(a)][c.identity_ix(b)] != c.identity_ix(t) {
                return Err(axiom(
                    "tensor-identities",
                    format!("({}, {})", c.objects()[a], c.objects()[b]),
                ));
            }
        }
    }
    for f in 0..nm {
        for g in 0..nm {
            let t = m.tensor_mor[f][g];
            if c.src_ix(t) != m.tensor_obj[c.src_ix(f)][c.src_ix(g)]
                || c.tgt_ix(t) != m.tensor_obj[c.tgt_ix(f)][c.tgt_ix(g)]
            {
                return Err(axiom(
                    "tensor-endpoints",
                    format!("({}, {})", c.morphisms()[f], c.morphisms()[g]),
                ));
            }
        }
    }
    for f2 in 0..nm {
        for f1 in 0..nm {
            if c.tgt_ix(f1) != c.src_ix(f2) {
                continue;
            }
            for g2 in 0..nm {
                for g1 in 0..nm {
                    if c.tgt_ix(g1) != c.src_ix(g2) {
                        continue;
                    }
                    let lhs = m.tensor_mor[c.compose_ix(f2, f1).unwrap()][c.compose_ix(g2, g1).unwrap()];
                    let rhs = c.compose_ix(m.tensor_mor[f2][g2], m.tensor_mor[f1][g1]);
                    if rhs != Some(lhs) {
                        return Err(axiom(
                            "tensor-functoriality",
                            format!(
                                "(({}, {}), ({}, {}))",
                                c.morphisms()[f2], c.morphisms()[f1],
                                c.morphisms()[g2], c.morphisms()[g1]
                            ),
                        ));
                    }
                }
            }
        }
    }

    for a in 0..no {
        for b in 0..no {
            for d in 0..no {
                let al = m.associator[a][b][d];
                let lhs_obj = m.tensor_obj[m.tensor_obj[a][b]][d];
                let rhs_obj = m.tensor_obj[a][m.tensor_obj[b][d]];
                if c.src_ix(al) != lhs_obj || c.tgt_ix(al) != rhs_obj {
                    return Err(axiom(
                        "associator-endpoints",
                        format!("({}, {}, {})", c.objects()[a], c.objects()[b], c.objects()[d]),
                    ));
                }
                if !c.is_iso_ix(al) {
                    return Err(axiom(
                        "associator-invertible",
                        format!("({}, {}, {})", c.objects()[a], c.objects()[b], c.objects()[d]),
                    ));
                }
            }
        }
    }
    // Naturality of the associator over all morphism triples.
    for f in 0..nm {
        for g in 0..nm {
            for h in 0..nm {
                let al_src = m.associator[c.src_ix(f)][c.src_ix(g)][c.src_ix(h)];
                let al_tgt = m.associator[c.tgt_ix(f)][c.tgt_ix(g)][c.tgt_ix(h)];
                let lhs = c.compose_ix(al_tgt, m.tensor_mor[m.tensor_mor[f][g]][h]);
                let rhs = c.compose_ix(m.tensor_mor[f][m.tensor_mor[g][h]], al_src);
                if lhs != rhs || lhs.is_none() {
                    return Err(axiom(
                        "associator-naturality",
                        format!("({}, {}, {})", c.morphisms()[f], c.morphisms()[g], c.morphisms()[h]),
                    ));
                }
            }
        }
    }

    for a in 0..no {
        let lu = m.left_unitor[a];
        if c.src_ix(lu) != m.tensor_obj[m.unit][a] || c.tgt_ix(lu) != a || !c.is_iso_ix(lu) {
            return Err(axiom("left-unitor", c.objects()[a].clone()));
        }
        let ru = m.right_unitor[a];
        if c.src_ix(ru) != m.tensor_obj[a][m.unit] || c.tgt_ix(ru) != a || !c.is_iso_ix(ru) {
            return Err(axiom("right-unitor", c.objects()[a].clone()));
        }
    }
    for f in 0..nm {
        let id_unit = c.identity_ix(m.unit);
        let lhs = c.compose_ix(f, m.left_unitor[c.src_ix(f)]);
        let rhs = c.compose_ix(m.left_unitor[c.tgt_ix(f)], m.tensor_mor[id_unit][f]);
        if lhs != rhs || lhs.is_none() {
            return Err(axiom("left-unitor-naturality", c.morphisms()[f].clone()));
        }
        let lhs = c.compose_ix(f, m.right_unitor[c.src_ix(f)]);
        let rhs = c.compose_ix(m.right_unitor[c.tgt_ix(f)], m.tensor_mor[f][id_unit]);
        if lhs != rhs || lhs.is_none() {
            return Err(axiom("right-unitor-naturality", c.morphisms()[f].clone()));
        }
    }

    // Pentagon: for all (a, b, d, e),
    //   α_{a,b,d⊗e} ∘ α_{a⊗b,d,e} = (1_a ⊗ α_{b,d,e}) ∘ α_{a,b⊗d,e} ∘ (α_{a,b,d} ⊗ 1_e).
    for a in 0..no {
        for b in 0..no {
            for d in 0..no {
                for e in 0..no {
                    let lhs = c.compose_ix(
                        m.associator[a][b][m.tensor_obj[d][e]],
                        m.associator[m.tensor_obj[a][b]][d][e],
                    );
                    let step1 = m.tensor_mor[m.associator[a][b][d]][c.identity_ix(e)];
                    let step2 = m.associator[a][m.tensor_obj[b][d]][e];
                    let step3 = m.tensor_mor[c.identity_ix(a)][m.associator[b][d][e]];
                    let rhs = c
                        .compose_ix(step2, step1)
                        .and_then(|x| c.compose_ix(step3, x));
                    if lhs != rhs || lhs.is_none() {
                        return Err(axiom(
                            "pentagon",
                            format!(
                                "({}, {}, {}, {})",
                                c.objects()[a], c.objects()[b], c.objects()[d], c.objects()[e]
                            ),
                        ));
                    }
                }
            }
        }
    }
    // Triangle: (1_a ⊗ λ_b) ∘ α_{a,I,b} = ρ_a ⊗ 1_b.
    for a in 0..no {
        for b in 0..no {
            let lhs = c.compose_ix(
                m.tensor_mor[c.identity_ix(a)][m.left_unitor[b]],
                m.associator[a][m.unit][b],
            );
            let rhs = Some(m.tensor_mor[m.right_unitor[a]][c.identity_ix(b)]);
            if lhs != rhs {
                return Err(axiom(
                    "triangle",
                    format!("({}, {})", c.objects()[a], c.objects()[b]),
                ));
            }
        }
    }
    Ok(())
}

/// Strong monoidal functor data: an underlying functor plus the coherence
/// family `phi` and the unit comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalFunctorData {
    source: MonoidalStructure,
    target: MonoidalStructure,
    underlying: FinFunctor,
    /// `phi[a][b] : F(a) ⊗ F(b) -> F(a ⊗ b)` in the target.
    phi: Vec<Vec<usize>>,
    /// `phi_unit : I -> F(I)` in the target.
    phi_unit: usize,
    pub declared_strict: bool,
}

impl MonoidalFunctorData {
    pub fn new(
        source: MonoidalStructure,
        target: MonoidalStructure,
        underlying: FinFunctor,
        phi_rows: &[(String, String, String)],
        phi_unit: &str,
        declared_strict: bool,
    ) -> Result<Self, MonError> {
        if underlying.source() != source.base() || underlying.target() != target.base() {
            return Err(structural(
                "underlying functor endpoints do not match the monoidal structures",
            ));
        }
        let no = source.base().object_count();
        let mut phi = vec![vec![usize::MAX; no]; no];
        for (a, b, mmor) in phi_rows {
            let ai = source
                .base()
                .object_ix(a)
                .ok_or_else(|| structural(format!("phi row references unknown object {a:?}")))?;
            let bi = source
                .base()
                .object_ix(b)
                .ok_or_else(|| structural(format!("phi row references unknown object {b:?}")))?;
            let mi = target
                .base()
                .morphism_ix(mmor)
                .ok_or_else(|| structural(format!("phi row references unknown morphism {mmor:?}")))?;
            phi[ai][bi] = mi;
        }
        if phi.iter().flatten().any(|&x| x == usize::MAX) {
            return Err(structural("partial phi table"));
        }
        let phi_unit = target
            .base()
            .morphism_ix(phi_unit)
            .ok_or_else(|| structural(format!("unknown phi_unit morphism {phi_unit:?}")))?;
        Ok(MonoidalFunctorData {
            source,
            target,
            underlying,
            phi,
            phi_unit,
            declared_strict,
        })
    }

    /// Wraps a functor that preserves tensor and unit on the nose, giving
    /// every coherence component as an identity.
    pub fn strict_from_functor(
        source: MonoidalStructure,
        target: MonoidalStructure,
        f: FinFunctor,
    ) -> Result<Self, MonError> {
        if f.source() != source.base() || f.target() != target.base() {
            return Err(structural(
                "underlying functor endpoints do not match the monoidal structures",
            ));
        }
        let no = source.base().object_count();
        let mut phi = vec![vec![usize::MAX; no]; no];
        for a in 0..no {
            for b in 0..no {
                let lhs = target.tensor_obj_ix(f.obj_ix(a), f.obj_ix(b));
                let rhs = f.obj_ix(source.tensor_obj_ix(a, b));
                if lhs != rhs {
                    return Err(structural(format!(
                        "functor {} does not preserve the tensor on the nose at ({}, {})",
                        f.name(),
                        source.base().objects()[a],
                        source.base().objects()[b]
                    )));
                }
                phi[a][b] = target.base().identity_ix(lhs);
            }
        }
        if f.obj_ix(source.unit_ix()) != target.unit_ix() {
            return Err(structural(format!(
                "functor {} does not preserve the unit on the nose",
                f.name()
            )));
        }
        let phi_unit = target.base().identity_ix(target.unit_ix());
        Ok(MonoidalFunctorData {
            source,
            target,
            underlying: f,
            phi,
            phi_unit,
            declared_strict: true,
        })
    }

    pub fn source(&self) -> &MonoidalStructure {
        &self.source
    }

    pub fn target(&self) -> &MonoidalStructure {
        &self.target
    }

    pub fn underlying(&self) -> &FinFunctor {
        &self.underlying
    }

    pub fn phi_ix(&self, a: usize, b: usize) -> usize {
        self.phi[a][b]
    }

    pub fn phi_unit_ix(&self) -> usize {
        self.phi_unit
    }
}

/// Validation report for monoidal functor data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoidalFunctorReport {
    /// Strong monoidal coherence plus the underlying functor being an
    /// equivalence of categories.
    pub monoidal_equivalence: bool,
    /// Re-derived, never read off the declared flag: true when every
    /// coherence component is an identity.
    pub strict: bool,
    pub declared_strict: bool,
    /// The underlying functor is a surjective equivalence.
    pub surjective_equivalence: bool,
    pub underlying: FunctorPropertyReport,
}

impl MonoidalFunctorReport {
    pub fn certifies_strict_monoidal_surjective_equivalence(&self) -> bool {
        self.monoidal_equivalence && self.strict && self.surjective_equivalence
    }
}

/// Verifies strong monoidal coherence and computes the equivalence flags.
pub fn validate_monoidal_functor(d: &MonoidalFunctorData) -> Result<MonoidalFunctorReport, MonError> {
    validate_monoidal(&d.source)?;
    validate_monoidal(&d.target)?;
    validate_functor(&d.underlying)?;
    let s = &d.source;
    let t = &d.target;
    let f = &d.underlying;
    let tc = t.base();
    let no = s.base().object_count();

    // Component endpoints and invertibility; non-invertible phi components
    // are reported together.
    let mut bad: Vec<String> = Vec::new();
    for a in 0..no {
        for b in 0..no {
            let p = d.phi[a][b];
            let want_src = t.tensor_obj_ix(f.obj_ix(a), f.obj_ix(b));
            let want_tgt = f.obj_ix(s.tensor_obj_ix(a, b));
            if tc.src_ix(p) != want_src || tc.tgt_ix(p) != want_tgt {
                return Err(axiom(
                    "phi-endpoints",
                    format!("({}, {})", s.base().objects()[a], s.base().objects()[b]),
                ));
            }
            if !tc.is_iso_ix(p) {
                bad.push(format!(
                    "phi({}, {})",
                    s.base().objects()[a],
                    s.base().objects()[b]
                ));
            }
        }
    }
    if tc.src_ix(d.phi_unit) != t.unit_ix() || tc.tgt_ix(d.phi_unit) != f.obj_ix(s.unit_ix()) {
        return Err(axiom("phi-unit-endpoints", "phi_unit".to_string()));
    }
    if !tc.is_iso_ix(d.phi_unit) {
        bad.push("phi_unit".to_string());
    }
    if !bad.is_empty() {
        return Err(axiom("phi-invertible", bad.join(", ")));
    }

    // Naturality: phi_{a',b'} ∘ (F f ⊗ F g) = F(f ⊗ g) ∘ phi_{a,b}.
    for fm in 0..s.base().morphism_count() {
        for gm in 0..s.base().morphism_count() {
            let lhs = tc.compose_ix(
                d.phi[s.base().tgt_ix(fm)][s.base().tgt_ix(gm)],
                t.tensor_mor_ix(f.mor_ix(fm), f.mor_ix(gm)),
            );
            let rhs = tc.compose_ix(
                f.mor_ix(s.tensor_mor_ix(fm, gm)),
                d.phi[s.base().src_ix(fm)][s.base().src_ix(gm)],
            );
            if lhs != rhs || lhs.is_none() {
                return Err(axiom(
                    "phi-naturality",
                    format!("({}, {})", s.base().morphisms()[fm], s.base().morphisms()[gm]),
                ));
            }
        }
    }

    // Associativity hexagon:
    //   F(α^S) ∘ phi_{a⊗b,c} ∘ (phi_{a,b} ⊗ 1) = phi_{a,b⊗c} ∘ (1 ⊗ phi_{b,c}) ∘ α^T.
    for a in 0..no {
        for b in 0..no {
            for c in 0..no {
                let fa = f.obj_ix(a);
                let fb = f.obj_ix(b);
                let fc = f.obj_ix(c);
                let lhs = tc
                    .compose_ix(
                        d.phi[s.tensor_obj_ix(a, b)][c],
                        t.tensor_mor_ix(d.phi[a][b], tc.identity_ix(fc)),
                    )
                    .and_then(|x| tc.compose_ix(f.mor_ix(s.associator_ix(a, b, c)), x));
                let rhs = tc
                    .compose_ix(
                        t.tensor_mor_ix(tc.identity_ix(fa), d.phi[b][c]),
                        t.associator_ix(fa, fb, fc),
                    )
                    .and_then(|x| tc.compose_ix(d.phi[a][s.tensor_obj_ix(b, c)], x));
                if lhs != rhs || lhs.is_none() {
                    return Err(axiom(
                        "phi-hexagon",
                        format!(
                            "({}, {}, {})",
                            s.base().objects()[a],
                            s.base().objects()[b],
                            s.base().objects()[c]
                        ),
                    ));
                }
            }
        }
    }

    // Unit squares: F(λ^S_a) ∘ phi_{I,a} ∘ (phi_unit ⊗ 1) = λ^T and the
    // right-hand twin.
    for a in 0..no {
        let fa = f.obj_ix(a);
        let lhs = tc
            .compose_ix(
                d.phi[s.unit_ix()][a],
                t.tensor_mor_ix(d.phi_unit, tc.identity_ix(fa)),
            )
            .and_then(|x| tc.compose_ix(f.mor_ix(s.left_unitor_ix(a)), x));
        if lhs != Some(t.left_unitor_ix(fa)) {
            return Err(axiom("phi-left-unit", s.base().objects()[a].clone()));
        }
        let rhs = tc
            .compose_ix(
                d.phi[a][s.unit_ix()],
                t.tensor_mor_ix(tc.identity_ix(fa), d.phi_unit),
            )
            .and_then(|x| tc.compose_ix(f.mor_ix(s.right_unitor_ix(a)), x));
        if rhs != Some(t.right_unitor_ix(fa)) {
            return Err(axiom("phi-right-unit", s.base().objects()[a].clone()));
        }
    }

    let strict = d
        .phi
        .iter()
        .flatten()
        .all(|&p| tc.is_identity_ix(p))
        && tc.is_identity_ix(d.phi_unit);

    let underlying = check_functor_properties(f)?;
    Ok(MonoidalFunctorReport {
        monoidal_equivalence: underlying.certifies_equivalence(),
        strict,
        declared_strict: d.declared_strict,
        surjective_equivalence: underlying.certifies_surjective_equivalence(),
        underlying,
    })
}

#[derive(Debug, Clone)]
pub enum MonSpanRejection {
    NotAMonoidalEquivalence(Box<MonoidalFunctorReport>),
    Invalid(MonError),
}

impl From<MonError> for MonSpanRejection {
    fn from(e: MonError) -> Self {
        MonSpanRejection::Invalid(e)
    }
}

impl From<CatError> for MonSpanRejection {
    fn from(e: CatError) -> Self {
        MonSpanRejection::Invalid(MonError::Cat(e))
    }
}

impl std::fmt::Display for MonSpanRejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MonSpanRejection::NotAMonoidalEquivalence(_) => {
                write!(f, "input is not a certified monoidal equivalence")
            }
            MonSpanRejection::Invalid(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MonSpanResult {
    pub apex: MonoidalStructure,
    pub left_leg: MonoidalFunctorData,
    pub right_leg: MonoidalFunctorData,
    pub left_report: MonoidalFunctorReport,
    pub right_report: MonoidalFunctorReport,
    pub base_span: CatSpanResult,
}

impl MonSpanResult {
    pub fn both_legs_certified(&self) -> bool {
        self.left_report
            .certifies_strict_monoidal_surjective_equivalence()
            && self
                .right_report
                .certifies_strict_monoidal_surjective_equivalence()
    }
}

/// Builds the monoidal span over a certified monoidal equivalence.
pub fn build_span_monoidal(d: &MonoidalFunctorData) -> Result<MonSpanResult, MonSpanRejection> {
    let report = validate_monoidal_functor(d)?;
    if !report.monoidal_equivalence {
        return Err(MonSpanRejection::NotAMonoidalEquivalence(Box::new(report)));
    }
    let base_span = match build_span_cat(&d.underlying) {
        Ok(s) => s,
        Err(SpanRejection::NotAnEquivalence(r)) => {
            // Cannot happen after the certification above; keep the evidence.
            return Err(MonSpanRejection::Invalid(structural(format!(
                "underlying functor lost its certification: {r:?}"
            ))));
        }
        Err(SpanRejection::Invalid(e)) => return Err(e.into()),
    };

    let s = &d.source;
    let t = &d.target;
    let tc = t.base();
    let f = &d.underlying;
    let apex_cat = &base_span.apex;

    // Tensor of two triples. The third component pastes phi⁻¹ before the
    // tensored isos so that it starts at F(a ⊗ a~).
    let inv = |m: usize| -> Result<usize, MonError> {
        tc.inverse_ix(m)
            .ok_or_else(|| axiom("phi-invertible", tc.morphisms()[m].clone()))
    };
    let tensor_object = |o1: &crate::cat::IsoCommaObject,
                         o2: &crate::cat::IsoCommaObject|
     -> Result<String, MonError> {
        let a1 = s.base().object_ix(&o1.a).unwrap();
        let a2 = s.base().object_ix(&o2.a).unwrap();
        let l1 = tc.morphism_ix(&o1.ell).unwrap();
        let l2 = tc.morphism_ix(&o2.ell).unwrap();
        let a = s.base().objects()[s.tensor_obj_ix(a1, a2)].clone();
        let b = t
            .tensor_obj(&o1.b, &o2.b)
            .expect("fixture objects")
            .to_string();
        let ell_ix = tc
            .compose_ix(t.tensor_mor_ix(l1, l2), inv(d.phi_ix(a1, a2))?)
            .expect("composable by phi endpoints");
        let ell = tc.morphisms()[ell_ix].clone();
        base_span
            .object_id(&a, &b, &ell)
            .ok_or_else(|| axiom("apex-tensor-closure", format!("({}, {})", o1.id(), o2.id())))
    };

    let objs = &base_span.objects;
    let mut tensor_obj_rows = Vec::new();
    let mut tensor_cache: BTreeMap<(String, String), String> = BTreeMap::new();
    for o1 in objs {
        for o2 in objs {
            let r = tensor_object(o1, o2)?;
            tensor_cache.insert((o1.id(), o2.id()), r.clone());
            tensor_obj_rows.push((o1.id(), o2.id(), r));
        }
    }

    let obj_by_id: BTreeMap<String, &crate::cat::IsoCommaObject> =
        objs.iter().map(|o| (o.id(), o)).collect();
    let mut tensor_mor_rows = Vec::new();
    for m1 in &base_span.apex_morphisms {
        for m2 in &base_span.apex_morphisms {
            let src = tensor_cache[&(m1.src.clone(), m2.src.clone())].clone();
            let tgt = tensor_cache[&(m1.tgt.clone(), m2.tgt.clone())].clone();
            let fa = s.base().morphisms()
                [s.tensor_mor_ix(
                    s.base().morphism_ix(&m1.f).unwrap(),
                    s.base().morphism_ix(&m2.f).unwrap(),
                )]
            .clone();
            let gb = tc.morphisms()[t.tensor_mor_ix(
                tc.morphism_ix(&m1.g).unwrap(),
                tc.morphism_ix(&m2.g).unwrap(),
            )]
                .clone();
            let r = base_span
                .morphism_id(&src, &tgt, &fa, &gb)
                .ok_or_else(|| {
                    axiom("apex-tensor-closure", format!("({}, {})", m1.id, m2.id))
                })?
                .to_string();
            tensor_mor_rows.push((m1.id.clone(), m2.id.clone(), r));
        }
    }

    // Unit object (I, I, phi_unit⁻¹).
    let unit_id = {
        let a = s.unit().to_string();
        let b = t.unit().to_string();
        let ell = tc.morphisms()[inv(d.phi_unit_ix())?].clone();
        base_span
            .object_id(&a, &b, &ell)
            .ok_or_else(|| axiom("apex-unit-closure", "unit triple"))?
    };

    // Componentwise associator and unitors.
    let component_mor = |src: &str, tgt: &str, fa: usize, gb: usize| -> Result<String, MonError> {
        base_span
            .morphism_id(src, tgt, &s.base().morphisms()[fa], &tc.morphisms()[gb])
            .map(str::to_string)
            .ok_or_else(|| axiom("apex-coherence-closure", format!("{src} -> {tgt}")))
    };
    let mut assoc_rows = Vec::new();
    for o1 in objs {
        for o2 in objs {
            for o3 in objs {
                let left = tensor_cache[&(tensor_cache[&(o1.id(), o2.id())].clone(), o3.id())].clone();
                let right = tensor_cache[&(o1.id(), tensor_cache[&(o2.id(), o3.id())].clone())].clone();
                let a1 = s.base().object_ix(&o1.a).unwrap();
                let a2 = s.base().object_ix(&o2.a).unwrap();
                let a3 = s.base().object_ix(&o3.a).unwrap();
                let b1 = tc.object_ix(&o1.b).unwrap();
                let b2 = tc.object_ix(&o2.b).unwrap();
                let b3 = tc.object_ix(&o3.b).unwrap();
                let comp = component_mor(
                    &left,
                    &right,
                    s.associator_ix(a1, a2, a3),
                    t.associator_ix(b1, b2, b3),
                )?;
                assoc_rows.push((o1.id(), o2.id(), o3.id(), comp));
            }
        }
    }
    let mut lu_rows = Vec::new();
    let mut ru_rows = Vec::new();
    for o in objs {
        let a = s.base().object_ix(&o.a).unwrap();
        let b = tc.object_ix(&o.b).unwrap();
        let lsrc = tensor_cache[&(unit_id.clone(), o.id())].clone();
        lu_rows.push((
            o.id(),
            component_mor(&lsrc, &o.id(), s.left_unitor_ix(a), t.left_unitor_ix(b))?,
        ));
        let rsrc = tensor_cache[&(o.id(), unit_id.clone())].clone();
        ru_rows.push((
            o.id(),
            component_mor(&rsrc, &o.id(), s.right_unitor_ix(a), t.right_unitor_ix(b))?,
        ));
    }

    let apex = MonoidalStructure::from_tables(
        apex_cat.clone(),
        &tensor_obj_rows,
        &tensor_mor_rows,
        &unit_id,
        &assoc_rows,
        &lu_rows,
        &ru_rows,
    )?;
    validate_monoidal(&apex)?;

    let _ = obj_by_id;
    let left_leg = MonoidalFunctorData::strict_from_functor(
        apex.clone(),
        s.clone(),
        base_span.left_leg.clone(),
    )?;
    let right_leg = MonoidalFunctorData::strict_from_functor(
        apex.clone(),
        t.clone(),
        base_span.right_leg.clone(),
    )?;
    let left_report = validate_monoidal_functor(&left_leg)?;
    let right_report = validate_monoidal_functor(&right_leg)?;

    Ok(MonSpanResult {
        apex,
        left_leg,
        right_leg,
        left_report,
        right_report,
        base_span,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn mod2_discrete_monoidal_validates() {
        let m = fixtures::mod2_monoidal();
        assert_eq!(validate_monoidal(&m), Ok(()));
    }

    #[test]
    fn terminal_monoidal_validates() {
        let m = fixtures::terminal_monoidal();
        assert_eq!(validate_monoidal(&m), Ok(()));
    }

    #[test]
    fn wrong_unit_fails_the_unitor_check() {
        let base = fixtures::discrete_mod2_category();
        let m = MonoidalStructure::strict_from(
            base,
            "1",
            |a, b| fixtures::mod2_add(a, b),
            |f, g| {
                let a = fixtures::mod2_add(&f[2..], &g[2..]);
                format!("id{a}")
            },
        )
        .unwrap();
        let err = validate_monoidal(&m).unwrap_err();
        assert!(matches!(
            err,
            MonError::Axiom { axiom: "left-unitor" | "right-unitor", .. }
        ));
    }

    #[test]
    fn z4_parity_monoidal_validates() {
        let m = fixtures::z4_parity_monoidal();
        assert_eq!(validate_monoidal(&m), Ok(()));
    }

    #[test]
    fn identity_on_mod2_is_a_strict_monoidal_surjective_equivalence() {
        let m = fixtures::mod2_monoidal();
        let d = MonoidalFunctorData::strict_from_functor(
            m.clone(),
            m.clone(),
            FinFunctor::identity(m.base()),
        )
        .unwrap();
        let report = validate_monoidal_functor(&d).unwrap();
        assert!(report.strict);
        assert!(report.monoidal_equivalence);
        assert!(report.surjective_equivalence);
        assert!(report.certifies_strict_monoidal_surjective_equivalence());
    }

    #[test]
    fn parity_quotient_is_a_strict_monoidal_surjective_equivalence() {
        let d = fixtures::parity_quotient_monoidal_functor();
        let report = validate_monoidal_functor(&d).unwrap();
        assert!(report.strict);
        assert!(report.monoidal_equivalence);
        assert!(report.surjective_equivalence);
    }

    #[test]
    fn span_over_identity_of_mod2_has_two_objects_and_strict_legs() {
        let m = fixtures::mod2_monoidal();
        let d = MonoidalFunctorData::strict_from_functor(
            m.clone(),
            m.clone(),
            FinFunctor::identity(m.base()),
        )
        .unwrap();
        let span = build_span_monoidal(&d).unwrap();
        assert_eq!(span.apex.base().object_count(), 2);
        assert!(span.both_legs_certified());
    }

    #[test]
    fn span_over_parity_quotient_is_fully_certified() {
        let d = fixtures::parity_quotient_monoidal_functor();
        let span = build_span_monoidal(&d).unwrap();
        assert_eq!(validate_monoidal(&span.apex), Ok(()));
        assert!(span.both_legs_certified());

        // Strict-leg property, checked literally on every pair.
        let p = &span.left_leg;
        let objs = &span.base_span.objects;
        for o1 in objs {
            for o2 in objs {
                let t_apex = span
                    .apex
                    .tensor_obj(&o1.id(), &o2.id())
                    .unwrap()
                    .to_string();
                let p_of_tensor = p.underlying().apply_obj(&t_apex).unwrap();
                let tensor_of_p = d
                    .source()
                    .tensor_obj(
                        p.underlying().apply_obj(&o1.id()).unwrap(),
                        p.underlying().apply_obj(&o2.id()).unwrap(),
                    )
                    .unwrap();
                assert_eq!(p_of_tensor, tensor_of_p);
            }
        }
    }

    #[test]
    fn span_over_identity_of_terminal_monoidal_is_terminal() {
        let m = fixtures::terminal_monoidal();
        let d = MonoidalFunctorData::strict_from_functor(
            m.clone(),
            m.clone(),
            FinFunctor::identity(m.base()),
        )
        .unwrap();
        let span = build_span_monoidal(&d).unwrap();
        assert_eq!(span.apex.base().object_count(), 1);
        assert!(span.both_legs_certified());
    }
}
