//! Backtracking enumerators for structure-preserving maps at every level.
//!
//! Assignments are extended cell by cell with immediate preservation checks;
//! the naive assignment space is infeasible even at desk scale without that
//! pruning. Identity cells are never free slots: their images are forced by
//! the object assignment, which both shrinks the space and keeps the
//! lexicographic-first contract easy to state.

use super::{backtrack_search, SearchBudget, SearchOutcome};
use crate::cat::{check_functor_properties, FinCategory, FinFunctor};
use crate::doublecat::{check_double_functor_properties, DoublePseudofunctor, FinDoubleCategory};
use crate::monoidal::{validate_monoidal_functor, MonoidalFunctorData, MonoidalStructure};
use crate::twocat::{check_pseudofunctor_properties, Fin2Category, Pseudofunctor2};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("structural error: {0}")]
    Structural(String),
}

/// Which kind of map space to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind<'a> {
    Functor(&'a FinCategory, &'a FinCategory),
    StrictMonoidalFunctor(&'a MonoidalStructure, &'a MonoidalStructure),
    Strict2Functor(&'a Fin2Category, &'a Fin2Category),
    StrictDoubleFunctor(&'a FinDoubleCategory, &'a FinDoubleCategory),
}

/// The predicate a witness must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapPredicate {
    Any,
    Equivalence,
    SurjectiveEquivalence,
    GregariousDoubleEquivalence,
}

#[derive(Debug, Clone)]
pub enum MapWitness {
    Functor(FinFunctor),
    MonoidalFunctor(Box<MonoidalFunctorData>),
    TwoFunctor(Box<Pseudofunctor2>),
    DoubleFunctor(Box<DoublePseudofunctor>),
}

/// Generic dispatcher over the four enumeration spaces.
pub fn enumerate_maps(
    kind: MapKind<'_>,
    predicate: MapPredicate,
    budget: SearchBudget,
) -> Result<SearchOutcome<MapWitness>, OracleError> {
    match (kind, predicate) {
        (MapKind::Functor(a, b), p)
            if matches!(
                p,
                MapPredicate::Any | MapPredicate::Equivalence | MapPredicate::SurjectiveEquivalence
            ) =>
        {
            Ok(enumerate_functors(a, b, p, budget).map(MapWitness::Functor))
        }
        (MapKind::StrictMonoidalFunctor(a, b), p)
            if matches!(
                p,
                MapPredicate::Any | MapPredicate::Equivalence | MapPredicate::SurjectiveEquivalence
            ) =>
        {
            Ok(enumerate_strict_monoidal_functors(a, b, p, budget)
                .map(|w| MapWitness::MonoidalFunctor(Box::new(w))))
        }
        (MapKind::Strict2Functor(a, b), p)
            if matches!(
                p,
                MapPredicate::Any | MapPredicate::Equivalence | MapPredicate::SurjectiveEquivalence
            ) =>
        {
            Ok(enumerate_strict_2functors(a, b, p, budget)
                .map(|w| MapWitness::TwoFunctor(Box::new(w))))
        }
        (MapKind::StrictDoubleFunctor(a, b), p)
            if matches!(
                p,
                MapPredicate::Any
                    | MapPredicate::SurjectiveEquivalence
                    | MapPredicate::GregariousDoubleEquivalence
            ) =>
        {
            Ok(enumerate_strict_double_functors(a, b, p, budget)
                .map(|w| MapWitness::DoubleFunctor(Box::new(w))))
        }
        (kind, p) => Err(OracleError::Structural(format!(
            "predicate {p:?} is not implemented for map kind {kind:?}"
        ))),
    }
}

/// Enumerates functors `a -> b` in lexicographic order on the object
/// assignment followed by the non-identity morphism assignment.
pub fn enumerate_functors(
    a: &FinCategory,
    b: &FinCategory,
    predicate: MapPredicate,
    budget: SearchBudget,
) -> SearchOutcome<FinFunctor> {
    let nobj = a.object_count();
    let free_mors: Vec<usize> = (0..a.morphism_count())
        .filter(|&m| !a.is_identity_ix(m))
        .collect();
    let slot_of_mor: Vec<Option<usize>> = {
        let mut v = vec![None; a.morphism_count()];
        for (i, &m) in free_mors.iter().enumerate() {
            v[i] = v[i]; // keep clippy quiet about the closure below
            v[m] = Some(nobj + i);
        }
        v
    };

    let mut slots: Vec<Vec<usize>> = Vec::with_capacity(nobj + free_mors.len());
    for _ in 0..nobj {
        slots.push((0..b.object_count()).collect());
    }
    for _ in &free_mors {
        slots.push((0..b.morphism_count()).collect());
    }

    // Composable triples (g, f, g∘f), checked as soon as all images are known.
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    for g in 0..a.morphism_count() {
        for f in 0..a.morphism_count() {
            if let Some(h) = a.compose_ix(g, f) {
                triples.push((g, f, h));
            }
        }
    }

    let image = |choice: &[usize], m: usize| -> Option<usize> {
        if a.is_identity_ix(m) {
            let o = a.src_ix(m);
            if o < choice.len() {
                Some(b.identity_ix(choice[o]))
            } else {
                None
            }
        } else {
            match slot_of_mor[m] {
                Some(s) if s < choice.len() => Some(choice[s]),
                _ => None,
            }
        }
    };

    let prune = |choice: &[usize]| -> bool {
        let depth = choice.len() - 1;
        if depth < nobj {
            return true;
        }
        let m = free_mors[depth - nobj];
        let c = choice[depth];
        if b.src_ix(c) != choice[a.src_ix(m)] || b.tgt_ix(c) != choice[a.tgt_ix(m)] {
            return false;
        }
        for &(g, f, h) in &triples {
            if g != m && f != m && h != m {
                continue;
            }
            if let (Some(ig), Some(if_), Some(ih)) =
                (image(choice, g), image(choice, f), image(choice, h))
            {
                if b.compose_ix(ig, if_) != Some(ih) {
                    return false;
                }
            }
        }
        true
    };

    let build = |choice: &[usize]| -> FinFunctor {
        let obj_map = choice[..nobj].to_vec();
        let mor_map: Vec<usize> = (0..a.morphism_count())
            .map(|m| image(choice, m).expect("complete assignment"))
            .collect();
        FinFunctor::from_index_maps(
            &format!("found({}->{})", a.name(), b.name()),
            a.clone(),
            b.clone(),
            obj_map,
            mor_map,
        )
    };

    let accept = |choice: &[usize]| -> bool {
        let f = build(choice);
        match predicate {
            MapPredicate::Any => true,
            MapPredicate::Equivalence => check_functor_properties(&f)
                .map(|r| r.certifies_equivalence())
                .unwrap_or(false),
            MapPredicate::SurjectiveEquivalence => check_functor_properties(&f)
                .map(|r| r.certifies_surjective_equivalence())
                .unwrap_or(false),
            MapPredicate::GregariousDoubleEquivalence => false,
        }
    };

    backtrack_search(&slots, budget, prune, accept).map(|choice| build(&choice))
}

/// Enumerates strict monoidal functors between validated monoidal
/// structures: functors on the base together with on-the-nose preservation
/// of tensor and unit; every coherence component of a witness is an
/// identity.
pub fn enumerate_strict_monoidal_functors(
    a: &MonoidalStructure,
    b: &MonoidalStructure,
    predicate: MapPredicate,
    budget: SearchBudget,
) -> SearchOutcome<MonoidalFunctorData> {
    let ac = a.base();
    let bc = b.base();
    let nobj = ac.object_count();
    let free_mors: Vec<usize> = (0..ac.morphism_count())
        .filter(|&m| !ac.is_identity_ix(m))
        .collect();
    let slot_of_mor: Vec<Option<usize>> = {
        let mut v = vec![None; ac.morphism_count()];
        for (i, &m) in free_mors.iter().enumerate() {
            v[m] = Some(nobj + i);
        }
        v
    };

    let mut slots: Vec<Vec<usize>> = Vec::new();
    for _ in 0..nobj {
        slots.push((0..bc.object_count()).collect());
    }
    for _ in &free_mors {
        slots.push((0..bc.morphism_count()).collect());
    }

    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    for g in 0..ac.morphism_count() {
        for f in 0..ac.morphism_count() {
            if let Some(h) = ac.compose_ix(g, f) {
                triples.push((g, f, h));
            }
        }
    }

    let image = |choice: &[usize], m: usize| -> Option<usize> {
        if ac.is_identity_ix(m) {
            let o = ac.src_ix(m);
            if o < choice.len() {
                Some(bc.identity_ix(choice[o]))
            } else {
                None
            }
        } else {
            match slot_of_mor[m] {
                Some(s) if s < choice.len() => Some(choice[s]),
                _ => None,
            }
        }
    };

    let prune = |choice: &[usize]| -> bool {
        let depth = choice.len() - 1;
        if depth < nobj {
            // Unit and tensor preservation on objects, as far as assigned.
            if a.unit_ix() == depth && choice[depth] != b.unit_ix() {
                return false;
            }
            for x in 0..=depth {
                for y in 0..=depth {
                    let t = a.tensor_obj_ix(x, y);
                    if t <= depth && b.tensor_obj_ix(choice[x], choice[y]) != choice[t] {
                        return false;
                    }
                }
            }
            return true;
        }
        let m = free_mors[depth - nobj];
        let c = choice[depth];
        if bc.src_ix(c) != choice[ac.src_ix(m)] || bc.tgt_ix(c) != choice[ac.tgt_ix(m)] {
            return false;
        }
        for &(g, f, h) in &triples {
            if g != m && f != m && h != m {
                continue;
            }
            if let (Some(ig), Some(if_), Some(ih)) =
                (image(choice, g), image(choice, f), image(choice, h))
            {
                if bc.compose_ix(ig, if_) != Some(ih) {
                    return false;
                }
            }
        }
        // Tensor preservation on morphisms, as far as assigned.
        for x in 0..ac.morphism_count() {
            for y in 0..ac.morphism_count() {
                let t = a.tensor_mor_ix(x, y);
                if t != m && x != m && y != m {
                    continue;
                }
                if let (Some(ix), Some(iy), Some(it)) =
                    (image(choice, x), image(choice, y), image(choice, t))
                {
                    if b.tensor_mor_ix(ix, iy) != it {
                        return false;
                    }
                }
            }
        }
        true
    };

    let build = |choice: &[usize]| -> MonoidalFunctorData {
        let obj_map = choice[..nobj].to_vec();
        let mor_map: Vec<usize> = (0..ac.morphism_count())
            .map(|m| image(choice, m).expect("complete assignment"))
            .collect();
        let f = FinFunctor::from_index_maps(
            &format!("found({}->{})", ac.name(), bc.name()),
            ac.clone(),
            bc.clone(),
            obj_map,
            mor_map,
        );
        MonoidalFunctorData::strict_from_functor(a.clone(), b.clone(), f)
            .expect("strict preservation was enforced during enumeration")
    };

    let accept = |choice: &[usize]| -> bool {
        let d = build(choice);
        match predicate {
            MapPredicate::Any => true,
            MapPredicate::Equivalence => validate_monoidal_functor(&d)
                .map(|r| r.monoidal_equivalence)
                .unwrap_or(false),
            MapPredicate::SurjectiveEquivalence => validate_monoidal_functor(&d)
                .map(|r| r.monoidal_equivalence && r.surjective_equivalence)
                .unwrap_or(false),
            MapPredicate::GregariousDoubleEquivalence => false,
        }
    };

    backtrack_search(&slots, budget, prune, accept).map(|choice| build(&choice))
}

/// Enumerates strict 2-functors: assignments on 0-, 1- and 2-cells with
/// strict preservation of all three compositions.
pub fn enumerate_strict_2functors(
    a: &Fin2Category,
    b: &Fin2Category,
    predicate: MapPredicate,
    budget: SearchBudget,
) -> SearchOutcome<Pseudofunctor2> {
    let n0 = a.cell0_count();
    let free1: Vec<usize> = (0..a.cell1_count()).filter(|&f| !a.is_identity1(f)).collect();
    let free2: Vec<usize> = (0..a.cell2_count()).filter(|&x| !a.is_identity2(x)).collect();
    let slot1: Vec<Option<usize>> = {
        let mut v = vec![None; a.cell1_count()];
        for (i, &f) in free1.iter().enumerate() {
            v[f] = Some(n0 + i);
        }
        v
    };
    let slot2: Vec<Option<usize>> = {
        let mut v = vec![None; a.cell2_count()];
        for (i, &x) in free2.iter().enumerate() {
            v[x] = Some(n0 + free1.len() + i);
        }
        v
    };

    let mut slots: Vec<Vec<usize>> = Vec::new();
    for _ in 0..n0 {
        slots.push((0..b.cell0_count()).collect());
    }
    for _ in &free1 {
        slots.push((0..b.cell1_count()).collect());
    }
    for _ in &free2 {
        slots.push((0..b.cell2_count()).collect());
    }

    let image1 = |choice: &[usize], f: usize| -> Option<usize> {
        if a.is_identity1(f) {
            let o = a.src1(f);
            if o < choice.len() {
                Some(b.identity1_ix(choice[o]))
            } else {
                None
            }
        } else {
            match slot1[f] {
                Some(s) if s < choice.len() => Some(choice[s]),
                _ => None,
            }
        }
    };
    let image2 = |choice: &[usize], x: usize| -> Option<usize> {
        if a.is_identity2(x) {
            image1(choice, a.src2(x)).map(|f| b.identity2_ix(f))
        } else {
            match slot2[x] {
                Some(s) if s < choice.len() => Some(choice[s]),
                _ => None,
            }
        }
    };

    let prune = |choice: &[usize]| -> bool {
        let depth = choice.len() - 1;
        if depth < n0 {
            return true;
        }
        if depth < n0 + free1.len() {
            let f = free1[depth - n0];
            let c = choice[depth];
            if b.src1(c) != choice[a.src1(f)] || b.tgt1(c) != choice[a.tgt1(f)] {
                return false;
            }
            for g in 0..a.cell1_count() {
                for f2 in 0..a.cell1_count() {
                    if let Some(h) = a.hcomp1_ix(g, f2) {
                        if g != f && f2 != f && h != f {
                            continue;
                        }
                        if let (Some(ig), Some(if2), Some(ih)) =
                            (image1(choice, g), image1(choice, f2), image1(choice, h))
                        {
                            if b.hcomp1_ix(ig, if2) != Some(ih) {
                                return false;
                            }
                        }
                    }
                }
            }
            return true;
        }
        let x = free2[depth - n0 - free1.len()];
        let c = choice[depth];
        match (image1(choice, a.src2(x)), image1(choice, a.tgt2(x))) {
            (Some(s), Some(t)) if b.src2(c) == s && b.tgt2(c) == t => {}
            _ => return false,
        }
        for y in 0..a.cell2_count() {
            for x2 in 0..a.cell2_count() {
                let involved = |h: Option<usize>| {
                    h.map(|h| y == x || x2 == x || h == x).unwrap_or(false)
                };
                if involved(a.vcomp2_ix(y, x2)) {
                    let h = a.vcomp2_ix(y, x2).unwrap();
                    if let (Some(iy), Some(ix2), Some(ih)) =
                        (image2(choice, y), image2(choice, x2), image2(choice, h))
                    {
                        if b.vcomp2_ix(iy, ix2) != Some(ih) {
                            return false;
                        }
                    }
                }
                if involved(a.hcomp2_ix(y, x2)) {
                    let h = a.hcomp2_ix(y, x2).unwrap();
                    if let (Some(iy), Some(ix2), Some(ih)) =
                        (image2(choice, y), image2(choice, x2), image2(choice, h))
                    {
                        if b.hcomp2_ix(iy, ix2) != Some(ih) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    };

    let build = |choice: &[usize]| -> Pseudofunctor2 {
        let map0 = choice[..n0].to_vec();
        let map1: Vec<usize> = (0..a.cell1_count())
            .map(|f| image1(choice, f).expect("complete"))
            .collect();
        let map2: Vec<usize> = (0..a.cell2_count())
            .map(|x| image2(choice, x).expect("complete"))
            .collect();
        Pseudofunctor2::strict_from_index_maps(
            &format!("found({}->{})", a.name(), b.name()),
            a.clone(),
            b.clone(),
            map0,
            map1,
            map2,
        )
    };

    let accept = |choice: &[usize]| -> bool {
        let f = build(choice);
        match predicate {
            MapPredicate::Any => true,
            MapPredicate::Equivalence => check_pseudofunctor_properties(&f)
                .map(|r| r.biequivalence)
                .unwrap_or(false),
            MapPredicate::SurjectiveEquivalence => check_pseudofunctor_properties(&f)
                .map(|r| r.surjective_equivalence)
                .unwrap_or(false),
            MapPredicate::GregariousDoubleEquivalence => false,
        }
    };

    backtrack_search(&slots, budget, prune, accept).map(|choice| build(&choice))
}

/// Enumerates strict double functors: assignments on objects, horizontal
/// and vertical 1-cells, and squares, preserving all four compositions
/// strictly. Identity cells and identity squares are forced, not free.
pub fn enumerate_strict_double_functors(
    a: &FinDoubleCategory,
    b: &FinDoubleCategory,
    predicate: MapPredicate,
    budget: SearchBudget,
) -> SearchOutcome<DoublePseudofunctor> {
    let n0 = a.object_count();
    let freeh: Vec<usize> = (0..a.hcell_count()).filter(|&f| !a.is_hidentity(f)).collect();
    let freev: Vec<usize> = (0..a.vcell_count()).filter(|&u| !a.is_videntity(u)).collect();
    let freesq: Vec<usize> = (0..a.square_count()).filter(|&s| !a.is_identity_square(s)).collect();

    let sloth: Vec<Option<usize>> = {
        let mut v = vec![None; a.hcell_count()];
        for (i, &f) in freeh.iter().enumerate() {
            v[f] = Some(n0 + i);
        }
        v
    };
    let slotv: Vec<Option<usize>> = {
        let mut v = vec![None; a.vcell_count()];
        for (i, &u) in freev.iter().enumerate() {
            v[u] = Some(n0 + freeh.len() + i);
        }
        v
    };
    let slotsq: Vec<Option<usize>> = {
        let mut v = vec![None; a.square_count()];
        for (i, &s) in freesq.iter().enumerate() {
            v[s] = Some(n0 + freeh.len() + freev.len() + i);
        }
        v
    };

    let mut slots: Vec<Vec<usize>> = Vec::new();
    for _ in 0..n0 {
        slots.push((0..b.object_count()).collect());
    }
    for _ in &freeh {
        slots.push((0..b.hcell_count()).collect());
    }
    for _ in &freev {
        slots.push((0..b.vcell_count()).collect());
    }
    for _ in &freesq {
        slots.push((0..b.square_count()).collect());
    }

    let imageh = |choice: &[usize], f: usize| -> Option<usize> {
        if a.is_hidentity(f) {
            let o = a.hsrc(f);
            if o < choice.len() {
                Some(b.hidentity_ix(choice[o]))
            } else {
                None
            }
        } else {
            match sloth[f] {
                Some(s) if s < choice.len() => Some(choice[s]),
                _ => None,
            }
        }
    };
    let imagev = |choice: &[usize], u: usize| -> Option<usize> {
        if a.is_videntity(u) {
            let o = a.vsrc(u);
            if o < choice.len() {
                Some(b.videntity_ix(choice[o]))
            } else {
                None
            }
        } else {
            match slotv[u] {
                Some(s) if s < choice.len() => Some(choice[s]),
                _ => None,
            }
        }
    };
    let imagesq = |choice: &[usize], s: usize| -> Option<usize> {
        if let Some(f) = a.videntity_square_of(s) {
            return imageh(choice, f).map(|h| b.sq_vid_ix(h));
        }
        if let Some(u) = a.hidentity_square_of(s) {
            return imagev(choice, u).map(|v| b.sq_hid_ix(v));
        }
        match slotsq[s] {
            Some(k) if k < choice.len() => Some(choice[k]),
            _ => None,
        }
    };

    let check_table = |choice: &[usize],
                       new: usize,
                       count: usize,
                       comp_a: &dyn Fn(usize, usize) -> Option<usize>,
                       comp_b: &dyn Fn(usize, usize) -> Option<usize>,
                       image: &dyn Fn(&[usize], usize) -> Option<usize>|
     -> bool {
        for g in 0..count {
            for f in 0..count {
                if let Some(h) = comp_a(g, f) {
                    if g != new && f != new && h != new {
                        continue;
                    }
                    if let (Some(ig), Some(if_), Some(ih)) =
                        (image(choice, g), image(choice, f), image(choice, h))
                    {
                        if comp_b(ig, if_) != Some(ih) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    };

    let prune = |choice: &[usize]| -> bool {
        let depth = choice.len() - 1;
        if depth < n0 {
            return true;
        }
        if depth < n0 + freeh.len() {
            let f = freeh[depth - n0];
            let c = choice[depth];
            if b.hsrc(c) != choice[a.hsrc(f)] || b.htgt(c) != choice[a.htgt(f)] {
                return false;
            }
            return check_table(
                choice,
                f,
                a.hcell_count(),
                &|g, x| a.hcomp_ix(g, x),
                &|g, x| b.hcomp_ix(g, x),
                &imageh,
            );
        }
        if depth < n0 + freeh.len() + freev.len() {
            let u = freev[depth - n0 - freeh.len()];
            let c = choice[depth];
            if b.vsrc(c) != choice[a.vsrc(u)] || b.vtgt(c) != choice[a.vtgt(u)] {
                return false;
            }
            return check_table(
                choice,
                u,
                a.vcell_count(),
                &|g, x| a.vcomp_ix(g, x),
                &|g, x| b.vcomp_ix(g, x),
                &imagev,
            );
        }
        let s = freesq[depth - n0 - freeh.len() - freev.len()];
        let c = choice[depth];
        match (
            imageh(choice, a.sq_top(s)),
            imageh(choice, a.sq_bottom(s)),
            imagev(choice, a.sq_left(s)),
            imagev(choice, a.sq_right(s)),
        ) {
            (Some(t), Some(bo), Some(l), Some(r))
                if b.sq_top(c) == t && b.sq_bottom(c) == bo && b.sq_left(c) == l && b.sq_right(c) == r => {}
            _ => return false,
        }
        check_table(
            choice,
            s,
            a.square_count(),
            &|g, x| a.hcomp_sq_ix(g, x),
            &|g, x| b.hcomp_sq_ix(g, x),
            &imagesq,
        ) && check_table(
            choice,
            s,
            a.square_count(),
            &|g, x| a.vcomp_sq_ix(g, x),
            &|g, x| b.vcomp_sq_ix(g, x),
            &imagesq,
        )
    };

    let build = |choice: &[usize]| -> DoublePseudofunctor {
        let map0 = choice[..n0].to_vec();
        let maph: Vec<usize> = (0..a.hcell_count())
            .map(|f| imageh(choice, f).expect("complete"))
            .collect();
        let mapv: Vec<usize> = (0..a.vcell_count())
            .map(|u| imagev(choice, u).expect("complete"))
            .collect();
        let mapsq: Vec<usize> = (0..a.square_count())
            .map(|s| imagesq(choice, s).expect("complete"))
            .collect();
        DoublePseudofunctor::strict_from_index_maps(
            &format!("found({}->{})", a.name(), b.name()),
            a.clone(),
            b.clone(),
            map0,
            maph,
            mapv,
            mapsq,
        )
    };

    let accept = |choice: &[usize]| -> bool {
        let f = build(choice);
        match predicate {
            MapPredicate::Any => true,
            MapPredicate::Equivalence => false,
            MapPredicate::SurjectiveEquivalence => check_double_functor_properties(&f)
                .map(|r| r.surjective_equivalence)
                .unwrap_or(false),
            MapPredicate::GregariousDoubleEquivalence => check_double_functor_properties(&f)
                .map(|r| r.gregarious_double_equivalence)
                .unwrap_or(false),
        }
    };

    backtrack_search(&slots, budget, prune, accept).map(|choice| build(&choice))
}
