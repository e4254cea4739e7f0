//! Enumeration engines shared by all levels.
//!
//! The search machinery is deliberately simple: a backtracking enumerator
//! over fixed candidate slots, extended assignment by assignment with
//! immediate consistency checks. Witnesses are always the lexicographically
//! first in slot order, and uniqueness counts always complete the
//! enumeration. Candidate accounting is exact: a pruned prefix charges the
//! full size of the subtree it cuts off, so an exhausted search reports the
//! full space size.

mod enumerate;

pub use enumerate::{enumerate_maps, MapKind, MapPredicate, MapWitness};

use serde::Serialize;

/// Default candidate cap for functor-level oracle calls.
pub const DEFAULT_FUNCTOR_BUDGET: u64 = 10_000_000;

/// Default candidate cap for binding-cell and adjoint-equivalence searches.
pub const DEFAULT_CELL_BUDGET: u64 = 1_000_000;

/// A hard cap on the number of candidates a search may charge.
///
/// Overflow is a distinct reported outcome, never conflated with "not found".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub max_candidates: u64,
}

impl SearchBudget {
    pub fn new(max_candidates: u64) -> Self {
        SearchBudget { max_candidates }
    }

    pub fn functors() -> Self {
        SearchBudget::new(DEFAULT_FUNCTOR_BUDGET)
    }

    pub fn cells() -> Self {
        SearchBudget::new(DEFAULT_CELL_BUDGET)
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::functors()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchStatus {
    /// A witness was found; it re-validates under the corresponding checker.
    Found,
    /// The whole space was enumerated and no candidate satisfied the
    /// predicate. `candidates_examined` equals the full space size.
    Exhausted,
    /// The candidate cap was hit before the search could conclude.
    Budget,
}

/// Result of a brute-force search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome<W> {
    pub status: SearchStatus,
    pub witness: Option<W>,
    pub candidates_examined: u128,
}

impl<W> SearchOutcome<W> {
    pub fn found(witness: W, candidates_examined: u128) -> Self {
        SearchOutcome {
            status: SearchStatus::Found,
            witness: Some(witness),
            candidates_examined,
        }
    }

    pub fn exhausted(candidates_examined: u128) -> Self {
        SearchOutcome {
            status: SearchStatus::Exhausted,
            witness: None,
            candidates_examined,
        }
    }

    pub fn budget(candidates_examined: u128) -> Self {
        SearchOutcome {
            status: SearchStatus::Budget,
            witness: None,
            candidates_examined,
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> SearchOutcome<V> {
        SearchOutcome {
            status: self.status,
            witness: self.witness.map(f),
            candidates_examined: self.candidates_examined,
        }
    }
}

/// Backtracking search over a fixed list of candidate slots.
///
/// `prune` sees the partial assignment after each slot is filled and returns
/// false to cut the branch; `accept` sees complete assignments. The first
/// accepted assignment, in lexicographic slot order, is returned. Pruned
/// branches charge the product of the remaining slot sizes, so on exhaustion
/// `candidates_examined` equals the product of all slot sizes.
pub fn backtrack_search(
    slots: &[Vec<usize>],
    budget: SearchBudget,
    mut prune: impl FnMut(&[usize]) -> bool,
    mut accept: impl FnMut(&[usize]) -> bool,
) -> SearchOutcome<Vec<usize>> {
    let n = slots.len();
    let max = budget.max_candidates as u128;
    let tail_product = |from: usize| -> u128 {
        slots[from..]
            .iter()
            .map(|s| s.len() as u128)
            .product::<u128>()
    };

    let mut examined: u128 = 0;
    if n == 0 {
        examined = 1;
        return if accept(&[]) {
            SearchOutcome::found(Vec::new(), examined)
        } else {
            SearchOutcome::exhausted(examined)
        };
    }
    if slots.iter().any(|s| s.is_empty()) {
        return SearchOutcome::exhausted(0);
    }

    let mut choice: Vec<usize> = Vec::with_capacity(n);
    let mut cursor: Vec<usize> = vec![0];
    loop {
        let depth = cursor.len() - 1;
        let ix = cursor[depth];
        if ix >= slots[depth].len() {
            // This slot is spent; back up.
            cursor.pop();
            choice.pop();
            match cursor.last_mut() {
                Some(c) => *c += 1,
                None => return SearchOutcome::exhausted(examined),
            }
            continue;
        }
        choice.push(slots[depth][ix]);
        if !prune(&choice) {
            examined = examined.saturating_add(tail_product(depth + 1));
            if examined > max {
                return SearchOutcome::budget(examined);
            }
            choice.pop();
            cursor[depth] += 1;
            continue;
        }
        if depth + 1 == n {
            examined += 1;
            if examined > max {
                return SearchOutcome::budget(examined);
            }
            if accept(&choice) {
                return SearchOutcome::found(choice, examined);
            }
            choice.pop();
            cursor[depth] += 1;
        } else {
            cursor.push(0);
        }
    }
}

/// An explicit expression tree of cell compositions.
///
/// `V(b, a)` denotes the composite where `a` is applied first and `b`
/// second under the vertical composition, mirroring a table lookup
/// `vcomp(b, a)`; `H` is the horizontal analogue. `Hole` marks the unknown
/// cell of a solving problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PasteExpr<C> {
    Cell(C),
    Hole,
    V(Box<PasteExpr<C>>, Box<PasteExpr<C>>),
    H(Box<PasteExpr<C>>, Box<PasteExpr<C>>),
}

impl<C> PasteExpr<C> {
    pub fn cell(c: C) -> Self {
        PasteExpr::Cell(c)
    }

    pub fn v(second: PasteExpr<C>, first: PasteExpr<C>) -> Self {
        PasteExpr::V(Box::new(second), Box::new(first))
    }

    pub fn h(second: PasteExpr<C>, first: PasteExpr<C>) -> Self {
        PasteExpr::H(Box::new(second), Box::new(first))
    }

    pub fn has_hole(&self) -> bool {
        match self {
            PasteExpr::Cell(_) => false,
            PasteExpr::Hole => true,
            PasteExpr::V(a, b) | PasteExpr::H(a, b) => a.has_hole() || b.has_hole(),
        }
    }
}

/// Evaluates a paste tree against table-lookup composition closures.
pub fn eval_paste<C: Clone, E>(
    expr: &PasteExpr<C>,
    hole: Option<&C>,
    vcomp: &impl Fn(&C, &C) -> Result<C, E>,
    hcomp: &impl Fn(&C, &C) -> Result<C, E>,
    on_missing_hole: &impl Fn() -> E,
) -> Result<C, E> {
    match expr {
        PasteExpr::Cell(c) => Ok(c.clone()),
        PasteExpr::Hole => hole.cloned().ok_or_else(on_missing_hole),
        PasteExpr::V(second, first) => {
            let f = eval_paste(first, hole, vcomp, hcomp, on_missing_hole)?;
            let s = eval_paste(second, hole, vcomp, hcomp, on_missing_hole)?;
            vcomp(&s, &f)
        }
        PasteExpr::H(second, first) => {
            let f = eval_paste(first, hole, vcomp, hcomp, on_missing_hole)?;
            let s = eval_paste(second, hole, vcomp, hcomp, on_missing_hole)?;
            hcomp(&s, &f)
        }
    }
}

/// All solutions of a one-hole paste equation, found by trying every
/// candidate. The enumeration always runs to completion so the count is a
/// genuine uniqueness certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveReport<C> {
    pub solutions: Vec<C>,
    pub candidates_examined: u64,
}

impl<C> SolveReport<C> {
    pub fn unique(&self) -> Option<&C> {
        if self.solutions.len() == 1 {
            Some(&self.solutions[0])
        } else {
            None
        }
    }
}

/// Solves `lhs(x) = rhs(x)` over the given candidates for the hole.
pub fn solve_2cell<C: Clone + PartialEq, E>(
    lhs: &PasteExpr<C>,
    rhs: &PasteExpr<C>,
    candidates: &[C],
    vcomp: &impl Fn(&C, &C) -> Result<C, E>,
    hcomp: &impl Fn(&C, &C) -> Result<C, E>,
    on_missing_hole: &impl Fn() -> E,
) -> Result<SolveReport<C>, E> {
    let mut solutions = Vec::new();
    for cand in candidates {
        let l = eval_paste(lhs, Some(cand), vcomp, hcomp, on_missing_hole)?;
        let r = eval_paste(rhs, Some(cand), vcomp, hcomp, on_missing_hole)?;
        if l == r {
            solutions.push(cand.clone());
        }
    }
    Ok(SolveReport {
        solutions,
        candidates_examined: candidates.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn backtrack_finds_lexicographically_first() {
        let slots = vec![vec![0, 1], vec![0, 1, 2]];
        let out = backtrack_search(&slots, SearchBudget::new(100), |_| true, |c| c[0] + c[1] == 2);
        assert_eq!(out.status, SearchStatus::Found);
        // (0,2) precedes (1,1) in slot order.
        assert_eq!(out.witness, Some(vec![0, 2]));
    }

    #[test]
    fn exhausted_counts_full_space() {
        let slots = vec![vec![0, 1, 2], vec![0, 1]];
        let out = backtrack_search(&slots, SearchBudget::new(100), |_| true, |_| false);
        assert_eq!(out.status, SearchStatus::Exhausted);
        assert_eq!(out.candidates_examined, 6);
    }

    #[test]
    fn pruned_subtrees_charge_their_leaves() {
        let slots = vec![vec![0, 1], vec![0, 1, 2, 3]];
        // Prune everything at depth one.
        let out = backtrack_search(&slots, SearchBudget::new(100), |c| c.len() > 1, |_| false);
        assert_eq!(out.status, SearchStatus::Exhausted);
        assert_eq!(out.candidates_examined, 8);
    }

    #[test]
    fn budget_is_a_distinct_outcome() {
        let slots = vec![vec![0; 10], vec![0; 10]];
        let out = backtrack_search(&slots, SearchBudget::new(5), |_| true, |_| false);
        assert_eq!(out.status, SearchStatus::Budget);
        assert!(out.candidates_examined > 5);
    }

    #[test]
    fn empty_slot_means_empty_space() {
        let slots = vec![vec![0, 1], vec![]];
        let out = backtrack_search(&slots, SearchBudget::new(5), |_| true, |_| true);
        assert_eq!(out.status, SearchStatus::Exhausted);
        assert_eq!(out.candidates_examined, 0);
    }

    #[test]
    fn solve_reports_all_solutions() {
        // Toy algebra: cells are integers mod 5, both compositions add.
        let comp = |b: &i64, a: &i64| -> Result<i64, ()> { Ok((a + b) % 5) };
        let lhs = PasteExpr::v(PasteExpr::cell(2), PasteExpr::Hole);
        let rhs = PasteExpr::cell(0);
        let candidates: Vec<i64> = (0..5).collect();
        let report = solve_2cell(&lhs, &rhs, &candidates, &comp, &comp, &|| ()).unwrap();
        assert_eq!(report.solutions, vec![3]);
        assert_eq!(report.candidates_examined, 5);
    }

    #[test]
    fn tautological_equation_counts_all_parallel_cells() {
        let comp = |b: &i64, a: &i64| -> Result<i64, ()> { Ok(a + b) };
        let report = solve_2cell(
            &PasteExpr::<i64>::Hole,
            &PasteExpr::Hole,
            &[4, 7, 9],
            &comp,
            &comp,
            &|| (),
        )
        .unwrap();
        assert_eq!(report.solutions.len(), 3);
    }
}
