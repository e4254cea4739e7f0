//! Finite categorical structures with machine-checked span constructions.
//!
//! The crate implements four levels of structure, each as composition-table
//! data that can be exhaustively validated:
//!
//! - [`cat`]: finite categories and functors, the iso-comma span, pullbacks,
//!   and zigzag closure under surjective equivalences.
//! - [`monoidal`]: monoidal structures on finite categories, strong/strict
//!   monoidal functors, and the monoidal span.
//! - [`twocat`]: strict 2-categories, pseudofunctors, adjoint equivalences,
//!   mates, and the 2-categorical span.
//! - [`doublecat`]: strict double categories, companion pairs, gregarious
//!   equivalences, double pseudofunctors, the double span, and the inverse
//!   construction for strict surjective equivalences.
//!
//! Every existence claim has a brute-force counterpart in [`oracle`], so each
//! construction can be cross-checked by exhaustive enumeration at desk scale.
//!
//! A *surjective equivalence* is a strictly structure-preserving map that is
//! genuinely surjective in every dimension, full above dimension zero, and
//! faithful in the top dimension. Spans of surjective equivalences generate
//! the usual notions of equivalence at all four levels; the span builders
//! produce the connecting apex and certify both legs.

pub mod cat;
pub mod doublecat;
pub mod files;
pub mod fixtures;
pub mod monoidal;
pub mod oracle;
pub mod twocat;

/// Joins component identifiers into a canonical tuple identifier.
///
/// Apex structures name their cells by the tuple of components they were
/// built from, so emitted spans are deterministic and diffable.
pub(crate) fn tuple_id(parts: &[&str]) -> String {
    let mut s = String::with_capacity(2 + parts.iter().map(|p| p.len() + 1).sum::<usize>());
    s.push('(');
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(p);
    }
    s.push(')');
    s
}
