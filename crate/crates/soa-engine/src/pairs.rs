//! Admissible pairs: the lifting problems a coherator stage solves.
//!
//! A pair at dimension `k` is an ordered pair of `k`-dimensional terms over a
//! common arity, parallel up to the ambient theory's equality (every ordered
//! pair qualifies at `k = 0`, the diagonal included).  Enumeration order is
//! canonical: arities in table order, then both slots in stratum order, so
//! repeated runs list pairs identically.
//!
//! Arity height is capped at `min(k+1, max_dim - k)`: the untruncated theory
//! poses lifting problems over every arity of height up to `k+1`, but a
//! fragment cut off at `max_dim` has to split that dimension budget between
//! the source's height and the filler's target dimension, and the problems
//! over taller arities at the fragment's top working dimension dominate the
//! pair count by several orders of magnitude without contributing anything
//! the fragment can still compose.  Enlarging `max_dim` widens the walk
//! accordingly.

use globular_core::TableOfDimensions;
use indexmap::{IndexMap, IndexSet};
use theory_kernel::{Presentation, TermId, TheoryMode};

use crate::bounds::FragmentBounds;

#[derive(Clone, Debug)]
pub struct AdmissiblePair {
    pub arity: TableOfDimensions,
    pub dim: u8,
    pub f: TermId,
    pub g: TermId,
}

impl AdmissiblePair {
    pub fn text(&self, t: &Presentation) -> String {
        format!(
            "({}, {}, {})",
            self.arity,
            t.term_text(self.f),
            t.term_text(self.g)
        )
    }
}

/// All admissible pairs of `t` at dimension `k` within `b`, in canonical
/// order.  Slots are congruence representatives, so in a strict theory pairs
/// that have collapsed together are listed once; the walk saturates the
/// congruence over the freshly enumerated universe first, since terms can
/// only merge once they exist.
pub fn admissible_pairs(t: &mut Presentation, k: u8, b: &FragmentBounds) -> Vec<AdmissiblePair> {
    let mut out = Vec::new();
    let height_cap = (k + 1).min((b.max_dim.saturating_sub(k)).max(1));
    if t.mode() == TheoryMode::Strict {
        for q in TableOfDimensions::enumerate(height_cap, b.max_arity_len) {
            let qa = t.intern_table(&q);
            t.enumerate_terms(qa, k, b.max_depth);
        }
        t.saturate(b.max_dim);
    }
    for q in TableOfDimensions::enumerate(height_cap, b.max_arity_len) {
        let qa = t.intern_table(&q);
        let terms = t.enumerate_terms(qa, k, b.max_depth);
        let mut reps: IndexSet<TermId> = IndexSet::new();
        for x in terms {
            reps.insert(t.find(x));
        }
        let signature = |t: &Presentation, x: TermId| {
            if k == 0 {
                (TermId(0), TermId(0))
            } else {
                (
                    t.find(t.term_src(x).expect("positive-dimensional term")),
                    t.find(t.term_tgt(x).expect("positive-dimensional term")),
                )
            }
        };
        let mut buckets: IndexMap<(TermId, TermId), Vec<TermId>> = IndexMap::new();
        for &x in &reps {
            buckets.entry(signature(t, x)).or_default().push(x);
        }
        for &f in &reps {
            for &g in &buckets[&signature(t, f)] {
                out.push(AdmissiblePair {
                    arity: q.clone(),
                    dim: k,
                    f,
                    g,
                });
            }
        }
    }
    out
}
