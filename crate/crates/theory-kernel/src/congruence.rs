//! Saturation of the congruence a strict theory imposes on its term store.
//!
//! Three closure rules run to a joint fixpoint:
//!
//! 1. argument congruence: an application equals the same generator applied
//!    to the class representatives of its components;
//! 2. substitution stability: once a generator's generic application has
//!    collapsed onto another term over its arity, every instance of the
//!    generator collapses onto the corresponding substituted term;
//! 3. parallel collapse: two terms of dimension `d` over a context of height
//!    at most `d` merge as soon as their boundaries are congruent, which is
//!    what unique fillers force once every boundary pair has one.
//!
//! The height guard on rule 3 matters: over a context whose height reaches
//! the terms' own dimension the underlying one-skeleton is no longer a tree,
//! parallel cells can wind around it differently, and collapsing them would
//! overshoot the theory.  With the guard the rules stay inside the strict
//! theory's equalities; they can undershoot on exotic presentations, so
//! consumers that need exact class counts cross-check against a closed form.
//!
//! Rules 1 and 2 create terms (canonical applications and substituted
//! representatives).  Creation stabilizes because representatives only ever
//! move down the interning order, so each round rebuilds from a shrinking
//! set; a generous round cap turns any regression into a loud failure
//! instead of a hang.

use std::collections::HashMap;

use crate::term::{ArityId, Head, Presentation, TermId, TheoryMode};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SaturationReport {
    pub rounds: usize,
    pub merges: usize,
    pub terms_created: usize,
}

const ROUND_CAP: usize = 64;

impl Presentation {
    /// Runs the closure rules to fixpoint.  A weak theory has no congruence,
    /// so this is a no-op there.
    pub fn saturate(&mut self, max_dim: u8) -> SaturationReport {
        if self.mode() == TheoryMode::Weak {
            return SaturationReport::default();
        }
        let before_terms = self.term_count();
        let before_unions = self.union_count;
        let mut rounds = 0;
        loop {
            rounds += 1;
            assert!(
                rounds <= ROUND_CAP,
                "congruence saturation did not stabilize in {ROUND_CAP} rounds"
            );
            let mut changed = false;
            changed |= self.close_under_argument_congruence();
            changed |= self.close_under_substitution();
            changed |= self.collapse_parallel(max_dim);
            if !changed {
                break;
            }
        }
        SaturationReport {
            rounds,
            merges: self.union_count - before_unions,
            terms_created: self.term_count() - before_terms,
        }
    }

    fn close_under_argument_congruence(&mut self) -> bool {
        let mut changed = false;
        let snapshot = self.term_count();
        for i in 0..snapshot {
            let t = TermId(i as u32);
            let node = self.term(t).clone();
            let Head::Gen(g) = node.head else { continue };
            let canon: Vec<TermId> = node.args.iter().map(|&a| self.find(a)).collect();
            if canon[..] == node.args[..] {
                continue;
            }
            let image = self
                .mk_app(g, &canon)
                .expect("canonical components glue whenever the originals did");
            changed |= self.union(t, image);
        }
        changed
    }

    fn close_under_substitution(&mut self) -> bool {
        let mut changed = false;
        let snapshot = self.term_count();
        for i in 0..snapshot {
            let t = TermId(i as u32);
            let node = self.term(t).clone();
            let Head::Gen(g) = node.head else { continue };
            let generic = self.generic_app(g);
            let rep = self.find(generic);
            if rep == generic {
                continue;
            }
            let ctx = node.arity;
            let image = self
                .substitute(rep, &node.args, ctx)
                .expect("representative substitutes wherever the generic application did");
            changed |= self.union(t, image);
        }
        changed
    }

    fn collapse_parallel(&mut self, max_dim: u8) -> bool {
        let mut changed = false;
        for dim in 1..=max_dim {
            let snapshot = self.term_count();
            let mut by_boundary: HashMap<(ArityId, TermId, TermId), TermId> = HashMap::new();
            for i in 0..snapshot {
                let t = TermId(i as u32);
                let node = self.term(t);
                if node.dim != dim {
                    continue;
                }
                let q = node.arity;
                if self.table(q).height() > dim {
                    continue;
                }
                let key = (
                    q,
                    self.find(self.term_src(t).expect("positive dimension")),
                    self.find(self.term_tgt(t).expect("positive dimension")),
                );
                match by_boundary.get(&key) {
                    None => {
                        by_boundary.insert(key, t);
                    }
                    Some(&first) => changed |= self.union(first, t),
                }
            }
        }
        changed
    }

    /// Distinct congruence classes among the terms currently in the store
    /// over `q` at `dim`, by least representative.
    pub fn class_reps(&self, q: ArityId, dim: u8) -> Vec<TermId> {
        let mut reps: Vec<TermId> = (0..self.term_count())
            .map(|i| TermId(i as u32))
            .filter(|&t| {
                let node = self.term(t);
                node.arity == q && node.dim == dim
            })
            .map(|t| self.find(t))
            .collect();
        reps.sort_unstable();
        reps.dedup();
        reps
    }

    pub fn class_count(&self, q: ArityId, dim: u8) -> usize {
        self.class_reps(q, dim).len()
    }
}
