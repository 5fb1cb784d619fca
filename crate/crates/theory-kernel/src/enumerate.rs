//! Exhaustive term enumeration over a context, stratified by weight.
//!
//! Stratum `(q, d, w)` holds every term over `q` of dimension `d` built from
//! exactly `w` generator applications, in a deterministic order: cells in
//! realization order at weight 0, then applications by generator index, by
//! weight split of the components, by component order within each stratum.
//! Strata are cached; the cache is keyed to the generator count and the
//! congruence epoch, since both admit new terms (new generators directly, new
//! congruences by making more tuples glue in a strict theory).

use crate::error::KernelError;
use crate::term::{ArityId, Presentation, TermId};

impl Presentation {
    /// All terms over `q` of dimension `dim` with weight at most
    /// `max_weight`, ordered by weight then construction order.
    pub fn enumerate_terms(&mut self, q: ArityId, dim: u8, max_weight: u16) -> Vec<TermId> {
        self.ensure_strata(q, dim, max_weight);
        let mut out = Vec::new();
        for w in 0..=max_weight {
            out.extend_from_slice(&self.strata[&(q, dim, w)]);
        }
        out
    }

    fn ensure_strata(&mut self, q: ArityId, dim: u8, max_weight: u16) {
        let epoch = (self.gen_count(), self.union_count);
        if self.strata_epoch != epoch {
            self.strata.clear();
            self.strata_epoch = epoch;
        }
        let needed = self.needed_dims(dim);
        for w in 0..=max_weight {
            for &d in &needed {
                if self.strata.contains_key(&(q, d, w)) {
                    continue;
                }
                let stratum = self.compute_stratum(q, d, w);
                self.strata.insert((q, d, w), stratum);
            }
        }
    }

    /// The dimensions whose strata can feed a dimension-`dim` stratum: the
    /// requested dimension and everything reachable through argument slots
    /// of generators targeting an already-needed dimension.  Computing only
    /// these keeps a low-dimensional query from materializing the far larger
    /// strata above it.
    fn needed_dims(&self, dim: u8) -> Vec<u8> {
        let mut needed: std::collections::BTreeSet<u8> = (0..=dim).collect();
        loop {
            let mut grew = false;
            for g in self.gen_indices() {
                let gen = self.generator(g);
                if !needed.contains(&gen.target_dim) {
                    continue;
                }
                for pd in self.table(gen.arity).peaks() {
                    grew |= needed.insert(pd);
                }
            }
            if !grew {
                break;
            }
        }
        needed.into_iter().collect()
    }

    fn compute_stratum(&mut self, q: ArityId, dim: u8, weight: u16) -> Vec<TermId> {
        if weight == 0 {
            let cells: Vec<_> = self.diagram(q).cells(dim).collect();
            return cells
                .into_iter()
                .map(|c| self.mk_cell(q, c).expect("realization cell"))
                .collect();
        }

        let mut out = Vec::new();
        for g in self.gen_indices().collect::<Vec<_>>() {
            let gen = self.generator(g).clone();
            if gen.target_dim != dim {
                continue;
            }
            let peaks: Vec<u8> = self.table(gen.arity).peaks().collect();
            for split in compositions(weight - 1, peaks.len()) {
                let pools: Vec<Vec<TermId>> = peaks
                    .iter()
                    .zip(&split)
                    .map(|(&pd, &pw)| self.strata[&(q, pd, pw)].clone())
                    .collect();
                let mut tuple = Vec::with_capacity(pools.len());
                self.emit_apps(g, &pools, &mut tuple, &mut out);
            }
        }
        out
    }

    fn emit_apps(
        &mut self,
        g: crate::generator::GenIdx,
        pools: &[Vec<TermId>],
        tuple: &mut Vec<TermId>,
        out: &mut Vec<TermId>,
    ) {
        if tuple.len() == pools.len() {
            match self.mk_app(g, tuple) {
                Ok(t) => out.push(t),
                Err(KernelError::ValleyMismatch { .. }) => {}
                Err(e) => panic!("enumeration built an ill-formed tuple: {e}"),
            }
            return;
        }
        for &candidate in &pools[tuple.len()] {
            tuple.push(candidate);
            self.emit_apps(g, pools, tuple, out);
            tuple.pop();
        }
    }
}

/// All ways to write `total` as an ordered sum of `parts` naturals, in
/// lexicographic order.
fn compositions(total: u16, parts: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; parts];
    fn rec(total: u16, idx: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if idx + 1 == cur.len() {
            cur[idx] = total;
            out.push(cur.clone());
            return;
        }
        for first in 0..=total {
            cur[idx] = first;
            rec(total - first, idx + 1, cur, out);
        }
    }
    if parts == 0 {
        return out;
    }
    rec(total, 0, &mut cur, &mut out);
    out
}
