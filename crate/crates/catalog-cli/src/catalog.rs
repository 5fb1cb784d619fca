//! Names for the structure cells of a low tower.
//!
//! The first two stages of a coherator adjoin, among many anonymous fillers,
//! the cells every reader recognizes: the identity on a point, binary
//! composition of 1-cells, the inverse of a 1-cell, the associator, and the
//! two unitors.  Each of these is pinned by an explicit boundary pair, so a
//! catalog pass can recover them from a built tower by reconstructing those
//! boundaries and looking the pair up among the generators.
//!
//! The boundary formulas leave one genuine ambiguity: which leg of a
//! two-peak table counts as the first composition slot.  Identification
//! therefore runs under both conventions and keeps whichever names more
//! generators; the winning convention is recorded on the catalog so output
//! stays interpretable.  Cells whose conventional descriptions come without
//! a boundary formula are reported unnamed rather than guessed at.

use std::fmt;

use globular_core::CellId;
use soa_engine::Tower;
use theory_kernel::{ArityId, GenId, GenIdx, KernelError, Presentation, TermId};

use crate::error::CatalogError;

/// Which argument slot of a binary composite the first formula leg feeds.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SlotOrder {
    OuterFirst,
    InnerFirst,
}

impl SlotOrder {
    fn pair(self, first: TermId, second: TermId) -> [TermId; 2] {
        match self {
            SlotOrder::OuterFirst => [first, second],
            SlotOrder::InnerFirst => [second, first],
        }
    }

    fn leg(self, formula_index: usize, legs: usize) -> usize {
        match self {
            SlotOrder::OuterFirst => formula_index,
            SlotOrder::InnerFirst => legs - 1 - formula_index,
        }
    }
}

impl fmt::Display for SlotOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SlotOrder::OuterFirst => "outer-first",
            SlotOrder::InnerFirst => "inner-first",
        })
    }
}

/// One generator of the tower's top stage, with its conventional name when
/// its boundary pair earns one.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: Option<&'static str>,
    pub stage: u32,
    pub arity: String,
    pub src: String,
    pub tgt: String,
    pub id: GenId,
}

/// Every generator of the top stage in creation order, plus the slot-order
/// convention the named boundaries matched under.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub slot_order: SlotOrder,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn labeled(&self, label: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.label == Some(label))
    }

    pub fn to_tsv(&self) -> String {
        let mut out = format!("slot-order={}\n", self.slot_order);
        out.push_str("label\tstage\tarity\tsrc\ttgt\tgen\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                e.label.unwrap_or("unnamed"),
                e.stage,
                e.arity,
                e.src,
                e.tgt,
                e.id
            ));
        }
        out
    }
}

/// Classifies every generator of the tower's top stage.  Generators whose
/// boundary pair reproduces one of the explicit low-dimensional formulas are
/// labeled Z (identity), c (composition), ω (inverse), a (associator), Z_l
/// or Z_r (unitors); everything else is an unnamed entry.  Both slot-order
/// conventions are tried and the one naming more generators wins, ties going
/// to outer-first.
pub fn identify_cells(tower: &Tower) -> Result<Catalog, CatalogError> {
    let built = tower.built_stages();
    if built < 2 {
        return Err(CatalogError::Stages { built });
    }

    let mut best: Option<(SlotOrder, Vec<(GenIdx, &'static str)>)> = None;
    for order in [SlotOrder::OuterFirst, SlotOrder::InnerFirst] {
        let mut probe = tower.last().clone();
        let found = match_order(&mut probe, order)?;
        if best.as_ref().is_none_or(|(_, prev)| found.len() > prev.len()) {
            best = Some((order, found));
        }
    }
    let (slot_order, named) = best.expect("both slot orders were scored");

    let top = tower.last();
    let mut entries = Vec::with_capacity(top.gen_count());
    for g in top.gen_indices() {
        let gen = top.generator(g);
        entries.push(CatalogEntry {
            label: named.iter().find(|&&(n, _)| n == g).map(|&(_, l)| l),
            stage: gen.stage,
            arity: top.table(gen.arity).to_string(),
            src: gen.src.map_or_else(|| "-".into(), |u| top.term_text(u)),
            tgt: gen.tgt.map_or_else(|| "-".into(), |u| top.term_text(u)),
            id: gen.id,
        });
    }
    Ok(Catalog { slot_order, entries })
}

/// Builds the six named boundary pairs under one slot-order convention and
/// looks each up among the generators.  A composite that fails to glue under
/// this convention disqualifies its label, not the whole pass: that failure
/// is exactly how the wrong convention loses the score.
fn match_order(
    t: &mut Presentation,
    order: SlotOrder,
) -> Result<Vec<(GenIdx, &'static str)>, CatalogError> {
    let mut found: Vec<(GenIdx, &'static str)> = Vec::new();

    let dot = t.intern_table(&"(0)".parse().expect("literal table"));
    let pt_cell = t.diagram(dot).peak_cell(0);
    let pt = t.mk_cell(dot, pt_cell)?;
    let z = find_gen(t, dot, 1, pt, pt);
    if let Some(g) = z {
        found.push((g, "Z"));
    }

    let chain = t.intern_table(&"(1,0,1)".parse().expect("literal table"));
    let chain_legs = leg_cells(t, chain, order);
    let (src_cell, tgt_cell) = {
        let d = t.diagram(chain);
        (
            d.src(chain_legs[1]).expect("edges have endpoints"),
            d.tgt(chain_legs[0]).expect("edges have endpoints"),
        )
    };
    let c_src = t.mk_cell(chain, src_cell)?;
    let c_tgt = t.mk_cell(chain, tgt_cell)?;
    let c = find_gen(t, chain, 1, c_src, c_tgt);
    if let Some(g) = c {
        found.push((g, "c"));
    }

    let glob = t.intern_table(&"(1)".parse().expect("literal table"));
    let edge_cell = t.diagram(glob).peak_cell(0);
    let (x_cell, y_cell) = {
        let d = t.diagram(glob);
        (
            d.src(edge_cell).expect("edges have endpoints"),
            d.tgt(edge_cell).expect("edges have endpoints"),
        )
    };
    let e = t.mk_cell(glob, edge_cell)?;
    let x = t.mk_cell(glob, x_cell)?;
    let y = t.mk_cell(glob, y_cell)?;
    if let Some(g) = find_gen(t, glob, 1, y, x) {
        found.push((g, "ω"));
    }

    if let Some(cg) = c {
        let long = t.intern_table(&"(1,0,1,0,1)".parse().expect("literal table"));
        let long_legs = leg_cells(t, long, order);
        let mut es = Vec::with_capacity(3);
        for cell in long_legs {
            es.push(t.mk_cell(long, cell)?);
        }
        let left = match compose(t, order, cg, es[0], es[1])? {
            Some(inner) => compose(t, order, cg, inner, es[2])?,
            None => None,
        };
        let right = match compose(t, order, cg, es[1], es[2])? {
            Some(inner) => compose(t, order, cg, es[0], inner)?,
            None => None,
        };
        if let (Some(src), Some(tgt)) = (left, right) {
            if let Some(g) = find_gen(t, long, 2, src, tgt) {
                found.push((g, "a"));
            }
        }
    }

    if let (Some(zg), Some(cg)) = (z, c) {
        let id_y = t.mk_app(zg, &[y])?;
        if let Some(src) = compose(t, order, cg, id_y, e)? {
            if let Some(g) = find_gen(t, glob, 2, src, e) {
                found.push((g, "Z_l"));
            }
        }
        let id_x = t.mk_app(zg, &[x])?;
        if let Some(src) = compose(t, order, cg, e, id_x)? {
            if let Some(g) = find_gen(t, glob, 2, src, e) {
                found.push((g, "Z_r"));
            }
        }
    }

    Ok(found)
}

/// Peak cells of `arity` in formula-leg order under `order`.
fn leg_cells(t: &Presentation, arity: ArityId, order: SlotOrder) -> Vec<CellId> {
    let d = t.diagram(arity);
    let legs = t.table(arity).peaks().count();
    (0..legs).map(|i| d.peak_cell(order.leg(i, legs))).collect()
}

/// Applies the binary composite with formula slots mapped to argument slots
/// under `order`.  A valley mismatch means the two legs do not glue in this
/// convention; the caller treats that as a non-match.
fn compose(
    t: &mut Presentation,
    order: SlotOrder,
    c: GenIdx,
    first: TermId,
    second: TermId,
) -> Result<Option<TermId>, KernelError> {
    match t.mk_app(c, &order.pair(first, second)) {
        Ok(term) => Ok(Some(term)),
        Err(KernelError::ValleyMismatch { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// First generator in creation order with the given arity, target dimension,
/// and boundary pair.
fn find_gen(
    t: &Presentation,
    arity: ArityId,
    target_dim: u8,
    src: TermId,
    tgt: TermId,
) -> Option<GenIdx> {
    t.gen_indices().find(|&g| {
        let gen = t.generator(g);
        gen.arity == arity
            && gen.target_dim == target_dim
            && gen.src.is_some_and(|u| t.equal(u, src))
            && gen.tgt.is_some_and(|u| t.equal(u, tgt))
    })
}
