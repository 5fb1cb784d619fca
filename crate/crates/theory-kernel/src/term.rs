//! Terms over a presentation and the presentation itself.
//!
//! A term lives over a context table `q` and denotes a cell of that shape in
//! any model of the theory.  It is either a cell of the realization of `q`
//! or a generator applied to a tuple of terms over `q`, one component per
//! peak of the generator's arity, glued along the arity's valleys.  Terms are
//! interned: structurally equal terms get the same `TermId`, so syntactic
//! equality is pointer equality and a weak theory compares terms by id
//! alone.  A strict theory additionally carries a congruence over the store,
//! maintained as a union-find, and compares ids through it.
//!
//! Boundaries are computed once at construction and cached on the node: a
//! cell's boundary comes from the realization, an application's boundary is
//! the generator's declared boundary pushed through the component tuple.

use std::collections::HashMap;
use std::fmt;

use globular_core::{CellId, PastingDiagram, Side, TableOfDimensions};
use indexmap::{IndexMap, IndexSet};
use smallvec::SmallVec;

use crate::error::KernelError;
use crate::generator::{Flavor, GenId, GenIdx, Generator};

/// Interned context table, scoped to one presentation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ArityId(pub u32);

/// Interned term, scoped to one presentation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TermId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Head {
    Cell(CellId),
    Gen(GenIdx),
}

#[derive(Clone, Debug)]
pub struct TermNode {
    pub arity: ArityId,
    pub dim: u8,
    pub head: Head,
    pub args: SmallVec<[TermId; 3]>,
    /// Number of generator applications in the whole term.
    pub weight: u16,
    src: Option<TermId>,
    tgt: Option<TermId>,
}

impl PartialEq for TermNode {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity && self.head == other.head && self.args == other.args
    }
}

impl Eq for TermNode {}

impl std::hash::Hash for TermNode {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.arity.hash(state);
        self.head.hash(state);
        self.args.hash(state);
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TheoryMode {
    Weak,
    Strict,
}

impl fmt::Display for TheoryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoryMode::Weak => "weak",
            TheoryMode::Strict => "strict",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LayerStatus {
    Open,
    Fixpoint,
    IterationBound,
}

/// A contiguous run of generators added by one saturation pass at one
/// dimension.  Generators before the first layer are the presentation's
/// seed.
#[derive(Clone, Debug)]
pub struct Layer {
    pub dim: u8,
    pub flavor: Flavor,
    pub status: LayerStatus,
    pub start: u32,
    pub end: u32,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("mode", &self.mode)
            .field("stage", &self.stage)
            .field("generators", &self.gens.len())
            .field("terms", &self.store.len())
            .finish_non_exhaustive()
    }
}

#[derive(Clone)]
pub struct Presentation {
    mode: TheoryMode,
    stage: u32,
    arities: IndexSet<TableOfDimensions>,
    diagrams: Vec<PastingDiagram>,
    store: IndexSet<TermNode>,
    gens: Vec<Generator>,
    by_id: IndexMap<GenId, GenIdx>,
    layers: Vec<Layer>,
    parent: Vec<u32>,
    salt_counts: HashMap<(u32, ArityId, Option<TermId>, Option<TermId>, Flavor), u32>,
    pub(crate) union_count: usize,
    pub(crate) strata: HashMap<(ArityId, u8, u16), Vec<TermId>>,
    pub(crate) strata_epoch: (usize, usize),
}

impl Presentation {
    pub fn new(mode: TheoryMode) -> Self {
        Self {
            mode,
            stage: 0,
            arities: IndexSet::new(),
            diagrams: Vec::new(),
            store: IndexSet::new(),
            gens: Vec::new(),
            by_id: IndexMap::new(),
            layers: Vec::new(),
            parent: Vec::new(),
            salt_counts: HashMap::new(),
            union_count: 0,
            strata: HashMap::new(),
            strata_epoch: (0, 0),
        }
    }

    pub fn mode(&self) -> TheoryMode {
        self.mode
    }

    pub fn stage(&self) -> u32 {
        self.stage
    }

    pub fn set_stage(&mut self, stage: u32) {
        self.stage = stage;
    }

    pub fn intern_table(&mut self, table: &TableOfDimensions) -> ArityId {
        if let Some(i) = self.arities.get_index_of(table) {
            return ArityId(i as u32);
        }
        let (i, _) = self.arities.insert_full(table.clone());
        self.diagrams.push(PastingDiagram::realize(table));
        ArityId(i as u32)
    }

    pub fn lookup_table(&self, table: &TableOfDimensions) -> Option<ArityId> {
        self.arities.get_index_of(table).map(|i| ArityId(i as u32))
    }

    pub fn table(&self, arity: ArityId) -> &TableOfDimensions {
        &self.arities[arity.0 as usize]
    }

    pub fn diagram(&self, arity: ArityId) -> &PastingDiagram {
        &self.diagrams[arity.0 as usize]
    }

    pub fn arity_count(&self) -> usize {
        self.arities.len()
    }

    pub fn term(&self, t: TermId) -> &TermNode {
        &self.store[t.0 as usize]
    }

    pub fn term_count(&self) -> usize {
        self.store.len()
    }

    pub fn term_src(&self, t: TermId) -> Option<TermId> {
        self.store[t.0 as usize].src
    }

    pub fn term_tgt(&self, t: TermId) -> Option<TermId> {
        self.store[t.0 as usize].tgt
    }

    pub fn iterated_src(&self, t: TermId, steps: usize) -> TermId {
        let mut cur = t;
        for _ in 0..steps {
            cur = self.term_src(cur).expect("iterated below dimension 0");
        }
        cur
    }

    pub fn iterated_tgt(&self, t: TermId, steps: usize) -> TermId {
        let mut cur = t;
        for _ in 0..steps {
            cur = self.term_tgt(cur).expect("iterated below dimension 0");
        }
        cur
    }

    fn insert(&mut self, node: TermNode) -> TermId {
        let (idx, inserted) = self.store.insert_full(node);
        if inserted {
            self.parent.push(idx as u32);
        }
        TermId(idx as u32)
    }

    pub fn mk_cell(&mut self, arity: ArityId, cell: CellId) -> Result<TermId, KernelError> {
        let (src_cell, tgt_cell) = {
            let d = self.diagram(arity);
            if !d.contains(cell) {
                return Err(KernelError::UnknownCell {
                    table: self.table(arity).to_string(),
                    cell: cell.to_string(),
                });
            }
            (d.src(cell), d.tgt(cell))
        };
        let src = src_cell.map(|c| self.mk_cell(arity, c)).transpose()?;
        let tgt = tgt_cell.map(|c| self.mk_cell(arity, c)).transpose()?;
        Ok(self.insert(TermNode {
            arity,
            dim: cell.dim,
            head: Head::Cell(cell),
            args: SmallVec::new(),
            weight: 0,
            src,
            tgt,
        }))
    }

    pub fn mk_app(&mut self, g: GenIdx, args: &[TermId]) -> Result<TermId, KernelError> {
        let gen = self.generator(g).clone();
        let peaks: Vec<u8> = self.table(gen.arity).peaks().collect();
        let valleys: Vec<u8> = self.table(gen.arity).valleys().collect();
        if args.len() != peaks.len() {
            return Err(KernelError::ComponentCount {
                expected: peaks.len(),
                found: args.len(),
            });
        }
        let ctx = self.term(args[0]).arity;
        for (i, &a) in args.iter().enumerate() {
            let node = self.term(a);
            if node.arity != ctx {
                return Err(KernelError::ContextMismatch { position: i });
            }
            if node.dim != peaks[i] {
                return Err(KernelError::DimensionMismatch {
                    position: i,
                    expected: peaks[i],
                    found: node.dim,
                });
            }
        }
        for i in 1..peaks.len() {
            let v = valleys[i - 1];
            let lhs = self.iterated_src(args[i - 1], (peaks[i - 1] - v) as usize);
            let rhs = self.iterated_tgt(args[i], (peaks[i] - v) as usize);
            if !self.equal(lhs, rhs) {
                return Err(KernelError::ValleyMismatch {
                    valley_index: i - 1,
                    lhs: self.term_text(lhs),
                    rhs: self.term_text(rhs),
                });
            }
        }
        let src = gen
            .src
            .map(|b| self.substitute(b, args, ctx))
            .transpose()?;
        let tgt = gen
            .tgt
            .map(|b| self.substitute(b, args, ctx))
            .transpose()?;
        let weight = args
            .iter()
            .map(|&a| self.term(a).weight as u32)
            .sum::<u32>()
            + 1;
        let weight = u16::try_from(weight).expect("term weight exceeds u16");
        Ok(self.insert(TermNode {
            arity: ctx,
            dim: gen.target_dim,
            head: Head::Gen(g),
            args: args.into(),
            weight,
            src,
            tgt,
        }))
    }

    /// Pushes a term over `p` through a component tuple over `target`,
    /// sending the `i`-th peak cell of `p` to `sigma[i]`.
    pub fn substitute(
        &mut self,
        term: TermId,
        sigma: &[TermId],
        target: ArityId,
    ) -> Result<TermId, KernelError> {
        let p = self.term(term).arity;
        let peaks: Vec<u8> = self.table(p).peaks().collect();
        if sigma.len() != peaks.len() {
            return Err(KernelError::ComponentCount {
                expected: peaks.len(),
                found: sigma.len(),
            });
        }
        for (i, &s) in sigma.iter().enumerate() {
            let node = self.term(s);
            if node.arity != target {
                return Err(KernelError::ContextMismatch { position: i });
            }
            if node.dim != peaks[i] {
                return Err(KernelError::DimensionMismatch {
                    position: i,
                    expected: peaks[i],
                    found: node.dim,
                });
            }
        }
        let mut memo = HashMap::new();
        self.subst_inner(term, sigma, &peaks, &mut memo)
    }

    fn subst_inner(
        &mut self,
        t: TermId,
        sigma: &[TermId],
        peaks: &[u8],
        memo: &mut HashMap<TermId, TermId>,
    ) -> Result<TermId, KernelError> {
        if let Some(&r) = memo.get(&t) {
            return Ok(r);
        }
        let node = self.term(t).clone();
        let result = match node.head {
            Head::Cell(c) => {
                let expr = self.diagram(node.arity).expr(c);
                let from = sigma[expr.peak];
                let steps = (peaks[expr.peak] - expr.dim) as usize;
                match expr.side {
                    Side::Top => from,
                    Side::Src => self.iterated_src(from, steps),
                    Side::Tgt => self.iterated_tgt(from, steps),
                }
            }
            Head::Gen(g) => {
                let mut new_args = Vec::with_capacity(node.args.len());
                for &a in &node.args {
                    new_args.push(self.subst_inner(a, sigma, peaks, memo)?);
                }
                self.mk_app(g, &new_args)?
            }
        };
        memo.insert(t, result);
        Ok(result)
    }

    pub fn add_generator(
        &mut self,
        stage: u32,
        arity: ArityId,
        src: Option<TermId>,
        tgt: Option<TermId>,
        flavor: Flavor,
    ) -> Result<GenIdx, KernelError> {
        let target_dim = match (src, tgt) {
            (None, None) => 0,
            (Some(s), Some(t)) => {
                let (sd, td) = (self.term(s).dim, self.term(t).dim);
                if self.term(s).arity != arity || self.term(t).arity != arity {
                    return Err(KernelError::BadBoundary {
                        reason: "boundary terms must live over the generator's arity".into(),
                    });
                }
                if sd != td {
                    return Err(KernelError::BadBoundary {
                        reason: format!("boundary dimensions differ: {sd} vs {td}"),
                    });
                }
                if !self.parallel(s, t) {
                    return Err(KernelError::BadBoundary {
                        reason: "boundary terms are not parallel".into(),
                    });
                }
                sd + 1
            }
            _ => {
                return Err(KernelError::BadBoundary {
                    reason: "source and target must both be present or both absent".into(),
                })
            }
        };
        let salt_key = (stage, arity, src, tgt, flavor);
        let counter = self.salt_counts.entry(salt_key).or_insert(0);
        let salt = *counter;
        *counter += 1;
        let arity_text = self.table(arity).to_string();
        let src_text = src.map_or_else(|| "-".into(), |t| self.term_text(t));
        let tgt_text = tgt.map_or_else(|| "-".into(), |t| self.term_text(t));
        let id = GenId::derive(stage, &arity_text, &src_text, &tgt_text, flavor, salt);
        assert!(
            !self.by_id.contains_key(&id),
            "generator hash collision for {id}"
        );
        match self.layers.last_mut() {
            None => {}
            Some(layer) if layer.status == LayerStatus::Open => layer.end += 1,
            Some(_) => return Err(KernelError::NoOpenLayer),
        }
        let idx = GenIdx(self.gens.len() as u32);
        self.gens.push(Generator {
            id,
            stage,
            arity,
            target_dim,
            src,
            tgt,
            flavor,
            salt,
        });
        self.by_id.insert(id, idx);
        Ok(idx)
    }

    pub fn generator(&self, g: GenIdx) -> &Generator {
        &self.gens[g.0 as usize]
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_indices(&self) -> impl Iterator<Item = GenIdx> {
        (0..self.gens.len() as u32).map(GenIdx)
    }

    pub fn gen_by_id(&self, id: GenId) -> Option<GenIdx> {
        self.by_id.get(&id).copied()
    }

    /// The generator applied to the peak cells of its own arity.
    pub fn generic_app(&mut self, g: GenIdx) -> TermId {
        let arity = self.generator(g).arity;
        let peak_cells: Vec<CellId> = {
            let d = self.diagram(arity);
            (0..self.table(arity).peak_count())
                .map(|p| d.peak_cell(p))
                .collect()
        };
        let mut sigma = Vec::with_capacity(peak_cells.len());
        for c in peak_cells {
            sigma.push(self.mk_cell(arity, c).expect("peak cell exists"));
        }
        self.mk_app(g, &sigma).expect("generic tuple is valid")
    }

    pub fn open_layer(&mut self, dim: u8, flavor: Flavor) -> Result<(), KernelError> {
        if matches!(self.layers.last(), Some(l) if l.status == LayerStatus::Open) {
            return Err(KernelError::LayerAlreadyOpen);
        }
        let at = self.gens.len() as u32;
        self.layers.push(Layer {
            dim,
            flavor,
            status: LayerStatus::Open,
            start: at,
            end: at,
        });
        Ok(())
    }

    pub fn close_layer(&mut self, status: LayerStatus) -> Result<(), KernelError> {
        match self.layers.last_mut() {
            Some(l) if l.status == LayerStatus::Open => {
                l.status = status;
                Ok(())
            }
            _ => Err(KernelError::NoLayerOpen),
        }
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn seed_gen_count(&self) -> usize {
        self.layers
            .first()
            .map_or(self.gens.len(), |l| l.start as usize)
    }

    pub fn layer_gens(&self, layer: &Layer) -> impl Iterator<Item = GenIdx> {
        (layer.start..layer.end).map(GenIdx)
    }

    /// Theory equality: interned identity in a weak theory, congruence in a
    /// strict one.
    pub fn equal(&self, a: TermId, b: TermId) -> bool {
        match self.mode {
            TheoryMode::Weak => a == b,
            TheoryMode::Strict => self.find(a) == self.find(b),
        }
    }

    /// Congruence-class representative: the least interned term in the class.
    pub fn find(&self, t: TermId) -> TermId {
        let mut cur = t.0;
        loop {
            let p = self.parent[cur as usize];
            if p == cur {
                return TermId(cur);
            }
            cur = p;
        }
    }

    pub(crate) fn union(&mut self, a: TermId, b: TermId) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        debug_assert_eq!(
            self.term(ra).dim,
            self.term(rb).dim,
            "congruence must only merge terms of equal dimension"
        );
        self.union_count += 1;
        let root = ra.min(rb);
        for start in [a, b, ra.max(rb)] {
            let mut cur = start.0;
            while self.parent[cur as usize] != cur {
                let next = self.parent[cur as usize];
                self.parent[cur as usize] = root.0;
                cur = next;
            }
            self.parent[cur as usize] = root.0;
        }
        true
    }

    pub fn parallel(&self, f: TermId, g: TermId) -> bool {
        let (fd, gd) = (self.term(f).dim, self.term(g).dim);
        if fd != gd {
            return false;
        }
        if fd == 0 {
            return true;
        }
        let (fs, ft) = (self.term_src(f).unwrap(), self.term_tgt(f).unwrap());
        let (gs, gt) = (self.term_src(g).unwrap(), self.term_tgt(g).unwrap());
        self.equal(fs, gs) && self.equal(ft, gt)
    }

    pub fn term_text(&self, t: TermId) -> String {
        let mut out = String::new();
        self.write_term(t, &mut out);
        out
    }

    fn write_term(&self, t: TermId, out: &mut String) {
        use std::fmt::Write;
        let node = self.term(t);
        match node.head {
            Head::Cell(c) => {
                write!(out, "{c}").expect("string write");
            }
            Head::Gen(g) => {
                write!(out, "{}[", self.generator(g).id).expect("string write");
                for (i, &a) in node.args.iter().enumerate() {
                    if i > 0 {
                        out.push_str("; ");
                    }
                    self.write_term(a, out);
                }
                out.push(']');
            }
        }
    }
}
