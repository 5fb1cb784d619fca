//! Realization of a table of dimensions as a concrete pasting diagram.
//!
//! The diagram is a finite globular set: cells per dimension, each cell of
//! positive dimension carrying a source and a target one dimension down,
//! subject to the globe identities `s(s(x)) = s(t(x))` and
//! `t(s(x)) = t(t(x))`.
//!
//! Construction walks the peaks left to right.  Peak 0 contributes a full
//! globe.  Every later peak is glued along its valley dimension `v`: its
//! target side at dimension `v` is the previous peak's source side, and all
//! of its cells below `v` are therefore the boundaries of that shared cell.
//! Only the cells from dimension `v` upward on the source side (plus both
//! sides above `v`, plus the top) are new.  Gluing target-to-source makes the
//! edges of `(1,0,1)` a composable chain `e1: v2 -> v0`, `e0: v0 -> v1`, with
//! the leftmost peak the outer factor of the composite.
//!
//! Cell indices are assigned in construction order, so the layout is the same
//! on every run and serialized references like `cell(0,2)` are stable.

use std::fmt;

use crate::{GlobularError, TableOfDimensions};

/// A cell of a realized diagram, addressed by dimension and index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId {
    pub dim: u8,
    pub idx: u8,
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cell({},{})", self.dim, self.idx)
    }
}

impl fmt::Debug for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which side of a peak's globe a cell sits on.  `Top` is the peak cell
/// itself; `Src`/`Tgt` cells are reached by iterating source or target from
/// the top.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Top,
    Src,
    Tgt,
}

/// A canonical description of a diagram cell relative to the peaks: take the
/// component for `peak`, then iterate source or target down to `dim`.  Shared
/// cells admit several such descriptions; the stored one is the first that
/// created the cell, and tuple validity guarantees all descriptions agree
/// under substitution.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CellExpr {
    pub peak: usize,
    pub dim: u8,
    pub side: Side,
}

#[derive(Clone, Debug)]
struct CellData {
    /// None exactly at dimension 0.
    src: Option<CellId>,
    tgt: Option<CellId>,
    expr: CellExpr,
}

/// The realized pasting diagram of a table: a finite globular set with
/// per-dimension cell lists in canonical order.
#[derive(Clone, Debug)]
pub struct PastingDiagram {
    table: TableOfDimensions,
    dims: Vec<Vec<CellData>>,
}

impl PastingDiagram {
    pub fn realize(table: &TableOfDimensions) -> Self {
        let mut diagram = Self {
            table: table.clone(),
            dims: vec![Vec::new(); table.height() as usize + 1],
        };

        let peaks: Vec<u8> = table.peaks().collect();
        let valleys: Vec<u8> = table.valleys().collect();

        // Source-side chain of the peak just laid down, indexed by dimension,
        // with the top cell at index peak_dim.
        let mut prev_src_chain: Vec<CellId> = Vec::new();

        for (p, &peak_dim) in peaks.iter().enumerate() {
            let pd = peak_dim as usize;
            let mut src_side: Vec<Option<CellId>> = vec![None; pd];
            let mut tgt_side: Vec<Option<CellId>> = vec![None; pd];

            if p > 0 {
                // Share the previous peak's source side at the valley
                // dimension and everything below it.
                let v = valleys[p - 1] as usize;
                let shared = prev_src_chain[v];
                tgt_side[v] = Some(shared);
                let mut walk = shared;
                for d in (0..v).rev() {
                    src_side[d] = diagram.src(walk);
                    tgt_side[d] = diagram.tgt(walk);
                    walk = diagram.tgt(walk).expect("cell above dimension 0");
                }
            }

            for d in 0..pd {
                let (s, t) = boundary_below(&src_side, &tgt_side, d);
                if src_side[d].is_none() {
                    src_side[d] = Some(diagram.push_cell(
                        d as u8,
                        s,
                        t,
                        CellExpr { peak: p, dim: d as u8, side: Side::Src },
                    ));
                }
                if tgt_side[d].is_none() {
                    tgt_side[d] = Some(diagram.push_cell(
                        d as u8,
                        s,
                        t,
                        CellExpr { peak: p, dim: d as u8, side: Side::Tgt },
                    ));
                }
            }

            let (s, t) = if pd == 0 { (None, None) } else { (src_side[pd - 1], tgt_side[pd - 1]) };
            let top = diagram.push_cell(
                peak_dim,
                s,
                t,
                CellExpr { peak: p, dim: peak_dim, side: Side::Top },
            );

            prev_src_chain = src_side.into_iter().map(|c| c.expect("filled")).collect();
            prev_src_chain.push(top);
        }

        diagram
    }

    fn push_cell(
        &mut self,
        dim: u8,
        src: Option<CellId>,
        tgt: Option<CellId>,
        expr: CellExpr,
    ) -> CellId {
        let idx = self.dims[dim as usize].len();
        assert!(idx <= u8::MAX as usize, "diagram exceeds cell index range");
        self.dims[dim as usize].push(CellData { src, tgt, expr });
        CellId { dim, idx: idx as u8 }
    }

    pub fn table(&self) -> &TableOfDimensions {
        &self.table
    }

    pub fn height(&self) -> u8 {
        (self.dims.len() - 1) as u8
    }

    /// Cell count at a dimension (0 above the height).
    pub fn cell_count(&self, dim: u8) -> usize {
        self.dims.get(dim as usize).map_or(0, Vec::len)
    }

    pub fn total_cells(&self) -> usize {
        self.dims.iter().map(Vec::len).sum()
    }

    /// All cells at a dimension in canonical order.
    pub fn cells(&self, dim: u8) -> impl Iterator<Item = CellId> + '_ {
        let count = self.cell_count(dim);
        (0..count).map(move |idx| CellId { dim, idx: idx as u8 })
    }

    pub fn contains(&self, cell: CellId) -> bool {
        (cell.dim as usize) < self.dims.len() && (cell.idx as usize) < self.cell_count(cell.dim)
    }

    pub fn src(&self, cell: CellId) -> Option<CellId> {
        self.dims[cell.dim as usize][cell.idx as usize].src
    }

    pub fn tgt(&self, cell: CellId) -> Option<CellId> {
        self.dims[cell.dim as usize][cell.idx as usize].tgt
    }

    /// The canonical peak-relative description of a cell.
    pub fn expr(&self, cell: CellId) -> CellExpr {
        self.dims[cell.dim as usize][cell.idx as usize].expr
    }

    /// The top cell of a peak.
    pub fn peak_cell(&self, peak: usize) -> CellId {
        let peak_dims: Vec<u8> = self.table.peaks().collect();
        let dim = peak_dims[peak];
        self.cells(dim)
            .find(|&cell| {
                let e = self.expr(cell);
                e.peak == peak && matches!(e.side, Side::Top)
            })
            .expect("every peak has a top cell")
    }

    /// Checks the globe identities over the whole diagram.
    pub fn check_globularity(&self) -> Result<(), GlobularError> {
        for d in 2..=self.height() {
            for cell in self.cells(d) {
                let s = self.src(cell).expect("positive dimension");
                let t = self.tgt(cell).expect("positive dimension");
                if self.src(s) != self.src(t) || self.tgt(s) != self.tgt(t) {
                    return Err(GlobularError::GlobularityViolation {
                        table: self.table.to_string(),
                        cell: cell.to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}

fn boundary_below(
    src_side: &[Option<CellId>],
    tgt_side: &[Option<CellId>],
    d: usize,
) -> (Option<CellId>, Option<CellId>) {
    if d == 0 {
        (None, None)
    } else {
        (src_side[d - 1], tgt_side[d - 1])
    }
}
