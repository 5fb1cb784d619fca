//! Hom-set sizes of the free strict theory on a height-one diagram.
//!
//! The realization of a height-at-most-one table is a finite connected graph
//! whose free groupoid is codiscrete exactly when the graph is a tree: any
//! two paths between the same endpoints differ by backtracks, so each ordered
//! vertex pair carries one morphism.  From there the counting recursion is
//! mechanical: dimension 0 counts vertices, dimension 1 counts ordered vertex
//! pairs, and each higher dimension counts ordered parallel pairs one
//! dimension down, because unique fillers put exactly one cell on every such
//! pair.  On trees the recursion is constant from dimension 1 upward, but it
//! is kept explicit so the crosscheck compares against the counting argument
//! rather than against its corollary.

use std::collections::BTreeMap;

use globular_core::{PastingDiagram, TableOfDimensions};

use crate::error::OracleError;

/// Realizes a height-at-most-one table and verifies that its one-skeleton is
/// a tree; both the counts and word reduction are meaningless without that.
pub(crate) fn realized_tree(table: &TableOfDimensions) -> Result<PastingDiagram, OracleError> {
    if table.height() > 1 {
        return Err(OracleError::Height {
            table: table.to_string(),
            height: table.height(),
        });
    }
    let d = PastingDiagram::realize(table);
    let vertices = d.cell_count(0);
    let edges = d.cell_count(1);
    if edges + 1 != vertices {
        return Err(OracleError::NotATree {
            table: table.to_string(),
        });
    }
    let mut adjacent = vec![Vec::new(); vertices];
    for edge in d.cells(1) {
        let s = d.src(edge).expect("edges have endpoints").idx as usize;
        let t = d.tgt(edge).expect("edges have endpoints").idx as usize;
        adjacent[s].push(t);
        adjacent[t].push(s);
    }
    let mut seen = vec![false; vertices];
    let mut frontier = vec![0usize];
    seen[0] = true;
    while let Some(v) = frontier.pop() {
        for &w in &adjacent[v] {
            if !seen[w] {
                seen[w] = true;
                frontier.push(w);
            }
        }
    }
    if seen.iter().all(|&reached| reached) {
        Ok(d)
    } else {
        Err(OracleError::NotATree {
            table: table.to_string(),
        })
    }
}

/// How many `dim`-cells the free strict theory puts over the realization of
/// `table`, computed by the parallel-pair recursion.
pub fn strict_hom_count(table: &TableOfDimensions, dim: u8) -> Result<u64, OracleError> {
    let d = realized_tree(table)?;
    let vertices = d.cell_count(0);
    if dim == 0 {
        return Ok(vertices as u64);
    }
    let mut level = ordered_pairs(vertices);
    for _ in 1..dim {
        level = parallel_pairs(&level);
    }
    Ok(level.len() as u64)
}

/// The cells one dimension above `level`: one per ordered pair of parallel
/// cells, with that pair as its boundary.
fn parallel_pairs(level: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut classes: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (cell, &boundary) in level.iter().enumerate() {
        classes.entry(boundary).or_default().push(cell);
    }
    let mut above = Vec::new();
    for members in classes.values() {
        for &src in members {
            for &tgt in members {
                above.push((src, tgt));
            }
        }
    }
    above
}

fn ordered_pairs(vertices: usize) -> Vec<(usize, usize)> {
    (0..vertices)
        .flat_map(|src| (0..vertices).map(move |tgt| (src, tgt)))
        .collect()
}
