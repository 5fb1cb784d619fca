//! Morphisms between realized tables: maps of globular sets that send each
//! cell to a cell of the same dimension and commute with source and target.
//!
//! These are the morphisms of the base category of shapes.  There are no
//! degeneracies at this level, so hom sets are finite and can be enumerated
//! outright; `theta_hom` does so by extending partial maps one dimension at a
//! time, which prunes far earlier than filtering raw assignments.

use std::fmt;

use crate::{CellId, GlobularError, PastingDiagram, TableOfDimensions};

/// A dimension-preserving globular map between two realized tables.  Images
/// are stored per dimension in canonical cell order, so equal maps compare
/// equal structurally.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ThetaMor {
    dom: TableOfDimensions,
    cod: TableOfDimensions,
    images: Vec<Vec<u8>>,
}

impl ThetaMor {
    pub fn identity(table: &TableOfDimensions) -> Self {
        let diagram = PastingDiagram::realize(table);
        let images = (0..=diagram.height())
            .map(|d| (0..diagram.cell_count(d) as u8).collect())
            .collect();
        Self { dom: table.clone(), cod: table.clone(), images }
    }

    pub fn dom(&self) -> &TableOfDimensions {
        &self.dom
    }

    pub fn cod(&self) -> &TableOfDimensions {
        &self.cod
    }

    pub fn apply(&self, cell: CellId) -> CellId {
        CellId {
            dim: cell.dim,
            idx: self.images[cell.dim as usize][cell.idx as usize],
        }
    }

    /// Verifies that the stored images land in the codomain and commute with
    /// source and target.
    pub fn check(&self) -> Result<(), GlobularError> {
        let dom = PastingDiagram::realize(&self.dom);
        let cod = PastingDiagram::realize(&self.cod);
        for d in 0..=dom.height() {
            for cell in dom.cells(d) {
                let image = self.apply(cell);
                if !cod.contains(image) {
                    return Err(GlobularError::BoundaryViolation {
                        table: self.dom.to_string(),
                        cell: cell.to_string(),
                        boundary: "image",
                    });
                }
                if d > 0 {
                    let s = dom.src(cell).expect("positive dimension");
                    let t = dom.tgt(cell).expect("positive dimension");
                    if cod.src(image) != Some(self.apply(s)) {
                        return Err(GlobularError::BoundaryViolation {
                            table: self.dom.to_string(),
                            cell: cell.to_string(),
                            boundary: "source",
                        });
                    }
                    if cod.tgt(image) != Some(self.apply(t)) {
                        return Err(GlobularError::BoundaryViolation {
                            table: self.dom.to_string(),
                            cell: cell.to_string(),
                            boundary: "target",
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for ThetaMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (d, row) in self.images.iter().enumerate() {
            for (idx, &img) in row.iter().enumerate() {
                if !first {
                    write!(f, "; ")?;
                }
                first = false;
                write!(f, "cell({d},{idx})|->cell({d},{img})")?;
            }
        }
        write!(f, "}}")
    }
}

/// Enumerates every dimension-preserving globular map from `p` to `q` in a
/// deterministic order: images are chosen cell by cell, dimension by
/// dimension, lowest candidate index first.
pub fn theta_hom(p: &TableOfDimensions, q: &TableOfDimensions) -> Vec<ThetaMor> {
    let dom = PastingDiagram::realize(p);
    let cod = PastingDiagram::realize(q);

    if dom.height() > cod.height() {
        return Vec::new();
    }

    let mut results = Vec::new();
    let mut images: Vec<Vec<u8>> = (0..=dom.height()).map(|_| Vec::new()).collect();
    assign(&dom, &cod, 0, &mut images, &mut |images| {
        results.push(ThetaMor {
            dom: p.clone(),
            cod: q.clone(),
            images: images.to_vec(),
        });
    });
    results
}

fn assign(
    dom: &PastingDiagram,
    cod: &PastingDiagram,
    dim: u8,
    images: &mut Vec<Vec<u8>>,
    emit: &mut dyn FnMut(&[Vec<u8>]),
) {
    if dim > dom.height() {
        emit(images);
        return;
    }
    assign_within_dim(dom, cod, dim, 0, images, emit);
}

fn assign_within_dim(
    dom: &PastingDiagram,
    cod: &PastingDiagram,
    dim: u8,
    next: usize,
    images: &mut Vec<Vec<u8>>,
    emit: &mut dyn FnMut(&[Vec<u8>]),
) {
    if next == dom.cell_count(dim) {
        assign(dom, cod, dim + 1, images, emit);
        return;
    }
    let cell = CellId { dim, idx: next as u8 };
    let required = if dim == 0 {
        None
    } else {
        let s = dom.src(cell).expect("positive dimension");
        let t = dom.tgt(cell).expect("positive dimension");
        Some((
            images[dim as usize - 1][s.idx as usize],
            images[dim as usize - 1][t.idx as usize],
        ))
    };
    for candidate in cod.cells(dim) {
        if let Some((s_img, t_img)) = required {
            let cs = cod.src(candidate).expect("positive dimension");
            let ct = cod.tgt(candidate).expect("positive dimension");
            if cs.idx != s_img || ct.idx != t_img {
                continue;
            }
        }
        images[dim as usize].push(candidate.idx);
        assign_within_dim(dom, cod, dim, next + 1, images, emit);
        images[dim as usize].pop();
    }
}

/// Composes two maps, `second` after `first`.
pub fn theta_compose(first: &ThetaMor, second: &ThetaMor) -> ThetaMor {
    assert_eq!(
        first.cod, second.dom,
        "composition requires matching middle table"
    );
    let images = first
        .images
        .iter()
        .enumerate()
        .map(|(d, row)| {
            row.iter()
                .map(|&mid| second.images[d][mid as usize])
                .collect()
        })
        .collect();
    ThetaMor {
        dom: first.dom.clone(),
        cod: second.cod.clone(),
        images,
    }
}
