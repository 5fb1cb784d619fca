//! Sphere and disk presentations: the shapes that index lifting problems.
//!
//! The `k`-sphere on an arity `p` is the base site plus two generators
//! `p -> k` sharing a declared boundary; the disk additionally carries one
//! `(k+1)`-generator filling the pair.  A map out of the sphere picks an
//! admissible pair, a map out of the disk picks a lift, and the evident
//! inclusion restricts the latter to the former.
//!
//! For `k >= 1` the shared boundary is the composite boundary of the pasting
//! `p` itself: the iterated source of the last peak against the iterated
//! target of the first.  Arities whose composite boundary is not a single
//! parallel pair of cells (possible once peaks dip below `k-1`) are rejected
//! rather than approximated.

use globular_core::TableOfDimensions;
use theory_kernel::{Flavor, GenIdx, Presentation, TermId, TheoryMode};

use crate::error::EngineError;
use crate::morphism::TheoryMorphism;

/// The two boundary generators, then the lift when the presentation is a
/// disk.
pub struct SphereParts {
    pub f: GenIdx,
    pub g: GenIdx,
    pub lift: Option<GenIdx>,
}

pub fn sphere(p: &TableOfDimensions, k: u8) -> Result<Presentation, EngineError> {
    Ok(build(p, k, false)?.0)
}

pub fn disk(p: &TableOfDimensions, k: u8) -> Result<Presentation, EngineError> {
    Ok(build(p, k, true)?.0)
}

/// The sphere, the disk, and the inclusion of the former into the latter.
pub fn sphere_disk_inclusion(
    p: &TableOfDimensions,
    k: u8,
) -> Result<(Presentation, Presentation, TheoryMorphism), EngineError> {
    let s = sphere(p, k)?;
    let mut d = disk(p, k)?;
    let j = TheoryMorphism::inclusion(&s, &mut d)?;
    Ok((s, d, j))
}

pub fn sphere_parts(p: &Presentation) -> SphereParts {
    SphereParts {
        f: GenIdx(0),
        g: GenIdx(1),
        lift: (p.gen_count() > 2).then_some(GenIdx(2)),
    }
}

fn build(
    p: &TableOfDimensions,
    k: u8,
    with_lift: bool,
) -> Result<(Presentation, SphereParts), EngineError> {
    if p.height() > k + 1 {
        return Err(EngineError::HeightViolation {
            table: p.clone(),
            height: p.height(),
            dim: k,
            limit: k + 1,
        });
    }
    let mut t = Presentation::new(TheoryMode::Weak);
    let qa = t.intern_table(p);
    let boundary = if k == 0 {
        None
    } else {
        Some(composite_boundary(&mut t, p, k - 1)?)
    };
    let (src, tgt) = boundary.map_or((None, None), |(s, g)| (Some(s), Some(g)));
    let f = t.add_generator(k as u32, qa, src, tgt, Flavor::Free)?;
    let g = t.add_generator(k as u32, qa, src, tgt, Flavor::Free)?;
    let lift = if with_lift {
        let f_app = t.generic_app(f);
        let g_app = t.generic_app(g);
        Some(t.add_generator(k as u32 + 1, qa, Some(f_app), Some(g_app), Flavor::Free)?)
    } else {
        None
    };
    Ok((t, SphereParts { f, g, lift }))
}

/// The dimension-`d` boundary of the whole pasting `p` as a pair of cell
/// terms: iterated source of the last peak, iterated target of the first.
fn composite_boundary(
    t: &mut Presentation,
    p: &TableOfDimensions,
    d: u8,
) -> Result<(TermId, TermId), EngineError> {
    let qa = t.intern_table(p);
    let peaks: Vec<u8> = p.peaks().collect();
    let first_dim = peaks[0];
    let last_dim = *peaks.last().expect("tables are nonempty");
    if first_dim < d || last_dim < d {
        return Err(EngineError::SphereBoundary {
            table: p.clone(),
            dim: d,
        });
    }
    let first_cell = t.diagram(qa).peak_cell(0);
    let last_cell = t.diagram(qa).peak_cell(peaks.len() - 1);
    let first_top = t.mk_cell(qa, first_cell)?;
    let last_top = t.mk_cell(qa, last_cell)?;
    let src = t.iterated_src(last_top, (last_dim - d) as usize);
    let tgt = t.iterated_tgt(first_top, (first_dim - d) as usize);
    if !t.parallel(src, tgt) {
        return Err(EngineError::SphereBoundary {
            table: p.clone(),
            dim: d,
        });
    }
    Ok((src, tgt))
}
