//! One-step and iterated lift adjunction.
//!
//! A step at dimension `k` walks the admissible pairs of the current theory
//! and adjoins a fresh `(k+1)`-generator for every pair the step's own layer
//! has not already filled.  Layers matter: a later pass over the same theory
//! opens a new layer and fills every pair again, which is exactly how the
//! free construction composes with itself, while calling the step twice in a
//! row continues the open layer and adds nothing the second time.
//!
//! The unique flavor additionally saturates the congruence after each step,
//! so that all fillers of a pair (and all parallel terms feeding it) collapse
//! to one representative before the next round recounts pairs.

use std::collections::HashSet;

use theory_kernel::{ArityId, Flavor, LayerStatus, Presentation, TermId};

use crate::bounds::FragmentBounds;
use crate::error::EngineError;
use crate::morphism::TheoryMorphism;
use crate::pairs::admissible_pairs;

/// What one fibrant-replacement pass did at one dimension.
#[derive(Clone, Copy, Debug)]
pub struct ReplaceReport {
    pub dim: u8,
    pub rounds: u32,
    pub added: usize,
    pub status: LayerStatus,
}

/// Adjoins lifts for the currently unfilled pairs at dimension `k` and
/// returns the extended theory with the inclusion of `t` into it.
pub fn extend_one_step(
    t: &Presentation,
    k: u8,
    b: &FragmentBounds,
    flavor: Flavor,
) -> Result<(Presentation, TheoryMorphism), EngineError> {
    let mut out = t.clone();
    extend_in_place(&mut out, k, b, flavor, t.stage() + 1)?;
    let eta = TheoryMorphism::inclusion(t, &mut out)?;
    Ok((out, eta))
}

/// Iterates the one-step extension at dimension `k` until it adds nothing or
/// `b.max_iter` rounds have run, closing the layer with an honest status.
/// Returns the replaced theory, the unit inclusion, and the pass report.
pub fn fibrant_replace(
    t: &Presentation,
    k: u8,
    b: &FragmentBounds,
    flavor: Flavor,
) -> Result<(Presentation, TheoryMorphism, ReplaceReport), EngineError> {
    let mut out = t.clone();
    let report = replace_in_place(&mut out, k, b, flavor, t.stage() + 1)?;
    let eta = TheoryMorphism::inclusion(t, &mut out)?;
    Ok((out, eta, report))
}

pub(crate) fn extend_in_place(
    t: &mut Presentation,
    k: u8,
    b: &FragmentBounds,
    flavor: Flavor,
    stage: u32,
) -> Result<usize, EngineError> {
    let pairs = admissible_pairs(t, k, b);
    let continuing = matches!(
        t.layers().last(),
        Some(l) if l.status == LayerStatus::Open && l.dim == k && l.flavor == flavor
    );
    if !continuing {
        t.open_layer(k, flavor)?;
    }
    let layer = t.layers().last().expect("layer just ensured").clone();
    let mut filled: HashSet<(ArityId, TermId, TermId)> = t
        .layer_gens(&layer)
        .map(|g| {
            let gen = t.generator(g);
            let src = gen.src.expect("lift generators have boundaries");
            let tgt = gen.tgt.expect("lift generators have boundaries");
            (gen.arity, t.find(src), t.find(tgt))
        })
        .collect();
    let mut added = 0;
    for pair in &pairs {
        let qa = t.intern_table(&pair.arity);
        let key = (qa, t.find(pair.f), t.find(pair.g));
        if !filled.insert(key) {
            continue;
        }
        t.add_generator(stage, qa, Some(pair.f), Some(pair.g), flavor)?;
        added += 1;
    }
    if flavor == Flavor::Unique {
        t.saturate(b.max_dim);
    }
    Ok(added)
}

pub(crate) fn replace_in_place(
    t: &mut Presentation,
    k: u8,
    b: &FragmentBounds,
    flavor: Flavor,
    stage: u32,
) -> Result<ReplaceReport, EngineError> {
    let mut rounds = 0;
    let mut added = 0;
    let mut status = LayerStatus::IterationBound;
    for _ in 0..b.max_iter.max(1) {
        rounds += 1;
        let n = extend_in_place(t, k, b, flavor, stage)?;
        added += n;
        if n == 0 {
            status = LayerStatus::Fixpoint;
            break;
        }
    }
    t.close_layer(status)?;
    Ok(ReplaceReport {
        dim: k,
        rounds,
        added,
        status,
    })
}
