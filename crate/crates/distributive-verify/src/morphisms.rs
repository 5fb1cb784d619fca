use std::collections::HashMap;

use soa_engine::{
    fibrant_replace, lookup_lift, AdmissiblePair, EngineError, FragmentBounds, TheoryMorphism,
    Tower,
};
use theory_kernel::{ArityId, GenIdx, Presentation, TermId, TheoryMode};

use crate::objects::TheoryStack;

/// A morphism bundled with owned copies of its endpoints, so composites can
/// transport terms through it without rebuilding either theory.
pub struct ComparisonMap {
    pub dom: Presentation,
    pub cod: Presentation,
    pub map: TheoryMorphism,
}

impl ComparisonMap {
    /// Boundary preservation on every generator of the domain.
    pub fn check(&mut self) -> Result<(), EngineError> {
        let map = &self.map;
        map.check(&self.dom, &mut self.cod)
    }
}

/// Extends the identity on shared generators to all of `dom` by sending each
/// remaining generator to the canonical filler of its transported boundary
/// in `cod`: the first matching lift in creation order, up to congruence in
/// a strict theory.  All comparison maps here are resolved this way, and the
/// law checks verify that the canonical choices commute.
pub fn resolve_lifts(
    dom: &Presentation,
    cod: &mut Presentation,
    b: &FragmentBounds,
) -> Result<TheoryMorphism, EngineError> {
    let strict = cod.mode() == TheoryMode::Strict;
    let index = if strict {
        HashMap::new()
    } else {
        boundary_index(cod, cod.gen_indices().collect())
    };
    let mut m = TheoryMorphism::new();
    for g in dom.gen_indices() {
        let (id, qa, target_dim, src, tgt) = {
            let gen = dom.generator(g);
            (gen.id, gen.arity, gen.target_dim, gen.src, gen.tgt)
        };
        if let Some(shared) = cod.gen_by_id(id) {
            let app = cod.generic_app(shared);
            m.assign(id, app);
            continue;
        }
        let (Some(s), Some(t)) = (src, tgt) else {
            return Err(EngineError::MissingGenerator {
                hash: id.to_string(),
            });
        };
        let fs = m.apply(dom, cod, s)?;
        let ft = m.apply(dom, cod, t)?;
        let arity = dom.table(qa).clone();
        if strict {
            cod.saturate(b.max_dim);
            let pair = AdmissiblePair {
                arity,
                dim: target_dim - 1,
                f: cod.find(fs),
                g: cod.find(ft),
            };
            let image = lookup_lift(cod, &pair)?;
            m.assign(id, image);
        } else {
            let key = (cod.intern_table(&arity), target_dim, fs, ft);
            let Some(&hit) = index.get(&key) else {
                return Err(EngineError::MissingLift {
                    arity,
                    src: cod.term_text(fs),
                    tgt: cod.term_text(ft),
                });
            };
            let app = cod.generic_app(hit);
            m.assign(id, app);
        }
    }
    Ok(m)
}

/// The image of a one-step extension under its functoriality.  `dom` must be
/// the step applied to `base.dom` and `cod` the step applied to `base.cod`:
/// generators covered by `base` follow it, and each generator of the final
/// layer of `dom` goes to the filler of its transported boundary inside the
/// final layer of `cod`, never to an earlier coincidental filler.  `None`
/// stands for the empty map out of a generator-free base.
pub fn step_image(
    base: Option<&ComparisonMap>,
    dom: &Presentation,
    cod: &mut Presentation,
    b: &FragmentBounds,
) -> Result<TheoryMorphism, EngineError> {
    let carry = match base {
        Some(cm) => Some(TheoryMorphism::inclusion(&cm.cod, cod)?),
        None => None,
    };
    let fresh: Vec<GenIdx> = match cod.layers().last() {
        Some(layer) => cod.layer_gens(layer).collect(),
        None => Vec::new(),
    };
    let strict = cod.mode() == TheoryMode::Strict;
    let index = if strict {
        HashMap::new()
    } else {
        boundary_index(cod, fresh.clone())
    };
    let mut m = TheoryMorphism::new();
    for g in dom.gen_indices() {
        let (id, qa, target_dim, src, tgt) = {
            let gen = dom.generator(g);
            (gen.id, gen.arity, gen.target_dim, gen.src, gen.tgt)
        };
        if let (Some(cm), Some(carry)) = (base, carry.as_ref()) {
            if let Some(through) = cm.map.image(id) {
                let image = carry.apply(&cm.cod, cod, through)?;
                m.assign(id, image);
                continue;
            }
        }
        let (Some(s), Some(t)) = (src, tgt) else {
            return Err(EngineError::MissingGenerator {
                hash: id.to_string(),
            });
        };
        let fs = m.apply(dom, cod, s)?;
        let ft = m.apply(dom, cod, t)?;
        let arity = dom.table(qa).clone();
        let qa_cod = cod.intern_table(&arity);
        let hit = if strict {
            cod.saturate(b.max_dim);
            let mut found = None;
            for &cand in &fresh {
                let gen = cod.generator(cand);
                if gen.arity != qa_cod || gen.target_dim != target_dim {
                    continue;
                }
                let (Some(cs), Some(ct)) = (gen.src, gen.tgt) else {
                    continue;
                };
                if cod.equal(cs, fs) && cod.equal(ct, ft) {
                    found = Some(cand);
                    break;
                }
            }
            found
        } else {
            index.get(&(qa_cod, target_dim, fs, ft)).copied()
        };
        let Some(hit) = hit else {
            return Err(EngineError::MissingLift {
                arity,
                src: cod.term_text(fs),
                tgt: cod.term_text(ft),
            });
        };
        let app = cod.generic_app(hit);
        m.assign(id, app);
    }
    Ok(m)
}

/// The composite `second ∘ first`, tabulated on the generators of `dom`.
pub fn compose(
    first: &TheoryMorphism,
    second: &TheoryMorphism,
    dom: &Presentation,
    mid: &Presentation,
    cod: &mut Presentation,
) -> Result<TheoryMorphism, EngineError> {
    let mut m = TheoryMorphism::new();
    for g in dom.gen_indices() {
        let id = dom.generator(g).id;
        let through = first.image(id).ok_or_else(|| EngineError::MissingImage {
            hash: id.to_string(),
        })?;
        let image = second.apply(mid, cod, through)?;
        m.assign(id, image);
    }
    Ok(m)
}

/// The comparison `R_i R_j ⇒ R_j R_i` over the stack's base, on the fragment.
pub fn build_lambda(stack: &mut TheoryStack, i: u8, j: u8) -> Result<ComparisonMap, EngineError> {
    debug_assert!(i < j);
    let b = stack.bounds();
    let dom = stack.cloned(&[j, i])?;
    let mut cod = stack.cloned(&[i, j])?;
    let map = resolve_lifts(&dom, &mut cod, &b)?;
    Ok(ComparisonMap { dom, cod, map })
}

/// The multiplication collapsing two replacement layers at `k` into one.
pub fn build_mu(stack: &mut TheoryStack, k: u8) -> Result<ComparisonMap, EngineError> {
    let b = stack.bounds();
    let dom = stack.cloned(&[k, k])?;
    let mut cod = stack.cloned(&[k])?;
    let map = resolve_lifts(&dom, &mut cod, &b)?;
    Ok(ComparisonMap { dom, cod, map })
}

/// The stage-`n` approximant of the multiplication on the tower's top
/// theory: `n` replacement layers over it, one per dimension below `n`,
/// resolved back into the top.  Stage 0 is the identity.
pub fn build_mu_hat(
    tower: &Tower,
    n: usize,
    b: &FragmentBounds,
) -> Result<ComparisonMap, EngineError> {
    let hat = tower.last();
    let flavor = tower.mode.flavor();
    let mut dom = hat.clone();
    for k in 0..n {
        let (mut next, _, _) = fibrant_replace(&dom, k as u8, b, flavor)?;
        next.set_stage(hat.stage() + k as u32 + 1);
        dom = next;
    }
    let mut cod = hat.clone();
    let map = resolve_lifts(&dom, &mut cod, b)?;
    Ok(ComparisonMap { dom, cod, map })
}

/// The inclusion of stage `n` into the top of the tower, with its own copy
/// of the endpoints.
pub fn kappa(tower: &Tower, n: usize) -> Result<ComparisonMap, EngineError> {
    let dom = tower.stage(n).clone();
    let mut cod = tower.last().clone();
    let map = TheoryMorphism::inclusion(&dom, &mut cod)?;
    Ok(ComparisonMap { dom, cod, map })
}

/// Every generator of `t` filling the given boundary, in creation order.  A
/// strict theory identifies all of them; a weak one keeps repeated layers
/// genuinely distinct.
pub fn lift_candidates(t: &mut Presentation, pair: &AdmissiblePair) -> Vec<GenIdx> {
    let qa = t.intern_table(&pair.arity);
    let mut out = Vec::new();
    for g in t.gen_indices() {
        let gen = t.generator(g);
        if gen.arity != qa || gen.target_dim != pair.dim + 1 {
            continue;
        }
        let (Some(s), Some(tg)) = (gen.src, gen.tgt) else {
            continue;
        };
        if t.equal(s, pair.f) && t.equal(tg, pair.g) {
            out.push(g);
        }
    }
    out
}

fn boundary_index(
    t: &Presentation,
    gens: Vec<GenIdx>,
) -> HashMap<(ArityId, u8, TermId, TermId), GenIdx> {
    let mut index = HashMap::new();
    for g in gens {
        let gen = t.generator(g);
        if let (Some(s), Some(tg)) = (gen.src, gen.tgt) {
            index.entry((gen.arity, gen.target_dim, s, tg)).or_insert(g);
        }
    }
    index
}
