//! Maps of globular theories.
//!
//! A theory map is the identity on the site, so it is determined by where it
//! sends generators: each generator of the domain goes to a term of the same
//! arity and dimension in the codomain, and applications are pushed through
//! by substitution.  Images are keyed by content hash, which makes a morphism
//! meaningful across structurally equal presentations.

use std::collections::HashMap;

use indexmap::IndexMap;
use theory_kernel::{GenId, Head, Presentation, TermId};

use crate::error::EngineError;

#[derive(Clone, Debug, Default)]
pub struct TheoryMorphism {
    images: IndexMap<GenId, TermId>,
}

impl TheoryMorphism {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn assign(&mut self, g: GenId, image: TermId) {
        self.images.insert(g, image);
    }

    pub fn image(&self, g: GenId) -> Option<TermId> {
        self.images.get(&g).copied()
    }

    pub fn gen_images(&self) -> impl Iterator<Item = (GenId, TermId)> + '_ {
        self.images.iter().map(|(&g, &t)| (g, t))
    }

    /// The identity map: every generator goes to its own generic application.
    pub fn identity(p: &mut Presentation) -> Self {
        let mut m = Self::new();
        for g in p.gen_indices() {
            let id = p.generator(g).id;
            let app = p.generic_app(g);
            m.assign(id, app);
        }
        m
    }

    /// The inclusion of `dom` into a presentation that carries every one of
    /// its generators under the same id.
    pub fn inclusion(dom: &Presentation, cod: &mut Presentation) -> Result<Self, EngineError> {
        let mut m = Self::new();
        for g in dom.gen_indices() {
            let id = dom.generator(g).id;
            let idx = cod
                .gen_by_id(id)
                .ok_or_else(|| EngineError::MissingGenerator {
                    hash: id.to_string(),
                })?;
            let app = cod.generic_app(idx);
            m.assign(id, app);
        }
        Ok(m)
    }

    /// Transports a term of `dom` into `cod`: cells go to themselves,
    /// generator heads to their assigned images with substituted arguments.
    pub fn apply(
        &self,
        dom: &Presentation,
        cod: &mut Presentation,
        t: TermId,
    ) -> Result<TermId, EngineError> {
        let mut memo = HashMap::new();
        self.apply_inner(dom, cod, t, &mut memo)
    }

    fn apply_inner(
        &self,
        dom: &Presentation,
        cod: &mut Presentation,
        t: TermId,
        memo: &mut HashMap<TermId, TermId>,
    ) -> Result<TermId, EngineError> {
        if let Some(&r) = memo.get(&t) {
            return Ok(r);
        }
        let node = dom.term(t).clone();
        let table = dom.table(node.arity).clone();
        let target = cod.intern_table(&table);
        let result = match node.head {
            Head::Cell(c) => cod.mk_cell(target, c)?,
            Head::Gen(g) => {
                let id = dom.generator(g).id;
                let image = self.image(id).ok_or_else(|| EngineError::MissingImage {
                    hash: id.to_string(),
                })?;
                let mut sigma = Vec::with_capacity(node.args.len());
                for &a in &node.args {
                    sigma.push(self.apply_inner(dom, cod, a, memo)?);
                }
                cod.substitute(image, &sigma, target)?
            }
        };
        memo.insert(t, result);
        Ok(result)
    }

    /// Boundary preservation on every domain generator: the image has the
    /// generator's arity and dimension, and its boundary agrees with the
    /// transported boundary up to codomain equality.
    pub fn check(&self, dom: &Presentation, cod: &mut Presentation) -> Result<(), EngineError> {
        for g in dom.gen_indices() {
            let gen = dom.generator(g).clone();
            let hash = gen.id.to_string();
            let image = self
                .image(gen.id)
                .ok_or_else(|| EngineError::MissingImage { hash: hash.clone() })?;
            let node = cod.term(image).clone();
            if node.dim != gen.target_dim {
                return Err(EngineError::ImageMismatch {
                    hash,
                    what: "dimension",
                    expected: gen.target_dim.to_string(),
                    found: node.dim.to_string(),
                });
            }
            let dom_table = dom.table(gen.arity);
            if cod.table(node.arity) != dom_table {
                return Err(EngineError::ImageMismatch {
                    hash,
                    what: "arity",
                    expected: dom_table.to_string(),
                    found: cod.table(node.arity).to_string(),
                });
            }
            if let (Some(s), Some(t)) = (gen.src, gen.tgt) {
                let s_image = self.apply(dom, cod, s)?;
                let t_image = self.apply(dom, cod, t)?;
                let image_src = cod.term_src(image).expect("positive-dimensional image");
                let image_tgt = cod.term_tgt(image).expect("positive-dimensional image");
                if !cod.equal(s_image, image_src) {
                    return Err(EngineError::ImageMismatch {
                        hash,
                        what: "source",
                        expected: cod.term_text(s_image),
                        found: cod.term_text(image_src),
                    });
                }
                if !cod.equal(t_image, image_tgt) {
                    return Err(EngineError::ImageMismatch {
                        hash,
                        what: "target",
                        expected: cod.term_text(t_image),
                        found: cod.term_text(image_tgt),
                    });
                }
            }
        }
        Ok(())
    }

    /// `self` after `first`: the composite sending a generator of `first`'s
    /// domain through `mid` and on into `cod`.
    pub fn compose_after(
        &self,
        first: &Self,
        mid: &Presentation,
        cod: &mut Presentation,
    ) -> Result<Self, EngineError> {
        let mut m = Self::new();
        for (g, t) in first.gen_images() {
            m.assign(g, self.apply(mid, cod, t)?);
        }
        Ok(m)
    }
}
