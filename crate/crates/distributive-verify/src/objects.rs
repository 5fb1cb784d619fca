use indexmap::IndexMap;
use soa_engine::{fibrant_replace, EngineError, FragmentBounds, ReplaceReport};
use theory_kernel::{Flavor, LayerStatus, Presentation, TheoryMode};

/// Cache of iterated one-dimension replacements of a base theory, keyed by
/// the dimension sequence in application order.  Law checks revisit the same
/// layered theories from several composites, and the larger ones are not
/// cheap to rebuild, so each distinct prefix is built once.
pub struct TheoryStack {
    base: Presentation,
    bounds: FragmentBounds,
    flavor: Flavor,
    built: IndexMap<Vec<u8>, (Presentation, ReplaceReport)>,
}

impl TheoryStack {
    /// A stack over the empty theory in the given mode.  Weak theories take
    /// free fillers, strict ones unique fillers.
    pub fn new(mode: TheoryMode, bounds: FragmentBounds) -> Self {
        Self::over(Presentation::new(mode), bounds)
    }

    pub fn over(base: Presentation, bounds: FragmentBounds) -> Self {
        let flavor = match base.mode() {
            TheoryMode::Weak => Flavor::Free,
            TheoryMode::Strict => Flavor::Unique,
        };
        Self {
            base,
            bounds,
            flavor,
            built: IndexMap::new(),
        }
    }

    pub fn bounds(&self) -> FragmentBounds {
        self.bounds
    }

    pub fn mode(&self) -> TheoryMode {
        self.base.mode()
    }

    /// The theory with one replacement layer per entry of `dims`, applied
    /// left to right; `&[]` is the base itself.
    pub fn layered(&mut self, dims: &[u8]) -> Result<&Presentation, EngineError> {
        self.ensure(dims)?;
        Ok(if dims.is_empty() {
            &self.base
        } else {
            &self.built[dims].0
        })
    }

    /// An owned copy, for use as a morphism codomain.
    pub fn cloned(&mut self, dims: &[u8]) -> Result<Presentation, EngineError> {
        Ok(self.layered(dims)?.clone())
    }

    /// One status line per layer of `dims`, in build order.
    pub fn build_lines(&mut self, dims: &[u8]) -> Result<Vec<String>, EngineError> {
        self.ensure(dims)?;
        let mut out = Vec::new();
        for n in 1..=dims.len() {
            let (theory, report) = &self.built[&dims[..n]];
            out.push(format!(
                "build dims={} layer=R{} rounds={} added={} gens={} status={}",
                render_dims(&dims[..n]),
                dims[n - 1],
                report.rounds,
                report.added,
                theory.gen_count(),
                status_text(report.status),
            ));
        }
        Ok(out)
    }

    fn ensure(&mut self, dims: &[u8]) -> Result<(), EngineError> {
        for n in 1..=dims.len() {
            if self.built.contains_key(&dims[..n]) {
                continue;
            }
            let prev = if n == 1 {
                self.base.clone()
            } else {
                self.built[&dims[..n - 1]].0.clone()
            };
            let (mut next, _, report) = fibrant_replace(&prev, dims[n - 1], &self.bounds, self.flavor)?;
            next.set_stage(n as u32);
            self.built.insert(dims[..n].to_vec(), (next, report));
        }
        Ok(())
    }
}

pub(crate) fn render_dims(dims: &[u8]) -> String {
    dims.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn status_text(status: LayerStatus) -> &'static str {
    match status {
        LayerStatus::Open => "open",
        LayerStatus::Fixpoint => "fixpoint",
        LayerStatus::IterationBound => "bound",
    }
}
