//! Stage towers: the truncated coherator constructions.
//!
//! All three towers start from the bare site and adjoin lifts stage by
//! stage; they differ in which lifting problems a stage solves and whether
//! solutions are kept free or identified.
//!
//! * `fc` runs one free step at every dimension below the bound, each stage,
//!   re-filling every pair each time; nothing ever stabilizes.
//! * `ic` spends stage `n` saturating dimension `n-1` only, so the theory
//!   below dimension `n` is finished once stage `n` closes.
//! * `strict` is `ic` with unique-flavored lifts: every filler of a pair is
//!   identified, collapsing parallel terms to one representative.
//!
//! Stage snapshots are kept whole, with the connecting inclusions, so tests
//! and reports can compare any two stages directly.

use std::fmt;
use std::str::FromStr;

use theory_kernel::{Flavor, GenId, Presentation, TermId, TheoryMode};

use crate::bounds::FragmentBounds;
use crate::error::EngineError;
use crate::extend::{replace_in_place, ReplaceReport};
use crate::morphism::TheoryMorphism;
use crate::pairs::AdmissiblePair;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TowerMode {
    Fc,
    Ic,
    Strict,
}

impl TowerMode {
    pub fn theory_mode(self) -> TheoryMode {
        match self {
            TowerMode::Strict => TheoryMode::Strict,
            _ => TheoryMode::Weak,
        }
    }

    pub fn flavor(self) -> Flavor {
        match self {
            TowerMode::Strict => Flavor::Unique,
            _ => Flavor::Free,
        }
    }
}

impl fmt::Display for TowerMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TowerMode::Fc => "fc",
            TowerMode::Ic => "ic",
            TowerMode::Strict => "strict",
        })
    }
}

impl FromStr for TowerMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fc" => Ok(TowerMode::Fc),
            "ic" => Ok(TowerMode::Ic),
            "strict" => Ok(TowerMode::Strict),
            other => Err(format!("unknown tower mode `{other}`, expected fc|ic|strict")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StageReport {
    pub stage: u32,
    pub layers: Vec<ReplaceReport>,
}

pub struct Tower {
    pub mode: TowerMode,
    pub bounds: FragmentBounds,
    stages: Vec<Presentation>,
    inclusions: Vec<TheoryMorphism>,
    reports: Vec<StageReport>,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tower")
            .field("mode", &self.mode)
            .field("stages", &self.built_stages())
            .field("bounds", &self.bounds)
            .finish_non_exhaustive()
    }
}

impl Tower {
    pub(crate) fn from_parts(
        mode: TowerMode,
        bounds: FragmentBounds,
        stages: Vec<Presentation>,
        inclusions: Vec<TheoryMorphism>,
        reports: Vec<StageReport>,
    ) -> Self {
        Self {
            mode,
            bounds,
            stages,
            inclusions,
            reports,
        }
    }

    /// Number of built stages, not counting the base site at index 0.
    pub fn built_stages(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn stages(&self) -> &[Presentation] {
        &self.stages
    }

    pub fn stage(&self, n: usize) -> &Presentation {
        &self.stages[n]
    }

    pub fn stage_mut(&mut self, n: usize) -> &mut Presentation {
        &mut self.stages[n]
    }

    pub fn last(&self) -> &Presentation {
        self.stages.last().expect("towers always hold stage 0")
    }

    pub fn last_mut(&mut self) -> &mut Presentation {
        self.stages.last_mut().expect("towers always hold stage 0")
    }

    /// Inclusion of stage `n` into stage `n+1`.
    pub fn inclusion(&self, n: usize) -> &TheoryMorphism {
        &self.inclusions[n]
    }

    pub fn inclusions(&self) -> &[TheoryMorphism] {
        &self.inclusions
    }

    pub fn reports(&self) -> &[StageReport] {
        &self.reports
    }
}

pub fn build_tower(
    mode: TowerMode,
    n_stages: u32,
    b: &FragmentBounds,
) -> Result<Tower, EngineError> {
    if n_stages > b.max_dim as u32 {
        return Err(EngineError::StageCount {
            requested: n_stages,
            max_dim: b.max_dim,
        });
    }
    let mut work = Presentation::new(mode.theory_mode());
    let mut stages = vec![work.clone()];
    let mut inclusions = Vec::new();
    let mut reports = Vec::new();
    for n in 1..=n_stages {
        work.set_stage(n);
        let mut layers = Vec::new();
        match mode {
            TowerMode::Fc => {
                let single = FragmentBounds { max_iter: 1, ..*b };
                for k in 0..b.max_dim {
                    layers.push(replace_in_place(&mut work, k, &single, Flavor::Free, n)?);
                }
            }
            TowerMode::Ic | TowerMode::Strict => {
                layers.push(replace_in_place(
                    &mut work,
                    (n - 1) as u8,
                    b,
                    mode.flavor(),
                    n,
                )?);
            }
        }
        let inc = TheoryMorphism::inclusion(&stages[(n - 1) as usize], &mut work)?;
        stages.push(work.clone());
        inclusions.push(inc);
        reports.push(StageReport { stage: n, layers });
    }
    Ok(Tower::from_parts(mode, *b, stages, inclusions, reports))
}

/// The canonical filler of `pair` in `t`: the generic application of the
/// first generator carrying the pair's boundary, as a congruence
/// representative when the theory is strict.
pub fn lookup_lift(t: &mut Presentation, pair: &AdmissiblePair) -> Result<TermId, EngineError> {
    let qa = t.intern_table(&pair.arity);
    let mut hit = None;
    for g in t.gen_indices() {
        let gen = t.generator(g);
        if gen.arity != qa || gen.target_dim != pair.dim + 1 {
            continue;
        }
        let (Some(s), Some(tg)) = (gen.src, gen.tgt) else {
            continue;
        };
        if t.equal(s, pair.f) && t.equal(tg, pair.g) {
            hit = Some(g);
            break;
        }
    }
    match hit {
        Some(g) => {
            let app = t.generic_app(g);
            Ok(t.find(app))
        }
        None => Err(EngineError::MissingLift {
            arity: pair.arity.clone(),
            src: t.term_text(pair.f),
            tgt: t.term_text(pair.g),
        }),
    }
}

/// The dimension below which hom-sets are final from `stage` onward.
///
/// When later stages exist this is observed directly: the largest `d` such
/// that every later stage carries exactly the generators of target dimension
/// below `d` that `stage` does.  For the last stage it falls back on the
/// construction: an `ic`/`strict` stage `n` finishes dimension `n`, while an
/// `fc` stage reopens every dimension.
pub fn stable_dim(tower: &Tower, stage: usize) -> u8 {
    assert!(stage < tower.stages().len(), "stage out of range");
    let last = tower.stages().len() - 1;
    let by_construction = match tower.mode {
        TowerMode::Fc => 1,
        _ => stage as u8 + 1,
    };
    if stage == last {
        return by_construction;
    }
    let gens_below = |p: &Presentation, d: u8| -> Vec<GenId> {
        let mut ids: Vec<GenId> = p
            .gen_indices()
            .map(|g| p.generator(g))
            .filter(|gen| gen.target_dim < d)
            .map(|gen| gen.id)
            .collect();
        ids.sort();
        ids
    };
    let mut best = 1;
    for d in 1..=tower.bounds.max_dim + 1 {
        let base = gens_below(tower.stage(stage), d);
        let stable = (stage + 1..=last).all(|s| gens_below(tower.stage(s), d) == base);
        if stable {
            best = d;
        } else {
            break;
        }
    }
    best
}
