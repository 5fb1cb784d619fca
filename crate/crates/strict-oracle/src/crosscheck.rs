//! Comparison of saturated engine class counts with the closed form.
//!
//! The engine and the recursion count the same thing from opposite ends: the
//! engine enumerates terms over a context up to a weight bound and lets
//! congruence saturation merge them, the recursion counts the cells the free
//! strict theory actually has.  They can only be compared where both numbers
//! are final, so the check insists the requested dimension lies below the
//! tower's stable cut and probes one weight deeper before trusting the
//! census; a census still moving at the probe is reported open instead of
//! being scored.

use std::collections::BTreeSet;

use distributive_verify::{GenVerdict, LawCheckReport};
use globular_core::TableOfDimensions;
use soa_engine::{stable_dim, Tower, TowerMode};
use theory_kernel::{Presentation, TheoryMode};

use crate::error::OracleError;
use crate::homs::strict_hom_count;

/// Counts congruence classes of terms over `table` at `dim` in the last
/// stage of a strict tower and compares the count against
/// [`strict_hom_count`], provided the census converges at `depth`.
pub fn crosscheck_strict(
    tower: &Tower,
    table: &TableOfDimensions,
    dim: u8,
    depth: u16,
) -> Result<LawCheckReport, OracleError> {
    if tower.mode != TowerMode::Strict {
        return Err(OracleError::Mode {
            mode: tower.mode.to_string(),
        });
    }
    let oracle = strict_hom_count(table, dim)?;
    let stable = stable_dim(tower, tower.built_stages());
    if dim >= stable {
        return Err(OracleError::Unstable {
            dim,
            stages: tower.built_stages(),
            stable,
        });
    }

    let mut t = tower.last().clone();
    let qa = t.intern_table(table);
    t.enumerate_terms(qa, dim, depth + 1);
    t.saturate(dim);
    let classes = |t: &mut Presentation, weight: u16| {
        let reps: BTreeSet<_> = t
            .enumerate_terms(qa, dim, weight)
            .into_iter()
            .map(|x| t.find(x))
            .collect();
        reps.len()
    };
    let at_depth = classes(&mut t, depth);
    let at_probe = classes(&mut t, depth + 1);
    let converged = at_depth == at_probe;

    let builds = vec![
        format!(
            "tower mode={} stages={} stable-dim={}",
            tower.mode,
            tower.built_stages(),
            stable
        ),
        format!("census table={table} dim={dim} depth={depth} classes={at_depth}"),
        format!(
            "probe depth={} classes={} status={}",
            depth + 1,
            at_probe,
            if converged { "converged" } else { "open" }
        ),
    ];
    let verdicts = if converged {
        vec![GenVerdict {
            part: "class-count".into(),
            subject: format!("{table} at dimension {dim}"),
            left: at_depth.to_string(),
            right: oracle.to_string(),
            pass: at_depth as u64 == oracle,
        }]
    } else {
        Vec::new()
    };

    Ok(LawCheckReport {
        law: "strict-crosscheck".into(),
        indices: vec![dim],
        mode: TheoryMode::Strict,
        bounds: tower.bounds,
        builds,
        verdicts,
    })
}
