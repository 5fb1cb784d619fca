//! Text form of presentations and towers.
//!
//! A presentation file is line-oriented: a `theory` header, the seed
//! generators, then each layer introduced by a `layer` line followed by the
//! generators it added, and finally the strict congruence as `eq` lines.
//! Generator hashes are recomputed while parsing and checked against the
//! file, so a tampered or truncated file fails loudly rather than loading
//! skewed.
//!
//! The congruence is derived data: the parser replays saturation layer by
//! layer and then verifies every `eq` line instead of trusting it.  Emission
//! is canonical (classes keyed by their lexicographically least member), so
//! structurally equal presentations serialize to identical bytes and
//! parse-then-serialize is the identity on files.
//!
//! A tower directory holds `tower.manifest` plus one `stage-<n>.theory` file
//! per stage; the manifest records mode, bounds, and the per-layer pass
//! reports with their fixpoint-versus-bound status.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use globular_core::TableOfDimensions;
use theory_kernel::{
    parse_term, Flavor, KernelError, LayerStatus, Presentation, TermId, TheoryMode,
};

use crate::bounds::FragmentBounds;
use crate::error::EngineError;
use crate::extend::ReplaceReport;
use crate::morphism::TheoryMorphism;
use crate::tower::{StageReport, Tower, TowerMode};

pub fn serialize_presentation(p: &Presentation) -> String {
    let mut out = String::new();
    out.push_str(&format!("theory mode={} stage={}\n", p.mode(), p.stage()));
    let seed = p.seed_gen_count();
    for idx in p.gen_indices().take(seed) {
        push_gen_line(p, idx, &mut out);
    }
    for layer in p.layers() {
        out.push_str(&format!(
            "layer dim={} flavor={} status={}\n",
            layer.dim,
            layer.flavor,
            status_text(layer.status)
        ));
        for idx in p.layer_gens(layer) {
            push_gen_line(p, idx, &mut out);
        }
    }
    for line in eq_lines(p) {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn push_gen_line(p: &Presentation, idx: theory_kernel::GenIdx, out: &mut String) {
    let gen = p.generator(idx);
    let src = gen.src.map_or_else(|| "-".into(), |t| p.term_text(t));
    let tgt = gen.tgt.map_or_else(|| "-".into(), |t| p.term_text(t));
    out.push_str(&format!(
        "gen {} stage={} arity={} src={} tgt={} flavor={}\n",
        gen.id,
        gen.stage,
        p.table(gen.arity),
        src,
        tgt,
        gen.flavor
    ));
}

/// One line per non-representative member of each congruence class, the
/// representative being the lexicographically least member text.
fn eq_lines(p: &Presentation) -> Vec<String> {
    let mut classes: BTreeMap<TermId, Vec<TermId>> = BTreeMap::new();
    for i in 0..p.term_count() {
        let t = TermId(i as u32);
        classes.entry(p.find(t)).or_default().push(t);
    }
    let mut lines = Vec::new();
    for members in classes.into_values() {
        if members.len() < 2 {
            continue;
        }
        let arity = p.table(p.term(members[0]).arity).to_string();
        let mut texts: Vec<String> = members.iter().map(|&t| p.term_text(t)).collect();
        texts.sort();
        let rep = texts[0].clone();
        for text in texts.into_iter().skip(1) {
            lines.push(format!("eq arity={arity} {text} = {rep}"));
        }
    }
    lines.sort();
    lines
}

pub fn parse_presentation(text: &str) -> Result<Presentation, EngineError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| file_err(1, "empty file"))?;
    let rest = header
        .strip_prefix("theory ")
        .ok_or_else(|| file_err(1, "expected `theory` header"))?;
    let mode_text = field(rest, "mode", 1)?;
    let mode = match mode_text {
        "weak" => TheoryMode::Weak,
        "strict" => TheoryMode::Strict,
        other => return Err(file_err(1, format!("unknown mode `{other}`"))),
    };
    let stage: u32 = parse_num(field(rest, "stage", 1)?, 1)?;
    let mut p = Presentation::new(mode);
    p.set_stage(stage);

    let mut open_status: Option<LayerStatus> = None;
    let mut max_dim_seen: u8 = 0;
    let mut equations: Vec<(usize, TermId, TermId)> = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("layer ") {
            close_pending(&mut p, &mut open_status, max_dim_seen, lineno)?;
            let dim: u8 = parse_num(field(rest, "dim", lineno)?, lineno)?;
            let flavor: Flavor = field(rest, "flavor", lineno)?
                .parse()
                .map_err(|e: KernelError| file_err(lineno, e.to_string()))?;
            let status = parse_status(field(rest, "status", lineno)?, lineno)?;
            p.open_layer(dim, flavor)
                .map_err(|e| file_err(lineno, e.to_string()))?;
            open_status = Some(status);
        } else if let Some(rest) = line.strip_prefix("gen ") {
            parse_gen_line(&mut p, rest, lineno, &mut max_dim_seen)?;
        } else if let Some(rest) = line.strip_prefix("eq ") {
            let (lhs, rhs) = parse_eq_line(&mut p, rest, lineno)?;
            equations.push((lineno, lhs, rhs));
        } else {
            return Err(file_err(lineno, "expected `layer`, `gen`, or `eq` line"));
        }
    }
    let last = text.lines().count();
    close_pending(&mut p, &mut open_status, max_dim_seen, last)?;
    if !equations.is_empty() {
        p.saturate(max_dim_seen);
        for (lineno, lhs, rhs) in equations {
            if !p.equal(lhs, rhs) {
                return Err(file_err(
                    lineno,
                    "stated equation is not derivable from the generators",
                ));
            }
        }
    }
    Ok(p)
}

/// Closes the layer opened by the previous `layer` line, replaying
/// saturation for unique flavors so later generators validate against the
/// congruence they were created under.
fn close_pending(
    p: &mut Presentation,
    open_status: &mut Option<LayerStatus>,
    max_dim_seen: u8,
    lineno: usize,
) -> Result<(), EngineError> {
    if let Some(status) = open_status.take() {
        if status == LayerStatus::Open {
            return Err(file_err(lineno, "only the final layer may remain open"));
        }
        let unique = p
            .layers()
            .last()
            .is_some_and(|l| l.flavor == Flavor::Unique);
        p.close_layer(status)
            .map_err(|e| file_err(lineno, e.to_string()))?;
        if unique {
            p.saturate(max_dim_seen);
        }
    }
    Ok(())
}

fn parse_gen_line(
    p: &mut Presentation,
    rest: &str,
    lineno: usize,
    max_dim_seen: &mut u8,
) -> Result<(), EngineError> {
    let hash = rest.split(' ').next().unwrap_or_default().to_string();
    let stage: u32 = parse_num(field(rest, "stage", lineno)?, lineno)?;
    let table: TableOfDimensions = field(rest, "arity", lineno)?
        .parse()
        .map_err(|e: globular_core::GlobularError| file_err(lineno, e.to_string()))?;
    let src_text = span(rest, " src=", " tgt=", lineno)?;
    let tgt_text = span(rest, " tgt=", " flavor=", lineno)?;
    let flavor: Flavor = field(rest, "flavor", lineno)?
        .parse()
        .map_err(|e: KernelError| file_err(lineno, e.to_string()))?;
    let qa = p.intern_table(&table);
    let src = boundary_term(p, qa, src_text, lineno)?;
    let tgt = boundary_term(p, qa, tgt_text, lineno)?;
    let added = match p.add_generator(stage, qa, src, tgt, flavor) {
        Ok(idx) => idx,
        Err(KernelError::BadBoundary { .. }) if p.mode() == TheoryMode::Strict => {
            p.saturate((*max_dim_seen).max(table.height()));
            p.add_generator(stage, qa, src, tgt, flavor)
                .map_err(|e| file_err(lineno, e.to_string()))?
        }
        Err(e) => return Err(file_err(lineno, e.to_string())),
    };
    let computed = p.generator(added).id.to_string();
    if computed != hash {
        return Err(file_err(
            lineno,
            format!("generator hash {hash} does not match recomputed {computed}"),
        ));
    }
    *max_dim_seen = (*max_dim_seen).max(p.generator(added).target_dim);
    Ok(())
}

fn boundary_term(
    p: &mut Presentation,
    qa: theory_kernel::ArityId,
    text: &str,
    lineno: usize,
) -> Result<Option<TermId>, EngineError> {
    if text == "-" {
        return Ok(None);
    }
    parse_term(p, qa, text)
        .map(Some)
        .map_err(|e| file_err(lineno, e.to_string()))
}

fn parse_eq_line(
    p: &mut Presentation,
    rest: &str,
    lineno: usize,
) -> Result<(TermId, TermId), EngineError> {
    let table: TableOfDimensions = field(rest, "arity", lineno)?
        .parse()
        .map_err(|e: globular_core::GlobularError| file_err(lineno, e.to_string()))?;
    let qa = p.intern_table(&table);
    let after = rest
        .find(' ')
        .map(|i| &rest[i + 1..])
        .ok_or_else(|| file_err(lineno, "expected terms after arity"))?;
    let (lhs_text, rhs_text) = after
        .split_once(" = ")
        .ok_or_else(|| file_err(lineno, "expected `<term> = <term>`"))?;
    let lhs = parse_term(p, qa, lhs_text).map_err(|e| file_err(lineno, e.to_string()))?;
    let rhs = parse_term(p, qa, rhs_text).map_err(|e| file_err(lineno, e.to_string()))?;
    Ok((lhs, rhs))
}

pub fn serialize_manifest(t: &Tower) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "tower mode={} stages={}\n",
        t.mode,
        t.built_stages()
    ));
    out.push_str(&format!("bounds {}\n", t.bounds));
    for report in t.reports() {
        for layer in &report.layers {
            out.push_str(&format!(
                "report stage={} dim={} rounds={} added={} status={}\n",
                report.stage,
                layer.dim,
                layer.rounds,
                layer.added,
                status_text(layer.status)
            ));
        }
    }
    out
}

pub fn write_tower(t: &Tower, dir: &Path) -> Result<(), EngineError> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("tower.manifest"), serialize_manifest(t))?;
    for (n, stage) in t.stages().iter().enumerate() {
        fs::write(
            dir.join(format!("stage-{n}.theory")),
            serialize_presentation(stage),
        )?;
    }
    Ok(())
}

pub fn read_tower(dir: &Path) -> Result<Tower, EngineError> {
    let manifest = fs::read_to_string(dir.join("tower.manifest"))?;
    let mut lines = manifest.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| file_err(1, "empty tower manifest"))?;
    let rest = header
        .strip_prefix("tower ")
        .ok_or_else(|| file_err(1, "expected `tower` header"))?;
    let mode: TowerMode = field(rest, "mode", 1)?
        .parse()
        .map_err(|e: String| file_err(1, e))?;
    let n_stages: usize = parse_num(field(rest, "stages", 1)?, 1)?;
    let (_, bounds_line) = lines
        .next()
        .ok_or_else(|| file_err(2, "expected `bounds` line"))?;
    let brest = bounds_line
        .strip_prefix("bounds ")
        .ok_or_else(|| file_err(2, "expected `bounds` line"))?;
    let bounds = FragmentBounds {
        max_arity_len: parse_num(field(brest, "max_arity_len", 2)?, 2)?,
        max_dim: parse_num(field(brest, "max_dim", 2)?, 2)?,
        max_depth: parse_num(field(brest, "max_depth", 2)?, 2)?,
        max_iter: parse_num(field(brest, "max_iter", 2)?, 2)?,
    };
    let mut reports: Vec<StageReport> = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        if line.is_empty() {
            continue;
        }
        let rrest = line
            .strip_prefix("report ")
            .ok_or_else(|| file_err(lineno, "expected `report` line"))?;
        let stage: u32 = parse_num(field(rrest, "stage", lineno)?, lineno)?;
        let layer = ReplaceReport {
            dim: parse_num(field(rrest, "dim", lineno)?, lineno)?,
            rounds: parse_num(field(rrest, "rounds", lineno)?, lineno)?,
            added: parse_num(field(rrest, "added", lineno)?, lineno)?,
            status: parse_status(field(rrest, "status", lineno)?, lineno)?,
        };
        match reports.last_mut() {
            Some(r) if r.stage == stage => r.layers.push(layer),
            _ => reports.push(StageReport {
                stage,
                layers: vec![layer],
            }),
        }
    }
    let mut stages = Vec::with_capacity(n_stages + 1);
    for n in 0..=n_stages {
        let path = dir.join(format!("stage-{n}.theory"));
        let text = fs::read_to_string(&path)?;
        stages.push(parse_presentation(&text)?);
    }
    let mut inclusions = Vec::with_capacity(n_stages);
    for n in 0..n_stages {
        let (before, after) = stages.split_at_mut(n + 1);
        inclusions.push(TheoryMorphism::inclusion(&before[n], &mut after[0])?);
    }
    Ok(Tower::from_parts(mode, bounds, stages, inclusions, reports))
}

fn status_text(status: LayerStatus) -> &'static str {
    match status {
        LayerStatus::Open => "open",
        LayerStatus::Fixpoint => "fixpoint",
        LayerStatus::IterationBound => "bound",
    }
}

fn parse_status(text: &str, lineno: usize) -> Result<LayerStatus, EngineError> {
    match text {
        "open" => Ok(LayerStatus::Open),
        "fixpoint" => Ok(LayerStatus::Fixpoint),
        "bound" => Ok(LayerStatus::IterationBound),
        other => Err(file_err(lineno, format!("unknown status `{other}`"))),
    }
}

/// Space-delimited `key=value` lookup for fields whose values contain no
/// spaces.
fn field<'a>(line: &'a str, key: &str, lineno: usize) -> Result<&'a str, EngineError> {
    line.split(' ')
        .find_map(|tok| tok.strip_prefix(key)?.strip_prefix('='))
        .ok_or_else(|| file_err(lineno, format!("missing field `{key}=`")))
}

/// The text strictly between two markers, for fields whose values may
/// contain spaces (term texts).  Neither marker's text can occur inside a
/// term, since terms never contain `=`.
fn span<'a>(line: &'a str, from: &str, to: &str, lineno: usize) -> Result<&'a str, EngineError> {
    let start = line
        .find(from)
        .ok_or_else(|| file_err(lineno, format!("missing field `{}`", from.trim_start())))?
        + from.len();
    let end = line[start..]
        .find(to)
        .ok_or_else(|| file_err(lineno, format!("missing field `{}`", to.trim_start())))?;
    Ok(&line[start..start + end])
}

fn parse_num<T: std::str::FromStr>(text: &str, lineno: usize) -> Result<T, EngineError> {
    text.parse()
        .map_err(|_| file_err(lineno, format!("malformed number `{text}`")))
}

fn file_err(line: usize, reason: impl Into<String>) -> EngineError {
    EngineError::File {
        line,
        reason: reason.into(),
    }
}
