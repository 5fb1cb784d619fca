use std::fmt;
use std::str::FromStr;

use soa_engine::{
    build_tower, fibrant_replace, EngineError, FragmentBounds, ReplaceReport, TheoryMorphism,
    TowerMode,
};
use theory_kernel::{Presentation, TheoryMode};

use crate::error::VerifyError;
use crate::morphisms::{
    build_lambda, build_mu, build_mu_hat, compose, resolve_lifts, step_image, ComparisonMap,
};
use crate::objects::{render_dims, status_text, TheoryStack};

/// The lemma families the checker knows how to evaluate on a fragment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    UnitTriangle,
    Naturality,
    Pentagons,
    YangBaxter,
    Monad,
    Completability,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::UnitTriangle => "unit-triangle",
            Law::Naturality => "naturality",
            Law::Pentagons => "pentagons",
            Law::YangBaxter => "yang-baxter",
            Law::Monad => "monad",
            Law::Completability => "completability",
        })
    }
}

impl FromStr for Law {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unit-triangle" => Ok(Law::UnitTriangle),
            "naturality" => Ok(Law::Naturality),
            "pentagons" => Ok(Law::Pentagons),
            "yang-baxter" => Ok(Law::YangBaxter),
            "monad" => Ok(Law::Monad),
            "completability" => Ok(Law::Completability),
            other => Err(format!(
                "unknown law {other:?}; expected unit-triangle, naturality, pentagons, \
                 yang-baxter, monad or completability"
            )),
        }
    }
}

/// One generator-level comparison inside a law check.
#[derive(Clone, Debug)]
pub struct GenVerdict {
    pub part: String,
    pub subject: String,
    pub left: String,
    pub right: String,
    pub pass: bool,
}

/// Outcome of one law check: how the participating theories were built and
/// what every generator comparison produced.  `Display` is canonical, so two
/// runs over the same fragment print identical reports.
#[derive(Clone, Debug)]
pub struct LawCheckReport {
    pub law: String,
    pub indices: Vec<u8>,
    pub mode: TheoryMode,
    pub bounds: FragmentBounds,
    pub builds: Vec<String>,
    pub verdicts: Vec<GenVerdict>,
}

impl LawCheckReport {
    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn failures(&self) -> usize {
        self.verdicts.iter().filter(|v| !v.pass).count()
    }
}

impl fmt::Display for LawCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "law={} indices={} mode={} {}",
            self.law,
            render_dims(&self.indices),
            self.mode,
            self.bounds
        )?;
        for line in &self.builds {
            writeln!(f, "{line}")?;
        }
        let mut parts: Vec<&str> = Vec::new();
        for v in &self.verdicts {
            if !parts.contains(&v.part.as_str()) {
                parts.push(&v.part);
            }
        }
        for part in parts {
            let checked = self.verdicts.iter().filter(|v| v.part == part).count();
            let failed = self
                .verdicts
                .iter()
                .filter(|v| v.part == part && !v.pass)
                .count();
            writeln!(f, "part={part} checked={checked} failed={failed}")?;
        }
        for v in self.verdicts.iter().filter(|v| !v.pass) {
            writeln!(
                f,
                "FAIL part={} subject={}: {} != {}",
                v.part, v.subject, v.left, v.right
            )?;
        }
        write!(
            f,
            "status={} verdicts={} failures={}",
            if self.pass() { "PASS" } else { "FAIL" },
            self.verdicts.len(),
            self.failures()
        )
    }
}

/// Evaluates one law family at the given indices over the stack's fragment.
/// Every morphism entering a comparison is boundary-checked first; the
/// report carries one verdict per generator of the equation's source.
pub fn verify_law(
    law: Law,
    indices: &[u8],
    stack: &mut TheoryStack,
) -> Result<LawCheckReport, VerifyError> {
    match law {
        Law::UnitTriangle => {
            let (i, j) = ordered_pair(law, indices)?;
            unit_triangle(stack, i, j)
        }
        Law::Naturality => {
            let (i, j) = ordered_pair(law, indices)?;
            naturality(stack, i, j)
        }
        Law::Pentagons => {
            let (i, j) = ordered_pair(law, indices)?;
            pentagons(stack, i, j)
        }
        Law::YangBaxter => {
            let (i, j, k) = ordered_triple(law, indices)?;
            yang_baxter(stack, i, j, k)
        }
        Law::Monad => {
            let k = single(law, indices, "k")?;
            monad(stack, k)
        }
        Law::Completability => {
            let n = single(law, indices, "n with n >= 1")?;
            if n == 0 {
                return Err(bad_indices(law, indices, "n with n >= 1"));
            }
            completability(stack, n)
        }
    }
}

fn unit_triangle(stack: &mut TheoryStack, i: u8, j: u8) -> Result<LawCheckReport, VerifyError> {
    let b = stack.bounds();
    let builds = collect_builds(stack, &[&[j, i], &[i, j]])?;

    let r_j = stack.cloned(&[j])?;
    let r_i = stack.cloned(&[i])?;
    let mut big = stack.cloned(&[j, i])?;
    let mut cod = stack.cloned(&[i, j])?;

    let lambda = resolve_lifts(&big, &mut cod, &b)?;
    lambda.check(&big, &mut cod)?;

    let unit_left = TheoryMorphism::inclusion(&r_j, &mut big)?;
    unit_left.check(&r_j, &mut big)?;
    let left_around = compose(&unit_left, &lambda, &r_j, &big, &mut cod)?;
    let left_direct = step_image(None, &r_j, &mut cod, &b)?;
    left_direct.check(&r_j, &mut cod)?;

    let unit_image = step_image(None, &r_i, &mut big, &b)?;
    unit_image.check(&r_i, &mut big)?;
    let right_around = compose(&unit_image, &lambda, &r_i, &big, &mut cod)?;
    let right_direct = TheoryMorphism::inclusion(&r_i, &mut cod)?;
    right_direct.check(&r_i, &mut cod)?;

    let mut verdicts = Vec::new();
    compare("triangle-left", &left_around, &left_direct, &r_j, &mut cod, &b, &mut verdicts)?;
    compare("triangle-right", &right_around, &right_direct, &r_i, &mut cod, &b, &mut verdicts)?;
    Ok(report(Law::UnitTriangle, &[i, j], stack, builds, verdicts))
}

fn naturality(stack: &mut TheoryStack, i: u8, j: u8) -> Result<LawCheckReport, VerifyError> {
    let b = stack.bounds();
    let builds = collect_builds(stack, &[&[j, i], &[0, j, i], &[i, j], &[0, i, j]])?;

    let dom = stack.cloned(&[j, i])?;
    let mut upper = stack.cloned(&[0, j, i])?;
    let mut lower = stack.cloned(&[i, j])?;
    let mut cod = stack.cloned(&[0, i, j])?;

    let probe_upper = resolve_lifts(&dom, &mut upper, &b)?;
    probe_upper.check(&dom, &mut upper)?;
    let lambda_probed = resolve_lifts(&upper, &mut cod, &b)?;
    lambda_probed.check(&upper, &mut cod)?;
    let lambda = resolve_lifts(&dom, &mut lower, &b)?;
    lambda.check(&dom, &mut lower)?;
    let probe_lower = resolve_lifts(&lower, &mut cod, &b)?;
    probe_lower.check(&lower, &mut cod)?;

    let around_top = compose(&probe_upper, &lambda_probed, &dom, &upper, &mut cod)?;
    let around_bottom = compose(&lambda, &probe_lower, &dom, &lower, &mut cod)?;

    let mut verdicts = Vec::new();
    compare("naturality", &around_top, &around_bottom, &dom, &mut cod, &b, &mut verdicts)?;
    Ok(report(Law::Naturality, &[i, j], stack, builds, verdicts))
}

fn pentagons(stack: &mut TheoryStack, i: u8, j: u8) -> Result<LawCheckReport, VerifyError> {
    let b = stack.bounds();
    let builds = collect_builds(
        stack,
        &[&[j, j, i], &[j, i, j], &[i, j, j], &[j, i, i], &[i, j, i], &[i, i, j]],
    )?;

    let mut lambda = build_lambda(stack, i, j)?;
    lambda.check()?;
    let mut mu_outer = build_mu(stack, j)?;
    mu_outer.check()?;
    let mut mu_inner = build_mu(stack, i)?;
    mu_inner.check()?;

    let mut verdicts = Vec::new();

    {
        let doubled = stack.cloned(&[j, j, i])?;
        let mut merged = stack.cloned(&[j, i])?;
        let merge_under = step_image(Some(&mu_outer), &doubled, &mut merged, &b)?;
        merge_under.check(&doubled, &mut merged)?;
        let mut target = stack.cloned(&[i, j])?;
        let lambda_merged = resolve_lifts(&merged, &mut target, &b)?;
        lambda_merged.check(&merged, &mut target)?;
        let short_way = compose(&merge_under, &lambda_merged, &doubled, &merged, &mut target)?;

        let mut swapped_in = stack.cloned(&[j, i, j])?;
        let lambda_inner = resolve_lifts(&doubled, &mut swapped_in, &b)?;
        lambda_inner.check(&doubled, &mut swapped_in)?;
        let mut swapped_out = stack.cloned(&[i, j, j])?;
        let lambda_under = step_image(Some(&lambda), &swapped_in, &mut swapped_out, &b)?;
        lambda_under.check(&swapped_in, &mut swapped_out)?;
        let mu_on_swapped = resolve_lifts(&swapped_out, &mut target, &b)?;
        mu_on_swapped.check(&swapped_out, &mut target)?;
        let half = compose(&lambda_inner, &lambda_under, &doubled, &swapped_in, &mut swapped_out)?;
        let long_way = compose(&half, &mu_on_swapped, &doubled, &swapped_out, &mut target)?;

        let part = format!("multiplication-{j}");
        compare(&part, &short_way, &long_way, &doubled, &mut target, &b, &mut verdicts)?;
    }

    {
        let doubled = stack.cloned(&[j, i, i])?;
        let mut merged = stack.cloned(&[j, i])?;
        let merge_over = resolve_lifts(&doubled, &mut merged, &b)?;
        merge_over.check(&doubled, &mut merged)?;
        let mut target = stack.cloned(&[i, j])?;
        let lambda_merged = resolve_lifts(&merged, &mut target, &b)?;
        lambda_merged.check(&merged, &mut target)?;
        let short_way = compose(&merge_over, &lambda_merged, &doubled, &merged, &mut target)?;

        let mut swapped_in = stack.cloned(&[i, j, i])?;
        let lambda_under = step_image(Some(&lambda), &doubled, &mut swapped_in, &b)?;
        lambda_under.check(&doubled, &mut swapped_in)?;
        let mut swapped_out = stack.cloned(&[i, i, j])?;
        let lambda_outer = resolve_lifts(&swapped_in, &mut swapped_out, &b)?;
        lambda_outer.check(&swapped_in, &mut swapped_out)?;
        let mu_under = step_image(Some(&mu_inner), &swapped_out, &mut target, &b)?;
        mu_under.check(&swapped_out, &mut target)?;
        let half = compose(&lambda_under, &lambda_outer, &doubled, &swapped_in, &mut swapped_out)?;
        let long_way = compose(&half, &mu_under, &doubled, &swapped_out, &mut target)?;

        let part = format!("multiplication-{i}");
        compare(&part, &short_way, &long_way, &doubled, &mut target, &b, &mut verdicts)?;
    }

    Ok(report(Law::Pentagons, &[i, j], stack, builds, verdicts))
}

fn yang_baxter(
    stack: &mut TheoryStack,
    i: u8,
    j: u8,
    k: u8,
) -> Result<LawCheckReport, VerifyError> {
    let b = stack.bounds();
    let builds = collect_builds(
        stack,
        &[&[k, j, i], &[j, k, i], &[j, i, k], &[i, j, k], &[k, i, j], &[i, k, j]],
    )?;

    let mut lambda_jk = build_lambda(stack, j, k)?;
    lambda_jk.check()?;
    let mut lambda_ij = build_lambda(stack, i, j)?;
    lambda_ij.check()?;
    let mut lambda_ik = build_lambda(stack, i, k)?;
    lambda_ik.check()?;

    let start = stack.cloned(&[k, j, i])?;
    let mut cod = stack.cloned(&[i, j, k])?;

    let mut mid_a1 = stack.cloned(&[j, k, i])?;
    let a1 = step_image(Some(&lambda_jk), &start, &mut mid_a1, &b)?;
    a1.check(&start, &mut mid_a1)?;
    let mut mid_a2 = stack.cloned(&[j, i, k])?;
    let a2 = resolve_lifts(&mid_a1, &mut mid_a2, &b)?;
    a2.check(&mid_a1, &mut mid_a2)?;
    let a3 = step_image(Some(&lambda_ij), &mid_a2, &mut cod, &b)?;
    a3.check(&mid_a2, &mut cod)?;
    let half_a = compose(&a1, &a2, &start, &mid_a1, &mut mid_a2)?;
    let path_a = compose(&half_a, &a3, &start, &mid_a2, &mut cod)?;

    let mut mid_b1 = stack.cloned(&[k, i, j])?;
    let b1 = resolve_lifts(&start, &mut mid_b1, &b)?;
    b1.check(&start, &mut mid_b1)?;
    let mut mid_b2 = stack.cloned(&[i, k, j])?;
    let b2 = step_image(Some(&lambda_ik), &mid_b1, &mut mid_b2, &b)?;
    b2.check(&mid_b1, &mut mid_b2)?;
    let b3 = resolve_lifts(&mid_b2, &mut cod, &b)?;
    b3.check(&mid_b2, &mut cod)?;
    let half_b = compose(&b1, &b2, &start, &mid_b1, &mut mid_b2)?;
    let path_b = compose(&half_b, &b3, &start, &mid_b2, &mut cod)?;

    let mut verdicts = Vec::new();
    compare("hexagon", &path_a, &path_b, &start, &mut cod, &b, &mut verdicts)?;
    Ok(report(Law::YangBaxter, &[i, j, k], stack, builds, verdicts))
}

fn monad(stack: &mut TheoryStack, k: u8) -> Result<LawCheckReport, VerifyError> {
    let b = stack.bounds();
    let builds = collect_builds(stack, &[&[k, k, k]])?;

    let single_layer = stack.cloned(&[k])?;
    let mut mu = build_mu(stack, k)?;
    mu.check()?;

    let mut target = stack.cloned(&[k])?;
    let identity = TheoryMorphism::identity(&mut target);

    let mut doubled = stack.cloned(&[k, k])?;
    let mu_map = resolve_lifts(&doubled, &mut target, &b)?;
    mu_map.check(&doubled, &mut target)?;

    let unit = TheoryMorphism::inclusion(&single_layer, &mut doubled)?;
    unit.check(&single_layer, &mut doubled)?;
    let unit_then_mu = compose(&unit, &mu_map, &single_layer, &doubled, &mut target)?;

    let unit_image = step_image(None, &single_layer, &mut doubled, &b)?;
    unit_image.check(&single_layer, &mut doubled)?;
    let image_then_mu = compose(&unit_image, &mu_map, &single_layer, &doubled, &mut target)?;

    let tripled = stack.cloned(&[k, k, k])?;
    let mut half = stack.cloned(&[k, k])?;
    let mu_outer = resolve_lifts(&tripled, &mut half, &b)?;
    mu_outer.check(&tripled, &mut half)?;
    let mu_under = step_image(Some(&mu), &tripled, &mut half, &b)?;
    mu_under.check(&tripled, &mut half)?;
    let outer_first = compose(&mu_outer, &mu_map, &tripled, &half, &mut target)?;
    let inner_first = compose(&mu_under, &mu_map, &tripled, &half, &mut target)?;

    let mut verdicts = Vec::new();
    compare("unit-left", &unit_then_mu, &identity, &single_layer, &mut target, &b, &mut verdicts)?;
    compare("unit-right", &image_then_mu, &identity, &single_layer, &mut target, &b, &mut verdicts)?;
    compare("associativity", &outer_first, &inner_first, &tripled, &mut target, &b, &mut verdicts)?;
    Ok(report(Law::Monad, &[k], stack, builds, verdicts))
}

fn completability(stack: &mut TheoryStack, n: u8) -> Result<LawCheckReport, VerifyError> {
    let b = stack.bounds();
    let mode = match stack.mode() {
        TheoryMode::Weak => TowerMode::Ic,
        TheoryMode::Strict => TowerMode::Strict,
    };
    let tower = build_tower(mode, n as u32, &b)?;
    let mut builds = Vec::new();
    for stage in tower.reports() {
        for layer in &stage.layers {
            builds.push(stage_line(stage.stage, layer));
        }
    }

    let hat = tower.last();
    let previous = tower.stage(n as usize - 1).clone();
    let mut included = hat.clone();
    let kappa_prev = TheoryMorphism::inclusion(&previous, &mut included)?;
    kappa_prev.check(&previous, &mut included)?;
    let base = ComparisonMap {
        dom: previous,
        cod: included,
        map: kappa_prev,
    };

    let flavor = tower.mode.flavor();
    let (mut refilled, _, layer) = fibrant_replace(hat, n - 1, &b, flavor)?;
    refilled.set_stage(hat.stage() + 1);
    builds.push(stage_line(hat.stage() + 1, &layer));

    let reached = step_image(Some(&base), tower.stage(n as usize), &mut refilled, &b)?;
    reached.check(tower.stage(n as usize), &mut refilled)?;
    let mut target = hat.clone();
    let sigma = resolve_lifts(&refilled, &mut target, &b)?;
    sigma.check(&refilled, &mut target)?;
    let around = compose(&reached, &sigma, tower.stage(n as usize), &refilled, &mut target)?;
    let direct = TheoryMorphism::inclusion(tower.stage(n as usize), &mut target)?;
    direct.check(tower.stage(n as usize), &mut target)?;

    let mut verdicts = Vec::new();
    compare("square", &around, &direct, tower.stage(n as usize), &mut target, &b, &mut verdicts)?;

    let mut mu_hat = build_mu_hat(&tower, n as usize, &b)?;
    mu_hat.check()?;
    let chain = TheoryMorphism::inclusion(hat, &mut mu_hat.dom)?;
    chain.check(hat, &mut mu_hat.dom)?;
    let retracted = compose(&chain, &mu_hat.map, hat, &mu_hat.dom, &mut mu_hat.cod)?;
    let identity = TheoryMorphism::identity(&mut mu_hat.cod);
    compare("unit", &retracted, &identity, hat, &mut mu_hat.cod, &b, &mut verdicts)?;

    Ok(report(Law::Completability, &[n], stack, builds, verdicts))
}

fn collect_builds(
    stack: &mut TheoryStack,
    seqs: &[&[u8]],
) -> Result<Vec<String>, EngineError> {
    let mut out = Vec::new();
    for seq in seqs {
        for line in stack.build_lines(seq)? {
            if !out.contains(&line) {
                out.push(line);
            }
        }
    }
    Ok(out)
}

fn compare(
    part: &str,
    left: &TheoryMorphism,
    right: &TheoryMorphism,
    source: &Presentation,
    target: &mut Presentation,
    b: &FragmentBounds,
    out: &mut Vec<GenVerdict>,
) -> Result<(), VerifyError> {
    if target.mode() == TheoryMode::Strict {
        target.saturate(b.max_dim);
    }
    for g in source.gen_indices() {
        let gen = source.generator(g);
        let id = gen.id;
        let subject = format!("{} over {}", id, source.table(gen.arity));
        let a = left
            .image(id)
            .ok_or_else(|| EngineError::MissingImage { hash: id.to_string() })?;
        let c = right
            .image(id)
            .ok_or_else(|| EngineError::MissingImage { hash: id.to_string() })?;
        let pass = target.equal(a, c);
        out.push(GenVerdict {
            part: part.to_string(),
            subject,
            left: target.term_text(a),
            right: target.term_text(c),
            pass,
        });
    }
    Ok(())
}

fn report(
    law: Law,
    indices: &[u8],
    stack: &TheoryStack,
    builds: Vec<String>,
    verdicts: Vec<GenVerdict>,
) -> LawCheckReport {
    LawCheckReport {
        law: law.to_string(),
        indices: indices.to_vec(),
        mode: stack.mode(),
        bounds: stack.bounds(),
        builds,
        verdicts,
    }
}

fn stage_line(stage: u32, layer: &ReplaceReport) -> String {
    format!(
        "build stage={} dim={} rounds={} added={} status={}",
        stage,
        layer.dim,
        layer.rounds,
        layer.added,
        status_text(layer.status)
    )
}

fn ordered_pair(law: Law, indices: &[u8]) -> Result<(u8, u8), VerifyError> {
    match indices {
        [i, j] if i < j => Ok((*i, *j)),
        _ => Err(bad_indices(law, indices, "i,j with i < j")),
    }
}

fn ordered_triple(law: Law, indices: &[u8]) -> Result<(u8, u8, u8), VerifyError> {
    match indices {
        [i, j, k] if i < j && j < k => Ok((*i, *j, *k)),
        _ => Err(bad_indices(law, indices, "i,j,k with i < j < k")),
    }
}

fn single(law: Law, indices: &[u8], expected: &'static str) -> Result<u8, VerifyError> {
    match indices {
        [k] => Ok(*k),
        _ => Err(bad_indices(law, indices, expected)),
    }
}

fn bad_indices(law: Law, indices: &[u8], expected: &'static str) -> VerifyError {
    VerifyError::Indices {
        law: law.to_string(),
        expected,
        got: render_dims(indices),
    }
}
