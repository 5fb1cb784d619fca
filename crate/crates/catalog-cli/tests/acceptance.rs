//! End-to-end acceptance gate for the workspace: nine independent checks,
//! one PASS/FAIL line each, failing the test only at the end so every
//! criterion gets its verdict printed.

use std::collections::{BTreeSet, HashMap};
use std::panic::catch_unwind;
use std::sync::OnceLock;

use catalog_cli::{cli_dispatch, identify_cells};
use distributive_verify::{verify_law, Law, TheoryStack};
use globular_core::{theta_hom, CellId, PastingDiagram, TableOfDimensions};
use soa_engine::{
    admissible_pairs, build_tower, serialize_manifest, serialize_presentation, write_tower,
    FragmentBounds, Tower, TowerMode,
};
use strict_oracle::{crosscheck_strict, strict_reduce_word, SignedEdge};
use theory_kernel::{GenIdx, Head, Presentation, TermId, TheoryMode};

fn ic_small() -> &'static Tower {
    static TOWER: OnceLock<Tower> = OnceLock::new();
    TOWER.get_or_init(|| {
        build_tower(TowerMode::Ic, 2, &FragmentBounds::new(3, 2, 2, 4)).expect("ic tower builds")
    })
}

fn ic_wide() -> &'static Tower {
    static TOWER: OnceLock<Tower> = OnceLock::new();
    TOWER.get_or_init(|| {
        build_tower(TowerMode::Ic, 2, &FragmentBounds::new(5, 2, 2, 4)).expect("ic tower builds")
    })
}

fn strict_two() -> &'static Tower {
    static TOWER: OnceLock<Tower> = OnceLock::new();
    TOWER.get_or_init(|| {
        build_tower(TowerMode::Strict, 2, &FragmentBounds::new(3, 3, 2, 4))
            .expect("strict tower builds")
    })
}

fn table(text: &str) -> TableOfDimensions {
    text.parse().expect("literal table")
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Counts maps of globular sets between two realized diagrams by brute
/// force: every dimension-preserving cell assignment whose images commute
/// with source and target.  Written independently of the hom enumeration it
/// checks.
fn brute_force_maps(dom: &PastingDiagram, cod: &PastingDiagram) -> usize {
    fn extend(
        dom: &PastingDiagram,
        cod: &PastingDiagram,
        cells: &[CellId],
        at: usize,
        map: &mut HashMap<CellId, CellId>,
    ) -> usize {
        let Some(&cell) = cells.get(at) else {
            return 1;
        };
        let mut total = 0;
        for image in cod.cells(cell.dim) {
            let fits = match (dom.src(cell), dom.tgt(cell)) {
                (Some(s), Some(t)) => {
                    cod.src(image) == map.get(&s).copied() && cod.tgt(image) == map.get(&t).copied()
                }
                _ => true,
            };
            if fits {
                map.insert(cell, image);
                total += extend(dom, cod, cells, at + 1, map);
                map.remove(&cell);
            }
        }
        total
    }
    let cells: Vec<CellId> = (0..=dom.height()).flat_map(|d| dom.cells(d)).collect();
    extend(dom, cod, &cells, 0, &mut HashMap::new())
}

fn theta_hom_brute_force() -> Result<(), String> {
    let small: Vec<TableOfDimensions> = TableOfDimensions::enumerate(3, 5)
        .into_iter()
        .filter(|q| PastingDiagram::realize(q).total_cells() <= 5)
        .collect();
    check(small.len() >= 4, || {
        format!("expected at least four small tables, got {}", small.len())
    })?;
    for p in &small {
        let dom = PastingDiagram::realize(p);
        for q in &small {
            let cod = PastingDiagram::realize(q);
            let counted = theta_hom(p, q).len();
            let expected = brute_force_maps(&dom, &cod);
            check(counted == expected, || {
                format!("hom {p} -> {q}: enumerated {counted}, brute force {expected}")
            })?;
        }
    }
    for (p, q, expected) in [
        ("(1)", "(1)", 1usize),
        ("(0)", "(1)", 2),
        ("(1,0,1)", "(1)", 0),
    ] {
        let counted = theta_hom(&table(p), &table(q)).len();
        check(counted == expected, || {
            format!("hom {p} -> {q}: got {counted}, expected {expected}")
        })?;
    }
    Ok(())
}

fn admissible_pair_census() -> Result<(), String> {
    let mut base = Presentation::new(TheoryMode::Weak);
    let pairs = admissible_pairs(&mut base, 0, &FragmentBounds::new(3, 3, 0, 4));
    check(pairs.len() == 14, || {
        format!("expected 14 pairs at dimension 0, got {}", pairs.len())
    })?;
    let texts: BTreeSet<String> = pairs.iter().map(|p| p.text(&base)).collect();
    for needed in [
        "((0), cell(0,0), cell(0,0))",
        "((1), cell(0,1), cell(0,0))",
        "((1,0,1), cell(0,2), cell(0,1))",
    ] {
        check(texts.contains(needed), || {
            format!("census is missing the pair {needed}")
        })?;
    }
    let arities: BTreeSet<String> = pairs.iter().map(|p| p.arity.to_string()).collect();
    check(
        arities == BTreeSet::from(["(0)".into(), "(1)".into(), "(1,0,1)".into()]),
        || format!("census ranged over unexpected arities {arities:?}"),
    )
}

fn named_cell_catalog() -> Result<(), String> {
    let catalog = identify_cells(ic_wide()).map_err(|e| e.to_string())?;
    let entry = |label: &str| {
        catalog
            .labeled(label)
            .cloned()
            .ok_or_else(|| format!("catalog has no entry labeled {label}"))
    };
    let z = entry("Z")?;
    let c = entry("c")?;
    let omega = entry("ω")?;
    let a = entry("a")?;
    let z_l = entry("Z_l")?;
    let z_r = entry("Z_r")?;

    let zi = z.id.to_string();
    let ci = c.id.to_string();
    let expect = [
        (&z, 1u32, "(0)", "cell(0,0)".to_string(), "cell(0,0)".to_string()),
        (&c, 1, "(1,0,1)", "cell(0,2)".into(), "cell(0,1)".into()),
        (&omega, 1, "(1)", "cell(0,1)".into(), "cell(0,0)".into()),
        (
            &a,
            2,
            "(1,0,1,0,1)",
            format!("{ci}[{ci}[cell(1,0); cell(1,1)]; cell(1,2)]"),
            format!("{ci}[cell(1,0); {ci}[cell(1,1); cell(1,2)]]"),
        ),
        (
            &z_l,
            2,
            "(1)",
            format!("{ci}[{zi}[cell(0,1)]; cell(1,0)]"),
            "cell(1,0)".into(),
        ),
        (
            &z_r,
            2,
            "(1)",
            format!("{ci}[cell(1,0); {zi}[cell(0,0)]]"),
            "cell(1,0)".into(),
        ),
    ];
    for (e, stage, arity, src, tgt) in expect {
        let label = e.label.unwrap_or("unnamed");
        check(e.stage == stage, || {
            format!("{label} sits at stage {}, expected {stage}", e.stage)
        })?;
        check(e.arity == arity, || {
            format!("{label} has arity {}, expected {arity}", e.arity)
        })?;
        check(e.src == src && e.tgt == tgt, || {
            format!(
                "{label} boundary is ({}, {}), expected ({src}, {tgt})",
                e.src, e.tgt
            )
        })?;
    }
    Ok(())
}

fn law_suite() -> Result<(), String> {
    let deep = FragmentBounds::new(3, 3, 2, 4);
    let shallow = FragmentBounds::new(3, 3, 1, 4);
    let narrow = FragmentBounds::new(1, 3, 2, 4);
    let run = |law: Law, indices: &[u8], stack: &mut TheoryStack| -> Result<(), String> {
        let report = verify_law(law, indices, stack).map_err(|e| e.to_string())?;
        check(report.pass(), || {
            format!("law check did not pass:\n{report}")
        })
    };

    let mut deep_stack = TheoryStack::new(TheoryMode::Weak, deep);
    for (i, j) in [(0u8, 1u8), (0, 2), (1, 2)] {
        run(Law::UnitTriangle, &[i, j], &mut deep_stack)?;
    }
    for k in [0u8, 1, 2] {
        run(Law::Monad, &[k], &mut deep_stack)?;
    }

    let mut shallow_stack = TheoryStack::new(TheoryMode::Weak, shallow);
    for (i, j) in [(0u8, 1u8), (0, 2), (1, 2)] {
        run(Law::Naturality, &[i, j], &mut shallow_stack)?;
        run(Law::Pentagons, &[i, j], &mut shallow_stack)?;
    }
    run(Law::YangBaxter, &[0, 1, 2], &mut shallow_stack)?;

    let mut narrow_stack = TheoryStack::new(TheoryMode::Weak, narrow);
    for n in [1u8, 2] {
        run(Law::Completability, &[n], &mut narrow_stack)?;
    }
    Ok(())
}

fn stage_stabilization() -> Result<(), String> {
    let bounds = FragmentBounds::new(3, 3, 1, 4);
    let tables = ["(0)", "(1)", "(1,0,1)"];
    for mode in [TowerMode::Ic, TowerMode::Strict] {
        let tower = build_tower(mode, 3, &bounds).map_err(|e| e.to_string())?;
        for m in 0..=1u8 {
            let mut seen: Option<(usize, BTreeSet<String>, usize)> = None;
            for s in (m as usize + 1)..=tower.built_stages() {
                let mut p = tower.stage(s).clone();
                let mut universe = Vec::new();
                for q in tables {
                    let qa = p.intern_table(&table(q));
                    for t in p.enumerate_terms(qa, m, bounds.max_depth) {
                        universe.push((q, qa, t));
                    }
                }
                p.saturate(m);
                let mut texts = BTreeSet::new();
                let mut reps = BTreeSet::new();
                for (q, qa, t) in universe {
                    texts.insert(format!("{q}:{}", p.term_text(t)));
                    reps.insert((qa, p.find(t)));
                }
                let classes = reps.len();
                match &seen {
                    None => seen = Some((s, texts, classes)),
                    Some((first, expected_texts, expected_classes)) => {
                        check(texts == *expected_texts, || {
                            format!(
                                "{mode} tower: dimension-{m} terms differ between stages {first} and {s}"
                            )
                        })?;
                        check(classes == *expected_classes, || {
                            format!(
                                "{mode} tower: dimension-{m} classes went {expected_classes} -> {classes} between stages {first} and {s}"
                            )
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Flattens a term built from composition, identity, and edge cells into a
/// word the free-groupoid oracle can reduce.  Composition emits the inner
/// factor first so the word runs source to target.
fn flatten_word(
    p: &Presentation,
    c: GenIdx,
    z: GenIdx,
    t: TermId,
    out: &mut Vec<SignedEdge>,
) -> Result<(), String> {
    let node = p.term(t);
    match node.head {
        Head::Cell(cell) if cell.dim == 1 => {
            out.push(SignedEdge::forward(cell.idx));
            Ok(())
        }
        Head::Cell(cell) => Err(format!("cannot flatten a dimension-{} cell", cell.dim)),
        Head::Gen(g) if g == c => {
            let args: Vec<TermId> = node.args.to_vec();
            flatten_word(p, c, z, args[1], out)?;
            flatten_word(p, c, z, args[0], out)
        }
        Head::Gen(g) if g == z => Ok(()),
        Head::Gen(_) => Err("term applies a generator outside composition and identity".into()),
    }
}

struct Comparisons {
    unit: bool,
    assoc: bool,
}

/// Builds `c(Z(y), e)` vs `e` over one edge and the two associations of a
/// three-edge chain, and reports whether each pair is equal in `p`.  The
/// strict caller saturates first; the weak caller compares freely.
fn build_comparisons(p: &mut Presentation, saturate: bool) -> Result<Comparisons, String> {
    let err = |e: theory_kernel::KernelError| e.to_string();
    let tower_cells = identify_gens(p)?;
    let (z, c) = tower_cells;

    let glob = p.intern_table(&table("(1)"));
    let e = p.mk_cell(glob, CellId { dim: 1, idx: 0 }).map_err(err)?;
    let y = p.mk_cell(glob, CellId { dim: 0, idx: 1 }).map_err(err)?;
    let id_y = p.mk_app(z, &[y]).map_err(err)?;
    let unit_lhs = p.mk_app(c, &[id_y, e]).map_err(err)?;

    let long = p.intern_table(&table("(1,0,1,0,1)"));
    let mut edges = Vec::new();
    for idx in 0..3 {
        edges.push(p.mk_cell(long, CellId { dim: 1, idx }).map_err(err)?);
    }
    let left_inner = p.mk_app(c, &[edges[0], edges[1]]).map_err(err)?;
    let left = p.mk_app(c, &[left_inner, edges[2]]).map_err(err)?;
    let right_inner = p.mk_app(c, &[edges[1], edges[2]]).map_err(err)?;
    let right = p.mk_app(c, &[edges[0], right_inner]).map_err(err)?;

    if saturate {
        p.saturate(1);
    }

    let mut unit_word = Vec::new();
    flatten_word(p, c, z, unit_lhs, &mut unit_word)?;
    let mut id_word = Vec::new();
    flatten_word(p, c, z, e, &mut id_word)?;
    let reduced_unit = strict_reduce_word(&table("(1)"), &unit_word).map_err(|e| e.to_string())?;
    let reduced_id = strict_reduce_word(&table("(1)"), &id_word).map_err(|e| e.to_string())?;
    check(reduced_unit == reduced_id, || {
        "word oracle disagrees: unit composite and identity reduce differently".into()
    })?;

    let mut left_word = Vec::new();
    flatten_word(p, c, z, left, &mut left_word)?;
    let mut right_word = Vec::new();
    flatten_word(p, c, z, right, &mut right_word)?;
    let reduced_left =
        strict_reduce_word(&table("(1,0,1,0,1)"), &left_word).map_err(|e| e.to_string())?;
    let reduced_right =
        strict_reduce_word(&table("(1,0,1,0,1)"), &right_word).map_err(|e| e.to_string())?;
    check(reduced_left == reduced_right, || {
        "word oracle disagrees: the two associations reduce differently".into()
    })?;

    Ok(Comparisons {
        unit: p.equal(unit_lhs, e),
        assoc: p.equal(left, right),
    })
}

/// Locates the identity and composition generators by their boundary pairs.
fn identify_gens(p: &Presentation) -> Result<(GenIdx, GenIdx), String> {
    let find = |arity: &str, src: &str, tgt: &str| {
        p.gen_indices()
            .find(|&g| {
                let gen = p.generator(g);
                p.table(gen.arity).to_string() == arity
                    && gen.src.map(|t| p.term_text(t)).as_deref() == Some(src)
                    && gen.tgt.map(|t| p.term_text(t)).as_deref() == Some(tgt)
            })
            .ok_or_else(|| format!("no generator over ({arity}, {src}, {tgt})"))
    };
    let z = find("(0)", "cell(0,0)", "cell(0,0)")?;
    let c = find("(1,0,1)", "cell(0,2)", "cell(0,1)")?;
    Ok((z, c))
}

fn strict_collapse_weak_freedom() -> Result<(), String> {
    let mut weak = ic_small().last().clone();
    let free = build_comparisons(&mut weak, false)?;
    check(!free.unit, || {
        "weak tower: unit composite collapsed onto the identity".into()
    })?;
    check(!free.assoc, || {
        "weak tower: the two associations collapsed".into()
    })?;

    let mut strict = strict_two().last().clone();
    let collapsed = build_comparisons(&mut strict, true)?;
    check(collapsed.unit, || {
        "strict tower: unit composite stayed distinct from the identity".into()
    })?;
    check(collapsed.assoc, || {
        "strict tower: the two associations stayed distinct".into()
    })
}

fn strict_oracle_agreement() -> Result<(), String> {
    for (arity, dim, expected) in [("(1)", 0u8, "2"), ("(1)", 1, "4"), ("(1,0,1)", 1, "9"), ("(1)", 2, "4")] {
        let report =
            crosscheck_strict(strict_two(), &table(arity), dim, 2).map_err(|e| e.to_string())?;
        check(report.pass(), || {
            format!("cross-check over {arity} at dimension {dim} failed:\n{report}")
        })?;
        check(report.verdicts.len() == 1, || {
            format!(
                "cross-check over {arity} at dimension {dim} did not converge:\n{report}"
            )
        })?;
        let v = &report.verdicts[0];
        check(v.left == expected && v.right == expected, || {
            format!(
                "cross-check over {arity} at dimension {dim}: classes {} vs oracle {}, expected {expected}",
                v.left, v.right
            )
        })?;
    }
    Ok(())
}

fn dispatch(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("catalog-cli").chain(args.iter().copied());
    let code = cli_dispatch(argv, &mut out);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn determinism() -> Result<(), String> {
    let bounds = FragmentBounds::new(3, 3, 2, 4);
    let first = build_tower(TowerMode::Strict, 2, &bounds).map_err(|e| e.to_string())?;
    let second = build_tower(TowerMode::Strict, 2, &bounds).map_err(|e| e.to_string())?;
    check(
        serialize_manifest(&first) == serialize_manifest(&second),
        || "repeated builds produced different manifests".into(),
    )?;
    for s in 0..=first.built_stages() {
        check(
            serialize_presentation(first.stage(s)) == serialize_presentation(second.stage(s)),
            || format!("repeated builds differ at stage {s}"),
        )?;
    }

    let dirs = (
        tempfile::tempdir().map_err(|e| e.to_string())?,
        tempfile::tempdir().map_err(|e| e.to_string())?,
    );
    write_tower(&first, dirs.0.path()).map_err(|e| e.to_string())?;
    write_tower(&second, dirs.1.path()).map_err(|e| e.to_string())?;
    for name in ["tower.manifest", "stage-0.theory", "stage-1.theory", "stage-2.theory"] {
        let a = std::fs::read(dirs.0.path().join(name)).map_err(|e| e.to_string())?;
        let b = std::fs::read(dirs.1.path().join(name)).map_err(|e| e.to_string())?;
        check(a == b, || format!("written file {name} differs between builds"))?;
    }

    for args in [
        vec!["pairs", "--dim=0", "--max-depth=0"],
        vec!["catalog", "--max-dim=2"],
        vec!["verify", "--law=unit-triangle", "--indices=0,1", "--max-depth=1"],
    ] {
        let (code_a, out_a) = dispatch(&args);
        let (code_b, out_b) = dispatch(&args);
        check(code_a == code_b && out_a == out_b, || {
            format!("repeated `{}` runs differ", args.join(" "))
        })?;
        check(code_a == 0, || {
            format!("`{}` exited {code_a}:\n{out_a}", args.join(" "))
        })?;
    }
    Ok(())
}

fn truncation_honesty() -> Result<(), String> {
    let statusful = |report: &str, name: &str| -> Result<(), String> {
        let mut lines = report.lines().filter(|l| {
            l.starts_with("report ") || l.starts_with("build ") || l.starts_with("probe ")
        });
        let mut any = false;
        for line in &mut lines {
            any = true;
            check(line.contains("status="), || {
                format!("{name}: line without fixpoint-vs-bound status: {line}")
            })?;
        }
        check(any, || format!("{name}: no status-bearing lines at all"))
    };

    statusful(&serialize_manifest(ic_small()), "ic manifest")?;
    statusful(&serialize_manifest(strict_two()), "strict manifest")?;

    let mut stack = TheoryStack::new(TheoryMode::Weak, FragmentBounds::new(3, 3, 1, 4));
    let law = verify_law(Law::UnitTriangle, &[0, 1], &mut stack).map_err(|e| e.to_string())?;
    let law_text = law.to_string();
    statusful(&law_text, "law report")?;
    check(law_text.lines().last().is_some_and(|l| l.starts_with("status=")), || {
        "law report does not end with its bounded verdict".into()
    })?;

    let converged =
        crosscheck_strict(strict_two(), &table("(1)"), 1, 2).map_err(|e| e.to_string())?;
    check(converged.to_string().contains("status=converged"), || {
        "converged cross-check does not say so".into()
    })?;

    let open = crosscheck_strict(strict_two(), &table("(1,0,1)"), 1, 0).map_err(|e| e.to_string())?;
    check(open.to_string().contains("status=open"), || {
        "unconverged cross-check does not declare itself open".into()
    })?;
    check(open.verdicts.is_empty(), || {
        "unconverged cross-check still asserted a verdict".into()
    })
}

#[test]
fn acceptance() {
    let checks: [(&str, fn() -> Result<(), String>); 9] = [
        ("theta-hom-brute-force", theta_hom_brute_force),
        ("admissible-pair-census", admissible_pair_census),
        ("named-cell-catalog", named_cell_catalog),
        ("law-suite", law_suite),
        ("stage-stabilization", stage_stabilization),
        ("strict-collapse-weak-freedom", strict_collapse_weak_freedom),
        ("strict-oracle-agreement", strict_oracle_agreement),
        ("determinism", determinism),
        ("truncation-honesty", truncation_honesty),
    ];
    let mut failures = 0;
    for (name, run) in checks {
        match catch_unwind(run) {
            Ok(Ok(())) => println!("PASS {name}"),
            Ok(Err(msg)) => {
                println!("FAIL {name}: {msg}");
                failures += 1;
            }
            Err(_) => {
                println!("FAIL {name}: panicked");
                failures += 1;
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance check(s) failed");
}
