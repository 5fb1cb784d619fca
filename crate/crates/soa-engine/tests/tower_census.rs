//! Censuses and structural invariants of the stage towers, checked against
//! tallies computed independently of the engine's own bookkeeping.

use globular_core::TableOfDimensions;
use proptest::prelude::*;
use soa_engine::{
    admissible_pairs, build_tower, disk, extend_one_step, fibrant_replace, lookup_lift,
    serialize_manifest, serialize_presentation, sphere, sphere_disk_inclusion, sphere_parts,
    stable_dim, AdmissiblePair, EngineError, FragmentBounds, TheoryMorphism, TowerMode,
};
use theory_kernel::{parse_term, Flavor, LayerStatus, Presentation, TheoryMode};

/// Vertices of a height-<=1 pasting scheme, counted from the table alone:
/// a chain of `peak_count` edges has one more vertex, and the point has one.
fn vertex_count(q: &TableOfDimensions) -> usize {
    if q.height() == 0 {
        1
    } else {
        q.peak_count() + 1
    }
}

/// Ordered vertex pairs (diagonal included) summed over all tables of
/// height <= 1 and length <= `len`: the dimension-0 lifting problems.
fn dim0_pair_census(len: usize) -> usize {
    TableOfDimensions::enumerate(1, len)
        .iter()
        .map(|q| vertex_count(q) * vertex_count(q))
        .sum()
}

/// Parallel ordered pairs of dimension-`k` terms, tallied by a direct
/// double loop over the enumeration rather than the engine's pair walk.
fn direct_pair_tally(p: &mut Presentation, k: u8, b: &FragmentBounds) -> usize {
    let mut total = 0;
    let height_cap = (k + 1).min((b.max_dim - k).max(1));
    for q in TableOfDimensions::enumerate(height_cap, b.max_arity_len) {
        let qa = p.intern_table(&q);
        let terms = p.enumerate_terms(qa, k, b.max_depth);
        for &f in &terms {
            for &g in &terms {
                if k == 0 || p.parallel(f, g) {
                    total += 1;
                }
            }
        }
    }
    total
}

fn base() -> Presentation {
    Presentation::new(TheoryMode::Weak)
}

fn small(len: usize, dim: u8) -> FragmentBounds {
    FragmentBounds::new(len, dim, 2, 4)
}

#[test]
fn base_pair_census_matches_the_vertex_tally() {
    assert_eq!(dim0_pair_census(3), 1 + 4 + 9);
    assert_eq!(dim0_pair_census(5), 14 + 16);

    let mut t = base();
    let shallow = FragmentBounds::new(3, 1, 0, 1);
    let pairs = admissible_pairs(&mut t, 0, &shallow);
    assert_eq!(pairs.len(), 14);
    let texts: Vec<String> = pairs.iter().map(|p| p.text(&t)).collect();
    for named in [
        "((0), cell(0,0), cell(0,0))",
        "((1), cell(0,1), cell(0,0))",
        "((1,0,1), cell(0,2), cell(0,1))",
    ] {
        assert!(texts.iter().any(|s| s == named), "missing pair {named}");
    }

    let mut wide = base();
    let longer = FragmentBounds::new(5, 1, 0, 1);
    assert_eq!(admissible_pairs(&mut wide, 0, &longer).len(), 30);
}

#[test]
fn one_free_step_fills_every_base_pair_once() {
    let b = small(3, 1);
    let t = base();
    let (once, eta) = extend_one_step(&t, 0, &b, Flavor::Free).unwrap();
    assert_eq!(once.gen_count(), 14);
    assert_eq!(eta.gen_images().count(), 0);

    let (twice, _) = extend_one_step(&once, 0, &b, Flavor::Free).unwrap();
    assert_eq!(twice.gen_count(), 14, "a repeated step must add nothing");
    assert_eq!(twice.layers().len(), 1, "the open layer is continued");
}

#[test]
fn fibrant_replacement_reports_its_fixpoint() {
    let b = small(3, 1);
    let (replaced, eta, report) = fibrant_replace(&base(), 0, &b, Flavor::Free).unwrap();
    assert_eq!(report.added, 14);
    assert_eq!(report.rounds, 2, "one working round and one empty round");
    assert_eq!(report.status, LayerStatus::Fixpoint);
    assert_eq!(replaced.layers().len(), 1);
    eta.check(&base(), &mut replaced.clone()).unwrap();

    let tight = FragmentBounds::new(3, 1, 2, 1);
    let (_, _, capped) = fibrant_replace(&base(), 0, &tight, Flavor::Free).unwrap();
    assert_eq!(capped.rounds, 1);
    assert_eq!(
        capped.status,
        LayerStatus::IterationBound,
        "a single round cannot certify convergence"
    );
}

#[test]
fn spheres_and_disks_present_one_lifting_problem() {
    let point: TableOfDimensions = "(0)".parse().unwrap();
    let arrow: TableOfDimensions = "(1)".parse().unwrap();
    let two: TableOfDimensions = "(2)".parse().unwrap();

    let s = sphere(&point, 0).unwrap();
    assert_eq!(s.gen_count(), 2);
    let parts = sphere_parts(&s);
    assert!(s.generator(parts.f).src.is_none());

    assert!(matches!(
        sphere(&two, 0),
        Err(EngineError::HeightViolation { height: 2, .. })
    ));

    let d = disk(&arrow, 1).unwrap();
    assert_eq!(d.gen_count(), 3);
    let dims: Vec<u8> = d.gen_indices().map(|g| d.generator(g).target_dim).collect();
    assert_eq!(dims, vec![1, 1, 2]);

    let (s1, mut d1, j) = sphere_disk_inclusion(&arrow, 1).unwrap();
    j.check(&s1, &mut d1).unwrap();
    let lift = sphere_parts(&d1).lift.expect("disks carry their filler");
    let lift_src = d1.generator(lift).src.unwrap();
    let f_id = s1.generator(sphere_parts(&s1).f).id;
    let f_image = j.image(f_id).unwrap();
    assert_eq!(
        d1.term_text(lift_src),
        d1.term_text(f_image),
        "the filler's boundary restricts to the sphere pair"
    );
}

#[test]
fn ic_stage_one_lifts_identity_inverse_and_composition() {
    let tower = build_tower(TowerMode::Ic, 1, &small(3, 1)).unwrap();
    let one = tower.stage(1);
    assert_eq!(one.gen_count(), 14);
    let boundary = |src: &str, tgt: &str, arity: &str| {
        one.gen_indices().any(|g| {
            let gen = one.generator(g);
            one.table(gen.arity).to_string() == arity
                && one.term_text(gen.src.unwrap()) == src
                && one.term_text(gen.tgt.unwrap()) == tgt
        })
    };
    assert!(boundary("cell(0,0)", "cell(0,0)", "(0)"), "identity lift");
    assert!(boundary("cell(0,1)", "cell(0,0)", "(1)"), "inverse lift");
    assert!(
        boundary("cell(0,2)", "cell(0,1)", "(1,0,1)"),
        "composition lift"
    );
}

#[test]
fn ic_stage_two_lifts_association_and_unit_pairs() {
    let tower = build_tower(TowerMode::Ic, 2, &FragmentBounds::new(5, 2, 2, 4)).unwrap();
    assert_eq!(tower.reports()[0].layers[0].added, 30);
    assert_eq!(tower.reports()[0].layers[0].status, LayerStatus::Fixpoint);
    assert_eq!(tower.reports()[1].layers[0].dim, 1);
    assert_eq!(tower.reports()[1].layers[0].status, LayerStatus::Fixpoint);

    let mut two = tower.stage(2).clone();
    let find_gen = |p: &Presentation, arity: &str, src: &str, tgt: &str| {
        p.gen_indices().find(|&g| {
            let gen = p.generator(g);
            p.table(gen.arity).to_string() == arity
                && gen.src.map(|t| p.term_text(t)).as_deref() == Some(src)
                && gen.tgt.map(|t| p.term_text(t)).as_deref() == Some(tgt)
        })
    };
    let c = find_gen(&two, "(1,0,1)", "cell(0,2)", "cell(0,1)").expect("composition lift");
    let c_hash = two.generator(c).id.to_string();
    let z = find_gen(&two, "(0)", "cell(0,0)", "cell(0,0)").expect("identity lift");
    let z_hash = two.generator(z).id.to_string();

    let five: TableOfDimensions = "(1,0,1,0,1)".parse().unwrap();
    let qa5 = two.intern_table(&five);
    let left = parse_term(
        &mut two,
        qa5,
        &format!("{c_hash}[{c_hash}[cell(1,0); cell(1,1)]; cell(1,2)]"),
    )
    .unwrap();
    let right = parse_term(
        &mut two,
        qa5,
        &format!("{c_hash}[cell(1,0); {c_hash}[cell(1,1); cell(1,2)]]"),
    )
    .unwrap();
    assert!(two.parallel(left, right));
    let assoc = AdmissiblePair {
        arity: five,
        dim: 1,
        f: left,
        g: right,
    };
    lookup_lift(&mut two, &assoc).expect("association pair is filled at stage 2");

    let arrow: TableOfDimensions = "(1)".parse().unwrap();
    let qa1 = two.intern_table(&arrow);
    let unit_left = parse_term(&mut two, qa1, &format!("{c_hash}[{z_hash}[cell(0,1)]; cell(1,0)]"))
        .unwrap();
    let edge = parse_term(&mut two, qa1, "cell(1,0)").unwrap();
    let unit = AdmissiblePair {
        arity: arrow,
        dim: 1,
        f: unit_left,
        g: edge,
    };
    lookup_lift(&mut two, &unit).expect("unit pair is filled at stage 2");
}

#[test]
fn stage_two_fills_exactly_the_parallel_pairs_of_stage_one() {
    let b = small(3, 2);
    let tower = build_tower(TowerMode::Ic, 2, &b).unwrap();
    let mut one = tower.stage(1).clone();
    let expected = direct_pair_tally(&mut one, 1, &b);
    assert_eq!(tower.reports()[1].layers[0].added, expected);

    let mut last = tower.stage(2).clone();
    let mut filled = std::collections::HashSet::new();
    for g in last.gen_indices() {
        let gen = last.generator(g);
        if gen.target_dim == 2 {
            filled.insert((
                last.table(gen.arity).to_string(),
                last.term_text(gen.src.unwrap()),
                last.term_text(gen.tgt.unwrap()),
            ));
        }
    }
    assert_eq!(filled.len(), expected, "one filler per pair, none doubled");

    let pairs = admissible_pairs(&mut one, 1, &b);
    assert_eq!(pairs.len(), expected);
    for pair in &pairs {
        let key = (
            pair.arity.to_string(),
            one.term_text(pair.f),
            one.term_text(pair.g),
        );
        assert!(filled.contains(&key), "unfilled pair {key:?}");
    }
    for pair in pairs.iter().step_by(997) {
        lookup_lift(&mut last, pair).expect("sampled pair resolves by lookup");
    }
}

#[test]
fn fc_one_stage_carries_the_same_family_ic_partitions() {
    let b = small(3, 2);
    let fc = build_tower(TowerMode::Fc, 1, &b).unwrap();
    let ic = build_tower(TowerMode::Ic, 2, &b).unwrap();

    let keyset = |p: &Presentation, dim: u8| {
        let mut keys: Vec<(String, String, String)> = p
            .gen_indices()
            .map(|g| p.generator(g))
            .filter(|gen| gen.target_dim == dim)
            .map(|gen| {
                (
                    p.table(gen.arity).to_string(),
                    p.term_text(gen.src.unwrap()),
                    p.term_text(gen.tgt.unwrap()),
                )
            })
            .collect();
        keys.sort();
        keys
    };
    for dim in 1..=2 {
        assert_eq!(
            keyset(fc.last(), dim),
            keyset(ic.last(), dim),
            "dimension-{dim} lifting problems must agree"
        );
    }
    for g in ic.last().gen_indices() {
        let gen = ic.last().generator(g);
        assert_eq!(
            gen.stage, gen.target_dim as u32,
            "an ic stage only works one dimension"
        );
    }
}

#[test]
fn fc_stages_refill_while_ic_stages_finish_dimensions() {
    let b = small(3, 2);
    let fc = build_tower(TowerMode::Fc, 2, &b).unwrap();
    assert_eq!(stable_dim(&fc, 0), 1);
    assert_eq!(stable_dim(&fc, 1), 1);
    let dim1_gens = |p: &Presentation| {
        p.gen_indices()
            .filter(|&g| p.generator(g).target_dim == 1)
            .count()
    };
    assert!(
        dim1_gens(fc.stage(2)) > dim1_gens(fc.stage(1)),
        "a later fc stage refills dimension 1"
    );

    let ic = build_tower(TowerMode::Ic, 2, &b).unwrap();
    assert_eq!(stable_dim(&ic, 0), 1);
    assert_eq!(stable_dim(&ic, 1), 2);
    assert_eq!(stable_dim(&ic, 2), 3);

    let term_lists = |p: &Presentation, dim: u8| {
        let mut out = Vec::new();
        let mut p = p.clone();
        for q in TableOfDimensions::enumerate(b.max_dim + 1, b.max_arity_len) {
            let qa = p.intern_table(&q);
            for t in p.enumerate_terms(qa, dim, b.max_depth) {
                out.push(p.term_text(t));
            }
        }
        out
    };
    for m in 0..2 {
        if m < stable_dim(&ic, 1) {
            assert_eq!(
                term_lists(ic.stage(1), m),
                term_lists(ic.stage(2), m),
                "dimension-{m} terms must be final from stage 1 on"
            );
        }
    }

    let arrow: TableOfDimensions = "(1)".parse().unwrap();
    let dim2_over_arrow = |p: &Presentation| {
        let mut p = p.clone();
        let qa = p.intern_table(&arrow);
        p.enumerate_terms(qa, 2, b.max_depth).len()
    };
    assert_eq!(dim2_over_arrow(ic.stage(1)), 0);
    assert!(
        dim2_over_arrow(ic.stage(2)) > 0,
        "the second stage opens dimension 2"
    );
}

#[test]
fn strict_towers_collapse_parallel_one_cells() {
    let b = small(3, 1);
    let strict = build_tower(TowerMode::Strict, 1, &b).unwrap();
    let mut last = strict.last().clone();
    let arrow: TableOfDimensions = "(1)".parse().unwrap();
    let qa = last.intern_table(&arrow);
    last.enumerate_terms(qa, 1, 2);
    last.saturate(b.max_dim);
    assert_eq!(
        last.class_count(qa, 1),
        4,
        "one class per ordered vertex pair"
    );

    let ic = build_tower(TowerMode::Ic, 1, &b).unwrap();
    let mut free = ic.last().clone();
    let qa_free = free.intern_table(&arrow);
    free.enumerate_terms(qa_free, 1, 2);
    assert!(
        free.class_count(qa_free, 1) > 4,
        "free lifts stay distinct where unique ones collapse"
    );
}

#[test]
fn quotient_to_the_unique_flavor_is_a_theory_map() {
    let b = FragmentBounds::new(3, 2, 1, 4);
    let ic = build_tower(TowerMode::Ic, 2, &b).unwrap();
    let strict = build_tower(TowerMode::Strict, 2, &b).unwrap();
    let dom = ic.last();
    let mut cod = strict.last().clone();

    let mut quotient = TheoryMorphism::new();
    for g in dom.gen_indices() {
        let gen = dom.generator(g).clone();
        let src = quotient.apply(dom, &mut cod, gen.src.unwrap()).unwrap();
        let tgt = quotient.apply(dom, &mut cod, gen.tgt.unwrap()).unwrap();
        cod.saturate(b.max_dim);
        let pair = AdmissiblePair {
            arity: dom.table(gen.arity).clone(),
            dim: gen.target_dim - 1,
            f: src,
            g: tgt,
        };
        let image = lookup_lift(&mut cod, &pair)
            .expect("every free lift lands on a unique-flavor representative");
        quotient.assign(gen.id, image);
    }
    quotient.check(dom, &mut cod).unwrap();
}

#[test]
fn lookup_lift_reports_bound_exhaustion() {
    let mut t = base();
    let point: TableOfDimensions = "(0)".parse().unwrap();
    let qa = t.intern_table(&point);
    let v = parse_term(&mut t, qa, "cell(0,0)").unwrap();
    let pair = AdmissiblePair {
        arity: point,
        dim: 0,
        f: v,
        g: v,
    };
    let err = lookup_lift(&mut t, &pair).unwrap_err();
    assert!(matches!(err, EngineError::MissingLift { .. }));
    assert!(err.to_string().contains("enlarge"));
}

#[test]
fn towers_refuse_more_stages_than_dimensions() {
    let err = build_tower(TowerMode::Ic, 3, &small(3, 2)).unwrap_err();
    assert!(matches!(
        err,
        EngineError::StageCount {
            requested: 3,
            max_dim: 2
        }
    ));
}

#[test]
fn repeated_builds_are_byte_identical() {
    let b = small(3, 2);
    let first = build_tower(TowerMode::Strict, 2, &b).unwrap();
    let second = build_tower(TowerMode::Strict, 2, &b).unwrap();
    assert_eq!(serialize_manifest(&first), serialize_manifest(&second));
    for (a, c) in first.stages().iter().zip(second.stages()) {
        assert_eq!(serialize_presentation(a), serialize_presentation(c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn admissible_pairs_are_parallel_and_deterministic(
        k in 0u8..2,
        len in prop::sample::select(vec![1usize, 3, 5]),
        depth in 0u16..2,
    ) {
        let b = FragmentBounds::new(len, 2, depth, 2);
        let mut t1 = base();
        let mut t2 = base();
        let pairs1 = admissible_pairs(&mut t1, k, &b);
        let pairs2 = admissible_pairs(&mut t2, k, &b);
        let texts1: Vec<String> = pairs1.iter().map(|p| p.text(&t1)).collect();
        let texts2: Vec<String> = pairs2.iter().map(|p| p.text(&t2)).collect();
        prop_assert_eq!(&texts1, &texts2);
        for pair in &pairs1 {
            prop_assert!(pair.arity.height() <= k + 1);
            if k >= 1 {
                prop_assert!(t1.parallel(pair.f, pair.g));
            }
        }
    }
}
