use std::collections::BTreeSet;
use std::sync::OnceLock;

use globular_core::TableOfDimensions;
use soa_engine::{build_tower, FragmentBounds, Tower, TowerMode};
use strict_oracle::{crosscheck_strict, OracleError};

fn table(text: &str) -> TableOfDimensions {
    text.parse().unwrap()
}

fn bounds() -> FragmentBounds {
    FragmentBounds::new(3, 3, 2, 4)
}

fn strict_tower() -> &'static Tower {
    static TOWER: OnceLock<Tower> = OnceLock::new();
    TOWER.get_or_init(|| build_tower(TowerMode::Strict, 2, &bounds()).unwrap())
}

#[test]
fn saturated_class_counts_agree_with_the_closed_form() {
    let tower = strict_tower();

    let report = crosscheck_strict(&tower, &table("(1)"), 1, 2).unwrap();
    assert!(report.pass(), "{report}");
    assert_eq!(report.verdicts.len(), 1);
    assert_eq!(report.verdicts[0].left, "4");

    let report = crosscheck_strict(&tower, &table("(1,0,1)"), 1, 2).unwrap();
    assert!(report.pass(), "{report}");
    assert_eq!(report.verdicts[0].left, "9");

    let report = crosscheck_strict(&tower, &table("(1)"), 2, 2).unwrap();
    assert!(report.pass(), "{report}");
    assert_eq!(report.verdicts[0].left, "4");
}

#[test]
fn dimensions_above_the_stable_cut_are_refused() {
    let tower = build_tower(TowerMode::Strict, 1, &bounds()).unwrap();
    assert!(crosscheck_strict(&tower, &table("(1)"), 1, 2).is_ok());
    let err = crosscheck_strict(&tower, &table("(1)"), 2, 2).unwrap_err();
    assert!(matches!(err, OracleError::Unstable { stable: 2, .. }));
}

#[test]
fn weak_towers_are_refused() {
    let tower = build_tower(TowerMode::Ic, 1, &bounds()).unwrap();
    let err = crosscheck_strict(&tower, &table("(1)"), 1, 2).unwrap_err();
    assert!(matches!(err, OracleError::Mode { .. }));
}

#[test]
fn unconverged_censuses_are_reported_open_not_failed() {
    let report = crosscheck_strict(strict_tower(), &table("(1,0,1)"), 1, 0).unwrap();
    assert!(report.verdicts.is_empty());
    assert!(report.pass());
    assert!(report.to_string().contains("status=open"));
}

#[test]
fn reports_are_deterministic() {
    let first = crosscheck_strict(strict_tower(), &table("(1)"), 1, 2).unwrap().to_string();
    let second = crosscheck_strict(strict_tower(), &table("(1)"), 1, 2).unwrap().to_string();
    assert_eq!(first, second);
    assert!(first.contains("status=converged"));
}

#[test]
fn class_counts_shrink_with_stages_and_stabilize() {
    let tower = build_tower(TowerMode::Strict, 3, &bounds()).unwrap();
    let q = table("(1)");
    let counts: Vec<usize> = (1..=3)
        .map(|stage| {
            let mut t = tower.stage(stage).clone();
            let qa = t.intern_table(&q);
            t.enumerate_terms(qa, 1, 2);
            t.saturate(1);
            let reps: BTreeSet<_> = t
                .enumerate_terms(qa, 1, 2)
                .into_iter()
                .map(|x| t.find(x))
                .collect();
            reps.len()
        })
        .collect();
    assert!(counts.windows(2).all(|w| w[1] <= w[0]), "{counts:?}");
    assert_eq!(counts[1], counts[2], "{counts:?}");
    assert_eq!(*counts.last().unwrap(), 4);
}
