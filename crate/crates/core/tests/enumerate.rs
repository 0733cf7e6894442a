//! Genus-2 and genus-3 walks: counts, graph properties, checkpointing and
//! the hyperelliptic search.

mod common;

use std::collections::HashSet;

use superspecial::classify::VarietyKind;
use superspecial::cli::curves_jsonl;
use superspecial::enumerate::{
    classify_jacobian, enumerate_dim3, family_model, find_hyperelliptic, known_family, EnumConfig,
    FindMethod, SeedOrder,
};
use superspecial::invariants::shioda;
use superspecial::symplectic::coset_reps;
use superspecial::{cartier_manin_hyperelliptic, fingerprint, isogeny_step, Error};

fn run(p: u64, cfg: &EnumConfig) -> superspecial::EnumerationResult {
    enumerate_dim3(common::field(p), cfg).unwrap()
}

#[test]
fn small_primes_match_known_counts() {
    for (p, want) in [(11, (10, 1, 4, 4, 19)), (13, (18, 1, 3, 1, 23))] {
        let r = run(p, &EnumConfig::default());
        let c = r.counts;
        assert_eq!((c.l1, c.l2, c.l3, c.l4, c.total), want, "p={p}");
        assert_eq!(r.stats.edges, 135 * r.stats.nodes_processed);
        assert_eq!(r.stats.nodes_processed, c.total);
        assert!(!r.stopped_early);
        assert!(r.stats.compl <= c.total);
    }
}

#[test]
fn hyperelliptic_classes_contain_known_families() {
    for (p, family) in [(11, "x^7-x"), (13, "x^7-1")] {
        let f = common::field(p);
        let r = run(p, &EnumConfig::default());
        let target = fingerprint(&shioda(&family_model(f, family).unwrap()).unwrap()).unwrap();
        assert_eq!(r.keys(VarietyKind::Hyperelliptic3), vec![target.hex()]);
    }
}

#[test]
fn closure_under_reprocessing() {
    let r = run(11, &EnumConfig::default());
    let seen: HashSet<&str> = r.nodes.iter().map(|n| n.key.as_str()).collect();
    let table = coset_reps(3).unwrap();
    for k in [0, 3, 7, 12, 18] {
        for plan in table.plans() {
            let t = isogeny_step(&plan.apply(&r.nodes[k].theta)).unwrap();
            let kind = superspecial::kind_of(3, t.n_van()).unwrap();
            if kind.is_jacobian() {
                let (_, _, fp) = classify_jacobian(&t, kind, [false; 3]).unwrap();
                assert!(seen.contains(fp.hex()));
            }
        }
    }
}

#[test]
fn seed_order_does_not_change_counts() {
    let a = run(13, &EnumConfig::default());
    let b = run(
        13,
        &EnumConfig {
            seed_order: SeedOrder::Reversed,
            ..EnumConfig::default()
        },
    );
    assert_eq!(a.counts, b.counts);
    assert_eq!(
        a.keys(VarietyKind::PlaneQuartic),
        b.keys(VarietyKind::PlaneQuartic)
    );
}

#[test]
fn batches_and_threads_do_not_change_output() {
    let base = run(13, &EnumConfig::default());
    for (threads, batch) in [(1, 1), (3, 5), (4, 1000)] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        let cfg = EnumConfig {
            batch,
            ..EnumConfig::default()
        };
        let r = pool.install(|| run(13, &cfg));
        assert_eq!(curves_jsonl(&r).unwrap(), curves_jsonl(&base).unwrap());
        assert_eq!(r.stats.compl, base.stats.compl);
    }
}

#[test]
fn stop_at_count_stops_early() {
    let r = run(
        13,
        &EnumConfig {
            stop_at_count: Some(8),
            batch: 4,
            ..EnumConfig::default()
        },
    );
    assert!(r.stopped_early);
    assert!(r.counts.l1 + r.counts.l2 >= 8);
    assert!(r.stats.nodes_processed < r.counts.total);
    let full = run(
        13,
        &EnumConfig {
            stop_at_count: Some(19),
            ..EnumConfig::default()
        },
    );
    assert_eq!(full.counts.l1 + full.counts.l2, 19);
}

#[test]
fn checkpoint_resume_reproduces_fresh_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ck.json");
    let fresh = run(13, &EnumConfig::default());
    for stop in [1, 6, 12, 18] {
        let _ = std::fs::remove_file(&path);
        let cfg = EnumConfig {
            checkpoint: Some(path.clone()),
            checkpoint_every: 2,
            batch: 3,
            ..EnumConfig::default()
        };
        let partial = run(
            13,
            &EnumConfig {
                stop_at_count: Some(stop),
                ..cfg.clone()
            },
        );
        assert!(partial.stopped_early || stop > 18);
        assert!(path.exists());
        let resumed = run(13, &cfg);
        assert_eq!(resumed.counts, fresh.counts, "stop={stop}");
        assert_eq!(
            curves_jsonl(&resumed).unwrap(),
            curves_jsonl(&fresh).unwrap()
        );
        assert_eq!(resumed.stats.nodes_processed, fresh.stats.nodes_processed);
        assert_eq!(resumed.stats.compl, fresh.stats.compl);
    }
}

#[test]
fn bad_checkpoints_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ck.json");
    std::fs::write(&path, b"{not json").unwrap();
    let cfg = EnumConfig {
        checkpoint: Some(path.clone()),
        ..EnumConfig::default()
    };
    assert!(matches!(
        enumerate_dim3(common::field(11), &cfg),
        Err(Error::Checkpoint(_))
    ));
    let _ = std::fs::remove_file(&path);
    run(
        11,
        &EnumConfig {
            stop_at_count: Some(3),
            ..cfg.clone()
        },
    );
    assert!(matches!(
        enumerate_dim3(common::field(13), &cfg),
        Err(Error::Checkpoint(_))
    ));
    let mut v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    v["version"] = 99.into();
    std::fs::write(&path, v.to_string()).unwrap();
    assert!(matches!(
        enumerate_dim3(common::field(11), &cfg),
        Err(Error::Checkpoint(_))
    ));
}

#[test]
fn emitted_invariants_are_recorded() {
    let r = run(
        11,
        &EnumConfig {
            emit_invariants: true,
            ..EnumConfig::default()
        },
    );
    for n in r.nodes.iter().filter(|n| n.kind.is_jacobian()) {
        let inv = n.invariants.as_ref().unwrap();
        assert_eq!(fingerprint(inv).unwrap().hex(), n.key);
    }
    let line = curves_jsonl(&r).unwrap();
    assert!(line.lines().next().unwrap().contains("\"invariants\""));
}

#[test]
fn find_hyperelliptic_families_and_walk() {
    let f11 = common::field(11);
    let found = find_hyperelliptic(f11, 0, 1000, false).unwrap();
    assert_eq!(
        found.method,
        FindMethod::Family {
            family: "x^7-x".into()
        }
    );
    let f13 = common::field(13);
    let found = find_hyperelliptic(f13, 0, 1000, false).unwrap();
    assert_eq!(
        found.method,
        FindMethod::Family {
            family: "x^7-1".into()
        }
    );
    assert_eq!(known_family(common::field(17)), None);
    for seed in [0, 1, 2] {
        let found = find_hyperelliptic(common::field(17), seed, 100_000, false).unwrap();
        assert!(matches!(found.method, FindMethod::Walk { .. }));
        assert!(cartier_manin_hyperelliptic(&found.model.rhs(), 3)
            .unwrap()
            .is_zero());
        let again = find_hyperelliptic(common::field(17), seed, 100_000, false).unwrap();
        assert_eq!(again.model, found.model);
    }
    assert!(matches!(
        find_hyperelliptic(common::field(17), 0, 0, false),
        Err(Error::GaveUp(0))
    ));
}

#[test]
fn walk_at_a_larger_prime() {
    let f = common::field(1009);
    let found = find_hyperelliptic(f, 7, 1_000_000, true).unwrap();
    assert!(cartier_manin_hyperelliptic(&found.model.rhs(), 3)
        .unwrap()
        .is_zero());
}
