use cliffq::verifier::{run_suite, CheckConfig, Status, Strategy, CHECK_NAMES};
use cliffq::{Error, Signature};

fn cfg(p: usize, q: usize, seed: u64) -> CheckConfig {
    let mut c = CheckConfig::new(Signature::new(p, q).unwrap());
    c.seed = seed;
    c
}

#[test]
fn axioms_and_grades() {
    let reports = run_suite(&["axioms", "grades"], &cfg(2, 2, 42)).unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r.status == Status::Pass));
}

#[test]
fn unknown_check() {
    assert_eq!(run_suite(&["bogus"], &cfg(2, 2, 0)), Err(Error::UnknownCheck("bogus".into())));
}

#[test]
fn invalid_config() {
    let mut c = cfg(2, 2, 0);
    c.strategy = Strategy::Random;
    c.samples = 0;
    assert!(matches!(run_suite(&["axioms"], &c), Err(Error::InvalidConfig(_))));
}

#[test]
fn groups_at_euclidean_four() {
    let mut c = cfg(4, 0, 1);
    c.samples = 20;
    let reports = run_suite(&["groups"], &c).unwrap();
    assert_eq!(reports.len(), 4);
    for r in &reports {
        assert_eq!(r.status, Status::Pass, "{r}");
    }
}

#[test]
fn random_runs_are_reproducible_and_order_independent() {
    let mut c = cfg(3, 2, 7);
    c.strategy = Strategy::Random;
    c.samples = 3;
    let names = ["lie-quaternion", "subalgebras", "groups"];
    let a = run_suite(&names, &c).unwrap();
    let b = run_suite(&names, &c).unwrap();
    assert_eq!(a, b);
    let mut reversed = run_suite(&["groups", "subalgebras", "lie-quaternion"], &c).unwrap();
    reversed.sort_by(|x, y| x.name.cmp(&y.name));
    let mut sorted = a.clone();
    sorted.sort_by(|x, y| x.name.cmp(&y.name));
    assert_eq!(sorted, reversed);
    c.seed = 8;
    let other = run_suite(&["groups"], &c).unwrap();
    assert_ne!(other, run_suite(&["groups"], &cfg_with(c.clone(), 7)).unwrap());
}

fn cfg_with(mut c: CheckConfig, seed: u64) -> CheckConfig {
    c.seed = seed;
    c
}

#[test]
fn everything_passes_at_small_signatures() {
    for (p, q) in [(1, 0), (0, 2), (2, 1), (2, 2), (1, 3)] {
        let mut c = cfg(p, q, 3);
        c.samples = 10;
        for r in run_suite(&["all"], &c).unwrap() {
            assert!(r.passed(), "({p},{q}) {r}");
        }
    }
}

#[test]
fn every_listed_name_runs() {
    let mut c = cfg(1, 1, 0);
    c.samples = 2;
    for name in CHECK_NAMES {
        assert!(!run_suite(&[*name], &c).unwrap().is_empty(), "{name}");
    }
}
