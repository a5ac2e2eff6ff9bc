//! Acceptance suite. Each test covers one numbered criterion, checks it at
//! the stated tolerance (exact equality throughout: the backend is the exact
//! kernel) and prints one pass/fail line. Run with `--nocapture` to see the
//! lines; the per-criterion time budgets are asserted.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reldyn::axioms::{self, generators, Verdict};
use reldyn::dynamics;
use reldyn::minkowski::{is_slope_one, mink_dist, Point};
use reldyn::quantity::Quantity;
use reldyn::scenario::{self, BodyId};

fn q(s: &str) -> Quantity {
    s.parse().unwrap()
}

fn pass(criterion: &str, label: &str, elapsed: Duration) {
    println!("criterion {criterion}: PASS ({label}, {elapsed:.2?})");
}

fn random_quantity(rng: &mut ChaCha8Rng, depth: usize) -> Quantity {
    if depth == 0 || rng.gen_bool(0.4) {
        return Quantity::ratio(rng.gen_range(-30i64..=30), rng.gen_range(1i64..=9));
    }
    match rng.gen_range(0..4) {
        0 => random_quantity(rng, depth - 1) + random_quantity(rng, depth - 1),
        1 => random_quantity(rng, depth - 1) * random_quantity(rng, depth - 1),
        2 => random_quantity(rng, depth - 1)
            .abs()
            .sqrt()
            .expect("absolute values have square roots"),
        _ => -random_quantity(rng, depth - 1),
    }
}

#[test]
fn criterion_1_field_kernel_identities() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xF1E1D);
    let mut checks = 0usize;
    while checks < 10_000 {
        let a = random_quantity(&mut rng, 2);
        let b = random_quantity(&mut rng, 2);
        let c = random_quantity(&mut rng, 2);
        // associativity
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        // distributivity
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        // sqrt squares back, nonnegative branch
        let root = a.abs().sqrt().unwrap();
        assert!(!root.is_negative());
        assert_eq!(&root * &root, a.abs());
        // order monotonicity
        if a < b {
            assert!(&a + &c < &b + &c);
            if c.is_positive() {
                assert!(&a * &c < &b * &c);
            }
        } else {
            assert!(&b + &c <= &a + &c);
        }
        checks += 4;
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(30),
        "field kernel run took {elapsed:?}"
    );
    pass("1", "10000 exact field identities", elapsed);
}

#[test]
fn criterion_2_worldview_transforms_are_poincare() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xF2);
    for model in 0..100u64 {
        let dim = if model % 2 == 0 { 3 } else { 4 };
        let s = generators::random_standard_model(1000 + model, dim).unwrap();
        let observers: Vec<BodyId> = s.observers().cloned().collect();
        for k in &observers {
            for h in &observers {
                let w = s.worldview_transform(k, h).unwrap();
                assert!(w.is_poincare(), "model {model}: {k} -> {h} not Poincaré");
                for _ in 0..20 {
                    let mut point = || {
                        Point::new(
                            (0..dim)
                                .map(|_| {
                                    Quantity::ratio(
                                        rng.gen_range(-9i64..=9),
                                        rng.gen_range(1i64..=3),
                                    )
                                })
                                .collect(),
                        )
                    };
                    let p = point();
                    let r = point();
                    assert_eq!(
                        mink_dist(&w.apply(&p), &w.apply(&r)).unwrap(),
                        mink_dist(&p, &r).unwrap(),
                        "model {model}: distance not preserved {k} -> {h}"
                    );
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(30),
        "worldview run took {elapsed:?}"
    );
    pass("2", "100 models, all pairwise transforms exact", elapsed);
}

#[test]
fn criterion_3_mass_formula_and_construction() {
    let start = Instant::now();
    for model in 0..100u64 {
        let dim = if model % 2 == 0 { 3 } else { 4 };
        let s = generators::random_standard_model(2000 + model, dim).unwrap();
        let report = axioms::verify_mass_formula(&s).unwrap();
        assert_eq!(
            report.verdict,
            Verdict::Holds,
            "model {model}:\n{}",
            report.render_text()
        );
    }
    // the pinned pair and 24 seeded ones
    let pinned = axioms::verify_mass_formula_construction(&q("1"), &q("3/5")).unwrap();
    assert_eq!(pinned.verdict, Verdict::Holds);
    assert_eq!(
        dynamics::rel_mass_from_rest(&q("1"), &q("3/5")).unwrap(),
        q("5/4")
    );
    let mut rng = ChaCha8Rng::seed_from_u64(0xF3);
    for _ in 0..24 {
        let m0 = Quantity::ratio(rng.gen_range(1i64..=8), rng.gen_range(1i64..=4));
        let denom = rng.gen_range(2i64..=9);
        let v = Quantity::ratio(rng.gen_range(1..denom), denom);
        let report = axioms::verify_mass_formula_construction(&m0, &v).unwrap();
        assert_eq!(
            report.verdict,
            Verdict::Holds,
            "construction for ({m0}, {v}):\n{}",
            report.render_text()
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "mass formula run took {elapsed:?}"
    );
    pass("3", "formula on 100 models + 25 constructions", elapsed);
}

#[test]
fn criterion_4_equivalence_batch_has_zero_disagreements() {
    let start = Instant::now();
    let mut corrupted = 0u64;
    for index in 0..1000u64 {
        let (s, kind) = generators::equivalence_batch_scenario(0xF4, index).unwrap();
        if kind.is_some() {
            corrupted += 1;
        }
        let report = axioms::verify_conservation_equivalence(&s).unwrap();
        assert_eq!(
            report.verdict,
            Verdict::Holds,
            "disagreement at index {index} ({kind:?}):\n{}",
            report.render_text()
        );
    }
    assert_eq!(corrupted, 500, "the batch is half corrupted");
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(120),
        "equivalence batch took {elapsed:?}"
    );
    pass("4", "1000 scenarios, four formulations agree", elapsed);
}

#[test]
fn criterion_5_independence_counterexamples() {
    let start = Instant::now();
    let cases = [
        (
            generators::generate_cons_mass_counterexample().unwrap(),
            "ConsMass",
        ),
        (
            generators::generate_cons_moment_counterexample().unwrap(),
            "ConsMoment",
        ),
    ];
    for (s, broken_name) in &cases {
        for name in ["AxSelf", "AxEv", "AxSimDist", "AxSpeed", "AxCenter"] {
            let report = axioms::run_check(s, name).unwrap().unwrap();
            assert_eq!(
                report.verdict,
                Verdict::Holds,
                "{name} on the {broken_name} counterexample:\n{}",
                report.render_text()
            );
        }
        for name in ["AxPh", "AxThEx", "AxForallInecoll", "AxExistsInecoll"] {
            let report = axioms::run_check(s, name).unwrap().unwrap();
            assert_eq!(report.verdict, Verdict::WitnessedOnly, "{name}");
        }
        let broken = axioms::run_check(s, broken_name).unwrap().unwrap();
        assert_eq!(broken.verdict, Verdict::Fails, "{broken_name} must fail");
    }
    pass("5", "both counterexamples verified mechanically", start.elapsed());
}

fn run_binary(args: &[&str]) -> (String, bool) {
    let output = Command::new(env!("CARGO_BIN_EXE_reldyn"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&output.stdout).into_owned(),
        output.status.success(),
    )
}

#[test]
fn criterion_6_mass_creation_through_the_cli() {
    let start = Instant::now();
    let (stdout, ok) = run_binary(&["resolve", "1", "3/5", "1", "0"]);
    assert!(ok, "resolve failed:\n{stdout}");
    let rest_line = stdout
        .lines()
        .find(|l| l.starts_with("rest mass"))
        .expect("rest mass line");
    let literal = rest_line
        .split('=')
        .nth(1)
        .unwrap()
        .split("(~")
        .next()
        .unwrap()
        .trim();
    let value: Quantity = literal.parse().expect("printed literal parses");
    assert_eq!(value, q("3*sqrt(2)/2"), "printed {literal}");
    assert!(value > q("2"));
    assert!(rest_line.contains("2.12132"), "line was: {rest_line}");

    let (stdout, ok) = run_binary(&["demo", "emc2"]);
    assert!(ok, "emc2 demo failed:\n{stdout}");
    assert!(
        stdout.contains("rest mass 5/2"),
        "combined rest mass missing:\n{stdout}"
    );
    assert!(stdout.contains("exceeds the input total 2"));
    pass("6", "resolve and emc2 print exact created mass", start.elapsed());
}

#[test]
fn criterion_7_mass_ratio_observer_dependence() {
    let start = Instant::now();
    let (ratio_here, ratio_median) =
        dynamics::mass_dependence_witness(&q("1"), &q("1"), &q("3/5"), &q("0")).unwrap();
    assert_eq!(ratio_here, q("5/4"));
    assert_eq!(ratio_median, q("1"));
    assert_ne!(ratio_here, ratio_median);
    pass("7", "ratios 5/4 vs 1, exactly unequal", start.elapsed());
}

#[test]
fn criterion_8_round_trip_and_determinism() {
    let start = Instant::now();
    let dir = std::env::temp_dir().join("reldyn-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    for seed in 0..50u64 {
        let dim = if seed % 2 == 0 { 3 } else { 4 };
        let s = generators::random_standard_model(3000 + seed, dim).unwrap();
        let path = dir.join(format!("rt-{seed}.toml"));
        scenario::save_scenario(&s, &path).unwrap();
        let back = scenario::load_scenario(&path).unwrap();
        assert_eq!(s, back, "round trip failed for seed {seed}");
    }
    // identical seeds give byte-identical machine summaries
    let model_path = dir.join("determinism.toml");
    let model_path_str = model_path.to_str().unwrap();
    let (_, ok) = run_binary(&["generate", "--seed", "9", "-o", model_path_str]);
    assert!(ok);
    let (first, ok1) = run_binary(&["check", model_path_str, "--format", "summary"]);
    let (second, ok2) = run_binary(&["check", model_path_str, "--format", "summary"]);
    assert!(ok1 && ok2);
    assert_eq!(first, second, "summaries differ between identical runs");
    let (demo1, _) = run_binary(&["demo", "massdepend", "--format", "summary"]);
    let (demo2, _) = run_binary(&["demo", "massdepend", "--format", "summary"]);
    assert_eq!(demo1, demo2);
    std::fs::remove_dir_all(&dir).ok();
    pass("8", "50 round trips, byte-identical summaries", start.elapsed());
}

#[test]
fn criterion_9_photon_conventions() {
    let start = Instant::now();
    for seed in 0..20u64 {
        let dim = if seed % 2 == 0 { 3 } else { 4 };
        let s = generators::random_standard_model(4000 + seed, dim).unwrap();
        let observers: Vec<BodyId> = s.observers().cloned().collect();
        let mut photons = 0;
        for body in &s.bodies {
            if body.kind != reldyn::scenario::BodyKind::Photon {
                continue;
            }
            photons += 1;
            for k in &observers {
                let wl = s.worldline_in(k, &body.id).unwrap();
                let (p, r) = wl.sample_pair();
                assert!(is_slope_one(&p, &r).unwrap(), "photon {} for {k}", body.id);
                let momentum = dynamics::four_momentum(&s, k, &body.id)
                    .unwrap()
                    .expect("photons have defined velocities");
                assert_eq!(
                    momentum.invariant_mass(),
                    Quantity::zero(),
                    "photon {} for {k}",
                    body.id
                );
            }
        }
        assert!(photons > 0, "model {seed} has a photon");
    }
    pass("9", "slope-1 world-lines, null four-momenta", start.elapsed());
}
