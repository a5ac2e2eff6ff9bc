//! Model-level invariants on generated scenarios: frame coherence, observer
//! speed limits, four-momentum geometry and file round-trips.

use reldyn::axioms::generators;
use reldyn::dynamics;
use reldyn::minkowski::{mink_len, parallel};
use reldyn::quantity::Quantity;
use reldyn::scenario::{self, BodyId};

#[test]
fn frame_coherence_of_worldlines() {
    let s = generators::random_standard_model(11, 4).unwrap();
    let observers: Vec<BodyId> = s.observers().cloned().collect();
    for k in &observers {
        for h in &observers {
            let w = s.worldview_transform(k, h).unwrap();
            for body in &s.bodies {
                let direct = s.worldline_in(h, &body.id).unwrap();
                let via_k = w
                    .apply_worldline(&s.worldline_in(k, &body.id).unwrap())
                    .unwrap();
                assert_eq!(direct, via_k, "body {} via {k} vs {h}", body.id);
            }
        }
    }
}

#[test]
fn no_observer_outruns_light() {
    for seed in [3u64, 4, 5] {
        let s = generators::random_standard_model(seed, 3).unwrap();
        let observers: Vec<BodyId> = s.observers().cloned().collect();
        for k in &observers {
            for h in &observers {
                if let Some(speed) = s.speed(k, h).unwrap() {
                    assert!(speed < Quantity::one(), "{h} too fast for {k}");
                }
            }
        }
    }
}

#[test]
fn four_momentum_is_parallel_to_worldlines_with_rest_mass_length() {
    let s = generators::random_standard_model(17, 3).unwrap();
    let observers: Vec<BodyId> = s.observers().cloned().collect();
    for body in &s.bodies {
        let rest_mass = s.rest_mass(&body.id).unwrap();
        for k in &observers {
            let p = match dynamics::four_momentum(&s, k, &body.id).unwrap() {
                Some(p) => p,
                None => continue,
            };
            let wl = s.worldline_in(k, &body.id).unwrap();
            assert!(
                parallel(p.as_point(), &wl.carrier().direction),
                "momentum of {} not parallel for {k}",
                body.id
            );
            if let Some(m0) = &rest_mass {
                assert_eq!(&mink_len(p.as_point()), m0, "invariant mass of {}", body.id);
            }
        }
    }
}

#[test]
fn worldline_intersections_lie_on_center_lines() {
    let s = generators::random_standard_model(23, 3).unwrap();
    let k = BodyId::new("obs0");
    for (b, c, _d, vertex) in dynamics::find_inecoll_triples(&s, &k).unwrap() {
        let center = dynamics::center2_at(&s, &k, &b, &c, vertex.time())
            .unwrap()
            .expect("both bodies exist at the vertex instant");
        assert_eq!(center, vertex);
        let line = dynamics::center_line2(&s, &k, &b, &c).unwrap();
        assert_eq!(line.at_time(vertex.time()), Some(vertex));
    }
}

#[test]
fn generated_models_round_trip_through_files() {
    let dir = std::env::temp_dir().join("reldyn-roundtrip-test");
    std::fs::create_dir_all(&dir).unwrap();
    for seed in 0..6u64 {
        let s = generators::random_standard_model(seed, if seed % 2 == 0 { 3 } else { 4 }).unwrap();
        let path = dir.join(format!("model-{seed}.toml"));
        scenario::save_scenario(&s, &path).unwrap();
        let back = scenario::load_scenario(&path).unwrap();
        assert_eq!(s, back, "seed {seed}");
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn serialization_is_deterministic() {
    let a = generators::random_standard_model(99, 3).unwrap();
    let b = generators::random_standard_model(99, 3).unwrap();
    assert_eq!(
        scenario::scenario_to_string(&a),
        scenario::scenario_to_string(&b)
    );
}
