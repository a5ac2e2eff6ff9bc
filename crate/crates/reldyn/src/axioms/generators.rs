//! Scenario builders: consistent standard models in which every axiom
//! holds, seeded random variants, deliberately corrupted scenarios for the
//! equivalence batch, and the two independence counterexamples.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::AxiomsError;
use crate::dynamics::{resolve_collision, BodyState};
use crate::minkowski::{euclid_len, Line, Point, Worldline};
use crate::quantity::Quantity;
use crate::scenario::{
    Body, BodyId, BodyKind, CollisionEvent, ExistsInecollDemand, InecollDemand, Scenario,
    Witnesses,
};
use crate::transforms::{boost_for_velocity, AffineMap};

/// A free inertial body with a full-line world-line.
#[derive(Debug, Clone)]
pub struct FreeBodySpec {
    pub rest_mass: Quantity,
    pub velocity: Vec<Quantity>,
    /// A world point the world-line passes through.
    pub through: Point,
}

/// A binary inelastic collision to realize: two incoming bodies with given
/// rest masses and velocities, meeting at the vertex. The outgoing body is
/// produced by four-momentum addition.
#[derive(Debug, Clone)]
pub struct CollisionSpec {
    pub rest_mass1: Quantity,
    pub velocity1: Vec<Quantity>,
    pub rest_mass2: Quantity,
    pub velocity2: Vec<Quantity>,
    pub vertex: Point,
}

/// A photon world-line through a point with a unit spatial direction.
#[derive(Debug, Clone)]
pub struct PhotonSpec {
    pub through: Point,
    pub direction: Vec<Quantity>,
}

#[derive(Debug, Clone, Default)]
pub struct StandardModelSpec {
    pub dimension: usize,
    /// Velocities of the observers besides the world observer; each gets a
    /// pure boost frame and a world-line through the origin.
    pub observer_velocities: Vec<Vec<Quantity>>,
    pub free_bodies: Vec<FreeBodySpec>,
    pub collisions: Vec<CollisionSpec>,
    pub photons: Vec<PhotonSpec>,
}

fn direction_from_velocity(v: &[Quantity]) -> Point {
    let mut coords = vec![Quantity::one()];
    coords.extend_from_slice(v);
    Point::new(coords)
}

fn full_line_through(through: &Point, velocity: &[Quantity]) -> Worldline {
    let carrier = Line::new(through.clone(), direction_from_velocity(velocity))
        .expect("time component 1 keeps the direction nonzero");
    Worldline::full(carrier).expect("unbounded world-lines always build")
}

/// Builds the scenario described by the spec: boost frames, masses from the
/// dilation formula, collisions resolved by four-momentum addition, photon
/// masses transported covariantly, and self-consistent witness demands.
/// Every checker holds (witnessed checks as `WitnessedOnly`) on the result.
pub fn generate_standard_model(spec: &StandardModelSpec) -> Result<Scenario, AxiomsError> {
    let d = spec.dimension;
    if d < 3 {
        return Err(AxiomsError::DimensionTooLow {
            required: 3,
            actual: d,
        });
    }
    let origin = Point::origin(d);
    let world = BodyId::new("obs0");
    let mut bodies: Vec<Body> = Vec::new();
    let mut frames: BTreeMap<BodyId, AffineMap> = BTreeMap::new();
    // world-frame four-momenta; per-observer masses are their boosted time
    // components, which keeps conservation exact in every frame
    let mut momenta: BTreeMap<BodyId, Point> = BTreeMap::new();

    let world_momentum = |rest_mass: &Quantity,
                          velocity: &[Quantity]|
     -> Result<Point, AxiomsError> {
        let state = BodyState::new(rest_mass.clone(), velocity.to_vec());
        Ok(state.four_momentum()?.as_point().clone())
    };

    let zero_velocity = vec![Quantity::zero(); d - 1];
    bodies.push(Body {
        id: world.clone(),
        kind: BodyKind::Observer,
        worldline: full_line_through(&origin, &zero_velocity),
    });
    frames.insert(world.clone(), AffineMap::identity(d));
    momenta.insert(world.clone(), world_momentum(&Quantity::one(), &zero_velocity)?);

    for (i, v) in spec.observer_velocities.iter().enumerate() {
        let id = BodyId::new(format!("obs{}", i + 1));
        bodies.push(Body {
            id: id.clone(),
            kind: BodyKind::Observer,
            worldline: full_line_through(&origin, v),
        });
        frames.insert(id.clone(), boost_for_velocity(v)?.into_affine());
        momenta.insert(id, world_momentum(&Quantity::one(), v)?);
    }

    for (i, fb) in spec.free_bodies.iter().enumerate() {
        let id = BodyId::new(format!("body{i}"));
        bodies.push(Body {
            id: id.clone(),
            kind: BodyKind::Inertial,
            worldline: full_line_through(&fb.through, &fb.velocity),
        });
        momenta.insert(id, world_momentum(&fb.rest_mass, &fb.velocity)?);
    }

    let mut collisions = Vec::new();
    let mut inecoll_demands = Vec::new();
    let mut exists_demands = Vec::new();
    for (i, cs) in spec.collisions.iter().enumerate() {
        let b_id = BodyId::new(format!("col{i}_b"));
        let c_id = BodyId::new(format!("col{i}_c"));
        let d_id = BodyId::new(format!("col{i}_d"));
        let vertex_time = cs.vertex.time().clone();
        let incoming_line = |velocity: &[Quantity]| {
            Worldline::new(
                Line::new(cs.vertex.clone(), direction_from_velocity(velocity))
                    .expect("nonzero direction"),
                None,
                Some(vertex_time.clone()),
            )
            .expect("rays ending at the vertex always build")
        };
        bodies.push(Body {
            id: b_id.clone(),
            kind: BodyKind::Inertial,
            worldline: incoming_line(&cs.velocity1),
        });
        bodies.push(Body {
            id: c_id.clone(),
            kind: BodyKind::Inertial,
            worldline: incoming_line(&cs.velocity2),
        });
        momenta.insert(b_id.clone(), world_momentum(&cs.rest_mass1, &cs.velocity1)?);
        momenta.insert(c_id.clone(), world_momentum(&cs.rest_mass2, &cs.velocity2)?);

        let outcome = resolve_collision(
            &BodyState::new(cs.rest_mass1.clone(), cs.velocity1.clone()),
            &BodyState::new(cs.rest_mass2.clone(), cs.velocity2.clone()),
        )?;
        bodies.push(Body {
            id: d_id.clone(),
            kind: BodyKind::Inertial,
            worldline: Worldline::new(
                Line::new(cs.vertex.clone(), direction_from_velocity(&outcome.velocity))
                    .expect("nonzero direction"),
                Some(vertex_time.clone()),
                None,
            )
            .expect("rays starting at the vertex always build"),
        });
        momenta.insert(d_id.clone(), outcome.four_momentum().as_point().clone());
        collisions.push(CollisionEvent {
            vertex: cs.vertex.clone(),
            incoming: vec![b_id.clone(), c_id.clone()],
            outgoing: vec![d_id.clone()],
        });
        inecoll_demands.push(InecollDemand {
            observer: world.clone(),
            rest_mass1: cs.rest_mass1.clone(),
            rest_mass2: cs.rest_mass2.clone(),
            velocity1: cs.velocity1.clone(),
            velocity2: cs.velocity2.clone(),
        });
        if cs.rest_mass1 == cs.rest_mass2 && cs.velocity2.iter().all(|c| c.is_zero()) {
            exists_demands.push(ExistsInecollDemand {
                observer: world.clone(),
                body: b_id.clone(),
            });
        }
    }

    let mut photon_pairs = Vec::new();
    for (i, ph) in spec.photons.iter().enumerate() {
        let id = BodyId::new(format!("ph{i}"));
        let dir = direction_from_velocity(&ph.direction);
        debug_assert!(euclid_len(&ph.direction) == Quantity::one());
        bodies.push(Body {
            id: id.clone(),
            kind: BodyKind::Photon,
            worldline: full_line_through(&ph.through, &ph.direction),
        });
        momenta.insert(id, dir.clone());
        photon_pairs.push((ph.through.clone(), ph.through.add(&dir)));
    }

    // the mass relation: each observer reads off the time component of the
    // boosted world four-momentum
    let mut masses = BTreeMap::new();
    let observer_ids: Vec<BodyId> = frames.keys().cloned().collect();
    for k in &observer_ids {
        let frame = &frames[k];
        for body in &bodies {
            let mass = frame.apply_vector(&momenta[&body.id]).time().clone();
            masses.insert((k.clone(), body.id.clone()), mass);
        }
    }

    let thex_velocities = spec.observer_velocities.clone();
    let scenario = Scenario {
        dimension: d,
        bodies,
        frames,
        masses,
        collisions,
        witnesses: Witnesses {
            photon_pairs,
            thex_velocities,
            inecoll_demands,
            exists_inecoll_demands: exists_demands,
        },
    };
    debug_assert!(scenario.validate().is_empty());
    Ok(scenario)
}

const VELOCITY_MENU: [(i64, i64); 7] = [(0, 1), (1, 4), (-1, 4), (1, 3), (-1, 3), (1, 2), (-1, 2)];

fn menu_velocity(rng: &mut ChaCha8Rng, spatial_dim: usize) -> Vec<Quantity> {
    // at most two nonzero components keeps every speed strictly subluminal
    let mut v = vec![Quantity::zero(); spatial_dim];
    let primary = rng.gen_range(0..spatial_dim);
    let (n, d) = VELOCITY_MENU[rng.gen_range(0..VELOCITY_MENU.len())];
    v[primary] = Quantity::ratio(n, d);
    if spatial_dim > 1 && rng.gen_bool(0.4) {
        let secondary = (primary + 1) % spatial_dim;
        let (n2, d2) = VELOCITY_MENU[rng.gen_range(0..VELOCITY_MENU.len())];
        v[secondary] = Quantity::ratio(n2, d2);
    }
    v
}

fn menu_mass(rng: &mut ChaCha8Rng) -> Quantity {
    let (n, d) = [(1, 2), (1, 1), (3, 2), (2, 1), (5, 2)][rng.gen_range(0..5)];
    Quantity::ratio(n, d)
}

fn random_vertex(rng: &mut ChaCha8Rng, dim: usize) -> Point {
    let mut coords = vec![Quantity::zero()];
    for _ in 1..dim {
        coords.push(Quantity::from_int(rng.gen_range(-3i64..=3)));
    }
    Point::new(coords)
}

/// A randomized standard model with one collision, a probe body through the
/// collision vertex, a photon, and observers co-moving with the incoming and
/// outgoing bodies so that rest masses are defined.
pub fn random_standard_model(seed: u64, dimension: usize) -> Result<Scenario, AxiomsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spatial = dimension - 1;
    let v1 = menu_velocity(&mut rng, spatial);
    let v2 = loop {
        let v = menu_velocity(&mut rng, spatial);
        if v != v1 {
            break v;
        }
    };
    let m1 = menu_mass(&mut rng);
    let m2 = menu_mass(&mut rng);
    let vertex = random_vertex(&mut rng, dimension);
    let outcome = resolve_collision(
        &BodyState::new(m1.clone(), v1.clone()),
        &BodyState::new(m2.clone(), v2.clone()),
    )?;
    let probe_velocity = loop {
        let v = menu_velocity(&mut rng, spatial);
        if v != outcome.velocity {
            break v;
        }
    };
    let mut photon_dir = vec![Quantity::zero(); spatial];
    photon_dir[rng.gen_range(0..spatial)] = Quantity::from_int(if rng.gen_bool(0.5) { 1 } else { -1 });
    let spec = StandardModelSpec {
        dimension,
        // one bystander plus observers co-moving with each collision body,
        // so that every rest mass is defined
        observer_velocities: vec![
            menu_velocity(&mut rng, spatial),
            v1.clone(),
            v2.clone(),
            outcome.velocity.clone(),
        ],
        free_bodies: vec![FreeBodySpec {
            rest_mass: menu_mass(&mut rng),
            velocity: probe_velocity,
            through: vertex.clone(),
        }],
        collisions: vec![CollisionSpec {
            rest_mass1: m1,
            velocity1: v1,
            rest_mass2: m2,
            velocity2: v2,
            vertex,
        }],
        photons: vec![PhotonSpec {
            through: random_vertex(&mut rng, dimension),
            direction: photon_dir,
        }],
    };
    generate_standard_model(&spec)
}

/// Which single ingredient a corrupted equivalence-batch scenario perturbs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perturbation {
    /// Scale the outgoing body's mass for one observer.
    OutgoingMass,
    /// Re-aim the outgoing world-line away from the four-momentum direction.
    OutgoingVelocity,
    /// Compose one observer frame with a time-axis-fixing shear.
    FrameShear,
}

/// Scenario `index` of the seeded equivalence batch: even indices are valid
/// standard models, odd ones get exactly one perturbation.
pub fn equivalence_batch_scenario(
    seed: u64,
    index: u64,
) -> Result<(Scenario, Option<Perturbation>), AxiomsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let dimension = if rng.gen_bool(0.5) { 3 } else { 4 };
    let spatial = dimension - 1;
    let v1 = menu_velocity(&mut rng, spatial);
    let v2 = loop {
        let v = menu_velocity(&mut rng, spatial);
        if v != v1 {
            break v;
        }
    };
    let m1 = menu_mass(&mut rng);
    let m2 = menu_mass(&mut rng);
    let vertex = random_vertex(&mut rng, dimension);
    let outcome = resolve_collision(
        &BodyState::new(m1.clone(), v1.clone()),
        &BodyState::new(m2.clone(), v2.clone()),
    )?;
    let probe_velocity = loop {
        let v = menu_velocity(&mut rng, spatial);
        if v != outcome.velocity {
            break v;
        }
    };
    let observer_velocity = loop {
        let v = menu_velocity(&mut rng, spatial);
        if v.iter().any(|c| !c.is_zero()) {
            break v;
        }
    };
    let spec = StandardModelSpec {
        dimension,
        observer_velocities: vec![observer_velocity],
        free_bodies: vec![FreeBodySpec {
            rest_mass: menu_mass(&mut rng),
            velocity: probe_velocity,
            through: vertex.clone(),
        }],
        collisions: vec![CollisionSpec {
            rest_mass1: m1,
            velocity1: v1,
            rest_mass2: m2,
            velocity2: v2,
            vertex: vertex.clone(),
        }],
        photons: Vec::new(),
    };
    let mut scenario = generate_standard_model(&spec)?;
    if index.is_multiple_of(2) {
        return Ok((scenario, None));
    }
    let kind = match (index / 2) % 3 {
        0 => Perturbation::OutgoingMass,
        1 => Perturbation::OutgoingVelocity,
        _ => Perturbation::FrameShear,
    };
    let d_id = BodyId::new("col0_d");
    match kind {
        Perturbation::OutgoingMass => {
            let observers: Vec<BodyId> = scenario.observers().cloned().collect();
            let k = observers[rng.gen_range(0..observers.len())].clone();
            let factors = [Quantity::from_int(2), Quantity::from_int(3), Quantity::ratio(1, 2)];
            let factor = factors[rng.gen_range(0..3)].clone();
            let key = (k, d_id);
            let old = scenario.masses[&key].clone();
            scenario.masses.insert(key, &old * &factor);
        }
        Perturbation::OutgoingVelocity => {
            let new_velocity: Vec<Quantity> = if outcome.velocity.iter().all(|c| c.is_zero()) {
                let mut v = vec![Quantity::zero(); spatial];
                v[0] = Quantity::ratio(1, 4);
                v
            } else {
                outcome
                    .velocity
                    .iter()
                    .map(|c| c * &Quantity::ratio(1, 2))
                    .collect()
            };
            let body = scenario
                .bodies
                .iter_mut()
                .find(|b| b.id == d_id)
                .expect("the outgoing body exists");
            body.worldline = Worldline::new(
                Line::new(vertex.clone(), direction_from_velocity(&new_velocity))
                    .expect("nonzero direction"),
                Some(vertex.time().clone()),
                None,
            )
            .expect("rays starting at the vertex always build");
        }
        Perturbation::FrameShear => {
            let observers: Vec<BodyId> = scenario.observers().cloned().collect();
            let k = observers[rng.gen_range(0..observers.len())].clone();
            let mut shear = AffineMap::identity(dimension);
            let mut linear: Vec<Vec<Quantity>> = shear.linear().to_vec();
            linear[0][1] = Quantity::ratio(1, 2);
            shear = AffineMap::new(linear, shear.translation().to_vec())
                .expect("the shear is unimodular");
            let frame = scenario.frames[&k].clone();
            scenario.frames.insert(k, shear.compose(&frame));
        }
    }
    Ok((scenario, Some(kind)))
}

fn scale_mass(s: &mut Scenario, observer: &BodyId, body: &BodyId, factor: &Quantity) {
    let key = (observer.clone(), body.clone());
    let old = s.masses[&key].clone();
    s.masses.insert(key, &old * factor);
}

fn counterexample_base() -> Result<Scenario, AxiomsError> {
    let q = |s: &str| s.parse::<Quantity>().unwrap();
    let spec = StandardModelSpec {
        dimension: 3,
        observer_velocities: vec![
            vec![q("1/3"), q("0")],  // co-moving with the outgoing body
            vec![q("1/5"), q("0")],  // a further boosted bystander
            vec![q("3/5"), q("0")],  // co-moving with the fast incoming body
        ],
        free_bodies: vec![
            // probe through the collision vertex, off every collision axis
            FreeBodySpec {
                rest_mass: q("3"),
                velocity: vec![q("1/7"), q("1/9")],
                through: Point::from_ints(&[0, 2, 0]),
            },
            // a twin pair sharing rest mass and speed, for a non-vacuous
            // equal-speed mass check
            FreeBodySpec {
                rest_mass: q("2"),
                velocity: vec![q("1/4"), q("0")],
                through: Point::from_ints(&[0, -3, 1]),
            },
            FreeBodySpec {
                rest_mass: q("2"),
                velocity: vec![q("-1/4"), q("0")],
                through: Point::from_ints(&[0, 5, -2]),
            },
        ],
        collisions: vec![CollisionSpec {
            rest_mass1: q("1"),
            velocity1: vec![q("3/5"), q("0")],
            rest_mass2: q("1"),
            velocity2: vec![q("0"), q("0")],
            vertex: Point::from_ints(&[0, 2, 0]),
        }],
        photons: vec![PhotonSpec {
            through: Point::from_ints(&[0, -5, 0]),
            direction: vec![q("1"), q("0")],
        }],
    };
    generate_standard_model(&spec)
}

/// A scenario on which the kinematic axioms, the equal-speed mass axiom and
/// the two-body center postulate all pass while mass conservation fails: the
/// outgoing body's mass is rescaled for its rest observer only. Momentum
/// conservation survives because the body is at rest exactly there.
pub fn generate_cons_mass_counterexample() -> Result<Scenario, AxiomsError> {
    let mut s = counterexample_base()?;
    scale_mass(
        &mut s,
        &BodyId::new("obs1"),
        &BodyId::new("col0_d"),
        &Quantity::from_int(2),
    );
    Ok(s)
}

/// The momentum-side counterexample: the outgoing mass is rescaled for every
/// observer, which keeps the center-line geometry (it never weighs the
/// outgoing body against its parents) while breaking the momentum balance
/// wherever the outgoing body moves.
pub fn generate_cons_moment_counterexample() -> Result<Scenario, AxiomsError> {
    let mut s = counterexample_base()?;
    let observers: Vec<BodyId> = s.observers().cloned().collect();
    for k in observers {
        scale_mass(&mut s, &k, &BodyId::new("col0_d"), &Quantity::from_int(2));
    }
    Ok(s)
}
