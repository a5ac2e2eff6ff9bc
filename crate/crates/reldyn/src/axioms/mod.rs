//! Axiom checkers over scenarios and theorem verifiers.
//!
//! Universal statements over the finite body set are decided exactly.
//! Quantifiers ranging over all of Q^d are checked in witnessed form:
//! construction guarantees plus declared witness sets and seeded spot
//! checks, reported as `WitnessedOnly` rather than `Holds`.

pub mod generators;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dynamics::{
    center_line2, center_line3, find_inecoll_triples, four_momentum, CenterLine, DynamicsError,
};
use crate::minkowski::{common_line, euclid_len, Point};
use crate::quantity::Quantity;
use crate::scenario::{BodyId, Scenario, ScenarioError};
use crate::transforms::{
    boost_for_velocity, median_observer_boost, time_dilation_factor, velocity_of_direction,
    TransformError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomsError {
    #[error("dimension {actual} is too low; this verification needs d >= {required}")]
    DimensionTooLow { required: usize, actual: usize },
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    VacuouslyHolds,
    WitnessedOnly,
    Fails,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Holds => "Holds",
            Verdict::VacuouslyHolds => "VacuouslyHolds",
            Verdict::WitnessedOnly => "WitnessedOnly",
            Verdict::Fails => "Fails",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Result of one check: verdict, a human-readable trace and, on failure, a
/// counterwitness payload that re-evaluates to a violation of the defining
/// formula.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    pub trace: Vec<String>,
    pub counterwitness: Vec<(String, String)>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fails
    }

    /// One-line machine-readable summary; deterministic for a fixed input.
    pub fn summary_line(&self) -> String {
        let mut line = format!("check={} verdict={}", self.name, self.verdict);
        for (k, v) in &self.counterwitness {
            line.push_str(&format!(" {k}={v}"));
        }
        line
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.name, self.verdict);
        for t in &self.trace {
            out.push_str(&format!("  {t}\n"));
        }
        for (k, v) in &self.counterwitness {
            out.push_str(&format!("  witness {k} = {v}\n"));
        }
        out
    }
}

/// Accumulates per-instance outcomes into a final verdict.
struct Outcome {
    name: &'static str,
    checked: usize,
    witnessed: usize,
    trace: Vec<String>,
    failure: Option<Vec<(String, String)>>,
}

impl Outcome {
    fn new(name: &'static str) -> Outcome {
        Outcome {
            name,
            checked: 0,
            witnessed: 0,
            trace: Vec::new(),
            failure: None,
        }
    }

    fn instance(&mut self) {
        self.checked += 1;
    }

    fn witnessed_instance(&mut self) {
        self.checked += 1;
        self.witnessed += 1;
    }

    fn note(&mut self, line: impl Into<String>) {
        self.trace.push(line.into());
    }

    fn fail(&mut self, witness: Vec<(String, String)>) {
        if self.failure.is_none() {
            self.failure = Some(witness);
        }
    }

    fn failed(&self) -> bool {
        self.failure.is_some()
    }

    fn finish(mut self) -> CheckReport {
        let verdict = match &self.failure {
            Some(_) => Verdict::Fails,
            None if self.checked == 0 => Verdict::VacuouslyHolds,
            None if self.witnessed > 0 => Verdict::WitnessedOnly,
            None => Verdict::Holds,
        };
        self.trace
            .push(format!("{} instance(s) checked", self.checked));
        CheckReport {
            name: self.name.to_owned(),
            verdict,
            trace: self.trace,
            counterwitness: self.failure.unwrap_or_default(),
        }
    }
}

fn point_literal(p: &Point) -> String {
    let parts: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn vector_literal(v: &[Quantity]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Each observer is motionless at the spatial origin of its own frame.
pub fn check_ax_self(s: &Scenario) -> Result<CheckReport, AxiomsError> {
    let mut out = Outcome::new("AxSelf");
    for k in s.observers() {
        out.instance();
        let wl = s.worldline_in(k, k)?;
        let carrier = wl.carrier();
        let on_axis = carrier.base.space().iter().all(|c| c.is_zero())
            && carrier.direction.space().iter().all(|c| c.is_zero())
            && !carrier.direction.time().is_zero();
        if !on_axis {
            out.fail(vec![
                ("observer".into(), k.to_string()),
                ("base".into(), point_literal(&carrier.base)),
            ]);
        }
    }
    Ok(out.finish())
}

/// Photon world-lines have slope 1 in every frame (exact), and each declared
/// slope-1 witness pair carries a photon (witnessed).
pub fn check_ax_ph(s: &Scenario) -> Result<CheckReport, AxiomsError> {
    let mut out = Outcome::new("AxPh");
    for ph in s.photons() {
        for k in s.observers() {
            out.instance();
            let wl = s.worldline_in(k, &ph.id)?;
            let dir = &wl.carrier().direction;
            let spatial: Quantity = dir.space().iter().map(|c| c.square()).sum();
            if spatial != dir.time().square() {
                out.fail(vec![
                    ("photon".into(), ph.id.to_string()),
                    ("observer".into(), k.to_string()),
                    ("direction".into(), point_literal(dir)),
                ]);
            }
        }
    }
    if !out.failed() {
        out.note("universal part: exact on every photon and frame".to_owned());
    }
    for (p, q) in &s.witnesses.photon_pairs {
        out.witnessed_instance();
        let slope_one = crate::minkowski::is_slope_one(p, q).unwrap_or(false);
        let carried = s
            .bodies
            .iter()
            .any(|b| {
                b.kind == crate::scenario::BodyKind::Photon
                    && b.worldline.contains(p)
                    && b.worldline.contains(q)
            });
        if !(slope_one && carried) {
            out.fail(vec![
                ("pair_p".into(), point_literal(p)),
                ("pair_q".into(), point_literal(q)),
                ("slope_one".into(), slope_one.to_string()),
            ]);
        }
    }
    Ok(out.finish())
}

fn spot_points(s: &Scenario, seed: u64, count: usize) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let coords: Vec<Quantity> = (0..s.dimension)
            .map(|_| {
                let n = rng.gen_range(-8i64..=8);
                let d = rng.gen_range(1i64..=4);
                Quantity::ratio(n, d)
            })
            .collect();
        points.push(Point::new(coords));
    }
    points
}

/// All observers coordinatize the same events, checked on every collision
/// vertex and one hundred seeded points per observer pair.
pub fn check_ax_ev(s: &Scenario) -> Result<CheckReport, AxiomsError> {
    let mut out = Outcome::new("AxEv");
    let spots = spot_points(s, 0xE7, 100);
    let observers: Vec<&BodyId> = s.observers().collect();
    for k in &observers {
        let fk = s.frame(k)?;
        let mut probes: Vec<Point> = s.collisions.iter().map(|c| fk.apply(&c.vertex)).collect();
        probes.extend(spots.iter().cloned());
        for h in &observers {
            let w = s.worldview_transform(k, h)?;
            for p in &probes {
                out.instance();
                let q = w.apply(p);
                if s.event_at(k, p)? != s.event_at(h, &q)? {
                    out.fail(vec![
                        ("observer_k".into(), k.to_string()),
                        ("observer_h".into(), h.to_string()),
                        ("point".into(), point_literal(p)),
                    ]);
                    return Ok(out.finish());
                }
            }
        }
    }
    Ok(out.finish())
}

/// Observers agree on spatial distances of pairs simultaneous for both,
/// checked on a deterministic grid plus collision vertices.
pub fn check_ax_sim_dist(s: &Scenario) -> Result<CheckReport, AxiomsError> {
    let mut out = Outcome::new("AxSimDist");
    let observers: Vec<&BodyId> = s.observers().collect();
    // grid of simultaneous pairs in the source frame
    let mut offsets: Vec<Vec<i64>> = Vec::new();
    for axis in 0..(s.dimension - 1) {
        for step in [1i64, 2] {
            let mut v = vec![0i64; s.dimension - 1];
            v[axis] = step;
            offsets.push(v);
        }
    }
    if s.dimension >= 3 {
        let mut diag = vec![0i64; s.dimension - 1];
        diag[0] = 1;
        diag[1] = 1;
        offsets.push(diag);
    }
    for k in &observers {
        let fk = s.frame(k)?;
        let mut bases: Vec<Point> = vec![Point::origin(s.dimension)];
        bases.extend(s.collisions.iter().map(|c| fk.apply(&c.vertex)));
        for h in &observers {
            if k == h {
                continue;
            }
            let w = s.worldview_transform(k, h)?;
            for base in &bases {
                for offset in &offsets {
                    let mut coords = base.coords().to_vec();
                    for (i, o) in offset.iter().enumerate() {
                        coords[i + 1] = &coords[i + 1] + &Quantity::from_int(*o);
                    }
                    let q = Point::new(coords);
                    let p_img = w.apply(base);
                    let q_img = w.apply(&q);
                    if p_img.time() != q_img.time() {
                        continue; // not simultaneous for the target observer
                    }
                    out.instance();
                    let d1: Quantity = base
                        .space()
                        .iter()
                        .zip(q.space())
                        .map(|(a, b)| (a - b).square())
                        .sum();
                    let d2: Quantity = p_img
                        .space()
                        .iter()
                        .zip(q_img.space())
                        .map(|(a, b)| (a - b).square())
                        .sum();
                    if d1 != d2 {
                        out.fail(vec![
                            ("observer_k".into(), k.to_string()),
                            ("observer_h".into(), h.to_string()),
                            ("point_p".into(), point_literal(base)),
                            ("point_q".into(), point_literal(&q)),
                            ("squared_distance_k".into(), d1.to_string()),
                            ("squared_distance_h".into(), d2.to_string()),
                        ]);
                        return Ok(out.finish());
                    }
                }
            }
        }
    }
    Ok(out.finish())
}

/// Declared thought-experiment demands: for each demanded velocity some
/// observer realizes it with forward-flowing time.
pub fn check_ax_thex(s: &Scenario) -> Result<CheckReport, AxiomsError> {
    let mut out = Outcome::new("AxThEx");
    for demand in &s.witnesses.thex_velocities {
        out.witnessed_instance();
        let mut met = false;
        for k in s.observers() {
            let world_velocity = velocity_of_direction(&s.body(k)?.worldline.carrier().direction);
            let orientation_ok = s.frame(k)?.is_orthochronous();
            if world_velocity.as_deref() == Some(demand.as_slice()) && orientation_ok {
                met = true;
                break;
            }
        }
        if !met {
            out.fail(vec![(
                "demanded_velocity".into(),
                vector_literal(demand),
            )]);
        }
    }
    Ok(out.finish())
}

/// Declared collision demands: each (masses, velocities) pattern is realized
/// by an actual collision for the demanding observer.
pub fn check_ax_forall_inecoll(s: &Scenario) -> Result<CheckReport, AxiomsError> {
    let mut out = Outcome::new("AxForallInecoll");
    for demand in &s.witnesses.inecoll_demands {
        out.witnessed_instance();
        let triples = find_inecoll_triples(s, &demand.observer)?;
        let mut met = false;
        for (b, c, _d, _q) in &triples {
            for (first, second) in [(b, c), (c, b)] {
                let m_first = s.rest_mass(first)?;
                let m_second = s.rest_mass(second)?;
                let v_first = s.velocity(&demand.observer, first)?;
                let v_second = s.velocity(&demand.observer, second)?;
                if m_first == Some(demand.rest_mass1.clone())
                    && m_second == Some(demand.rest_mass2.clone())
                    && v_first == Some(demand.velocity1.clone())
                    && v_second == Some(demand.velocity2.clone())
                {
                    met = true;
                }
            }
        }
        if !met {
            out.fail(vec![
                ("observer".into(), demand.observer.to_string()),
                ("rest_mass1".into(), demand.rest_mass1.to_string()),
                ("rest_mass2".into(), demand.rest_mass2.to_string()),
                ("velocity1".into(), vector_literal(&demand.velocity1)),
                ("velocity2".into(), vector_literal(&demand.velocity2)),
            ]);
        }
    }
    Ok(out.finish())
}

/// Declared same-rest-mass demands: for body a there is a collision with
/// equal rest masses, b matching a's speed and c at rest.
pub fn check_ax_exists_inecoll(s: &Scenario) -> Result<CheckReport, AxiomsError> {
    let mut out = Outcome::new("AxExistsInecoll");
    for demand in &s.witnesses.exists_inecoll_demands {
        out.witnessed_instance();
        let k = &demand.observer;
        let target_mass = s.rest_mass(&demand.body)?;
        let target_speed = s.speed(k, &demand.body)?;
        let mut met = false;
        if let (Some(m0), Some(speed)) = (&target_mass, &target_speed) {
            for (b, c, _d, _q) in find_inecoll_triples(s, k)? {
                for (first, second) in [(&b, &c), (&c, &b)] {
                    let masses_match = s.rest_mass(first)? == Some(m0.clone())
                        && s.rest_mass(second)? == Some(m0.clone());
                    let speeds_match = s.speed(k, first)? == Some(speed.clone())
                        && s.speed(k, second)? == Some(Quantity::zero());
                    if masses_match && speeds_match {
                        met = true;
                    }
                }
            }
        }
        if !met {
            out.fail(vec![
                ("observer".into(), k.to_string()),
                ("body".into(), demand.body.to_string()),
            ]);
        }
    }
    Ok(out.finish())
}

/// Every observed collision admits an observer seeing the incoming bodies
/// with opposite velocities; found in the scenario or constructed as a
/// median boost (reported as witnessed).
pub fn check_ax_median(s: &Scenario) -> Result<CheckReport, AxiomsError> {
    let mut out = Outcome::new("AxMedian");
    let observers: Vec<&BodyId> = s.observers().collect();
    for k in &observers {
        for (b, c, d, _q) in find_inecoll_triples(s, k)? {
            let u = s.velocity(k, &b)?.expect("collision bodies have velocities");
            let v = s.velocity(k, &c)?.expect("collision bodies have velocities");
            // an observer already in the scenario?
            let mut resident = false;
            for h in &observers {
                let ub = s.velocity(h, &b)?;
                let uc = s.velocity(h, &c)?;
                let opposite = match (&ub, &uc) {
                    (Some(x), Some(y)) => x.iter().zip(y).all(|(a, b)| a == &-b),
                    _ => false,
                };
                if opposite && crate::dynamics::inecoll(s, h, &b, &c, &d)? {
                    resident = true;
                    break;
                }
            }
            if resident {
                out.instance();
                continue;
            }
            // construct one: a boost composed onto k's frame
            let median = if u == v {
                boost_for_velocity(&u)
            } else {
                median_observer_boost(&u, &v)
            };
            match median {
                Err(e) => {
                    out.fail(vec![
                        ("observer".into(), k.to_string()),
                        ("incoming".into(), format!("{b}, {c}")),
                        ("error".into(), e.to_string()),
                    ]);
                }
                Ok(m) => {
                    let transformed = |vel: &[Quantity]| {
                        let mut dir = vec![Quantity::one()];
                        dir.extend_from_slice(vel);
                        velocity_of_direction(&m.as_affine().apply_vector(&Point::new(dir)))
                            .expect("median boosts keep directions timelike")
                    };
                    let ub = transformed(&u);
                    let uc = transformed(&v);
                    if ub.iter().zip(&uc).all(|(a, b)| a == &-b) {
                        out.witnessed_instance();
                        out.note(format!(
                            "collision ({b}, {c} : {d}) for {k}: median observer constructed by boosting"
                        ));
                    } else {
                        out.fail(vec![
                            ("observer".into(), k.to_string()),
                            ("incoming".into(), format!("{b}, {c}")),
                        ]);
                    }
                }
            }
        }
    }
    Ok(out.finish())
}

/// Bodies with equal rest masses and equal speeds have equal relativistic
/// masses; exact over the finite body set.
pub fn check_ax_speed(s: &Scenario) -> Result<CheckReport, AxiomsError> {
    let mut out = Outcome::new("AxSpeed");
    let ids: Vec<BodyId> = s.bodies.iter().map(|b| b.id.clone()).collect();
    for k in s.observers() {
        for i in 0..ids.len() {
            for j in (i + 1)..ids.len() {
                let (b, c) = (&ids[i], &ids[j]);
                let (mb, mc) = (s.rest_mass(b)?, s.rest_mass(c)?);
                let same_rest_mass = matches!((&mb, &mc), (Some(x), Some(y)) if x == y);
                if !same_rest_mass {
                    continue;
                }
                let (vb, vc) = (s.speed(k, b)?, s.speed(k, c)?);
                let same_speed = matches!((&vb, &vc), (Some(x), Some(y)) if x == y);
                if !same_speed {
                    continue;
                }
                out.instance();
                let (wb, wc) = (s.mass(k, b)?, s.mass(k, c)?);
                if wb != wc {
                    out.fail(vec![
                        ("observer".into(), k.to_string()),
                        ("body_b".into(), b.to_string()),
                        ("body_c".into(), c.to_string()),
                        ("mass_b".into(), wb.to_string()),
                        ("mass_c".into(), wc.to_string()),
                    ]);
                }
            }
        }
    }
    Ok(out.finish())
}

fn collision_witness(k: &BodyId, b: &BodyId, c: &BodyId, d: &BodyId) -> Vec<(String, String)> {
    vec![
        ("observer".into(), k.to_string()),
        ("incoming".into(), format!("{b}, {c}")),
        ("outgoing".into(), d.to_string()),
    ]
}

/// The outgoing world-line continues the center-line of mass of the two
/// incoming bodies.
pub fn check_ax_center(s: &Scenario) -> Result<CheckReport, AxiomsError> {
    let mut out = Outcome::new("AxCenter");
    for k in s.observers() {
        for (b, c, d, _q) in find_inecoll_triples(s, k)? {
            out.instance();
            let cen = center_line2(s, k, &b, &c)?;
            let wl_d = s.worldline_in(k, &d)?;
            let (p0, p1) = wl_d.sample_pair();
            let sets = vec![cen.sample_points(), vec![p0, p1]];
            if !common_line(&sets).map(|r| r.is_collinear()).unwrap_or(false) {
                let mut witness = collision_witness(k, &b, &c, &d);
                if let CenterLine::Stretch(w) = &cen {
                    witness.push((
                        "center_direction".into(),
                        point_literal(&w.carrier().direction),
                    ));
                }
                out.fail(witness);
            }
        }
    }
    Ok(out.finish())
}

/// For every further inertial body a, the center-line of {a, d} continues
/// the center-line of {a, b, c}.
pub fn check_ax_center_plus(s: &Scenario) -> Result<CheckReport, AxiomsError> {
    let mut out = Outcome::new("AxCenterPlus");
    for k in s.observers() {
        for (b, c, d, _q) in find_inecoll_triples(s, k)? {
            for a in &s.bodies {
                out.instance();
                let before = center_line3(s, k, &a.id, &b, &c)?;
                let after = center_line2(s, k, &a.id, &d)?;
                let sets = vec![before.sample_points(), after.sample_points()];
                if sets.iter().all(|p| p.is_empty()) {
                    continue;
                }
                if !common_line(&sets).map(|r| r.is_collinear()).unwrap_or(false) {
                    let mut witness = collision_witness(k, &b, &c, &d);
                    witness.push(("extra_body".into(), a.id.to_string()));
                    out.fail(witness);
                    return Ok(out.finish());
                }
            }
        }
    }
    Ok(out.finish())
}

enum Conservation {
    Mass,
    Momentum,
    FourMomentum,
}

fn check_conservation(s: &Scenario, which: Conservation) -> Result<CheckReport, AxiomsError> {
    let name = match which {
        Conservation::Mass => "ConsMass",
        Conservation::Momentum => "ConsMoment",
        Conservation::FourMomentum => "ConsFourMoment",
    };
    let mut out = Outcome::new(name);
    for k in s.observers() {
        for (b, c, d, _q) in find_inecoll_triples(s, k)? {
            out.instance();
            let pb = four_momentum(s, k, &b)?;
            let pc = four_momentum(s, k, &c)?;
            let pd = four_momentum(s, k, &d)?;
            let (pb, pc, pd) = match (pb, pc, pd) {
                (Some(x), Some(y), Some(z)) => (x, y, z),
                _ => {
                    out.fail(collision_witness(k, &b, &c, &d));
                    continue;
                }
            };
            let total = pb.add(&pc);
            let ok = match which {
                Conservation::Mass => total.mass() == pd.mass(),
                Conservation::Momentum => total.momentum() == pd.momentum(),
                Conservation::FourMomentum => total.as_point() == pd.as_point(),
            };
            if !ok {
                let mut witness = collision_witness(k, &b, &c, &d);
                witness.push(("incoming_total".into(), point_literal(total.as_point())));
                witness.push(("outgoing_total".into(), point_literal(pd.as_point())));
                out.fail(witness);
            }
        }
    }
    Ok(out.finish())
}

pub fn check_cons_mass(s: &Scenario) -> Result<CheckReport, AxiomsError> {
    check_conservation(s, Conservation::Mass)
}

pub fn check_cons_moment(s: &Scenario) -> Result<CheckReport, AxiomsError> {
    check_conservation(s, Conservation::Momentum)
}

pub fn check_cons_four_moment(s: &Scenario) -> Result<CheckReport, AxiomsError> {
    check_conservation(s, Conservation::FourMomentum)
}

/// The mass formula: for every observer and every body with a rest mass,
/// m0 = sqrt(1 − v²) · m, exactly.
pub fn verify_mass_formula(s: &Scenario) -> Result<CheckReport, AxiomsError> {
    if s.dimension < 3 {
        return Err(AxiomsError::DimensionTooLow {
            required: 3,
            actual: s.dimension,
        });
    }
    let mut out = Outcome::new("MassFormula");
    for body in &s.bodies {
        let m0 = match s.rest_mass(&body.id)? {
            Some(m0) => m0,
            None => {
                out.note(format!("{}: no rest mass, skipped", body.id));
                continue;
            }
        };
        for k in s.observers() {
            let speed = match s.speed(k, &body.id)? {
                Some(sp) if sp < Quantity::one() => sp,
                _ => continue,
            };
            out.instance();
            let expected = &time_dilation_factor(&speed)? * &s.mass(k, &body.id)?;
            if m0 != expected {
                out.fail(vec![
                    ("observer".into(), k.to_string()),
                    ("body".into(), body.id.to_string()),
                    ("rest_mass".into(), m0.to_string()),
                    ("dilated_mass".into(), expected.to_string()),
                ]);
            }
        }
    }
    Ok(out.finish())
}

/// Walks the geometric derivation of the mass formula for one (m0, v) pair,
/// verifying each step exactly: the mass-ratio identity at a simultaneous
/// slice, affine ratio preservation, the cross-ratio transfer into the
/// median frame, the similar-triangle ratio there, and the equal-dilation
/// ratio; together they force m(v) = m0 / sqrt(1 − v²).
pub fn verify_mass_formula_construction(
    m0: &Quantity,
    v: &Quantity,
) -> Result<CheckReport, AxiomsError> {
    let mut out = Outcome::new("MassFormulaConstruction");
    if !m0.is_positive() {
        return Err(AxiomsError::Dynamics(DynamicsError::NonpositiveMass));
    }
    if v.is_negative() || v >= &Quantity::one() {
        return Err(AxiomsError::Dynamics(DynamicsError::SpeedNotSubluminal));
    }
    if v.is_zero() {
        out.note("speed 0: the formula holds by the definition of rest mass");
        out.instance();
        return Ok(out.finish());
    }
    let dilation = time_dilation_factor(v)?;
    let mv = m0 / &dilation;

    // collision at the origin: b moves at v along x, c is at rest
    let a_pt = Point::origin(3);
    let b_pt = Point::new(vec![Quantity::from_int(-1), -v, Quantity::zero()]);
    let c_pt = Point::new(vec![Quantity::from_int(-1), Quantity::zero(), Quantity::zero()]);
    // center of mass of the b- and c-slices at time -1
    let total = &mv + m0;
    let d_pt = b_pt
        .scale(&mv)
        .add(&c_pt.scale(m0))
        .scale(&total.inv().expect("total mass is positive"));

    let dist = |p: &Point, q: &Point| euclid_len(p.sub(q).coords());

    out.instance();
    let ratio_bd_cd = &dist(&b_pt, &d_pt) / &dist(&c_pt, &d_pt);
    if *m0 != &ratio_bd_cd * &mv {
        out.fail(vec![
            ("step".into(), "mass-ratio at the simultaneous slice".into()),
            ("ratio".into(), ratio_bd_cd.to_string()),
        ]);
        return Ok(out.finish());
    }
    out.note("mass-ratio identity at the simultaneous slice: exact");

    // rest frame of b: clock normalizations of the construction
    let rest_frame = boost_for_velocity(&[v.clone(), Quantity::zero()])?;
    if !rest_frame.apply(&a_pt).time().is_zero()
        || rest_frame.apply(&b_pt).time() != &-&dilation
    {
        out.fail(vec![("step".into(), "clock normalization".into())]);
        return Ok(out.finish());
    }
    out.note("clock normalizations: 0 at the vertex, -sqrt(1-v^2) on the moving body");

    // median frame: b and c move with opposite velocities
    let median = median_observer_boost(
        &[v.clone(), Quantity::zero()],
        &[Quantity::zero(), Quantity::zero()],
    )?;
    let a1 = median.apply(&a_pt);
    let b1 = median.apply(&b_pt);
    let c1 = median.apply(&c_pt);
    let d1 = median.apply(&d_pt);

    out.instance();
    let ratio_imaged = &dist(&b1, &d1) / &dist(&c1, &d1);
    if ratio_imaged != ratio_bd_cd {
        out.fail(vec![
            ("step".into(), "affine ratio preservation".into()),
            ("image_ratio".into(), ratio_imaged.to_string()),
        ]);
        return Ok(out.finish());
    }
    out.note("affine ratio preservation into the median frame: exact");

    out.instance();
    let ratio_ab_ac = &dist(&a1, &b1) / &dist(&a1, &c1);
    if ratio_imaged != ratio_ab_ac {
        out.fail(vec![
            ("step".into(), "cross-ratio transfer".into()),
            ("vertex_ratio".into(), ratio_ab_ac.to_string()),
        ]);
        return Ok(out.finish());
    }
    out.note("cross-ratio transfer onto the vertex rays: exact");

    // E on the line through a1 and d1 with E–c1 parallel to a1–b1
    let cross2 = |p: &Point, q: &Point| &(&p[0] * &q[1]) - &(&p[1] * &q[0]);
    let ad = d1.sub(&a1);
    let ab = b1.sub(&a1);
    let ac = c1.sub(&a1);
    let mu = &cross2(&ac, &ab) / &cross2(&ad, &ab);
    let e1 = a1.add(&ad.scale(&mu));

    out.instance();
    let ratio_similar = &dist(&a1, &b1) / &dist(&e1, &c1);
    if ratio_imaged != ratio_similar || dist(&e1, &c1) != dist(&a1, &c1) {
        out.fail(vec![
            ("step".into(), "similar-triangle ratio".into()),
            ("auxiliary_point".into(), point_literal(&e1)),
        ]);
        return Ok(out.finish());
    }
    out.note("similar-triangle ratio with the auxiliary parallel point: exact");

    out.instance();
    if ratio_ab_ac != dilation {
        out.fail(vec![
            ("step".into(), "equal-dilation ratio".into()),
            ("ratio".into(), ratio_ab_ac.to_string()),
            ("dilation".into(), dilation.to_string()),
        ]);
        return Ok(out.finish());
    }
    out.note("equal-dilation ratio: exact");

    out.instance();
    if *m0 != &dilation * &mv {
        out.fail(vec![("step".into(), "final assembly".into())]);
        return Ok(out.finish());
    }
    out.note(format!(
        "conclusion m({v}) = {mv} with m0 = {m0}: the chain closes exactly"
    ));
    Ok(out.finish())
}

/// Evaluates the four equivalent formulations (the three-body center
/// postulate, mass+momentum conservation, mass conservation with the
/// two-body center postulate, and four-momentum conservation) and reports
/// whether they agree on this scenario.
pub fn verify_conservation_equivalence(s: &Scenario) -> Result<CheckReport, AxiomsError> {
    let mut out = Outcome::new("ConsEquivalence");
    if check_ax_self(s)?.verdict == Verdict::Fails {
        out.fail(vec![("precondition".into(), "AxSelf".into())]);
        return Ok(out.finish());
    }
    let center_plus = check_ax_center_plus(s)?.passed();
    let mass = check_cons_mass(s)?.passed();
    let moment = check_cons_moment(s)?.passed();
    let center = check_ax_center(s)?.passed();
    let four = check_cons_four_moment(s)?.passed();
    let items = [
        ("center-line postulate for three bodies", center_plus),
        ("mass and momentum conservation", mass && moment),
        ("mass conservation with the two-body center-line postulate", mass && center),
        ("four-momentum conservation", four),
    ];
    for (label, value) in &items {
        out.note(format!("{label}: {value}"));
    }
    out.instance();
    if !items.iter().all(|(_, v)| *v == items[0].1) {
        out.fail(
            items
                .iter()
                .map(|(label, value)| (label.replace(' ', "_"), value.to_string()))
                .collect(),
        );
    }
    Ok(out.finish())
}

/// The canonical list of named checks, in reporting order.
pub const CHECK_NAMES: &[&str] = &[
    "AxSelf",
    "AxPh",
    "AxEv",
    "AxSimDist",
    "AxThEx",
    "AxForallInecoll",
    "AxExistsInecoll",
    "AxMedian",
    "AxSpeed",
    "AxCenter",
    "AxCenterPlus",
    "ConsMass",
    "ConsMoment",
    "ConsFourMoment",
    "MassFormula",
    "ConsEquivalence",
];

/// Run a named check. Unknown names return `None`.
pub fn run_check(s: &Scenario, name: &str) -> Option<Result<CheckReport, AxiomsError>> {
    let report = match name {
        "AxSelf" => check_ax_self(s),
        "AxPh" => check_ax_ph(s),
        "AxEv" => check_ax_ev(s),
        "AxSimDist" => check_ax_sim_dist(s),
        "AxThEx" => check_ax_thex(s),
        "AxForallInecoll" => check_ax_forall_inecoll(s),
        "AxExistsInecoll" => check_ax_exists_inecoll(s),
        "AxMedian" => check_ax_median(s),
        "AxSpeed" => check_ax_speed(s),
        "AxCenter" => check_ax_center(s),
        "AxCenterPlus" => check_ax_center_plus(s),
        "ConsMass" => check_cons_mass(s),
        "ConsMoment" => check_cons_moment(s),
        "ConsFourMoment" => check_cons_four_moment(s),
        "MassFormula" => verify_mass_formula(s),
        "ConsEquivalence" => verify_conservation_equivalence(s),
        _ => return None,
    };
    Some(report)
}

/// Sanity helper for counterwitness payloads: every quantity literal in a
/// report parses back.
pub fn reparse_counterwitness(report: &CheckReport) -> bool {
    report.counterwitness.iter().all(|(_, v)| {
        !v.starts_with('(') || {
            let inner = v.trim_start_matches('(').trim_end_matches(')');
            inner
                .split(',')
                .all(|part| part.trim().parse::<Quantity>().is_ok())
        }
    })
}
