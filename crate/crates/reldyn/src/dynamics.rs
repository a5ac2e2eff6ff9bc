//! Collision machinery: in/out sets, inelastic collisions, centers of mass
//! and center-lines, the relativistic mass formula, four-momentum and
//! constructive collision resolution.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::minkowski::{euclid_len, mink_len, Line, Point, Worldline};
use crate::quantity::Quantity;
use crate::scenario::{BodyId, Scenario, ScenarioError};
use crate::transforms::{median_observer_boost, velocity_of_direction, PoincareMap, TransformError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("mass must be positive")]
    NonpositiveMass,
    #[error("speed must be strictly less than that of light")]
    SpeedNotSubluminal,
    #[error("the two bodies move identically; the ratios cannot differ")]
    CoMovingBodies,
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
}

/// in_k(q): bodies whose world-line ends at q, meaning q is on the
/// world-line and every other point of it lies strictly earlier in time.
pub fn in_set(s: &Scenario, k: &BodyId, q: &Point) -> Result<BTreeSet<BodyId>, ScenarioError> {
    boundary_set(s, k, q, true)
}

/// out_k(q): bodies whose world-line starts at q.
pub fn out_set(s: &Scenario, k: &BodyId, q: &Point) -> Result<BTreeSet<BodyId>, ScenarioError> {
    boundary_set(s, k, q, false)
}

fn boundary_set(
    s: &Scenario,
    k: &BodyId,
    q: &Point,
    ending: bool,
) -> Result<BTreeSet<BodyId>, ScenarioError> {
    let mut out = BTreeSet::new();
    for body in &s.bodies {
        let wl = s.worldline_in(k, &body.id)?;
        if wl.is_horizontal() {
            // a horizontal world-line has no single extremal-time point
            continue;
        }
        let bound = if ending { wl.tmax() } else { wl.tmin() };
        if bound == Some(q.time()) && wl.contains(q) {
            out.insert(body.id.clone());
        }
    }
    Ok(out)
}

/// inecoll_k(b, c : d): b ≠ c and there is a vertex q with in_k(q) = {b, c}
/// and out_k(q) = {d}. The candidate vertex is where b's world-line ends.
pub fn inecoll(
    s: &Scenario,
    k: &BodyId,
    b: &BodyId,
    c: &BodyId,
    d: &BodyId,
) -> Result<bool, ScenarioError> {
    if b == c {
        return Ok(false);
    }
    let wl_b = s.worldline_in(k, b)?;
    let q = match wl_b.top_endpoint() {
        Some(q) => q,
        None => return Ok(false),
    };
    let ins = in_set(s, k, &q)?;
    let expected: BTreeSet<BodyId> = [b.clone(), c.clone()].into_iter().collect();
    if ins != expected {
        return Ok(false);
    }
    let outs = out_set(s, k, &q)?;
    Ok(outs.len() == 1 && outs.contains(d))
}

/// All inelastic-collision triples visible to observer k, found by scanning
/// world-line endpoints; independent of the registered collision list.
pub fn find_inecoll_triples(
    s: &Scenario,
    k: &BodyId,
) -> Result<Vec<(BodyId, BodyId, BodyId, Point)>, ScenarioError> {
    let mut seen_vertices: Vec<Point> = Vec::new();
    let mut out = Vec::new();
    for body in &s.bodies {
        let wl = s.worldline_in(k, &body.id)?;
        let q = match wl.top_endpoint() {
            Some(q) => q,
            None => continue,
        };
        if seen_vertices.contains(&q) {
            continue;
        }
        seen_vertices.push(q.clone());
        let ins: Vec<BodyId> = in_set(s, k, &q)?.into_iter().collect();
        let outs: Vec<BodyId> = out_set(s, k, &q)?.into_iter().collect();
        if ins.len() == 2 && outs.len() == 1 {
            out.push((ins[0].clone(), ins[1].clone(), outs[0].clone(), q));
        }
    }
    Ok(out)
}

/// cen_k(b, c, t): the mass-weighted point between the two locations,
/// undefined when either location is.
pub fn center2_at(
    s: &Scenario,
    k: &BodyId,
    b: &BodyId,
    c: &BodyId,
    t: &Quantity,
) -> Result<Option<Point>, ScenarioError> {
    center_at(s, k, &[b.clone(), c.clone()], t)
}

fn center_at(
    s: &Scenario,
    k: &BodyId,
    ids: &[BodyId],
    t: &Quantity,
) -> Result<Option<Point>, ScenarioError> {
    let mut total = Quantity::zero();
    let mut weighted: Option<Point> = None;
    for id in ids {
        let loc = match s.location(k, id, t)? {
            Some(p) => p,
            None => return Ok(None),
        };
        let m = s.mass(k, id)?;
        total = &total + &m;
        let contribution = loc.scale(&m);
        weighted = Some(match weighted {
            None => contribution,
            Some(acc) => acc.add(&contribution),
        });
    }
    let weighted = weighted.expect("at least one body");
    Ok(Some(weighted.scale(&total.inv().expect("masses are positive"))))
}

/// The time-indexed locus of a center of mass: empty, a single instant, or
/// an affine-in-t stretch over a time interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CenterLine {
    Empty,
    Point(Point),
    Stretch(Worldline),
}

impl CenterLine {
    /// Representative points lying in the locus, for collinearity queries.
    pub fn sample_points(&self) -> Vec<Point> {
        match self {
            CenterLine::Empty => Vec::new(),
            CenterLine::Point(p) => vec![p.clone()],
            CenterLine::Stretch(w) => {
                let (p, q) = w.sample_pair();
                vec![p, q]
            }
        }
    }

    pub fn at_time(&self, t: &Quantity) -> Option<Point> {
        match self {
            CenterLine::Empty => None,
            CenterLine::Point(p) => (p.time() == t).then(|| p.clone()),
            CenterLine::Stretch(w) => w.point_at_time(t),
        }
    }
}

/// cen_k(b, c) as a symbolic affine locus.
pub fn center_line2(
    s: &Scenario,
    k: &BodyId,
    b: &BodyId,
    c: &BodyId,
) -> Result<CenterLine, ScenarioError> {
    center_line(s, k, &[b.clone(), c.clone()])
}

/// cen_k(a, b, c) for three bodies.
pub fn center_line3(
    s: &Scenario,
    k: &BodyId,
    a: &BodyId,
    b: &BodyId,
    c: &BodyId,
) -> Result<CenterLine, ScenarioError> {
    center_line(s, k, &[a.clone(), b.clone(), c.clone()])
}

fn center_line(s: &Scenario, k: &BodyId, ids: &[BodyId]) -> Result<CenterLine, ScenarioError> {
    // Intersect the time domains on which every location is defined.
    let mut tmin: Option<Quantity> = None;
    let mut tmax: Option<Quantity> = None;
    for id in ids {
        let wl = s.worldline_in(k, id)?;
        if wl.is_horizontal() {
            return Ok(CenterLine::Empty);
        }
        if let Some(a) = wl.tmin() {
            tmin = Some(match tmin {
                None => a.clone(),
                Some(prev) => prev.max(a.clone()),
            });
        }
        if let Some(b) = wl.tmax() {
            tmax = Some(match tmax {
                None => b.clone(),
                Some(prev) => prev.min(b.clone()),
            });
        }
    }
    if let (Some(a), Some(b)) = (&tmin, &tmax) {
        if a > b {
            return Ok(CenterLine::Empty);
        }
        if a == b {
            let p = center_at(s, k, ids, a)?.expect("t is inside every domain");
            return Ok(CenterLine::Point(p));
        }
    }
    // The locus is affine in t; two samples determine its carrier.
    let t0 = match (&tmin, &tmax) {
        (Some(a), _) => a.clone(),
        (None, Some(b)) => b - &Quantity::one(),
        (None, None) => Quantity::zero(),
    };
    let t1 = match (&tmin, &tmax) {
        (Some(a), Some(b)) => {
            // midpoint keeps both samples inside the closed interval
            &(a + b) / &Quantity::from_int(2)
        }
        _ => &t0 + &Quantity::one(),
    };
    let p0 = center_at(s, k, ids, &t0)?.expect("t0 is inside every domain");
    let p1 = center_at(s, k, ids, &t1)?.expect("t1 is inside every domain");
    let carrier = Line::through(&p0, &p1).expect("distinct times give distinct points");
    Ok(CenterLine::Stretch(
        Worldline::new(carrier, tmin, tmax).expect("interval is nonempty"),
    ))
}

/// m(v) = m0 / sqrt(1 − v²), the relativistic mass of a body with rest mass
/// m0 moving at the given speed.
pub fn rel_mass_from_rest(m0: &Quantity, speed: &Quantity) -> Result<Quantity, DynamicsError> {
    if !m0.is_positive() {
        return Err(DynamicsError::NonpositiveMass);
    }
    if speed.is_negative() || speed >= &Quantity::one() {
        return Err(DynamicsError::SpeedNotSubluminal);
    }
    let dilation = (&Quantity::one() - &speed.square())
        .sqrt()
        .expect("subluminal speed");
    Ok(m0 / &dilation)
}

/// P_k(b): time component m_k(b), space component m_k(b)·v_k(b).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourMomentum {
    components: Point,
}

impl FourMomentum {
    pub fn from_mass_velocity(mass: &Quantity, velocity: &[Quantity]) -> FourMomentum {
        let mut coords = Vec::with_capacity(velocity.len() + 1);
        coords.push(mass.clone());
        coords.extend(velocity.iter().map(|v| mass * v));
        FourMomentum {
            components: Point::new(coords),
        }
    }

    pub fn as_point(&self) -> &Point {
        &self.components
    }

    pub fn mass(&self) -> &Quantity {
        self.components.time()
    }

    pub fn momentum(&self) -> &[Quantity] {
        self.components.space()
    }

    pub fn add(&self, rhs: &FourMomentum) -> FourMomentum {
        FourMomentum {
            components: self.components.add(&rhs.components),
        }
    }

    /// Minkowski length; equals the rest mass for bodies that have one and
    /// zero for photons.
    pub fn invariant_mass(&self) -> Quantity {
        mink_len(&self.components)
    }

    pub fn velocity(&self) -> Option<Vec<Quantity>> {
        velocity_of_direction(&self.components)
    }
}

/// Four-momentum of b in k's frame, undefined when the velocity is.
pub fn four_momentum(
    s: &Scenario,
    k: &BodyId,
    b: &BodyId,
) -> Result<Option<FourMomentum>, ScenarioError> {
    let velocity = match s.velocity(k, b)? {
        Some(v) => v,
        None => return Ok(None),
    };
    let mass = s.mass(k, b)?;
    Ok(Some(FourMomentum::from_mass_velocity(&mass, &velocity)))
}

/// Incoming-body data for a collision: rest mass and velocity in the chosen
/// frame.
#[derive(Debug, Clone)]
pub struct BodyState {
    pub rest_mass: Quantity,
    pub velocity: Vec<Quantity>,
}

impl BodyState {
    pub fn new(rest_mass: Quantity, velocity: Vec<Quantity>) -> BodyState {
        BodyState {
            rest_mass,
            velocity,
        }
    }

    pub fn speed(&self) -> Quantity {
        euclid_len(&self.velocity)
    }

    pub fn four_momentum(&self) -> Result<FourMomentum, DynamicsError> {
        let mass = rel_mass_from_rest(&self.rest_mass, &self.speed())?;
        Ok(FourMomentum::from_mass_velocity(&mass, &self.velocity))
    }
}

/// Data of the merged body produced by an inelastic collision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollisionOutcome {
    pub mass: Quantity,
    pub velocity: Vec<Quantity>,
    pub rest_mass: Quantity,
}

impl CollisionOutcome {
    pub fn speed(&self) -> Quantity {
        euclid_len(&self.velocity)
    }

    pub fn four_momentum(&self) -> FourMomentum {
        FourMomentum::from_mass_velocity(&self.mass, &self.velocity)
    }
}

/// Resolve an inelastic collision by four-momentum addition. The sum of two
/// future-pointing timelike vectors is timelike, so the outgoing speed is
/// always subluminal and the invariant mass positive.
pub fn resolve_collision(
    b: &BodyState,
    c: &BodyState,
) -> Result<CollisionOutcome, DynamicsError> {
    let total = b.four_momentum()?.add(&c.four_momentum()?);
    let mass = total.mass().clone();
    let velocity = total.velocity().expect("total mass is positive");
    let rest_mass = total.invariant_mass();
    debug_assert!(euclid_len(&velocity) < Quantity::one());
    Ok(CollisionOutcome {
        mass,
        velocity,
        rest_mass,
    })
}

/// The mass-ratio pair of the observer-dependence witness: the ratio
/// m(b)/m(c) in the given frame and in the median frame where the two
/// velocities are opposite. For distinct velocities the ratios differ.
pub fn mass_dependence_witness(
    m0b: &Quantity,
    m0c: &Quantity,
    vb: &Quantity,
    vc: &Quantity,
) -> Result<(Quantity, Quantity), DynamicsError> {
    if vb == vc {
        return Err(DynamicsError::CoMovingBodies);
    }
    let ratio_here = &rel_mass_from_rest(m0b, &vb.abs())? / &rel_mass_from_rest(m0c, &vc.abs())?;
    let median: PoincareMap =
        median_observer_boost(std::slice::from_ref(vb), std::slice::from_ref(vc))?;
    let transformed = |v: &Quantity| -> Quantity {
        let dir = Point::new(vec![Quantity::one(), v.clone()]);
        let image = median.as_affine().apply_vector(&dir);
        let vel = velocity_of_direction(&image).expect("subluminal stays timelike");
        euclid_len(&vel)
    };
    let ratio_median =
        &rel_mass_from_rest(m0b, &transformed(vb))? / &rel_mass_from_rest(m0c, &transformed(vc))?;
    Ok((ratio_here, ratio_median))
}

/// f64 mirror of [`resolve_collision`]; speed-comparison backend only, never
/// used by any exact check.
pub mod float_backend {
    pub const TOLERANCE: f64 = 1e-9;

    pub struct FloatOutcome {
        pub mass: f64,
        pub velocity: Vec<f64>,
        pub rest_mass: f64,
    }

    pub fn resolve_collision(
        m0b: f64,
        vb: &[f64],
        m0c: f64,
        vc: &[f64],
    ) -> Option<FloatOutcome> {
        let speed2 = |v: &[f64]| v.iter().map(|c| c * c).sum::<f64>();
        if m0b <= 0.0 || m0c <= 0.0 || speed2(vb) >= 1.0 || speed2(vc) >= 1.0 {
            return None;
        }
        let mb = m0b / (1.0 - speed2(vb)).sqrt();
        let mc = m0c / (1.0 - speed2(vc)).sqrt();
        let mass = mb + mc;
        let velocity: Vec<f64> = vb
            .iter()
            .zip(vc)
            .map(|(b, c)| (mb * b + mc * c) / mass)
            .collect();
        let rest_mass = (mass * mass - speed2(&velocity) * mass * mass).sqrt();
        Some(FloatOutcome {
            mass,
            velocity,
            rest_mass,
        })
    }
}
