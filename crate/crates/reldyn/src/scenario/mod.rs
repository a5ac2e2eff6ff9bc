//! The finite scenario model: bodies with world-lines in a canonical world
//! frame, per-observer frame maps, an extensional mass relation, registered
//! collisions and declared witness demands.
//!
//! The world-view relation W is derived: observer k sees body b at p exactly
//! when the k-frame image of b's world world-line contains p. Storing frames
//! constructively makes the kinematic axioms checkable, while the mass
//! relation stays extensional so that non-standard assignments (the
//! independence counterexamples) remain expressible.

mod format;

pub use format::{load_scenario, save_scenario, scenario_from_str, scenario_to_string};

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::minkowski::{GeometryError, Point, Worldline};
use crate::quantity::Quantity;
use crate::transforms::{velocity_of_direction, AffineMap, TransformError};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BodyId(pub String);

impl BodyId {
    pub fn new(id: impl Into<String>) -> BodyId {
        BodyId(id.into())
    }
}

impl std::fmt::Display for BodyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for BodyId {
    fn from(s: &str) -> BodyId {
        BodyId(s.to_owned())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BodyKind {
    Observer,
    Photon,
    Inertial,
    Plain,
}

impl BodyKind {
    pub fn name(&self) -> &'static str {
        match self {
            BodyKind::Observer => "observer",
            BodyKind::Photon => "photon",
            BodyKind::Inertial => "inertial",
            BodyKind::Plain => "plain",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Body {
    pub id: BodyId,
    pub kind: BodyKind,
    /// World-line in the canonical world frame.
    pub worldline: Worldline,
}

/// A registered inelastic collision: incoming world-lines end and outgoing
/// ones start at the vertex (world coordinates).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollisionEvent {
    pub vertex: Point,
    pub incoming: Vec<BodyId>,
    pub outgoing: Vec<BodyId>,
}

/// Demand for a realized collision: an observer, rest masses and velocities
/// in that observer's coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InecollDemand {
    pub observer: BodyId,
    pub rest_mass1: Quantity,
    pub rest_mass2: Quantity,
    pub velocity1: Vec<Quantity>,
    pub velocity2: Vec<Quantity>,
}

/// Demand that some collision realizes the "same rest mass, same speed, one
/// partner at rest" pattern for the given body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExistsInecollDemand {
    pub observer: BodyId,
    pub body: BodyId,
}

/// Declared witness sets for the axioms whose quantifiers range over all of
/// Q^d and can only be spot-checked on a finite model.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witnesses {
    /// World-frame point pairs of slope 1 that must carry a photon.
    pub photon_pairs: Vec<(Point, Point)>,
    /// World-frame velocities that some observer must realize.
    pub thex_velocities: Vec<Vec<Quantity>>,
    pub inecoll_demands: Vec<InecollDemand>,
    pub exists_inecoll_demands: Vec<ExistsInecollDemand>,
}

impl Witnesses {
    pub fn is_empty(&self) -> bool {
        self.photon_pairs.is_empty()
            && self.thex_velocities.is_empty()
            && self.inecoll_demands.is_empty()
            && self.exists_inecoll_demands.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub dimension: usize,
    pub bodies: Vec<Body>,
    /// Frame map per observer: world coordinates to that observer's
    /// coordinates. Invertible by construction; Poincaré in valid models,
    /// but deliberately not forced so that broken frames stay expressible.
    pub frames: BTreeMap<BodyId, AffineMap>,
    /// The mass relation M, total on observers × bodies in valid scenarios.
    pub masses: BTreeMap<(BodyId, BodyId), Quantity>,
    pub collisions: Vec<CollisionEvent>,
    pub witnesses: Witnesses,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("unknown id `{0}`")]
    UnknownId(BodyId),
    #[error("`{0}` is not an observer")]
    NotAnObserver(BodyId),
    #[error("parse error: {message}")]
    Parse { message: String },
    #[error("validation failed: {}", format_violations(.0))]
    Validation(Vec<Violation>),
    #[error("io error: {0}")]
    Io(String),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn format_violations(vs: &[Violation]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("MassNotPositive({observer}, {body})")]
    MassNotPositive { observer: BodyId, body: BodyId },
    #[error("MassRelNotTotal({observer}, {body})")]
    MassRelNotTotal { observer: BodyId, body: BodyId },
    #[error("MissingFrame({0})")]
    MissingFrame(BodyId),
    #[error("FrameForNonObserver({0})")]
    FrameForNonObserver(BodyId),
    #[error("AxSelfViolation({0})")]
    AxSelfViolation(BodyId),
    #[error("DuplicateBodyId({0})")]
    DuplicateBodyId(BodyId),
    #[error("UnknownIdReference({0})")]
    UnknownIdReference(BodyId),
    #[error("DimensionMismatch({0})")]
    DimensionMismatch(BodyId),
}

impl Scenario {
    pub fn body(&self, id: &BodyId) -> Result<&Body, ScenarioError> {
        self.bodies
            .iter()
            .find(|b| &b.id == id)
            .ok_or_else(|| ScenarioError::UnknownId(id.clone()))
    }

    pub fn has_body(&self, id: &BodyId) -> bool {
        self.bodies.iter().any(|b| &b.id == id)
    }

    pub fn observers(&self) -> impl Iterator<Item = &BodyId> {
        self.bodies
            .iter()
            .filter(|b| b.kind == BodyKind::Observer)
            .map(|b| &b.id)
    }

    pub fn photons(&self) -> impl Iterator<Item = &Body> {
        self.bodies.iter().filter(|b| b.kind == BodyKind::Photon)
    }

    pub fn frame(&self, k: &BodyId) -> Result<&AffineMap, ScenarioError> {
        let body = self.body(k)?;
        if body.kind != BodyKind::Observer {
            return Err(ScenarioError::NotAnObserver(k.clone()));
        }
        self.frames
            .get(k)
            .ok_or_else(|| ScenarioError::UnknownId(k.clone()))
    }

    /// wl_k(b): the k-frame image of b's world world-line.
    pub fn worldline_in(&self, k: &BodyId, b: &BodyId) -> Result<Worldline, ScenarioError> {
        let frame = self.frame(k)?;
        let body = self.body(b)?;
        Ok(frame.apply_worldline(&body.worldline)?)
    }

    /// The map taking k-coordinates to h-coordinates of the same events.
    pub fn worldview_transform(&self, k: &BodyId, h: &BodyId) -> Result<AffineMap, ScenarioError> {
        let fk = self.frame(k)?;
        let fh = self.frame(h)?;
        Ok(fh.compose(&fk.inverse()?))
    }

    /// ev_k(p): ids of the bodies whose k-frame world-line passes through p.
    pub fn event_at(&self, k: &BodyId, p: &Point) -> Result<BTreeSet<BodyId>, ScenarioError> {
        let mut out = BTreeSet::new();
        for body in &self.bodies {
            let wl = self.worldline_in(k, &body.id)?;
            if wl.contains(p) {
                out.insert(body.id.clone());
            }
        }
        Ok(out)
    }

    /// loc_k(b, t): the unique point of wl_k(b) at time t, when it exists.
    pub fn location(
        &self,
        k: &BodyId,
        b: &BodyId,
        t: &Quantity,
    ) -> Result<Option<Point>, ScenarioError> {
        Ok(self.worldline_in(k, b)?.point_at_time(t))
    }

    /// Velocity of b in k's coordinates, undefined on horizontal carriers.
    pub fn velocity(&self, k: &BodyId, b: &BodyId) -> Result<Option<Vec<Quantity>>, ScenarioError> {
        let wl = self.worldline_in(k, b)?;
        Ok(velocity_of_direction(&wl.carrier().direction))
    }

    pub fn speed(&self, k: &BodyId, b: &BodyId) -> Result<Option<Quantity>, ScenarioError> {
        Ok(self
            .velocity(k, b)?
            .map(|v| crate::minkowski::euclid_len(&v)))
    }

    /// M(k, b). Valid scenarios have a total mass relation.
    pub fn mass(&self, k: &BodyId, b: &BodyId) -> Result<Quantity, ScenarioError> {
        self.masses
            .get(&(k.clone(), b.clone()))
            .cloned()
            .ok_or_else(|| ScenarioError::UnknownId(b.clone()))
    }

    /// Rest mass: defined when some observer sees b at rest and every such
    /// observer assigns the same relativistic mass.
    pub fn rest_mass(&self, b: &BodyId) -> Result<Option<Quantity>, ScenarioError> {
        let mut rest: Option<Quantity> = None;
        for k in self.observers() {
            let at_rest = match self.velocity(k, b)? {
                Some(v) => v.iter().all(|c| c.is_zero()),
                None => false,
            };
            if !at_rest {
                continue;
            }
            let m = self.mass(k, b)?;
            match &rest {
                None => rest = Some(m),
                Some(prev) if *prev == m => {}
                Some(_) => return Ok(None),
            }
        }
        Ok(rest)
    }

    /// Structural frame-axiom violations; empty for well-formed scenarios.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for body in &self.bodies {
            if !seen.insert(body.id.clone()) {
                out.push(Violation::DuplicateBodyId(body.id.clone()));
            }
            if body.worldline.carrier().dim() != self.dimension {
                out.push(Violation::DimensionMismatch(body.id.clone()));
            }
        }
        // frames exactly on observers
        for k in self.observers() {
            match self.frames.get(k) {
                None => out.push(Violation::MissingFrame(k.clone())),
                Some(f) if f.dim() != self.dimension => {
                    out.push(Violation::DimensionMismatch(k.clone()))
                }
                Some(_) => {}
            }
        }
        for id in self.frames.keys() {
            let is_observer = self
                .bodies
                .iter()
                .any(|b| &b.id == id && b.kind == BodyKind::Observer);
            if !is_observer {
                out.push(Violation::FrameForNonObserver(id.clone()));
            }
        }
        // mass relation total and positive
        for k in self.observers() {
            for body in &self.bodies {
                match self.masses.get(&(k.clone(), body.id.clone())) {
                    None => out.push(Violation::MassRelNotTotal {
                        observer: k.clone(),
                        body: body.id.clone(),
                    }),
                    Some(m) if !m.is_positive() => out.push(Violation::MassNotPositive {
                        observer: k.clone(),
                        body: body.id.clone(),
                    }),
                    Some(_) => {}
                }
            }
        }
        for (k, b) in self.masses.keys() {
            for id in [k, b] {
                if !self.has_body(id) {
                    out.push(Violation::UnknownIdReference(id.clone()));
                }
            }
        }
        for c in &self.collisions {
            if c.vertex.dim() != self.dimension {
                out.push(Violation::DimensionMismatch(BodyId::new("collision vertex")));
            }
            for id in c.incoming.iter().chain(&c.outgoing) {
                if !self.has_body(id) {
                    out.push(Violation::UnknownIdReference(id.clone()));
                }
            }
        }
        for d in &self.witnesses.inecoll_demands {
            if !self.has_body(&d.observer) {
                out.push(Violation::UnknownIdReference(d.observer.clone()));
            }
        }
        for d in &self.witnesses.exists_inecoll_demands {
            for id in [&d.observer, &d.body] {
                if !self.has_body(id) {
                    out.push(Violation::UnknownIdReference(id.clone()));
                }
            }
        }
        // AxSelf structurally: each observer's own frame puts it on the time axis
        for k in self.observers() {
            if self.frames.contains_key(k) {
                match self.worldline_in(k, k) {
                    Ok(wl) => {
                        let carrier = wl.carrier();
                        let on_axis = carrier.base.space().iter().all(|c| c.is_zero())
                            && carrier.direction.space().iter().all(|c| c.is_zero())
                            && !carrier.direction.time().is_zero();
                        if !on_axis {
                            out.push(Violation::AxSelfViolation(k.clone()));
                        }
                    }
                    Err(_) => out.push(Violation::AxSelfViolation(k.clone())),
                }
            }
        }
        out
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::minkowski::Line;
    use crate::transforms::boost_for_velocity;

    fn q(s: &str) -> Quantity {
        s.parse().unwrap()
    }

    fn qv(parts: &[&str]) -> Vec<Quantity> {
        parts.iter().map(|p| q(p)).collect()
    }

    pub(crate) fn two_observer_scenario() -> Scenario {
        // world observer at rest plus one boosted at 3/5 along x, d = 3
        let dim = 3;
        let time_axis = Worldline::full(
            Line::new(Point::origin(dim), Point::from_ints(&[1, 0, 0])).unwrap(),
        )
        .unwrap();
        let moving_line = Worldline::full(
            Line::new(
                Point::origin(dim),
                Point::new(qv(&["1", "3/5", "0"])),
            )
            .unwrap(),
        )
        .unwrap();
        let k0 = BodyId::new("k0");
        let k1 = BodyId::new("k1");
        let bodies = vec![
            Body {
                id: k0.clone(),
                kind: BodyKind::Observer,
                worldline: time_axis,
            },
            Body {
                id: k1.clone(),
                kind: BodyKind::Observer,
                worldline: moving_line,
            },
        ];
        let mut frames = BTreeMap::new();
        frames.insert(k0.clone(), AffineMap::identity(dim));
        frames.insert(
            k1.clone(),
            boost_for_velocity(&qv(&["3/5", "0"])).unwrap().into_affine(),
        );
        let mut masses = BTreeMap::new();
        for k in [&k0, &k1] {
            for b in [&k0, &k1] {
                // rest mass 1 for both observers; gamma = 5/4 when moving
                let m = if k == b { q("1") } else { q("5/4") };
                masses.insert((k.clone(), b.clone()), m);
            }
        }
        Scenario {
            dimension: dim,
            bodies,
            frames,
            masses,
            collisions: Vec::new(),
            witnesses: Witnesses::default(),
        }
    }

    #[test]
    fn own_worldline_is_time_axis() {
        let s = two_observer_scenario();
        for k in [BodyId::new("k0"), BodyId::new("k1")] {
            let wl = s.worldline_in(&k, &k).unwrap();
            assert!(wl.carrier().base.space().iter().all(|c| c.is_zero()));
            assert!(wl.carrier().direction.space().iter().all(|c| c.is_zero()));
        }
        assert!(s.validate().is_empty());
    }

    #[test]
    fn boosted_frame_sees_comoving_body_at_rest() {
        let s = two_observer_scenario();
        let v = s
            .velocity(&BodyId::new("k1"), &BodyId::new("k1"))
            .unwrap()
            .unwrap();
        assert!(v.iter().all(|c| c.is_zero()));
        let v01 = s
            .velocity(&BodyId::new("k0"), &BodyId::new("k1"))
            .unwrap()
            .unwrap();
        assert_eq!(v01, qv(&["3/5", "0"]));
    }

    #[test]
    fn worldview_transform_identity_and_symmetry() {
        let s = two_observer_scenario();
        let k0 = BodyId::new("k0");
        let k1 = BodyId::new("k1");
        assert_eq!(
            s.worldview_transform(&k0, &k0).unwrap(),
            AffineMap::identity(3)
        );
        let w01 = s.worldview_transform(&k0, &k1).unwrap();
        let w10 = s.worldview_transform(&k1, &k0).unwrap();
        assert_eq!(w01.inverse().unwrap(), w10);
        assert!(w01.is_poincare());
    }

    #[test]
    fn event_sets_cohere_across_frames() {
        let s = two_observer_scenario();
        let k0 = BodyId::new("k0");
        let k1 = BodyId::new("k1");
        let w = s.worldview_transform(&k0, &k1).unwrap();
        for p in [
            Point::from_ints(&[0, 0, 0]),
            Point::from_ints(&[5, 3, 0]),
            Point::from_ints(&[2, 7, 1]),
        ] {
            assert_eq!(
                s.event_at(&k0, &p).unwrap(),
                s.event_at(&k1, &w.apply(&p)).unwrap()
            );
        }
    }

    #[test]
    fn rest_mass_requires_consistent_rest_observers() {
        let mut s = two_observer_scenario();
        let k0 = BodyId::new("k0");
        let k2 = BodyId::new("k2");
        assert_eq!(s.rest_mass(&k0).unwrap(), Some(q("1")));
        // a second observer co-moving with k0 that disagrees on its mass
        s.bodies.push(Body {
            id: k2.clone(),
            kind: BodyKind::Observer,
            worldline: s.body(&k0).unwrap().worldline.clone(),
        });
        s.frames.insert(k2.clone(), AffineMap::identity(3));
        for b in ["k0", "k1", "k2"] {
            s.masses.insert((k2.clone(), BodyId::new(b)), q("7"));
        }
        for k in ["k0", "k1"] {
            s.masses.insert((BodyId::new(k), k2.clone()), q("7"));
        }
        assert_eq!(s.rest_mass(&k0).unwrap(), None);
    }

    #[test]
    fn no_rest_observer_means_no_rest_mass() {
        let mut s = two_observer_scenario();
        let b = BodyId::new("ph");
        // slope-1 body: no subluminal observer ever sees it at rest
        s.bodies.push(Body {
            id: b.clone(),
            kind: BodyKind::Photon,
            worldline: Worldline::full(
                crate::minkowski::Line::new(
                    Point::origin(3),
                    Point::from_ints(&[1, 1, 0]),
                )
                .unwrap(),
            )
            .unwrap(),
        });
        for k in ["k0", "k1"] {
            s.masses.insert((BodyId::new(k), b.clone()), q("1"));
        }
        assert_eq!(s.rest_mass(&b).unwrap(), None);
    }

    #[test]
    fn validate_flags_structural_problems() {
        let mut s = two_observer_scenario();
        let k0 = BodyId::new("k0");
        let k1 = BodyId::new("k1");
        s.masses.insert((k0.clone(), k1.clone()), Quantity::zero());
        s.masses.remove(&(k1.clone(), k0.clone()));
        let violations = s.validate();
        assert!(violations.contains(&Violation::MassNotPositive {
            observer: k0.clone(),
            body: k1.clone()
        }));
        assert!(violations.contains(&Violation::MassRelNotTotal {
            observer: k1,
            body: k0
        }));
    }

    #[test]
    fn validate_flags_ax_self_violation() {
        let mut s = two_observer_scenario();
        let k0 = BodyId::new("k0");
        // shift k0's frame spatially off its own world-line
        let offset = AffineMap::translation_by(&Point::from_ints(&[0, 1, 0]));
        let frame = s.frames[&k0].clone();
        s.frames.insert(k0.clone(), offset.compose(&frame));
        assert!(s.validate().contains(&Violation::AxSelfViolation(k0)));
    }
}
