//! Scenario file format: TOML with exact quantity literals in strings.
//!
//! Round-trips are bit-reproducible: the printer emits the canonical literal
//! for every quantity and the loader parses it back to the identical value.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    Body, BodyId, BodyKind, CollisionEvent, ExistsInecollDemand, InecollDemand, Scenario,
    ScenarioError, Witnesses,
};
use crate::minkowski::{Line, Point, Worldline};
use crate::quantity::Quantity;
use crate::transforms::AffineMap;

#[derive(Serialize, Deserialize)]
struct RawScenario {
    dimension: usize,
    #[serde(default)]
    bodies: Vec<RawBody>,
    #[serde(default)]
    frames: Vec<RawFrame>,
    #[serde(default)]
    masses: Vec<RawMass>,
    #[serde(default)]
    collisions: Vec<RawCollision>,
    #[serde(default, skip_serializing_if = "RawWitnesses::is_empty")]
    witnesses: RawWitnesses,
}

#[derive(Serialize, Deserialize)]
struct RawBody {
    id: String,
    kind: String,
    worldline: RawWorldline,
}

#[derive(Serialize, Deserialize)]
struct RawWorldline {
    base: Vec<String>,
    direction: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tmin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tmax: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct RawFrame {
    observer: String,
    matrix: Vec<Vec<String>>,
    translation: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RawMass {
    observer: String,
    body: String,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct RawCollision {
    vertex: Vec<String>,
    incoming: Vec<String>,
    outgoing: Vec<String>,
}

#[derive(Serialize, Deserialize, Default)]
struct RawWitnesses {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    photon_pairs: Vec<RawPointPair>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    thex_velocities: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    inecoll_demands: Vec<RawInecollDemand>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    exists_inecoll_demands: Vec<RawExistsDemand>,
}

impl RawWitnesses {
    fn is_empty(&self) -> bool {
        self.photon_pairs.is_empty()
            && self.thex_velocities.is_empty()
            && self.inecoll_demands.is_empty()
            && self.exists_inecoll_demands.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct RawPointPair {
    p: Vec<String>,
    q: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RawInecollDemand {
    observer: String,
    rest_mass1: String,
    rest_mass2: String,
    velocity1: Vec<String>,
    velocity2: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RawExistsDemand {
    observer: String,
    body: String,
}

fn parse_quantity(text: &str, context: &str) -> Result<Quantity, ScenarioError> {
    text.parse::<Quantity>().map_err(|e| ScenarioError::Parse {
        message: format!("{context}: `{text}` {e}"),
    })
}

fn parse_vector(parts: &[String], context: &str) -> Result<Vec<Quantity>, ScenarioError> {
    parts
        .iter()
        .map(|p| parse_quantity(p, context))
        .collect()
}

fn parse_point(parts: &[String], context: &str) -> Result<Point, ScenarioError> {
    if parts.len() < 2 {
        return Err(ScenarioError::Parse {
            message: format!("{context}: a point needs at least two coordinates"),
        });
    }
    Ok(Point::new(parse_vector(parts, context)?))
}

fn print_vector(v: &[Quantity]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

fn parse_kind(kind: &str, id: &str) -> Result<BodyKind, ScenarioError> {
    match kind {
        "observer" => Ok(BodyKind::Observer),
        "photon" => Ok(BodyKind::Photon),
        "inertial" => Ok(BodyKind::Inertial),
        "plain" => Ok(BodyKind::Plain),
        other => Err(ScenarioError::Parse {
            message: format!("body `{id}`: unknown kind `{other}`"),
        }),
    }
}

fn from_raw(raw: RawScenario) -> Result<Scenario, ScenarioError> {
    let mut bodies = Vec::new();
    for rb in raw.bodies {
        let context = format!("body `{}`", rb.id);
        let base = parse_point(&rb.worldline.base, &context)?;
        let direction = parse_point(&rb.worldline.direction, &context)?;
        let carrier = Line::new(base, direction).map_err(|e| ScenarioError::Parse {
            message: format!("{context}: {e}"),
        })?;
        let tmin = rb
            .worldline
            .tmin
            .as_deref()
            .map(|t| parse_quantity(t, &context))
            .transpose()?;
        let tmax = rb
            .worldline
            .tmax
            .as_deref()
            .map(|t| parse_quantity(t, &context))
            .transpose()?;
        let worldline = Worldline::new(carrier, tmin, tmax).map_err(|e| ScenarioError::Parse {
            message: format!("{context}: {e}"),
        })?;
        bodies.push(Body {
            id: BodyId::new(rb.id.clone()),
            kind: parse_kind(&rb.kind, &rb.id)?,
            worldline,
        });
    }
    let mut frames = BTreeMap::new();
    for rf in raw.frames {
        let context = format!("frame of `{}`", rf.observer);
        let mut matrix = Vec::new();
        for row in &rf.matrix {
            matrix.push(parse_vector(row, &context)?);
        }
        let translation = parse_vector(&rf.translation, &context)?;
        let map = AffineMap::new(matrix, translation).map_err(|e| ScenarioError::Parse {
            message: format!("{context}: {e}"),
        })?;
        frames.insert(BodyId::new(rf.observer), map);
    }
    let mut masses = BTreeMap::new();
    for rm in raw.masses {
        let context = format!("mass of `{}` per `{}`", rm.body, rm.observer);
        masses.insert(
            (BodyId::new(rm.observer), BodyId::new(rm.body)),
            parse_quantity(&rm.value, &context)?,
        );
    }
    let mut collisions = Vec::new();
    for rc in raw.collisions {
        collisions.push(CollisionEvent {
            vertex: parse_point(&rc.vertex, "collision vertex")?,
            incoming: rc.incoming.into_iter().map(BodyId::new).collect(),
            outgoing: rc.outgoing.into_iter().map(BodyId::new).collect(),
        });
    }
    let mut witnesses = Witnesses::default();
    for pair in raw.witnesses.photon_pairs {
        witnesses.photon_pairs.push((
            parse_point(&pair.p, "photon witness pair")?,
            parse_point(&pair.q, "photon witness pair")?,
        ));
    }
    for v in raw.witnesses.thex_velocities {
        witnesses
            .thex_velocities
            .push(parse_vector(&v, "thought-experiment velocity")?);
    }
    for d in raw.witnesses.inecoll_demands {
        witnesses.inecoll_demands.push(InecollDemand {
            observer: BodyId::new(d.observer),
            rest_mass1: parse_quantity(&d.rest_mass1, "collision demand")?,
            rest_mass2: parse_quantity(&d.rest_mass2, "collision demand")?,
            velocity1: parse_vector(&d.velocity1, "collision demand")?,
            velocity2: parse_vector(&d.velocity2, "collision demand")?,
        });
    }
    for d in raw.witnesses.exists_inecoll_demands {
        witnesses.exists_inecoll_demands.push(ExistsInecollDemand {
            observer: BodyId::new(d.observer),
            body: BodyId::new(d.body),
        });
    }
    Ok(Scenario {
        dimension: raw.dimension,
        bodies,
        frames,
        masses,
        collisions,
        witnesses,
    })
}

fn to_raw(s: &Scenario) -> RawScenario {
    RawScenario {
        dimension: s.dimension,
        bodies: s
            .bodies
            .iter()
            .map(|b| RawBody {
                id: b.id.0.clone(),
                kind: b.kind.name().to_owned(),
                worldline: RawWorldline {
                    base: print_vector(b.worldline.carrier().base.coords()),
                    direction: print_vector(b.worldline.carrier().direction.coords()),
                    tmin: b.worldline.tmin().map(|t| t.to_string()),
                    tmax: b.worldline.tmax().map(|t| t.to_string()),
                },
            })
            .collect(),
        frames: s
            .frames
            .iter()
            .map(|(k, f)| RawFrame {
                observer: k.0.clone(),
                matrix: f.linear().iter().map(|row| print_vector(row)).collect(),
                translation: print_vector(f.translation()),
            })
            .collect(),
        masses: s
            .masses
            .iter()
            .map(|((k, b), m)| RawMass {
                observer: k.0.clone(),
                body: b.0.clone(),
                value: m.to_string(),
            })
            .collect(),
        collisions: s
            .collisions
            .iter()
            .map(|c| RawCollision {
                vertex: print_vector(c.vertex.coords()),
                incoming: c.incoming.iter().map(|b| b.0.clone()).collect(),
                outgoing: c.outgoing.iter().map(|b| b.0.clone()).collect(),
            })
            .collect(),
        witnesses: RawWitnesses {
            photon_pairs: s
                .witnesses
                .photon_pairs
                .iter()
                .map(|(p, q)| RawPointPair {
                    p: print_vector(p.coords()),
                    q: print_vector(q.coords()),
                })
                .collect(),
            thex_velocities: s
                .witnesses
                .thex_velocities
                .iter()
                .map(|v| print_vector(v))
                .collect(),
            inecoll_demands: s
                .witnesses
                .inecoll_demands
                .iter()
                .map(|d| RawInecollDemand {
                    observer: d.observer.0.clone(),
                    rest_mass1: d.rest_mass1.to_string(),
                    rest_mass2: d.rest_mass2.to_string(),
                    velocity1: print_vector(&d.velocity1),
                    velocity2: print_vector(&d.velocity2),
                })
                .collect(),
            exists_inecoll_demands: s
                .witnesses
                .exists_inecoll_demands
                .iter()
                .map(|d| RawExistsDemand {
                    observer: d.observer.0.clone(),
                    body: d.body.0.clone(),
                })
                .collect(),
        },
    }
}

/// Parse a scenario from TOML text and validate it.
pub fn scenario_from_str(text: &str) -> Result<Scenario, ScenarioError> {
    let raw: RawScenario = toml::from_str(text).map_err(|e| ScenarioError::Parse {
        message: e.to_string(),
    })?;
    let scenario = from_raw(raw)?;
    let violations = scenario.validate();
    if !violations.is_empty() {
        return Err(ScenarioError::Validation(violations));
    }
    Ok(scenario)
}

/// Canonical text for a scenario; deterministic for a fixed value.
pub fn scenario_to_string(s: &Scenario) -> String {
    toml::to_string(&to_raw(s)).expect("scenario serialization cannot fail")
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
    let text =
        std::fs::read_to_string(path.as_ref()).map_err(|e| ScenarioError::Io(e.to_string()))?;
    scenario_from_str(&text)
}

pub fn save_scenario(s: &Scenario, path: impl AsRef<Path>) -> Result<(), ScenarioError> {
    std::fs::write(path.as_ref(), scenario_to_string(s))
        .map_err(|e| ScenarioError::Io(e.to_string()))
}
