//! Affine maps of Q^d, the Poincaré predicate, Lorentz boosts, time dilation
//! and the median-observer construction.
//!
//! Boost convention: `boost_for_velocity(v)` is the passive map taking world
//! coordinates to the coordinates of a frame co-moving at velocity v, so the
//! world-line of a body with velocity v maps onto the time axis. The map is
//! orthochronous (the time-time entry is the positive gamma factor).

use thiserror::Error;

use crate::minkowski::{euclid_len, GeometryError, Line, Point, Worldline};
use crate::quantity::Quantity;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("the linear part is singular")]
    SingularMap,
    #[error("speed must be strictly less than that of light")]
    SpeedNotSubluminal,
    #[error("equal nonzero velocities admit no median observer adjustment")]
    NoMedianNeeded,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// An invertible affine map x ↦ L·x + t of Q^d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    linear: Vec<Vec<Quantity>>,
    translation: Vec<Quantity>,
}

impl AffineMap {
    /// Builds the map, rejecting singular linear parts.
    pub fn new(
        linear: Vec<Vec<Quantity>>,
        translation: Vec<Quantity>,
    ) -> Result<AffineMap, TransformError> {
        let d = translation.len();
        if linear.len() != d || linear.iter().any(|row| row.len() != d) {
            return Err(TransformError::DimensionMismatch(linear.len(), d));
        }
        let map = AffineMap {
            linear,
            translation,
        };
        if map.determinant().is_zero() {
            return Err(TransformError::SingularMap);
        }
        Ok(map)
    }

    pub fn identity(dim: usize) -> AffineMap {
        let mut linear = vec![vec![Quantity::zero(); dim]; dim];
        for (i, row) in linear.iter_mut().enumerate() {
            row[i] = Quantity::one();
        }
        AffineMap {
            linear,
            translation: vec![Quantity::zero(); dim],
        }
    }

    pub fn translation_by(offset: &Point) -> AffineMap {
        let mut map = AffineMap::identity(offset.dim());
        map.translation = offset.coords().to_vec();
        map
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn linear(&self) -> &[Vec<Quantity>] {
        &self.linear
    }

    pub fn translation(&self) -> &[Quantity] {
        &self.translation
    }

    pub fn apply(&self, p: &Point) -> Point {
        let mut out = Vec::with_capacity(self.dim());
        for (row, t) in self.linear.iter().zip(&self.translation) {
            let dot: Quantity = row
                .iter()
                .zip(p.coords())
                .map(|(a, b)| a * b)
                .sum();
            out.push(&dot + t);
        }
        Point::new(out)
    }

    /// Image of a direction vector (translation ignored).
    pub fn apply_vector(&self, v: &Point) -> Point {
        let mut out = Vec::with_capacity(self.dim());
        for row in &self.linear {
            out.push(row.iter().zip(v.coords()).map(|(a, b)| a * b).sum());
        }
        Point::new(out)
    }

    /// self ∘ other: first `other`, then `self`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let d = self.dim();
        let linear: Vec<Vec<Quantity>> = self
            .linear
            .iter()
            .map(|row| {
                (0..d)
                    .map(|j| (0..d).map(|k| &row[k] * &other.linear[k][j]).sum())
                    .collect()
            })
            .collect();
        let translation = self
            .apply(&Point::new(other.translation.clone()))
            .coords()
            .to_vec();
        AffineMap {
            linear,
            translation,
        }
    }

    pub fn determinant(&self) -> Quantity {
        let d = self.dim();
        let mut m = self.linear.clone();
        let mut det = Quantity::one();
        for col in 0..d {
            let pivot = match (col..d).find(|&r| !m[r][col].is_zero()) {
                None => return Quantity::zero(),
                Some(p) => p,
            };
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            let pv = m[col][col].clone();
            det = &det * &pv;
            let pivot_row = m[col].clone();
            for row in m.iter_mut().skip(col + 1) {
                let factor = &row[col] / &pv;
                for (entry, pivot_entry) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *entry = &*entry - &(&factor * pivot_entry);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<AffineMap, TransformError> {
        let d = self.dim();
        // Gauss-Jordan on [L | I].
        let mut m = self.linear.clone();
        let mut inv = AffineMap::identity(d).linear;
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(TransformError::SingularMap)?;
            m.swap(pivot, col);
            inv.swap(pivot, col);
            let pv = m[col][col].clone();
            let pv_inv = pv.inv().map_err(|_| TransformError::SingularMap)?;
            for c in 0..d {
                m[col][c] = &m[col][c] * &pv_inv;
                inv[col][c] = &inv[col][c] * &pv_inv;
            }
            for r in 0..d {
                if r != col && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in 0..d {
                        m[r][c] = &m[r][c] - &(&factor * &m[col][c]);
                        inv[r][c] = &inv[r][c] - &(&factor * &inv[col][c]);
                    }
                }
            }
        }
        // x = L⁻¹(y - t)
        let neg_t = Point::new(self.translation.clone()).scale(&Quantity::from_int(-1));
        let lin_map = AffineMap {
            linear: inv,
            translation: vec![Quantity::zero(); d],
        };
        let translation = lin_map.apply(&neg_t).coords().to_vec();
        Ok(AffineMap {
            linear: lin_map.linear,
            translation,
        })
    }

    /// True iff the linear part satisfies LᵀηL = η for η = diag(1, −1, …, −1),
    /// which by bilinearity is equivalent to preserving Minkowski distance.
    pub fn is_poincare(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in i..d {
                // (LᵀηL)_{ij} = L_{0i}L_{0j} − Σ_{k≥1} L_{ki}L_{kj}
                let mut entry = &self.linear[0][i] * &self.linear[0][j];
                for k in 1..d {
                    entry = &entry - &(&self.linear[k][i] * &self.linear[k][j]);
                }
                let expected = if i != j {
                    Quantity::zero()
                } else if i == 0 {
                    Quantity::one()
                } else {
                    Quantity::from_int(-1)
                };
                if entry != expected {
                    return false;
                }
            }
        }
        true
    }

    /// True when future-pointing timelike vectors stay future-pointing.
    pub fn is_orthochronous(&self) -> bool {
        self.linear[0][0].is_positive()
    }

    /// Image of a world-line: the carrier maps through the linear part and
    /// the interval endpoints through the full map.
    pub fn apply_worldline(&self, w: &Worldline) -> Result<Worldline, TransformError> {
        let base = self.apply(&w.carrier().base);
        let dir = self.apply_vector(&w.carrier().direction);
        let carrier = Line::new(base, dir)?;
        let endpoint_time = |t: Option<&Quantity>| -> Option<Quantity> {
            t.map(|t| {
                let p = w
                    .point_at_time(t)
                    .expect("bounded world-lines have endpoint points");
                self.apply(&p).time().clone()
            })
        };
        let ta = endpoint_time(w.tmin());
        let tb = endpoint_time(w.tmax());
        // A time-reversing linear part swaps the endpoint roles.
        let (tmin, tmax) = match (&ta, &tb) {
            (Some(a), Some(b)) if a > b => (tb.clone(), ta.clone()),
            (Some(_), None) | (None, Some(_)) => {
                let flips = carrier.direction.time().is_negative()
                    != w.carrier().direction.time().is_negative();
                if flips {
                    (tb.clone(), ta.clone())
                } else {
                    (ta.clone(), tb.clone())
                }
            }
            _ => (ta.clone(), tb.clone()),
        };
        Ok(Worldline::new(carrier, tmin, tmax)?)
    }
}

/// An affine map checked to preserve Minkowski distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareMap {
    map: AffineMap,
}

impl PoincareMap {
    pub fn try_new(map: AffineMap) -> Result<PoincareMap, TransformError> {
        if map.is_poincare() {
            Ok(PoincareMap { map })
        } else {
            Err(TransformError::SingularMap)
        }
    }

    pub fn identity(dim: usize) -> PoincareMap {
        PoincareMap {
            map: AffineMap::identity(dim),
        }
    }

    pub fn as_affine(&self) -> &AffineMap {
        &self.map
    }

    pub fn into_affine(self) -> AffineMap {
        self.map
    }

    pub fn apply(&self, p: &Point) -> Point {
        self.map.apply(p)
    }

    pub fn compose(&self, other: &PoincareMap) -> PoincareMap {
        PoincareMap {
            map: self.map.compose(&other.map),
        }
    }

    pub fn inverse(&self) -> PoincareMap {
        PoincareMap {
            map: self.map.inverse().expect("Poincaré maps are invertible"),
        }
    }
}

/// sqrt(1 − speed²) for 0 ≤ speed < 1.
pub fn time_dilation_factor(speed: &Quantity) -> Result<Quantity, TransformError> {
    if speed.is_negative() || speed >= &Quantity::one() {
        return Err(TransformError::SpeedNotSubluminal);
    }
    Ok((&Quantity::one() - &speed.square())
        .sqrt()
        .expect("1 - speed^2 is positive"))
}

/// The pure Lorentz boost for a subluminal velocity v (a (d−1)-vector).
///
/// The inverse image of the time axis moves with velocity v, and the
/// time-time entry is γ = 1/sqrt(1 − |v|²).
pub fn boost_for_velocity(v: &[Quantity]) -> Result<PoincareMap, TransformError> {
    let d = v.len() + 1;
    let v2: Quantity = v.iter().map(|c| c.square()).sum();
    if v2 >= Quantity::one() {
        return Err(TransformError::SpeedNotSubluminal);
    }
    if v2.is_zero() {
        return Ok(PoincareMap::identity(d));
    }
    let gamma = (&Quantity::one() - &v2)
        .sqrt()
        .expect("positive by the speed check")
        .inv()
        .expect("dilation factor is nonzero");
    let mut linear = vec![vec![Quantity::zero(); d]; d];
    linear[0][0] = gamma.clone();
    for i in 0..(d - 1) {
        let gvi = &gamma * &v[i];
        linear[0][i + 1] = -&gvi;
        linear[i + 1][0] = -gvi;
    }
    let gm1_over_v2 = &(&gamma - &Quantity::one()) / &v2;
    for i in 0..(d - 1) {
        for j in 0..(d - 1) {
            let mut entry = &(&v[i] * &v[j]) * &gm1_over_v2;
            if i == j {
                entry = &entry + &Quantity::one();
            }
            linear[i + 1][j + 1] = entry;
        }
    }
    let map = AffineMap {
        linear,
        translation: vec![Quantity::zero(); d],
    };
    debug_assert!(map.is_poincare());
    Ok(PoincareMap { map })
}

/// Velocity of the direction vector of a world-line image: space over time.
pub fn velocity_of_direction(dir: &Point) -> Option<Vec<Quantity>> {
    if dir.time().is_zero() {
        return None;
    }
    let inv = dir.time().inv().expect("nonzero time component");
    Some(dir.space().iter().map(|c| c * &inv).collect())
}

/// A Poincaré map under which bodies moving with velocities u and v move
/// with exactly opposite velocities.
///
/// Non-collinear pairs are reduced to the plane of u, v and the time axis:
/// first boost away the shared component of u and v orthogonal to u − v,
/// then solve the collinear midpoint equation along u − v, keeping the
/// subluminal root of the quadratic.
pub fn median_observer_boost(
    u: &[Quantity],
    v: &[Quantity],
) -> Result<PoincareMap, TransformError> {
    let n = u.len();
    if v.len() != n {
        return Err(TransformError::DimensionMismatch(n + 1, v.len() + 1));
    }
    for w in [u, v] {
        if euclid_len(w) >= Quantity::one() {
            return Err(TransformError::SpeedNotSubluminal);
        }
    }
    if u == v {
        if u.iter().all(|c| c.is_zero()) {
            return Ok(PoincareMap::identity(n + 1));
        }
        return Err(TransformError::NoMedianNeeded);
    }
    // w = u − v; the shared perpendicular component of u and v w.r.t. w.
    let w: Vec<Quantity> = u.iter().zip(v).map(|(a, b)| a - b).collect();
    let w2: Quantity = w.iter().map(|c| c.square()).sum();
    let u_dot_w: Quantity = u.iter().zip(&w).map(|(a, b)| a * b).sum();
    let coeff = &u_dot_w / &w2;
    let perp: Vec<Quantity> = u
        .iter()
        .zip(&w)
        .map(|(a, b)| a - &(&coeff * b))
        .collect();
    let first = boost_for_velocity(&perp)?;

    let vel_after = |vel: &[Quantity]| -> Vec<Quantity> {
        let mut dir = vec![Quantity::one()];
        dir.extend_from_slice(vel);
        let image = first.as_affine().apply_vector(&Point::new(dir));
        velocity_of_direction(&image).expect("subluminal directions stay timelike")
    };
    let u1 = vel_after(u);
    let v1 = vel_after(v);
    // Both are now multiples of w; work with their scalar components along ŵ.
    let w_len = w2.sqrt().expect("w is nonzero");
    let comp = |vel: &[Quantity]| -> Quantity {
        let dot: Quantity = vel.iter().zip(&w).map(|(a, b)| a * b).sum();
        &dot / &w_len
    };
    let a = comp(&u1);
    let b = comp(&v1);
    let second = if (&a + &b).is_zero() {
        PoincareMap::identity(n + 1)
    } else {
        // (a+b)s² − 2(1+ab)s + (a+b) = 0, subluminal root.
        let one_plus_ab = &Quantity::one() + &(&a * &b);
        let sum = &a + &b;
        let disc = (&one_plus_ab.square() - &sum.square())
            .sqrt()
            .expect("discriminant is nonnegative for subluminal speeds");
        let s = &(&one_plus_ab - &disc) / &sum;
        debug_assert!(s.abs() < Quantity::one());
        let s_vec: Vec<Quantity> = w.iter().map(|c| &(&s / &w_len) * c).collect();
        boost_for_velocity(&s_vec)?
    };
    let total = second.compose(&first);
    debug_assert!({
        let mut du = vec![Quantity::one()];
        du.extend_from_slice(u);
        let mut dv = vec![Quantity::one()];
        dv.extend_from_slice(v);
        let iu = velocity_of_direction(&total.as_affine().apply_vector(&Point::new(du))).unwrap();
        let iv = velocity_of_direction(&total.as_affine().apply_vector(&Point::new(dv))).unwrap();
        iu.iter().zip(&iv).all(|(a, b)| a == &-b)
    });
    Ok(total)
}
