//! Coordinate geometry of Q^d: points with time/space decomposition,
//! Euclidean and Minkowski metrics, lines, segments and world-lines.

use thiserror::Error;

use crate::quantity::Quantity;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("the two points coincide")]
    DegeneratePair,
    #[error("empty input")]
    EmptyInput,
    #[error("zero direction vector")]
    ZeroDirection,
    #[error("a time-bounded world-line needs a carrier with nonzero time direction")]
    UnboundableCarrier,
    #[error("empty world-line interval")]
    EmptyInterval,
}

/// A coordinate point (or vector) of Q^d, d >= 2.
#[derive(Clone, PartialEq, Eq)]
pub struct Point {
    coords: Vec<Quantity>,
}

impl Point {
    pub fn new(coords: Vec<Quantity>) -> Point {
        assert!(coords.len() >= 2, "spacetime dimension must be at least 2");
        Point { coords }
    }

    pub fn origin(dim: usize) -> Point {
        Point::new(vec![Quantity::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Point {
        Point::new(coords.iter().map(|&c| Quantity::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Quantity] {
        &self.coords
    }

    /// p_tau, the time component.
    pub fn time(&self) -> &Quantity {
        &self.coords[0]
    }

    /// p_sigma, the space component.
    pub fn space(&self) -> &[Quantity] {
        &self.coords[1..]
    }

    pub fn add(&self, rhs: &Point) -> Point {
        assert_eq!(self.dim(), rhs.dim());
        Point::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &Point) -> Point {
        assert_eq!(self.dim(), rhs.dim());
        Point::new(
            self.coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, c: &Quantity) -> Point {
        Point::new(self.coords.iter().map(|a| a * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl std::ops::Index<usize> for Point {
    type Output = Quantity;
    fn index(&self, i: usize) -> &Quantity {
        &self.coords[i]
    }
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// |v| = sqrt(v_1^2 + ... + v_n^2), exact and nonnegative.
pub fn euclid_len(v: &[Quantity]) -> Quantity {
    let sum: Quantity = v.iter().map(|c| c.square()).sum();
    sum.sqrt().expect("sum of squares is nonnegative")
}

/// Signed Minkowski length: sqrt(t^2 - |s|^2) on causal vectors, the negated
/// square root of the absolute value on spacelike ones.
pub fn mink_len(p: &Point) -> Quantity {
    let t2 = p.time().square();
    let s2: Quantity = p.space().iter().map(|c| c.square()).sum();
    let diff = &t2 - &s2;
    if diff.is_negative() {
        -(-&diff).sqrt().expect("negated value is positive")
    } else {
        diff.sqrt().expect("nonnegative by the sign check")
    }
}

pub fn mink_dist(p: &Point, q: &Point) -> Result<Quantity, GeometryError> {
    if p.dim() != q.dim() {
        return Err(GeometryError::DimensionMismatch(p.dim(), q.dim()));
    }
    Ok(mink_len(&p.sub(q)))
}

/// True iff the segment from p to q has slope 1, i.e. photon-traversable.
pub fn is_slope_one(p: &Point, q: &Point) -> Result<bool, GeometryError> {
    if p.dim() != q.dim() {
        return Err(GeometryError::DimensionMismatch(p.dim(), q.dim()));
    }
    if p == q {
        return Err(GeometryError::DegeneratePair);
    }
    let d = p.sub(q);
    let spatial: Quantity = d.space().iter().map(|c| c.square()).sum();
    Ok(spatial == d.time().square())
}

/// A full line { base + λ·direction }. Two lines are equal iff they have the
/// same point set.
#[derive(Clone, Debug)]
pub struct Line {
    pub base: Point,
    pub direction: Point,
}

impl Line {
    pub fn new(base: Point, direction: Point) -> Result<Line, GeometryError> {
        if base.dim() != direction.dim() {
            return Err(GeometryError::DimensionMismatch(base.dim(), direction.dim()));
        }
        if direction.is_zero() {
            return Err(GeometryError::ZeroDirection);
        }
        Ok(Line { base, direction })
    }

    pub fn through(p: &Point, q: &Point) -> Result<Line, GeometryError> {
        if p == q {
            return Err(GeometryError::DegeneratePair);
        }
        Line::new(p.clone(), q.sub(p))
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn point_at(&self, lambda: &Quantity) -> Point {
        self.base.add(&self.direction.scale(lambda))
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.parameter_of(p).is_some()
    }

    /// λ with base + λ·direction = p, when p is on the line.
    pub fn parameter_of(&self, p: &Point) -> Option<Quantity> {
        if p.dim() != self.dim() {
            return None;
        }
        let delta = p.sub(&self.base);
        let pivot = self
            .direction
            .coords()
            .iter()
            .position(|c| !c.is_zero())
            .expect("direction is nonzero");
        let lambda = &delta[pivot] / &self.direction[pivot];
        for i in 0..self.dim() {
            if delta[i] != &lambda * &self.direction[i] {
                return None;
            }
        }
        Some(lambda)
    }

    pub fn is_parallel_to(&self, other: &Line) -> bool {
        parallel(&self.direction, &other.direction)
    }
}

/// True when u and v are linearly dependent (all 2x2 minors vanish).
pub fn parallel(u: &Point, v: &Point) -> bool {
    for i in 0..u.dim() {
        for j in (i + 1)..u.dim() {
            if &u[i] * &v[j] != &u[j] * &v[i] {
                return false;
            }
        }
    }
    true
}

impl PartialEq for Line {
    fn eq(&self, other: &Self) -> bool {
        self.is_parallel_to(other) && self.contains(&other.base)
    }
}

impl Eq for Line {}

/// The closed segment between two distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub p: Point,
    pub q: Point,
}

impl Segment {
    pub fn new(p: Point, q: Point) -> Result<Segment, GeometryError> {
        if p == q {
            return Err(GeometryError::DegeneratePair);
        }
        if p.dim() != q.dim() {
            return Err(GeometryError::DimensionMismatch(p.dim(), q.dim()));
        }
        Ok(Segment { p, q })
    }

    pub fn contains(&self, x: &Point) -> bool {
        let line = Line::through(&self.p, &self.q).expect("endpoints are distinct");
        match line.parameter_of(x) {
            None => false,
            Some(lambda) => !lambda.is_negative() && lambda <= Quantity::one(),
        }
    }

    pub fn line(&self) -> Line {
        Line::through(&self.p, &self.q).expect("endpoints are distinct")
    }
}

/// A world-line: full line, ray or segment, stored as a carrier line plus a
/// closed time interval. Carriers with zero time direction (simultaneity
/// lines) are admitted only unbounded; bodies moving with a defined velocity
/// never have them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Worldline {
    carrier: Line,
    tmin: Option<Quantity>,
    tmax: Option<Quantity>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WorldlineKind {
    FullLine,
    Ray,
    Segment,
}

impl Worldline {
    pub fn new(
        carrier: Line,
        tmin: Option<Quantity>,
        tmax: Option<Quantity>,
    ) -> Result<Worldline, GeometryError> {
        let horizontal = carrier.direction.time().is_zero();
        if horizontal && (tmin.is_some() || tmax.is_some()) {
            return Err(GeometryError::UnboundableCarrier);
        }
        if let (Some(a), Some(b)) = (&tmin, &tmax) {
            if a >= b {
                return Err(GeometryError::EmptyInterval);
            }
        }
        let carrier = normalize_carrier(carrier);
        Ok(Worldline { carrier, tmin, tmax })
    }

    pub fn full(carrier: Line) -> Result<Worldline, GeometryError> {
        Worldline::new(carrier, None, None)
    }

    pub fn kind(&self) -> WorldlineKind {
        match (&self.tmin, &self.tmax) {
            (None, None) => WorldlineKind::FullLine,
            (Some(_), Some(_)) => WorldlineKind::Segment,
            _ => WorldlineKind::Ray,
        }
    }

    pub fn carrier(&self) -> &Line {
        &self.carrier
    }

    pub fn tmin(&self) -> Option<&Quantity> {
        self.tmin.as_ref()
    }

    pub fn tmax(&self) -> Option<&Quantity> {
        self.tmax.as_ref()
    }

    pub fn is_horizontal(&self) -> bool {
        self.carrier.direction.time().is_zero()
    }

    pub fn contains(&self, p: &Point) -> bool {
        if !self.carrier.contains(p) {
            return false;
        }
        let t = p.time();
        if let Some(a) = &self.tmin {
            if t < a {
                return false;
            }
        }
        if let Some(b) = &self.tmax {
            if t > b {
                return false;
            }
        }
        true
    }

    /// The unique point at time t, or None outside the interval or on a
    /// horizontal carrier (where the point would not be unique).
    pub fn point_at_time(&self, t: &Quantity) -> Option<Point> {
        if self.is_horizontal() {
            return None;
        }
        if let Some(a) = &self.tmin {
            if t < a {
                return None;
            }
        }
        if let Some(b) = &self.tmax {
            if t > b {
                return None;
            }
        }
        let lambda = &(t - self.carrier.base.time()) / self.carrier.direction.time();
        Some(self.carrier.point_at(&lambda))
    }

    /// The endpoint where the world-line stops going forward in time.
    pub fn top_endpoint(&self) -> Option<Point> {
        self.tmax.as_ref().and_then(|t| self.point_at_time(t))
    }

    pub fn bottom_endpoint(&self) -> Option<Point> {
        self.tmin.as_ref().and_then(|t| self.point_at_time(t))
    }

    /// Two distinct points on the world-line, for collinearity tests.
    pub fn sample_pair(&self) -> (Point, Point) {
        if self.is_horizontal() {
            let p = self.carrier.point_at(&Quantity::zero());
            let q = self.carrier.point_at(&Quantity::one());
            return (p, q);
        }
        let (t0, t1) = match (&self.tmin, &self.tmax) {
            (Some(a), Some(b)) => (a.clone(), b.clone()),
            (Some(a), None) => (a.clone(), a + &Quantity::one()),
            (None, Some(b)) => (b - &Quantity::one(), b.clone()),
            (None, None) => (Quantity::zero(), Quantity::one()),
        };
        (
            self.point_at_time(&t0).expect("t0 is inside the interval"),
            self.point_at_time(&t1).expect("t1 is inside the interval"),
        )
    }
}

/// Scale the direction so its time component is 1 where possible, otherwise
/// pivot on the first nonzero spatial component. Bounds are untouched.
fn normalize_carrier(line: Line) -> Line {
    let dir = &line.direction;
    let pivot = if !dir.time().is_zero() {
        dir.time().clone()
    } else {
        dir.coords()
            .iter()
            .find(|c| !c.is_zero())
            .expect("direction is nonzero")
            .clone()
    };
    let inv = pivot.inv().expect("pivot is nonzero");
    Line {
        base: line.base,
        direction: dir.scale(&inv),
    }
}

/// Outcome of a common-line query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommonLine {
    /// A line containing every input point.
    Line(Line),
    /// All points coincide; a single point lies on infinitely many lines, so
    /// collinearity holds vacuously.
    Degenerate,
    /// No line contains all the inputs.
    None,
}

impl CommonLine {
    pub fn is_collinear(&self) -> bool {
        !matches!(self, CommonLine::None)
    }
}

/// Common line of a family of point sets, each given by representative
/// points that all lie in the set.
pub fn common_line(point_sets: &[Vec<Point>]) -> Result<CommonLine, GeometryError> {
    let points: Vec<&Point> = point_sets.iter().flatten().collect();
    if points.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    let first = points[0];
    let second = match points.iter().find(|p| ***p != *first) {
        None => return Ok(CommonLine::Degenerate),
        Some(p) => *p,
    };
    let line = Line::through(first, second)?;
    for p in &points {
        if !line.contains(p) {
            return Ok(CommonLine::None);
        }
    }
    Ok(CommonLine::Line(line))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Quantity {
        s.parse().unwrap()
    }

    fn pt(coords: &[&str]) -> Point {
        Point::new(coords.iter().map(|c| q(c)).collect())
    }

    #[test]
    fn euclid_len_examples() {
        assert_eq!(euclid_len(&[Quantity::zero(), Quantity::zero()]), Quantity::zero());
        assert_eq!(
            euclid_len(&[Quantity::from_int(3), Quantity::from_int(4)]),
            Quantity::from_int(5)
        );
        assert_eq!(euclid_len(&[Quantity::one(), Quantity::one()]), q("sqrt(2)"));
    }

    #[test]
    fn mink_len_sign_convention() {
        assert_eq!(mink_len(&Point::from_ints(&[1, 0, 0, 0])), Quantity::one());
        assert_eq!(mink_len(&Point::from_ints(&[1, 1, 0, 0])), Quantity::zero());
        assert_eq!(
            mink_len(&Point::from_ints(&[0, 1, 0, 0])),
            Quantity::from_int(-1)
        );
    }

    #[test]
    fn mink_dist_examples() {
        let p = Point::from_ints(&[2, 0]);
        assert_eq!(mink_dist(&p, &p).unwrap(), Quantity::zero());
        assert_eq!(
            mink_dist(&Point::from_ints(&[2, 0]), &Point::from_ints(&[1, 0])).unwrap(),
            Quantity::one()
        );
        assert_eq!(
            mink_dist(&Point::from_ints(&[0, 0]), &pt(&["3/5", "1"])).unwrap(),
            q("-4/5")
        );
    }

    #[test]
    fn slope_one_examples() {
        let o2 = Point::from_ints(&[0, 0]);
        assert!(is_slope_one(&o2, &Point::from_ints(&[1, 1])).unwrap());
        assert!(is_slope_one(&Point::from_ints(&[0, 0, 0]), &Point::from_ints(&[5, 3, 4])).unwrap());
        assert!(!is_slope_one(&o2, &Point::from_ints(&[2, 1])).unwrap());
        assert_eq!(
            is_slope_one(&o2, &o2),
            Err(GeometryError::DegeneratePair)
        );
    }

    #[test]
    fn slope_one_iff_null_distance() {
        let pairs = [
            (Point::from_ints(&[0, 0, 0]), Point::from_ints(&[5, 3, 4])),
            (Point::from_ints(&[0, 0, 0]), Point::from_ints(&[2, 1, 0])),
            (Point::from_ints(&[1, 2, 3]), Point::from_ints(&[2, 2, 4])),
        ];
        for (p, r) in &pairs {
            assert_eq!(
                is_slope_one(p, r).unwrap(),
                mink_dist(p, r).unwrap().is_zero()
            );
        }
    }

    #[test]
    fn segment_membership() {
        let s = Segment::new(Point::from_ints(&[0, 0]), Point::from_ints(&[2, 2])).unwrap();
        assert!(s.contains(&Point::from_ints(&[1, 1])));
        assert!(!s.contains(&Point::from_ints(&[3, 3])));
    }

    #[test]
    fn line_membership_with_fractional_direction() {
        let line = Line::new(Point::from_ints(&[0, 0]), pt(&["1", "3/5"])).unwrap();
        assert!(line.contains(&Point::from_ints(&[5, 3])));
        assert!(!line.contains(&Point::from_ints(&[5, 4])));
    }

    #[test]
    fn line_equality_is_point_set_equality() {
        let l1 = Line::new(Point::from_ints(&[0, 0]), Point::from_ints(&[1, 1])).unwrap();
        let l2 = Line::new(Point::from_ints(&[2, 2]), Point::from_ints(&[-3, -3])).unwrap();
        assert_eq!(l1, l2);
        let l3 = Line::new(Point::from_ints(&[0, 1]), Point::from_ints(&[1, 1])).unwrap();
        assert_ne!(l1, l3);
    }

    #[test]
    fn common_line_cases() {
        let collinear = vec![vec![
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[1, 1]),
            Point::from_ints(&[2, 2]),
        ]];
        match common_line(&collinear).unwrap() {
            CommonLine::Line(l) => {
                assert!(l.contains(&Point::from_ints(&[3, 3])));
            }
            other => panic!("expected a line, got {other:?}"),
        }

        let triangle = vec![vec![
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[1, 1]),
            Point::from_ints(&[1, 0]),
        ]];
        assert_eq!(common_line(&triangle).unwrap(), CommonLine::None);

        let single = vec![vec![Point::from_ints(&[1, 2]); 3]];
        assert_eq!(common_line(&single).unwrap(), CommonLine::Degenerate);

        assert_eq!(common_line(&[]), Err(GeometryError::EmptyInput));

        let segments = vec![
            vec![Point::from_ints(&[0, 0]), Point::from_ints(&[1, 2])],
            vec![Point::from_ints(&[1, 2]), Point::from_ints(&[3, 6])],
        ];
        match common_line(&segments).unwrap() {
            CommonLine::Line(l) => assert!(parallel(&l.direction, &Point::from_ints(&[1, 2]))),
            other => panic!("expected a line, got {other:?}"),
        }
    }

    #[test]
    fn worldline_membership_and_loc() {
        let carrier = Line::new(Point::from_ints(&[0, 1, 0]), pt(&["1", "0", "0"])).unwrap();
        let w = Worldline::new(carrier, Some(Quantity::zero()), None).unwrap();
        assert_eq!(
            w.point_at_time(&Quantity::from_int(5)),
            Some(Point::from_ints(&[5, 1, 0]))
        );
        assert_eq!(w.point_at_time(&Quantity::from_int(-1)), None);
        assert!(w.contains(&Point::from_ints(&[2, 1, 0])));
        assert!(!w.contains(&Point::from_ints(&[-2, 1, 0])));
        assert_eq!(w.kind(), WorldlineKind::Ray);
    }

    #[test]
    fn horizontal_worldlines_reject_bounds() {
        let carrier = Line::new(Point::from_ints(&[0, 0]), Point::from_ints(&[0, 1])).unwrap();
        assert!(Worldline::new(carrier.clone(), Some(Quantity::zero()), None).is_err());
        let full = Worldline::full(carrier).unwrap();
        assert!(full.point_at_time(&Quantity::zero()).is_none());
    }
}
