//! Spacetime diagrams as plain SVG, no rendering dependencies.
//!
//! Fixed mapping: the canvas is 640x640 with the frame origin at its center,
//! 60 pixels per coordinate unit, time increasing upward. Pixel positions
//! are computed exactly and printed with two decimals, so output bytes are
//! a function of the scenario alone.

use reldyn::dynamics::{center_line2, CenterLine};
use reldyn::minkowski::Point;
use reldyn::quantity::Quantity;
use reldyn::scenario::{BodyId, BodyKind, Scenario, ScenarioError};

const SIZE: i64 = 640;
const SCALE: i64 = 60;
/// Drawn time/space window in frame coordinates.
const WINDOW: i64 = 5;

pub fn parse_axes(axes: &str, dimension: usize) -> Result<usize, String> {
    let parts: Vec<&str> = axes.split(',').map(|p| p.trim()).collect();
    if parts.len() != 2 || parts[0] != "t" {
        return Err("axes must be of the form t,<spatial axis>".into());
    }
    let idx = match parts[1] {
        "x" => 1,
        "y" => 2,
        "z" => 3,
        other => return Err(format!("unknown axis `{other}`; use x, y or z")),
    };
    if idx >= dimension {
        return Err(format!(
            "axis {} needs dimension > {idx}, scenario has {dimension}",
            parts[1]
        ));
    }
    Ok(idx)
}

struct Canvas {
    body: String,
}

impl Canvas {
    fn new() -> Canvas {
        let mut body = String::new();
        body.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
        ));
        body.push_str("<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"8\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\"/></marker></defs>\n");
        body.push_str(&format!(
            "<rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>\n"
        ));
        Canvas { body }
    }

    fn line(&mut self, a: &(String, String), b: &(String, String), style: &str) {
        self.body.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {style}/>\n",
            a.0, a.1, b.0, b.1
        ));
    }

    fn circle(&mut self, c: &(String, String), r: i64, style: &str) {
        self.body.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{r}\" {style}/>\n",
            c.0, c.1
        ));
    }

    fn text(&mut self, x: i64, y: i64, content: &str) {
        self.body.push_str(&format!(
            "<text x=\"{x}\" y=\"{y}\" font-family=\"monospace\" font-size=\"12\">{content}</text>\n"
        ));
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

/// Exact frame coordinates to pixel strings with two decimals.
fn pixel(t: &Quantity, x: &Quantity) -> (String, String) {
    let half = Quantity::from_int(SIZE / 2);
    let scale = Quantity::from_int(SCALE);
    let px = &half + &(&scale * x);
    let py = &half - &(&scale * t); // SVG y grows downward
    (px.approx(2), py.approx(2))
}

fn project(p: &Point, axis: usize) -> (Quantity, Quantity) {
    (p.time().clone(), p[axis].clone())
}

/// Clip the segment of a carrier line inside the drawing window, returned as
/// two (t, x) pairs, or None when it misses the window entirely.
fn clip_carrier(
    base: &(Quantity, Quantity),
    dir: &(Quantity, Quantity),
    lambda_bounds: (Option<Quantity>, Option<Quantity>),
) -> Option<((Quantity, Quantity), (Quantity, Quantity))> {
    let window = Quantity::from_int(WINDOW);
    let neg_window = Quantity::from_int(-WINDOW);
    let mut lo: Option<Quantity> = lambda_bounds.0;
    let mut hi: Option<Quantity> = lambda_bounds.1;
    // intersect with |t| <= W and |x| <= W along the parameter
    for (b, d) in [(&base.0, &dir.0), (&base.1, &dir.1)] {
        if d.is_zero() {
            if b > &window || b < &neg_window {
                return None;
            }
            continue;
        }
        let l1 = &(&neg_window - b) / d;
        let l2 = &(&window - b) / d;
        let (lmin, lmax) = if l1 < l2 { (l1, l2) } else { (l2, l1) };
        lo = Some(match lo {
            None => lmin.clone(),
            Some(v) => v.max(lmin.clone()),
        });
        hi = Some(match hi {
            None => lmax.clone(),
            Some(v) => v.min(lmax.clone()),
        });
    }
    let (lo, hi) = (lo?, hi?);
    if lo >= hi {
        return None;
    }
    let at = |l: &Quantity| (&base.0 + &(&dir.0 * l), &base.1 + &(&dir.1 * l));
    Some((at(&lo), at(&hi)))
}

fn body_style(kind: BodyKind) -> &'static str {
    match kind {
        BodyKind::Observer => "stroke=\"#3465a4\" stroke-width=\"1.5\"",
        BodyKind::Photon => "stroke=\"#f57900\" stroke-width=\"1.5\" stroke-dasharray=\"6,3\"",
        BodyKind::Inertial => "stroke=\"#2e3436\" stroke-width=\"1.5\"",
        BodyKind::Plain => "stroke=\"#888a85\" stroke-width=\"1\"",
    }
}

pub fn render(s: &Scenario, observer: &BodyId, axis: usize) -> Result<String, ScenarioError> {
    let mut canvas = Canvas::new();
    let origin = pixel(&Quantity::zero(), &Quantity::zero());
    let axis_style = "stroke=\"#babdb6\" stroke-width=\"1\"";
    canvas.line(
        &pixel(&Quantity::from_int(-WINDOW), &Quantity::zero()),
        &pixel(&Quantity::from_int(WINDOW), &Quantity::zero()),
        axis_style,
    );
    canvas.line(
        &pixel(&Quantity::zero(), &Quantity::from_int(-WINDOW)),
        &pixel(&Quantity::zero(), &Quantity::from_int(WINDOW)),
        axis_style,
    );
    canvas.circle(&origin, 2, "fill=\"#babdb6\"");

    let frame = s.frame(observer)?;

    // world-lines
    for body in &s.bodies {
        let wl = frame.apply_worldline(&body.worldline)?;
        let base = project(&wl.carrier().base, axis);
        let dir = project(&wl.carrier().direction, axis);
        // translate time bounds into carrier parameters
        let lambda_of_time = |t: Option<&Quantity>| -> Option<Quantity> {
            t.map(|t| &(t - &base.0) / &dir.0)
        };
        let bounds = if dir.0.is_zero() {
            (None, None)
        } else {
            (lambda_of_time(wl.tmin()), lambda_of_time(wl.tmax()))
        };
        if let Some((a, b)) = clip_carrier(&base, &dir, bounds) {
            canvas.line(&pixel(&a.0, &a.1), &pixel(&b.0, &b.1), body_style(body.kind));
        }
    }

    // collision vertices, center-lines of the incoming pair, and momenta
    for collision in &s.collisions {
        let vertex = frame.apply(&collision.vertex);
        let (vt, vx) = project(&vertex, axis);
        canvas.circle(&pixel(&vt, &vx), 4, "fill=\"#cc0000\"");
        if let [b, c] = collision.incoming.as_slice() {
            if let CenterLine::Stretch(w) = center_line2(s, observer, b, c)? {
                let base = project(&w.carrier().base, axis);
                let dir = project(&w.carrier().direction, axis);
                let bounds = if dir.0.is_zero() {
                    (None, None)
                } else {
                    let l = |t: Option<&Quantity>| t.map(|t| &(t - &base.0) / &dir.0);
                    (l(w.tmin()), l(w.tmax()))
                };
                if let Some((a, b)) = clip_carrier(&base, &dir, bounds) {
                    canvas.line(
                        &pixel(&a.0, &a.1),
                        &pixel(&b.0, &b.1),
                        "stroke=\"#75507b\" stroke-width=\"1\" stroke-dasharray=\"3,3\"",
                    );
                }
            }
        }
        for id in collision.incoming.iter().chain(&collision.outgoing) {
            if let Some(p) = reldyn::dynamics::four_momentum(s, observer, id)? {
                let (pt, px) = project(p.as_point(), axis);
                let third = Quantity::ratio(1, 3);
                let tip = (&vt + &(&pt * &third), &vx + &(&px * &third));
                canvas.line(
                    &pixel(&vt, &vx),
                    &pixel(&tip.0, &tip.1),
                    "stroke=\"#4e9a06\" stroke-width=\"1.2\" marker-end=\"url(#arrow)\"",
                );
            }
        }
    }

    // legend
    let axis_name = ["t", "x", "y", "z"][axis];
    canvas.text(10, 18, &format!("frame: {observer}   projection: (t, {axis_name})"));
    if s.dimension > 2 {
        let dropped: Vec<&str> = (1..s.dimension)
            .filter(|i| *i != axis)
            .map(|i| ["t", "x", "y", "z"][i])
            .collect();
        canvas.text(10, 34, &format!("dropped axes: {}", dropped.join(", ")));
    }
    let mut y = 50;
    for body in &s.bodies {
        canvas.text(10, y, &format!("{} ({})", body.id, body.kind.name()));
        y += 14;
    }
    Ok(canvas.finish())
}
