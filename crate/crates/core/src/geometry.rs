//! Geodesics of the upper half-plane.
//!
//! A geodesic is either a semicircle orthogonal to the real axis or a
//! vertical line. Crossing pairs get two independent angle computations:
//! the closed-form `cos²` from centers and radii ([`angle_cos2`]) and the
//! counterclockwise tangent rotation ([`oriented_angle`]).

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

use crate::tolerance::Tolerances;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("geodesics do not cross")]
    NoCrossing,
    #[error("cos² evaluated to {0}, outside [0, 1] beyond rounding")]
    Cos2OutOfRange(f64),
}

/// A point of the boundary circle `ℝ ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl BoundaryPoint {
    pub fn is_infinite(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            BoundaryPoint::Finite(x) => Some(x),
            BoundaryPoint::Infinity => None,
        }
    }

    /// Position on the boundary circle, `2·atan(x)` in `(-π, π)` with `∞ ↦ π`.
    pub fn circle_param(&self) -> f64 {
        match *self {
            BoundaryPoint::Finite(x) => 2.0 * x.atan(),
            BoundaryPoint::Infinity => PI,
        }
    }

    /// Total order on the real line with `∞` above everything.
    pub fn cmp_real(&self, other: &BoundaryPoint) -> Ordering {
        match (self, other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => Ordering::Equal,
            (BoundaryPoint::Infinity, _) => Ordering::Greater,
            (_, BoundaryPoint::Infinity) => Ordering::Less,
            (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => a.total_cmp(b),
        }
    }

    pub fn approx_eq(&self, other: &BoundaryPoint, tol: f64) -> bool {
        match (self, other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
            (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs())),
            _ => false,
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Finite(x) => write!(f, "{x}"),
            BoundaryPoint::Infinity => write!(f, "∞"),
        }
    }
}

/// A point `x + iy` of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
}

impl HPoint {
    /// # Panics
    /// If `y` is not strictly positive.
    pub fn new(x: f64, y: f64) -> Self {
        assert!(y > 0.0, "upper half-plane point needs y > 0, got {y}");
        HPoint { x, y }
    }

    pub const I: HPoint = HPoint { x: 0.0, y: 1.0 };
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeodesicShape {
    Semicircle { center: f64, radius: f64 },
    Vertical { x: f64 },
}

/// A complete geodesic of H², oriented from `from` to `to`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic {
    shape: GeodesicShape,
    from: BoundaryPoint,
    to: BoundaryPoint,
}

impl Geodesic {
    /// Semicircle oriented left to right.
    pub fn semicircle(center: f64, radius: f64) -> Self {
        assert!(radius > 0.0, "semicircle radius must be positive");
        Geodesic {
            shape: GeodesicShape::Semicircle { center, radius },
            from: BoundaryPoint::Finite(center - radius),
            to: BoundaryPoint::Finite(center + radius),
        }
    }

    /// Vertical line oriented upward.
    pub fn vertical(x: f64) -> Self {
        Geodesic {
            shape: GeodesicShape::Vertical { x },
            from: BoundaryPoint::Finite(x),
            to: BoundaryPoint::Infinity,
        }
    }

    /// The geodesic joining two distinct ideal points, oriented `from → to`.
    ///
    /// Returns `None` when the endpoints coincide.
    pub fn from_endpoints(from: BoundaryPoint, to: BoundaryPoint) -> Option<Self> {
        let shape = match (from, to) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => return None,
            (BoundaryPoint::Finite(x), BoundaryPoint::Infinity)
            | (BoundaryPoint::Infinity, BoundaryPoint::Finite(x)) => GeodesicShape::Vertical { x },
            (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => {
                if p == q {
                    return None;
                }
                GeodesicShape::Semicircle {
                    center: 0.5 * (p + q),
                    radius: 0.5 * (p - q).abs(),
                }
            }
        };
        Some(Geodesic { shape, from, to })
    }

    pub(crate) fn with_shape_and_orientation(shape: GeodesicShape, from: BoundaryPoint, to: BoundaryPoint) -> Self {
        Geodesic { shape, from, to }
    }

    pub fn shape(&self) -> GeodesicShape {
        self.shape
    }

    pub fn from(&self) -> BoundaryPoint {
        self.from
    }

    pub fn to(&self) -> BoundaryPoint {
        self.to
    }

    pub fn reversed(&self) -> Self {
        Geodesic {
            shape: self.shape,
            from: self.to,
            to: self.from,
        }
    }

    /// True when the orientation runs toward increasing `x` (semicircle) or
    /// upward (vertical line).
    pub fn is_forward(&self) -> bool {
        match self.shape {
            GeodesicShape::Semicircle { .. } => self.from.cmp_real(&self.to) == Ordering::Less,
            GeodesicShape::Vertical { .. } => self.to.is_infinite(),
        }
    }

    /// Same point set, ignoring orientation.
    pub fn same_line(&self, other: &Geodesic, tol: f64) -> bool {
        let scale = |v: f64| tol * (1.0 + v.abs());
        match (self.shape, other.shape) {
            (GeodesicShape::Vertical { x: a }, GeodesicShape::Vertical { x: b }) => (a - b).abs() <= scale(a),
            (
                GeodesicShape::Semicircle { center: m1, radius: r1 },
                GeodesicShape::Semicircle { center: m2, radius: r2 },
            ) => (m1 - m2).abs() <= scale(m1) && (r1 - r2).abs() <= scale(r1),
            _ => false,
        }
    }

    /// Residual of the defining equation at `p`: `|(x−m)² + y² − r²|`
    /// for a semicircle, `|x − v|` for a vertical line.
    pub fn residual(&self, p: HPoint) -> f64 {
        match self.shape {
            GeodesicShape::Semicircle { center, radius } => {
                ((p.x - center).powi(2) + p.y * p.y - radius * radius).abs()
            }
            GeodesicShape::Vertical { x } => (p.x - x).abs(),
        }
    }

    /// Signed hyperbolic arclength coordinate of a point on the geodesic,
    /// increasing along the orientation. Zero sits at the Euclidean apex of a
    /// semicircle and at height 1 on a vertical line.
    pub fn arclength_param(&self, p: HPoint) -> f64 {
        match self.shape {
            GeodesicShape::Semicircle { center, radius } => {
                let u = p.x - center;
                // (r + u)(r − u) = y², pick the factor free of cancellation.
                let ltr = if u >= 0.0 {
                    ((radius + u) / p.y).ln()
                } else {
                    (p.y / (radius - u)).ln()
                };
                if self.is_forward() {
                    ltr
                } else {
                    -ltr
                }
            }
            GeodesicShape::Vertical { .. } => {
                if self.is_forward() {
                    p.y.ln()
                } else {
                    -p.y.ln()
                }
            }
        }
    }

    /// Inverse of [`Geodesic::arclength_param`].
    pub fn point_at(&self, s: f64) -> HPoint {
        match self.shape {
            GeodesicShape::Semicircle { center, radius } => {
                let s = if self.is_forward() { s } else { -s };
                // tan(φ/2) = e^{-s} where φ is the polar angle about the center.
                let sech = 1.0 / s.cosh();
                HPoint {
                    x: center + radius * s.tanh(),
                    y: radius * sech,
                }
            }
            GeodesicShape::Vertical { x } => {
                let s = if self.is_forward() { s } else { -s };
                HPoint { x, y: s.exp() }
            }
        }
    }

    /// Unit Euclidean tangent at `p` pointing along the orientation.
    pub fn unit_tangent(&self, p: HPoint) -> (f64, f64) {
        match self.shape {
            GeodesicShape::Semicircle { center, radius } => {
                // Clockwise motion (left to right) has tangent (y, −(x − m)).
                let (tx, ty) = (p.y / radius, -(p.x - center) / radius);
                if self.is_forward() {
                    (tx, ty)
                } else {
                    (-tx, -ty)
                }
            }
            GeodesicShape::Vertical { .. } => {
                if self.is_forward() {
                    (0.0, 1.0)
                } else {
                    (0.0, -1.0)
                }
            }
        }
    }
}

impl fmt::Display for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape {
            GeodesicShape::Semicircle { center, radius } => write!(f, "semicircle(center {center}, radius {radius})")?,
            GeodesicShape::Vertical { x } => write!(f, "vertical({x})")?,
        }
        write!(f, " {} → {}", self.from, self.to)
    }
}

/// Whether the endpoint pairs strictly interleave on `ℝ ∪ {∞}`.
pub fn crosses(g1: &Geodesic, g2: &Geodesic, tol: &Tolerances) -> bool {
    let eps = tol.num;
    match (g1.shape, g2.shape) {
        (
            GeodesicShape::Semicircle { center: m1, radius: r1 },
            GeodesicShape::Semicircle { center: m2, radius: r2 },
        ) => {
            let d = (m1 - m2).abs();
            d > (r1 - r2).abs() + eps && d < r1 + r2 - eps
        }
        (GeodesicShape::Vertical { x }, GeodesicShape::Semicircle { center, radius })
        | (GeodesicShape::Semicircle { center, radius }, GeodesicShape::Vertical { x }) => {
            (x - center).abs() < radius - eps
        }
        (GeodesicShape::Vertical { .. }, GeodesicShape::Vertical { .. }) => false,
    }
}

/// The unique common point of two crossing geodesics.
pub fn intersection_point(g1: &Geodesic, g2: &Geodesic, tol: &Tolerances) -> Result<HPoint, GeometryError> {
    if !crosses(g1, g2, tol) {
        return Err(GeometryError::NoCrossing);
    }
    let p = match (g1.shape, g2.shape) {
        (
            GeodesicShape::Semicircle { center: m1, radius: r1 },
            GeodesicShape::Semicircle { center: m2, radius: r2 },
        ) => {
            // Subtracting the circle equations leaves a linear equation in x.
            let x = 0.5 * (m1 + m2) + (r1 * r1 - r2 * r2) / (2.0 * (m2 - m1));
            // Take y from the smaller circle, whose equation is better conditioned.
            let (m, r) = if r1 <= r2 { (m1, r1) } else { (m2, r2) };
            let u = x - m;
            let y2 = (r - u) * (r + u);
            HPoint {
                x,
                y: y2.max(f64::MIN_POSITIVE).sqrt(),
            }
        }
        (GeodesicShape::Vertical { x }, GeodesicShape::Semicircle { center, radius })
        | (GeodesicShape::Semicircle { center, radius }, GeodesicShape::Vertical { x }) => {
            let u = x - center;
            HPoint {
                x,
                y: ((radius - u) * (radius + u)).max(f64::MIN_POSITIVE).sqrt(),
            }
        }
        (GeodesicShape::Vertical { .. }, GeodesicShape::Vertical { .. }) => {
            unreachable!("vertical lines never cross")
        }
    };
    Ok(p)
}

/// `cos²` of the crossing angle from centers and radii alone.
///
/// Two semicircles: `(r₁² + r₂² − d²)² / (4 r₁² r₂²)` with `d = |m₁ − m₂|`.
/// A vertical line at `v` and a semicircle `(m, r)`: `((v − m) / r)²`.
/// Symmetric in its arguments.
pub fn angle_cos2(g1: &Geodesic, g2: &Geodesic, tol: &Tolerances) -> Result<f64, GeometryError> {
    if !crosses(g1, g2, tol) {
        return Err(GeometryError::NoCrossing);
    }
    let raw = match (g1.shape, g2.shape) {
        (
            GeodesicShape::Semicircle { center: m1, radius: r1 },
            GeodesicShape::Semicircle { center: m2, radius: r2 },
        ) => {
            let d = (m1 - m2).abs();
            // Sum the squared radii in a fixed order so the result does not
            // depend on argument order.
            let (ra, rb) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
            let num = ra * ra + rb * rb - d * d;
            (num * num) / (4.0 * ra * ra * rb * rb)
        }
        (GeodesicShape::Vertical { x }, GeodesicShape::Semicircle { center, radius })
        | (GeodesicShape::Semicircle { center, radius }, GeodesicShape::Vertical { x }) => {
            let t = (x - center).abs() / radius;
            t * t
        }
        (GeodesicShape::Vertical { .. }, GeodesicShape::Vertical { .. }) => {
            unreachable!("vertical lines never cross")
        }
    };
    if !(raw <= 1.0 + tol.cos2_overflow) {
        return Err(GeometryError::Cos2OutOfRange(raw));
    }
    Ok(raw.clamp(0.0, 1.0))
}

/// Counterclockwise angle from `g1` to `g2` at their crossing, in `(0, π)`.
///
/// Computed from the unit tangents, independent of [`angle_cos2`]. Reducing
/// modulo π makes the value insensitive to reversing either orientation, and
/// swapping the arguments gives `π − θ`.
pub fn oriented_angle(g1: &Geodesic, g2: &Geodesic, tol: &Tolerances) -> Result<f64, GeometryError> {
    let p = intersection_point(g1, g2, tol)?;
    Ok(oriented_angle_at(g1, g2, p))
}

pub(crate) fn oriented_angle_at(g1: &Geodesic, g2: &Geodesic, p: HPoint) -> f64 {
    // The answer is taken modulo π, so pick the sign of each tangent by a
    // fixed rule; reversing a geodesic then changes nothing, bit for bit.
    let canonical = |(x, y): (f64, f64)| {
        if x < 0.0 || (x == 0.0 && y < 0.0) {
            (-x, -y)
        } else {
            (x, y)
        }
    };
    let (ax, ay) = canonical(g1.unit_tangent(p));
    let (bx, by) = canonical(g2.unit_tangent(p));
    let cross = ax * by - ay * bx;
    let dot = ax * bx + ay * by;
    let raw = cross.atan2(dot);
    if raw > 0.0 {
        raw
    } else {
        raw + PI
    }
}

/// Hyperbolic distance in the upper half-plane.
///
/// Evaluated as `2·asinh(|p − q| / (2√(y_p y_q)))`, which equals
/// `arccosh(1 + |p − q|² / (2 y_p y_q))` and keeps precision for nearby points.
pub fn hyperbolic_distance(p: HPoint, q: HPoint) -> f64 {
    let euclid = (p.x - q.x).hypot(p.y - q.y);
    2.0 * (euclid / (2.0 * (p.y * q.y).sqrt())).asinh()
}
