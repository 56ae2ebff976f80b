//! Unit-determinant Möbius transformations of the upper half-plane.

use std::fmt;

use thiserror::Error;

use crate::geometry::{BoundaryPoint, Geodesic, GeodesicShape, HPoint};
use crate::tolerance::Tolerances;
use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MoebiusError {
    #[error("determinant {det} differs from 1")]
    NonUnitDeterminant { det: f64 },
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("element is {0:?}, not hyperbolic")]
    NotHyperbolic(ElementClass),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// A matrix `[[a, b], [c, d]]` with `ad − bc = 1`, stored with a fixed
/// projective sign so that `M` and `−M` are the same value.
///
/// The stored sign has positive trace; for trace zero it has `c > 0`, or
/// `c = 0` and `a > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MoebiusElement {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    word: Option<Word>,
}

impl MoebiusElement {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, MoebiusError> {
        Self::with_tolerance(a, b, c, d, &Tolerances::default())
    }

    pub fn with_tolerance(a: f64, b: f64, c: f64, d: f64, tol: &Tolerances) -> Result<Self, MoebiusError> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(MoebiusError::NonFinite);
        }
        let det = a * d - b * c;
        if (det - 1.0).abs() > tol.det {
            return Err(MoebiusError::NonUnitDeterminant { det });
        }
        Ok(Self::normalized(a, b, c, d, None))
    }

    fn normalized(a: f64, b: f64, c: f64, d: f64, word: Option<Word>) -> Self {
        let tr = a + d;
        let flip = if tr != 0.0 {
            tr < 0.0
        } else if c != 0.0 {
            c < 0.0
        } else {
            a < 0.0
        };
        // `0.0 - x` keeps zeros positive, so ±M store bit-identical entries.
        let (a, b, c, d) = if flip {
            (0.0 - a, 0.0 - b, 0.0 - c, 0.0 - d)
        } else {
            (a + 0.0, b + 0.0, c + 0.0, d + 0.0)
        };
        MoebiusElement { a, b, c, d, word }
    }

    pub fn identity() -> Self {
        MoebiusElement {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
            word: Some(Word::identity()),
        }
    }

    /// `diag(λ, 1/λ)`.
    pub fn diagonal(lambda: f64) -> Result<Self, MoebiusError> {
        Self::new(lambda, 0.0, 0.0, 1.0 / lambda)
    }

    pub fn with_word(mut self, word: Word) -> Self {
        self.word = Some(word);
        self
    }

    pub fn without_word(mut self) -> Self {
        self.word = None;
        self
    }

    pub fn word(&self) -> Option<&Word> {
        self.word.as_ref()
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Max-entry difference, minimised over the sign of `other`.
    pub fn projective_distance(&self, other: &MoebiusElement) -> f64 {
        let x = self.entries();
        let y = other.entries();
        let plus = x.iter().zip(&y).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        let minus = x.iter().zip(&y).map(|(p, q)| (p + q).abs()).fold(0.0, f64::max);
        plus.min(minus)
    }

    pub fn classify(&self, tol: &Tolerances) -> ElementClass {
        if self.projective_distance(&MoebiusElement::identity()) <= tol.class {
            return ElementClass::Identity;
        }
        let t = self.trace().abs();
        if t > 2.0 + tol.class {
            ElementClass::Hyperbolic
        } else if (t - 2.0).abs() <= tol.class {
            ElementClass::Parabolic
        } else {
            ElementClass::Elliptic
        }
    }

    pub fn is_hyperbolic(&self, tol: &Tolerances) -> bool {
        self.classify(tol) == ElementClass::Hyperbolic
    }

    fn require_hyperbolic(&self, tol: &Tolerances) -> Result<(), MoebiusError> {
        match self.classify(tol) {
            ElementClass::Hyperbolic => Ok(()),
            other => Err(MoebiusError::NotHyperbolic(other)),
        }
    }

    /// `√(tr² − 4)`, which equals `√((a − d)² + 4bc)` at unit determinant.
    fn discriminant_root(&self) -> f64 {
        let t = self.trace();
        ((t - 2.0) * (t + 2.0)).max(0.0).sqrt()
    }

    /// Repelling and attracting fixed points `(α, β)` on `ℝ ∪ {∞}`.
    ///
    /// For `c ≠ 0` these are the roots of `cz² + (d − a)z − b = 0`; the
    /// attracting one has `|cβ + d| > 1`. For `c = 0` one fixed point is `∞`
    /// and the other `b / (d − a)`.
    pub fn fixed_points(&self, tol: &Tolerances) -> Result<(BoundaryPoint, BoundaryPoint), MoebiusError> {
        self.require_hyperbolic(tol)?;
        let MoebiusElement { a, b, c, d, .. } = *self;
        if c == 0.0 {
            let finite = BoundaryPoint::Finite(b / (d - a));
            return Ok(if a.abs() > d.abs() {
                (finite, BoundaryPoint::Infinity)
            } else {
                (BoundaryPoint::Infinity, finite)
            });
        }
        let s = self.discriminant_root();
        let diff = a - d;
        // Add the root with matching sign, then use the product −b/c of the
        // roots for the other one.
        let big = if diff >= 0.0 {
            (diff + s) / (2.0 * c)
        } else {
            (diff - s) / (2.0 * c)
        };
        let other = (-b / c) / big;
        let gain = |z: f64| (c * z + d).abs();
        Ok(if gain(big) > gain(other) {
            (BoundaryPoint::Finite(other), BoundaryPoint::Finite(big))
        } else {
            (BoundaryPoint::Finite(big), BoundaryPoint::Finite(other))
        })
    }

    /// The invariant geodesic, oriented from the repelling to the attracting
    /// fixed point. Center `(a − d)/(2c)` and radius `√(tr² − 4)/(2|c|)`.
    pub fn axis(&self, tol: &Tolerances) -> Result<Geodesic, MoebiusError> {
        let (from, to) = self.fixed_points(tol)?;
        let MoebiusElement { a, b, c, d, .. } = *self;
        let shape = if c == 0.0 {
            GeodesicShape::Vertical { x: b / (d - a) }
        } else {
            GeodesicShape::Semicircle {
                center: (a - d) / (2.0 * c),
                radius: self.discriminant_root() / (2.0 * c.abs()),
            }
        };
        Ok(Geodesic::with_shape_and_orientation(shape, from, to))
    }

    /// `2·arccosh(|tr| / 2)`.
    pub fn translation_length(&self, tol: &Tolerances) -> Result<f64, MoebiusError> {
        self.require_hyperbolic(tol)?;
        Ok(2.0 * (self.trace().abs() / 2.0).acosh())
    }

    /// `z ↦ (az + b)/(cz + d)`.
    pub fn apply(&self, z: HPoint) -> HPoint {
        let MoebiusElement { a, b, c, d, .. } = *self;
        let (nr, ni) = (a * z.x + b, a * z.y);
        let (dr, di) = (c * z.x + d, c * z.y);
        let den = dr * dr + di * di;
        HPoint {
            x: (nr * dr + ni * di) / den,
            y: z.y / den,
        }
    }

    /// The action extended to the boundary.
    pub fn apply_boundary(&self, p: BoundaryPoint) -> BoundaryPoint {
        let MoebiusElement { a, b, c, d, .. } = *self;
        match p {
            BoundaryPoint::Infinity => {
                if c == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(a / c)
                }
            }
            BoundaryPoint::Finite(x) => {
                let den = c * x + d;
                if den == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((a * x + b) / den)
                }
            }
        }
    }

    /// Image of a geodesic, from transported endpoints, orientation kept.
    pub fn transform_geodesic(&self, g: &Geodesic) -> Geodesic {
        Geodesic::from_endpoints(self.apply_boundary(g.from()), self.apply_boundary(g.to()))
            .expect("a Möbius map is injective on the boundary")
    }

    /// Matrix product `self · other`; words concatenate when both are known.
    pub fn compose(&self, other: &MoebiusElement) -> MoebiusElement {
        let [a, b, c, d] = self.entries();
        let [p, q, r, s] = other.entries();
        let word = match (&self.word, &other.word) {
            (Some(u), Some(v)) => Some(u.concat(v)),
            _ => None,
        };
        Self::normalized(a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s, word)
    }

    /// Adjugate inverse `[[d, −b], [−c, a]]`.
    pub fn inverse(&self) -> MoebiusElement {
        let word = self.word.as_ref().map(Word::inverse);
        Self::normalized(self.d, -self.b, -self.c, self.a, word)
    }

    /// Conjugate by the reflection `z ↦ −z̄`: `[[a, −b], [−c, d]]`.
    ///
    /// The word is dropped; mapping words needs the generator images, see
    /// `GeneratorSet::mirror_word`.
    pub fn mirror(&self) -> MoebiusElement {
        Self::normalized(self.a, -self.b, -self.c, self.d, None)
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &MoebiusElement) -> MoebiusElement {
        g.compose(self).compose(&g.inverse())
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, k: i64) -> MoebiusElement {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = MoebiusElement::identity();
        if self.word.is_none() {
            acc.word = None;
        }
        let mut n = k.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.compose(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }
}

impl fmt::Display for MoebiusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}
