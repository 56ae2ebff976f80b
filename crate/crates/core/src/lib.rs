//! Angle spectra of hyperbolic surfaces `H²/Γ`.
//!
//! Closed geodesics are enumerated as conjugacy classes of hyperbolic
//! elements of a finitely generated group of Möbius transformations. Their
//! lifts are intersected in the upper half-plane, the crossing angles are
//! evaluated in closed form, and the distinct angles are tested for being
//! rational multiples of π against the totient bound `φ(q) ≤ 2d`.
//!
//! ```
//! use angle_spectrum_core::{build_spectrum, preset, SpectrumBounds, Tolerances};
//!
//! let group = preset("symmetric-schottky").unwrap();
//! let bounds = SpectrumBounds { max_word_len: 2, max_trace: 10.0, conj_len: 2, ..Default::default() };
//! let report = build_spectrum(&group, &bounds, &Tolerances::default()).unwrap();
//! assert!(report.rational_hits.iter().any(|h| (h.p, h.q) == (1, 2)));
//! ```

pub mod arithmetic;
pub mod geometry;
pub mod group;
pub mod moebius;
pub mod spectrum;
pub mod tolerance;
pub mod word;

pub use arithmetic::{
    admissible_q, cyclotomic_degree, detect_rational_pi, euler_phi, rationality_detect, totient_bound_check,
    DegreeBound, Fraction, RationalAngle,
};
pub use geometry::{
    angle_cos2, crosses, hyperbolic_distance, intersection_point, oriented_angle, BoundaryPoint, Geodesic,
    GeodesicShape, GeometryError, HPoint,
};
pub use group::{
    enumerate_elements, hyperbolic_classes, ping_pong_certificate, preset, primitive_root, BoundaryInterval,
    ClosedGeodesicClass, GeneratorSet, GroupElement, GroupError, NotCertifiedReason, Orientation, PingPongRegions,
    PingPongVerdict, PRESET_NAMES,
};
pub use moebius::{ElementClass, MoebiusElement, MoebiusError};
pub use spectrum::{
    angle_set, build_spectrum, cluster_angles, surface_intersections, AngleCluster, IntersectionRecord, RationalHit,
    SpectrumBounds, SpectrumError, SpectrumReport,
};
pub use tolerance::Tolerances;
pub use word::{Letter, Word};
