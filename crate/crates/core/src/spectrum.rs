//! Intersections of closed geodesics on the quotient surface and the
//! truncated angle spectrum built from them.
//!
//! For a pair of classes `(γ, δ)` the axis of `γ` stays fixed and every
//! enumerated conjugate `g δ g⁻¹` contributes its axis as a candidate branch.
//! Each crossing is slid along the axis of `γ` by powers of `γ` into one
//! fundamental period, so lifts of the same surface point collapse; the
//! remaining near-duplicates are merged by distance along the axis and angle.

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;
use thiserror::Error;

use crate::arithmetic::{detect_rational_pi, euler_phi, DegreeBound};
use crate::geometry::{angle_cos2, crosses, intersection_point, oriented_angle_at, GeometryError, HPoint};
use crate::group::{
    enumerate_elements, hyperbolic_classes, ClosedGeodesicClass, GeneratorSet, GroupElement, GroupError, Orientation,
};
use crate::moebius::MoebiusError;
use crate::tolerance::Tolerances;
use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectrumError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("no degree bound given and the generator set declares none")]
    MissingDegreeBound,
}

/// Truncation parameters of a spectrum run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumBounds {
    pub max_word_len: usize,
    pub max_trace: f64,
    pub conj_len: usize,
    pub qmax: u64,
    pub eps_rat: f64,
    pub eps_cluster: f64,
    /// Overrides the generator set's declared bound when given.
    pub degree_bound: Option<DegreeBound>,
    pub orientation: Orientation,
}

impl Default for SpectrumBounds {
    fn default() -> Self {
        SpectrumBounds {
            max_word_len: 4,
            max_trace: 50.0,
            conj_len: 4,
            qmax: 200,
            eps_rat: 1e-9,
            eps_cluster: 1e-9,
            degree_bound: None,
            orientation: Orientation::Unoriented,
        }
    }
}

impl SpectrumBounds {
    pub fn validate(&self) -> Result<(), SpectrumError> {
        if !(self.max_trace > 2.0) {
            return Err(SpectrumError::InvalidBounds(format!(
                "max_trace must exceed 2, got {}",
                self.max_trace
            )));
        }
        if self.qmax == 0 {
            return Err(SpectrumError::InvalidBounds("qmax must be positive".into()));
        }
        if !(self.eps_rat > 0.0) || !(self.eps_cluster > 0.0) {
            return Err(SpectrumError::InvalidBounds("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// One intersection of two closed geodesics on the surface.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionRecord {
    pub class_i: usize,
    pub class_j: usize,
    /// `g` such that the branch of `δ` is the axis of `g δ g⁻¹`.
    pub conjugator: Word,
    /// Lift on the axis of `γ`, within the period centred on the apex.
    pub point: HPoint,
    /// Counterclockwise angle from `γ` to `δ`, in `(0, π)`.
    pub theta: f64,
    pub cos2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleCluster {
    pub theta: f64,
    pub multiplicity: usize,
}

/// A distinct angle recognised as `pπ/q`, with the totient verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalHit {
    pub theta: f64,
    pub p: u64,
    pub q: u64,
    pub phi_q: u64,
    /// `2d`, the largest totient allowed.
    pub bound: u64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub bounds: SpectrumBounds,
    pub tolerances: Tolerances,
    pub degree_bound: DegreeBound,
    pub classes: Vec<ClosedGeodesicClass>,
    pub records: Vec<IntersectionRecord>,
    pub angle_set: Vec<AngleCluster>,
    pub rational_hits: Vec<RationalHit>,
}

impl SpectrumReport {
    /// Whether some rational angle breaks `φ(q) ≤ 2d`.
    pub fn has_totient_violation(&self) -> bool {
        self.rational_hits.iter().any(|h| !h.ok)
    }
}

struct Candidate {
    s: f64,
    theta: f64,
    cos2: f64,
    conjugator: Word,
}

/// Reduces `x` into `[-half, half)` modulo `2·half`.
fn centered_mod(x: f64, period: f64) -> f64 {
    let half = 0.5 * period;
    let r = (x + half).rem_euclid(period) - half;
    if r >= half {
        r - period
    } else {
        r
    }
}

/// Intersections of `γ` and `δ` on the surface, found among the conjugates
/// `g δ g⁻¹` for the given conjugators. `ids` are the class indices written
/// into the records; equal ids mark a self-intersection search.
pub fn pair_intersections(
    gamma: &ClosedGeodesicClass,
    delta: &ClosedGeodesicClass,
    ids: (usize, usize),
    conjugators: &[GroupElement],
    tol: &Tolerances,
) -> Result<Vec<IntersectionRecord>, SpectrumError> {
    let axis = &gamma.axis;
    let period = gamma.length;
    let self_pair = ids.0 == ids.1;
    let mut candidates: Vec<Candidate> = Vec::new();

    for g in conjugators {
        let branch_elem = delta.rep.conjugate_by(g);
        let branch = branch_elem.element.axis(tol)?;
        if !crosses(axis, &branch, tol) {
            continue;
        }
        let p = intersection_point(axis, &branch, tol)?;
        let cos2 = angle_cos2(axis, &branch, tol)?;
        let theta = oriented_angle_at(axis, &branch, p);
        let s = axis.arclength_param(p);
        let s_norm = centered_mod(s, period);
        if self_pair {
            // The same crossing is also found from the other branch, at the
            // lift g⁻¹p. Keep only one of the two.
            let partner = centered_mod(axis.arclength_param(g.element.inverse().apply(p)), period);
            let gap = centered_mod(partner - s_norm, period);
            let keep = if (gap.abs() - 0.5 * period).abs() <= tol.merge {
                s_norm < partner
            } else if gap.abs() <= tol.merge {
                theta <= FRAC_PI_2
            } else {
                gap > 0.0
            };
            if !keep {
                continue;
            }
        }
        let shift = ((s - s_norm) / period).round() as i64;
        let conjugator = gamma.rep.word.pow(-shift).concat(&g.word);
        candidates.push(Candidate {
            s: s_norm,
            theta,
            cos2,
            conjugator,
        });
    }

    let mut kept: Vec<Candidate> = Vec::new();
    for c in candidates {
        let dup = kept
            .iter()
            .any(|k| centered_mod(k.s - c.s, period).abs() < tol.merge && (k.theta - c.theta).abs() < tol.merge_angle);
        if !dup {
            kept.push(c);
        }
    }
    kept.sort_by(|a, b| a.s.total_cmp(&b.s).then(a.theta.total_cmp(&b.theta)));
    Ok(kept
        .into_iter()
        .map(|c| IntersectionRecord {
            class_i: ids.0,
            class_j: ids.1,
            conjugator: c.conjugator,
            point: axis.point_at(c.s),
            theta: c.theta,
            cos2: c.cos2,
        })
        .collect())
}

/// Intersections of `γ` and `δ` on `H²/Γ` reachable with conjugators of
/// word length at most `conj_len`.
pub fn surface_intersections(
    gamma: &ClosedGeodesicClass,
    delta: &ClosedGeodesicClass,
    ids: (usize, usize),
    g: &GeneratorSet,
    conj_len: usize,
    tol: &Tolerances,
) -> Result<Vec<IntersectionRecord>, SpectrumError> {
    let conjugators = enumerate_elements(g, conj_len, tol);
    pair_intersections(gamma, delta, ids, &conjugators, tol)
}

/// Single-linkage clustering of angles with linkage threshold `eps`;
/// centroids ascending.
pub fn cluster_angles(thetas: &[f64], eps: f64) -> Vec<AngleCluster> {
    assert!(eps > 0.0, "cluster threshold must be positive");
    let mut sorted = thetas.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut out: Vec<AngleCluster> = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i] - sorted[i - 1] > eps {
            if i > start {
                let members = &sorted[start..i];
                out.push(AngleCluster {
                    theta: members.iter().sum::<f64>() / members.len() as f64,
                    multiplicity: members.len(),
                });
            }
            start = i;
        }
    }
    out
}

/// The angle set with multiplicities.
pub fn angle_set(records: &[IntersectionRecord], eps: f64) -> Vec<AngleCluster> {
    let thetas: Vec<f64> = records.iter().map(|r| r.theta).collect();
    cluster_angles(&thetas, eps)
}

/// Classes, pairwise surface intersections (including self-pairs), the
/// clustered angle set and the rational angles with totient verdicts.
///
/// Pairs are processed in parallel on the current rayon pool and reduced
/// in a fixed order, so the report does not depend on the thread count.
pub fn build_spectrum(
    g: &GeneratorSet,
    bounds: &SpectrumBounds,
    tol: &Tolerances,
) -> Result<SpectrumReport, SpectrumError> {
    bounds.validate()?;
    let degree_bound = bounds
        .degree_bound
        .or(g.degree_bound())
        .ok_or(SpectrumError::MissingDegreeBound)?;
    let classes = hyperbolic_classes(g, bounds.max_word_len, bounds.max_trace, bounds.orientation, tol)?;
    let conjugators = enumerate_elements(g, bounds.conj_len, tol);

    let pairs: Vec<(usize, usize)> = (0..classes.len())
        .flat_map(|i| (i..classes.len()).map(move |j| (i, j)))
        .collect();
    let per_pair: Vec<Vec<IntersectionRecord>> = pairs
        .par_iter()
        .map(|&(i, j)| pair_intersections(&classes[i], &classes[j], (i, j), &conjugators, tol))
        .collect::<Result<_, _>>()?;
    let records: Vec<IntersectionRecord> = per_pair.into_iter().flatten().collect();

    let angle_set = angle_set(&records, bounds.eps_cluster);
    let rational_hits = angle_set
        .iter()
        .filter_map(|c| detect_rational_pi(c.theta, bounds.qmax, bounds.eps_rat))
        .map(|h| {
            let phi_q = euler_phi(h.q);
            let bound = 2 * degree_bound.get();
            RationalHit {
                theta: h.theta,
                p: h.p,
                q: h.q,
                phi_q,
                bound,
                ok: phi_q <= bound,
            }
        })
        .collect();

    Ok(SpectrumReport {
        bounds: *bounds,
        tolerances: *tol,
        degree_bound,
        classes,
        records,
        angle_set,
        rational_hits,
    })
}
