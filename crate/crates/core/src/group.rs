//! Finitely generated groups of Möbius transformations: word enumeration,
//! conjugacy-class representatives of hyperbolic elements, primitive roots,
//! ping-pong discreteness certificates and named presets.

use std::collections::HashMap;
use std::f64::consts::PI;

use thiserror::Error;

use crate::arithmetic::DegreeBound;
use crate::geometry::{BoundaryPoint, Geodesic};
use crate::moebius::{ElementClass, MoebiusElement, MoebiusError};
use crate::tolerance::Tolerances;
use crate::word::{generator_of, letter, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("generator set is empty")]
    EmptyGeneratorSet,
    #[error("generator {index} is the identity")]
    IdentityGenerator { index: usize },
    #[error("unknown preset {0:?} (known: modular, symmetric-schottky)")]
    UnknownPreset(String),
    #[error("max_trace must exceed 2, got {0}")]
    InvalidMaxTrace(f64),
    #[error("expected {expected} ping-pong region pairs, got {got}")]
    RegionCount { expected: usize, got: usize },
    #[error("ping-pong regions overlap: {first} and {second}")]
    RegionOverlap { first: String, second: String },
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
}

/// An ordered, non-empty list of generators with display names.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    gens: Vec<MoebiusElement>,
    names: Vec<String>,
    label: Option<String>,
    degree_bound: Option<DegreeBound>,
    regions: Option<Vec<PingPongRegions>>,
}

impl GeneratorSet {
    /// Generators are named `g1, g2, …`.
    pub fn new(gens: Vec<MoebiusElement>) -> Result<Self, GroupError> {
        let names = (1..=gens.len()).map(|i| format!("g{i}")).collect();
        Self::with_names(gens, names)
    }

    pub fn with_names(gens: Vec<MoebiusElement>, names: Vec<String>) -> Result<Self, GroupError> {
        if gens.is_empty() {
            return Err(GroupError::EmptyGeneratorSet);
        }
        assert_eq!(gens.len(), names.len(), "one name per generator");
        let tol = Tolerances::default();
        let gens = gens
            .into_iter()
            .enumerate()
            .map(|(i, g)| {
                if g.classify(&tol) == ElementClass::Identity {
                    Err(GroupError::IdentityGenerator { index: i })
                } else {
                    Ok(g.with_word(Word::single(letter(i, false))))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GeneratorSet {
            gens,
            names,
            label: None,
            degree_bound: None,
            regions: None,
        })
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_degree_bound(mut self, d: DegreeBound) -> Self {
        self.degree_bound = Some(d);
        self
    }

    pub fn with_regions(mut self, regions: Vec<PingPongRegions>) -> Self {
        self.regions = Some(regions);
        self
    }

    pub fn gens(&self) -> &[MoebiusElement] {
        &self.gens
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Declared bound on the entry-field degree, when known.
    pub fn degree_bound(&self) -> Option<DegreeBound> {
        self.degree_bound
    }

    /// Ping-pong regions shipped with the set, when known.
    pub fn regions(&self) -> Option<&[PingPongRegions]> {
        self.regions.as_deref()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    fn letter_matrix(&self, l: Letter) -> MoebiusElement {
        let g = &self.gens[generator_of(l)];
        if l < 0 {
            g.inverse()
        } else {
            g.clone()
        }
    }

    /// Product of the generators spelled by `word`.
    pub fn evaluate(&self, word: &Word) -> GroupElement {
        let mut m = MoebiusElement::identity();
        for &l in word.letters() {
            m = m.compose(&self.letter_matrix(l));
        }
        GroupElement {
            element: m.with_word(word.clone()),
            word: word.clone(),
        }
    }

    /// The set obtained by conjugating every generator by `g`
    /// (`x ↦ g x g⁻¹`). Regions are transported along.
    pub fn conjugated(&self, g: &MoebiusElement) -> GeneratorSet {
        let gens = self
            .gens
            .iter()
            .map(|x| {
                let w = x.word().cloned().expect("generators carry words");
                x.conjugate_by(g).with_word(w)
            })
            .collect();
        let regions = self.regions.as_ref().map(|rs| {
            rs.iter()
                .map(|r| PingPongRegions {
                    attracting: r.attracting.transported(g),
                    repelling: r.repelling.transported(g),
                })
                .collect()
        });
        GeneratorSet {
            gens,
            names: self.names.clone(),
            label: self.label.as_ref().map(|l| format!("{l} (conjugated)")),
            degree_bound: self.degree_bound,
            regions,
        }
    }

    /// For each generator, the letter whose matrix equals its mirror image,
    /// if the set is closed under mirroring.
    pub fn mirror_map(&self, tol: &Tolerances) -> Option<Vec<Letter>> {
        self.gens
            .iter()
            .map(|g| {
                let m = g.mirror();
                (0..self.gens.len())
                    .flat_map(|j| [letter(j, false), letter(j, true)])
                    .find(|&l| self.letter_matrix(l).projective_distance(&m) < tol.dedup)
            })
            .collect()
    }

    /// Mirror image of an element as a word in the same generators.
    pub fn mirror_element(&self, x: &GroupElement, tol: &Tolerances) -> Option<GroupElement> {
        let map = self.mirror_map(tol)?;
        let word = x.word.substitute(&map);
        Some(GroupElement {
            element: x.element.mirror().with_word(word.clone()),
            word,
        })
    }
}

/// A matrix together with a freely reduced word producing it.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    pub element: MoebiusElement,
    pub word: Word,
}

impl GroupElement {
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let word = self.word.concat(&other.word);
        GroupElement {
            element: self.element.compose(&other.element).with_word(word.clone()),
            word,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        let word = self.word.inverse();
        GroupElement {
            element: self.element.inverse().with_word(word.clone()),
            word,
        }
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &GroupElement) -> GroupElement {
        g.compose(self).compose(&g.inverse())
    }

    pub fn pow(&self, k: i64) -> GroupElement {
        let word = self.word.pow(k);
        GroupElement {
            element: self.element.pow(k).with_word(word.clone()),
            word,
        }
    }

    pub fn trace(&self) -> f64 {
        self.element.trace()
    }
}

/// A closed geodesic, represented by a hyperbolic element of its
/// conjugacy class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedGeodesicClass {
    pub rep: GroupElement,
    /// `|tr|` of the representative.
    pub trace: f64,
    /// `2·arccosh(|tr|/2)`.
    pub length: f64,
    pub axis: Geodesic,
}

impl ClosedGeodesicClass {
    pub fn new(rep: GroupElement, tol: &Tolerances) -> Result<Self, MoebiusError> {
        let axis = rep.element.axis(tol)?;
        let length = rep.element.translation_length(tol)?;
        Ok(ClosedGeodesicClass {
            trace: rep.element.trace().abs(),
            length,
            axis,
            rep,
        })
    }
}

/// Quantised lookup of elements up to projective distance `tol.dedup`.
struct ProjectiveIndex {
    cell: f64,
    slack: f64,
    buckets: HashMap<[i64; 4], Vec<usize>>,
}

impl ProjectiveIndex {
    fn new(tol: &Tolerances) -> Self {
        ProjectiveIndex {
            cell: tol.dedup * 16.0,
            slack: tol.dedup,
            buckets: HashMap::new(),
        }
    }

    fn key(&self, e: [f64; 4]) -> [i64; 4] {
        e.map(|v| (v / self.cell).floor() as i64)
    }

    fn insert(&mut self, m: &MoebiusElement, idx: usize) {
        let e = m.entries();
        // both signs, so lookups need not agree with the stored sign choice
        for s in [e, e.map(|v| -v)] {
            let k = self.key(s);
            let bucket = self.buckets.entry(k).or_default();
            if !bucket.contains(&idx) {
                bucket.push(idx);
            }
        }
    }

    /// Candidate indices whose cells lie within `slack` of `m`.
    fn candidates(&self, m: &MoebiusElement) -> Vec<usize> {
        let e = m.entries();
        let mut ranges = [[0i64; 2]; 4];
        for (r, v) in ranges.iter_mut().zip(e) {
            let lo = ((v - self.slack) / self.cell).floor() as i64;
            let hi = ((v + self.slack) / self.cell).floor() as i64;
            *r = [lo, hi];
        }
        let mut out = Vec::new();
        for k0 in ranges[0][0]..=ranges[0][1] {
            for k1 in ranges[1][0]..=ranges[1][1] {
                for k2 in ranges[2][0]..=ranges[2][1] {
                    for k3 in ranges[3][0]..=ranges[3][1] {
                        if let Some(b) = self.buckets.get(&[k0, k1, k2, k3]) {
                            out.extend_from_slice(b);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Every freely reduced word of length `≤ max_len`, evaluated and merged
/// up to projective distance `tol.dedup`. The survivor of each merge is
/// the shortlex-least word, and the output is in shortlex order.
pub fn enumerate_elements(g: &GeneratorSet, max_len: usize, tol: &Tolerances) -> Vec<GroupElement> {
    let letters: Vec<Letter> = (0..g.len()).flat_map(|i| [letter(i, false), letter(i, true)]).collect();
    let letter_mats: Vec<MoebiusElement> = letters.iter().map(|&l| g.letter_matrix(l).without_word()).collect();

    let mut kept: Vec<GroupElement> = Vec::new();
    let mut index = ProjectiveIndex::new(tol);
    let mut consider = |w: &Word, m: &MoebiusElement, kept: &mut Vec<GroupElement>| {
        let dup = index
            .candidates(m)
            .into_iter()
            .any(|i| kept[i].element.projective_distance(m) < tol.dedup);
        if !dup {
            index.insert(m, kept.len());
            kept.push(GroupElement {
                element: m.clone().with_word(w.clone()),
                word: w.clone(),
            });
        }
    };

    // every reduced word of the current length, in shortlex order
    let mut level: Vec<(Word, MoebiusElement)> = vec![(Word::identity(), MoebiusElement::identity().without_word())];
    consider(&level[0].0, &level[0].1, &mut kept);
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(level.len() * letters.len());
        for (w, m) in &level {
            let last = w.letters().last().copied();
            for (&l, lm) in letters.iter().zip(&letter_mats) {
                if last == Some(-l) {
                    continue;
                }
                let mut ls = w.letters().to_vec();
                ls.push(l);
                next.push((Word::new(ls), m.compose(lm)));
            }
        }
        for (w, m) in &next {
            consider(w, m, &mut kept);
        }
        level = next;
    }
    kept
}

/// Whether the class representatives identify as unoriented geodesics
/// (a class merged with its inverse) or keep their direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Unoriented,
    Oriented,
}

fn conjugate_within(x: &MoebiusElement, y: &MoebiusElement, conjugators: &[GroupElement], tol: &Tolerances) -> bool {
    conjugators.iter().any(|g| {
        let g = &g.element;
        x.conjugate_by(g).projective_distance(y) < tol.dedup
    })
}

/// One representative per conjugacy class among the enumerated hyperbolic
/// elements with `|tr| ≤ max_trace`.
///
/// Words that are not cyclically reduced are skipped, since a shorter
/// conjugate is enumerated. A candidate joins an existing class when the
/// traces agree within `tol.trace` and some enumerated element conjugates
/// one to the other. Conjugacy is only searched up to `max_len`, so a class
/// may appear twice at small bounds.
///
/// In unoriented mode a class also absorbs its inverse class, and the
/// representative is the one of `x, x⁻¹` with the larger attracting point.
pub fn hyperbolic_classes(
    g: &GeneratorSet,
    max_len: usize,
    max_trace: f64,
    orientation: Orientation,
    tol: &Tolerances,
) -> Result<Vec<ClosedGeodesicClass>, GroupError> {
    if !(max_trace > 2.0) {
        return Err(GroupError::InvalidMaxTrace(max_trace));
    }
    let elements = enumerate_elements(g, max_len, tol);
    let mut reps: Vec<GroupElement> = Vec::new();
    for e in &elements {
        let t = e.trace().abs();
        if !e.element.is_hyperbolic(tol) || t > max_trace + tol.trace || !e.word.is_cyclically_reduced() {
            continue;
        }
        let inv = e.element.inverse();
        let known = reps.iter().any(|r| {
            (r.trace().abs() - t).abs() <= tol.trace
                && (conjugate_within(&e.element, &r.element, &elements, tol)
                    || (orientation == Orientation::Unoriented && conjugate_within(&inv, &r.element, &elements, tol)))
        });
        if !known {
            reps.push(e.clone());
        }
    }
    reps.into_iter()
        .map(|r| {
            let r = if orientation == Orientation::Unoriented {
                let (repelling, attracting) = r.element.fixed_points(tol)?;
                if repelling.cmp_real(&attracting).is_gt() {
                    r.inverse()
                } else {
                    r
                }
            } else {
                r
            };
            Ok(ClosedGeodesicClass::new(r, tol)?)
        })
        .collect()
}

/// The shortest enumerated `P` with `Pᵏ = M` projectively, `k ≥ 1`.
///
/// Returns `(M, 1)` when no proper root is found within `max_len`.
pub fn primitive_root(
    m: &GroupElement,
    g: &GeneratorSet,
    max_len: usize,
    tol: &Tolerances,
) -> Result<(GroupElement, u32), GroupError> {
    let target_len = m.element.translation_length(tol)?;
    let mut best: Option<(f64, GroupElement, u32)> = None;
    for p in enumerate_elements(g, max_len, tol) {
        if !p.element.is_hyperbolic(tol) {
            continue;
        }
        let len = p.element.translation_length(tol)?;
        let k = (target_len / len).round();
        if k < 2.0 || (k * len - target_len).abs() > 1e-6 * target_len {
            continue;
        }
        let k = k as u32;
        let scale = m.element.entries().iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
        let close = |x: &MoebiusElement| x.projective_distance(&m.element) < tol.dedup * scale;
        let root = if close(&p.element.pow(k as i64)) {
            p
        } else if close(&p.element.pow(-(k as i64))) {
            p.inverse()
        } else {
            continue;
        };
        if best.as_ref().is_none_or(|(l, _, _)| len < *l - 1e-12) {
            best = Some((len, root, k));
        }
    }
    Ok(match best {
        Some((_, p, k)) => (p, k),
        None => (m.clone(), 1),
    })
}

/// A closed arc of `ℝ ∪ {∞}` running in the positive direction (increasing
/// `x`, passing through `∞` if needed) from `start` to `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryInterval {
    pub start: BoundaryPoint,
    pub end: BoundaryPoint,
}

impl BoundaryInterval {
    pub fn new(start: BoundaryPoint, end: BoundaryPoint) -> Self {
        BoundaryInterval { start, end }
    }

    pub fn finite(start: f64, end: f64) -> Self {
        Self::new(BoundaryPoint::Finite(start), BoundaryPoint::Finite(end))
    }

    /// Arc length on the boundary circle from `start` to `p`, in `[0, 2π)`.
    fn offset(&self, p: BoundaryPoint) -> f64 {
        (p.circle_param() - self.start.circle_param()).rem_euclid(2.0 * PI)
    }

    fn span(&self) -> f64 {
        self.offset(self.end)
    }

    /// Offset of `p`, with points just before `start` reported as small
    /// negative numbers.
    fn signed_offset(&self, p: BoundaryPoint, slack: f64) -> f64 {
        let o = self.offset(p);
        if o > 2.0 * PI - slack {
            o - 2.0 * PI
        } else {
            o
        }
    }

    pub fn contains(&self, p: BoundaryPoint, slack: f64) -> bool {
        let o = self.signed_offset(p, slack);
        o >= -slack && o <= self.span() + slack
    }

    pub fn overlaps(&self, other: &BoundaryInterval) -> bool {
        self.contains(other.start, 0.0) || other.contains(self.start, 0.0)
    }

    /// Image under an orientation-preserving map.
    pub fn transported(&self, g: &MoebiusElement) -> BoundaryInterval {
        BoundaryInterval {
            start: g.apply_boundary(self.start),
            end: g.apply_boundary(self.end),
        }
    }
}

impl std::fmt::Display for BoundaryInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}

/// The two ping-pong regions of one generator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PingPongRegions {
    pub attracting: BoundaryInterval,
    pub repelling: BoundaryInterval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotCertifiedReason {
    EllipticGenerator {
        index: usize,
    },
    ParabolicGenerator {
        index: usize,
    },
    /// The generator does not map the complement of its repelling region
    /// into its attracting region.
    MappingFailure {
        index: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PingPongVerdict {
    Certified,
    NotCertified(NotCertifiedReason),
}

/// Checks the ping-pong configuration: every generator hyperbolic and
/// mapping the complement of its repelling region into its attracting
/// region, all regions pairwise disjoint. A certified set generates a free
/// discrete group.
pub fn ping_pong_certificate(
    g: &GeneratorSet,
    regions: &[PingPongRegions],
    tol: &Tolerances,
) -> Result<PingPongVerdict, GroupError> {
    if regions.len() != g.len() {
        return Err(GroupError::RegionCount {
            expected: g.len(),
            got: regions.len(),
        });
    }
    let arcs: Vec<(String, BoundaryInterval)> = regions
        .iter()
        .enumerate()
        .flat_map(|(i, r)| {
            [
                (format!("{} attracting {}", g.names[i], r.attracting), r.attracting),
                (format!("{} repelling {}", g.names[i], r.repelling), r.repelling),
            ]
        })
        .collect();
    for (i, (na, a)) in arcs.iter().enumerate() {
        for (nb, b) in &arcs[i + 1..] {
            if a.overlaps(b) {
                return Err(GroupError::RegionOverlap {
                    first: na.clone(),
                    second: nb.clone(),
                });
            }
        }
    }
    for (index, gen) in g.gens.iter().enumerate() {
        match gen.classify(tol) {
            ElementClass::Hyperbolic => {}
            ElementClass::Parabolic => {
                return Ok(PingPongVerdict::NotCertified(NotCertifiedReason::ParabolicGenerator {
                    index,
                }))
            }
            _ => {
                return Ok(PingPongVerdict::NotCertified(NotCertifiedReason::EllipticGenerator {
                    index,
                }))
            }
        }
    }
    let slack = tol.num.max(1e-12) * 8.0;
    for (index, (gen, r)) in g.gens.iter().zip(regions).enumerate() {
        // The complement of the repelling arc runs from its end to its
        // start; its image runs from g(end) to g(start).
        let img_from = gen.apply_boundary(r.repelling.end);
        let img_to = gen.apply_boundary(r.repelling.start);
        let a = &r.attracting;
        let (o_from, o_to) = (a.signed_offset(img_from, slack), a.signed_offset(img_to, slack));
        let inside = o_from >= -slack && o_to <= a.span() + slack && o_from <= o_to + slack;
        if !inside {
            return Ok(PingPongVerdict::NotCertified(NotCertifiedReason::MappingFailure {
                index,
            }));
        }
    }
    Ok(PingPongVerdict::Certified)
}

/// Names accepted by [`preset`].
pub const PRESET_NAMES: [&str; 2] = ["modular", "symmetric-schottky"];

/// Named generator sets.
///
/// * `modular`: `S = [[0, −1], [1, 0]]`, `T = [[1, 1], [0, 1]]`; degree bound 1.
/// * `symmetric-schottky`: `A = diag(4, 1/4)`, `B = [[3, 4], [2, 3]]`, with
///   certified ping-pong regions; closed under `z ↦ −z̄` (`A ↦ A`, `B ↦ B⁻¹`);
///   degree bound 1.
pub fn preset(name: &str) -> Result<GeneratorSet, GroupError> {
    let one = DegreeBound::new(1).expect("1 is a valid degree bound");
    match name {
        "modular" => {
            let s = MoebiusElement::new(0.0, -1.0, 1.0, 0.0)?;
            let t = MoebiusElement::new(1.0, 1.0, 0.0, 1.0)?;
            Ok(GeneratorSet::with_names(vec![s, t], vec!["S".into(), "T".into()])?
                .labeled("modular")
                .with_degree_bound(one))
        }
        "symmetric-schottky" => {
            let a = MoebiusElement::diagonal(4.0)?;
            let b = MoebiusElement::new(3.0, 4.0, 2.0, 3.0)?;
            Ok(GeneratorSet::with_names(vec![a, b], vec!["A".into(), "B".into()])?
                .labeled("symmetric-schottky")
                .with_degree_bound(one)
                .with_regions(symmetric_schottky_regions()))
        }
        other => Err(GroupError::UnknownPreset(other.to_string())),
    }
}

fn symmetric_schottky_regions() -> Vec<PingPongRegions> {
    vec![
        PingPongRegions {
            attracting: BoundaryInterval::finite(4.0, -4.0),
            repelling: BoundaryInterval::finite(-0.25, 0.25),
        },
        PingPongRegions {
            attracting: BoundaryInterval::finite(1.0, 2.0),
            repelling: BoundaryInterval::finite(-2.0, -1.0),
        },
    ]
}
