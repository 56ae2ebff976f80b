//! Numerical tolerances shared by every module.

/// All thresholds used for floating-point decisions.
///
/// Defaults assume double precision and the word lengths reachable on a
/// desktop (up to roughly ten letters).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `|ad − bc − 1|` allowed for a group element.
    pub det: f64,
    /// Margin around `|tr| = 2` when classifying elements.
    pub class: f64,
    /// Generic geometric margin (tangency, boundary-action checks).
    pub num: f64,
    /// How far a closed-form `cos²` may exceed 1 before it is an error.
    pub cos2_overflow: f64,
    /// Per-letter drift allowed between a word's product and its matrix.
    pub word_per_letter: f64,
    /// Projective matrix distance below which two elements are merged.
    pub dedup: f64,
    /// Trace agreement required before a conjugacy search is attempted.
    pub trace: f64,
    /// Hyperbolic distance below which two lifted intersection points merge.
    pub merge: f64,
    /// Angle agreement required, together with `merge`, to merge two records.
    pub merge_angle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            det: 1e-9,
            class: 1e-9,
            num: 1e-12,
            cos2_overflow: 1e-9,
            word_per_letter: 1e-8,
            dedup: 1e-7,
            trace: 1e-7,
            merge: 1e-6,
            merge_angle: 1e-7,
        }
    }
}
