//! Named tolerance profile.
//!
//! Operations that take an explicit tolerance read it from here at the
//! call site; the `strict` profile halves every value.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Hermiticity check on observables.
    pub hermitian: f64,
    /// Eigenvalue merge when building outcome distributions and spectra.
    pub eigen_merge: f64,
    /// Orthonormality of reconstruction bases.
    pub basis: f64,
    /// Derived identities at the 1e-9 level (reconstruction, traces).
    pub identity: f64,
    /// Axiom verdicts and trace-form residuals.
    pub axiom: f64,
    /// `|v² − v|` acceptance for the projector dichotomy.
    pub dichotomy: f64,
    /// Linear relation satisfied by a value assignment.
    pub relation: f64,
    /// Orthogonality in Kochen–Specker vector sets.
    pub orthogonality: f64,
    /// Density operator positivity floor (negated).
    pub positivity: f64,
    /// Gleason frame-sum deviation.
    pub frame: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            hermitian: 1e-10,
            eigen_merge: 1e-8,
            basis: 1e-9,
            identity: 1e-9,
            axiom: 1e-8,
            dichotomy: 1e-8,
            relation: 1e-8,
            orthogonality: 1e-9,
            positivity: 1e-10,
            frame: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn strict() -> Self {
        Self::default().scaled(0.5)
    }

    pub fn scaled(self, factor: f64) -> Self {
        Tolerances {
            hermitian: self.hermitian * factor,
            eigen_merge: self.eigen_merge * factor,
            basis: self.basis * factor,
            identity: self.identity * factor,
            axiom: self.axiom * factor,
            dichotomy: self.dichotomy * factor,
            relation: self.relation * factor,
            orthogonality: self.orthogonality * factor,
            positivity: self.positivity * factor,
            frame: self.frame * factor,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_halves_everything() {
        let d = Tolerances::default();
        let s = Tolerances::strict();
        assert_eq!(s.hermitian, d.hermitian / 2.0);
        assert_eq!(s.frame, d.frame / 2.0);
        assert_eq!(s.orthogonality, d.orthogonality / 2.0);
    }
}
