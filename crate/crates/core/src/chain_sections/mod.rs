//! Vanishing orders of limit sections on a chain of elliptic curves, the
//! products feeding the Petri map, and explicit kernel elements.
//!
//! Component `C_i` carries marked points `P_i`, `Q_i`; `Q_i` is glued to
//! `P_{i+1}`. The sections `s_a` (one per column) belong to the degree `d`
//! series and `t_b` (one per row) to its Serre dual of degree `2g - 2 - d`.

mod aspects;
mod extension;
mod instance;
mod kernel;
mod orders;
mod surjectivity;

pub use aspects::{AspectSeries, ComponentAspect};
pub use extension::{extend_chain, ExtendedChain};
pub use instance::Instance;
pub use kernel::{
    kernel_elements, mu1_image_orders, BasisKind, KernelCertificate, KernelComponent, KernelElement, Mu1Image,
    Term,
};
pub use orders::{membership, product_orders, section_orders, OrderPair, SectionLabel, VanishingTable};
pub use surjectivity::{surjectivity_certificate, Certificate, PeelStep, Point};

use crate::elliptic_pic::{ComponentModel, PicError};
use crate::fillings::{validate, Filling, FillingError, Index, TorsionAssignment};
use crate::numerology::NumerologyError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error(transparent)]
    Numerology(#[from] NumerologyError),
    #[error(transparent)]
    Filling(#[from] FillingError),
    #[error(transparent)]
    Pic(#[from] PicError),
    #[error("filling is {alpha}x{beta} but (g, r, d) = ({g}, {r}, {d}) needs {want_alpha}x{want_beta}")]
    ShapeMismatch { g: i64, r: i64, d: i64, alpha: usize, beta: usize, want_alpha: i64, want_beta: i64 },
    #[error("filling is not admissible: {0}")]
    NotAdmissible(String),
    #[error("negative or oversized order ({p}, {q}) for {label} on component {i}")]
    OrderOutOfRange { label: SectionLabel, i: usize, p: i64, q: i64 },
    #[error("closed form disagrees with the recursion for {label} on component {i}: {recursion} vs {closed}")]
    ClosedFormMismatch { label: SectionLabel, i: usize, recursion: i64, closed: i64 },
    #[error("component {i}: {what}")]
    AspectMismatch { i: usize, what: String },
    #[error("spots {first} and {second} share index {index}")]
    RepeatedIndex { index: Index, first: crate::fillings::Spot, second: crate::fillings::Spot },
    #[error("spot {0} lies outside the grid")]
    SpotOutsideGrid(crate::fillings::Spot),
    #[error("index {index} does not occupy the doubled spots for l = {l}")]
    NoDoubledPattern { l: usize, index: Index },
    #[error("no certified combination for element {l} on component {i}; candidates {candidates:?}")]
    NoCertifiedCombination { l: usize, i: usize, candidates: Vec<(usize, usize)> },
    #[error("element {l} is not a two-term pencil on the last component")]
    NotPencilShape { l: usize },
    #[error("element {l}: ratio of the pencil has order zero at {point}, differential order undetermined")]
    DegenerateRatio { l: usize, point: Point },
    #[error("extension needs g - d + i - r - 3 >= 0 on component {i}, got {value}")]
    NegativeDualTwist { i: usize, value: i64 },
    #[error("base instance has g = {base}, expected g0 = {g0}")]
    BaseMismatch { base: usize, g0: i64 },
}

/// Genus-`g` chain: per-component torsion of `[P_i - Q_i]` plus the series
/// data `(r, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainSpec {
    pub g: usize,
    pub r: i64,
    pub d: i64,
    pub components: Vec<ComponentModel>,
}

impl ChainSpec {
    /// Chain governed by an admissible filling: component `i` takes the
    /// torsion assigned to index `i`.
    pub fn from_filling(filling: &Filling, torsion: &TorsionAssignment, r: i64, d: i64) -> Result<Self, ChainError> {
        let g = filling.g() as i64;
        let (want_alpha, want_beta) = (r + 1, g - d + r);
        if filling.alpha() as i64 != want_alpha || filling.beta() as i64 != want_beta {
            return Err(ChainError::ShapeMismatch {
                g,
                r,
                d,
                alpha: filling.alpha(),
                beta: filling.beta(),
                want_alpha,
                want_beta,
            });
        }
        let report = validate(filling, torsion);
        if !report.admissible {
            let detail = serde_json::to_string(&report).unwrap_or_default();
            return Err(ChainError::NotAdmissible(detail));
        }
        let components = (1..=filling.g()).map(|i| torsion.model(i)).collect();
        Ok(ChainSpec { g: g as usize, r, d, components })
    }

    pub fn alpha(&self) -> usize {
        (self.r + 1) as usize
    }

    pub fn beta(&self) -> usize {
        (self.g as i64 - self.d + self.r) as usize
    }

    pub fn d_bar(&self) -> i64 {
        2 * self.g as i64 - 2 - self.d
    }

    /// Model of component `i` (1-based).
    pub fn model(&self, i: usize) -> ComponentModel {
        self.components[i - 1]
    }

    /// Degree of the canonical aspect on every component.
    pub fn canonical_degree(&self) -> i64 {
        2 * self.g as i64 - 2
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::fillings::canonical_filling;

    #[test]
    fn chain_from_five_by_seven() {
        let (f, t) = canonical_filling(31, 4, 28, 4).unwrap();
        let chain = ChainSpec::from_filling(&f, &t, 4, 28).unwrap();
        assert_eq!(chain.model(30), ComponentModel::Torsion(2));
        assert_eq!(chain.model(27), ComponentModel::Torsion(8));
        assert_eq!(chain.model(31), ComponentModel::Generic);
        assert_eq!(chain.d_bar(), 32);
    }

    #[test]
    fn shape_and_admissibility_checked() {
        let (f, t) = canonical_filling(7, 1, 4, 1).unwrap();
        assert!(matches!(ChainSpec::from_filling(&f, &t, 1, 5), Err(ChainError::ShapeMismatch { .. })));
        assert!(matches!(
            ChainSpec::from_filling(&f, &TorsionAssignment::new(), 1, 4),
            Err(ChainError::NotAdmissible(_))
        ));
    }

    #[test]
    fn sweep_fixture_is_nonempty() {
        let s = fixtures::sweep();
        assert!(s.iter().any(|x| x.3 >= 1));
        assert!(s.contains(&(4, 1, 3, 0)));
        assert!(s.contains(&(7, 1, 4, 1)));
    }
}
