//! Wedderburn complements in square-zero extensions of JP_n: symbolic
//! constraint derivation, the Case-1 closed-form correction, a twist
//! generator and a general linear complement solver.

pub mod complement;
pub mod correction;
pub mod symbolic;
pub mod twist;

use crate::error::{Error, Result};
use crate::graded::{Element, GradedBasis, Label};
use crate::scalar::Coeff;

pub use complement::{solve_complement, verify_complement, Ansatz, ComplementSolution, ComplementVerdict};
pub use correction::{case1_correction, extract_xi, CorrectionPlan, Xi};
pub use symbolic::{derive_constraints, reduce_constraints, symbolic_lift, ConstraintSystem, InstanceMode, SymbolicExtension};
pub use twist::{shear_twist, xi_pattern_twist, Twist};

pub(crate) fn require_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::Invalid(format!("Wedderburn computations need n >= 3, got {n}")));
    }
    Ok(())
}

/// Preimages in an extension of the canonical JP_n basis, indexed like it.
#[derive(Clone, Debug)]
pub struct Lift<C: Coeff = crate::scalar::Rational> {
    canonical: GradedBasis,
    elements: Vec<Element<C>>,
}

impl<C: Coeff> Lift<C> {
    pub fn new(canonical: GradedBasis, elements: Vec<Element<C>>) -> Result<Self> {
        if canonical.len() != elements.len() {
            return Err(Error::DimensionMismatch {
                expected: canonical.len(),
                got: elements.len(),
            });
        }
        Ok(Lift { canonical, elements })
    }

    /// The lift `b ↦ e_b` onto the first basis vectors of an extension.
    pub fn identity(canonical: GradedBasis) -> Self {
        let elements = (0..canonical.len()).map(Element::basis).collect();
        Lift { canonical, elements }
    }

    pub fn canonical(&self) -> &GradedBasis {
        &self.canonical
    }

    pub fn elements(&self) -> &[Element<C>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, label: &Label) -> Option<&Element<C>> {
        self.canonical.index_of(label).map(|k| &self.elements[k])
    }
}
