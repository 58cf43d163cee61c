//! Bimodules over a superalgebra, split null extensions and the four
//! irreducible JP_n cases.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{BasisEntry, Element, Family, GradedAlgebra, GradedBasis, Label, Parity};
use crate::identities::{check_super_jordan, check_supercommutative};
use crate::matrix::{build_jpn, build_pn_action};
use crate::report::Report;
use crate::scalar::{Coeff, Rational};

/// Left action `a·m` of an algebra's basis on a module basis. The right
/// action is `m·a = (−1)^{|a||m|} a·m` and is never stored.
#[derive(Clone, Debug)]
pub struct BimoduleAction {
    algebra: GradedAlgebra,
    module: GradedBasis,
    act: Vec<Element>,
}

impl BimoduleAction {
    pub fn new(algebra: GradedAlgebra, module: GradedBasis, act: Vec<Element>) -> Result<Self> {
        let (da, dm) = (algebra.dim(), module.len());
        if act.len() != da * dm {
            return Err(Error::DimensionMismatch {
                expected: da * dm,
                got: act.len(),
            });
        }
        for a in 0..da {
            for m in 0..dm {
                let e = &act[a * dm + m];
                let want = algebra.parity(a) + module.parity(m);
                if e.support().any(|k| k >= dm || module.parity(k) != want) {
                    return Err(Error::ParityViolation { i: a, j: m });
                }
            }
        }
        Ok(BimoduleAction { algebra, module, act })
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn module(&self) -> &GradedBasis {
        &self.module
    }

    pub fn action(&self, a: usize, m: usize) -> &Element {
        &self.act[a * self.module.len() + m]
    }

    /// `x·y` for algebra element `x` and module element `y`.
    pub fn act_on(&self, x: &Element, y: &Element) -> Element {
        let mut t = Vec::new();
        for (a, ca) in x.terms() {
            for (m, cm) in y.terms() {
                let c = ca * cm;
                t.extend(self.action(*a, *m).terms().iter().map(|(k, v)| (*k, &c * v)));
            }
        }
        Element::from_terms(t)
    }

    /// The algebra acting on a relabelled copy of itself.
    pub fn regular(algebra: &GradedAlgebra) -> Result<Self> {
        let module = GradedBasis::new(
            algebra
                .basis()
                .entries()
                .iter()
                .map(|e| BasisEntry {
                    label: regular_label(&e.label),
                    parity: e.parity,
                })
                .collect(),
        )?;
        let d = algebra.dim();
        let act = (0..d * d).map(|k| algebra.product(k / d, k % d).clone()).collect();
        Self::new(algebra.clone(), module, act)
    }

    /// `M^op`: parities flipped and `a·m^op = (−1)^{|a|}(a·m)^op`.
    pub fn opposite(&self) -> Result<Self> {
        let module = GradedBasis::new(
            self.module
                .entries()
                .iter()
                .map(|e| BasisEntry {
                    label: e.label.clone(),
                    parity: e.parity.flip(),
                })
                .collect(),
        )?;
        let dm = self.module.len();
        let act = self
            .act
            .iter()
            .enumerate()
            .map(|(k, e)| {
                if self.algebra.parity(k / dm).is_odd() {
                    e.neg()
                } else {
                    e.clone()
                }
            })
            .collect();
        Self::new(self.algebra.clone(), module, act)
    }

    /// Renames module basis vectors, keeping order and parity.
    pub fn relabel(&self, f: impl Fn(&Label) -> Label) -> Result<Self> {
        let module = GradedBasis::new(
            self.module
                .entries()
                .iter()
                .map(|e| BasisEntry {
                    label: f(&e.label),
                    parity: e.parity,
                })
                .collect(),
        )?;
        Self::new(self.algebra.clone(), module, self.act.clone())
    }

    /// Copy with the entry `a·m` replaced (parity closure re-checked).
    pub fn with_action(&self, a: usize, m: usize, e: Element) -> Result<Self> {
        let mut act = self.act.clone();
        act[a * self.module.len() + m] = e;
        Self::new(self.algebra.clone(), self.module.clone(), act)
    }
}

fn regular_label(l: &Label) -> Label {
    match l.family() {
        Some(Family::U) => l.with_family(Family::V),
        Some(Family::H) => l.with_family(Family::G),
        Some(Family::S) => l.with_family(Family::Z),
        _ => Label::named(&format!("reg({l})")),
    }
}

fn skew_label(l: &Label) -> Label {
    match l.family() {
        Some(Family::A) => l.with_family(Family::W),
        Some(Family::B) => l.with_family(Family::Y),
        Some(Family::C) => l.with_family(Family::X),
        _ => l.clone(),
    }
}

/// `E = J ⊕ M` with `M·M = 0`; the module occupies the trailing basis
/// indices and is the radical of the extension.
#[derive(Clone, Debug)]
pub struct SplitNullExtension<C = Rational> {
    ambient: GradedAlgebra<C>,
    algebra_dim: usize,
}

impl<C: Coeff> SplitNullExtension<C> {
    pub fn from_parts(ambient: GradedAlgebra<C>, algebra_dim: usize) -> Self {
        assert!(algebra_dim <= ambient.dim());
        SplitNullExtension { ambient, algebra_dim }
    }

    pub fn ambient(&self) -> &GradedAlgebra<C> {
        &self.ambient
    }

    pub fn into_ambient(self) -> GradedAlgebra<C> {
        self.ambient
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn radical(&self) -> Range<usize> {
        self.algebra_dim..self.ambient.dim()
    }

    pub fn radical_indices(&self) -> Vec<usize> {
        self.radical().collect()
    }
}

pub fn split_null_extension(m: &BimoduleAction) -> Result<SplitNullExtension> {
    let alg = m.algebra();
    let (da, dm) = (alg.dim(), m.module().len());
    let basis = alg.basis().concat(m.module())?;
    let ambient = GradedAlgebra::from_fn(basis, |i, j| match (i < da, j < da) {
        (true, true) => alg.product(i, j).clone(),
        (true, false) => m.action(i, j - da).reindex(|k| k + da),
        (false, true) => {
            let odd = Parity::both_odd(alg.parity(j), m.module().parity(i - da));
            m.action(j, i - da).reindex(|k| k + da).scale(&Rational::sign(odd))
        }
        (false, false) => Element::zero(),
    })?;
    debug_assert!(dm == ambient.dim() - da);
    Ok(SplitNullExtension::from_parts(ambient, da))
}

/// Supercommutativity and the super-Jordan identity on `J ⊕ M`.
pub fn check_jordan_bimodule(m: &BimoduleAction) -> Result<Report> {
    let ext = split_null_extension(m)?;
    let sc = check_supercommutative(ext.ambient());
    let sj = check_super_jordan(ext.ambient())?;
    let mut r = Report::new("jordan-bimodule");
    r.absorb(sc);
    r.absorb(sj);
    Ok(r)
}

/// The four irreducible JP_n-bimodules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BimoduleCase {
    Reg,
    RegOp,
    Pn,
    PnOp,
}

impl BimoduleCase {
    pub const ALL: [BimoduleCase; 4] = [BimoduleCase::Reg, BimoduleCase::RegOp, BimoduleCase::Pn, BimoduleCase::PnOp];

    pub fn is_regular(self) -> bool {
        matches!(self, BimoduleCase::Reg | BimoduleCase::RegOp)
    }

    pub fn is_opposite(self) -> bool {
        matches!(self, BimoduleCase::RegOp | BimoduleCase::PnOp)
    }

    /// Module over JP_n with labels `v, g, z` (regular) or `w, y, x` (skew).
    pub fn action(self, n: usize) -> Result<BimoduleAction> {
        let base = if self.is_regular() {
            BimoduleAction::regular(&build_jpn(n)?.0)?
        } else {
            build_pn_action(n)?.relabel(skew_label)?
        };
        if self.is_opposite() {
            base.opposite()
        } else {
            Ok(base)
        }
    }

    pub fn extension(self, n: usize) -> Result<SplitNullExtension> {
        split_null_extension(&self.action(n)?)
    }
}

impl fmt::Display for BimoduleCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BimoduleCase::Reg => "reg",
            BimoduleCase::RegOp => "regop",
            BimoduleCase::Pn => "pn",
            BimoduleCase::PnOp => "pnop",
        })
    }
}

impl FromStr for BimoduleCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "reg" => Ok(BimoduleCase::Reg),
            "regop" | "reg-op" => Ok(BimoduleCase::RegOp),
            "pn" => Ok(BimoduleCase::Pn),
            "pnop" | "pn-op" => Ok(BimoduleCase::PnOp),
            _ => Err(Error::Invalid(format!("unknown case {s:?}; expected reg, regop, pn or pnop"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(s: &str) -> Label {
        s.parse().unwrap()
    }

    #[test]
    fn regular_labels_and_action() {
        let m = BimoduleCase::Reg.action(3).unwrap();
        let u1 = m.algebra().basis().index_of(&lab("u_1")).unwrap();
        let v1 = m.module().index_of(&lab("v_1")).unwrap();
        let g1 = m.module().index_of(&lab("g_1")).unwrap();
        assert_eq!(m.action(u1, v1), &Element::basis(v1));
        assert_eq!(m.action(u1, g1), &Element::basis(g1));
        // Σu_i acts as the identity on e = Σv_i
        let one = Element::from_terms((1..=3).map(|i| (m.algebra().basis().index_of(&Label::one(Family::U, i)).unwrap(), Rational::one())).collect());
        let e = Element::from_terms((1..=3).map(|i| (m.module().index_of(&Label::one(Family::V, i)).unwrap(), Rational::one())).collect());
        assert_eq!(m.act_on(&one, &e), e);
    }

    #[test]
    fn opposite_is_an_involution() {
        let m = BimoduleCase::Pn.action(3).unwrap();
        let oo = m.opposite().unwrap().opposite().unwrap();
        assert_eq!(oo.module(), m.module());
        assert_eq!(oo.act, m.act);
        let op = m.opposite().unwrap();
        let h1 = m.algebra().basis().index_of(&lab("h_1")).unwrap();
        for k in 0..m.module().len() {
            assert_eq!(op.action(h1, k), &m.action(h1, k).neg());
            assert_ne!(op.module().parity(k), m.module().parity(k));
        }
    }

    #[test]
    fn extension_shape() {
        let ext = BimoduleCase::Reg.extension(3).unwrap();
        assert_eq!(ext.ambient().dim(), 36);
        assert_eq!(ext.radical(), 18..36);
        for i in ext.radical() {
            for j in ext.radical() {
                assert!(ext.ambient().product(i, j).is_zero());
            }
        }
    }

    #[test]
    fn case_names_round_trip() {
        for c in BimoduleCase::ALL {
            assert_eq!(c.to_string().parse::<BimoduleCase>().unwrap(), c);
        }
        assert!("foo".parse::<BimoduleCase>().is_err());
    }
}
