//! The associative superalgebra M_{n|n}, the superinvolution `trp`, and the
//! matrix realizations of JP_n and P_n. Every structure constant of JP_n and
//! of its action on P_n is computed here from matrices.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::bimodule::BimoduleAction;
use crate::error::{Error, Result};
use crate::graded::{Element, Family, GradedAlgebra, GradedBasis, Homogeneity, Label, Parity};
use crate::scalar::Rational;

/// A `2n × 2n` rational matrix with the block grading of M_{n|n}: diagonal
/// blocks even, off-diagonal blocks odd. Indices are 0-based.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperMatrix {
    n: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SuperMatrix {
    pub fn zero(n: usize) -> Self {
        SuperMatrix {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_entries(n, (0..2 * n).map(|k| (k, k, Rational::one())))
    }

    /// Matrix unit `e_{r,c}` (0-based).
    pub fn unit(n: usize, r: usize, c: usize) -> Self {
        Self::from_entries(n, [(r, c, Rational::one())])
    }

    pub fn from_entries<I: IntoIterator<Item = (usize, usize, Rational)>>(n: usize, entries: I) -> Self {
        let mut m = SuperMatrix::zero(n);
        for (r, c, v) in entries {
            assert!(r < 2 * n && c < 2 * n, "entry ({r},{c}) outside a {0}x{0} matrix", 2 * n);
            m.add_entry(r, c, &v);
        }
        m
    }

    fn add_entry(&mut self, r: usize, c: usize, v: &Rational) {
        let e = self.entries.entry((r, c)).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|((r, c), v)| (*r, *c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn entry_parity(&self, r: usize, c: usize) -> Parity {
        if (r < self.n) == (c < self.n) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut p = None;
        for &(r, c) in self.entries.keys() {
            let q = self.entry_parity(r, c);
            match p {
                None => p = Some(q),
                Some(x) if x != q => return Homogeneity::Mixed,
                _ => {}
            }
        }
        p.map_or(Homogeneity::Zero, Homogeneity::Pure)
    }

    fn check_size(&self, other: &SuperMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        self.check_size(other)?;
        let mut m = self.clone();
        for ((r, c), v) in &other.entries {
            m.add_entry(*r, *c, v);
        }
        Ok(m)
    }

    pub fn sub(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, k: &Rational) -> SuperMatrix {
        if k.is_zero() {
            return SuperMatrix::zero(self.n);
        }
        SuperMatrix {
            n: self.n,
            entries: self.entries.iter().map(|(p, v)| (*p, v * k)).collect(),
        }
    }

    /// Ordinary matrix product.
    pub fn assoc_multiply(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        self.check_size(other)?;
        let mut rows: HashMap<usize, Vec<(usize, &Rational)>> = HashMap::new();
        for ((r, c), v) in &other.entries {
            rows.entry(*r).or_default().push((*c, v));
        }
        let mut m = SuperMatrix::zero(self.n);
        for ((r, k), a) in &self.entries {
            if let Some(row) = rows.get(k) {
                for (c, b) in row {
                    m.add_entry(*r, *c, &(a * *b));
                }
            }
        }
        Ok(m)
    }

    /// `[[a, b], [c, d]] ↦ [[dᵗ, −bᵗ], [cᵗ, aᵗ]]`.
    pub fn trp(&self) -> SuperMatrix {
        let n = self.n;
        let mut m = SuperMatrix::zero(n);
        for ((r, c), v) in &self.entries {
            let (r, c) = (*r, *c);
            match (r < n, c < n) {
                (true, true) => m.add_entry(n + c, n + r, v),
                (true, false) => m.add_entry(c - n, n + r, &-v),
                (false, true) => m.add_entry(n + c, r - n, v),
                (false, false) => m.add_entry(c - n, r - n, v),
            }
        }
        m
    }

    /// `x∘y = ½(xy + (−1)^{|x||y|} yx)` for homogeneous `x, y`.
    pub fn supersymmetric_product(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        let px = match self.homogeneity() {
            Homogeneity::Mixed => return Err(Error::NotHomogeneous),
            Homogeneity::Zero => return Ok(SuperMatrix::zero(self.n)),
            Homogeneity::Pure(p) => p,
        };
        let py = match other.homogeneity() {
            Homogeneity::Mixed => return Err(Error::NotHomogeneous),
            Homogeneity::Zero => return Ok(SuperMatrix::zero(self.n)),
            Homogeneity::Pure(p) => p,
        };
        let xy = self.assoc_multiply(other)?;
        let yx = other.assoc_multiply(self)?.scale(&Rational::sign(Parity::both_odd(px, py)));
        Ok(xy.add(&yx)?.scale(&Rational::half()))
    }
}

impl fmt::Debug for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|((r, c), v)| format!("{v}*e_{{{},{}}}", r + 1, c + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A labelled family of matrices with a distinguished witness entry per
/// basis matrix, used to read off coordinates.
#[derive(Clone, Debug)]
pub struct NamedBasis {
    n: usize,
    basis: GradedBasis,
    mats: Vec<SuperMatrix>,
    witness: Vec<(usize, usize)>,
}

impl NamedBasis {
    pub fn new(n: usize, items: Vec<(Label, SuperMatrix)>) -> Result<Self> {
        let mut touch: HashMap<(usize, usize), usize> = HashMap::new();
        for (_, m) in &items {
            for (r, c, _) in m.entries() {
                *touch.entry((r, c)).or_default() += 1;
            }
        }
        let mut pairs = Vec::with_capacity(items.len());
        let mut mats = Vec::with_capacity(items.len());
        let mut witness = Vec::with_capacity(items.len());
        for (label, m) in items {
            let parity = match m.homogeneity() {
                Homogeneity::Pure(p) => p,
                _ => return Err(Error::Invalid(format!("basis matrix {label} is not homogeneous and nonzero"))),
            };
            let w = m
                .entries()
                .map(|(r, c, _)| (r, c))
                .find(|p| touch[p] == 1)
                .ok_or_else(|| Error::Invalid(format!("basis matrix {label} has no private entry")))?;
            pairs.push((label, parity));
            mats.push(m);
            witness.push(w);
        }
        Ok(NamedBasis {
            n,
            basis: GradedBasis::from_pairs(pairs)?,
            mats,
            witness,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graded_basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mats.is_empty()
    }

    pub fn matrix(&self, k: usize) -> &SuperMatrix {
        &self.mats[k]
    }

    /// Matrix of a label in any orientation (`s_21 = −s_12`).
    pub fn realize(&self, label: &Label) -> Option<SuperMatrix> {
        match label.normalize() {
            None => Some(SuperMatrix::zero(self.n)),
            Some((stored, sign)) => {
                let k = self.basis.index_of(&stored)?;
                Some(self.mats[k].scale(&Rational::from(sign)))
            }
        }
    }

    /// Exact coordinates of `x`; errors with the residual when `x` is not in
    /// the span.
    pub fn coordinates(&self, x: &SuperMatrix) -> Result<Element> {
        let mut terms = Vec::new();
        let mut rebuilt = SuperMatrix::zero(self.n);
        for (k, &(r, c)) in self.witness.iter().enumerate() {
            let v = x.get(r, c);
            if v.is_zero() {
                continue;
            }
            let coef = &v / &self.mats[k].get(r, c);
            rebuilt = rebuilt.add(&self.mats[k].scale(&coef))?;
            terms.push((k, coef));
        }
        let residual = x.sub(&rebuilt)?;
        if !residual.is_zero() {
            return Err(Error::NotInSpan {
                residual: format!("{residual:?}"),
            });
        }
        Ok(Element::from_terms(terms))
    }

    pub fn to_matrix(&self, x: &Element) -> SuperMatrix {
        let mut m = SuperMatrix::zero(self.n);
        for (k, c) in x.terms() {
            m = m.add(&self.mats[*k].scale(c)).expect("same size");
        }
        m
    }
}

fn e(n: usize, r: usize, c: usize) -> SuperMatrix {
    SuperMatrix::unit(n, r, c)
}

/// Ordered pairs `(i, j)`, `i ≠ j`, 1-based, lexicographic.
pub fn ordered_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
}

/// Pairs `i < j`, 1-based, lexicographic.
pub fn increasing_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

fn sum(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix {
    a.add(&b).expect("same size")
}

fn diff(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix {
    a.sub(&b).expect("same size")
}

/// Named basis `u_i, u_ij, h_i, h_ij, s_ij` of JP_n.
pub fn jpn_basis(n: usize) -> Result<NamedBasis> {
    let mut items = Vec::with_capacity(2 * n * n);
    // 1-based labels; matrix indices are 0-based, second block offset by n.
    let (a, d) = (|i: usize| i - 1, |i: usize| n + i - 1);
    for i in 1..=n {
        items.push((Label::one(Family::U, i), sum(e(n, a(i), a(i)), e(n, d(i), d(i)))));
    }
    for (i, j) in ordered_pairs(n) {
        items.push((Label::two(Family::U, i, j), sum(e(n, a(i), a(j)), e(n, d(j), d(i)))));
    }
    for i in 1..=n {
        items.push((Label::one(Family::H, i), e(n, d(i), a(i))));
    }
    for (i, j) in increasing_pairs(n) {
        items.push((Label::two(Family::H, i, j), sum(e(n, d(i), a(j)), e(n, d(j), a(i)))));
    }
    for (i, j) in increasing_pairs(n) {
        items.push((Label::two(Family::S, i, j), diff(e(n, a(i), d(j)), e(n, a(j), d(i)))));
    }
    NamedBasis::new(n, items)
}

/// Named basis `a_i, a_ij, b_i, b_ij, c_ij` of the skew space P_n.
pub fn pn_basis(n: usize) -> Result<NamedBasis> {
    let mut items = Vec::with_capacity(2 * n * n);
    let (a, d) = (|i: usize| i - 1, |i: usize| n + i - 1);
    for i in 1..=n {
        items.push((Label::one(Family::A, i), diff(e(n, a(i), a(i)), e(n, d(i), d(i)))));
    }
    for (i, j) in ordered_pairs(n) {
        items.push((Label::two(Family::A, i, j), diff(e(n, a(i), a(j)), e(n, d(j), d(i)))));
    }
    for i in 1..=n {
        items.push((Label::one(Family::B, i), e(n, a(i), d(i))));
    }
    for (i, j) in increasing_pairs(n) {
        items.push((Label::two(Family::B, i, j), sum(e(n, a(i), d(j)), e(n, a(j), d(i)))));
    }
    for (i, j) in increasing_pairs(n) {
        items.push((Label::two(Family::C, i, j), diff(e(n, d(i), a(j)), e(n, d(j), a(i)))));
    }
    NamedBasis::new(n, items)
}

/// All matrix units `e_{r,c}` (1-based labels) of M_{n|n}.
pub fn mnn_basis(n: usize) -> Result<NamedBasis> {
    let items = (0..2 * n)
        .flat_map(|r| (0..2 * n).map(move |c| (r, c)))
        .map(|(r, c)| (Label::two(Family::E, r + 1, c + 1), e(n, r, c)))
        .collect();
    NamedBasis::new(n, items)
}

fn symmetrized_algebra(basis: &NamedBasis) -> Result<GradedAlgebra> {
    let d = basis.len();
    let mut table = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let p = basis.matrix(i).supersymmetric_product(basis.matrix(j))?;
            table.push(basis.coordinates(&p)?);
        }
    }
    GradedAlgebra::new(basis.graded_basis().clone(), table)
}

/// JP_n = H(M_{n|n}, trp) with structure constants read off from
/// supersymmetric products of the basis matrices.
pub fn build_jpn(n: usize) -> Result<(GradedAlgebra, NamedBasis)> {
    if n < 2 {
        return Err(Error::Invalid(format!("JP_n needs n >= 2, got {n}")));
    }
    let basis = jpn_basis(n)?;
    Ok((symmetrized_algebra(&basis)?, basis))
}

/// The Jordan superalgebra M_{n|n}^(+) on matrix units.
pub fn build_mnn(n: usize) -> Result<(GradedAlgebra, NamedBasis)> {
    if n < 1 {
        return Err(Error::Invalid("M_{n|n} needs n >= 1".into()));
    }
    let basis = mnn_basis(n)?;
    Ok((symmetrized_algebra(&basis)?, basis))
}

/// Action `a∘m` of JP_n on P_n, re-coordinatized over P_n's basis.
pub fn build_pn_action(n: usize) -> Result<BimoduleAction> {
    if n < 3 {
        return Err(Error::Invalid(format!("P_n is used for n >= 3, got {n}")));
    }
    let (alg, jb) = build_jpn(n)?;
    let pb = pn_basis(n)?;
    let mut act = Vec::with_capacity(jb.len() * pb.len());
    for a in 0..jb.len() {
        for m in 0..pb.len() {
            let p = jb.matrix(a).supersymmetric_product(pb.matrix(m))?;
            act.push(pb.coordinates(&p)?);
        }
    }
    BimoduleAction::new(alg, pb.graded_basis().clone(), act)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(s: &str) -> Label {
        s.parse().unwrap()
    }

    #[test]
    fn trp_block_map() {
        let n = 3;
        // a-block entry (0,1) goes to (n+1, n+0); b-block entry flips sign
        assert_eq!(e(n, 0, 1).trp(), e(n, 4, 3));
        assert_eq!(e(n, 0, 4).trp(), e(n, 1, 3).scale(&Rational::from(-1)));
        assert_eq!(e(n, 3, 1).trp(), e(n, 4, 0));
        assert_eq!(e(n, 4, 5).trp(), e(n, 2, 1));
    }

    #[test]
    fn hand_products() {
        let n = 3;
        // e_{4,1}(e_{1,5} − e_{2,4}) = e_{4,5}
        let x = e(n, 3, 0);
        let y = diff(e(n, 0, 4), e(n, 1, 3));
        assert_eq!(x.assoc_multiply(&y).unwrap(), e(n, 3, 4));
        assert!(e(n, 0, 1).assoc_multiply(&e(n, 2, 3)).unwrap().is_zero());
        let i = SuperMatrix::identity(n);
        assert_eq!(i.assoc_multiply(&y).unwrap(), y);
        assert!(SuperMatrix::zero(2).assoc_multiply(&SuperMatrix::zero(3)).is_err());
    }

    #[test]
    fn bases_are_trp_eigenvectors() {
        for n in 2..=4 {
            let j = jpn_basis(n).unwrap();
            assert_eq!(j.len(), 2 * n * n);
            assert_eq!(j.graded_basis().count(Parity::Even), n * n);
            for k in 0..j.len() {
                assert_eq!(j.matrix(k).trp(), *j.matrix(k));
            }
        }
        let p = pn_basis(3).unwrap();
        for k in 0..p.len() {
            assert_eq!(p.matrix(k).trp(), p.matrix(k).scale(&Rational::from(-1)));
        }
    }

    #[test]
    fn symmetric_storage_orientation() {
        let j = jpn_basis(3).unwrap();
        assert_eq!(j.realize(&lab("h_21")), j.realize(&lab("h_12")));
        assert_eq!(
            j.realize(&lab("s_21")).unwrap(),
            j.realize(&lab("s_12")).unwrap().scale(&Rational::from(-1))
        );
    }

    #[test]
    fn coordinates_of_products() {
        let j = jpn_basis(3).unwrap();
        let h1 = j.realize(&lab("h_1")).unwrap();
        let s12 = j.realize(&lab("s_12")).unwrap();
        let p = h1.supersymmetric_product(&s12).unwrap();
        // ½(e_{2,1} + e_{4,5})
        let want = sum(e(3, 1, 0), e(3, 3, 4)).scale(&Rational::half());
        assert_eq!(p, want);
        let c = j.coordinates(&p).unwrap();
        let u21 = j.graded_basis().index_of(&lab("u_21")).unwrap();
        assert_eq!(c, Element::basis(u21).scale(&Rational::half()));
        assert!(j.coordinates(&SuperMatrix::zero(3)).unwrap().is_zero());
        assert!(matches!(j.coordinates(&e(3, 0, 1)), Err(Error::NotInSpan { .. })));
    }
}
