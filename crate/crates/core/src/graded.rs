//! Parity-graded bases, elements and structure-constant algebras.

use std::collections::HashMap;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Coeff, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Option<Self> {
        match bit {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn flip(self) -> Self {
        self + Parity::Odd
    }

    /// Whether `(-1)^{|a||b|}` is negative.
    pub fn both_odd(a: Parity, b: Parity) -> bool {
        a.is_odd() && b.is_odd()
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Letter of a named basis family.
///
/// `U, H, S` name the basis of JP_n; `A, B, C` the skew space P_n; `V, G, Z`
/// and `W, Y, X` the radical copies of Reg JP_n and P_n; `E` matrix units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    U,
    H,
    S,
    A,
    B,
    C,
    V,
    G,
    Z,
    W,
    Y,
    X,
    E,
}

/// How a two-index label behaves when its indices are swapped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexSymmetry {
    /// `x_ij` and `x_ji` are distinct basis elements.
    Ordered,
    /// `x_ji = x_ij`; only `i < j` is stored.
    Symmetric,
    /// `x_ji = -x_ij`; only `i < j` is stored.
    Antisymmetric,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::U => 'u',
            Family::H => 'h',
            Family::S => 's',
            Family::A => 'a',
            Family::B => 'b',
            Family::C => 'c',
            Family::V => 'v',
            Family::G => 'g',
            Family::Z => 'z',
            Family::W => 'w',
            Family::Y => 'y',
            Family::X => 'x',
            Family::E => 'e',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'u' => Family::U,
            'h' => Family::H,
            's' => Family::S,
            'a' => Family::A,
            'b' => Family::B,
            'c' => Family::C,
            'v' => Family::V,
            'g' => Family::G,
            'z' => Family::Z,
            'w' => Family::W,
            'y' => Family::Y,
            'x' => Family::X,
            'e' => Family::E,
            _ => return None,
        })
    }

    pub fn symmetry(self) -> IndexSymmetry {
        match self {
            Family::H | Family::B | Family::G | Family::Y => IndexSymmetry::Symmetric,
            Family::S | Family::C | Family::Z | Family::X => IndexSymmetry::Antisymmetric,
            _ => IndexSymmetry::Ordered,
        }
    }
}

/// Basis label: a family letter with one or two 1-based indices, or a free
/// name for algebras read from files.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Std { family: Family, i: u8, j: Option<u8> },
    Named(Arc<str>),
}

impl Label {
    pub fn one(family: Family, i: usize) -> Self {
        Label::Std {
            family,
            i: i as u8,
            j: None,
        }
    }

    pub fn two(family: Family, i: usize, j: usize) -> Self {
        Label::Std {
            family,
            i: i as u8,
            j: Some(j as u8),
        }
    }

    pub fn named(name: &str) -> Self {
        Label::Named(Arc::from(name))
    }

    pub fn family(&self) -> Option<Family> {
        match self {
            Label::Std { family, .. } => Some(*family),
            Label::Named(_) => None,
        }
    }

    /// Indices as a slice-like vector (empty for named labels).
    pub fn indices(&self) -> Vec<usize> {
        match self {
            Label::Std { i, j: None, .. } => vec![*i as usize],
            Label::Std { i, j: Some(j), .. } => vec![*i as usize, *j as usize],
            Label::Named(_) => vec![],
        }
    }

    pub fn with_family(&self, family: Family) -> Label {
        match self {
            Label::Std { i, j, .. } => Label::Std {
                family,
                i: *i,
                j: *j,
            },
            Label::Named(n) => Label::Named(n.clone()),
        }
    }

    /// Storage form of the label and the sign relating the two:
    /// `self = sign · stored`. Returns `None` for `x_ii` of an
    /// antisymmetric family, which is zero.
    pub fn normalize(&self) -> Option<(Label, i64)> {
        match self {
            Label::Std {
                family,
                i,
                j: Some(j),
            } if i > j => match family.symmetry() {
                IndexSymmetry::Ordered => Some((self.clone(), 1)),
                IndexSymmetry::Symmetric => Some((Label::two(*family, *j as usize, *i as usize), 1)),
                IndexSymmetry::Antisymmetric => Some((Label::two(*family, *j as usize, *i as usize), -1)),
            },
            Label::Std {
                family,
                i,
                j: Some(j),
            } if i == j && family.symmetry() == IndexSymmetry::Antisymmetric => None,
            _ => Some((self.clone(), 1)),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Std { family, i, j } => {
                let l = family.letter();
                match j {
                    None if *i < 10 => write!(f, "{l}_{i}"),
                    None => write!(f, "{l}_{{{i}}}"),
                    Some(j) if *i < 10 && *j < 10 => write!(f, "{l}_{i}{j}"),
                    Some(j) => write!(f, "{l}_{{{i},{j}}}"),
                }
            }
            Label::Named(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Label {
    type Err = std::convert::Infallible;

    /// Parses the display form back; anything else becomes a named label.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        fn parse_std(s: &str) -> Option<Label> {
            let mut chars = s.chars();
            let family = Family::from_letter(chars.next()?)?;
            let rest = chars.as_str().strip_prefix('_')?;
            let ix: Vec<u8> = if let Some(inner) = rest.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
                inner.split(',').map(|p| p.trim().parse().ok()).collect::<Option<_>>()?
            } else {
                rest.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect::<Option<_>>()?
            };
            match ix.as_slice() {
                [i] if *i > 0 => Some(Label::one(family, *i as usize)),
                [i, j] if *i > 0 && *j > 0 => Some(Label::two(family, *i as usize, *j as usize)),
                _ => None,
            }
        }
        Ok(parse_std(s).unwrap_or_else(|| Label::named(s)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisEntry {
    pub label: Label,
    pub parity: Parity,
}

/// Ordered list of parity-labelled basis vectors with unique labels.
#[derive(Clone, Debug, Default)]
pub struct GradedBasis {
    entries: Vec<BasisEntry>,
    index: HashMap<Label, usize>,
}

impl PartialEq for GradedBasis {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl GradedBasis {
    pub fn new(entries: Vec<BasisEntry>) -> Result<Self> {
        let mut index = HashMap::with_capacity(entries.len());
        for (k, e) in entries.iter().enumerate() {
            if index.insert(e.label.clone(), k).is_some() {
                return Err(Error::Invalid(format!("duplicate basis label {}", e.label)));
            }
        }
        Ok(GradedBasis { entries, index })
    }

    pub fn from_pairs<I: IntoIterator<Item = (Label, Parity)>>(pairs: I) -> Result<Self> {
        Self::new(
            pairs
                .into_iter()
                .map(|(label, parity)| BasisEntry { label, parity })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[BasisEntry] {
        &self.entries
    }

    pub fn label(&self, k: usize) -> &Label {
        &self.entries[k].label
    }

    pub fn parity(&self, k: usize) -> Parity {
        self.entries[k].parity
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Index and sign of a possibly non-stored orientation (`s_21 = -s_12`).
    pub fn resolve(&self, label: &Label) -> Option<(usize, i64)> {
        let (stored, sign) = label.normalize()?;
        self.index_of(&stored).map(|k| (k, sign))
    }

    /// Element for a label in any orientation; zero for `x_ii` of an
    /// antisymmetric family.
    pub fn element<C: Coeff>(&self, label: &Label) -> Option<Element<C>> {
        match label.normalize() {
            None => Some(Element::zero()),
            Some((stored, sign)) => {
                let k = self.index_of(&stored)?;
                Some(Element::basis(k).scale(&Rational::from(sign)))
            }
        }
    }

    pub fn count(&self, parity: Parity) -> usize {
        self.entries.iter().filter(|e| e.parity == parity).count()
    }

    /// Concatenation `self ⊕ other`.
    pub fn concat(&self, other: &GradedBasis) -> Result<GradedBasis> {
        GradedBasis::new(self.entries.iter().chain(other.entries.iter()).cloned().collect())
    }
}

/// Homogeneity of an element with respect to a basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Pure(Parity),
    Mixed,
}

/// Sparse coefficient vector over a basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element<C = Rational> {
    terms: Vec<(usize, C)>,
}

impl<C: Coeff> Default for Element<C> {
    fn default() -> Self {
        Element { terms: Vec::new() }
    }
}

impl<C: Coeff> Element<C> {
    pub fn zero() -> Self {
        Element { terms: Vec::new() }
    }

    pub fn basis(k: usize) -> Self {
        Element {
            terms: vec![(k, C::from_rational(Rational::one()))],
        }
    }

    pub fn from_terms(mut terms: Vec<(usize, C)>) -> Self {
        terms.sort_by_key(|(k, _)| *k);
        let mut out: Vec<(usize, C)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => lc.add_assign_ref(&c),
                _ => out.push((k, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Element { terms: out }
    }

    pub fn terms(&self) -> &[(usize, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(usize, C)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: usize) -> C {
        self.terms
            .binary_search_by_key(&k, |(i, _)| *i)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.iter().map(|(k, _)| *k)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms.last().map(|(k, _)| *k)
    }

    pub fn add(&self, other: &Self) -> Self {
        Element::from_terms(self.terms.iter().chain(other.terms.iter()).cloned().collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Element {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(k, c)| (*k, c.scale(r))).collect(),
        }
    }

    /// `self + k·basis(index)`.
    pub fn plus_term(&self, index: usize, k: C) -> Self {
        let mut t = self.terms.clone();
        t.push((index, k));
        Element::from_terms(t)
    }

    /// Re-indexes every term through `f`.
    pub fn reindex(&self, f: impl Fn(usize) -> usize) -> Self {
        Element::from_terms(self.terms.iter().map(|(k, c)| (f(*k), c.clone())).collect())
    }

    pub fn homogeneity(&self, basis: &GradedBasis) -> Homogeneity {
        let mut parity = None;
        for (k, _) in &self.terms {
            let p = basis.parity(*k);
            match parity {
                None => parity = Some(p),
                Some(q) if q != p => return Homogeneity::Mixed,
                _ => {}
            }
        }
        parity.map_or(Homogeneity::Zero, Homogeneity::Pure)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Element<D> {
        Element::from_terms(self.terms.iter().map(|(k, c)| (*k, f(c))).collect())
    }

    /// Renders the element with basis labels, e.g. `1/2*u_12 - h_1`.
    pub fn display(&self, basis: &GradedBasis) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (k, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let simple = !cs.contains(' ');
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(m) if simple => (true, m.to_string()),
                _ => (false, cs.clone()),
            };
            if n > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let label = basis.label(*k);
            if mag == "1" {
                out.push_str(&label.to_string());
            } else if simple {
                out.push_str(&format!("{mag}*{label}"));
            } else {
                out.push_str(&format!("({mag})*{label}"));
            }
        }
        out
    }
}

impl Element<Rational> {
    pub fn from_sparse(v: Vec<(usize, Rational)>) -> Self {
        Element::from_terms(v)
    }

    /// The underlying sparse vector (terms are already sorted and nonzero).
    pub fn to_sparse(&self) -> Vec<(usize, Rational)> {
        self.terms.clone()
    }
}

impl<C: fmt::Debug> fmt::Debug for Element<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

/// Bilinear product on a graded basis given by its structure constants:
/// `product(i, j)` is the element `e_i · e_j`.
#[derive(Clone, Debug)]
pub struct GradedAlgebra<C = Rational> {
    basis: GradedBasis,
    table: Vec<Element<C>>,
}

impl<C: Coeff> GradedAlgebra<C> {
    /// Validates indices and parity closure `A_p A_q ⊆ A_{p+q}`.
    pub fn new(basis: GradedBasis, table: Vec<Element<C>>) -> Result<Self> {
        let d = basis.len();
        if table.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                got: table.len(),
            });
        }
        for i in 0..d {
            for j in 0..d {
                let e = &table[i * d + j];
                if let Some(k) = e.max_index() {
                    if k >= d {
                        return Err(Error::DimensionMismatch { expected: d, got: k + 1 });
                    }
                }
                let want = basis.parity(i) + basis.parity(j);
                if e.support().any(|k| basis.parity(k) != want) {
                    return Err(Error::ParityViolation { i, j });
                }
            }
        }
        Ok(GradedAlgebra { basis, table })
    }

    /// Builds the table from a closure over basis index pairs.
    pub fn from_fn(basis: GradedBasis, f: impl FnMut(usize, usize) -> Element<C>) -> Result<Self> {
        let d = basis.len();
        let mut f = f;
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                table.push(f(i, j));
            }
        }
        Self::new(basis, table)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn parity(&self, k: usize) -> Parity {
        self.basis.parity(k)
    }

    #[inline]
    pub fn product(&self, i: usize, j: usize) -> &Element<C> {
        &self.table[i * self.basis.len() + j]
    }

    /// Bilinear expansion of `x · y` over the structure constants.
    pub fn multiply(&self, x: &Element<C>, y: &Element<C>) -> Result<Element<C>> {
        let d = self.dim();
        for e in [x, y] {
            if let Some(k) = e.max_index() {
                if k >= d {
                    return Err(Error::DimensionMismatch { expected: d, got: k + 1 });
                }
            }
        }
        let mut acc = Vec::new();
        for (i, xi) in x.terms() {
            for (j, yj) in y.terms() {
                let p = self.product(*i, *j);
                if p.is_zero() {
                    continue;
                }
                let c = xi.try_mul(yj)?;
                for (k, ck) in p.terms() {
                    acc.push((*k, c.try_mul(ck)?));
                }
            }
        }
        Ok(Element::from_terms(acc))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> GradedAlgebra<D> {
        GradedAlgebra {
            basis: self.basis.clone(),
            table: self.table.iter().map(|e| e.map_coeffs(&f)).collect(),
        }
    }

    /// Same algebra with the product of `(i, j)` replaced; parity closure is
    /// re-checked for the new entry.
    pub fn with_product(mut self, i: usize, j: usize, e: Element<C>) -> Result<Self> {
        let want = self.parity(i) + self.parity(j);
        if e.support().any(|k| k >= self.dim() || self.parity(k) != want) {
            return Err(Error::ParityViolation { i, j });
        }
        let d = self.dim();
        self.table[i * d + j] = e;
        Ok(self)
    }

    pub fn structurally_equal(&self, other: &Self) -> bool {
        self.basis == other.basis && self.table == other.table
    }
}
