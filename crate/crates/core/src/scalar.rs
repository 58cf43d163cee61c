//! Exact rationals and affine forms over named unknowns.
//!
//! [`Rational`] is the coefficient field for every numeric computation in the
//! crate. [`AffineForm`] is the coefficient ring of the symbolic extensions:
//! a rational constant plus a rational combination of [`Unknown`]s. Affine
//! forms can only be multiplied when at least one side is a pure constant;
//! anything else is reported as a [`QuadraticTermError`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rational(BigRational::new(num, den))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn half() -> Self {
        Rational::new(1, 2)
    }

    /// `(-1)^k` for a parity exponent.
    pub fn sign(odd: bool) -> Self {
        if odd {
            Rational::from_integer(-1)
        } else {
            Rational::one()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse rational from {0:?}")]
pub struct ParseRationalError(String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = den.parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RationalRepr {
            num: self.0.numer().to_string(),
            den: self.0.denom().to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = RationalRepr::deserialize(deserializer)?;
        let num: BigInt = repr.num.parse().map_err(serde::de::Error::custom)?;
        let den: BigInt = repr.den.parse().map_err(serde::de::Error::custom)?;
        if den.is_zero() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

/// Family of an unknown scalar in a parametrized lift.
///
/// `Eta`, `Alpha` label corrections of products `u·h`; `Gamma`, `Beta`
/// corrections of `u·s`; `Lambda*` corrections of `h·s`. `LambdaG` and
/// `LambdaZ` are the `h·s` corrections landing on `g`/`y` and `z`/`x` labels in
/// the opposite-module cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum UnknownFamily {
    Eta,
    Alpha,
    Gamma,
    Beta,
    Lambda,
    LambdaG,
    LambdaZ,
    Xi,
    Theta,
}

impl UnknownFamily {
    pub fn symbol(self) -> &'static str {
        match self {
            UnknownFamily::Eta => "eta",
            UnknownFamily::Alpha => "alpha",
            UnknownFamily::Gamma => "gamma",
            UnknownFamily::Beta => "beta",
            UnknownFamily::Lambda => "Lambda",
            UnknownFamily::LambdaG => "LambdaG",
            UnknownFamily::LambdaZ => "LambdaZ",
            UnknownFamily::Xi => "xi",
            UnknownFamily::Theta => "theta",
        }
    }
}

/// Short index tuple (up to four 1-based indices).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Indices {
    len: u8,
    ix: [u8; 4],
}

impl Indices {
    pub fn new(ix: &[u8]) -> Self {
        assert!(ix.len() <= 4, "at most four indices");
        let mut out = Indices {
            len: ix.len() as u8,
            ix: [0; 4],
        };
        out.ix[..ix.len()].copy_from_slice(ix);
        out
    }

    pub fn empty() -> Self {
        Indices::default()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.ix[..self.len as usize]
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

impl fmt::Debug for Indices {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_slice())
    }
}

fn write_indices(f: &mut fmt::Formatter<'_>, ix: &[u8]) -> fmt::Result {
    if ix.iter().all(|&i| i < 10) {
        for i in ix {
            write!(f, "{i}")?;
        }
        Ok(())
    } else {
        write!(f, "{{")?;
        for (k, i) in ix.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Structured name of an unknown scalar: family, subscript and superscript
/// index tuples. `η_iji` and `η_ij` never collide because the tuples differ
/// in length.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unknown {
    pub family: UnknownFamily,
    pub sub: Indices,
    pub sup: Indices,
}

impl Unknown {
    pub fn new(family: UnknownFamily, sub: &[u8]) -> Self {
        Unknown {
            family,
            sub: Indices::new(sub),
            sup: Indices::empty(),
        }
    }

    pub fn with_sup(family: UnknownFamily, sub: &[u8], sup: &[u8]) -> Self {
        Unknown {
            family,
            sub: Indices::new(sub),
            sup: Indices::new(sup),
        }
    }
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family.symbol())?;
        if !self.sup.is_empty() {
            write!(f, "^")?;
            write_indices(f, self.sup.as_slice())?;
        }
        if !self.sub.is_empty() {
            write!(f, "_")?;
            write_indices(f, self.sub.as_slice())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Unknown {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Two affine forms that both carry unknowns were multiplied.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("quadratic term: ({left}) * ({right}) would leave the affine setting")]
pub struct QuadraticTermError {
    pub left: String,
    pub right: String,
}

/// `constant + Σ coef·unknown`, kept canonical (no zero coefficients).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AffineForm {
    constant: Rational,
    terms: BTreeMap<Unknown, Rational>,
}

impl AffineForm {
    pub fn constant(c: Rational) -> Self {
        AffineForm {
            constant: c,
            terms: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        AffineForm::default()
    }

    pub fn unknown(u: Unknown) -> Self {
        Self::term(Rational::one(), u)
    }

    pub fn term(coef: Rational, u: Unknown) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(u, coef);
        }
        AffineForm {
            constant: Rational::zero(),
            terms,
        }
    }

    pub fn constant_part(&self) -> &Rational {
        &self.constant
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Unknown, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, u: &Unknown) -> Rational {
        self.terms.get(u).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<&Rational> {
        self.is_constant().then_some(&self.constant)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    pub fn unknowns(&self) -> impl Iterator<Item = &Unknown> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, coef: &Rational, u: Unknown) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(u).or_insert_with(Rational::zero);
        *entry += coef;
        if entry.is_zero() {
            self.terms.remove(&u);
        }
    }

    pub fn add_assign_form(&mut self, other: &AffineForm) {
        self.constant += &other.constant;
        for (u, c) in &other.terms {
            self.add_term(c, *u);
        }
    }

    pub fn scale(&self, r: &Rational) -> AffineForm {
        if r.is_zero() {
            return AffineForm::zero();
        }
        AffineForm {
            constant: &self.constant * r,
            terms: self.terms.iter().map(|(u, c)| (*u, c * r)).collect(),
        }
    }

    /// Coefficient-wise exact sum.
    pub fn affine_add(&self, other: &AffineForm) -> AffineForm {
        let mut out = self.clone();
        out.add_assign_form(other);
        out
    }

    /// Product of two forms, defined only when one of them is a constant.
    pub fn affine_mul(&self, other: &AffineForm) -> Result<AffineForm, QuadraticTermError> {
        if let Some(c) = self.as_constant() {
            Ok(other.scale(c))
        } else if let Some(c) = other.as_constant() {
            Ok(self.scale(c))
        } else {
            Err(QuadraticTermError {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    /// Replace unknowns by affine forms; unknowns absent from `values` stay.
    pub fn substitute(&self, values: &BTreeMap<Unknown, AffineForm>) -> AffineForm {
        let mut out = AffineForm::constant(self.constant.clone());
        for (u, c) in &self.terms {
            match values.get(u) {
                Some(v) => out.add_assign_form(&v.scale(c)),
                None => out.add_term(c, *u),
            }
        }
        out
    }

    /// Evaluate with every unknown looked up in `values` (missing ones are 0).
    pub fn evaluate(&self, values: &BTreeMap<Unknown, Rational>) -> Rational {
        let mut out = self.constant.clone();
        for (u, c) in &self.terms {
            if let Some(v) = values.get(u) {
                out += &(c * v);
            }
        }
        out
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.constant.is_zero() || self.terms.is_empty() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (u, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if mag.is_one() {
                write!(f, "{u}")?;
            } else {
                write!(f, "{mag}*{u}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Rational> for AffineForm {
    fn from(c: Rational) -> Self {
        AffineForm::constant(c)
    }
}

/// Coefficient domain of elements and structure constants.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: Rational) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn neg_ref(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn try_mul(&self, other: &Self) -> Result<Self, QuadraticTermError>;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn try_mul(&self, other: &Self) -> Result<Self, QuadraticTermError> {
        Ok(self * other)
    }
}

impl Coeff for AffineForm {
    fn zero() -> Self {
        AffineForm::zero()
    }
    fn is_zero(&self) -> bool {
        AffineForm::is_zero(self)
    }
    fn from_rational(r: Rational) -> Self {
        AffineForm::constant(r)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.add_assign_form(other);
    }
    fn neg_ref(&self) -> Self {
        self.scale(&Rational::from_integer(-1))
    }
    fn scale(&self, r: &Rational) -> Self {
        AffineForm::scale(self, r)
    }
    fn try_mul(&self, other: &Self) -> Result<Self, QuadraticTermError> {
        self.affine_mul(other)
    }
}
