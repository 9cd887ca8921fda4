//! Exact scalars, half-integers, finite Laurent data and sparse linear algebra.
//!
//! Everything downstream is built on [`Scalar`] (exact rationals) and
//! [`LinComb`], a sparse formal linear combination over an ordered key type.
//! [`SpanBasis`] keeps a reduced row echelon basis of a subspace spanned by
//! such combinations and answers membership queries exactly.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseScalarError;

/// An exact rational number.
///
/// Values whose reduced numerator and denominator fit in `i64` are kept in
/// machine words; everything else falls back to arbitrary precision. The
/// representation is canonical, so derived equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, with positive denominator.
    Small(i64, i64),
    /// Reduced and never representable as `Small`.
    Big(BigRational),
}

fn gcd128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Scalar(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(Repr::Small(n, 1))
    }

    /// `num / den`. Panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let g = gcd128(num, den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Scalar(Repr::Small(n, d)),
            _ => Scalar(Repr::Big(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Scalar(Repr::Small(n, d)),
            _ => Scalar(Repr::Big(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn half_int(h: HalfInt) -> Self {
        Scalar::frac(h.twice(), 2)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(r) => Self::from_big(r.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Returns the value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    /// Returns the value as a [`HalfInt`] when it lies in ½ℤ.
    pub fn to_half_int(&self) -> Option<HalfInt> {
        (self * &Scalar::from_int(2)).to_i64().map(HalfInt::from_twice)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Parses `"p"`, `"-p"` or `"p/q"` with `q != 0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || ParseScalarError::Malformed(s.to_string());
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(ParseScalarError::ZeroDenominator(s.to_string()));
        }
        Ok(Scalar::from_big(BigRational::new(num, den)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

fn add_ref(x: &Scalar, y: &Scalar) -> Scalar {
    match (&x.0, &y.0) {
        (Repr::Small(a, b), Repr::Small(c, d)) => {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_add(*c) {
                    return Scalar::from_int(s);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            Scalar::from_i128(a * d + c * b, b * d)
        }
        _ => Scalar::from_big(x.to_big() + y.to_big()),
    }
}

fn mul_ref(x: &Scalar, y: &Scalar) -> Scalar {
    match (&x.0, &y.0) {
        (Repr::Small(a, b), Repr::Small(c, d)) => {
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    return Scalar::from_int(p);
                }
            }
            Scalar::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
        }
        _ => Scalar::from_big(x.to_big() * y.to_big()),
    }
}

fn neg_ref(x: &Scalar) -> Scalar {
    match &x.0 {
        Repr::Small(n, d) if *n != i64::MIN => Scalar(Repr::Small(-n, *d)),
        _ => Scalar::from_big(-x.to_big()),
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                $f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $f(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                $f(&self, rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, |x: &Scalar, y: &Scalar| add_ref(x, &neg_ref(y)));
forward_binop!(Mul, mul, mul_ref);
forward_binop!(Div, div, |x: &Scalar, y: &Scalar| {
    assert!(!y.is_zero(), "division by zero");
    mul_ref(x, &y.recip())
});

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg_ref(&self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg_ref(self)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = add_ref(self, rhs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = add_ref(self, &neg_ref(rhs));
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

/// An element of ½ℤ stored as its doubled integer value.
///
/// Fermion modes are `HalfInt`s with an odd doubled value; weights and
/// L(0)-degrees may be either parity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// True for elements of ℤ + ½.
    pub const fn is_half_odd(self) -> bool {
        self.0 % 2 != 0
    }

    pub fn to_scalar(self) -> Scalar {
        Scalar::half_int(self)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A sign label `±` on fermions, lattice exponentials and generators.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `+1` or `-1`.
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A finite formal linear combination of keys with exact coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, Scalar::one())
    }

    pub fn term(key: K, coeff: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(key, coeff);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn contains_key(&self, key: &K) -> bool {
        self.terms.contains_key(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn leading(&self) -> Option<(&K, &Scalar)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &LinComb<K>) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), c * v);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), c * v)).collect(),
        }
    }

    /// Applies a linear map given on keys.
    pub fn map_linear<L: Ord + Clone, F>(&self, mut f: F) -> LinComb<L>
    where
        F: FnMut(&K) -> LinComb<L>,
    {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(c, &f(k));
        }
        out
    }

    /// Fallible variant of [`LinComb::map_linear`].
    pub fn try_map_linear<L: Ord + Clone, E, F>(&self, mut f: F) -> Result<LinComb<L>, E>
    where
        F: FnMut(&K) -> Result<LinComb<L>, E>,
    {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(c, &f(k)?);
        }
        Ok(out)
    }

    /// Splits the vector by a key function.
    pub fn split_by<B: Ord, F: Fn(&K) -> B>(&self, f: F) -> BTreeMap<B, LinComb<K>> {
        let mut out: BTreeMap<B, LinComb<K>> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(f(k)).or_default().add_term(k.clone(), c.clone());
        }
        out
    }

    /// If `self == c * other` for some scalar `c`, returns `c`.
    pub fn ratio_to(&self, other: &LinComb<K>) -> Option<Scalar> {
        if other.is_zero() {
            return self.is_zero().then(Scalar::zero);
        }
        let (k, c) = other.leading()?;
        let ratio = &self.coeff(k) / c;
        (other.scaled(&ratio) == *self).then_some(ratio)
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut v = LinComb::zero();
        for (k, c) in iter {
            v.add_term(k, c);
        }
        v
    }
}

impl<K: Ord + Clone> Add for LinComb<K> {
    type Output = LinComb<K>;
    fn add(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self.add_scaled(&Scalar::one(), &rhs);
        self
    }
}

impl<K: Ord + Clone> Sub for LinComb<K> {
    type Output = LinComb<K>;
    fn sub(mut self, rhs: LinComb<K>) -> LinComb<K> {
        self.add_scaled(&-Scalar::one(), &rhs);
        self
    }
}

impl<K: Ord + Clone> Sub for &LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), rhs);
        out
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *c == Scalar::one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "({c})·{k}")?;
            }
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Laurent data `Σ_k c_k z^{-k-1}` with finite support.
///
/// The key is the mode index `k`, so `{0: λ}` is `λ/z`, `{1: 1}` is `z^{-2}` and
/// `{-1: c}` is the constant term.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct LaurentData {
    coeffs: BTreeMap<i64, Scalar>,
}

/// Which operation [`laurent_arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaurentOp {
    Add,
    Mul,
}

impl LaurentData {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · z^{-k-1}`.
    pub fn monomial(k: i64, c: Scalar) -> Self {
        Self::from_pairs([(k, c)])
    }

    /// `c / z`.
    pub fn simple_pole(c: Scalar) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, Scalar)>>(pairs: I) -> Self {
        let mut out = LaurentData::zero();
        for (k, c) in pairs {
            out.add_coeff(k, &c);
        }
        out
    }

    fn add_coeff(&mut self, k: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: i64) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn support_max(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `p = max(0, max{k : c_k ≠ 0})`, the pole order minus one.
    pub fn pole_index(&self) -> i64 {
        self.support_max().unwrap_or(0).max(0)
    }

    pub fn add(&self, other: &LaurentData) -> LaurentData {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_coeff(k, c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LaurentData {
        LaurentData::from_pairs(self.iter().map(|(k, v)| (k, c * v)))
    }

    /// Product of series; `z^{-a-1} z^{-b-1} = z^{-(a+b+1)-1}`.
    pub fn mul(&self, other: &LaurentData) -> LaurentData {
        let mut out = LaurentData::zero();
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                out.add_coeff(a + b + 1, &(x * y));
            }
        }
        out
    }

    /// Termwise d/dz: `z^{-k-1} ↦ (-k-1) z^{-k-2}`.
    pub fn derivative(&self) -> LaurentData {
        LaurentData::from_pairs(self.iter().map(|(k, c)| (k + 1, &Scalar::from_int(-k - 1) * c)))
    }
}

impl fmt::Display for LaurentData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})z^{}", -k - 1)?;
        }
        Ok(())
    }
}

/// `add(a, b)` or `mul(a, b)` on Laurent data.
pub fn laurent_arith(op: LaurentOp, a: &LaurentData, b: &LaurentData) -> LaurentData {
    match op {
        LaurentOp::Add => a.add(b),
        LaurentOp::Mul => a.mul(b),
    }
}

pub fn laurent_derivative(a: &LaurentData) -> LaurentData {
    a.derivative()
}

/// A subspace kept in reduced row echelon form.
///
/// The pivot of each row is its smallest key; rows are normalized at the
/// pivot and no row has a nonzero entry at another row's pivot. The form is
/// canonical, so two `SpanBasis` values are equal iff they span the same space.
#[derive(Clone, Debug)]
pub struct SpanBasis<K: Ord> {
    rows: BTreeMap<K, LinComb<K>>,
}

impl<K: Ord> Default for SpanBasis<K> {
    fn default() -> Self {
        SpanBasis { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> PartialEq for SpanBasis<K> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl<K: Ord + Clone> SpanBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &LinComb<K>> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Reduces `v` modulo the span. The result is zero iff `v` is a member.
    pub fn reduce(&self, v: &LinComb<K>) -> LinComb<K> {
        let mut out = v.clone();
        let hits: Vec<(K, Scalar)> = v
            .iter()
            .filter(|(k, _)| self.rows.contains_key(*k))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        for (k, c) in hits {
            out.add_scaled(&-c, &self.rows[&k]);
        }
        out
    }

    pub fn contains(&self, v: &LinComb<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns `true` when the dimension grew.
    pub fn insert(&mut self, v: &LinComb<K>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.leading() else {
            return false;
        };
        let pivot = pivot.clone();
        let row = r.scaled(&lead.recip());
        for other in self.rows.values_mut() {
            let c = other.coeff(&pivot);
            if !c.is_zero() {
                other.add_scaled(&-c, &row);
            }
        }
        self.rows.insert(pivot, row);
        true
    }

    /// Keys of `candidates` that are not in the span.
    pub fn missing<'a, I>(&self, candidates: I) -> Vec<K>
    where
        I: IntoIterator<Item = &'a K>,
        K: 'a,
    {
        candidates
            .into_iter()
            .filter(|k| !self.contains(&LinComb::basis((*k).clone())))
            .cloned()
            .collect()
    }
}

/// Row-reduces a list of vectors into a [`SpanBasis`].
pub fn rref_span<K: Ord + Clone>(vectors: &[LinComb<K>]) -> SpanBasis<K> {
    let mut basis = SpanBasis::new();
    for v in vectors {
        basis.insert(v);
    }
    basis
}

/// Partitions of `n` as weakly decreasing lists of positive parts, in
/// lexicographic order.
pub fn partitions(n: i64) -> Vec<Vec<i64>> {
    fn rec(n: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in 1..=max.min(n) {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// Binomial coefficient as an exact scalar; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Scalar {
    if k > n {
        return Scalar::zero();
    }
    let mut acc = Scalar::one();
    for i in 0..k {
        acc = &acc * &Scalar::frac((n - i) as i64, (i + 1) as i64);
    }
    acc
}

/// `n!` as an exact scalar.
pub fn factorial(n: u64) -> Scalar {
    (1..=n).fold(Scalar::one(), |acc, i| &acc * &Scalar::from_int(i as i64))
}
