//! Sparse Laurent polynomials with exact rational coefficients.
//!
//! [`BivarLaurent`] lives in `Q[z^±1, t^±1]` and carries every link
//! polynomial in this crate; [`UnivarLaurentT`] lives in `Q[t^±1]` and carries
//! the coefficient polynomials of a fixed power of `z`.
//!
//! Terms are kept in a `BTreeMap` keyed by exponents, so enumeration order is
//! canonical (ascending `z` exponent, then ascending `t` exponent) and two
//! polynomials are equal iff their nonzero term sets are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible: no Laurent polynomial quotient exists")]
    NotDivisible,
    #[error("pole at zero: {var} = 0 substituted into a negative power of {var}")]
    PoleAtZero { var: char },
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn rat_pow(base: &Rational, exp: i32) -> Rational {
    num_traits::Pow::pow(base, exp)
}

fn insert_term<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Bivariate
// ---------------------------------------------------------------------------

/// An element of `Q[z^±1, t^±1]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivarLaurent {
    terms: BTreeMap<(i32, i32), Rational>,
}

impl BivarLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, e_z: i32, e_t: i32) -> Self {
        let mut terms = BTreeMap::new();
        insert_term(&mut terms, (e_z, e_t), c);
        Self { terms }
    }

    pub fn z() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// `t - t^-1`, the framed value of the unknot.
    pub fn t_minus_t_inv() -> Self {
        Self::from_terms([((0, 1), rat(1)), ((0, -1), rat(-1))])
    }

    /// Builds a polynomial from `((e_z, e_t), coefficient)` pairs, summing
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((i32, i32), Rational)>,
    {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            insert_term(&mut map, k, c);
        }
        Self { terms: map }
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(terms: &[(i32, i32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(z, t, c)| ((z, t), rat(c))))
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e_z: i32, e_t: i32) -> Rational {
        self.terms
            .get(&(e_z, e_t))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by `z^e_z t^e_t`.
    pub fn mul_monomial(&self, e_z: i32, e_t: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(z, t), v)| ((z + e_z, t + e_t), v.clone()))
                .collect(),
        }
    }

    /// The coefficient of `z^k`, as a polynomial in `t`.
    pub fn coeff_of_z(&self, k: i32) -> UnivarLaurentT {
        UnivarLaurentT {
            terms: self
                .terms
                .range((k, i32::MIN)..=(k, i32::MAX))
                .map(|(&(_, t), c)| (t, c.clone()))
                .collect(),
        }
    }

    /// Distinct `z` exponents with a nonzero coefficient, ascending.
    pub fn z_exponents(&self) -> Vec<i32> {
        let mut out: Vec<i32> = self.terms.keys().map(|&(z, _)| z).collect();
        out.dedup();
        out
    }

    pub fn min_z_degree(&self) -> Option<i32> {
        self.terms.keys().next().map(|&(z, _)| z)
    }

    pub fn max_z_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().map(|&(z, _)| z)
    }

    pub fn min_t_degree(&self) -> Option<i32> {
        self.terms.keys().map(|&(_, t)| t).min()
    }

    pub fn max_t_degree(&self) -> Option<i32> {
        self.terms.keys().map(|&(_, t)| t).max()
    }

    /// True iff the polynomial lies in `Q[z^2, t^±1]`.
    pub fn is_even_nonneg_in_z(&self) -> bool {
        self.terms.keys().all(|&(z, _)| z >= 0 && z % 2 == 0)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Keeps only the terms whose `z` exponent satisfies `keep`.
    pub fn filter_z(&self, mut keep: impl FnMut(i32) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(&(z, _), _)| keep(z))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, z0: &Rational, t0: &Rational) -> Result<Rational, LaurentError> {
        let mut acc = Rational::zero();
        for (&(ez, et), c) in &self.terms {
            if ez < 0 && z0.is_zero() {
                return Err(LaurentError::PoleAtZero { var: 'z' });
            }
            if et < 0 && t0.is_zero() {
                return Err(LaurentError::PoleAtZero { var: 't' });
            }
            acc += c * rat_pow(z0, ez) * rat_pow(t0, et);
        }
        Ok(acc)
    }

    /// `self += c * z^dz t^dt * other`
    fn add_scaled_shifted(&mut self, other: &Self, c: &Rational, dz: i32, dt: i32) {
        for (&(z, t), v) in &other.terms {
            insert_term(&mut self.terms, (z + dz, t + dt), v * c);
        }
    }

    fn leading(&self) -> Option<((i32, i32), &Rational)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    /// Exact quotient `self / d` in the Laurent ring.
    ///
    /// Runs lexicographic long division; any quotient term outside the
    /// exponent box forced by the extreme degrees of `self` and `d` proves
    /// that no quotient exists.
    pub fn divide_exact(&self, d: &Self) -> Result<Self, LaurentError> {
        if d.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (Some(az0), Some(az1), Some(dz0), Some(dz1)) = (
            self.min_z_degree(),
            self.max_z_degree(),
            d.min_z_degree(),
            d.max_z_degree(),
        ) else {
            unreachable!()
        };
        let (Some(at0), Some(at1), Some(dt0), Some(dt1)) = (
            self.min_t_degree(),
            self.max_t_degree(),
            d.min_t_degree(),
            d.max_t_degree(),
        ) else {
            unreachable!()
        };
        let z_box = (az0 - dz0)..=(az1 - dz1);
        let t_box = (at0 - dt0)..=(at1 - dt1);

        let ((lz, lt), lc) = d.leading().unwrap();
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(((rz, rt), rc)) = rem.leading() {
            let (mz, mt) = (rz - lz, rt - lt);
            if !z_box.contains(&mz) || !t_box.contains(&mt) {
                return Err(LaurentError::NotDivisible);
            }
            let c = rc / &lc;
            insert_term(&mut quot.terms, (mz, mt), c.clone());
            rem.add_scaled_shifted(d, &-c, mz, mt);
        }
        Ok(quot)
    }

    /// `[[e_z, e_t, numerator, denominator], ...]` in canonical order.
    pub fn to_quadruples(&self) -> Vec<(i32, i32, BigInt, BigInt)> {
        self.terms
            .iter()
            .map(|(&(z, t), c)| (z, t, c.numer().clone(), c.denom().clone()))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serialization is infallible")
    }
}

impl fmt::Debug for BivarLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarLaurent({self})")
    }
}

impl fmt::Display for BivarLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let groups = self.z_exponents();
        let several = groups.len() > 1;
        for (i, &k) in groups.iter().enumerate() {
            let g = self.coeff_of_z(k);
            let zpart = power("z", k);
            let single = g.term_count() == 1;
            let negative_single = single && g.terms.values().next().unwrap().is_negative();
            let body = if negative_single {
                -g.clone()
            } else {
                g.clone()
            };
            if i > 0 {
                f.write_str(if negative_single { " - " } else { " + " })?;
            } else if negative_single {
                f.write_str("-")?;
            }
            let gtext = body.to_string();
            match (zpart.is_empty(), single) {
                (true, true) => f.write_str(&gtext)?,
                (true, false) if several => write!(f, "({gtext})")?,
                (true, false) => f.write_str(&gtext)?,
                (false, _) if gtext == "1" => f.write_str(&zpart)?,
                (false, true) => write!(f, "{gtext}*{zpart}")?,
                (false, false) => write!(f, "({gtext})*{zpart}")?,
            }
        }
        Ok(())
    }
}

fn power(var: &str, e: i32) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

fn write_signed_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i32, &'a Rational)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let v = power(var, e);
        if v.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            f.write_str(&v)?;
        } else {
            write!(f, "{mag}*{v}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

macro_rules! forward_binops {
    ($ty:ty) => {
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
        impl<'a> Add<&'a $ty> for $ty {
            type Output = $ty;
            fn add(mut self, rhs: &'a $ty) -> $ty {
                self += rhs;
                self
            }
        }
        impl<'a> Sub<&'a $ty> for $ty {
            type Output = $ty;
            fn sub(mut self, rhs: &'a $ty) -> $ty {
                self -= rhs;
                self
            }
        }
        impl<'a> Mul<&'a $ty> for $ty {
            type Output = $ty;
            fn mul(self, rhs: &'a $ty) -> $ty {
                &self * rhs
            }
        }
        impl<'a> Add for &'a $ty {
            type Output = $ty;
            fn add(self, rhs: &'a $ty) -> $ty {
                let mut out = self.clone();
                out += rhs;
                out
            }
        }
        impl<'a> Sub for &'a $ty {
            type Output = $ty;
            fn sub(self, rhs: &'a $ty) -> $ty {
                let mut out = self.clone();
                out -= rhs;
                out
            }
        }
        impl AddAssign<&$ty> for $ty {
            fn add_assign(&mut self, rhs: &$ty) {
                for (k, c) in &rhs.terms {
                    insert_term(&mut self.terms, *k, c.clone());
                }
            }
        }
        impl SubAssign<&$ty> for $ty {
            fn sub_assign(&mut self, rhs: &$ty) {
                for (k, c) in &rhs.terms {
                    insert_term(&mut self.terms, *k, -c.clone());
                }
            }
        }
        impl AddAssign for $ty {
            fn add_assign(&mut self, rhs: $ty) {
                *self += &rhs;
            }
        }
        impl SubAssign for $ty {
            fn sub_assign(&mut self, rhs: $ty) {
                *self -= &rhs;
            }
        }
        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                Self {
                    terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
                }
            }
        }
        impl<'a> Neg for &'a $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -self.clone()
            }
        }
        impl std::iter::Sum for $ty {
            fn sum<I: Iterator<Item = $ty>>(iter: I) -> $ty {
                iter.fold(<$ty>::zero(), |acc, x| acc + &x)
            }
        }
        impl std::iter::Product for $ty {
            fn product<I: Iterator<Item = $ty>>(iter: I) -> $ty {
                iter.fold(<$ty>::one(), |acc, x| &acc * &x)
            }
        }
    };
}

forward_binops!(BivarLaurent);
forward_binops!(UnivarLaurentT);

impl<'a> Mul for &'a BivarLaurent {
    type Output = BivarLaurent;
    fn mul(self, rhs: &'a BivarLaurent) -> BivarLaurent {
        let mut out = BivarLaurent::zero();
        for (&(z, t), c) in &self.terms {
            out.add_scaled_shifted(rhs, c, z, t);
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn from_big(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => IntRepr::Small(v),
            None => IntRepr::Big(n.to_string()),
        }
    }

    fn to_big<E: serde::de::Error>(&self) -> Result<BigInt, E> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(*v)),
            IntRepr::Big(s) => s
                .parse()
                .map_err(|_| E::custom(format!("invalid integer {s:?}"))),
        }
    }
}

fn make_rational<E: serde::de::Error>(n: &IntRepr, d: &IntRepr) -> Result<Rational, E> {
    let d = d.to_big::<E>()?;
    if d.is_zero() {
        return Err(E::custom("zero denominator"));
    }
    Ok(Rational::new(n.to_big::<E>()?, d))
}

impl Serialize for BivarLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let quads: Vec<(i32, i32, IntRepr, IntRepr)> = self
            .terms
            .iter()
            .map(|(&(z, t), c)| {
                (
                    z,
                    t,
                    IntRepr::from_big(c.numer()),
                    IntRepr::from_big(c.denom()),
                )
            })
            .collect();
        quads.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BivarLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let quads = Vec::<(i32, i32, IntRepr, IntRepr)>::deserialize(d)?;
        let mut terms = Vec::with_capacity(quads.len());
        for (z, t, n, den) in &quads {
            terms.push(((*z, *t), make_rational::<D::Error>(n, den)?));
        }
        Ok(Self::from_terms(terms))
    }
}

// ---------------------------------------------------------------------------
// Univariate in t
// ---------------------------------------------------------------------------

/// An element of `Q[t^±1]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UnivarLaurentT {
    terms: BTreeMap<i32, Rational>,
}

impl UnivarLaurentT {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, e_t: i32) -> Self {
        let mut terms = BTreeMap::new();
        insert_term(&mut terms, e_t, c);
        Self { terms }
    }

    pub fn t_minus_t_inv() -> Self {
        Self::from_int_terms(&[(1, 1), (-1, -1)])
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, Rational)>,
    {
        let mut map = BTreeMap::new();
        for (k, c) in terms {
            insert_term(&mut map, k, c);
        }
        Self { terms: map }
    }

    /// `(e_t, coefficient)` pairs with integer coefficients.
    pub fn from_int_terms(terms: &[(i32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(t, c)| (t, rat(c))))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e_t: i32) -> Rational {
        self.terms.get(&e_t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn mul_t_power(&self, e_t: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k + e_t, v.clone()))
                .collect(),
        }
    }

    /// Substitutes `t -> t^-1`.
    pub fn invert_t(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (-k, v.clone())).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Embeds as the coefficient of `z^e_z`.
    pub fn lift(&self, e_z: i32) -> BivarLaurent {
        BivarLaurent::from_terms(self.terms.iter().map(|(&t, c)| ((e_z, t), c.clone())))
    }

    pub fn divide_exact(&self, d: &Self) -> Result<Self, LaurentError> {
        self.lift(0)
            .divide_exact(&d.lift(0))
            .map(|q| q.coeff_of_z(0))
    }

    pub fn eval(&self, t0: &Rational) -> Result<Rational, LaurentError> {
        self.lift(0).eval(&Rational::one(), t0)
    }
}

impl<'a> Mul for &'a UnivarLaurentT {
    type Output = UnivarLaurentT;
    fn mul(self, rhs: &'a UnivarLaurentT) -> UnivarLaurentT {
        let mut out = UnivarLaurentT::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                insert_term(&mut out.terms, a + b, ca * cb);
            }
        }
        out
    }
}

impl fmt::Debug for UnivarLaurentT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnivarLaurentT({self})")
    }
}

/// Highest power of `t` first.
impl fmt::Display for UnivarLaurentT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(f, self.terms.iter().rev().map(|(k, c)| (*k, c)), "t")
    }
}

impl Serialize for UnivarLaurentT {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let triples: Vec<(i32, IntRepr, IntRepr)> = self
            .terms
            .iter()
            .map(|(&t, c)| {
                (
                    t,
                    IntRepr::from_big(c.numer()),
                    IntRepr::from_big(c.denom()),
                )
            })
            .collect();
        triples.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnivarLaurentT {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let triples = Vec::<(i32, IntRepr, IntRepr)>::deserialize(d)?;
        let mut terms = Vec::with_capacity(triples.len());
        for (t, n, den) in &triples {
            terms.push((*t, make_rational::<D::Error>(n, den)?));
        }
        if terms.iter().any(|(_, c)| c.is_zero()) {
            return Err(D::Error::custom(
                "zero coefficient in serialized polynomial",
            ));
        }
        Ok(Self::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tt() -> BivarLaurent {
        BivarLaurent::t_minus_t_inv()
    }

    #[test]
    fn add_examples() {
        let t = BivarLaurent::t();
        assert!((&t + &(-&t)).is_zero());
        let lhs = tt() + BivarLaurent::from_int_terms(&[(0, -1, 1)]);
        assert_eq!(lhs, t);
    }

    #[test]
    fn mul_examples() {
        let plus = BivarLaurent::from_int_terms(&[(0, 1, 1), (0, -1, 1)]);
        assert_eq!(
            &tt() * &plus,
            BivarLaurent::from_int_terms(&[(0, 2, 1), (0, -2, -1)])
        );
        assert_eq!(&tt() * &BivarLaurent::one(), tt());
        assert_eq!(
            tt().pow(2),
            BivarLaurent::from_int_terms(&[(0, 2, 1), (0, 0, -2), (0, -2, 1)])
        );
    }

    #[test]
    fn scale_examples() {
        let half = tt().scale(&ratio(-1, 2));
        assert_eq!(
            half,
            BivarLaurent::from_terms([((0, 1), ratio(-1, 2)), ((0, -1), ratio(1, 2))])
        );
        assert!(tt().scale(&rat(0)).is_zero());
        assert_eq!(tt().scale(&rat(1)), tt());
    }

    #[test]
    fn mul_monomial_examples() {
        let h_unknot = tt().mul_monomial(-1, 0);
        assert_eq!(
            h_unknot,
            BivarLaurent::from_int_terms(&[(-1, 1, 1), (-1, -1, -1)])
        );
        assert_eq!(tt().mul_monomial(0, 0), tt());
        assert_eq!(
            BivarLaurent::one().mul_monomial(2, 0),
            BivarLaurent::from_int_terms(&[(2, 0, 1)])
        );
    }

    #[test]
    fn coeff_of_z_examples() {
        assert_eq!(tt().coeff_of_z(0), UnivarLaurentT::t_minus_t_inv());
        assert!(tt().coeff_of_z(2).is_zero());
        let hopf = tt().pow(2) + (&BivarLaurent::t() * &tt()).mul_monomial(2, 0);
        assert_eq!(
            hopf.coeff_of_z(2),
            UnivarLaurentT::from_int_terms(&[(2, 1), (0, -1)])
        );
    }

    #[test]
    fn divide_exact_examples() {
        let a = UnivarLaurentT::from_int_terms(&[(2, 1), (-2, -1)]);
        let d = UnivarLaurentT::t_minus_t_inv();
        assert_eq!(
            a.divide_exact(&d).unwrap(),
            UnivarLaurentT::from_int_terms(&[(1, 1), (-1, 1)])
        );
        assert_eq!(d.divide_exact(&d).unwrap(), UnivarLaurentT::one());
        let t = UnivarLaurentT::from_int_terms(&[(1, 1)]);
        assert_eq!(t.divide_exact(&d), Err(LaurentError::NotDivisible));
        assert_eq!(
            t.divide_exact(&UnivarLaurentT::zero()),
            Err(LaurentError::DivisionByZero)
        );
    }

    #[test]
    fn divide_exact_bivariate() {
        let d = BivarLaurent::from_int_terms(&[(0, 1, 1), (2, -1, 3), (-1, 0, 2)]);
        let q = BivarLaurent::from_int_terms(&[(1, 1, 5), (0, -3, -1)]);
        assert_eq!((&q * &d).divide_exact(&d).unwrap(), q);
        let not = &q * &d + BivarLaurent::t();
        assert_eq!(not.divide_exact(&d), Err(LaurentError::NotDivisible));
    }

    #[test]
    fn min_z_degree_examples() {
        let p = tt().pow(2).mul_monomial(-2, 0) + BivarLaurent::t();
        assert_eq!(p.min_z_degree(), Some(-2));
        assert_eq!(BivarLaurent::zero().min_z_degree(), None);
    }

    #[test]
    fn even_nonneg_examples() {
        assert!(tt().is_even_nonneg_in_z());
        assert!(!BivarLaurent::from_int_terms(&[(1, 1, 1)]).is_even_nonneg_in_z());
        assert!(!BivarLaurent::from_int_terms(&[(-2, 1, 1)]).is_even_nonneg_in_z());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(tt().eval(&rat(1), &rat(2)).unwrap(), ratio(3, 2));
        let z2 = BivarLaurent::from_int_terms(&[(2, 0, 1)]);
        assert_eq!(z2.eval(&rat(3), &rat(1)).unwrap(), rat(9));
        let zinv = BivarLaurent::from_int_terms(&[(-1, 0, 1)]);
        assert_eq!(
            zinv.eval(&rat(0), &rat(1)),
            Err(LaurentError::PoleAtZero { var: 'z' })
        );
    }

    #[test]
    fn display_forms() {
        let trefoil = BivarLaurent::from_int_terms(&[
            (0, 2, 2),
            (0, 0, -3),
            (0, -2, 1),
            (2, 2, 1),
            (2, 0, -1),
        ]);
        assert_eq!(trefoil.to_string(), "(2*t^2 - 3 + t^-2) + (t^2 - 1)*z^2");
        assert_eq!(tt().to_string(), "t - t^-1");
        assert_eq!(BivarLaurent::zero().to_string(), "0");
        let p = BivarLaurent::from_terms([((-1, -1), ratio(-1, 2)), ((1, 0), rat(1))]);
        assert_eq!(p.to_string(), "-1/2*t^-1*z^-1 + z");
    }

    #[test]
    fn json_quadruples() {
        let p = BivarLaurent::from_terms([((2, 1), ratio(-3, 4)), ((0, -1), rat(5))]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, "[[0,-1,5,1],[2,1,-3,4]]");
        let back: BivarLaurent = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        let big = BivarLaurent::constant(Rational::from_integer(BigInt::from(10).pow(30)));
        let text = serde_json::to_string(&big).unwrap();
        assert_eq!(text, "[[0,0,\"1000000000000000000000000000000\",1]]");
        assert_eq!(serde_json::from_str::<BivarLaurent>(&text).unwrap(), big);
    }

    fn small_poly() -> impl Strategy<Value = BivarLaurent> {
        prop::collection::vec(((-3i32..=3, -3i32..=3), -5i64..=5, 1i64..=3), 0..6)
            .prop_map(|v| BivarLaurent::from_terms(v.into_iter().map(|(k, n, d)| (k, ratio(n, d)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn divide_exact_inverts_mul(a in small_poly(), d in small_poly()) {
            prop_assume!(!d.is_zero());
            prop_assert_eq!((&a * &d).divide_exact(&d).unwrap(), a);
        }

        #[test]
        fn coeff_of_z_reconstructs(a in small_poly()) {
            let rebuilt: BivarLaurent = a.z_exponents().into_iter()
                .map(|k| a.coeff_of_z(k).lift(k))
                .sum();
            prop_assert_eq!(rebuilt, a);
        }

        #[test]
        fn serialization_is_injective(a in small_poly(), b in small_poly()) {
            let (sa, sb) = (serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
            prop_assert_eq!(sa == sb, a == b);
            prop_assert_eq!(serde_json::from_str::<BivarLaurent>(&sa).unwrap(), a);
        }
    }
}
