use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders `p` for integers and `p/q` otherwise.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Dense vector of reduced rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RationalVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        RationalVector(vec![Rational::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RationalVector(xs.iter().map(|&x| rat(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        let mut acc = Rational::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Rational, other: &RationalVector) -> RationalVector {
        RationalVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + c * b)
                .collect(),
        )
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.0[i].is_zero()).collect()
    }

    pub fn signs(&self) -> Vec<i8> {
        self.0
            .iter()
            .map(|x| {
                if x.is_positive() {
                    1
                } else if x.is_negative() {
                    -1
                } else {
                    0
                }
            })
            .collect()
    }

    /// Returns `r` with `self = r * other`, if such `r` exists and `other` is nonzero.
    pub fn ratio_to(&self, other: &RationalVector) -> Option<Rational> {
        let pivot = other.0.iter().position(|x| !x.is_zero())?;
        let r = &self.0[pivot] / &other.0[pivot];
        if self.0.iter().zip(&other.0).all(|(a, b)| *a == &r * b) {
            Some(r)
        } else {
            None
        }
    }

    /// True iff both vectors are nonzero and one is a positive multiple of the other.
    pub fn same_ray(&self, other: &RationalVector) -> bool {
        matches!(self.ratio_to(other), Some(r) if r.is_positive())
    }

    /// The positive multiple with coprime integer entries; zero stays zero.
    pub fn primitive(&self) -> RationalVector {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for x in &self.0 {
            lcm = lcm.lcm(x.denom());
        }
        let ints: Vec<BigInt> = self.0.iter().map(|x| (x * &lcm).to_integer()).collect();
        let mut g = BigInt::zero();
        for x in &ints {
            g = g.gcd(x);
        }
        RationalVector(
            ints.into_iter()
                .map(|x| Rational::from_integer(x / &g))
                .collect(),
        )
    }

    /// Entries as `i64` when all are integers that fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|x| {
                if x.is_integer() {
                    x.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn max_abs(&self) -> Rational {
        self.0
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl From<Vec<Rational>> for RationalVector {
    fn from(v: Vec<Rational>) -> Self {
        RationalVector(v)
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for RationalVector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Neg for RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        -&self
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", fmt_rational(x))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `[p/q, p, ...]`; brackets are optional.
pub fn parse_vector(s: &str) -> Option<RationalVector> {
    let s = s.trim();
    let s = s.strip_prefix('[').unwrap_or(s);
    let s = s.strip_suffix(']').unwrap_or(s);
    if s.trim().is_empty() {
        return Some(RationalVector::new(Vec::new()));
    }
    s.split(',')
        .map(parse_rational)
        .collect::<Option<Vec<_>>>()
        .map(RationalVector)
}

/// Column-major rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    nrows: usize,
    cols: Vec<RationalVector>,
}

impl RationalMatrix {
    pub fn from_columns(nrows: usize, cols: Vec<RationalVector>) -> Self {
        assert!(
            cols.iter().all(|c| c.dim() == nrows),
            "column dimension mismatch"
        );
        RationalMatrix { nrows, cols }
    }

    pub fn from_rows(rows: &[RationalVector]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.dim());
        let cols = (0..ncols)
            .map(|j| RationalVector(rows.iter().map(|r| r[j].clone()).collect()))
            .collect();
        RationalMatrix {
            nrows: rows.len(),
            cols,
        }
    }

    /// Integer matrix given row by row.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let rows: Vec<RationalVector> = rows.iter().map(|r| RationalVector::from_ints(r)).collect();
        Self::from_rows(&rows)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[RationalVector] {
        &self.cols
    }

    pub fn column(&self, j: usize) -> &RationalVector {
        &self.cols[j]
    }

    pub fn row(&self, i: usize) -> RationalVector {
        RationalVector(self.cols.iter().map(|c| c[i].clone()).collect())
    }

    pub fn rows(&self) -> Vec<RationalVector> {
        (0..self.nrows).map(|i| self.row(i)).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.cols[j][i]
    }

    pub fn transpose(&self) -> RationalMatrix {
        RationalMatrix {
            nrows: self.ncols(),
            cols: self.rows(),
        }
    }

    pub fn mul_vec(&self, x: &RationalVector) -> RationalVector {
        assert_eq!(x.dim(), self.ncols());
        let mut out = RationalVector::zeros(self.nrows);
        for (c, xj) in self.cols.iter().zip(x.iter()) {
            if !xj.is_zero() {
                out = out.add_scaled(xj, c);
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> RationalMatrix {
        RationalMatrix {
            nrows: self.nrows,
            cols: idx.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }
}

/// JSON form of a single rational: a `"p"` or `"p/q"` string. Bare JSON integers are also read.
pub mod rational_json {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(q))
    }

    struct RationalVisitor;

    impl Visitor<'_> for RationalVisitor {
        type Value = Rational;

        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("a rational as \"p/q\" or an integer")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
            parse_rational(v).ok_or_else(|| E::custom(format!("invalid rational {v:?}")))
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
            Ok(super::rat(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
            Ok(Rational::from_integer(v.into()))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        d.deserialize_any(RationalVisitor)
    }

    pub mod option {
        use super::Rational;
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        #[derive(Serialize, Deserialize)]
        struct Wrap(#[serde(with = "super")] Rational);

        pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            q.clone().map(Wrap).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonRational(#[serde(with = "rational_json")] Rational);

impl Serialize for RationalVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|q| JsonRational(q.clone())))
    }
}

impl<'de> Deserialize<'de> for RationalVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(RationalVector(
            Vec::<JsonRational>::deserialize(d)?
                .into_iter()
                .map(|q| q.0)
                .collect(),
        ))
    }
}

/// Serialized as an array of column arrays.
impl Serialize for RationalMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.cols.serialize(s)
    }
}
