//! Numerical classes on the blow-up of the plane at `r` points.
//!
//! A class is stored as `(d; m_1, ..., m_r)` and stands for `dL - sum m_i E_i`,
//! where `L` is the pull-back of a line and `E_i` are the exceptional curves.
//! With this convention `E_i` has `m_i = -1` and the canonical class is
//! `K = (-3; -1, ..., -1)`. The intersection form is `diag(1, -1, ..., -1)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A class `dL - sum m_i E_i` in the Picard lattice of rank `1 + r`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DivisorClass {
    d: BigInt,
    m: Vec<BigInt>,
}

impl DivisorClass {
    pub fn new(d: BigInt, m: Vec<BigInt>) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::InvalidArgument(
                "a class needs at least one multiplicity (r >= 1)".into(),
            ));
        }
        Ok(Self { d, m })
    }

    /// Convenience constructor from machine integers.
    ///
    /// # Panics
    ///
    /// Panics if `m` is empty.
    pub fn from_i64(d: i64, m: &[i64]) -> Self {
        Self::new(
            BigInt::from(d),
            m.iter().copied().map(BigInt::from).collect(),
        )
        .expect("at least one multiplicity")
    }

    pub fn zero(r: usize) -> Self {
        assert!(r >= 1, "r must be at least 1");
        Self {
            d: BigInt::zero(),
            m: vec![BigInt::zero(); r],
        }
    }

    /// The pull-back `L` of a line.
    pub fn line(r: usize) -> Self {
        let mut c = Self::zero(r);
        c.d = BigInt::one();
        c
    }

    /// The exceptional class `E_i`, with `i` in `1..=r`.
    pub fn exceptional(r: usize, i: usize) -> Result<Self> {
        if i == 0 || i > r {
            return Err(Error::InvalidArgument(format!(
                "exceptional index {i} outside 1..={r}"
            )));
        }
        let mut c = Self::zero(r);
        c.m[i - 1] = -BigInt::one();
        Ok(c)
    }

    /// The canonical class `K = -3L + sum E_i`.
    pub fn canonical(r: usize) -> Self {
        assert!(r >= 1, "r must be at least 1");
        Self {
            d: BigInt::from(-3),
            m: vec![-BigInt::one(); r],
        }
    }

    pub fn r(&self) -> usize {
        self.m.len()
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn m(&self) -> &[BigInt] {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        self.d.is_zero() && self.m.iter().all(Zero::is_zero)
    }

    /// Nonnegative gcd of all coordinates (zero for the zero class).
    pub fn content(&self) -> BigInt {
        self.m.iter().fold(self.d.abs(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn multiplicity_sum(&self) -> BigInt {
        self.m.iter().sum()
    }

    pub fn multiplicity_square_sum(&self) -> BigInt {
        self.m.iter().map(|x| x * x).sum()
    }

    /// Coordinates `(d, m_1, ..., m_r)` as one iterator.
    pub fn coords(&self) -> impl Iterator<Item = &BigInt> {
        std::iter::once(&self.d).chain(self.m.iter())
    }

    /// The class with multiplicities sorted in descending order; the
    /// representative of its orbit under coordinate permutations.
    pub fn sorted_descending(&self) -> Self {
        let mut m = self.m.clone();
        m.sort_unstable_by(|a, b| b.cmp(a));
        Self {
            d: self.d.clone(),
            m,
        }
    }

    fn check_same_r(&self, other: &Self) -> Result<()> {
        if self.r() == other.r() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.r(),
                right: other.r(),
            })
        }
    }
}

/// Catalog order: by `r`, then degree ascending, then multiplicities in
/// descending lexicographic order.
impl Ord for DivisorClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.r()
            .cmp(&other.r())
            .then_with(|| self.d.cmp(&other.d))
            .then_with(|| other.m.cmp(&self.m))
    }
}

impl PartialOrd for DivisorClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.d)?;
        for (i, x) in self.m.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for DivisorClass {
    type Err = Error;

    /// Parses `"d;m1,m2,...,mr"` with signed decimal integers.
    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: &str| Error::ParseClass {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (d, rest) = s
            .split_once(';')
            .ok_or_else(|| fail("expected \"d;m1,...,mr\""))?;
        let parse = |t: &str| -> Result<BigInt> {
            if t.is_empty() || t.trim() != t {
                return Err(fail("empty or padded coordinate"));
            }
            t.parse::<BigInt>()
                .map_err(|_| fail(&format!("{t:?} is not an integer")))
        };
        let d = parse(d)?;
        let m = rest.split(',').map(parse).collect::<Result<Vec<_>>>()?;
        DivisorClass::new(d, m)
    }
}

impl<'a> Add<&'a DivisorClass> for &'a DivisorClass {
    type Output = DivisorClass;

    /// # Panics
    ///
    /// Panics on mismatched `r`; use [`DivisorClass::checked_add`] otherwise.
    fn add(self, rhs: &'a DivisorClass) -> DivisorClass {
        self.checked_add(rhs).expect("classes over the same r")
    }
}

impl<'a> Sub<&'a DivisorClass> for &'a DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: &'a DivisorClass) -> DivisorClass {
        self + &(-rhs)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        DivisorClass {
            d: -&self.d,
            m: self.m.iter().map(|x| -x).collect(),
        }
    }
}

impl Mul<&DivisorClass> for &BigInt {
    type Output = DivisorClass;

    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass {
            d: self * &rhs.d,
            m: rhs.m.iter().map(|x| self * x).collect(),
        }
    }
}

impl DivisorClass {
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_r(other)?;
        Ok(Self {
            d: &self.d + &other.d,
            m: self.m.iter().zip(&other.m).map(|(a, b)| a + b).collect(),
        })
    }
}

/// The intersection pairing `d_a d_b - sum m_{a,i} m_{b,i}`.
pub fn pairing(a: &DivisorClass, b: &DivisorClass) -> Result<BigInt> {
    a.check_same_r(b)?;
    Ok(unchecked_pairing(a, b))
}

pub(crate) fn unchecked_pairing(a: &DivisorClass, b: &DivisorClass) -> BigInt {
    let mut acc = &a.d * &b.d;
    for (x, y) in a.m.iter().zip(&b.m) {
        acc -= x * y;
    }
    acc
}

pub fn self_intersection(a: &DivisorClass) -> BigInt {
    &a.d * &a.d - a.multiplicity_square_sum()
}

/// `K . a = -3d + sum m_i`.
pub fn canonical_degree(a: &DivisorClass) -> BigInt {
    a.multiplicity_sum() - BigInt::from(3) * &a.d
}

/// Arithmetic genus by adjunction, `1 + (a.a + K.a) / 2`.
pub fn arithmetic_genus(a: &DivisorClass) -> BigRational {
    let twice = self_intersection(a) + canonical_degree(a);
    BigRational::one() + BigRational::new(twice, BigInt::from(2))
}

/// The quadratic transform centred at the points `i, j, k` (1-based).
pub fn cremona(a: &DivisorClass, i: usize, j: usize, k: usize) -> Result<DivisorClass> {
    let r = a.r();
    if r < 3 {
        return Err(Error::InvalidArgument(format!(
            "quadratic transforms need r >= 3, got r = {r}"
        )));
    }
    if i == j || j == k || i == k {
        return Err(Error::InvalidArgument(format!(
            "indices {i}, {j}, {k} are not pairwise distinct"
        )));
    }
    for idx in [i, j, k] {
        if idx == 0 || idx > r {
            return Err(Error::InvalidArgument(format!(
                "index {idx} outside 1..={r}"
            )));
        }
    }
    Ok(cremona_zero_based(a, i - 1, j - 1, k - 1))
}

pub(crate) fn cremona_zero_based(a: &DivisorClass, i: usize, j: usize, k: usize) -> DivisorClass {
    let (mi, mj, mk) = (&a.m[i], &a.m[j], &a.m[k]);
    let mut out = a.clone();
    out.d = BigInt::from(2) * &a.d - mi - mj - mk;
    out.m[i] = &a.d - mj - mk;
    out.m[j] = &a.d - mi - mk;
    out.m[k] = &a.d - mi - mj;
    out
}

/// Permutes the points: `sigma[i - 1]` is the image of point `i`, so the
/// multiplicity at `i` moves to `sigma(i)` and `E_i` maps to `E_sigma(i)`.
pub fn permute(a: &DivisorClass, sigma: &[usize]) -> Result<DivisorClass> {
    let r = a.r();
    if sigma.len() != r {
        return Err(Error::InvalidArgument(format!(
            "permutation has length {}, expected {r}",
            sigma.len()
        )));
    }
    let mut seen = vec![false; r];
    for &s in sigma {
        if s == 0 || s > r || std::mem::replace(&mut seen[s - 1], true) {
            return Err(Error::InvalidArgument(format!(
                "{sigma:?} is not a permutation of 1..={r}"
            )));
        }
    }
    let mut m = vec![BigInt::zero(); r];
    for (i, &s) in sigma.iter().enumerate() {
        m[s - 1] = a.m[i].clone();
    }
    Ok(DivisorClass { d: a.d.clone(), m })
}

/// A half-line `R_{>=0} alpha`, stored by its primitive representative.
///
/// Orientation is kept, so `R(alpha)` and `R(-alpha)` are different rays.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Ray {
    rep: DivisorClass,
}

impl Ray {
    pub fn rep(&self) -> &DivisorClass {
        &self.rep
    }

    pub fn into_rep(self) -> DivisorClass {
        self.rep
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({})", self.rep)
    }
}

/// Divides by the (nonnegative) gcd of the coordinates.
pub fn normalize_ray(a: &DivisorClass) -> Result<Ray> {
    if a.is_zero() {
        return Err(Error::ZeroClass);
    }
    let g = a.content();
    let rep = if g.is_one() {
        a.clone()
    } else {
        DivisorClass {
            d: &a.d / &g,
            m: a.m.iter().map(|x| x / &g).collect(),
        }
    };
    Ok(Ray { rep })
}
