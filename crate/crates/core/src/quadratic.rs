//! Exact arithmetic in a real quadratic field `Q(sqrt(n))`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The number `a + b sqrt(n)` with rational `a, b` and a fixed positive
/// radicand `n`.
///
/// When `n` is a perfect square the irrational part is folded into `a`, so
/// `b` is always zero there and the representation stays canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadNum {
    a: BigRational,
    b: BigRational,
    n: BigInt,
}

impl QuadNum {
    /// # Panics
    ///
    /// Panics if `n <= 0`.
    pub fn new(a: BigRational, b: BigRational, n: BigInt) -> Self {
        assert!(n.is_positive(), "radicand must be positive, got {n}");
        let root = n.sqrt();
        if &root * &root == n {
            let a = a + b * BigRational::from_integer(root);
            return Self {
                a,
                b: BigRational::zero(),
                n,
            };
        }
        Self { a, b, n }
    }

    pub fn from_integer(a: impl Into<BigInt>, n: impl Into<BigInt>) -> Self {
        Self::new(
            BigRational::from_integer(a.into()),
            BigRational::zero(),
            n.into(),
        )
    }

    pub fn from_rational(a: BigRational, n: impl Into<BigInt>) -> Self {
        Self::new(a, BigRational::zero(), n.into())
    }

    /// `sqrt(n)` itself.
    pub fn sqrt_radicand(n: impl Into<BigInt>) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), n.into())
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_coefficient(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.n
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign: when `a` and `b` disagree, compare `a^2` with `b^2 n`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            (sa, _) => {
                let a2 = &self.a * &self.a;
                let b2n = &self.b * &self.b * BigRational::from_integer(self.n.clone());
                match sa {
                    Ordering::Greater => a2.cmp(&b2n),
                    _ => b2n.cmp(&a2),
                }
            }
        }
    }

    /// Nearest `f64`, for display and floating comparisons only.
    pub fn to_f64(&self) -> f64 {
        let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        f(&self.a) + f(&self.b) * self.n.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    fn assert_same_field(&self, other: &Self) {
        assert_eq!(
            self.n, other.n,
            "operands live in different fields Q(sqrt({})) and Q(sqrt({}))",
            self.n, other.n
        );
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.n)
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.n == other.n).then(|| (self - other).signum())
    }
}

impl<'a> Add<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;

    fn add(self, rhs: &'a QuadNum) -> QuadNum {
        self.assert_same_field(rhs);
        QuadNum {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            n: self.n.clone(),
        }
    }
}

impl<'a> Sub<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;

    fn sub(self, rhs: &'a QuadNum) -> QuadNum {
        self.assert_same_field(rhs);
        QuadNum {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            n: self.n.clone(),
        }
    }
}

impl<'a> Mul<&'a QuadNum> for &'a QuadNum {
    type Output = QuadNum;

    fn mul(self, rhs: &'a QuadNum) -> QuadNum {
        self.assert_same_field(rhs);
        let n = BigRational::from_integer(self.n.clone());
        QuadNum {
            a: &self.a * &rhs.a + &self.b * &rhs.b * n,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            n: self.n.clone(),
        }
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;

    fn neg(self) -> QuadNum {
        QuadNum {
            a: -&self.a,
            b: -&self.b,
            n: self.n.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QuadNum {
            type Output = QuadNum;
            fn $m(self, rhs: QuadNum) -> QuadNum {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for QuadNum {
    type Output = QuadNum;

    fn neg(self) -> QuadNum {
        -&self
    }
}
