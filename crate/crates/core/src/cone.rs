//! The quadric cone `Q`, shades `Q + R(alpha)`, discriminants and angles.
//!
//! Every position decision is exact. Angles use the standard dot product in
//! `(d; m)` coordinates, in which `Q` is the circular cone of half-angle
//! `pi/4` around `L`; they are the only floating-point quantities here.

use std::cmp::Ordering;
use std::f64::consts::FRAC_PI_4;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::enumeration::{ClassCatalog, OrbitCatalog};
use crate::error::{Error, Result};
use crate::lattice::{
    canonical_degree, normalize_ray, pairing, self_intersection, DivisorClass, Ray,
};
use crate::quadratic::QuadNum;

/// Tolerance used when comparing floating-point angles.
pub const ANGLE_TOLERANCE: f64 = 1e-9;

/// Position of a class relative to the closed quadric cone `Q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum QPosition {
    /// `a^2 > 0` and `a.L > 0`.
    Interior,
    /// `a^2 = 0`, `a != 0` and `a.L >= 0`.
    Boundary,
    Outside,
}

/// Position of a ray `R(beta)` relative to the shade `Q + R(alpha)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ShadePosition {
    Outside,
    Boundary,
    Interior,
}

impl fmt::Display for ShadePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShadePosition::Outside => "Outside",
            ShadePosition::Boundary => "Boundary",
            ShadePosition::Interior => "Interior",
        })
    }
}

impl fmt::Display for QPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QPosition::Interior => "Interior",
            QPosition::Boundary => "Boundary",
            QPosition::Outside => "Outside",
        })
    }
}

/// Classifies `a` against `Q = {u_0^2 >= u_1^2 + ... + u_r^2, u_0 >= 0}`.
pub fn q_position(a: &DivisorClass) -> Result<QPosition> {
    if a.is_zero() {
        return Err(Error::ZeroClass);
    }
    let sq = self_intersection(a);
    Ok(
        match (sq.cmp(&BigInt::zero()), a.d().cmp(&BigInt::zero())) {
            (Ordering::Greater, Ordering::Greater) => QPosition::Interior,
            (Ordering::Equal, Ordering::Greater | Ordering::Equal) => QPosition::Boundary,
            _ => QPosition::Outside,
        },
    )
}

/// `(alpha.beta)^2 - alpha^2 beta^2`, a quarter of the discriminant of
/// `(t beta - alpha)^2 = 0`.
pub fn shade_discriminant(beta: &DivisorClass, alpha: &DivisorClass) -> Result<BigInt> {
    let ab = pairing(alpha, beta)?;
    Ok(&ab * &ab - self_intersection(alpha) * self_intersection(beta))
}

/// Box searched for a witness `gamma = xL + y alpha + z beta` when `L` fails.
const WITNESS_BOUND: i64 = 6;

/// Finds `gamma` in the interior of `Q` with `alpha.gamma <= 0 <= beta.gamma`.
///
/// Tries `L` first. Otherwise it scans integer combinations of `L`, `alpha`
/// and `beta`: pairings with `alpha` and `beta` only see the component in
/// their span with `L`, and when that span is nondegenerate its complement is
/// negative definite, so any witness projects to one inside the span.
pub fn shade_witness(beta: &DivisorClass, alpha: &DivisorClass) -> Result<Option<DivisorClass>> {
    pairing(alpha, beta)?;
    let line = DivisorClass::line(alpha.r());
    let basis = [&line, alpha, beta];
    let mut gram = [
        [BigInt::zero(), BigInt::zero(), BigInt::zero()],
        [BigInt::zero(), BigInt::zero(), BigInt::zero()],
        [BigInt::zero(), BigInt::zero(), BigInt::zero()],
    ];
    for i in 0..3 {
        for j in 0..3 {
            gram[i][j] = pairing(basis[i], basis[j])?;
        }
    }
    let ok = |v: [i64; 3]| -> bool {
        let v = v.map(BigInt::from);
        let dot = |row: &[BigInt; 3]| -> BigInt { row.iter().zip(&v).map(|(g, x)| g * x).sum() };
        let with_l = dot(&gram[0]);
        let with_alpha = dot(&gram[1]);
        let with_beta = dot(&gram[2]);
        let square: BigInt = (0..3).map(|i| &v[i] * dot(&gram[i])).sum();
        square.is_positive()
            && with_l.is_positive()
            && !with_alpha.is_positive()
            && !with_beta.is_negative()
    };
    if ok([1, 0, 0]) {
        return Ok(Some(line));
    }
    let range = -WITNESS_BOUND..=WITNESS_BOUND;
    for x in 1..=WITNESS_BOUND {
        for y in range.clone() {
            for z in range.clone() {
                if ok([x, y, z]) {
                    let combo = &(&(&BigInt::from(x) * &line) + &(&BigInt::from(y) * alpha))
                        + &(&BigInt::from(z) * beta);
                    return Ok(Some(combo));
                }
            }
        }
    }
    Ok(None)
}

/// Decides whether `R(beta)` lies outside, on the boundary of, or inside the
/// shade `Q + R(alpha)`, by the sign of [`shade_discriminant`].
///
/// Requires `alpha^2 < 0`, `beta^2 < 0`, `alpha.beta < 0` and a witness
/// `gamma` (see [`shade_witness`]).
pub fn shade_position(beta: &DivisorClass, alpha: &DivisorClass) -> Result<ShadePosition> {
    let ab = pairing(alpha, beta)?;
    let a2 = self_intersection(alpha);
    let b2 = self_intersection(beta);
    if !a2.is_negative() {
        return Err(Error::Precondition(format!(
            "alpha^2 < 0 fails: alpha^2 = {a2}"
        )));
    }
    if !b2.is_negative() {
        return Err(Error::Precondition(format!(
            "beta^2 < 0 fails: beta^2 = {b2}"
        )));
    }
    if !ab.is_negative() {
        return Err(Error::Precondition(format!(
            "alpha.beta < 0 fails: alpha.beta = {ab}"
        )));
    }
    if shade_witness(beta, alpha)?.is_none() {
        return Err(Error::Precondition(
            "no gamma in the interior of Q with alpha.gamma <= 0 <= beta.gamma was found".into(),
        ));
    }
    let disc = &ab * &ab - a2 * b2;
    Ok(match disc.cmp(&BigInt::zero()) {
        Ordering::Less => ShadePosition::Outside,
        Ordering::Equal => ShadePosition::Boundary,
        Ordering::Greater => ShadePosition::Interior,
    })
}

/// Position of `R(beta)` with respect to `Q + R(K)`, for any `r`.
///
/// For `r < 9` the shade is the whole space, for `r = 9` it is the half-space
/// `K <= 0`, and for `r >= 10` this is [`shade_position`] with `alpha = K`.
pub fn anticanonical_shade(beta: &DivisorClass) -> Result<ShadePosition> {
    let r = beta.r();
    match r.cmp(&9) {
        Ordering::Less => Ok(ShadePosition::Interior),
        Ordering::Equal => Ok(match canonical_degree(beta).cmp(&BigInt::zero()) {
            Ordering::Less => ShadePosition::Interior,
            Ordering::Equal => ShadePosition::Boundary,
            Ordering::Greater => ShadePosition::Outside,
        }),
        Ordering::Greater => shade_position(beta, &DivisorClass::canonical(r)),
    }
}

/// `s = sqrt(r - 1) - 3` in `Q(sqrt(r - 1))`.
pub fn shift(r: usize) -> Result<QuadNum> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!(
            "the shift needs r >= 2, got r = {r}"
        )));
    }
    let n = BigInt::from(r - 1);
    Ok(&QuadNum::sqrt_radicand(n.clone()) - &QuadNum::from_integer(3, n))
}

/// `(K - sL)^2 = K^2 + 6s + s^2` computed in `Q(sqrt(r - 1))`.
pub fn shifted_canonical_square(r: usize) -> Result<QuadNum> {
    let s = shift(r)?;
    let n = s.radicand().clone();
    let k2 = QuadNum::from_integer(9 - r as i64, n.clone());
    let six = QuadNum::from_integer(6, n);
    Ok(&(&k2 + &(&six * &s)) + &(&s * &s))
}

/// `Delta_s / 4 = (C.(K - sL))^2 - C^2 (K - sL)^2` with `s = sqrt(r - 1) - 3`.
pub fn delta_s(c: &DivisorClass) -> Result<QuadNum> {
    let s = shift(c.r())?;
    let n = s.radicand().clone();
    let kc = QuadNum::from_integer(canonical_degree(c), n.clone());
    let d = QuadNum::from_integer(c.d().clone(), n.clone());
    let c_dot = &kc - &(&s * &d);
    let c2 = QuadNum::from_integer(self_intersection(c), n);
    Ok(&(&c_dot * &c_dot) - &(&c2 * &shifted_canonical_square(c.r())?))
}

/// `(C.K)^2 - C^2 K^2`, the discriminant of `(tC - K)^2 = 0` up to a factor 4.
pub fn delta_0(c: &DivisorClass) -> BigInt {
    let kc = canonical_degree(c);
    &kc * &kc - self_intersection(c) * BigInt::from(9 - c.r() as i64)
}

/// A class with rational coordinates, e.g. a projection to `K^perp`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalClass {
    pub d: BigRational,
    pub m: Vec<BigRational>,
}

impl RationalClass {
    pub fn from_class(c: &DivisorClass) -> Self {
        Self {
            d: BigRational::from_integer(c.d().clone()),
            m: c.m()
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect(),
        }
    }

    pub fn pairing(&self, other: &Self) -> BigRational {
        let mut acc = &self.d * &other.d;
        for (x, y) in self.m.iter().zip(&other.m) {
            acc -= x * y;
        }
        acc
    }

    pub fn square(&self) -> BigRational {
        self.pairing(self)
    }

    pub fn is_zero(&self) -> bool {
        self.d.is_zero() && self.m.iter().all(Zero::is_zero)
    }

    /// The class itself, when every coordinate is an integer.
    pub fn to_integral(&self) -> Option<DivisorClass> {
        let int = |q: &BigRational| q.is_integer().then(|| q.to_integer());
        let d = int(&self.d)?;
        let m = self.m.iter().map(int).collect::<Option<Vec<_>>>()?;
        DivisorClass::new(d, m).ok()
    }
}

impl fmt::Display for RationalClass {
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

/// The projection `a - (K.a / K^2) K` onto `K^perp` along `K`.
pub fn project_k_perp(a: &DivisorClass) -> Result<RationalClass> {
    let r = a.r();
    if r == 9 {
        return Err(Error::SingularProjection);
    }
    let k2 = BigInt::from(9 - r as i64);
    let coef = BigRational::new(canonical_degree(a), k2);
    let k = RationalClass::from_class(&DivisorClass::canonical(r));
    let base = RationalClass::from_class(a);
    Ok(RationalClass {
        d: &base.d - &coef * &k.d,
        m: base
            .m
            .iter()
            .zip(&k.m)
            .map(|(x, y)| x - &coef * y)
            .collect(),
    })
}

fn as_f64(c: &DivisorClass) -> Vec<f64> {
    c.coords().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
}

fn euclidean_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Angle between the primitive representatives in the standard dot product,
/// in `[0, pi]`.
pub fn angular_distance(a: &Ray, b: &Ray) -> f64 {
    let u = as_f64(a.rep());
    let v = as_f64(b.rep());
    let dot: f64 = u.iter().zip(&v).map(|(x, y)| x * y).sum();
    (dot / (euclidean_norm(&u) * euclidean_norm(&v)))
        .clamp(-1.0, 1.0)
        .acos()
}

/// Angle from `R` to the cone `Q`: `max(0, angle(R, L) - pi/4)`.
pub fn distance_to_q(ray: &Ray) -> f64 {
    let v = as_f64(ray.rep());
    let axis_angle = (v[0] / euclidean_norm(&v)).clamp(-1.0, 1.0).acos();
    (axis_angle - FRAC_PI_4).max(0.0)
}

/// Number of catalog rays farther than `eps` from `Q`.
pub fn count_outside_q_eps(catalog: &ClassCatalog, eps: f64) -> usize {
    catalog.iter().filter(|c| outside_q_eps(c, eps)).count()
}

/// [`count_outside_q_eps`] over an orbit catalog; the distance to `Q` only
/// depends on `d` and the multiset of multiplicities.
pub fn count_outside_q_eps_orbits(orbits: &OrbitCatalog, eps: f64) -> BigUint {
    orbits.count_where(|c| outside_q_eps(c, eps))
}

/// Angles of the rays of one degree to `Q` and to `R(-K)`.
#[derive(Clone, PartialEq, Debug)]
pub struct DegreeProfile {
    pub d: BigInt,
    pub classes: BigUint,
    pub max_distance_to_q: f64,
    pub min_angle_to_minus_k: f64,
    pub max_angle_to_minus_k: f64,
}

/// One [`DegreeProfile`] per degree present in the catalog, ascending. Both
/// angles are invariant under permuting the points.
pub fn degree_profile(orbits: &OrbitCatalog) -> Vec<DegreeProfile> {
    let minus_k = normalize_ray(&-&DivisorClass::canonical(orbits.r())).expect("K is nonzero");
    let mut out: Vec<DegreeProfile> = Vec::new();
    for (c, size) in orbits.orbits() {
        let Ok(ray) = normalize_ray(c) else { continue };
        let to_q = distance_to_q(&ray);
        let to_k = angular_distance(&ray, &minus_k);
        match out.last_mut() {
            Some(p) if &p.d == c.d() => {
                p.classes += size;
                p.max_distance_to_q = p.max_distance_to_q.max(to_q);
                p.min_angle_to_minus_k = p.min_angle_to_minus_k.min(to_k);
                p.max_angle_to_minus_k = p.max_angle_to_minus_k.max(to_k);
            }
            _ => out.push(DegreeProfile {
                d: c.d().clone(),
                classes: size.clone(),
                max_distance_to_q: to_q,
                min_angle_to_minus_k: to_k,
                max_angle_to_minus_k: to_k,
            }),
        }
    }
    out
}

fn outside_q_eps(c: &DivisorClass, eps: f64) -> bool {
    normalize_ray(c)
        .map(|ray| distance_to_q(&ray) > eps)
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate_kind, enumerate_orbits, ClassKind};
    use crate::lattice::normalize_ray;
    use std::f64::consts::PI;

    fn c(s: &str) -> DivisorClass {
        s.parse().unwrap()
    }

    fn e(r: usize, i: usize) -> DivisorClass {
        DivisorClass::exceptional(r, i).unwrap()
    }

    fn minus_k(r: usize) -> DivisorClass {
        -&DivisorClass::canonical(r)
    }

    fn ray(a: &DivisorClass) -> Ray {
        normalize_ray(a).unwrap()
    }

    #[test]
    fn q_positions() {
        assert_eq!(
            q_position(&DivisorClass::line(5)).unwrap(),
            QPosition::Interior
        );
        assert_eq!(q_position(&minus_k(9)).unwrap(), QPosition::Boundary);
        assert_eq!(q_position(&e(4, 1)).unwrap(), QPosition::Outside);
        assert_eq!(
            q_position(&-&DivisorClass::line(3)).unwrap(),
            QPosition::Outside
        );
        assert_eq!(q_position(&minus_k(8)).unwrap(), QPosition::Interior);
        assert!(q_position(&DivisorClass::zero(3)).is_err());
    }

    #[test]
    fn shade_examples() {
        let k10 = DivisorClass::canonical(10);
        assert_eq!(
            shade_position(&e(10, 1), &k10).unwrap(),
            ShadePosition::Boundary
        );
        let k11 = DivisorClass::canonical(11);
        assert_eq!(
            shade_position(&e(11, 1), &k11).unwrap(),
            ShadePosition::Outside
        );
        assert_eq!(
            shade_position(&c("2;-2,1"), &e(2, 1)).unwrap(),
            ShadePosition::Interior
        );
        assert_eq!(
            shade_discriminant(&c("2;-2,1"), &e(2, 1)).unwrap(),
            BigInt::from(3)
        );
    }

    #[test]
    fn shade_preconditions_name_the_inequality() {
        let k10 = DivisorClass::canonical(10);
        let msg = shade_position(&DivisorClass::line(10), &k10)
            .unwrap_err()
            .to_string();
        assert!(msg.contains("beta^2 < 0"), "{msg}");
        let msg = shade_position(&e(9, 1), &DivisorClass::canonical(9))
            .unwrap_err()
            .to_string();
        assert!(msg.contains("alpha^2 < 0"), "{msg}");
        let msg = shade_position(&e(10, 2), &e(10, 1))
            .unwrap_err()
            .to_string();
        assert!(msg.contains("alpha.beta < 0"), "{msg}");
        assert!(matches!(
            shade_position(&e(10, 1), &DivisorClass::canonical(11)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn witness_beyond_the_line() {
        // alpha.L > 0, so L is no witness, but 2L + alpha is one
        let beta = c("1;2,0,0");
        let alpha = c("1;1,1,1");
        let gamma = shade_witness(&beta, &alpha).unwrap().unwrap();
        assert_ne!(gamma, DivisorClass::line(3));
        assert!(self_intersection(&gamma).is_positive());
        assert!(!pairing(&alpha, &gamma).unwrap().is_positive());
        assert!(!pairing(&beta, &gamma).unwrap().is_negative());
        assert!(shade_position(&beta, &alpha).is_ok());
        // beta = -E_1 against E_2: alpha.beta = 0, rejected before any search
        assert!(shade_position(&-&e(3, 1), &e(3, 2)).is_err());
    }

    #[test]
    fn no_witness_is_a_precondition_failure() {
        // r = 1: alpha = -E_1, beta = (-1; 2). Any gamma in the interior of Q
        // with alpha.gamma <= 0 has m >= 0, and then beta.gamma < 0.
        let alpha = c("0;1");
        let beta = c("-1;2");
        assert!(shade_witness(&beta, &alpha).unwrap().is_none());
        let msg = shade_position(&beta, &alpha).unwrap_err().to_string();
        assert!(msg.contains("no gamma"), "{msg}");
    }

    #[test]
    fn anticanonical_shades_by_regime() {
        assert_eq!(
            anticanonical_shade(&e(6, 1)).unwrap(),
            ShadePosition::Interior
        );
        assert_eq!(
            anticanonical_shade(&e(9, 1)).unwrap(),
            ShadePosition::Interior
        );
        assert_eq!(
            anticanonical_shade(&minus_k(9)).unwrap(),
            ShadePosition::Boundary
        );
        assert_eq!(
            anticanonical_shade(&-&DivisorClass::line(9)).unwrap(),
            ShadePosition::Outside
        );
        assert_eq!(
            anticanonical_shade(&e(10, 3)).unwrap(),
            ShadePosition::Boundary
        );
        assert_eq!(
            anticanonical_shade(&e(12, 3)).unwrap(),
            ShadePosition::Outside
        );
    }

    #[test]
    fn delta_s_examples() {
        assert!(delta_s(&e(11, 1)).unwrap().is_zero());
        let line = delta_s(&c("1;1,1,0,0,0,0,0,0,0,0,0")).unwrap();
        assert_eq!(
            line,
            QuadNum::new(
                BigRational::from_integer(13.into()),
                BigRational::from_integer((-4).into()),
                10.into()
            )
        );
        assert_eq!(line.signum(), Ordering::Greater);
        assert!(delta_s(&e(10, 1)).unwrap().is_zero());
        assert!(delta_s(&c("1;1")).is_err());
    }

    #[test]
    fn shifted_canonical_square_is_minus_one() {
        for r in 2..40 {
            let v = shifted_canonical_square(r).unwrap();
            assert_eq!(v, QuadNum::from_integer(-1, r - 1), "r = {r}");
        }
    }

    #[test]
    fn delta_0_examples() {
        assert_eq!(delta_0(&e(10, 1)), BigInt::zero());
        assert_eq!(delta_0(&e(12, 1)), BigInt::from(-2));
        assert_eq!(delta_0(&minus_k(10)), BigInt::zero());
    }

    #[test]
    fn projection_examples() {
        for r in [5, 10, 13] {
            assert!(project_k_perp(&DivisorClass::canonical(r))
                .unwrap()
                .is_zero());
        }
        let p = project_k_perp(&e(10, 1)).unwrap();
        assert_eq!(p.to_integral().unwrap(), c("3;0,1,1,1,1,1,1,1,1,1"));
        assert!(p.square().is_zero());
        let p11 = project_k_perp(&e(11, 1)).unwrap();
        assert_eq!(p11.square(), BigRational::new((-1).into(), 2.into()));
        let k = RationalClass::from_class(&DivisorClass::canonical(11));
        assert!(p11.pairing(&k).is_zero());
        assert!(matches!(
            project_k_perp(&e(9, 1)),
            Err(Error::SingularProjection)
        ));
        assert_eq!(
            p11.to_string(),
            "3/2;-1/2,1/2,1/2,1/2,1/2,1/2,1/2,1/2,1/2,1/2,1/2"
        );
    }

    #[test]
    fn angles() {
        let tol = 1e-12;
        assert!((angular_distance(&ray(&e(4, 1)), &ray(&e(4, 2))) - PI / 2.0).abs() < tol);
        let l = ray(&DivisorClass::line(4));
        assert!(angular_distance(&l, &l).abs() < tol);
        let minus_l = ray(&-&DivisorClass::line(4));
        assert!((angular_distance(&l, &minus_l) - PI).abs() < tol);
    }

    #[test]
    fn distances_to_q() {
        let tol = 1e-12;
        assert!(distance_to_q(&ray(&DivisorClass::line(9))).abs() < tol);
        assert!((distance_to_q(&ray(&e(9, 1))) - FRAC_PI_4).abs() < tol);
        assert!(distance_to_q(&ray(&minus_k(9))).abs() < tol);
        assert!((distance_to_q(&ray(&-&DivisorClass::line(3))) - 3.0 * FRAC_PI_4).abs() < tol);
    }

    #[test]
    fn outside_q_eps_counts() {
        let cat = enumerate_kind(9, 1, ClassKind::MinusOne).unwrap();
        assert_eq!(count_outside_q_eps(&cat, 0.1), 45);
        assert_eq!(count_outside_q_eps(&cat, PI), 0);
        let empty = cat.filtered(|_| false);
        assert_eq!(count_outside_q_eps(&empty, 0.01), 0);

        let orbits = enumerate_orbits(9, 10, ClassKind::MinusOne).unwrap();
        let full = orbits.expand();
        for eps in [0.01, 0.05, 0.1, 0.5] {
            assert_eq!(
                count_outside_q_eps_orbits(&orbits, eps),
                BigUint::from(count_outside_q_eps(&full, eps))
            );
        }
    }
}
