//! Arithmetic checkers for the Nagata and `deg^2 >= sum mult^2` inequalities,
//! and the sweeps built on the anticanonical discriminants.
//!
//! Every checker works on numerical classes only and never claims
//! effectivity. Verdicts carry the cross-multiplied integers they compare.
//!
//! Sweeps run over permutation-orbit representatives: every quantity involved
//! is invariant under permuting the points, so each representative stands for
//! its whole orbit and counts are weighted by orbit size.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cone::{anticanonical_shade, delta_0, delta_s, shift, ShadePosition};
use crate::enumeration::{distinct_permutations, enumerate_orbits, is_minus_one_class, ClassKind};
use crate::error::{Error, Result};
use crate::lattice::{arithmetic_genus, DivisorClass};
use crate::quadratic::QuadNum;

/// Outcome of an inequality check `lhs >= rhs`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckVerdict {
    pub holds: bool,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub note: String,
}

impl CheckVerdict {
    fn compare(lhs: BigInt, rhs: BigInt, note: String) -> Self {
        Self {
            holds: lhs >= rhs,
            lhs,
            rhs,
            note,
        }
    }
}

impl fmt::Display for CheckVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (word, op) = if self.holds {
            ("holds", ">=")
        } else {
            ("fails", "<")
        };
        write!(f, "{word}: {} {op} {}; {}", self.lhs, self.rhs, self.note)
    }
}

fn require_nonnegative_degree(a: &DivisorClass) -> Result<()> {
    if a.d().is_negative() {
        return Err(Error::Precondition(format!("d >= 0 fails: d = {}", a.d())));
    }
    Ok(())
}

/// `d >= (1 / sqrt r) sum m_i`, compared as `r d^2 >= sgn(S) S^2` with
/// `S = sum m_i`. A negative `S` always passes.
pub fn nagata_check(a: &DivisorClass) -> Result<CheckVerdict> {
    require_nonnegative_degree(a)?;
    let s = a.multiplicity_sum();
    let lhs = BigInt::from(a.r()) * a.d() * a.d();
    let rhs = match s.sign() {
        num_bigint::Sign::Minus => -(&s * &s),
        _ => &s * &s,
    };
    let note = if s.is_negative() {
        "multiplicity sum is negative".to_string()
    } else {
        format!("r d^2 vs (sum m)^2 with r = {}", a.r())
    };
    Ok(CheckVerdict::compare(lhs, rhs, note))
}

/// `d^2 >= sum m_i^2`. The note reports `p_a`, since the inequality is only
/// conjectured for nonrational integral curves.
pub fn shgh_dagger_check(a: &DivisorClass) -> Result<CheckVerdict> {
    require_nonnegative_degree(a)?;
    let pa = arithmetic_genus(a);
    let note = if is_minus_one_class(a) {
        format!("(-1)-class, p_a = {pa}, inequality inapplicable")
    } else if pa.is_negative() {
        format!("p_a = {pa} < 0, not the class of an integral curve")
    } else if pa.is_zero() {
        "p_a = 0, inequality inapplicable".to_string()
    } else {
        format!("p_a = {pa}, inequality applies")
    };
    Ok(CheckVerdict::compare(
        a.d() * a.d(),
        a.multiplicity_square_sum(),
        note,
    ))
}

/// A class failing one of the laws of a sweep.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SweepViolation {
    pub class: DivisorClass,
    pub reason: String,
}

impl fmt::Display for SweepViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.class, self.reason)
    }
}

/// `Delta_0 = 10 - r` over the (-1)-classes up to a degree bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Delta0Report {
    pub r: usize,
    pub max_degree: u32,
    pub classes: BigUint,
    pub representatives: usize,
    pub violations: Vec<SweepViolation>,
}

impl Delta0Report {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn delta0_sweep(r: usize, max_degree: u32) -> Result<Delta0Report> {
    let orbits = enumerate_orbits(r, max_degree, ClassKind::MinusOne)?;
    let expected = BigInt::from(10 - r as i64);
    let violations = orbits
        .representatives()
        .filter_map(|c| {
            let got = delta_0(c);
            (got != expected).then(|| SweepViolation {
                class: c.clone(),
                reason: format!("Delta_0 = {got}, expected {expected}"),
            })
        })
        .collect();
    Ok(Delta0Report {
        r,
        max_degree,
        classes: orbits.total(),
        representatives: orbits.orbits().len(),
        violations,
    })
}

pub fn delta0_law_check(r: usize, max_degree: u32) -> Result<bool> {
    Ok(delta0_sweep(r, max_degree)?.holds())
}

/// Discriminant and shade positions of the (-1)-classes for `r >= 10`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Prop34Report {
    pub r: usize,
    pub max_degree: u32,
    pub classes: BigUint,
    pub representatives: usize,
    /// Classes with `Delta_s = 0`.
    pub delta_s_zero: BigUint,
    pub boundary: BigUint,
    pub outside: BigUint,
    pub interior: BigUint,
    pub violations: Vec<SweepViolation>,
}

impl Prop34Report {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For each (-1)-class: `Delta_s / 4 = s d (2 + s d) >= 0`, `Delta_0 = 10 - r`,
/// and the position against the shade of `Q` from `-K` is the boundary at
/// `r = 10` and the complement beyond.
pub fn prop34_sweep(r: usize, max_degree: u32) -> Result<Prop34Report> {
    if r < 10 {
        return Err(Error::Precondition(format!("r >= 10 fails: r = {r}")));
    }
    let orbits = enumerate_orbits(r, max_degree, ClassKind::MinusOne)?;
    let s = shift(r)?;
    let n = s.radicand().clone();
    let two = QuadNum::from_integer(2, n.clone());
    let expected_d0 = BigInt::from(10 - r as i64);
    let expected_shade = if r == 10 {
        ShadePosition::Boundary
    } else {
        ShadePosition::Outside
    };
    let mut report = Prop34Report {
        r,
        max_degree,
        classes: orbits.total(),
        representatives: orbits.orbits().len(),
        delta_s_zero: BigUint::zero(),
        boundary: BigUint::zero(),
        outside: BigUint::zero(),
        interior: BigUint::zero(),
        violations: Vec::new(),
    };
    for (c, size) in orbits.orbits() {
        let mut reasons = Vec::new();
        let mut fail = |reason: String| reasons.push(reason);
        let ds = delta_s(c)?;
        let sd = &s * &QuadNum::from_integer(c.d().clone(), n.clone());
        let closed = &sd * &(&two + &sd);
        if ds != closed {
            fail(format!(
                "Delta_s/4 = {ds}, expected s d (2 + s d) = {closed}"
            ));
        }
        match ds.signum() {
            Ordering::Less => fail(format!("Delta_s/4 = {ds} < 0")),
            Ordering::Equal => report.delta_s_zero += size,
            Ordering::Greater => {}
        }
        let d0 = delta_0(c);
        if d0 != expected_d0 {
            fail(format!("Delta_0 = {d0}, expected {expected_d0}"));
        }
        let position = anticanonical_shade(c)?;
        match position {
            ShadePosition::Boundary => report.boundary += size,
            ShadePosition::Outside => report.outside += size,
            ShadePosition::Interior => report.interior += size,
        }
        let by_sign = match d0.sign() {
            num_bigint::Sign::Minus => ShadePosition::Outside,
            num_bigint::Sign::NoSign => ShadePosition::Boundary,
            num_bigint::Sign::Plus => ShadePosition::Interior,
        };
        if position != expected_shade || position != by_sign {
            fail(format!(
                "shade position {position}, expected {expected_shade} (Delta_0 = {d0})"
            ));
        }
        report
            .violations
            .extend(reasons.into_iter().map(|reason| SweepViolation {
                class: c.clone(),
                reason,
            }));
    }
    Ok(report)
}

/// How a class with `C^2 = -1`, `K.C = 1` sits against the (-1)-classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Alignment {
    /// `C = -K`.
    Anticanonical,
    /// `C + K = t (E - K)` with `E` a (-1)-class and `t > 0`.
    Aligned { e: DivisorClass, t: BigRational },
}

impl Alignment {
    /// `t`, with `0` for the anticanonical class.
    pub fn t(&self) -> BigRational {
        match self {
            Alignment::Anticanonical => BigRational::zero(),
            Alignment::Aligned { t, .. } => t.clone(),
        }
    }
}

impl fmt::Display for Alignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alignment::Anticanonical => f.write_str("C = -K (t = 0)"),
            Alignment::Aligned { e, t } => write!(f, "C + K = {t} (E - K) with E = {e}"),
        }
    }
}

/// Writes `C + K = t (E - K)` with `E` a (-1)-class of degree at most
/// `max_degree`, if possible.
///
/// Since `E - K` is an integral vector on the ray of `C + K`, it is a positive
/// multiple `k v` of the primitive vector `v` on that ray, and `t = g / k`
/// where `g` is the content of `C + K`. The search runs over `k`.
pub fn alignment_decomposition(c: &DivisorClass, max_degree: u32) -> Result<Option<Alignment>> {
    if let Some(reason) = ClassKind::GenusOneNeg.violation(c) {
        return Err(Error::Kind {
            class: c.to_string(),
            kind: ClassKind::GenusOneNeg.to_string(),
            reason,
        });
    }
    let k = DivisorClass::canonical(c.r());
    let w = c + &k;
    if w.is_zero() {
        return Ok(Some(Alignment::Anticanonical));
    }
    let g = w.content();
    let v = DivisorClass::new(w.d() / &g, w.m().iter().map(|x| x / &g).collect())?;
    if !v.d().is_positive() {
        return Ok(None);
    }
    let bound = BigInt::from(max_degree);
    let mut step = BigInt::from(1);
    loop {
        let e = &k + &(&step * &v);
        if e.d() > &bound {
            return Ok(None);
        }
        if is_minus_one_class(&e) {
            let t = BigRational::new(g, step);
            return Ok(Some(Alignment::Aligned { e, t }));
        }
        step += 1;
    }
}

/// Alignment of every class with `C^2 = -1`, `K.C = 1` up to a degree bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlignmentReport {
    pub r: usize,
    pub max_degree: u32,
    pub classes: BigUint,
    pub anticanonical: BigUint,
    pub aligned: BigUint,
    /// Orbit representatives with no decomposition inside the bound.
    pub unaligned: Vec<DivisorClass>,
}

pub fn alignment_sweep(r: usize, max_degree: u32) -> Result<AlignmentReport> {
    let orbits = enumerate_orbits(r, max_degree, ClassKind::GenusOneNeg)?;
    let mut report = AlignmentReport {
        r,
        max_degree,
        classes: orbits.total(),
        anticanonical: BigUint::zero(),
        aligned: BigUint::zero(),
        unaligned: Vec::new(),
    };
    for (c, size) in orbits.orbits() {
        match alignment_decomposition(c, max_degree)? {
            Some(Alignment::Anticanonical) => report.anticanonical += size,
            Some(Alignment::Aligned { .. }) => report.aligned += size,
            None => report.unaligned.push(c.clone()),
        }
    }
    Ok(report)
}

/// Numerical classes with `d >= 1`, `m_i >= 0` and `C^2 < -1` whose
/// arithmetic genus is nonnegative, bucketed by genus. Classes with
/// `p_a < 0` are pruned during the search.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ViolationScan {
    /// `p_a = 0`: an integral rational curve with `C^2 < 0` is a (-1)-curve,
    /// so none of these is integral.
    pub rational: Vec<DivisorClass>,
    /// `p_a >= 1`: not excluded by the genus argument.
    pub open: Vec<DivisorClass>,
}

impl ViolationScan {
    /// Both buckets, in catalog order.
    pub fn classes(&self) -> Vec<DivisorClass> {
        let mut all: Vec<_> = self.rational.iter().chain(&self.open).cloned().collect();
        all.sort();
        all
    }

    pub fn is_empty(&self) -> bool {
        self.rational.is_empty() && self.open.is_empty()
    }
}

pub fn violation_scan(r: usize, max_degree: u32) -> Result<ViolationScan> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let mut scan = ViolationScan::default();
    // p_a >= 0 iff sum m (m - 1) <= (d - 1)(d - 2)
    fn descend(slot: usize, cap: i64, genus_room: i64, m: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if slot == m.len() {
            out.push(m.clone());
            return;
        }
        for v in (0..=cap).rev() {
            let cost = v * (v - 1);
            if cost > genus_room {
                continue;
            }
            m[slot] = v;
            descend(slot + 1, v, genus_room - cost, m, out);
        }
    }
    for d in 1..=i64::from(max_degree) {
        let mut sorted = Vec::new();
        descend(0, d, (d - 1) * (d - 2), &mut vec![0; r], &mut sorted);
        for m in sorted {
            let sq: i64 = m.iter().map(|x| x * x).sum();
            if d * d - sq >= -1 {
                continue;
            }
            let rep = DivisorClass::from_i64(d, &m);
            let bucket = if arithmetic_genus(&rep).is_zero() {
                &mut scan.rational
            } else {
                &mut scan.open
            };
            for p in distinct_permutations(&m) {
                bucket.push(DivisorClass::from_i64(d, &p));
            }
        }
    }
    scan.rational.sort();
    scan.open.sort();
    Ok(scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::self_intersection;
    use proptest::prelude::*;

    fn c(s: &str) -> DivisorClass {
        s.parse().unwrap()
    }

    fn uniform(d: i64, m: i64, r: usize) -> DivisorClass {
        DivisorClass::from_i64(d, &vec![m; r])
    }

    #[test]
    fn nagata_examples() {
        let v = nagata_check(&uniform(3, 1, 10)).unwrap();
        assert!(!v.holds);
        assert_eq!((v.lhs, v.rhs), (BigInt::from(90), BigInt::from(100)));
        let v = nagata_check(&uniform(4, 1, 10)).unwrap();
        assert!(v.holds);
        assert_eq!((v.lhs, v.rhs), (BigInt::from(160), BigInt::from(100)));
        let v = nagata_check(&uniform(38, 12, 10)).unwrap();
        assert!(v.holds);
        assert_eq!((v.lhs, v.rhs), (BigInt::from(14440), BigInt::from(14400)));
        let v = nagata_check(&c("0;-1,0")).unwrap();
        assert!(v.holds && v.note.contains("negative"));
        assert!(nagata_check(&c("-1;0,0")).is_err());
    }

    #[test]
    fn dagger_examples() {
        let v = shgh_dagger_check(&c("1;1,1")).unwrap();
        assert!(!v.holds);
        assert_eq!((v.lhs, v.rhs), (BigInt::from(1), BigInt::from(2)));
        assert!(v.note.contains("(-1)-class"), "{}", v.note);
        let v = shgh_dagger_check(&uniform(6, 2, 10)).unwrap();
        assert!(!v.holds);
        assert_eq!((v.lhs, v.rhs), (BigInt::from(36), BigInt::from(40)));
        assert!(v.note.contains("p_a = 0"), "{}", v.note);
        let v = shgh_dagger_check(&uniform(3, 1, 9)).unwrap();
        assert!(v.holds);
        assert_eq!(v.lhs, v.rhs);
        assert!(v.note.contains("p_a = 1, inequality applies"), "{}", v.note);
        let v = shgh_dagger_check(&c("1;2,0")).unwrap();
        assert!(v.note.contains("< 0"), "{}", v.note);
        assert_eq!(
            v.to_string(),
            "fails: 1 < 4; p_a = -1 < 0, not the class of an integral curve"
        );
    }

    #[test]
    fn delta0_law_instances() {
        for (r, dmax) in [(9, 10), (10, 10), (13, 6), (2, 3)] {
            let rep = delta0_sweep(r, dmax).unwrap();
            assert!(rep.holds(), "r = {r}: {:?}", rep.violations);
        }
    }

    #[test]
    fn prop34_sweeps() {
        let ten = prop34_sweep(10, 8).unwrap();
        assert!(ten.holds(), "{:?}", ten.violations);
        assert_eq!(ten.boundary, ten.classes);
        assert_eq!(ten.delta_s_zero, ten.classes);
        let twelve = prop34_sweep(12, 6).unwrap();
        assert!(twelve.holds(), "{:?}", twelve.violations);
        assert_eq!(twelve.outside, twelve.classes);
        let eleven = prop34_sweep(11, 0).unwrap();
        assert_eq!(eleven.classes, BigUint::from(11u32));
        assert_eq!(eleven.delta_s_zero, BigUint::from(11u32));
        assert!(prop34_sweep(9, 2).is_err());
    }

    #[test]
    fn alignment_examples() {
        let minus_k = -&DivisorClass::canonical(10);
        assert_eq!(
            alignment_decomposition(&minus_k, 5).unwrap(),
            Some(Alignment::Anticanonical)
        );
        let got = alignment_decomposition(&c("6;2,2,2,2,2,2,2,2,2,1"), 9)
            .unwrap()
            .unwrap();
        assert_eq!(
            got,
            Alignment::Aligned {
                e: DivisorClass::exceptional(10, 10).unwrap(),
                t: BigRational::from_integer(1.into()),
            }
        );
        let got = alignment_decomposition(&c("9;1,3,3,3,3,3,3,3,3,3"), 9)
            .unwrap()
            .unwrap();
        assert_eq!(got.t(), BigRational::from_integer(2.into()));
        assert!(
            matches!(got, Alignment::Aligned { e, .. } if e == DivisorClass::exceptional(10, 1).unwrap())
        );
        assert!(alignment_decomposition(&c("1;1,1,0,0,0,0,0,0,0,0"), 9).is_err());
    }

    #[test]
    fn alignment_respects_the_degree_bound() {
        // C = (L - E_1 - E_2) - 2K, with E = L - E_1 - E_2 of degree 1
        let e = c("1;1,1,0,0,0,0,0,0,0,0");
        let k = DivisorClass::canonical(10);
        let cls = &(&e - &k) - &k;
        assert_eq!(self_intersection(&cls), BigInt::from(-1));
        assert!(alignment_decomposition(&cls, 0).unwrap().is_none());
        let got = alignment_decomposition(&cls, 1).unwrap().unwrap();
        assert_eq!(
            got,
            Alignment::Aligned {
                e,
                t: BigRational::from_integer(1.into())
            }
        );
    }

    #[test]
    fn alignment_sweep_small() {
        let rep = alignment_sweep(10, 6).unwrap();
        assert!(rep.unaligned.is_empty(), "{:?}", rep.unaligned);
        assert_eq!(rep.anticanonical, BigUint::from(1u32));
        assert_eq!(rep.anticanonical + rep.aligned, rep.classes);
    }

    #[test]
    fn violation_scan_examples() {
        assert!(violation_scan(2, 3).unwrap().is_empty());
        for r in 1..6 {
            assert!(violation_scan(r, 0).unwrap().is_empty());
        }
        let scan = violation_scan(10, 6).unwrap();
        assert!(scan.rational.contains(&uniform(6, 2, 10)));
        assert!(!scan.open.contains(&uniform(6, 2, 10)));
        for x in scan.classes() {
            assert!(self_intersection(&x) < BigInt::from(-1));
            assert!(!arithmetic_genus(&x).is_negative());
        }
    }

    /// Naive scan over every multiplicity vector, for comparison.
    fn brute_scan(r: usize, dmax: i64) -> Vec<DivisorClass> {
        let mut out = Vec::new();
        for d in 1..=dmax {
            let mut m = vec![0i64; r];
            loop {
                let cls = DivisorClass::from_i64(d, &m);
                if self_intersection(&cls) < BigInt::from(-1)
                    && !arithmetic_genus(&cls).is_negative()
                {
                    out.push(cls);
                }
                let Some(i) = m.iter().rposition(|&x| x < d) else {
                    break;
                };
                m[i] += 1;
                m[i + 1..].iter_mut().for_each(|x| *x = 0);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn violation_scan_matches_brute_force() {
        for (r, dmax) in [(3, 6), (4, 6), (5, 5), (6, 4)] {
            assert_eq!(
                violation_scan(r, dmax as u32).unwrap().classes(),
                brute_scan(r, dmax),
                "r = {r}"
            );
        }
    }

    proptest! {
        #[test]
        fn checks_are_scale_covariant(
            d in 0i64..40,
            m in proptest::collection::vec(-5i64..20, 1..12),
            k in 1i64..7,
        ) {
            let a = DivisorClass::from_i64(d, &m);
            let scaled = &BigInt::from(k) * &a;
            let k2 = BigInt::from(k * k);
            for check in [nagata_check, shgh_dagger_check] {
                let v = check(&a).unwrap();
                let w = check(&scaled).unwrap();
                prop_assert_eq!(v.holds, w.holds);
                prop_assert_eq!(&v.lhs * &k2, w.lhs);
                prop_assert_eq!(&v.rhs * &k2, w.rhs);
            }
        }
    }
}
