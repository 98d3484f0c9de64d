//! Weyl-orbit generation and recognition of (-1)-classes by quadratic
//! transforms.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{orbit_size, ClassCatalog, ClassKind, OrbitCatalog};
use crate::error::{Error, Result};
use crate::lattice::{canonical_degree, cremona_zero_based, self_intersection, DivisorClass};

/// Breadth-first closure of `{E_1, ..., E_r}` under quadratic transforms and
/// permutations, pruned above `max_degree`. Classes are normalized to sorted
/// representatives on insertion, so the search runs on permutation orbits.
pub fn weyl_orbit_representatives(r: usize, max_degree: u32) -> Result<OrbitCatalog> {
    if r < 3 {
        return Err(Error::InvalidArgument(format!(
            "Weyl orbit generation needs r >= 3, got r = {r}"
        )));
    }
    let bound = BigInt::from(max_degree);
    let seed = DivisorClass::exceptional(r, 1)?.sorted_descending();
    let mut seen = BTreeSet::from([seed.clone()]);
    let mut queue = VecDeque::from([seed]);
    while let Some(c) = queue.pop_front() {
        for i in 0..r {
            for j in i + 1..r {
                for k in j + 1..r {
                    let next = cremona_zero_based(&c, i, j, k).sorted_descending();
                    if next.d() <= &bound && !seen.contains(&next) {
                        seen.insert(next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    let orbits = seen
        .into_iter()
        .map(|c| {
            let n = orbit_size(c.m());
            (c, n)
        })
        .collect();
    Ok(OrbitCatalog::from_orbits(
        r,
        max_degree,
        ClassKind::MinusOne,
        orbits,
    ))
}

/// The (-1)-catalog produced by Weyl-orbit generation; must agree with
/// [`super::enumerate_kind`] for [`ClassKind::MinusOne`].
pub fn weyl_orbit_enumerate(r: usize, max_degree: u32) -> Result<ClassCatalog> {
    Ok(weyl_orbit_representatives(r, max_degree)?.expand())
}

/// Recognizes (-1)-classes: both defining equations hold and repeated
/// quadratic transforms at the three largest multiplicities reduce the class
/// to an exceptional class. The degree drops strictly at every step.
pub fn is_minus_one_class(a: &DivisorClass) -> bool {
    if self_intersection(a) != -BigInt::one() || canonical_degree(a) != -BigInt::one() {
        return false;
    }
    let r = a.r();
    if r < 3 {
        // E_i, and the line through both points when r = 2
        let d = a.d();
        return (d.is_zero() && is_sorted_exceptional(&a.sorted_descending()))
            || (d.is_one() && r == 2 && a.m().iter().all(One::is_one));
    }
    let mut c = a.sorted_descending();
    loop {
        if c.d().is_negative() {
            return false;
        }
        let top: BigInt = c.m()[..3].iter().sum();
        if &top <= c.d() {
            break;
        }
        c = cremona_zero_based(&c, 0, 1, 2).sorted_descending();
    }
    c.d().is_zero() && is_sorted_exceptional(&c)
}

fn is_sorted_exceptional(c: &DivisorClass) -> bool {
    let (last, rest) = c.m().split_last().expect("nonempty");
    *last == -BigInt::one() && rest.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::enumerate_kind;

    fn c(s: &str) -> DivisorClass {
        s.parse().unwrap()
    }

    #[test]
    fn recognizer_examples() {
        assert!(is_minus_one_class(&c("2;1,1,1,1,1")));
        assert!(!is_minus_one_class(&c("1;1,1,1")));
        assert!(is_minus_one_class(&c("0;0,-1,0")));
        assert!(is_minus_one_class(&c("1;1,1")));
        assert!(is_minus_one_class(&c("0;-1")));
        assert!(!is_minus_one_class(&c("1;1,0")));
        // numerically (-1) but with a negative multiplicity
        assert!(!is_minus_one_class(&c("3;1,1,1,1,1,1,1,1,1,-1")));
        assert!(is_minus_one_class(&c("3;2,1,1,1,1,1,1,0,0")));
    }

    #[test]
    fn small_orbits() {
        assert_eq!(weyl_orbit_enumerate(3, 1).unwrap().len(), 6);
        assert_eq!(weyl_orbit_enumerate(9, 3).unwrap().len(), 423);
        assert!(weyl_orbit_enumerate(2, 3).is_err());
    }

    #[test]
    fn matches_search_on_small_cases() {
        for r in 3..=8 {
            for dmax in 0..=4 {
                assert_eq!(
                    weyl_orbit_enumerate(r, dmax).unwrap(),
                    enumerate_kind(r, dmax, ClassKind::MinusOne).unwrap(),
                    "r={r} dmax={dmax}"
                );
            }
        }
    }
}
