//! Distinguished class families and their enumeration.
//!
//! Two independent routes produce the (-1)-classes: a bounded Diophantine
//! search on the two defining equations ([`enumerate_kind`]) and the closure of
//! the exceptional classes under quadratic transforms and permutations
//! ([`weyl_orbit_enumerate`]). Large truncations are handled through
//! [`OrbitCatalog`], which keeps one sorted representative per permutation
//! orbit together with the orbit size.

mod catalog;
mod search;
mod weyl;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{canonical_degree, self_intersection, DivisorClass};

pub use catalog::{
    load_catalog, read_catalog, save_catalog, write_catalog, ClassCatalog, CATALOG_FORMAT_VERSION,
};
pub use search::{distinct_permutations, orbit_size};
pub use weyl::{is_minus_one_class, weyl_orbit_enumerate, weyl_orbit_representatives};

/// The class families used throughout, each cut out by `C^2` and `K.C`.
///
/// [`ClassKind::violation`] tests the two numerical equations only. From
/// `r = 10` on they also admit classes outside the orbit of the `E_i`, such as
/// `(5; 3, 3, 1^8)`, which reduces to `(3; 1^9, -1)`; catalogs of
/// [`ClassKind::MinusOne`] therefore also require [`is_minus_one_class`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ClassKind {
    /// `C^2 = -1`, `K.C = -1`.
    MinusOne,
    /// `C^2 = 0`, `K.C = -2`: the class of a conic-bundle fiber.
    Fiber,
    /// `C^2 = -1`, `K.C = 1`, i.e. `p_a = 1`.
    GenusOneNeg,
    /// `C^2 = -2`, `K.C = 0`.
    MinusTwo,
}

impl ClassKind {
    pub const ALL: [ClassKind; 4] = [
        ClassKind::MinusOne,
        ClassKind::Fiber,
        ClassKind::GenusOneNeg,
        ClassKind::MinusTwo,
    ];

    pub fn self_intersection(self) -> i64 {
        match self {
            ClassKind::MinusOne | ClassKind::GenusOneNeg => -1,
            ClassKind::Fiber => 0,
            ClassKind::MinusTwo => -2,
        }
    }

    pub fn canonical_degree(self) -> i64 {
        match self {
            ClassKind::MinusOne => -1,
            ClassKind::Fiber => -2,
            ClassKind::GenusOneNeg => 1,
            ClassKind::MinusTwo => 0,
        }
    }

    /// Whether `c` satisfies the two defining equations of the kind.
    pub fn satisfied_by(self, c: &DivisorClass) -> bool {
        self.violation(c).is_none()
    }

    /// Names the first defining equation `c` fails, if any.
    pub fn violation(self, c: &DivisorClass) -> Option<String> {
        let sq = self_intersection(c);
        if sq != BigInt::from(self.self_intersection()) {
            return Some(format!("C^2 = {sq}, expected {}", self.self_intersection()));
        }
        let kc = canonical_degree(c);
        if kc != BigInt::from(self.canonical_degree()) {
            return Some(format!("K.C = {kc}, expected {}", self.canonical_degree()));
        }
        None
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassKind::MinusOne => "minus-one",
            ClassKind::Fiber => "fiber",
            ClassKind::GenusOneNeg => "genus-one-neg",
            ClassKind::MinusTwo => "minus-two",
        }
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown class kind {s:?} (expected minus-one, fiber, genus-one-neg or minus-two)"
                ))
            })
    }
}

/// Checks the orientation convention: `d >= 0`; for `d >= 1` all
/// multiplicities are nonnegative; at `d = 0` only the exceptional classes
/// `E_i` occur, and only for [`ClassKind::MinusOne`].
pub(crate) fn orientation_violation(kind: ClassKind, c: &DivisorClass) -> Option<String> {
    if c.d().is_negative() {
        return Some(format!("negative degree {}", c.d()));
    }
    if c.d().is_zero() {
        let is_exceptional = c.m().iter().filter(|x| !x.is_zero()).count() == 1
            && c.m().iter().any(|x| *x == -BigInt::one());
        if kind != ClassKind::MinusOne || !is_exceptional {
            return Some("degree-0 classes must be exceptional classes E_i".into());
        }
        return None;
    }
    if c.m().iter().any(Signed::is_negative) {
        return Some("negative multiplicity at positive degree".into());
    }
    None
}

/// Permutation orbits of a class family up to a degree bound, one
/// representative (multiplicities sorted descending) per orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCatalog {
    r: usize,
    max_degree: u32,
    kind: ClassKind,
    orbits: Vec<(DivisorClass, BigUint)>,
}

impl OrbitCatalog {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    /// Representatives with their orbit sizes, in catalog order of the
    /// representatives.
    pub fn orbits(&self) -> &[(DivisorClass, BigUint)] {
        &self.orbits
    }

    pub fn representatives(&self) -> impl Iterator<Item = &DivisorClass> {
        self.orbits.iter().map(|(c, _)| c)
    }

    /// Number of classes in the full permutation expansion.
    pub fn total(&self) -> BigUint {
        self.orbits.iter().map(|(_, n)| n).sum()
    }

    /// Lazily walks every class of the expansion, orbit by orbit.
    pub fn classes(&self) -> impl Iterator<Item = DivisorClass> + '_ {
        self.orbits
            .iter()
            .flat_map(|(rep, _)| search::permutations_of(rep))
    }

    /// Total size of the orbits whose representative satisfies `pred`. Only
    /// meaningful for predicates invariant under permuting the points.
    pub fn count_where(&self, mut pred: impl FnMut(&DivisorClass) -> bool) -> BigUint {
        self.orbits
            .iter()
            .filter(|(c, _)| pred(c))
            .map(|(_, n)| n)
            .sum()
    }

    /// The materialized catalog with all permutations, sorted.
    pub fn expand(&self) -> ClassCatalog {
        let mut classes: Vec<DivisorClass> = self.classes().collect();
        classes.sort_unstable();
        ClassCatalog::from_sorted_unchecked(self.r, self.max_degree, self.kind, classes)
    }

    pub(crate) fn from_orbits(
        r: usize,
        max_degree: u32,
        kind: ClassKind,
        mut orbits: Vec<(DivisorClass, BigUint)>,
    ) -> Self {
        orbits.sort_by(|a, b| a.0.cmp(&b.0));
        orbits.dedup_by(|a, b| a.0 == b.0);
        Self {
            r,
            max_degree,
            kind,
            orbits,
        }
    }
}

/// All classes of `kind` with `0 <= d <= max_degree`, via the Diophantine
/// search, grouped into permutation orbits. (-1)-classes must in addition
/// reduce to an exceptional class.
pub fn enumerate_orbits(r: usize, max_degree: u32, kind: ClassKind) -> Result<OrbitCatalog> {
    let mut orbits = enumerate_numerical_orbits(r, max_degree, kind)?;
    if kind == ClassKind::MinusOne {
        orbits.orbits.retain(|(rep, _)| is_minus_one_class(rep));
    }
    Ok(orbits)
}

/// Every solution of the two defining equations of `kind`, including the
/// (-1)-solutions that do not reduce to an exceptional class.
pub fn enumerate_numerical_orbits(
    r: usize,
    max_degree: u32,
    kind: ClassKind,
) -> Result<OrbitCatalog> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let orbits = search::representatives(r, max_degree, kind)
        .into_iter()
        .map(|rep| {
            let n = orbit_size(rep.m());
            (rep, n)
        })
        .collect();
    Ok(OrbitCatalog::from_orbits(r, max_degree, kind, orbits))
}

/// All classes of `kind` with `0 <= d <= max_degree` (all coordinate
/// placements included), sorted in catalog order.
pub fn enumerate_kind(r: usize, max_degree: u32, kind: ClassKind) -> Result<ClassCatalog> {
    Ok(enumerate_orbits(r, max_degree, kind)?.expand())
}
