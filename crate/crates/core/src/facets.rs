//! K-negative facet structures: reductions to the plane, conic-bundle facets,
//! and the span test behind the extremality certificate.
//!
//! All searches are relative to the catalogs they are given. For `r >= 9`
//! the set of (-1)-classes is infinite, so a facet found incomplete may just
//! sit beyond the degree bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cone::{q_position, QPosition};
use crate::enumeration::{enumerate_kind, is_minus_one_class, ClassCatalog, ClassKind};
use crate::error::{Error, Result};
use crate::lattice::{
    canonical_degree, normalize_ray, pairing, self_intersection, unchecked_pairing, DivisorClass,
    Ray,
};

/// `r` pairwise orthogonal (-1)-classes: the exceptional curves of a
/// birational morphism to the plane.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Reduction {
    classes: Vec<DivisorClass>,
}

impl Reduction {
    /// Validates and sorts the members.
    pub fn new(mut classes: Vec<DivisorClass>) -> Result<Self> {
        classes.sort();
        let r = classes.first().map(DivisorClass::r).unwrap_or(0);
        if classes.len() != r {
            return Err(Error::InvalidArgument(format!(
                "a reduction over r = {r} points needs {r} classes, got {}",
                classes.len()
            )));
        }
        for (i, a) in classes.iter().enumerate() {
            if let Some(v) = ClassKind::MinusOne.violation(a) {
                return Err(Error::Kind {
                    class: a.to_string(),
                    kind: ClassKind::MinusOne.to_string(),
                    reason: v,
                });
            }
            if !is_minus_one_class(a) {
                return Err(Error::Kind {
                    class: a.to_string(),
                    kind: ClassKind::MinusOne.to_string(),
                    reason: "does not reduce to an exceptional class".into(),
                });
            }
            for b in &classes[i + 1..] {
                let p = pairing(a, b)?;
                if !p.is_zero() {
                    return Err(Error::InvalidArgument(format!(
                        "{a} . {b} = {p}, expected 0"
                    )));
                }
            }
        }
        Ok(Self { classes })
    }

    pub fn classes(&self) -> &[DivisorClass] {
        &self.classes
    }

    /// Intersection matrix of the members; `-Id` for a valid reduction.
    pub fn gram_matrix(&self) -> Vec<Vec<BigInt>> {
        self.classes
            .iter()
            .map(|a| {
                self.classes
                    .iter()
                    .map(|b| unchecked_pairing(a, b))
                    .collect()
            })
            .collect()
    }
}

struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        Self(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64)
                .filter(move |b| bits & (1 << b) != 0)
                .map(move |b| w * 64 + b)
        })
    }
}

/// All `r`-element sets of pairwise orthogonal classes in a (-1)-catalog,
/// by backtracking over the orthogonality graph. Output is sorted.
pub fn find_reductions(catalog: &ClassCatalog) -> Result<Vec<Reduction>> {
    if catalog.kind() != ClassKind::MinusOne {
        return Err(Error::InvalidArgument(format!(
            "reductions need a minus-one catalog, got {}",
            catalog.kind()
        )));
    }
    let classes = catalog.classes();
    let n = classes.len();
    let r = catalog.r();
    // later[i]: the j > i orthogonal to i
    let later: Vec<BitSet> = (0..n)
        .map(|i| {
            let mut s = BitSet::new(n);
            for j in i + 1..n {
                if unchecked_pairing(&classes[i], &classes[j]).is_zero() {
                    s.insert(j);
                }
            }
            s
        })
        .collect();

    let mut found = Vec::new();
    let mut chosen = Vec::with_capacity(r);
    fn extend(
        later: &[BitSet],
        candidates: &BitSet,
        r: usize,
        chosen: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == r {
            found.push(chosen.clone());
            return;
        }
        if chosen.len() + candidates.len() < r {
            return;
        }
        for i in candidates.iter() {
            chosen.push(i);
            extend(later, &candidates.and(&later[i]), r, chosen, found);
            chosen.pop();
        }
    }
    let mut all = BitSet::new(n);
    (0..n).for_each(|i| all.insert(i));
    let mut idx_sets = Vec::new();
    extend(&later, &all, r, &mut chosen, &mut idx_sets);
    for set in idx_sets {
        found.push(Reduction {
            classes: set.into_iter().map(|i| classes[i].clone()).collect(),
        });
    }
    found.sort();
    Ok(found)
}

/// The (-1)-classes orthogonal to a fiber class `f`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConicFacet {
    pub fiber: DivisorClass,
    pub rays: Vec<DivisorClass>,
}

impl ConicFacet {
    /// `2(r - 1)`, the ray count of a conic-bundle facet.
    pub fn expected_size(&self) -> usize {
        2 * (self.fiber.r() - 1)
    }

    /// Whether the catalog supplied all `2(r - 1)` rays.
    pub fn is_complete(&self) -> bool {
        self.rays.len() == self.expected_size()
    }
}

/// For each fiber class, collects the catalog classes orthogonal to it.
pub fn conic_facets(catalog: &ClassCatalog, fibers: &ClassCatalog) -> Result<Vec<ConicFacet>> {
    if catalog.r() != fibers.r() {
        return Err(Error::DimensionMismatch {
            left: catalog.r(),
            right: fibers.r(),
        });
    }
    Ok(fibers
        .iter()
        .map(|f| ConicFacet {
            fiber: f.clone(),
            rays: catalog
                .iter()
                .filter(|c| unchecked_pairing(c, f).is_zero())
                .cloned()
                .collect(),
        })
        .collect())
}

/// Nonnegative `(a, b)` with `target = a u + b v`, if any exist.
///
/// When `u` and `v` are independent the coefficients are unique; otherwise a
/// nonnegative choice is returned whenever one exists.
pub fn nonnegative_span_coefficients(
    target: &DivisorClass,
    u: &DivisorClass,
    v: &DivisorClass,
) -> Result<Option<(BigRational, BigRational)>> {
    pairing(target, u)?;
    pairing(target, v)?;
    let t: Vec<&BigInt> = target.coords().collect();
    let x: Vec<&BigInt> = u.coords().collect();
    let y: Vec<&BigInt> = v.coords().collect();
    let dim = t.len();
    let check = |a: &BigRational, b: &BigRational| {
        (0..dim).all(|i| {
            a * BigRational::from_integer(x[i].clone())
                + b * BigRational::from_integer(y[i].clone())
                == BigRational::from_integer(t[i].clone())
        })
    };
    let nonneg =
        |a: BigRational, b: BigRational| (!a.is_negative() && !b.is_negative()).then_some((a, b));
    for p in 0..dim {
        for q in p + 1..dim {
            let det = x[p] * y[q] - x[q] * y[p];
            if det.is_zero() {
                continue;
            }
            let a = BigRational::new(t[p] * y[q] - t[q] * y[p], det.clone());
            let b = BigRational::new(x[p] * t[q] - x[q] * t[p], det);
            return Ok(if check(&a, &b) { nonneg(a, b) } else { None });
        }
    }
    // u and v are proportional (or one of them vanishes)
    let multiple_of = |w: &[&BigInt]| -> Option<BigRational> {
        let p = w.iter().position(|c| !c.is_zero())?;
        let s = BigRational::new(t[p].clone(), w[p].clone());
        (0..dim)
            .all(|i| {
                &s * BigRational::from_integer(w[i].clone())
                    == BigRational::from_integer(t[i].clone())
            })
            .then_some(s)
    };
    if target.is_zero() {
        return Ok(Some((BigRational::zero(), BigRational::zero())));
    }
    if let Some(s) = multiple_of(&x) {
        if !s.is_negative() {
            return Ok(Some((s, BigRational::zero())));
        }
    }
    if let Some(s) = multiple_of(&y) {
        if !s.is_negative() {
            return Ok(Some((BigRational::zero(), s)));
        }
    }
    Ok(None)
}

/// Necessary condition for `alpha` on `boundary(Q) cap K^perp` to span an
/// extremal ray: `alpha` lies in no cone `R(-K) + R(E)` with `E` in the
/// catalog. Relative to the catalog's degree bound; not a proof.
pub fn extremal_candidate(alpha: &DivisorClass, catalog: &ClassCatalog) -> Result<bool> {
    let r = alpha.r();
    if r < 10 {
        return Err(Error::Precondition(format!("r >= 10 fails: r = {r}")));
    }
    if catalog.r() != r {
        return Err(Error::DimensionMismatch {
            left: r,
            right: catalog.r(),
        });
    }
    let sq = self_intersection(alpha);
    if !sq.is_zero() {
        return Err(Error::Precondition(format!(
            "alpha^2 = 0 fails: alpha^2 = {sq}"
        )));
    }
    let kd = canonical_degree(alpha);
    if !kd.is_zero() {
        return Err(Error::Precondition(format!(
            "K.alpha = 0 fails: K.alpha = {kd}"
        )));
    }
    if !alpha.is_primitive() {
        return Err(Error::Precondition(format!(
            "alpha is not primitive: {alpha}"
        )));
    }
    let minus_k = -&DivisorClass::canonical(r);
    for e in catalog {
        if nonnegative_span_coefficients(alpha, &minus_k, e)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Where `R(-K) + F'` meets the boundary of `Q`, for a face `F'` spanned by
/// `r - 9` pairwise orthogonal (-1)-classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubfaceRay {
    pub face: Vec<DivisorClass>,
    /// `-K + sum E`, the pull-back of the anticanonical curve of the
    /// contraction to nine points.
    pub curve: DivisorClass,
    pub ray: Ray,
}

impl SubfaceRay {
    /// The curve class is isotropic, in `Q`, and orthogonal to `-K` and to
    /// every face member.
    pub fn verify(&self) -> bool {
        let r = self.curve.r();
        let minus_k = -&DivisorClass::canonical(r);
        self_intersection(&self.curve).is_zero()
            && matches!(q_position(&self.curve), Ok(QPosition::Boundary))
            && unchecked_pairing(&self.curve, &minus_k).is_zero()
            && self
                .face
                .iter()
                .all(|e| unchecked_pairing(&self.curve, e).is_zero())
    }
}

pub fn subface_boundary_ray(face: &[DivisorClass]) -> Result<SubfaceRay> {
    let r = face
        .first()
        .map(DivisorClass::r)
        .ok_or_else(|| Error::InvalidArgument("empty face".into()))?;
    if r < 10 || face.len() != r - 9 {
        return Err(Error::InvalidArgument(format!(
            "a sub-face over r = {r} points needs r - 9 >= 1 classes, got {}",
            face.len()
        )));
    }
    for (i, a) in face.iter().enumerate() {
        if !is_minus_one_class(a) {
            return Err(Error::InvalidArgument(format!("{a} is not a (-1)-class")));
        }
        for b in &face[i + 1..] {
            if !pairing(a, b)?.is_zero() {
                return Err(Error::InvalidArgument(format!("{a} and {b} meet")));
            }
        }
    }
    let mut curve = -&DivisorClass::canonical(r);
    for e in face {
        curve = curve.checked_add(e)?;
    }
    let ray = normalize_ray(&curve)?;
    Ok(SubfaceRay {
        face: face.to_vec(),
        curve,
        ray,
    })
}

/// Counts from the two facet searches at a degree bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FacetReport {
    pub r: usize,
    pub max_degree: u32,
    pub reductions: Vec<Reduction>,
    pub conic_facets: Vec<ConicFacet>,
    /// Single-class sub-faces at `r = 10`, one per class used by a reduction.
    pub subfaces: Vec<SubfaceRay>,
}

impl FacetReport {
    pub fn complete_conic_facets(&self) -> usize {
        self.conic_facets.iter().filter(|f| f.is_complete()).count()
    }
}

pub fn facet_report(r: usize, max_degree: u32) -> Result<FacetReport> {
    let minus_one = enumerate_kind(r, max_degree, ClassKind::MinusOne)?;
    let fibers = enumerate_kind(r, max_degree, ClassKind::Fiber)?;
    let reductions = find_reductions(&minus_one)?;
    let conic = conic_facets(&minus_one, &fibers)?;
    let mut subfaces = Vec::new();
    if r == 10 {
        let mut members: Vec<&DivisorClass> =
            reductions.iter().flat_map(|red| red.classes()).collect();
        members.sort();
        members.dedup();
        for e in members {
            subfaces.push(subface_boundary_ray(std::slice::from_ref(e))?);
        }
    }
    Ok(FacetReport {
        r,
        max_degree,
        reductions,
        conic_facets: conic,
        subfaces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::cremona;
    use num_traits::One;

    fn c(s: &str) -> DivisorClass {
        s.parse().unwrap()
    }

    fn minus_one(r: usize, dmax: u32) -> ClassCatalog {
        enumerate_kind(r, dmax, ClassKind::MinusOne).unwrap()
    }

    #[test]
    fn reductions_at_two_and_three_points() {
        let two = find_reductions(&minus_one(2, 1)).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].classes(), [c("0;0,-1"), c("0;-1,0")]);

        let three = find_reductions(&minus_one(3, 1)).unwrap();
        assert_eq!(three.len(), 2);
        assert_eq!(
            three[0].classes(),
            [c("0;0,0,-1"), c("0;0,-1,0"), c("0;-1,0,0")]
        );
        assert_eq!(
            three[1].classes(),
            [c("1;1,1,0"), c("1;1,0,1"), c("1;0,1,1")]
        );
    }

    #[test]
    fn reductions_are_relative_to_the_catalog() {
        let cat = minus_one(3, 1).filtered(|x| x != &c("1;1,1,0"));
        assert_eq!(find_reductions(&cat).unwrap().len(), 1);
        let fibers = enumerate_kind(3, 1, ClassKind::Fiber).unwrap();
        assert!(find_reductions(&fibers).is_err());
    }

    #[test]
    fn conic_facets_at_three_points() {
        let fibers = enumerate_kind(3, 2, ClassKind::Fiber).unwrap();
        let facets = conic_facets(&minus_one(3, 1), &fibers).unwrap();
        assert_eq!(facets.len(), 3);
        assert!(facets.iter().all(|f| f.rays.len() == 4 && f.is_complete()));
        let f = facets.iter().find(|f| f.fiber == c("1;1,0,0")).unwrap();
        let mut want = vec![c("0;0,-1,0"), c("0;0,0,-1"), c("1;1,1,0"), c("1;1,0,1")];
        want.sort();
        assert_eq!(f.rays, want);

        let empty = minus_one(3, 1).filtered(|_| false);
        let facets = conic_facets(&empty, &fibers).unwrap();
        assert!(facets.iter().all(|f| f.rays.is_empty() && !f.is_complete()));
        assert!(conic_facets(&minus_one(4, 1), &fibers).is_err());
    }

    #[test]
    fn gram_and_cremona_images() {
        let cat = minus_one(6, 6);
        for red in find_reductions(&cat).unwrap() {
            let g = red.gram_matrix();
            for (i, row) in g.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    assert_eq!(*x, BigInt::from(if i == j { -1 } else { 0 }));
                }
            }
            let image: Vec<_> = red
                .classes()
                .iter()
                .map(|x| cremona(x, 1, 2, 3).unwrap())
                .collect();
            assert!(image.iter().all(|x| cat.contains(x)));
            assert!(Reduction::new(image).is_ok());
        }
    }

    #[test]
    fn reduction_validation() {
        assert!(Reduction::new(vec![c("0;-1,0"), c("1;1,1")]).is_err());
        assert!(Reduction::new(vec![c("0;-1,0")]).is_err());
        assert!(Reduction::new(vec![c("0;0,-1"), c("0;-1,0")]).is_ok());
    }

    #[test]
    fn span_coefficients() {
        let alpha = c("3;0,1,1,1,1,1,1,1,1,1");
        let mk = -&DivisorClass::canonical(10);
        let e1 = DivisorClass::exceptional(10, 1).unwrap();
        let (a, b) = nonnegative_span_coefficients(&alpha, &mk, &e1)
            .unwrap()
            .unwrap();
        assert_eq!((a, b), (BigRational::one(), BigRational::one()));
        let e2 = DivisorClass::exceptional(10, 2).unwrap();
        assert!(nonnegative_span_coefficients(&alpha, &mk, &e2)
            .unwrap()
            .is_none());
        // negative coefficient: alpha = -K - E_1 is in the span but not the cone
        let other = &mk - &e1;
        assert!(nonnegative_span_coefficients(&other, &mk, &e1)
            .unwrap()
            .is_none());
        // proportional generators
        let twice = &BigInt::from(2) * &e1;
        let got = nonnegative_span_coefficients(&twice, &e1, &twice)
            .unwrap()
            .unwrap();
        assert_eq!(got.0, BigRational::from_integer(2.into()));
    }

    #[test]
    fn extremal_candidate_examples() {
        let cat = minus_one(10, 4);
        let alpha = c("3;0,1,1,1,1,1,1,1,1,1");
        assert!(!extremal_candidate(&alpha, &cat).unwrap());
        let err = extremal_candidate(&DivisorClass::line(10), &cat).unwrap_err();
        assert!(err.to_string().contains("alpha^2 = 0"), "{err}");
        let not_k_perp = c("1;1,0,0,0,0,0,0,0,0,0");
        assert!(extremal_candidate(&not_k_perp, &cat)
            .unwrap_err()
            .to_string()
            .contains("K.alpha"));
        assert!(extremal_candidate(&c("1;1,0,0,0,0,0,0,0,0"), &minus_one(9, 2)).is_err());
    }

    #[test]
    fn subfaces_at_ten_points() {
        let e1 = DivisorClass::exceptional(10, 1).unwrap();
        let sub = subface_boundary_ray(std::slice::from_ref(&e1)).unwrap();
        assert_eq!(sub.curve, c("3;0,1,1,1,1,1,1,1,1,1"));
        assert!(sub.verify());
        assert!(subface_boundary_ray(&[e1.clone(), e1]).is_err());
        let e = DivisorClass::exceptional(11, 1).unwrap();
        assert!(subface_boundary_ray(std::slice::from_ref(&e)).is_err());
        let f = DivisorClass::exceptional(11, 2).unwrap();
        let sub11 = subface_boundary_ray(&[e, f]).unwrap();
        assert!(sub11.verify());
    }

    #[test]
    fn small_reports() {
        let three = facet_report(3, 1).unwrap();
        assert_eq!(three.reductions.len(), 2);
        assert_eq!(three.complete_conic_facets(), 3);
        let two = facet_report(2, 1).unwrap();
        assert_eq!(two.reductions.len(), 1);
        assert_eq!(two.conic_facets.len(), 2);
        assert_eq!(two.complete_conic_facets(), 2);
        let four = facet_report(4, 2).unwrap();
        assert_eq!(four.reductions.len(), 5);
    }
}
