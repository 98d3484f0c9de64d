//! Bounded search for sorted multiplicity vectors.
//!
//! For a kind with `C^2 = s` and `K.C = k`, a class `(d; m)` satisfies
//! `sum m_i = 3d + k` and `sum m_i^2 = d^2 - s`. We enumerate non-increasing
//! vectors of nonnegative integers with these two sums, one degree at a time,
//! in machine integers; the degree bound keeps every intermediate far below
//! `i128` range.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use super::ClassKind;
use crate::lattice::DivisorClass;

/// Sorted representatives (multiplicities descending) of every class of
/// `kind` with `0 <= d <= max_degree`.
pub(super) fn representatives(r: usize, max_degree: u32, kind: ClassKind) -> Vec<DivisorClass> {
    let mut out = Vec::new();
    if kind == ClassKind::MinusOne {
        // degree 0: the exceptional classes, a single orbit
        let mut m = vec![0i128; r];
        m[r - 1] = -1;
        out.push(to_class(0, &m));
    }
    for d in 1..=i128::from(max_degree) {
        let sum = 3 * d + i128::from(kind.canonical_degree());
        let squares = d * d - i128::from(kind.self_intersection());
        if sum < 0 {
            continue;
        }
        let mut buf = Vec::with_capacity(r);
        sorted_vectors(r, d, sum, squares, &mut buf, &mut |m| {
            let c = to_class(d, m);
            if c.is_primitive() {
                out.push(c);
            }
        });
    }
    out
}

/// Calls `emit` on every non-increasing vector of length `len` with entries in
/// `0..=cap`, the given sum and sum of squares, in descending lexicographic
/// order.
fn sorted_vectors(
    len: usize,
    cap: i128,
    sum: i128,
    squares: i128,
    buf: &mut Vec<i128>,
    emit: &mut dyn FnMut(&[i128]),
) {
    let slots = (len - buf.len()) as i128;
    if slots == 0 {
        if sum == 0 && squares == 0 {
            emit(buf);
        }
        return;
    }
    let top = cap.min(sum).min(isqrt(squares));
    for v in (0..=top).rev() {
        let rest_sum = sum - v;
        let rest_sq = squares - v * v;
        let rest_slots = slots - 1;
        // the remaining entries are at most v
        if rest_sum > rest_slots * v {
            break;
        }
        if rest_sq > rest_slots * v * v || rest_sq < rest_sum || rest_sq > v * rest_sum {
            continue;
        }
        if rest_sum * rest_sum > rest_slots * rest_sq {
            continue;
        }
        buf.push(v);
        sorted_vectors(len, v, rest_sum, rest_sq, buf, emit);
        buf.pop();
    }
}

fn isqrt(n: i128) -> i128 {
    if n <= 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

fn to_class(d: i128, m: &[i128]) -> DivisorClass {
    DivisorClass::new(
        BigInt::from(d),
        m.iter().map(|&x| BigInt::from(x)).collect(),
    )
    .expect("nonempty multiplicities")
}

/// Steps `v` to the previous distinct permutation in lexicographic order;
/// returns `false` once `v` is the smallest (ascending) arrangement.
fn prev_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] <= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] >= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All distinct rearrangements of `values`, in descending lexicographic order.
pub fn distinct_permutations<T: Ord + Clone>(values: &[T]) -> Vec<Vec<T>> {
    let mut cur = values.to_vec();
    cur.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = vec![cur.clone()];
    while prev_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

/// Lazily yields every class obtained by permuting the multiplicities of
/// `rep`, in catalog order.
pub(super) fn permutations_of(rep: &DivisorClass) -> impl Iterator<Item = DivisorClass> + '_ {
    let mut cur: Vec<BigInt> = rep.m().to_vec();
    cur.sort_unstable_by(|a, b| b.cmp(a));
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let c = DivisorClass::new(rep.d().clone(), cur.clone()).expect("nonempty");
        done = !prev_permutation(&mut cur);
        Some(c)
    })
}

/// Number of distinct rearrangements of `values`: `n! / prod(mult!)`.
pub fn orbit_size<T: Ord + Clone>(values: &[T]) -> BigUint {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let mut total = BigUint::one();
    let mut placed = 0u64;
    // multiply in C(placed + k, k) one factor at a time; each partial product is integral
    for run in sorted.chunk_by(|a, b| a == b) {
        for k in 1..=run.len() as u64 {
            total *= placed + k;
            total /= k;
        }
        placed += run.len() as u64;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_of_multiset() {
        let p = distinct_permutations(&[1, 0, 1]);
        assert_eq!(p, vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(distinct_permutations(&[2, 2]), vec![vec![2, 2]]);
        assert_eq!(distinct_permutations(&[3, 1, 2]).len(), 6);
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit_size(&[1, 1, 0]), BigUint::from(3u32));
        assert_eq!(orbit_size(&[0, 1, 2, 3]), BigUint::from(24u32));
        assert_eq!(
            orbit_size(&[2, 1, 1, 1, 1, 1, 1, 0, 0]),
            BigUint::from(252u32)
        );
        assert_eq!(orbit_size(&[5; 7]), BigUint::one());
        for v in [
            vec![3, 1, 1, 0, 0, 0],
            vec![4, 4, 2, 2, 2, 1, 0],
            vec![1, 2, 3, 1, 2, 3],
        ] {
            assert_eq!(
                orbit_size(&v),
                BigUint::from(distinct_permutations(&v).len())
            );
        }
    }

    #[test]
    fn sorted_vectors_brute_force() {
        // compare against a naive scan over all vectors with entries <= cap
        for len in 1..=5usize {
            for cap in 0..=4i128 {
                for sum in 0..=12i128 {
                    for squares in 0..=20i128 {
                        let mut got = Vec::new();
                        sorted_vectors(len, cap, sum, squares, &mut Vec::new(), &mut |m| {
                            got.push(m.to_vec())
                        });
                        let mut want = Vec::new();
                        let total = (cap + 1).pow(len as u32);
                        for code in 0..total {
                            let mut x = code;
                            let mut v = Vec::new();
                            for _ in 0..len {
                                v.push(x % (cap + 1));
                                x /= cap + 1;
                            }
                            let sorted = v.windows(2).all(|w| w[0] >= w[1]);
                            if sorted
                                && v.iter().sum::<i128>() == sum
                                && v.iter().map(|x| x * x).sum::<i128>() == squares
                            {
                                want.push(v);
                            }
                        }
                        want.sort_by(|a, b| b.cmp(a));
                        assert_eq!(got, want, "len={len} cap={cap} sum={sum} sq={squares}");
                    }
                }
            }
        }
    }
}
