//! Recognition of projective spaces and projective bundles among complete
//! non-singular multi-fans with `T_0 = 1` and all weights `1`.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::multifan::MultiFan;

use super::hat::solve_in_subspace;
use super::todd;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BundleKind {
    /// `P^{n-1}`-bundle over `P^1`: `v_1 + ... + v_n = 0` and
    /// `v_0 + v_{n+1} + sum_{i>=2} k_i v_i = 0`.
    OverProjectiveLine,
    /// `P^1`-bundle over `P^{n-1}`: `v_1 + ... + v_n + k v_{n+1} = 0` and
    /// `v_0 + v_{n+1} = 0`.
    LineOverProjectiveSpace,
}

/// Ray labels follow the relations of the kind: `base` holds `v_0` and
/// `v_{n+1}`, `fiber` holds `v_1, ..., v_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleDescriptor {
    pub kind: BundleKind,
    /// Canonical twists: `k_2..k_n` from [`canonical_twists`] for
    /// `OverProjectiveLine`, `[|k|]` for `LineOverProjectiveSpace`.
    pub twists: Vec<i64>,
    pub base: [usize; 2],
    pub fiber: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    ProjectiveSpace(usize),
    Bundle(BundleDescriptor),
    None,
}

/// Normal form of `k_2..k_n` under relabeling of the fiber rays: the
/// multiset `{0, k_2, ..., k_n}` is only defined up to translation, so it
/// is sorted, shifted to start at `0`, and the leading `0` dropped.
pub fn canonical_twists(twists: &[i64]) -> Vec<i64> {
    let mut all: Vec<i64> = std::iter::once(0).chain(twists.iter().copied()).collect();
    all.sort_unstable();
    let min = all[0];
    all.into_iter().skip(1).map(|k| k - min).collect()
}

fn rational(v: &LatticeVector) -> Vec<BigRational> {
    v.to_rational()
}

fn sum(vs: &[&LatticeVector], n: usize) -> LatticeVector {
    vs.iter().fold(LatticeVector::zero(n), |a, b| a.add(b))
}

/// Every top simplex holds exactly one ray of `pair`, and there are `2n`.
fn tops_split(fan: &MultiFan, pair: [usize; 2]) -> bool {
    let n = fan.rank();
    fan.tops().len() == 2 * n
        && fan.tops().iter().all(|t| t.rays.len() == n && t.rays.iter().filter(|i| pair.contains(i)).count() == 1)
}

fn over_line(fan: &MultiFan, pair: [usize; 2], fiber: &[usize]) -> Option<Vec<i64>> {
    let n = fan.rank();
    let rays: Vec<&LatticeVector> = fiber.iter().map(|&i| fan.ray(i)).collect();
    if !sum(&rays, n).is_zero() {
        return None;
    }
    // -(v_0 + v_{n+1}) in terms of v_2..v_n
    let target = LatticeVector::zero(n).sub(&sum(&[fan.ray(pair[0]), fan.ray(pair[1])], n));
    let basis: Vec<Vec<BigRational>> = rays[1..].iter().map(|v| rational(v)).collect();
    let c = solve_in_subspace(&basis, &rational(&target)).ok()?;
    c.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect()
}

fn line_over_space(fan: &MultiFan, pair: [usize; 2], fiber: &[usize]) -> Option<i64> {
    let n = fan.rank();
    let (a, b) = (fan.ray(pair[0]), fan.ray(pair[1]));
    if !a.add(b).is_zero() {
        return None;
    }
    let rays: Vec<&LatticeVector> = fiber.iter().map(|&i| fan.ray(i)).collect();
    // sum v_i = -k v_{n+1}
    let s = sum(&rays, n);
    let c = solve_in_subspace(&[rational(b)], &rational(&s)).ok()?;
    let k = &c[0];
    if k.is_integer() { k.to_integer().to_i64().map(i64::abs) } else { None }
}

fn bundle_search(fan: &MultiFan) -> Option<BundleDescriptor> {
    let m = fan.rays().len();
    let pairs: Vec<[usize; 2]> = (0..m).flat_map(|a| (a + 1..m).map(move |b| [a, b])).collect();
    let split = |pair: [usize; 2]| -> Vec<usize> { (0..m).filter(|i| !pair.contains(i)).collect() };
    for &pair in &pairs {
        if !tops_split(fan, pair) {
            continue;
        }
        let fiber = split(pair);
        if let Some(k) = over_line(fan, pair, &fiber) {
            return Some(BundleDescriptor {
                kind: BundleKind::OverProjectiveLine,
                twists: canonical_twists(&k),
                base: pair,
                fiber,
            });
        }
    }
    for &pair in &pairs {
        if !tops_split(fan, pair) {
            continue;
        }
        let fiber = split(pair);
        if let Some(k) = line_over_space(fan, pair, &fiber) {
            return Some(BundleDescriptor { kind: BundleKind::LineOverProjectiveSpace, twists: vec![k], base: pair, fiber });
        }
    }
    None
}

/// Projective space when there are `n + 1` rays and `n + 1` top simplices
/// with the rays summing to zero; a projective bundle when there are
/// `n + 2` rays and `2n` top simplices (and `n(n+3)/2` edges for `n >= 3`)
/// and a labeling satisfies one of the two bundle relations.
///
/// Fans with a weight other than `1` classify as `None`. Singular,
/// incomplete or degree-`!= 1` fans with unit weights are rejected.
pub fn classify_extremal(fan: &MultiFan) -> Result<Classification> {
    if fan.tops().iter().any(|t| t.weight() != 1) {
        return Ok(Classification::None);
    }
    if !fan.is_nonsingular() {
        return Err(Error::PreconditionViolated("fan is singular".into()));
    }
    if !fan.is_complete() {
        return Err(Error::PreconditionViolated("fan is not complete".into()));
    }
    if fan.degree()? != 1 {
        return Err(Error::PreconditionViolated("degree is not 1".into()));
    }
    let n = fan.rank();
    let rays = fan.simplices_of_size(1).len();
    let tops = fan.tops().len();
    if rays == n + 1 && tops == n + 1 {
        let all: Vec<&LatticeVector> = fan.rays().iter().collect();
        return Ok(if sum(&all, n).is_zero() { Classification::ProjectiveSpace(n) } else { Classification::None });
    }
    if n >= 2 && rays == n + 2 && tops == 2 * n {
        if n >= 3 && fan.simplices_of_size(2).len() != n * (n + 3) / 2 {
            return Ok(Classification::None);
        }
        return Ok(bundle_search(fan).map_or(Classification::None, Classification::Bundle));
    }
    Ok(Classification::None)
}

/// `N_max <= n + 1` for a complete non-singular fan with `T_0 != 0`;
/// vacuous when `T_0 = 0`.
pub fn chern_bound_holds(fan: &MultiFan) -> Result<bool> {
    if !fan.is_nonsingular() {
        return Err(Error::PreconditionViolated("fan is singular".into()));
    }
    if todd(fan)? == 0 {
        return Ok(true);
    }
    let bound = fan.rank() as u64 + 1;
    Ok(fan.c1_divisibility().n_max.is_some_and(|n| n <= bound))
}
