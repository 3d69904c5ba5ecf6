//! Named fans, covering and quotient constructions, and a seeded generator
//! of complete multi-fans.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{rational_inverse, IntMatrix, LatticeVector};
use crate::multifan::{MultiFan, TopSimplex};

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn unit_tops(tops: Vec<Vec<usize>>) -> Vec<TopSimplex> {
    tops.into_iter().map(|rays| TopSimplex { rays, wplus: 1, wminus: 0 }).collect()
}

fn from_rows(rank: usize, rays: &[Vec<i64>], tops: Vec<Vec<usize>>) -> Result<MultiFan> {
    MultiFan::new(rank, rays.iter().map(|r| LatticeVector::from_i64(r)).collect(), unit_tops(tops))
}

/// Fan of `P^n`: rays `e_1, ..., e_n, -(e_1 + ... + e_n)`, every `n`-subset a
/// cone of weight one.
pub fn projective_space_fan(n: usize) -> Result<MultiFan> {
    if n == 0 {
        return Err(Error::PreconditionViolated("projective space needs n >= 1".into()));
    }
    let mut rays: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
    rays.push(vec![-1; n]);
    Ok(from_rows(n, &rays, subsets(n + 1, n))?.with_name(format!("P{n}")))
}

/// `P^2` with generating vectors `e_1, b e_2, -(e_1 + b e_2)`.
pub fn weighted_p2_quotient(b: i64) -> Result<MultiFan> {
    if b < 1 {
        return Err(Error::PreconditionViolated("quotient order must be positive".into()));
    }
    let rays = vec![vec![1, 0], vec![0, b], vec![-1, -b]];
    Ok(from_rows(2, &rays, subsets(3, 2))?.with_name(format!("P2modB:{b}")))
}

/// Hirzebruch surface: rays `a = (1,0)`, `b = (-1,0)`, `c = (0,1)`,
/// `d = (k,-1)` (indices 1..4) with cones `{a,c}, {c,b}, {b,d}, {d,a}`.
pub fn hirzebruch_fan(k: i64) -> Result<MultiFan> {
    let rays = vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![k, -1]];
    let tops = vec![vec![0, 2], vec![1, 2], vec![1, 3], vec![0, 3]];
    Ok(from_rows(2, &rays, tops)?.with_name(format!("hirzebruch:{k}")))
}

/// A `P^{n-r}`-bundle over `P^r` with fiber twists `k_{r+1}, ..., k_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleSpec {
    pub n: usize,
    pub r: usize,
    pub twists: Vec<i64>,
}

impl BundleSpec {
    pub fn new(n: usize, r: usize, twists: Vec<i64>) -> Result<BundleSpec> {
        if r < 1 || r >= n {
            return Err(Error::InvalidBundle(format!("need 1 <= r < n, got n={n}, r={r}")));
        }
        if twists.len() != n - r {
            return Err(Error::InvalidBundle(format!("expected {} twists, got {}", n - r, twists.len())));
        }
        Ok(BundleSpec { n, r, twists })
    }
}

/// Rays are indexed `0..=n+1` (0-based index = label): `v_i = e_i` for
/// `1 <= i <= n`, `v_0 = -(v_1 + ... + v_r) - sum k_i v_i` and
/// `v_{n+1} = -(v_{r+1} + ... + v_n)`. With `I = {0..r}` and
/// `J = {r+1..n+1}`, the cones are `I minus {i}` joined with `J minus {j}`.
pub fn projective_bundle_fan(spec: &BundleSpec) -> Result<MultiFan> {
    let BundleSpec { n, r, twists } = BundleSpec::new(spec.n, spec.r, spec.twists.clone())?;
    let mut rays = Vec::with_capacity(n + 2);
    let mut v0 = vec![0i64; n];
    for c in v0.iter_mut().take(r) {
        *c = -1;
    }
    for (i, k) in twists.iter().enumerate() {
        v0[r + i] = -k;
    }
    rays.push(v0);
    rays.extend((0..n).map(|i| unit(n, i)));
    let mut last = vec![0i64; n];
    for c in last.iter_mut().skip(r) {
        *c = -1;
    }
    rays.push(last);
    let mut tops = Vec::new();
    for i in 0..=r {
        for j in r + 1..=n + 1 {
            let t: Vec<usize> = (0..=n + 1).filter(|&x| x != i && x != j).collect();
            tops.push(t);
        }
    }
    let ks: Vec<String> = twists.iter().map(|k| k.to_string()).collect();
    Ok(from_rows(n, &rays, tops)?.with_name(format!("bundle:n={n},r={r},k={}", ks.join(","))))
}

/// A fan rewritten in coordinates of `L_V`, together with the basis used.
#[derive(Clone, Debug)]
pub struct Covering {
    pub fan: MultiFan,
    /// Basis of `L_V` in the original coordinates.
    pub basis: Vec<LatticeVector>,
}

impl Covering {
    /// Generators of the original lattice in the coordinates of the cover,
    /// suitable for `quotient_fan`.
    pub fn overlattice(&self) -> Vec<Vec<BigRational>> {
        let n = self.basis.len();
        let cols: Vec<Vec<BigRational>> =
            (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(self.basis[j].0[i].clone())).collect()).collect();
        let inv = rational_inverse(&cols).expect("basis is independent");
        (0..n).map(|j| (0..n).map(|i| inv[i][j].clone()).collect()).collect()
    }
}

/// Same simplices and weights with every ray expressed in a basis of `L_V`;
/// the result is non-singular.
pub fn covering_fan(fan: &MultiFan) -> Result<Covering> {
    if !fan.condition_p() {
        return Err(Error::ConditionPViolated);
    }
    let basis = fan.lattice_lv()?;
    let n = fan.rank();
    let cols: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(basis[j].0[i].clone())).collect()).collect();
    let inv = rational_inverse(&cols).ok_or(Error::SingularInput)?;
    let rays = fan
        .rays()
        .iter()
        .map(|v| {
            let c = mat_vec(&inv, v);
            to_integral(&c).ok_or(Error::InvariantViolated("ray outside L_V under condition (P)".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let cover = MultiFan::new(n, rays, fan.tops().to_vec())?;
    if !cover.is_nonsingular() {
        return Err(Error::InvariantViolated("covering fan is singular".into()));
    }
    let cover = match fan.name() {
        Some(name) => cover.with_name(format!("cover({name})")),
        None => cover,
    };
    Ok(Covering { fan: cover, basis })
}

/// For a non-singular fan over `Z^n` and a lattice `L` with the given
/// rational basis, `L` containing `Z^n`: the same rays in coordinates of `L`.
pub fn quotient_fan(fan: &MultiFan, overlattice: &[Vec<BigRational>]) -> Result<MultiFan> {
    let n = fan.rank();
    if !fan.is_nonsingular() {
        return Err(Error::PreconditionViolated("quotient construction needs a non-singular fan".into()));
    }
    if overlattice.len() != n || overlattice.iter().any(|b| b.len() != n) {
        return Err(Error::InfiniteIndex);
    }
    let cols: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| overlattice[j][i].clone()).collect()).collect();
    let inv = rational_inverse(&cols).ok_or(Error::InfiniteIndex)?;
    if inv.iter().flatten().any(|x| !x.is_integer()) {
        return Err(Error::NotOverlattice);
    }
    let rays = fan
        .rays()
        .iter()
        .map(|v| to_integral(&mat_vec(&inv, v)).expect("integral matrix"))
        .collect();
    MultiFan::new(n, rays, fan.tops().to_vec())
}

fn mat_vec(m: &[Vec<BigRational>], v: &LatticeVector) -> Vec<BigRational> {
    m.iter()
        .map(|row| row.iter().zip(&v.0).fold(BigRational::zero(), |s, (a, b)| s + a * BigRational::from_integer(b.clone())))
        .collect()
}

fn to_integral(c: &[BigRational]) -> Option<LatticeVector> {
    c.iter().all(|x| x.is_integer()).then(|| LatticeVector(c.iter().map(|x| x.to_integer()).collect()))
}

/// A matrix in `GL_n(Z)` carrying the rays of `a` to the rays of `b` with the
/// same labels, when `a` and `b` have identical simplices and weights.
pub fn label_preserving_isomorphism(a: &MultiFan, b: &MultiFan) -> Option<IntMatrix> {
    if a.rank() != b.rank() || a.rays().len() != b.rays().len() || a.tops() != b.tops() {
        return None;
    }
    let n = a.rank();
    let t = &a.tops()[0].rays;
    let src: Vec<Vec<BigRational>> =
        (0..n).map(|i| t.iter().map(|&k| BigRational::from_integer(a.ray(k).0[i].clone())).collect()).collect();
    let inv = rational_inverse(&src)?;
    // M = B_t * A_t^{-1}
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x = t
                .iter()
                .enumerate()
                .fold(BigRational::zero(), |s, (c, &k)| s + BigRational::from_integer(b.ray(k).0[i].clone()) * &inv[c][j]);
            if !x.is_integer() {
                return None;
            }
            m.set(i, j, x.to_integer());
        }
    }
    if !m.determinant().abs().is_one() {
        return None;
    }
    (0..a.rays().len()).all(|k| m.apply(a.ray(k)) == *b.ray(k)).then_some(m)
}

/// Signed combination `sum c_j F_j` of fans sharing rays and simplices.
pub fn weighted_combination(parts: &[(MultiFan, i64)]) -> Result<MultiFan> {
    let (first, _) = parts.first().ok_or(Error::EmptyTopDimension)?;
    let mut total = vec![0i64; first.tops().len()];
    for (f, c) in parts {
        if f.rays() != first.rays() || f.tops().len() != first.tops().len() {
            return Err(Error::MalformedFan("combined fans must share rays and simplices".into()));
        }
        for (j, (t, s)) in f.tops().iter().zip(first.tops()).enumerate() {
            if t.rays != s.rays {
                return Err(Error::MalformedFan("combined fans must share rays and simplices".into()));
            }
            total[j] += c * t.weight();
        }
    }
    let weights: Vec<(u64, u64)> =
        total.iter().map(|&w| if w >= 0 { (w as u64, 0) } else { (0, w.unsigned_abs()) }).collect();
    first.with_weights(&weights)
}

/// Disjoint union: rays and simplices of each part side by side.
pub fn disjoint_union(parts: &[MultiFan]) -> Result<MultiFan> {
    let first = parts.first().ok_or(Error::EmptyTopDimension)?;
    let mut rays = Vec::new();
    let mut tops = Vec::new();
    for f in parts {
        if f.rank() != first.rank() {
            return Err(Error::DimensionMismatch { expected: first.rank(), found: f.rank() });
        }
        let off = rays.len();
        rays.extend(f.rays().iter().cloned());
        tops.extend(f.tops().iter().map(|t| TopSimplex {
            rays: t.rays.iter().map(|i| i + off).collect(),
            ..t.clone()
        }));
    }
    MultiFan::new(first.rank(), rays, tops)
}

fn transform(fan: &MultiFan, m: &IntMatrix) -> Result<MultiFan> {
    let rays = fan.rays().iter().map(|v| m.apply(v)).collect();
    MultiFan::new(fan.rank(), rays, fan.tops().to_vec())
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        if rng.gen_bool(0.5) {
            m.set(0, 0, BigInt::from(-1));
        }
        return m;
    }
    for _ in 0..rng.gen_range(0..4) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c: i64 = *[-2, -1, 1, 2].choose(rng).expect("nonempty");
        let mut e = IntMatrix::identity(n);
        e.set(i, j, BigInt::from(c));
        m = e.mul(&m);
    }
    m
}

fn random_base(rng: &mut ChaCha8Rng, rank: usize) -> Result<MultiFan> {
    match rank {
        1 => {
            let a = rng.gen_range(1..=3);
            let b = rng.gen_range(1..=3);
            from_rows(1, &[vec![a], vec![-b]], vec![vec![0], vec![1]])
        }
        2 => match rng.gen_range(0..3) {
            0 => projective_space_fan(2),
            1 => weighted_p2_quotient(rng.gen_range(1..=3)),
            _ => hirzebruch_fan(rng.gen_range(-2..=2)),
        },
        _ => match rng.gen_range(0..3) {
            0 => projective_space_fan(3),
            1 => projective_bundle_fan(&BundleSpec::new(3, 1, vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2)])?),
            _ => projective_bundle_fan(&BundleSpec::new(3, 2, vec![rng.gen_range(-2..=2)])?),
        },
    }
}

/// A complete multi-fan determined by `seed`: rank 1 to 3, a disjoint union
/// of one to three transformed named fans, each carrying weights
/// `(a, b)` with `a != b`, `0 <= a, b <= weight_bound`.
pub fn random_complete_multifan(seed: u64, weight_bound: u64) -> Result<MultiFan> {
    let bound = weight_bound.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = rng.gen_range(1..=3usize);
    let count = rng.gen_range(1..=3usize);
    let mut parts = Vec::with_capacity(count);
    for _ in 0..count {
        let base = random_base(&mut rng, rank)?;
        let m = random_unimodular(&mut rng, rank);
        let moved = transform(&base, &m)?;
        let (a, b) = loop {
            let a = rng.gen_range(0..=bound);
            let b = rng.gen_range(0..=bound);
            if a != b {
                break (a, b);
            }
        };
        let weights: Vec<(u64, u64)> = moved.tops().iter().map(|t| (t.wplus * a, t.wplus * b)).collect();
        parts.push(moved.with_weights(&weights)?);
    }
    Ok(disjoint_union(&parts)?.with_name(format!("random:{seed}")))
}

/// Resolves `P{n}`, `P2modB:{b}`, `hirzebruch:{k}`,
/// `bundle:n={n},r={r},k={k1,k2,...}` and `random:{seed}`.
pub fn fixture(name: &str) -> Result<MultiFan> {
    let bad = || Error::UnknownFixture(name.to_string());
    if let Some(b) = name.strip_prefix("P2modB:") {
        return weighted_p2_quotient(b.trim().parse().map_err(|_| bad())?);
    }
    if let Some(k) = name.strip_prefix("hirzebruch:") {
        return hirzebruch_fan(k.trim().parse().map_err(|_| bad())?);
    }
    if let Some(seed) = name.strip_prefix("random:") {
        return random_complete_multifan(seed.trim().parse().map_err(|_| bad())?, 3);
    }
    if let Some(rest) = name.strip_prefix("bundle:") {
        return projective_bundle_fan(&parse_bundle(rest).ok_or_else(bad)?);
    }
    if let Some(n) = name.strip_prefix('P') {
        return projective_space_fan(n.parse().map_err(|_| bad())?);
    }
    Err(bad())
}

fn parse_bundle(s: &str) -> Option<BundleSpec> {
    let (head, ks) = s.split_once("k=")?;
    let mut n = None;
    let mut r = None;
    for part in head.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, val) = part.split_once('=')?;
        match key.trim() {
            "n" => n = val.trim().parse().ok(),
            "r" => r = val.trim().parse().ok(),
            _ => return None,
        }
    }
    let twists: Vec<i64> = if ks.trim().is_empty() {
        Vec::new()
    } else {
        ks.split(',').map(|k| k.trim().parse().ok()).collect::<Option<_>>()?
    };
    BundleSpec::new(n?, r?, twists).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_line_rays() {
        let f = projective_space_fan(1).unwrap();
        assert_eq!(f.rays(), &[LatticeVector::from_i64(&[1]), LatticeVector::from_i64(&[-1])]);
    }

    #[test]
    fn bundle_counts() {
        let f = projective_bundle_fan(&BundleSpec::new(3, 1, vec![1, -2]).unwrap()).unwrap();
        assert_eq!(f.tops().len(), 6);
        assert_eq!(f.rays().len(), 5);
        let g = projective_bundle_fan(&BundleSpec::new(3, 2, vec![1]).unwrap()).unwrap();
        assert_eq!(g.tops().len(), 6);
        assert!(BundleSpec::new(2, 2, vec![]).is_err());
        assert!(BundleSpec::new(3, 1, vec![1]).is_err());
    }

    #[test]
    fn surface_bundle_rays() {
        let f = projective_bundle_fan(&BundleSpec::new(2, 1, vec![3]).unwrap()).unwrap();
        let want: Vec<LatticeVector> =
            [[-1, -3], [1, 0], [0, 1], [0, -1]].iter().map(|r| LatticeVector::from_i64(r)).collect();
        assert_eq!(f.rays(), want.as_slice());
    }

    #[test]
    fn fixture_names() {
        assert_eq!(fixture("P3").unwrap().rank(), 3);
        assert_eq!(fixture("P2modB:2").unwrap().group_orders(), vec![2, 2, 2]);
        assert_eq!(fixture("bundle:n=3,r=1,k=1,2").unwrap().tops().len(), 6);
        assert_eq!(fixture("hirzebruch:1").unwrap().tops().len(), 4);
        assert!(fixture("random:7").is_ok());
        assert!(matches!(fixture("Q2"), Err(Error::UnknownFixture(_))));
        assert!(matches!(fixture("bundle:n=3,k=1"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn quotient_errors() {
        let p2 = projective_space_fan(2).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let zero = BigRational::zero();
        let one = BigRational::one();
        let two = BigRational::from_integer(2.into());
        assert_eq!(
            quotient_fan(&p2, &[vec![one.clone(), zero.clone()], vec![two.clone(), zero.clone()]]).unwrap_err(),
            Error::InfiniteIndex
        );
        assert_eq!(
            quotient_fan(&p2, &[vec![two, zero.clone()], vec![zero.clone(), one.clone()]]).unwrap_err(),
            Error::NotOverlattice
        );
        let q = quotient_fan(&p2, &[vec![half, zero.clone()], vec![zero, one]]).unwrap();
        assert_eq!(q.ray(0), &LatticeVector::from_i64(&[2, 0]));
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_complete_multifan(11, 3).unwrap();
        let b = random_complete_multifan(11, 3).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}
