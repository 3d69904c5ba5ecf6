//! Degree, completeness, projections, h/e-vectors and the lattices `L_I`,
//! `L_V`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{hermite_basis, lattice_intersection, saturate, IntMatrix, LatticeVector};

use super::{one_based, sign, MultiFan, TopSimplex};

/// The fan `Delta_K` induced in `L / (L cap span K)` by the top simplices
/// containing `K`.
#[derive(Clone, Debug)]
pub struct ProjectedFan {
    pub key: Vec<usize>,
    pub fan: MultiFan,
    /// Base index of each ray of `fan`.
    pub labels: Vec<usize>,
    /// Base index of each top simplex of `fan`.
    pub tops_from: Vec<usize>,
    /// Rows give coordinates on the quotient lattice.
    pub projection: IntMatrix,
}

impl ProjectedFan {
    /// Index in `fan` of a base ray, if it is a link ray.
    pub fn local_ray(&self, base: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == base)
    }
}

impl MultiFan {
    /// Whether `<u_i^I, v> != 0` for all top simplices and rays.
    pub fn is_generic(&self, v: &LatticeVector) -> bool {
        v.dim() == self.rank && (0..self.tops.len()).all(|j| self.pairings(j, v).iter().all(|p| !p.is_zero()))
    }

    fn require_generic(&self, v: &LatticeVector) -> Result<()> {
        if v.dim() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: v.dim() });
        }
        if !self.is_generic(v) {
            return Err(Error::NotGeneric { vector: v.to_i64() });
        }
        Ok(())
    }

    /// `d_v`: total weight of the top cones containing `v`.
    pub fn degree_at(&self, v: &LatticeVector) -> Result<i64> {
        self.require_generic(v)?;
        Ok((0..self.tops.len())
            .filter(|&j| self.pairings(j, v).iter().all(|p| sign(p) > 0))
            .map(|j| self.tops[j].weight())
            .sum())
    }

    /// Degree at the default generic vector.
    pub fn degree(&self) -> Result<i64> {
        self.degree_at(&self.generic_vector()?)
    }

    /// Basis of `L_I`, the lattice spanned by the rays of top simplex `j`, in
    /// Hermite form.
    pub fn lattice_of_top(&self, j: usize) -> Vec<LatticeVector> {
        hermite_basis(&self.top_rays(j))
    }

    pub fn top_rays(&self, j: usize) -> Vec<LatticeVector> {
        self.tops[j].rays.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// Hermite basis of `L_V`, the intersection of all `L_I`.
    pub fn lattice_lv(&self) -> Result<Vec<LatticeVector>> {
        if self.rank == 0 {
            return Ok(Vec::new());
        }
        let subs: Vec<Vec<LatticeVector>> = (0..self.tops.len()).map(|j| self.top_rays(j)).collect();
        lattice_intersection(&subs)
    }

    /// Whether all `L_I` coincide.
    pub fn condition_p(&self) -> bool {
        let first = self.lattice_of_top(0);
        (1..self.tops.len()).all(|j| self.lattice_of_top(j) == first)
    }

    /// Whether `v` lies in `L_V`, i.e. has integral coordinates in every top
    /// basis.
    pub fn in_lattice_lv(&self, v: &LatticeVector) -> bool {
        (0..self.tops.len()).all(|j| self.pairings(j, v).iter().all(|p| p.is_integer()))
    }

    /// `sum_i M^i b_i` over the Hermite basis `b` of `L_V`. In rank one,
    /// where that sum does not depend on `M`, the candidates run through
    /// `b, -b, 2b, -2b, ...` instead.
    pub fn candidate_vector(&self, m: u64) -> Result<LatticeVector> {
        let basis = self.lattice_lv()?;
        if self.rank == 1 {
            let k = m.max(1).div_ceil(2) as i64;
            let k = if m % 2 == 1 { k } else { -k };
            return Ok(basis[0].scale(&BigInt::from(k)));
        }
        let mut v = LatticeVector::zero(self.rank);
        let mut pw = BigInt::one();
        for b in &basis {
            v = v.add(&b.scale(&pw));
            pw *= m;
        }
        Ok(v)
    }

    /// The first generic candidate `sum_i M^i b_i`, `M = 1, 2, ...`.
    pub fn generic_vector(&self) -> Result<LatticeVector> {
        self.generic_vectors(1).map(|mut v| v.remove(0))
    }

    /// The first `count` distinct generic candidates in search order.
    pub fn generic_vectors(&self, count: usize) -> Result<Vec<LatticeVector>> {
        self.generic_vectors_from(1, count)
    }

    /// Generic candidates with `M >= start`.
    pub fn generic_vectors_from(&self, start: u64, count: usize) -> Result<Vec<LatticeVector>> {
        let mut out: Vec<LatticeVector> = Vec::new();
        if self.rank == 0 {
            return Ok(vec![LatticeVector::zero(0); count]);
        }
        let mut m = start.max(1);
        // Each wall excludes at most n - 1 values of M.
        let limit = start + 64 + (count as u64 + self.sigma.len() as u64) * (self.rank as u64 + 1);
        while out.len() < count && m <= limit {
            let v = self.candidate_vector(m)?;
            if self.is_generic(&v) && !out.contains(&v) {
                out.push(v);
            }
            m += 1;
        }
        if out.len() < count {
            return Err(Error::InvariantViolated("generic vector search exhausted".into()));
        }
        Ok(out)
    }

    /// Projection to `L / (L cap span K)`.
    pub fn project(&self, key: &[usize]) -> Result<ProjectedFan> {
        let mut key = key.to_vec();
        key.sort_unstable();
        if !self.sigma.contains(&key) {
            return Err(Error::KeyNotInSigma { simplex: one_based(&key) });
        }
        let k = key.len();
        let key_rays: Vec<LatticeVector> = key.iter().map(|&i| self.rays[i].clone()).collect();
        let sat = saturate(self.rank, &key_rays)?;
        let mut labels: Vec<usize> = Vec::new();
        let mut tops_from = Vec::new();
        for (j, t) in self.tops.iter().enumerate() {
            if key.iter().all(|i| t.rays.contains(i)) {
                tops_from.push(j);
                for &i in &t.rays {
                    if !key.contains(&i) && !labels.contains(&i) {
                        labels.push(i);
                    }
                }
            }
        }
        labels.sort_unstable();
        let rays: Vec<LatticeVector> = labels.iter().map(|&i| sat.projection.apply(&self.rays[i])).collect();
        let tops: Vec<TopSimplex> = tops_from
            .iter()
            .map(|&j| {
                let t = &self.tops[j];
                TopSimplex {
                    rays: t
                        .rays
                        .iter()
                        .filter(|i| !key.contains(i))
                        .map(|i| labels.iter().position(|l| l == i).expect("link ray"))
                        .collect(),
                    wplus: t.wplus,
                    wminus: t.wminus,
                }
            })
            .collect();
        let fan = MultiFan::new(self.rank - k, rays, tops)?;
        Ok(ProjectedFan { key, fan, labels, tops_from, projection: sat.projection })
    }

    /// Weight sums on the positive and negative side of a rank-one fan.
    fn sides(&self) -> (i64, i64) {
        let mut pos = 0;
        let mut neg = 0;
        for t in &self.tops {
            if self.rays[t.rays[0]].0[0] > BigInt::zero() {
                pos += t.weight();
            } else {
                neg += t.weight();
            }
        }
        (pos, neg)
    }

    /// Completeness through the projections to codimension-one simplices:
    /// each rank-one fan `Delta_J`, `|J| = n - 1`, must carry equal weight on
    /// both sides of the origin. Equal weight across every wall makes `d_v`
    /// locally constant off the walls, so this also gives pre-completeness.
    pub fn is_complete(&self) -> bool {
        if self.rank == 0 {
            return true;
        }
        for j in self.simplices_of_size(self.rank - 1) {
            let p = self.project(j).expect("simplex of sigma");
            let (pos, neg) = p.fan.sides();
            if pos != neg {
                return false;
            }
        }
        true
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(Error::NotComplete)
        }
    }

    /// `h_k = sum of w(I)` over `I` with exactly `k` positive pairings
    /// `<u_i^I, v>`.
    pub fn h_vector_at(&self, v: &LatticeVector) -> Result<Vec<i64>> {
        self.require_generic(v)?;
        let mut h = vec![0i64; self.rank + 1];
        for (j, t) in self.tops.iter().enumerate() {
            let mu = self.pairings(j, v).iter().filter(|p| sign(p) > 0).count();
            h[mu] += t.weight();
        }
        Ok(h)
    }

    pub fn h_vector(&self) -> Result<Vec<i64>> {
        self.h_vector_at(&self.generic_vector()?)
    }

    /// `e_k = sum over |J| = k of deg(Delta_J)`.
    pub fn e_vector(&self) -> Result<Vec<i64>> {
        self.require_complete()?;
        let mut e = vec![0i64; self.rank + 1];
        for s in &self.sigma {
            let p = self.project(s)?;
            e[s.len()] += p.fan.degree()?;
        }
        Ok(e)
    }
}
