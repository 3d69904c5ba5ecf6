//! The groups `H_K = L_K / L_{K,V}` for every simplex and the twisted
//! sectors `hat H_K` of elements with no integral coordinate.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{saturate, solve_in_basis, FiniteAbelianGroup, GroupElement, LatticeVector};
use crate::multifan::MultiFan;

/// One element `h` of `H_K` with its normal-form data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatTerm {
    pub element: GroupElement,
    /// `f_{K,h,i}` in `[0, 1)`, in the order of `K`.
    pub fractions: Vec<BigRational>,
    /// `f_{K,h} = sum_i f_{K,h,i}`.
    pub total: BigRational,
    /// `v_{K,h} = sum_i f_{K,h,i} v_i`, a lattice vector.
    pub vector: LatticeVector,
}

impl HatTerm {
    fn is_twisted(&self) -> bool {
        self.fractions.iter().all(|f| !f.is_zero())
    }

    /// Rays of `key` with a nonzero fraction.
    fn support(&self, key: &[usize]) -> Vec<usize> {
        key.iter().zip(&self.fractions).filter(|(_, f)| !f.is_zero()).map(|(&i, _)| i).collect()
    }
}

#[derive(Clone, Debug)]
pub struct HatEntry {
    pub key: Vec<usize>,
    pub group_order: u64,
    /// Every element of `H_K`.
    pub all: Vec<HatTerm>,
    /// Elements with every fraction nonzero.
    pub twisted: Vec<HatTerm>,
}

#[derive(Clone, Debug)]
pub struct HatH {
    pub entries: BTreeMap<Vec<usize>, HatEntry>,
}

impl HatH {
    pub fn entry(&self, key: &[usize]) -> Option<&HatEntry> {
        self.entries.get(key)
    }
}

fn entry_for(fan: &MultiFan, key: &[usize]) -> Result<HatEntry> {
    let n = fan.rank();
    let rays: Vec<LatticeVector> = key.iter().map(|&i| fan.ray(i).clone()).collect();
    let sat = saturate(n, &rays)?;
    let basis: Vec<Vec<BigRational>> = sat.basis.iter().map(|b| b.to_rational()).collect();
    let k = key.len();
    let mut coords = Vec::with_capacity(k);
    for r in &rays {
        let c = if k == 0 {
            Vec::new()
        } else {
            // basis spans only a k-dimensional subspace: solve on k pivot rows
            solve_in_subspace(&basis, &r.to_rational())?
        };
        if c.iter().any(|x| !x.is_integer()) {
            return Err(Error::InvariantViolated("ray outside its saturated span".into()));
        }
        coords.push(LatticeVector(c.into_iter().map(|x| x.to_integer()).collect()));
    }
    let group = FiniteAbelianGroup::quotient(&coords)?;
    let mut all = Vec::new();
    for h in group.elements() {
        let fractions = group.fractional_coordinates(&h);
        let mut vec = vec![BigRational::zero(); n];
        for (f, r) in fractions.iter().zip(&rays) {
            for (o, c) in vec.iter_mut().zip(&r.0) {
                *o += f * BigRational::from_integer(c.clone());
            }
        }
        if vec.iter().any(|x| !x.is_integer()) {
            return Err(Error::InvariantViolated(format!("v_(K,h) is not a lattice vector for K = {:?}", key)));
        }
        let total = fractions.iter().fold(BigRational::zero(), |a, b| a + b);
        all.push(HatTerm {
            element: h,
            fractions,
            total,
            vector: LatticeVector(vec.into_iter().map(|x| x.to_integer()).collect()),
        });
    }
    let twisted = all.iter().filter(|t| t.is_twisted()).cloned().collect();
    Ok(HatEntry { key: key.to_vec(), group_order: group.order(), all, twisted })
}

/// Coordinates of `x` in an independent family of `k <= n` vectors spanning
/// a subspace containing `x`.
pub(super) fn solve_in_subspace(basis: &[Vec<BigRational>], x: &[BigRational]) -> Result<Vec<BigRational>> {
    let k = basis.len();
    let n = x.len();
    // pick k rows on which the basis is independent
    let mut rows: Vec<usize> = Vec::new();
    for r in 0..n {
        let mut trial = rows.clone();
        trial.push(r);
        let m: Vec<Vec<BigRational>> = basis.iter().map(|b| trial.iter().map(|&rr| b[rr].clone()).collect()).collect();
        if rank_of(&m) == trial.len() {
            rows = trial;
        }
        if rows.len() == k {
            break;
        }
    }
    if rows.len() != k {
        return Err(Error::SingularInput);
    }
    let sub: Vec<Vec<BigRational>> = basis.iter().map(|b| rows.iter().map(|&r| b[r].clone()).collect()).collect();
    let xs: Vec<BigRational> = rows.iter().map(|&r| x[r].clone()).collect();
    let c = solve_in_basis(&sub, &xs).ok_or(Error::SingularInput)?;
    for (r, xr) in x.iter().enumerate() {
        let y = c.iter().zip(basis).fold(BigRational::zero(), |s, (ci, b)| s + ci * &b[r]);
        if &y != xr {
            return Err(Error::InvariantViolated("vector outside the subspace".into()));
        }
    }
    Ok(c)
}

fn rank_of(vectors: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = vectors.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                for j in 0..cols {
                    let x = &f * &m[rank][j];
                    m[i][j] -= x;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `H_K`, `hat H_K` and the normal-form data for every simplex, with the
/// decomposition `H_J = disjoint union of hat H_K over K in J` checked.
pub fn hat_h_data(fan: &MultiFan) -> Result<HatH> {
    let mut entries = BTreeMap::new();
    for key in fan.sigma() {
        entries.insert(key.clone(), entry_for(fan, key)?);
    }
    for (key, e) in &entries {
        let mut count = 0u64;
        for (sub, s) in &entries {
            if sub.iter().all(|i| key.contains(i)) {
                count += s.twisted.len() as u64;
            }
        }
        if count != e.group_order {
            return Err(Error::InvariantViolated(format!(
                "twisted sectors under {:?} count {count}, expected {}",
                key, e.group_order
            )));
        }
        for t in &e.all {
            let support = t.support(key);
            let sector = &entries[&support];
            let expected: Vec<BigRational> = t.fractions.iter().filter(|f| !f.is_zero()).cloned().collect();
            let hit = sector.twisted.iter().any(|s| s.fractions == expected && s.vector == t.vector);
            if !hit {
                return Err(Error::InvariantViolated(format!("element of H_{:?} has no twisted sector in {:?}", key, support)));
            }
        }
    }
    Ok(HatH { entries })
}
