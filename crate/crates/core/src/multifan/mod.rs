//! Simplicial multi-fans with prescribed generating vectors.

mod chern;
mod dh;
mod structure;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{dual_basis, FiniteAbelianGroup, IntMatrix, LatticeVector, RationalCovector};

pub use chern::{C1Divisibility, EquivCohClass, ModBlock, ModPartition};
pub use dh::MultiPolytope;
pub use structure::ProjectedFan;

/// A top-dimensional simplex with its two weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopSimplex {
    /// Sorted, 0-based ray indices.
    pub rays: Vec<usize>,
    pub wplus: u64,
    pub wminus: u64,
}

impl TopSimplex {
    pub fn weight(&self) -> i64 {
        self.wplus as i64 - self.wminus as i64
    }
}

/// Data attached to one top simplex `I`: the basis `u_i^I` dual to its rays
/// (same order as `TopSimplex::rays`) and the group `L / L_I`.
#[derive(Clone, Debug)]
pub struct TopData {
    pub dual: Vec<RationalCovector>,
    pub group: FiniteAbelianGroup,
}

/// An `n`-dimensional simplicial multi-fan in `Z^n` with generating vectors.
///
/// The simplicial set is the downward closure of the top simplices. Every
/// ray must belong to at least one top simplex, and top simplices are
/// pairwise distinct as vertex sets.
#[derive(Clone, Debug)]
pub struct MultiFan {
    name: Option<String>,
    rank: usize,
    rays: Vec<LatticeVector>,
    tops: Vec<TopSimplex>,
    sigma: BTreeSet<Vec<usize>>,
    top_data: Vec<TopData>,
}

/// Structural diagnostics of a valid fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub primitive: Vec<bool>,
    pub all_primitive: bool,
    pub nonsingular: bool,
    pub group_orders: Vec<u64>,
}

/// JSON form of a fan. Ray indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub maximal_simplices: Vec<SimplexSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexSpec {
    pub rays: Vec<usize>,
    #[serde(default = "one")]
    pub wplus: u64,
    #[serde(default)]
    pub wminus: u64,
}

fn one() -> u64 {
    1
}

impl MultiFan {
    /// Builds and validates a fan. `tops` hold 0-based ray indices in any
    /// order.
    pub fn new(rank: usize, rays: Vec<LatticeVector>, tops: Vec<TopSimplex>) -> Result<MultiFan> {
        for (i, r) in rays.iter().enumerate() {
            if r.dim() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: r.dim() });
            }
            if r.is_zero() {
                return Err(Error::MalformedFan(format!("ray {} is zero", i + 1)));
            }
        }
        if tops.is_empty() {
            return Err(Error::EmptyTopDimension);
        }
        let mut seen = BTreeSet::new();
        let mut sorted_tops = Vec::with_capacity(tops.len());
        for t in tops {
            let mut idx = t.rays.clone();
            idx.sort_unstable();
            idx.dedup();
            if idx.len() != t.rays.len() || idx.len() != rank {
                return Err(Error::MalformedFan(format!(
                    "maximal simplex {:?} must have {rank} distinct rays",
                    one_based(&t.rays)
                )));
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::MalformedFan(format!("ray index {} out of range", bad + 1)));
            }
            if !seen.insert(idx.clone()) {
                return Err(Error::MalformedFan(format!("maximal simplex {:?} listed twice", one_based(&idx))));
            }
            sorted_tops.push(TopSimplex { rays: idx, ..t });
        }
        let mut sigma = BTreeSet::new();
        for t in &sorted_tops {
            let k = t.rays.len();
            for mask in 0u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| t.rays[b]).collect();
                sigma.insert(face);
            }
        }
        for i in 0..rays.len() {
            if !sigma.contains(&vec![i]) {
                return Err(Error::MalformedFan(format!("ray {} lies in no maximal simplex", i + 1)));
            }
        }
        let mut top_data = Vec::with_capacity(sorted_tops.len());
        for t in &sorted_tops {
            let gens: Vec<LatticeVector> = t.rays.iter().map(|&i| rays[i].clone()).collect();
            let m = IntMatrix::from_columns(rank, &gens);
            if rank > 0 && m.determinant().is_zero() {
                return Err(Error::DependentRays { simplex: one_based(&t.rays) });
            }
            let dual = dual_basis(&gens)?;
            let group = FiniteAbelianGroup::quotient(&gens)?;
            top_data.push(TopData { dual, group });
        }
        Ok(MultiFan { name: None, rank, rays, tops: sorted_tops, sigma, top_data })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> MultiFan {
        self.name = Some(name.into());
        self
    }

    pub fn from_spec(spec: &FanSpec) -> Result<MultiFan> {
        let rays = spec.rays.iter().map(|r| LatticeVector::from_i64(r)).collect();
        let mut tops = Vec::with_capacity(spec.maximal_simplices.len());
        for s in &spec.maximal_simplices {
            if s.rays.contains(&0) {
                return Err(Error::MalformedFan("ray indices are 1-based".into()));
            }
            tops.push(TopSimplex { rays: s.rays.iter().map(|i| i - 1).collect(), wplus: s.wplus, wminus: s.wminus });
        }
        let fan = MultiFan::new(spec.rank, rays, tops)?;
        Ok(match &spec.name {
            Some(n) => fan.with_name(n.clone()),
            None => fan,
        })
    }

    pub fn to_spec(&self) -> FanSpec {
        FanSpec {
            name: self.name.clone(),
            rank: self.rank,
            rays: self.rays.iter().map(|r| r.to_i64()).collect(),
            maximal_simplices: self
                .tops
                .iter()
                .map(|t| SimplexSpec { rays: one_based(&t.rays), wplus: t.wplus, wminus: t.wminus })
                .collect(),
        }
    }

    pub fn from_json(s: &str) -> Result<MultiFan> {
        let spec: FanSpec = serde_json::from_str(s).map_err(|e| Error::MalformedFan(e.to_string()))?;
        MultiFan::from_spec(&spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("fan spec serializes")
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    pub fn tops(&self) -> &[TopSimplex] {
        &self.tops
    }

    pub fn top_data(&self, j: usize) -> &TopData {
        &self.top_data[j]
    }

    /// Index of the top simplex with the given (sorted) vertex set.
    pub fn top_index(&self, simplex: &[usize]) -> Option<usize> {
        self.tops.iter().position(|t| t.rays == simplex)
    }

    /// All simplices, including the empty one, as sorted index lists.
    pub fn sigma(&self) -> &BTreeSet<Vec<usize>> {
        &self.sigma
    }

    /// Simplices with exactly `k` vertices.
    pub fn simplices_of_size(&self, k: usize) -> Vec<&Vec<usize>> {
        self.sigma.iter().filter(|s| s.len() == k).collect()
    }

    pub fn contains_simplex(&self, s: &[usize]) -> bool {
        let mut v = s.to_vec();
        v.sort_unstable();
        self.sigma.contains(&v)
    }

    /// `|L / L_I|` for each top simplex.
    pub fn group_orders(&self) -> Vec<u64> {
        self.top_data.iter().map(|d| d.group.order()).collect()
    }

    /// `lcm |H_I|`.
    pub fn group_order_lcm(&self) -> u64 {
        self.group_orders().into_iter().fold(1, |a, b| a.lcm(&b))
    }

    pub fn is_nonsingular(&self) -> bool {
        self.group_orders().iter().all(|&o| o == 1)
    }

    pub fn diagnostics(&self) -> Diagnostics {
        let primitive: Vec<bool> = self.rays.iter().map(|r| r.is_primitive()).collect();
        Diagnostics {
            all_primitive: primitive.iter().all(|&p| p),
            primitive,
            nonsingular: self.is_nonsingular(),
            group_orders: self.group_orders(),
        }
    }

    /// `<u_i^I, v>` for the rays of top simplex `j`, in ray order.
    pub fn pairings(&self, j: usize, v: &LatticeVector) -> Vec<BigRational> {
        self.top_data[j].dual.iter().map(|u| u.pair(v)).collect()
    }

    /// Same fan with every weight multiplied by `k`.
    pub fn scaled_weights(&self, k: u64) -> MultiFan {
        let mut f = self.clone();
        for t in &mut f.tops {
            t.wplus *= k;
            t.wminus *= k;
        }
        f
    }

    /// Same rays and simplices with new weights (one pair per top simplex).
    pub fn with_weights(&self, weights: &[(u64, u64)]) -> Result<MultiFan> {
        if weights.len() != self.tops.len() {
            return Err(Error::DimensionMismatch { expected: self.tops.len(), found: weights.len() });
        }
        let mut f = self.clone();
        for (t, &(p, m)) in f.tops.iter_mut().zip(weights) {
            t.wplus = p;
            t.wminus = m;
        }
        Ok(f)
    }
}

pub(crate) fn one_based(idx: &[usize]) -> Vec<usize> {
    idx.iter().map(|i| i + 1).collect()
}

pub(crate) fn sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn integer_of(x: &BigRational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

#[cfg(test)]
mod tests;
