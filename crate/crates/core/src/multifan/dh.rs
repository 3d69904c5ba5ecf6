//! Multi-polytopes, their Duistermaat-Heckman functions, and the
//! fixed-point expression for the lattice-point character.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::cyclotomic::{Angle, CycloNumber};
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, RationalCovector};
use crate::series::{inverse_one_minus, BinomialProduct, FactoredSeries, LaurentPoly, PoleSum, QSeries, Ring};

use super::{one_based, sign, MultiFan};

/// Offsets `c_i` on the rays of `K` and of its link, defining the affine
/// space `A* = {<u, v_i> = c_i, i in K}` and the hyperplanes
/// `F_i = {<u, v_i> = c_i}` for link rays `i`.
#[derive(Clone, Debug)]
pub struct MultiPolytope {
    fan: MultiFan,
    key: Vec<usize>,
    link: Vec<usize>,
    offsets: BTreeMap<usize, BigRational>,
    tops: Vec<usize>,
}

impl MultiPolytope {
    pub fn new(fan: &MultiFan, key: &[usize], offsets: BTreeMap<usize, BigRational>) -> Result<MultiPolytope> {
        let p = fan.project(key)?;
        let mut expected: Vec<usize> = p.key.iter().chain(&p.labels).copied().collect();
        expected.sort_unstable();
        let given: Vec<usize> = offsets.keys().copied().collect();
        if given != expected {
            return Err(Error::PreconditionViolated(format!(
                "offsets must be given exactly on rays {:?}",
                one_based(&expected)
            )));
        }
        Ok(MultiPolytope { fan: fan.clone(), key: p.key, link: p.labels, offsets, tops: p.tops_from })
    }

    /// The multi-polytope of an integral class `x`, restricted to `K` and its
    /// link.
    pub fn from_class(fan: &MultiFan, key: &[usize], coefficients: &[i64]) -> Result<MultiPolytope> {
        if coefficients.len() != fan.rays().len() {
            return Err(Error::DimensionMismatch { expected: fan.rays().len(), found: coefficients.len() });
        }
        let p = fan.project(key)?;
        let offsets = p
            .key
            .iter()
            .chain(&p.labels)
            .map(|&i| (i, BigRational::from_integer(BigInt::from(coefficients[i]))))
            .collect();
        MultiPolytope::new(fan, key, offsets)
    }

    pub fn key(&self) -> &[usize] {
        &self.key
    }

    pub fn link(&self) -> &[usize] {
        &self.link
    }

    /// Link offsets moved by `eps`.
    pub fn shifted(&self, eps: &BigRational) -> MultiPolytope {
        let mut p = self.clone();
        for i in &self.link {
            let c = p.offsets.get_mut(i).expect("link offset");
            *c += eps;
        }
        p
    }

    fn integral(&self) -> bool {
        self.offsets.values().all(|c| c.is_integer())
    }

    /// `u_I = iota_I^*(x)`, the vertex of top simplex `j`.
    fn vertex(&self, j: usize) -> RationalCovector {
        let t = &self.fan.tops()[j];
        let dual = &self.fan.top_data(j).dual;
        let mut out = RationalCovector::zero(self.fan.rank());
        for (pos, i) in t.rays.iter().enumerate() {
            out = out.add(&dual[pos].scale(&self.offsets[i]));
        }
        out
    }

    fn in_affine_space(&self, u: &RationalCovector) -> bool {
        self.key.iter().all(|i| u.pair(self.fan.ray(*i)) == self.offsets[i])
    }

    /// Value of the Duistermaat-Heckman function at `u in A*`, off the
    /// hyperplanes, computed with the generic vector `v`.
    pub fn dh_value(&self, u: &RationalCovector, v: &LatticeVector) -> Result<i64> {
        if !self.in_affine_space(u) {
            return Err(Error::NotInAffineSpace);
        }
        for &i in &self.link {
            if u.pair(self.fan.ray(i)) == self.offsets[&i] {
                return Err(Error::PointOnWall { ray: i + 1 });
            }
        }
        let mut total = 0i64;
        for &j in &self.tops {
            let t = &self.fan.tops()[j];
            let dual = &self.fan.top_data(j).dual;
            let mut positive = 0usize;
            let mut inside = true;
            for (pos, i) in t.rays.iter().enumerate() {
                if self.key.contains(i) {
                    continue;
                }
                let s = sign(&dual[pos].pair(v));
                if s == 0 {
                    return Err(Error::NotGeneric { vector: v.to_i64() });
                }
                if s > 0 {
                    positive += 1;
                }
                // u - u_I = sum_i (<u, v_i> - c_i) u_i^I on the link directions
                let a = u.pair(self.fan.ray(*i)) - &self.offsets[i];
                if sign(&a) != s {
                    inside = false;
                }
            }
            if inside {
                let w = t.weight();
                total += if positive.is_multiple_of(2) { w } else { -w };
            }
        }
        Ok(total)
    }

    /// Lattice points of `A*` with all coordinates in `[-bound, bound]`.
    pub fn window_points(&self, bound: i64) -> Vec<Vec<i64>> {
        box_points(self.fan.rank(), bound)
            .into_iter()
            .filter(|u| self.in_affine_space(&RationalCovector::from_i64(u)))
            .collect()
    }

    /// `sum DH_{P+}(u) t^u` over lattice points of the window, with the link
    /// offsets moved by one half.
    pub fn dh_character(&self, bound: i64) -> Result<BTreeMap<Vec<i64>, i64>> {
        if !self.integral() {
            return Err(Error::NonIntegralOffsets);
        }
        let plus = self.shifted(&BigRational::new(1.into(), 2.into()));
        let v = self.fan.generic_vector()?;
        let mut out = BTreeMap::new();
        for u in self.window_points(bound) {
            let x = plus.dh_value(&RationalCovector::from_i64(&u), &v)?;
            if x != 0 {
                out.insert(u, x);
            }
        }
        Ok(out)
    }

    /// Generic vectors of `L_V` separating the window points of `A*`.
    fn injective_vectors(&self, points: &[Vec<i64>], count: usize) -> Result<Vec<LatticeVector>> {
        let separates = |v: &LatticeVector| {
            let mut seen = HashMap::new();
            points.iter().all(|u| seen.insert(pair_i64(u, v), ()).is_none())
        };
        let mut out: Vec<LatticeVector> = Vec::new();
        let limit = 4096 + 8 * points.len() as u64;
        for m in 1..=limit {
            if out.len() == count {
                break;
            }
            let v = self.fan.candidate_vector(m)?;
            if self.fan.is_generic(&v) && !out.contains(&v) && separates(&v) {
                out.push(v);
            }
        }
        if out.len() < count {
            return Err(Error::WindowNotInjective);
        }
        Ok(out)
    }

    /// The fixed-point sum along `v`, as a Laurent polynomial in `t`.
    fn specialized_sum(&self, v: &LatticeVector) -> Result<LaurentPoly> {
        let mut sum = PoleSum::new(1, 0);
        for &j in &self.tops {
            let t = &self.fan.tops()[j];
            let data = self.fan.top_data(j);
            let order = data.group.order();
            let scale = CycloNumber::from_rational(&BigRational::new(t.weight().into(), (order as i64).into()));
            let vertex = self.vertex(j);
            let e = vertex.pair(v);
            let e = e.to_integer().to_i64().filter(|_| e.is_integer()).ok_or(Error::NotInLatticeLv { vector: v.to_i64() })?;
            for h in data.group.elements() {
                let mut numer = LaurentPoly::monomial(
                    &scale * &CycloNumber::root(data.group.chi_angle(&vertex, &h)),
                    e,
                );
                let mut den = BinomialProduct::one();
                for (pos, i) in t.rays.iter().enumerate() {
                    if self.key.contains(i) {
                        continue;
                    }
                    let m = data.dual[pos].pair(v);
                    let m = m.to_integer().to_i64().filter(|_| m.is_integer()).ok_or(Error::NotInLatticeLv { vector: v.to_i64() })?;
                    let omega: Angle = -data.group.chi_angle(&data.dual[pos], &h);
                    let (unit, b) = inverse_one_minus(omega, -m)?;
                    numer = numer.mul_ref(&unit);
                    den = den.mul(&b);
                }
                sum.add(&FactoredSeries { numerator: QSeries::constant(numer, 1, 0), denominator: den });
            }
        }
        Ok(sum.finish()?.coeff(0).clone())
    }

    /// The fixed-point side, decoded to lattice points of the window along two
    /// separating specializations that must agree.
    pub fn fixed_point_character(&self, bound: i64) -> Result<BTreeMap<Vec<i64>, i64>> {
        if !self.integral() {
            return Err(Error::NonIntegralOffsets);
        }
        let points = self.window_points(bound);
        let vs = self.injective_vectors(&points, 2)?;
        let mut decoded = Vec::new();
        for v in &vs {
            let poly = self.specialized_sum(v)?;
            let index: HashMap<i64, &Vec<i64>> = points.iter().map(|u| (pair_i64(u, v), u)).collect();
            let mut map = BTreeMap::new();
            for (e, c) in poly.terms() {
                let u = index.get(&e).ok_or_else(|| {
                    Error::WindowTooSmall(format!("exponent {e} along {v} has no preimage in the window"))
                })?;
                let r = c.to_rational().filter(|r| r.is_integer()).ok_or_else(|| {
                    Error::InvariantViolated(format!("non-integral coefficient {c} at {u:?}"))
                })?;
                map.insert((*u).clone(), r.to_integer().to_i64().expect("coefficient fits"));
            }
            decoded.push(map);
        }
        if decoded[0] != decoded[1] {
            return Err(Error::InvariantViolated("specializations decode differently".into()));
        }
        Ok(decoded.swap_remove(0))
    }
}

fn pair_i64(u: &[i64], v: &LatticeVector) -> i64 {
    u.iter().zip(&v.0).map(|(a, b)| a * b.to_i64().expect("vector fits")).sum()
}

/// All integer points of `[-bound, bound]^n` in lexicographic order.
pub(crate) fn box_points(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * (2 * bound as usize + 1));
        for p in &out {
            for c in -bound..=bound {
                let mut q = p.clone();
                q.push(c);
                next.push(q);
            }
        }
        out = next;
    }
    out
}
