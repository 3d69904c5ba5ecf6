//! Equivariant classes, first-Chern-class divisibility and mod-m faces.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{smith_normal_form, IntMatrix, LatticeVector, RationalCovector};

use super::{integer_of, one_based, MultiFan};

/// A degree-two class `sum_i c_i x_i` of the face ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivCohClass(pub Vec<BigInt>);

impl EquivCohClass {
    pub fn from_i64(c: &[i64]) -> EquivCohClass {
        EquivCohClass(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(rays: usize) -> EquivCohClass {
        EquivCohClass(vec![BigInt::zero(); rays])
    }

    /// The equivariant first Chern class `sum_i x_i`.
    pub fn first_chern(fan: &MultiFan) -> EquivCohClass {
        EquivCohClass(vec![BigInt::one(); fan.rays().len()])
    }

    /// The image of `u in L*`: `sum_i <u, v_i> x_i`.
    pub fn from_covector(fan: &MultiFan, u: &LatticeVector) -> EquivCohClass {
        EquivCohClass(fan.rays().iter().map(|v| u.0.iter().zip(&v.0).map(|(a, b)| a * b).sum()).collect())
    }
}

/// Divisibility data of the first Chern class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C1Divisibility {
    /// Largest admissible `N`; `None` when every `N` is admissible.
    pub n_max: Option<u64>,
    /// `u` with `<u, v_i> = 1 mod n_max` for all rays, coordinates in `[0, n_max)`.
    pub witness: Option<Vec<i64>>,
    /// All admissible `N` (the divisors of `n_max`).
    pub divisors: Vec<u64>,
}

/// One `(v, m)`-equivalence class of top simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModBlock {
    pub core: Vec<usize>,
    /// Top simplex indices.
    pub members: Vec<usize>,
    /// `<u_i^I, v> mod m` for `i` in the core, shared by all members.
    pub residues: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPartition {
    pub v: LatticeVector,
    pub modulus: u64,
    pub blocks: Vec<ModBlock>,
}

/// Constraints `d_i y_i = b_i (mod N)` after Smith reduction of the rays.
struct Congruences {
    diag: Vec<BigInt>,
    rhs: Vec<BigInt>,
    v: IntMatrix,
    /// gcd of right-hand sides on rows with zero diagonal.
    zero_row_gcd: BigInt,
}

impl Congruences {
    fn admits(&self, n: &BigInt) -> bool {
        if !self.zero_row_gcd.is_multiple_of(n) {
            return false;
        }
        self.diag.iter().zip(&self.rhs).all(|(d, b)| b.is_multiple_of(&d.gcd(n)))
    }

    fn solve(&self, n: &BigInt) -> LatticeVector {
        let cols = self.v.cols();
        let mut y = vec![BigInt::zero(); cols];
        for (i, (d, b)) in self.diag.iter().zip(&self.rhs).enumerate() {
            let g = d.gcd(n);
            let m = n / &g;
            if m.is_one() {
                continue;
            }
            let dg = (d / &g).mod_floor(&m);
            let e = dg.extended_gcd(&m);
            y[i] = ((b / &g) * e.x).mod_floor(&m);
        }
        let u = self.v.apply(&LatticeVector(y));
        LatticeVector(u.0.iter().map(|c| c.mod_floor(n)).collect())
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

impl MultiFan {
    /// `iota_I^*(x) = sum_{i in I} c_i u_i^I` for a top simplex.
    pub fn restriction(&self, x: &EquivCohClass, simplex: &[usize]) -> Result<RationalCovector> {
        let mut s = simplex.to_vec();
        s.sort_unstable();
        let j = self.top_index(&s).ok_or_else(|| Error::KeyNotInSigma { simplex: one_based(&s) })?;
        Ok(self.restriction_top(x, j))
    }

    pub fn restriction_top(&self, x: &EquivCohClass, j: usize) -> RationalCovector {
        let t = &self.tops()[j];
        let d = &self.top_data(j).dual;
        let mut out = RationalCovector::zero(self.rank());
        for (pos, &i) in t.rays.iter().enumerate() {
            out = out.add(&d[pos].scale(&BigRational::from_integer(x.0[i].clone())));
        }
        out
    }

    /// `u^I = sum_{i in I} u_i^I`.
    pub fn chern_restriction(&self, j: usize) -> RationalCovector {
        self.restriction_top(&EquivCohClass::first_chern(self), j)
    }

    fn congruences(&self) -> Congruences {
        let r = self.rays().len();
        let n = self.rank();
        let rows: Vec<LatticeVector> = self.rays().to_vec();
        let mut a = IntMatrix::zeros(r, n);
        for (i, v) in rows.iter().enumerate() {
            for j in 0..n {
                a.set(i, j, v.0[j].clone());
            }
        }
        let snf = smith_normal_form(&a);
        let b = snf.u.apply(&LatticeVector(vec![BigInt::one(); r]));
        let diag = snf.diagonal();
        let rank = snf.rank();
        let zero_row_gcd = (rank..r).fold(BigInt::zero(), |g, i| g.gcd(&b.0[i]));
        Congruences { diag: diag[..rank].to_vec(), rhs: b.0[..rank].to_vec(), v: snf.v, zero_row_gcd }
    }

    /// Whether some `u in L*` has `<u, v_i> = 1 mod n` for every ray.
    pub fn c1_divisible_by(&self, n: u64) -> bool {
        n >= 1 && self.congruences().admits(&BigInt::from(n))
    }

    /// A witness `u` for divisibility by `n`, coordinates in `[0, n)`.
    pub fn c1_witness(&self, n: u64) -> Option<LatticeVector> {
        let c = self.congruences();
        let nb = BigInt::from(n);
        c.admits(&nb).then(|| c.solve(&nb))
    }

    pub fn c1_divisibility(&self) -> C1Divisibility {
        let c = self.congruences();
        if c.zero_row_gcd.is_zero() {
            return C1Divisibility { n_max: None, witness: None, divisors: Vec::new() };
        }
        let g = c.zero_row_gcd.abs().to_u64().expect("divisibility bound fits in u64");
        let admissible: Vec<u64> = divisors(g).into_iter().filter(|&d| c.admits(&BigInt::from(d))).collect();
        let n_max = *admissible.last().expect("1 is admissible");
        let witness = c.solve(&BigInt::from(n_max)).to_i64();
        C1Divisibility { n_max: Some(n_max), witness: Some(witness), divisors: divisors(n_max) }
    }

    fn integral_pairings(&self, j: usize, v: &LatticeVector) -> Result<Vec<BigInt>> {
        self.pairings(j, v)
            .iter()
            .map(|p| integer_of(p).ok_or_else(|| Error::NotInLatticeLv { vector: v.to_i64() }))
            .collect()
    }

    /// `I_(m)`: rays of top simplex `j` whose coordinate of `v` is not
    /// divisible by `m`.
    pub fn mod_m_face(&self, j: usize, v: &LatticeVector, m: u64) -> Result<Vec<usize>> {
        let mb = BigInt::from(m);
        let p = self.integral_pairings(j, v)?;
        Ok(self.tops()[j].rays.iter().zip(&p).filter(|(_, x)| !x.is_multiple_of(&mb)).map(|(&i, _)| i).collect())
    }

    /// Partition of the top simplices by their mod-`m` faces, with the
    /// shared-core property checked on every top simplex containing a core.
    pub fn mod_m_partition(&self, v: &LatticeVector, m: u64) -> Result<ModPartition> {
        if !self.condition_p() {
            return Err(Error::ConditionPViolated);
        }
        if !self.is_generic(v) {
            return Err(Error::NotGeneric { vector: v.to_i64() });
        }
        if m == 0 {
            return Err(Error::PreconditionViolated("modulus must be positive".into()));
        }
        let mb = BigInt::from(m);
        let mut by_core: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for j in 0..self.tops().len() {
            by_core.entry(self.mod_m_face(j, v, m)?).or_default().push(j);
        }
        let residue_on = |j: usize, core: &[usize]| -> Result<Vec<i64>> {
            let t = &self.tops()[j];
            let p = self.integral_pairings(j, v)?;
            Ok(core
                .iter()
                .map(|i| {
                    let pos = t.rays.iter().position(|r| r == i).expect("core inside simplex");
                    p[pos].mod_floor(&mb).to_i64().expect("residue fits")
                })
                .collect())
        };
        let mut blocks = Vec::new();
        for (core, members) in by_core {
            let residues = residue_on(members[0], &core)?;
            for (j, t) in self.tops().iter().enumerate() {
                if !core.iter().all(|i| t.rays.contains(i)) {
                    continue;
                }
                if self.mod_m_face(j, v, m)? != core || residue_on(j, &core)? != residues {
                    return Err(Error::InvariantViolated(format!(
                        "mod {m} face {:?} is not shared by {:?}",
                        one_based(&core),
                        one_based(&t.rays)
                    )));
                }
            }
            blocks.push(ModBlock { core, members, residues });
        }
        Ok(ModPartition { v: v.clone(), modulus: m, blocks })
    }

    fn require_divisible(&self, n: u64) -> Result<()> {
        if !self.condition_p() {
            return Err(Error::ConditionPViolated);
        }
        if !self.c1_divisible_by(n) {
            return Err(Error::NotDivisible(n));
        }
        Ok(())
    }

    /// `<u^I, v> mod n`, checked to be the same for every top simplex.
    pub fn v_type(&self, v: &LatticeVector, n: u64) -> Result<u64> {
        self.require_divisible(n)?;
        let nb = BigInt::from(n);
        let mut value = None;
        for j in 0..self.tops().len() {
            let s: BigInt = self.integral_pairings(j, v)?.iter().sum();
            let r = s.mod_floor(&nb).to_u64().expect("residue fits");
            match value {
                None => value = Some(r),
                Some(x) if x != r => {
                    return Err(Error::InvariantViolated(format!("v-type differs between simplices ({x} vs {r})")));
                }
                _ => {}
            }
        }
        Ok(value.expect("at least one top simplex"))
    }

    /// `sum_{i in I} h_i mod n` with `<u_i^I, v> = m h_i + r_i`, `0 <= r_i < m`,
    /// checked to be the same across the block.
    pub fn vm_type(&self, partition: &ModPartition, block: usize, n: u64) -> Result<u64> {
        self.require_divisible(n)?;
        let nb = BigInt::from(n);
        let mb = BigInt::from(partition.modulus);
        let mut value = None;
        for &j in &partition.blocks[block].members {
            let h: BigInt = self.integral_pairings(j, &partition.v)?.iter().map(|p| p.div_floor(&mb)).sum();
            let r = h.mod_floor(&nb).to_u64().expect("residue fits");
            match value {
                None => value = Some(r),
                Some(x) if x != r => {
                    return Err(Error::InvariantViolated(format!("(v,m)-type differs inside a block ({x} vs {r})")));
                }
                _ => {}
            }
        }
        Ok(value.expect("blocks are nonempty"))
    }
}
