//! Coefficients of the elliptic genera as characters of the torus, and the
//! comparison of their window sums with the genera along `v`.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::{Angle, CycloNumber};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::multifan::MultiFan;
use crate::series::{big_phi_series, geometric_q, geometric_q_shifted, LaurentPoly, QSeries, Ring};

use super::hat::hat_h_data;
use super::{check_vector, elliptic_genus_v, orbifold_elliptic_genus_v, GenusSeries};

/// Coefficient of `t^{-u}` for every `u` in the box `[-bound, bound]^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    pub bound: i64,
    pub qorder: usize,
    pub sigma: Angle,
    pub orbifold: bool,
    pub entries: BTreeMap<Vec<i64>, QSeries<CycloNumber>>,
}

impl CharacterTable {
    pub fn get(&self, u: &[i64]) -> Option<&QSeries<CycloNumber>> {
        self.entries.get(u)
    }

    /// Points with some coordinate equal to `+-bound`.
    fn boundary(&self) -> impl Iterator<Item = (&Vec<i64>, &QSeries<CycloNumber>)> {
        let b = self.bound;
        self.entries.iter().filter(move |(u, _)| u.iter().any(|c| c.abs() == b))
    }
}

/// One summand `(-1)^|J| deg(Delta_J)` with its rays and, for the orbifold
/// table, the fractions of each `h in H_J`.
struct Stratum {
    sign_degree: i64,
    rays: Vec<Vec<i64>>,
    sectors: Vec<Vec<BigRational>>,
}

fn strata(fan: &MultiFan, orbifold: bool) -> Result<(Vec<Stratum>, u32)> {
    fan.require_complete()?;
    let hat = if orbifold { Some(hat_h_data(fan)?) } else { None };
    let mut out = Vec::new();
    let mut g = 1u64;
    for key in fan.sigma() {
        let deg = fan.project(key)?.fan.degree()?;
        if deg == 0 {
            continue;
        }
        let sign = if key.len() % 2 == 0 { 1 } else { -1 };
        let rays = key.iter().map(|&i| fan.ray(i).to_i64()).collect();
        let sectors = match &hat {
            None => vec![vec![BigRational::zero(); key.len()]],
            Some(h) => {
                let e = h.entry(key).expect("every simplex has an entry");
                e.all.iter().map(|t| t.fractions.clone()).collect()
            }
        };
        for s in &sectors {
            for f in s {
                g = num_integer::lcm(g, f.denom().to_u64().expect("denominator fits"));
            }
        }
        out.push(Stratum { sign_degree: sign * deg, rays, sectors });
    }
    let g = u32::try_from(g).map_err(|_| Error::InvariantViolated("granularity overflow".into()))?;
    Ok((out, g))
}

fn pair(u: &[i64], v: &[i64]) -> i64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn table(fan: &MultiFan, sigma: Angle, qorder: usize, bound: i64, orbifold: bool) -> Result<CharacterTable> {
    if sigma.is_zero() {
        return Err(Error::ZetaIsOne);
    }
    let (strata, g) = strata(fan, orbifold)?;
    let steps = qorder * g as usize;
    let phi = big_phi_series(sigma, qorder, 1)?;
    let mut phi_n = QSeries::one(1, qorder);
    for _ in 0..fan.rank() {
        phi_n = phi_n.mul(&phi);
    }
    let mut cache: HashMap<(i64, BigRational), QSeries<CycloNumber>> = HashMap::new();
    let mut entries = BTreeMap::new();
    for u in fan_window(fan.rank(), bound) {
        let mut acc: QSeries<CycloNumber> = QSeries::zero(g, steps);
        for s in &strata {
            let m: Vec<i64> = s.rays.iter().map(|v| pair(&u, v)).collect();
            let mut sector_sum: QSeries<CycloNumber> = QSeries::zero(g, steps);
            for fr in &s.sectors {
                let mut prod = QSeries::one(g, steps);
                for (mi, f) in m.iter().zip(fr) {
                    let key = (*mi, f.clone());
                    if !cache.contains_key(&key) {
                        let series = if f.is_zero() && g == 1 {
                            geometric_q(*mi, sigma, steps, g)?
                        } else {
                            geometric_q_shifted(*mi, f, sigma, steps, g)?
                        };
                        cache.insert(key.clone(), series);
                    }
                    prod = prod.mul(&cache[&key]);
                }
                sector_sum = sector_sum.add(&prod);
            }
            acc = acc.add(&sector_sum.scale_cyclo(&CycloNumber::from_integer(s.sign_degree)));
        }
        let acc = acc
            .coarsen(g)
            .ok_or_else(|| Error::InvariantViolated(format!("fractional q-power in the entry at {u:?}")))?;
        entries.insert(u, acc.mul(&phi_n));
    }
    Ok(CharacterTable { bound, qorder, sigma, orbifold, entries })
}

fn fan_window(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-bound..=bound).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

/// `sum_J (-1)^|J| deg(Delta_J) prod_{j in J} 1/(1 - zeta q^<u, v_j>) * Phi^n`.
pub fn character_table(fan: &MultiFan, sigma: Angle, qorder: usize, bound: i64) -> Result<CharacterTable> {
    table(fan, sigma, qorder, bound, false)
}

/// As `character_table`, with each `J` summed over `h in H_J` with weight
/// `prod_{i in J} (zeta q^<u, v_i>)^{f_{J,h,i}}`.
pub fn orbifold_character_table(fan: &MultiFan, sigma: Angle, qorder: usize, bound: i64) -> Result<CharacterTable> {
    table(fan, sigma, qorder, bound, true)
}

/// Outcome of comparing a window sum with the genus along `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheck {
    pub passed: bool,
    pub vector: LatticeVector,
    /// `(q-order, t-exponent)` pairs where the two sides differ.
    pub mismatches: Vec<(usize, i64)>,
    pub compared_terms: usize,
}

fn injective(points: &[Vec<i64>], v: &[i64]) -> bool {
    let mut seen = HashMap::with_capacity(points.len());
    points.iter().all(|u| seen.insert(pair(u, v), ()).is_none())
}

fn separating_vector(fan: &MultiFan, points: &[Vec<i64>]) -> Result<LatticeVector> {
    for m in 1..=4096u64 {
        let v = fan.candidate_vector(m)?;
        if fan.is_generic(&v) && injective(points, &v.to_i64()) {
            return Ok(v);
        }
    }
    Err(Error::WindowNotInjective)
}

/// Compares `sum_{u in window} t^{-<u, v>} table[u]` with the genus along
/// `v` at every q-order. Entries on the boundary of the window must vanish,
/// and every exponent of the genus must be reached from the window.
pub fn crosscheck_character_vs_fixedpoint(
    fan: &MultiFan,
    v: Option<&LatticeVector>,
    sigma: Angle,
    qorder: usize,
    bound: i64,
    orbifold: bool,
) -> Result<CrossCheck> {
    let tab = table(fan, sigma, qorder, bound, orbifold)?;
    let points: Vec<Vec<i64>> = tab.entries.keys().cloned().collect();
    let v = match v {
        Some(v) => {
            check_vector(fan, v)?;
            if !injective(&points, &v.to_i64()) {
                return Err(Error::WindowNotInjective);
            }
            v.clone()
        }
        None => separating_vector(fan, &points)?,
    };
    if let Some((u, _)) = tab.boundary().find(|(_, s)| !s.is_zero()) {
        return Err(Error::WindowTooSmall(format!("entry at boundary point {u:?} is nonzero")));
    }
    let genus: GenusSeries = if orbifold {
        orbifold_elliptic_genus_v(fan, &v, sigma, qorder)?
    } else {
        elliptic_genus_v(fan, &v, sigma, qorder)?
    }
    .unnormalized();
    let vi = v.to_i64();
    let mut mismatches = Vec::new();
    let mut compared = 0;
    for s in 0..=qorder {
        let mut window_sum = LaurentPoly::zero();
        for (u, entry) in &tab.entries {
            let c = entry.coeff(s);
            if !c.is_zero() {
                window_sum.add_assign_term(-pair(u, &vi), c);
            }
        }
        let exps: std::collections::BTreeSet<i64> = points.iter().map(|u| -pair(u, &vi)).collect();
        let g = genus.coeff(s);
        for (e, _) in g.terms() {
            if !exps.contains(&e) {
                return Err(Error::WindowTooSmall(format!("exponent {e} at q^{s} is not reached from the window")));
            }
        }
        let diff = window_sum.sub_ref(g);
        for (e, _) in diff.terms() {
            mismatches.push((s, e));
        }
        compared += window_sum.terms().count().max(g.terms().count());
    }
    Ok(CrossCheck { passed: mismatches.is_empty(), vector: v, mismatches, compared_terms: compared })
}
