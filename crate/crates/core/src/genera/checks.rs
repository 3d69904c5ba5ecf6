//! Rigidity, vanishing and the `t -> tq` translation law for genera of
//! level `N`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclotomic::{Angle, CycloNumber};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::multifan::MultiFan;
use crate::series::{shift_t_by_q, zeta_power, QSeries};

use super::elliptic_genus_v;

/// A nonzero coefficient of `t^e q^s` with `e != 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct OffendingTerm {
    pub vector: LatticeVector,
    pub qpower: usize,
    pub t_exponent: i64,
    pub coefficient: CycloNumber,
}

/// The genus along one vector.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorVerdict {
    pub vector: LatticeVector,
    /// `<u^I, v> mod N`, when `c_1` is divisible by `N`.
    pub v_type: Option<u64>,
    pub is_constant: bool,
    /// Coefficients of `t^0`.
    pub constant: QSeries<CycloNumber>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RigidityVerdict {
    pub level: u64,
    pub sigma: Angle,
    pub qorder: usize,
    /// Constant along every vector, with the same constant each time.
    pub is_constant: bool,
    /// The common constant when `is_constant`.
    pub constant: Option<QSeries<CycloNumber>>,
    pub constants_agree: bool,
    pub per_vector: Vec<VectorVerdict>,
    pub offending: Vec<OffendingTerm>,
}

impl RigidityVerdict {
    pub fn vanishes(&self) -> bool {
        self.constant.as_ref().is_some_and(|c| c.is_zero())
    }
}

fn preconditions(fan: &MultiFan, level: u64) -> Result<()> {
    if !fan.condition_p() {
        return Err(Error::ConditionPViolated);
    }
    if !fan.c1_divisible_by(level) {
        return Err(Error::NotDivisible(level));
    }
    Ok(())
}

/// Whether `zeta^h != 1`.
fn nontrivial_type(sigma: Angle, h: u64) -> bool {
    !(sigma.to_rational() * BigRational::from_integer(BigInt::from(h))).is_integer()
}

/// Generic vectors in `L_V` for the rigidity test: the first three in
/// search order, extended until some `zeta^{h(v)} != 1` when the level
/// allows it.
fn test_vectors(fan: &MultiFan, sigma: Angle, level: u64, typed: bool) -> Result<Vec<(LatticeVector, Option<u64>)>> {
    let mut out: Vec<(LatticeVector, Option<u64>)> = Vec::new();
    let type_of = |v: &LatticeVector| if typed { fan.v_type(v, level).map(Some) } else { Ok(None) };
    for v in fan.generic_vectors(3)? {
        let h = type_of(&v)?;
        out.push((v, h));
    }
    if !typed || out.iter().any(|(_, h)| h.is_some_and(|h| nontrivial_type(sigma, h))) {
        return Ok(out);
    }
    let mut m = 1u64;
    let limit = 4096u64;
    while m <= limit {
        let v = fan.candidate_vector(m)?;
        m += 1;
        if !fan.is_generic(&v) || out.iter().any(|(w, _)| w == &v) {
            continue;
        }
        let h = type_of(&v)?;
        if h.is_some_and(|h| nontrivial_type(sigma, h)) {
            out.push((v, h));
            break;
        }
    }
    Ok(out)
}

/// Checks that the genus at `sigma` is constant in `t` through `q^qorder`
/// along several generic vectors and that the constants coincide. The
/// level is the reduced denominator of `sigma`. With `force`, condition
/// (P) and divisibility of `c_1` are not required.
pub fn rigidity_check(fan: &MultiFan, sigma: Angle, qorder: usize, force: bool) -> Result<RigidityVerdict> {
    if sigma.is_zero() {
        return Err(Error::ZetaIsOne);
    }
    let level = sigma.den() as u64;
    let typed = match preconditions(fan, level) {
        Ok(()) => true,
        Err(e) if !force => return Err(e),
        Err(_) => fan.c1_divisible_by(level),
    };
    let mut per_vector = Vec::new();
    let mut offending = Vec::new();
    for (v, h) in test_vectors(fan, sigma, level, typed)? {
        let g = elliptic_genus_v(fan, &v, sigma, qorder)?;
        let mut constant = QSeries::zero(1, qorder);
        let mut is_constant = true;
        for s in 0..=qorder {
            let c = g.coeff(s);
            constant.set(s, c.coeff(0));
            for (e, x) in c.terms() {
                if e != 0 {
                    is_constant = false;
                    offending.push(OffendingTerm { vector: v.clone(), qpower: s, t_exponent: e, coefficient: x.clone() });
                }
            }
        }
        per_vector.push(VectorVerdict { vector: v, v_type: h, is_constant, constant });
    }
    let constants_agree = per_vector.windows(2).all(|w| w[0].constant == w[1].constant);
    let all_constant = per_vector.iter().all(|p| p.is_constant);
    let is_constant = all_constant && constants_agree;
    Ok(RigidityVerdict {
        level,
        sigma,
        qorder,
        is_constant,
        constant: is_constant.then(|| per_vector[0].constant.clone()),
        constants_agree,
        per_vector,
        offending,
    })
}

/// Rigid at `sigma = 1/level` with constant zero.
pub fn vanishing_check(fan: &MultiFan, level: u64, qorder: usize) -> Result<bool> {
    let level = i64::try_from(level).map_err(|_| Error::InvariantViolated("level overflow".into()))?;
    let r = rigidity_check(fan, Angle::new(1, level), qorder, false)?;
    Ok(r.is_constant && r.vanishes())
}

#[derive(Clone, Debug, PartialEq)]
pub struct TranslationCheck {
    pub holds: bool,
    pub v_type: u64,
    /// Last q-step compared.
    pub reliable_steps: Option<usize>,
    /// Steps where the two sides differ.
    pub failures: Vec<usize>,
}

/// Compares the genus after `t -> tq` with `zeta^{h(v)}` times the genus,
/// on the steps where the truncated shift is exact.
pub fn translation_check(fan: &MultiFan, v: &LatticeVector, sigma: Angle, qorder: usize) -> Result<TranslationCheck> {
    let level = sigma.den() as u64;
    let h = fan.v_type(v, level)?;
    let g = elliptic_genus_v(fan, v, sigma, qorder)?;
    let shifted = shift_t_by_q(&g.series);
    let lhs = shifted.combined();
    let factor = zeta_power(sigma, &BigRational::from_integer(BigInt::from(h)));
    let rhs = g.series.scale_cyclo(&factor);
    let reliable = shifted.reliable_steps();
    let mut failures = Vec::new();
    if let Some(last) = reliable {
        for s in 0..=last {
            if lhs.coeff(s) != rhs.coeff(s) {
                failures.push(s);
            }
        }
    }
    Ok(TranslationCheck { holds: reliable.is_some() && failures.is_empty(), v_type: h, reliable_steps: reliable, failures })
}
