//! q-expansions of the two theta quotients and the geometric factors that
//! appear in the character formulas.
//!
//! With `zeta = exp(2 pi i sigma)` and `x = exp(2 pi i z)`:
//!
//! ```text
//! Phi(sigma)  = (zeta^{1/2} - zeta^{-1/2}) prod_{k>=1} (1 - zeta q^k)(1 - zeta^-1 q^k) / (1 - q^k)^2
//! phi(z)      = zeta^{-1/2} (1 - zeta x)/(1 - x)
//!               * prod_{k>=1} (1 - zeta x q^k)(1 - zeta^-1 x^-1 q^k) / ((1 - x q^k)(1 - x^-1 q^k))
//! ```
//!
//! Powers `zeta^a` for rational `a` mean `exp(2 pi i sigma a)` with `sigma`
//! reduced into `[0, 1)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::{Angle, CycloNumber};
use crate::error::{Error, Result};

use super::laurent::LaurentPoly;
use super::poles::{inverse_one_minus, FactoredSeries};
use super::qseries::QSeries;
use super::ratfunc::RatFunc;
use super::Ring;

/// The argument `exp(2 pi i z') = omega * t^m * q^f` of `phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpArg {
    pub m: i64,
    pub omega: Angle,
    /// Fractional q-shift in `[0, 1)`.
    pub f: BigRational,
}

impl ExpArg {
    pub fn new(m: i64, omega: Angle, f: BigRational) -> ExpArg {
        ExpArg { m, omega, f }
    }

    pub fn integral(m: i64, omega: Angle) -> ExpArg {
        ExpArg { m, omega, f: BigRational::zero() }
    }
}

/// `zeta^r`.
pub fn zeta_power(sigma: Angle, r: &BigRational) -> CycloNumber {
    CycloNumber::root(sigma.scale(r))
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Number of `q^{1/g}` steps in `r` (which must be a multiple of `1/g`).
fn steps_of(r: &BigRational, g: u32) -> Result<usize> {
    let s = r * BigRational::from_integer(BigInt::from(g));
    if !s.is_integer() || s.is_negative() {
        return Err(Error::GranularityMismatch { left: r.denom().to_u32().unwrap_or(u32::MAX), right: g });
    }
    Ok(s.to_integer().to_usize().expect("step count fits"))
}

/// `1 - c t^a q^{step/g}`.
fn one_minus(c: &CycloNumber, a: i64, step: usize, g: u32, steps: usize) -> QSeries<LaurentPoly> {
    let mut s = QSeries::one(g, steps);
    s.add_at(step, &LaurentPoly::monomial(-c, a));
    s
}

/// `sum_{j>=0} (c t^a q^{step/g})^j`, `step > 0`.
fn geometric(c: &CycloNumber, a: i64, step: usize, g: u32, steps: usize) -> QSeries<LaurentPoly> {
    debug_assert!(step > 0);
    let mut s = QSeries::zero(g, steps);
    let mut pw = CycloNumber::one();
    let mut j = 0usize;
    while j * step <= steps {
        s.set(j * step, LaurentPoly::monomial(pw.clone(), a * j as i64));
        pw = &pw * c;
        j += 1;
    }
    s
}

/// Truncated expansion of `Phi(sigma, tau)` through step `steps` at
/// granularity `g`.
pub fn big_phi_series(sigma: Angle, steps: usize, g: u32) -> Result<QSeries<CycloNumber>> {
    if sigma.is_zero() {
        return Err(Error::ZetaIsOne);
    }
    let z = CycloNumber::root(sigma);
    let zi = CycloNumber::root(-sigma);
    let c0 = &zeta_power(sigma, &half()) - &zeta_power(sigma, &-half());
    let mut s = QSeries::constant(c0, g, steps);
    let trace = &z + &zi;
    let gs = g as usize;
    for k in 1..=steps / gs {
        let step = k * gs;
        // (1 - zeta q^k)(1 - zeta^-1 q^k) = 1 - (zeta + zeta^-1) q^k + q^2k
        let mut f = QSeries::one(g, steps);
        f.add_at(step, &-&trace);
        f.add_at(2 * step, &CycloNumber::one());
        // 1/(1 - q^k)^2 = sum (j+1) q^{jk}
        let mut inv = QSeries::zero(g, steps);
        let mut j = 0;
        while j * step <= steps {
            inv.set(j * step, CycloNumber::from_integer(j as i64 + 1));
            j += 1;
        }
        s = s.mul(&f).mul(&inv);
    }
    Ok(s)
}

/// `1/(1 - zeta q^m)` expanded in nonnegative powers of `q`:
/// `sum_{s>=0} zeta^s q^{sm}` for `m > 0`, `-sum_{s>=1} zeta^-s q^{-sm}` for
/// `m < 0`, and the constant `1/(1 - zeta)` for `m = 0`.
pub fn geometric_q(m: i64, sigma: Angle, steps: usize, g: u32) -> Result<QSeries<CycloNumber>> {
    geometric_q_shifted(m, &BigRational::zero(), sigma, steps, g)
}

/// `(zeta q^m)^f / (1 - zeta q^m)` expanded in nonnegative powers of `q`,
/// for `0 <= f < 1`. For `m < 0` this uses
/// `(zeta q^m)^f/(1 - zeta q^m) = -(zeta q^m)^{f-1}/(1 - zeta^-1 q^{-m})`.
pub fn geometric_q_shifted(m: i64, f: &BigRational, sigma: Angle, steps: usize, g: u32) -> Result<QSeries<CycloNumber>> {
    let mut out = QSeries::zero(g, steps);
    if m == 0 {
        if sigma.is_zero() {
            return Err(Error::ZetaIsOne);
        }
        let c = (&CycloNumber::one() - &CycloNumber::root(sigma)).inv()?;
        out.set(0, &zeta_power(sigma, f) * &c);
        return Ok(out);
    }
    let mm = BigRational::from_integer(BigInt::from(m.abs()));
    if m > 0 {
        // sum_{s>=0} zeta^{s+f} q^{m(s+f)}
        let mut s = 0i64;
        loop {
            let e = BigRational::from_integer(s.into()) + f;
            let step = steps_of(&(&mm * &e), g)?;
            if step > steps {
                break;
            }
            out.add_at(step, &zeta_power(sigma, &e));
            s += 1;
        }
    } else {
        // -sum_{s>=1} zeta^{f-s} q^{|m|(s-f)}
        let mut s = 1i64;
        loop {
            let e = BigRational::from_integer(s.into()) - f;
            let step = steps_of(&(&mm * &e), g)?;
            if step > steps {
                break;
            }
            out.add_at(step, &-&zeta_power(sigma, &-e));
            s += 1;
        }
    }
    Ok(out)
}

/// `phi(z')` with the `k = 0` pole kept in factored form.
///
/// For `f = 0` the result is `numerator / (1 - omega t^m)` up to a unit; for
/// `f > 0` every factor is expanded and the denominator is trivial.
pub fn phi_factor(arg: &ExpArg, sigma: Angle, steps: usize, g: u32) -> Result<FactoredSeries> {
    if arg.f.is_negative() || arg.f >= BigRational::one() {
        return Err(Error::InvariantViolated("q-shift outside [0, 1)".into()));
    }
    let gs = g as usize;
    let m = arg.m;
    let w = CycloNumber::root(arg.omega);
    let wi = CycloNumber::root(-arg.omega);
    let z = CycloNumber::root(sigma);
    let zi = CycloNumber::root(-sigma);
    let zh = zeta_power(sigma, &-half());
    let zw = &z * &w;
    let ziwi = &zi * &wi;

    let mut out;
    let kmax;
    let f_step;
    if arg.f.is_zero() {
        let (unit, den) = inverse_one_minus(arg.omega, m)?;
        // zeta^{-1/2} (1 - zeta omega t^m) * unit / den
        let mut num = LaurentPoly::constant(zh.clone());
        num.add_assign_term(m, &-&(&zh * &zw));
        let num = num.mul_ref(&unit);
        out = FactoredSeries { numerator: QSeries::constant(num, g, steps), denominator: den };
        kmax = steps / gs;
        f_step = 0;
    } else {
        f_step = steps_of(&arg.f, g)?;
        // zeta^{-1/2} (1 - zeta x) / (1 - x), x = omega t^m q^f
        let s = one_minus(&zw, m, f_step, g, steps).mul(&geometric(&w, m, f_step, g, steps));
        out = FactoredSeries::polynomial(s.scale_cyclo(&zh));
        kmax = steps / gs + 1;
    }
    for k in 1..=kmax {
        let up = k * gs + f_step;
        let down = k * gs - f_step;
        if down > steps {
            break;
        }
        let mut s = one_minus(&ziwi, -m, down, g, steps).mul(&geometric(&wi, -m, down, g, steps));
        if up <= steps {
            s = s.mul(&one_minus(&zw, m, up, g, steps)).mul(&geometric(&w, m, up, g, steps));
        }
        out.numerator = out.numerator.mul(&s);
    }
    Ok(out)
}

/// Truncated expansion of `phi(z', tau, sigma)` with coefficients in the
/// field of rational functions of `t`.
pub fn phi_series(arg: &ExpArg, sigma: Angle, steps: usize, g: u32) -> Result<QSeries<RatFunc>> {
    phi_factor(arg, sigma, steps, g)?.to_ratfunc_series()
}

/// The Laurent polynomial a reduced rational function equals, or
/// `ResidualPole`.
pub fn assert_polynomial(x: &RatFunc) -> Result<LaurentPoly> {
    x.assert_polynomial()
}

/// Result of substituting `t -> t q` into a truncated series.
///
/// Monomials with `a >= 0` move forward and land in `series` when they stay
/// within `[0, D]`. Monomials with `a < 0` move to lower orders, where terms
/// from beyond the input window would also land; they are kept apart in
/// `backward` and flagged.
#[derive(Clone, Debug)]
pub struct ShiftedSeries {
    pub series: QSeries<LaurentPoly>,
    pub backward: QSeries<LaurentPoly>,
    /// Largest `|a|` over all monomials `t^a` of the input.
    pub max_abs_exponent: u64,
    /// Whether some forward monomial was pushed past `D`.
    pub overflowed: bool,
}

impl ShiftedSeries {
    /// Whether some monomial moved to a lower order.
    pub fn has_backward(&self) -> bool {
        !self.backward.is_zero()
    }

    /// `series + backward`: the full image of the input window.
    pub fn combined(&self) -> QSeries<LaurentPoly> {
        self.series.add(&self.backward)
    }

    /// Last step at which `combined()` agrees with the shift of the untruncated
    /// series, assuming higher orders carry `t`-exponents no larger in absolute
    /// value than those seen.
    pub fn reliable_steps(&self) -> Option<usize> {
        let g = self.series.granularity() as u64;
        (self.series.steps() as u64).checked_sub(self.max_abs_exponent * g).map(|s| s as usize)
    }
}

/// Maps `t^a q^{s/g}` to `t^a q^{s/g + a}`.
pub fn shift_t_by_q(s: &QSeries<LaurentPoly>) -> ShiftedSeries {
    let g = s.granularity() as i64;
    let d = s.steps() as i64;
    let mut fwd: QSeries<LaurentPoly> = QSeries::zero(s.granularity(), s.steps());
    let mut back = fwd.clone();
    let mut max_abs = 0u64;
    let mut overflowed = false;
    for (step, c) in s.coeffs().iter().enumerate() {
        for (a, x) in c.terms() {
            max_abs = max_abs.max(a.unsigned_abs());
            let target = step as i64 + a * g;
            let term = LaurentPoly::monomial(x.clone(), a);
            if a < 0 {
                if target >= 0 {
                    back.add_at(target as usize, &term);
                }
            } else if target <= d {
                fwd.add_at(target as usize, &term);
            } else {
                overflowed = true;
            }
        }
    }
    ShiftedSeries { series: fwd, backward: back, max_abs_exponent: max_abs, overflowed }
}
