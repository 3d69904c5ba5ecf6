//! Rationals modulo one and exact arithmetic in cyclotomic fields.
//!
//! An element of Q(zeta_M) is stored as an integer coefficient vector over
//! the power basis 1, zeta_M, ..., zeta_M^(d-1) (d = phi(M)) together with a
//! positive common denominator. The representation is canonical, so equality
//! is coefficient equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rational number reduced into `[0, 1)`, used as the exponent of a root of
/// unity: the angle `a` stands for `exp(2 pi i a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Angle {
    num: i64,
    den: i64,
}

impl Angle {
    pub const ZERO: Angle = Angle { num: 0, den: 1 };

    /// Reduces `num/den` modulo one.
    ///
    /// # Panics
    /// If `den == 0`.
    pub fn new(num: i64, den: i64) -> Angle {
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Angle {
        assert!(den != 0, "angle with zero denominator");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        num = num.rem_euclid(den);
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        if num == 0 {
            den = 1;
        }
        Angle {
            num: i64::try_from(num).expect("angle numerator overflow"),
            den: i64::try_from(den).expect("angle denominator overflow"),
        }
    }

    /// The fractional part of `r`.
    ///
    /// # Panics
    /// If the reduced denominator does not fit into an `i64`.
    pub fn from_rational(r: &BigRational) -> Angle {
        let den = r.denom().to_i128().expect("angle denominator overflow");
        let num = r.numer().mod_floor(r.denom()).to_i128().expect("angle numerator overflow");
        Self::from_i128(num, den)
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    /// `self * r` reduced modulo one. Used for fractional powers `zeta^r`
    /// with `zeta = exp(2 pi i self)`.
    pub fn scale(&self, r: &BigRational) -> Angle {
        Angle::from_rational(&(self.to_rational() * r))
    }

    pub fn scale_int(&self, k: i64) -> Angle {
        Self::from_i128(self.num as i128 * k as i128, self.den as i128)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, o: Angle) -> Angle {
        let den = self.den as i128 * o.den as i128;
        Angle::from_i128(self.num as i128 * o.den as i128 + o.num as i128 * self.den as i128, den)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle::from_i128(-(self.num as i128), self.den as i128)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, o: Angle) -> Angle {
        self + (-o)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Precomputed data for one conductor.
#[derive(Debug)]
struct CycloField {
    conductor: u64,
    degree: usize,
    /// `zeta^e` reduced modulo the cyclotomic polynomial, for `0 <= e < M`.
    powers: Vec<Vec<BigInt>>,
    /// Residues `j mod M` coprime to `M`, excluding 1 (the non-trivial
    /// Galois automorphisms `zeta -> zeta^j`).
    conjugators: Vec<u64>,
}

fn poly_divide_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

fn cyclotomic_polynomial(m: u64, cache: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = BigInt::from(-1);
    p[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let q = cyclotomic_polynomial(d, cache);
            p = poly_divide_exact(&p, &q);
        }
    }
    cache.insert(m, p.clone());
    p
}

impl CycloField {
    fn build(m: u64) -> CycloField {
        let mut cache = HashMap::new();
        let phi = cyclotomic_polynomial(m, &mut cache);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by zeta
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for i in 0..degree {
                    cur[i] -= &top * &phi[i];
                }
            }
        }
        let conjugators = (2..m).filter(|j| j.gcd(&m) == 1).collect();
        CycloField { conductor: m, degree, powers, conjugators }
    }
}

fn field(m: u64) -> Arc<CycloField> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("cyclotomic field cache poisoned");
    guard.entry(m).or_insert_with(|| Arc::new(CycloField::build(m))).clone()
}

/// An exact element of the cyclotomic field Q(zeta_M).
///
/// Binary operations accept operands of different conductors and lift both
/// to the least common multiple.
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNumber {
    fn raw(field: Arc<CycloField>, num: Vec<BigInt>, den: BigInt) -> CycloNumber {
        let mut x = CycloNumber { field, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn zero() -> CycloNumber {
        Self::from_integer(0)
    }

    pub fn one() -> CycloNumber {
        Self::from_integer(1)
    }

    pub fn from_integer(k: i64) -> CycloNumber {
        Self::from_rational(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_rational(r: &BigRational) -> CycloNumber {
        CycloNumber::raw(field(1), vec![r.numer().clone()], r.denom().clone())
    }

    /// Zero element of conductor `m`.
    pub fn zero_in(m: u64) -> CycloNumber {
        let f = field(m);
        let d = f.degree;
        CycloNumber { field: f, num: vec![BigInt::zero(); d], den: BigInt::one() }
    }

    /// Rational `r` viewed inside Q(zeta_m).
    pub fn rational_in(r: &BigRational, m: u64) -> CycloNumber {
        let mut x = Self::zero_in(m);
        x.num[0] = r.numer().clone();
        x.den = r.denom().clone();
        x.normalize();
        x
    }

    /// `exp(2 pi i a)` as an element of Q(zeta_m).
    pub fn root_of_unity(a: Angle, m: u64) -> Result<CycloNumber> {
        if m == 0 || (m as i64) % a.den() != 0 {
            return Err(Error::ConductorMismatch { den: a.den(), conductor: m });
        }
        let f = field(m);
        let e = (a.num() as u64) * (m / a.den() as u64);
        let num = f.powers[e as usize].clone();
        Ok(CycloNumber { field: f, num, den: BigInt::one() })
    }

    /// `exp(2 pi i a)` in the smallest field containing it.
    pub fn root(a: Angle) -> CycloNumber {
        Self::root_of_unity(a, a.den() as u64).expect("denominator divides itself")
    }

    /// Element of Q(zeta_m) from rational coordinates in the power basis.
    /// Higher powers than the field degree are reduced.
    pub fn from_coefficients(m: u64, coeffs: &[BigRational]) -> Result<CycloNumber> {
        if m == 0 {
            return Err(Error::ConductorMismatch { den: 1, conductor: 0 });
        }
        let f = field(m);
        let mut acc = CycloNumber::zero_in(m);
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = CycloNumber { field: f.clone(), num: f.powers[e % m as usize].clone(), den: BigInt::one() };
            acc = acc + p.scale(c);
        }
        Ok(acc)
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    pub fn degree(&self) -> usize {
        self.field.degree
    }

    /// Rational coordinates in the power basis of the current conductor.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The value as a rational number, when it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Lifts into Q(zeta_m2), which must contain Q(zeta_m).
    pub fn lift(&self, m2: u64) -> Result<CycloNumber> {
        let m = self.conductor();
        if m2 == 0 || !m2.is_multiple_of(m) {
            return Err(Error::ConductorMismatch { den: m as i64, conductor: m2 });
        }
        if m2 == m {
            return Ok(self.clone());
        }
        let f = field(m2);
        let k = m2 / m;
        let mut num = vec![BigInt::zero(); f.degree];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &f.powers[((i as u64 * k) % m2) as usize];
            for (j, pj) in p.iter().enumerate() {
                if !pj.is_zero() {
                    num[j] += c * pj;
                }
            }
        }
        Ok(CycloNumber::raw(f, num, self.den.clone()))
    }

    fn common_pair(&self, o: &CycloNumber) -> (CycloNumber, CycloNumber) {
        let m = self.conductor().lcm(&o.conductor());
        (self.lift(m).expect("lcm is a multiple"), o.lift(m).expect("lcm is a multiple"))
    }

    fn rational_scalar(&self) -> Option<(&BigInt, &BigInt)> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some((&self.num[0], &self.den))
        } else {
            None
        }
    }

    pub fn scale(&self, r: &BigRational) -> CycloNumber {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        CycloNumber::raw(self.field.clone(), num, &self.den * r.denom())
    }

    fn add_same(&self, o: &CycloNumber) -> CycloNumber {
        if self.den == o.den {
            let num = self.num.iter().zip(&o.num).map(|(a, b)| a + b).collect();
            return CycloNumber::raw(self.field.clone(), num, self.den.clone());
        }
        let num = self.num.iter().zip(&o.num).map(|(a, b)| a * &o.den + b * &self.den).collect();
        CycloNumber::raw(self.field.clone(), num, &self.den * &o.den)
    }

    fn mul_same(&self, o: &CycloNumber) -> CycloNumber {
        let d = self.field.degree;
        let m = self.field.conductor as usize;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = prod[..d].to_vec();
        for (e, c) in prod.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (j, pj) in self.field.powers[e % m].iter().enumerate() {
                if !pj.is_zero() {
                    num[j] += c * pj;
                }
            }
        }
        CycloNumber::raw(self.field.clone(), num, &self.den * &o.den)
    }

    /// Galois conjugate `zeta -> zeta^j` (j coprime to the conductor).
    fn conjugate(&self, j: u64) -> CycloNumber {
        let m = self.field.conductor;
        let mut num = vec![BigInt::zero(); self.field.degree];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &self.field.powers[((i as u64 * j) % m) as usize];
            for (k, pk) in p.iter().enumerate() {
                if !pk.is_zero() {
                    num[k] += c * pk;
                }
            }
        }
        CycloNumber::raw(self.field.clone(), num, self.den.clone())
    }

    /// Multiplicative inverse, computed as the product of all non-trivial
    /// Galois conjugates divided by the field norm.
    pub fn inv(&self) -> Result<CycloNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some((n, d)) = self.rational_scalar() {
            return Ok(CycloNumber::raw(self.field.clone(), {
                let mut v = vec![BigInt::zero(); self.field.degree];
                v[0] = d.clone();
                v
            }, n.clone()));
        }
        let mut others = CycloNumber::rational_in(&BigRational::one(), self.conductor());
        for &j in &self.field.conjugators {
            others = others.mul_same(&self.conjugate(j));
        }
        let norm = self
            .mul_same(&others)
            .to_rational()
            .ok_or_else(|| Error::InvariantViolated("field norm is not rational".into()))?;
        Ok(others.scale(&norm.recip()))
    }

    pub fn checked_div(&self, o: &CycloNumber) -> Result<CycloNumber> {
        Ok(self * &o.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Result<CycloNumber> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycloNumber::rational_in(&BigRational::one(), self.conductor());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Floating-point value under `zeta_M = exp(2 pi i / M)`. Diagnostic only.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.conductor() as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let (mut re, mut im) = (0.0, 0.0);
        for (i, c) in self.num.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN) / den;
            let th = 2.0 * std::f64::consts::PI * i as f64 / m;
            re += c * th.cos();
            im += c * th.sin();
        }
        (re, im)
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, o: &CycloNumber) -> bool {
        if self.conductor() == o.conductor() {
            return self.den == o.den && self.num == o.num;
        }
        match (self.rational_scalar(), o.rational_scalar()) {
            (Some(a), Some(b)) => a == b,
            (None, None) => {
                let (a, b) = self.common_pair(o);
                a.den == b.den && a.num == b.num
            }
            _ => false,
        }
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.conductor();
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = BigRational::new(c.clone(), self.den.clone());
            let neg = r.is_negative();
            let a = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", a)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", a)?;
                    }
                    if i == 1 {
                        write!(f, "z{}", m)?;
                    } else {
                        write!(f, "z{}^{}", m, i)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn binary(a: &CycloNumber, b: &CycloNumber, op: fn(&CycloNumber, &CycloNumber) -> CycloNumber) -> CycloNumber {
    if a.conductor() == b.conductor() {
        op(a, b)
    } else {
        let (x, y) = a.common_pair(b);
        op(&x, &y)
    }
}

impl CycloNumber {
    fn add_rational(&self, n: &BigInt, d: &BigInt) -> CycloNumber {
        let mut num: Vec<BigInt> = self.num.iter().map(|c| c * d).collect();
        num[0] += n * &self.den;
        CycloNumber::raw(self.field.clone(), num, &self.den * d)
    }
}

impl<'a> Add<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn add(self, o: &CycloNumber) -> CycloNumber {
        if self.conductor() != o.conductor() {
            if let Some((n, d)) = o.rational_scalar() {
                return self.add_rational(n, d);
            }
            if let Some((n, d)) = self.rational_scalar() {
                return o.add_rational(n, d);
            }
        }
        binary(self, o, CycloNumber::add_same)
    }
}

impl<'a> Mul<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn mul(self, o: &CycloNumber) -> CycloNumber {
        if let Some((n, d)) = o.rational_scalar() {
            return self.scale(&BigRational::new(n.clone(), d.clone()));
        }
        if let Some((n, d)) = self.rational_scalar() {
            return o.scale(&BigRational::new(n.clone(), d.clone()));
        }
        binary(self, o, CycloNumber::mul_same)
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber { field: self.field.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl<'a> Sub<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn sub(self, o: &CycloNumber) -> CycloNumber {
        self + &(-o)
    }
}

impl Add for CycloNumber {
    type Output = CycloNumber;
    fn add(self, o: CycloNumber) -> CycloNumber {
        &self + &o
    }
}

impl Sub for CycloNumber {
    type Output = CycloNumber;
    fn sub(self, o: CycloNumber) -> CycloNumber {
        &self - &o
    }
}

impl Mul for CycloNumber {
    type Output = CycloNumber;
    fn mul(self, o: CycloNumber) -> CycloNumber {
        &self * &o
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(a: i64, b: i64, m: u64) -> CycloNumber {
        CycloNumber::root_of_unity(Angle::new(a, b), m).unwrap()
    }

    #[test]
    fn angle_reduction() {
        assert_eq!(Angle::new(5, 3), Angle::new(2, 3));
        assert_eq!(Angle::new(-1, 4), Angle::new(3, 4));
        assert_eq!(Angle::new(4, 2), Angle::ZERO);
        assert_eq!(Angle::new(1, -3), Angle::new(2, 3));
        assert_eq!(Angle::new(1, 3) + Angle::new(2, 3), Angle::ZERO);
    }

    #[test]
    fn roots_from_examples() {
        assert!(z(0, 1, 7).is_one());
        assert_eq!(z(1, 2, 2), CycloNumber::from_integer(-1));
        let s = &(&CycloNumber::one() + &z(1, 3, 3)) + &z(2, 3, 3);
        assert!(s.is_zero());
        assert!(matches!(
            CycloNumber::root_of_unity(Angle::new(1, 3), 4),
            Err(Error::ConductorMismatch { .. })
        ));
    }

    #[test]
    fn products_and_inverses() {
        let one = CycloNumber::one();
        let p = &(&one - &z(1, 3, 3)) * &(&one - &z(2, 3, 3));
        assert_eq!(p, CycloNumber::from_integer(3));
        let x = &one - &z(1, 5, 5);
        assert!((&x * &x.inv().unwrap()).is_one());
        assert_eq!(&z(1, 4, 4) * &z(1, 4, 4), CycloNumber::from_integer(-1));
        assert_eq!(CycloNumber::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn lifting() {
        assert_eq!(CycloNumber::from_integer(-1).lift(4).unwrap(), z(2, 4, 4));
        assert_eq!(z(1, 3, 3).lift(6).unwrap(), z(2, 6, 6));
        let r = BigRational::new(5.into(), 7.into());
        let x = CycloNumber::rational_in(&r, 3).lift(12).unwrap();
        assert_eq!(x.to_rational(), Some(r));
        assert!(z(1, 3, 3).lift(4).is_err());
    }

    #[test]
    fn mixed_conductors_lift_to_lcm() {
        let a = z(1, 3, 3);
        let b = z(1, 4, 4);
        let c = &a * &b;
        assert_eq!(c.conductor(), 12);
        assert_eq!(c, z(7, 12, 12));
    }

    #[test]
    fn character_sums_vanish() {
        for m in 2..13u64 {
            let mut s = CycloNumber::zero_in(m);
            for e in 0..m as i64 {
                s = &s + &z(e, m as i64, m);
            }
            assert!(s.is_zero(), "m = {m}");
        }
    }

    #[test]
    fn float_shadow() {
        let x = &(&CycloNumber::from_integer(2) - &z(1, 7, 7)) * &z(3, 7, 7);
        let (re, im) = x.to_complex();
        let th = 2.0 * std::f64::consts::PI / 7.0;
        let (er, ei) = (2.0 * (3.0 * th).cos() - (4.0 * th).cos(), 2.0 * (3.0 * th).sin() - (4.0 * th).sin());
        assert!((re - er).abs() < 1e-9 && (im - ei).abs() < 1e-9);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(format!("{}", CycloNumber::zero()), "0");
        assert_eq!(format!("{}", &CycloNumber::one() - &z(1, 5, 5)), "1 - z5");
    }
}
