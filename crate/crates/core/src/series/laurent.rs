use std::fmt;

use num_rational::BigRational;

use crate::cyclotomic::CycloNumber;
use crate::error::{Error, Result};

use super::Ring;

/// A Laurent polynomial in one variable `t` with cyclotomic coefficients.
///
/// Stored densely from the lowest to the highest nonzero exponent; the zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<CycloNumber>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn constant(c: CycloNumber) -> LaurentPoly {
        Self::monomial(c, 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: CycloNumber, e: i64) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: e, coeffs: vec![c] }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, CycloNumber)>>(terms: I) -> LaurentPoly {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_assign_term(e, &c);
        }
        out
    }

    /// Dense constructor: coefficient `coeffs[j]` multiplies `t^(low + j)`.
    pub fn from_dense(low: i64, coeffs: Vec<CycloNumber>) -> LaurentPoly {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> CycloNumber {
        let j = e - self.low;
        if j < 0 || j >= self.coeffs.len() as i64 {
            CycloNumber::zero()
        } else {
            self.coeffs[j as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &CycloNumber)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(j, c)| (self.low + j as i64, c))
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.coeffs.len() == 1)
    }

    pub fn constant_term(&self) -> CycloNumber {
        self.coeff(0)
    }

    /// Leading (highest-exponent) coefficient.
    pub fn leading(&self) -> Option<&CycloNumber> {
        self.coeffs.last()
    }

    pub fn add_assign_term(&mut self, e: i64, c: &CycloNumber) {
        if c.is_zero() {
            return;
        }
        if self.is_zero() {
            self.low = e;
            self.coeffs = vec![c.clone()];
            return;
        }
        if e < self.low {
            let pad = (self.low - e) as usize;
            let mut v = vec![CycloNumber::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.low = e;
        }
        let j = (e - self.low) as usize;
        if j >= self.coeffs.len() {
            self.coeffs.resize(j + 1, CycloNumber::zero());
        }
        self.coeffs[j] = &self.coeffs[j] + c;
        self.trim();
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &CycloNumber) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero();
        }
        let mut p = LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() };
        p.trim();
        p
    }

    pub fn scale_rational(&self, r: &BigRational) -> LaurentPoly {
        let mut p = LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x.scale(r)).collect() };
        p.trim();
        p
    }

    /// Substitutes `t -> t^-1`.
    pub fn invert_variable(&self) -> LaurentPoly {
        match self.max_exponent() {
            None => Self::zero(),
            Some(hi) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                LaurentPoly { low: -hi, coeffs }
            }
        }
    }

    /// Evaluates at `t = x`.
    pub fn evaluate(&self, x: &CycloNumber) -> Result<CycloNumber> {
        let mut acc = CycloNumber::zero();
        let mut pw = x.pow(self.low)?;
        for c in &self.coeffs {
            acc = &acc + &(c * &pw);
            pw = &pw * x;
        }
        Ok(acc)
    }

    /// Dense coefficient vector after dividing out `t^low` (an ordinary
    /// polynomial) together with `low`.
    pub(crate) fn as_poly(&self) -> (i64, &[CycloNumber]) {
        (self.low, &self.coeffs)
    }

    fn add_impl(&self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.max_exponent().unwrap().max(o.max_exponent().unwrap());
        let mut coeffs = vec![CycloNumber::zero(); (high - low + 1) as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            let k = (self.low - low) as usize + j;
            coeffs[k] = c.clone();
        }
        for (j, c) in o.coeffs.iter().enumerate() {
            let k = (o.low - low) as usize + j;
            coeffs[k] = &coeffs[k] + c;
        }
        LaurentPoly::from_dense(low, coeffs)
    }

    fn mul_impl(&self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![CycloNumber::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        LaurentPoly::from_dense(self.low + o.low, coeffs)
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::constant(CycloNumber::one())
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add_impl(o)
    }
    fn neg_ref(&self) -> Self {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul_impl(o)
    }
    fn scale_cyclo(&self, c: &CycloNumber) -> Self {
        self.scale(c)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| match e {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// Ordinary polynomials as dense coefficient slices (index = exponent).

pub(crate) fn poly_trim(p: &mut Vec<CycloNumber>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn poly_mul(a: &[CycloNumber], b: &[CycloNumber]) -> Vec<CycloNumber> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![CycloNumber::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn poly_divrem(a: &[CycloNumber], b: &[CycloNumber]) -> Result<(Vec<CycloNumber>, Vec<CycloNumber>)> {
    let db = b.len().checked_sub(1).ok_or(Error::DivisionByZero)?;
    let lead = &b[db];
    let monic = lead.is_one();
    let lead_inv = if monic { CycloNumber::one() } else { lead.inv()? };
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    if rem.len() <= db {
        return Ok((Vec::new(), rem));
    }
    let mut quot = vec![CycloNumber::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db];
        if c.is_zero() {
            continue;
        }
        let q = if monic { c.clone() } else { c * &lead_inv };
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                rem[i + j] = &rem[i + j] - &(&q * bj);
            }
        }
        quot[i] = q;
    }
    rem.truncate(db);
    poly_trim(&mut rem);
    poly_trim(&mut quot);
    Ok((quot, rem))
}

pub(crate) fn poly_monic(a: &[CycloNumber]) -> Result<Vec<CycloNumber>> {
    match a.last() {
        None => Ok(Vec::new()),
        Some(l) if l.is_one() => Ok(a.to_vec()),
        Some(l) => {
            let inv = l.inv()?;
            Ok(a.iter().map(|c| c * &inv).collect())
        }
    }
}

/// Monic greatest common divisor (Euclid).
pub(crate) fn poly_gcd(a: &[CycloNumber], b: &[CycloNumber]) -> Result<Vec<CycloNumber>> {
    let mut x = poly_monic(a)?;
    let mut y = poly_monic(b)?;
    while !y.is_empty() {
        let (_, r) = poly_divrem(&x, &y)?;
        x = y;
        y = poly_monic(&r)?;
    }
    poly_monic(&x)
}
