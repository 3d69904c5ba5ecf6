use std::fmt;

use crate::cyclotomic::CycloNumber;
use crate::error::{Error, Result};

use super::laurent::{poly_divrem, poly_gcd, LaurentPoly};
use super::Ring;

/// A reduced rational function in `t`.
///
/// The denominator is an ordinary polynomial with nonzero constant term and
/// leading coefficient one, coprime to the numerator. This form is unique.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(LaurentPoly::zero()));
        }
        let (dl, dc) = den.as_poly();
        let lead_inv = dc.last().expect("nonzero").inv()?;
        let num = num.shift(-dl).scale(&lead_inv);
        let dc: Vec<CycloNumber> = dc.iter().map(|c| c * &lead_inv).collect();
        let (nl, nc) = num.as_poly();
        let g = poly_gcd(nc, &dc)?;
        if g.len() <= 1 {
            return Ok(RatFunc { num, den: LaurentPoly::from_dense(0, dc) });
        }
        let (nq, nr) = poly_divrem(nc, &g)?;
        let (dq, dr) = poly_divrem(&dc, &g)?;
        if !nr.is_empty() || !dr.is_empty() {
            return Err(Error::InvariantViolated("gcd does not divide".into()));
        }
        // g has nonzero constant term, so the quotient still starts at t^0
        Ok(RatFunc { num: LaurentPoly::from_dense(nl, nq), den: LaurentPoly::from_dense(0, dq) })
    }

    pub fn from_poly(p: LaurentPoly) -> RatFunc {
        RatFunc { num: p, den: LaurentPoly::constant(CycloNumber::one()) }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The Laurent polynomial this function equals, or `ResidualPole`.
    pub fn assert_polynomial(&self) -> Result<LaurentPoly> {
        if self.is_polynomial() {
            Ok(self.num.clone())
        } else {
            Err(Error::ResidualPole { denominator: self.den.to_string() })
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul_ref(&o.inv()?))
    }

    fn add_impl(&self, o: &RatFunc) -> Result<RatFunc> {
        if self.den == o.den {
            return RatFunc::new(self.num.add_ref(&o.num), self.den.clone());
        }
        let (_, b) = self.den.as_poly();
        let (_, d) = o.den.as_poly();
        let g = poly_gcd(b, d)?;
        let (b1, _) = poly_divrem(b, &g)?;
        let (d1, _) = poly_divrem(d, &g)?;
        let b1 = LaurentPoly::from_dense(0, b1);
        let d1 = LaurentPoly::from_dense(0, d1);
        let num = self.num.mul_ref(&d1).add_ref(&o.num.mul_ref(&b1));
        RatFunc::new(num, self.den.mul_ref(&d1))
    }

    fn mul_impl(&self, o: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(self.num.mul_ref(&o.num), self.den.mul_ref(&o.den))
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(LaurentPoly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(LaurentPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add_impl(o).expect("sum of reduced rational functions")
    }
    fn neg_ref(&self) -> Self {
        RatFunc { num: self.num.neg_ref(), den: self.den.clone() }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul_impl(o).expect("product of reduced rational functions")
    }
    fn scale_cyclo(&self, c: &CycloNumber) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}] / [{}]", self.num, self.den)
        }
    }
}
