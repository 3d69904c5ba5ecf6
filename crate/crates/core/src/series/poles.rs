//! Sums of series whose coefficients share denominators built from factors
//! `1 - omega t^m`.
//!
//! Fixed-point formulas produce exactly such sums. Keeping the denominators
//! factored lets the total be cleared over a common multiple and divided
//! back out exactly, which certifies that the poles cancel.

use std::collections::BTreeMap;

use crate::cyclotomic::{Angle, CycloNumber};
use crate::error::{Error, Result};

use super::laurent::{poly_divrem, poly_mul, LaurentPoly};
use super::qseries::QSeries;
use super::ratfunc::RatFunc;
use super::Ring;

/// The monic binomial `t^k - exp(2 pi i alpha)`, `k > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    pub k: u64,
    pub alpha: Angle,
}

impl Binomial {
    pub fn expand(&self) -> Vec<CycloNumber> {
        let mut p = vec![CycloNumber::zero(); self.k as usize + 1];
        p[0] = -&CycloNumber::root(self.alpha);
        p[self.k as usize] = CycloNumber::one();
        p
    }
}

/// A finite product of binomials with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinomialProduct(BTreeMap<Binomial, u32>);

impl BinomialProduct {
    pub fn one() -> BinomialProduct {
        BinomialProduct(BTreeMap::new())
    }

    pub fn single(b: Binomial) -> BinomialProduct {
        BinomialProduct(BTreeMap::from([(b, 1)]))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Binomial, &u32)> {
        self.0.iter()
    }

    pub fn mul(&self, o: &BinomialProduct) -> BinomialProduct {
        let mut m = self.0.clone();
        for (b, e) in &o.0 {
            *m.entry(*b).or_insert(0) += e;
        }
        BinomialProduct(m)
    }

    pub fn lcm(&self, o: &BinomialProduct) -> BinomialProduct {
        let mut m = self.0.clone();
        for (b, e) in &o.0 {
            let x = m.entry(*b).or_insert(0);
            *x = (*x).max(*e);
        }
        BinomialProduct(m)
    }

    /// `self / o`, assuming `o` divides `self` factor by factor.
    fn cofactor(&self, o: &BinomialProduct) -> BinomialProduct {
        let mut m = self.0.clone();
        for (b, e) in &o.0 {
            let x = m.get_mut(b).expect("cofactor of a non-divisor");
            *x -= e;
            if *x == 0 {
                m.remove(b);
            }
        }
        BinomialProduct(m)
    }

    pub fn expand(&self) -> Vec<CycloNumber> {
        let mut p = vec![CycloNumber::one()];
        for (b, &e) in &self.0 {
            let f = b.expand();
            for _ in 0..e {
                p = poly_mul(&p, &f);
            }
        }
        p
    }

    pub fn expand_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_dense(0, self.expand())
    }
}

/// `1 / (1 - exp(2 pi i omega) t^m)` written as `unit / binomials`.
pub fn inverse_one_minus(omega: Angle, m: i64) -> Result<(LaurentPoly, BinomialProduct)> {
    let w = CycloNumber::root(omega);
    match m.signum() {
        0 => {
            if omega.is_zero() {
                return Err(Error::PoleAtLatticePoint);
            }
            let c = (&CycloNumber::one() - &w).inv()?;
            Ok((LaurentPoly::constant(c), BinomialProduct::one()))
        }
        1 => {
            // 1 - w t^m = -w (t^m - w^-1)
            let unit = -&CycloNumber::root(-omega);
            Ok((LaurentPoly::constant(unit), BinomialProduct::single(Binomial { k: m as u64, alpha: -omega })))
        }
        _ => {
            // 1 - w t^m = t^m (t^{|m|} - w)
            let k = m.unsigned_abs();
            Ok((LaurentPoly::monomial(CycloNumber::one(), k as i64), BinomialProduct::single(Binomial { k, alpha: omega })))
        }
    }
}

/// A q-series of Laurent polynomials divided by a fixed binomial product.
#[derive(Clone, Debug)]
pub struct FactoredSeries {
    pub numerator: QSeries<LaurentPoly>,
    pub denominator: BinomialProduct,
}

impl FactoredSeries {
    pub fn polynomial(numerator: QSeries<LaurentPoly>) -> FactoredSeries {
        FactoredSeries { numerator, denominator: BinomialProduct::one() }
    }

    pub fn one(granularity: u32, steps: usize) -> FactoredSeries {
        Self::polynomial(QSeries::one(granularity, steps))
    }

    pub fn mul(&self, o: &FactoredSeries) -> FactoredSeries {
        FactoredSeries { numerator: self.numerator.mul(&o.numerator), denominator: self.denominator.mul(&o.denominator) }
    }

    pub fn scale_cyclo(&self, c: &CycloNumber) -> FactoredSeries {
        FactoredSeries { numerator: self.numerator.scale_cyclo(c), denominator: self.denominator.clone() }
    }

    /// Coefficientwise reduced rational functions.
    pub fn to_ratfunc_series(&self) -> Result<QSeries<RatFunc>> {
        let den = self.denominator.expand_laurent();
        self.numerator.try_map(|c| RatFunc::new(c.clone(), den.clone()))
    }
}

/// Accumulator for a sum of [`FactoredSeries`] of one shape.
#[derive(Clone, Debug)]
pub struct PoleSum {
    granularity: u32,
    steps: usize,
    groups: BTreeMap<BinomialProduct, QSeries<LaurentPoly>>,
}

impl PoleSum {
    pub fn new(granularity: u32, steps: usize) -> PoleSum {
        PoleSum { granularity, steps, groups: BTreeMap::new() }
    }

    pub fn add(&mut self, term: &FactoredSeries) {
        let num = term.numerator.truncate(self.steps);
        assert_eq!(num.granularity(), self.granularity, "granularity mismatch");
        match self.groups.get_mut(&term.denominator) {
            Some(acc) => *acc = acc.add(&num),
            None => {
                self.groups.insert(term.denominator.clone(), num);
            }
        }
    }

    pub fn merge(&mut self, other: PoleSum) {
        for (den, num) in other.groups {
            self.add(&FactoredSeries { numerator: num, denominator: den });
        }
    }

    /// The sum, with each coefficient certified to be a Laurent polynomial.
    pub fn finish(&self) -> Result<QSeries<LaurentPoly>> {
        let common = self.groups.keys().fold(BinomialProduct::one(), |l, d| l.lcm(d));
        let mut total: QSeries<LaurentPoly> = QSeries::zero(self.granularity, self.steps);
        for (den, num) in &self.groups {
            let cof = common.cofactor(den).expand_laurent();
            total = total.add(&num.map(|c| c.mul_ref(&cof)));
        }
        if common.is_one() {
            return Ok(total);
        }
        let l = common.expand();
        total.try_map(|c| {
            if c.is_zero() {
                return Ok(LaurentPoly::zero());
            }
            let (low, dense) = c.as_poly();
            let (q, r) = poly_divrem(dense, &l)?;
            if r.is_empty() {
                Ok(LaurentPoly::from_dense(low, q))
            } else {
                let reduced = RatFunc::new(c.clone(), LaurentPoly::from_dense(0, l.clone()))?;
                Err(Error::ResidualPole { denominator: reduced.denominator().to_string() })
            }
        })
    }
}
