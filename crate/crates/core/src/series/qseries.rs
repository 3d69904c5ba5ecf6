use std::fmt;

use num_rational::BigRational;

use crate::cyclotomic::CycloNumber;
use crate::error::{Error, Result};

use super::Ring;

/// `sum_{s=0}^{D} c_s q^{s/g} + O(q^{(D+1)/g})` with granularity `g`.
///
/// Binary operations require equal granularity and truncate to the shorter
/// operand.
#[derive(Clone, PartialEq)]
pub struct QSeries<R> {
    granularity: u32,
    coeffs: Vec<R>,
}

impl<R: Ring> QSeries<R> {
    /// The zero series known through step `steps`.
    pub fn zero(granularity: u32, steps: usize) -> QSeries<R> {
        assert!(granularity > 0, "granularity must be positive");
        QSeries { granularity, coeffs: vec![R::zero(); steps + 1] }
    }

    pub fn constant(c: R, granularity: u32, steps: usize) -> QSeries<R> {
        let mut s = Self::zero(granularity, steps);
        s.coeffs[0] = c;
        s
    }

    pub fn one(granularity: u32, steps: usize) -> QSeries<R> {
        Self::constant(R::one(), granularity, steps)
    }

    pub fn from_coeffs(granularity: u32, coeffs: Vec<R>) -> QSeries<R> {
        assert!(granularity > 0 && !coeffs.is_empty(), "empty series");
        QSeries { granularity, coeffs }
    }

    pub fn granularity(&self) -> u32 {
        self.granularity
    }

    /// Truncation order `D` in units of `q^{1/g}`.
    pub fn steps(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, s: usize) -> &R {
        &self.coeffs[s]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Adds `c` to the coefficient at step `s`; ignored beyond the window.
    pub fn add_at(&mut self, s: usize, c: &R) {
        if s < self.coeffs.len() {
            self.coeffs[s] = self.coeffs[s].add_ref(c);
        }
    }

    pub fn set(&mut self, s: usize, c: R) {
        self.coeffs[s] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The exponent of `q` at step `s`.
    pub fn exponent(&self, s: usize) -> BigRational {
        BigRational::new((s as i64).into(), (self.granularity as i64).into())
    }

    pub fn truncate(&self, steps: usize) -> QSeries<R> {
        QSeries { granularity: self.granularity, coeffs: self.coeffs[..=steps.min(self.steps())].to_vec() }
    }

    fn check(&self, o: &QSeries<R>) -> usize {
        assert_eq!(self.granularity, o.granularity, "granularity mismatch");
        self.steps().min(o.steps())
    }

    pub fn try_add(&self, o: &QSeries<R>) -> Result<QSeries<R>> {
        if self.granularity != o.granularity {
            return Err(Error::GranularityMismatch { left: self.granularity, right: o.granularity });
        }
        Ok(self.add(o))
    }

    pub fn add(&self, o: &QSeries<R>) -> QSeries<R> {
        let d = self.check(o);
        QSeries { granularity: self.granularity, coeffs: (0..=d).map(|s| self.coeffs[s].add_ref(&o.coeffs[s])).collect() }
    }

    pub fn sub(&self, o: &QSeries<R>) -> QSeries<R> {
        let d = self.check(o);
        QSeries {
            granularity: self.granularity,
            coeffs: (0..=d).map(|s| self.coeffs[s].add_ref(&o.coeffs[s].neg_ref())).collect(),
        }
    }

    pub fn neg(&self) -> QSeries<R> {
        self.map(|c| c.neg_ref())
    }

    pub fn mul(&self, o: &QSeries<R>) -> QSeries<R> {
        let d = self.check(o);
        let mut out = vec![R::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(d + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        QSeries { granularity: self.granularity, coeffs: out }
    }

    pub fn scale(&self, c: &R) -> QSeries<R> {
        self.map(|x| x.mul_ref(c))
    }

    pub fn scale_cyclo(&self, c: &CycloNumber) -> QSeries<R> {
        self.map(|x| x.scale_cyclo(c))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> QSeries<S> {
        QSeries { granularity: self.granularity, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<QSeries<S>> {
        Ok(QSeries { granularity: self.granularity, coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()? })
    }

    /// Multiplies by `q^{k/g}`, dropping what leaves the window.
    pub fn shift_steps(&self, k: usize) -> QSeries<R> {
        let d = self.steps();
        let mut out = vec![R::zero(); d + 1];
        for s in 0..=d {
            if s + k <= d {
                out[s + k] = self.coeffs[s].clone();
            }
        }
        QSeries { granularity: self.granularity, coeffs: out }
    }

    /// Same series at granularity `g * factor`.
    pub fn refine(&self, factor: u32) -> QSeries<R> {
        let f = factor as usize;
        // known strictly below q^{(D+1)/g}
        let mut out = vec![R::zero(); (self.steps() + 1) * f];
        for (s, c) in self.coeffs.iter().enumerate() {
            out[s * f] = c.clone();
        }
        QSeries { granularity: self.granularity * factor, coeffs: out }
    }

    /// Same series at granularity `g / factor`; fails when a coefficient sits
    /// at a step that is not a multiple of `factor`.
    pub fn coarsen(&self, factor: u32) -> Option<QSeries<R>> {
        if factor == 0 || !self.granularity.is_multiple_of(factor) {
            return None;
        }
        let f = factor as usize;
        if self.coeffs.iter().enumerate().any(|(s, c)| s % f != 0 && !c.is_zero()) {
            return None;
        }
        let d = self.steps() / f;
        Some(QSeries { granularity: self.granularity / factor, coeffs: (0..=d).map(|s| self.coeffs[s * f].clone()).collect() })
    }
}

impl<R: Ring + fmt::Display> fmt::Display for QSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (s, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if any {
                writeln!(f)?;
            }
            any = true;
            write!(f, "q^{}: {}", self.exponent(s), c)?;
        }
        if !any {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.exponent(self.coeffs.len()))
    }
}

impl<R: Ring> fmt::Debug for QSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QSeries").field("granularity", &self.granularity).field("coeffs", &self.coeffs).finish()
    }
}
