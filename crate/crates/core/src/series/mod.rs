//! Truncated q-series with cyclotomic, Laurent-polynomial or rational-function
//! coefficients, and the theta-quotient kernels.

mod kernels;
mod laurent;
mod poles;
mod qseries;
mod ratfunc;

use std::fmt::Debug;

use crate::cyclotomic::CycloNumber;

pub use kernels::{
    assert_polynomial, big_phi_series, geometric_q, geometric_q_shifted, phi_factor, phi_series, shift_t_by_q,
    zeta_power, ExpArg, ShiftedSeries,
};
pub use laurent::LaurentPoly;
pub use poles::{inverse_one_minus, Binomial, BinomialProduct, FactoredSeries, PoleSum};
pub use qseries::QSeries;
pub use ratfunc::RatFunc;

/// Coefficient ring of a [`QSeries`]: a commutative algebra over the
/// cyclotomic numbers.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn scale_cyclo(&self, c: &CycloNumber) -> Self;

    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }
}

impl Ring for CycloNumber {
    fn zero() -> Self {
        CycloNumber::zero()
    }
    fn one() -> Self {
        CycloNumber::one()
    }
    fn is_zero(&self) -> bool {
        CycloNumber::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn scale_cyclo(&self, c: &CycloNumber) -> Self {
        self * c
    }
}
