//! T_y, Todd and signature genera, and the elliptic and orbifold elliptic
//! genera along a generic vector.

mod character;
mod checks;
mod classify;
mod hat;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::{Angle, CycloNumber};
use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::multifan::MultiFan;
use crate::series::{phi_factor, zeta_power, ExpArg, FactoredSeries, LaurentPoly, PoleSum, QSeries};

pub use character::{character_table, crosscheck_character_vs_fixedpoint, orbifold_character_table, CharacterTable, CrossCheck};
pub use checks::{rigidity_check, translation_check, vanishing_check, OffendingTerm, RigidityVerdict, TranslationCheck};
pub use classify::{canonical_twists, chern_bound_holds, classify_extremal, BundleDescriptor, BundleKind, Classification};
pub use hat::{hat_h_data, HatEntry, HatH, HatTerm};

/// `T_y = sum_k a_k (-y)^k`; `coeffs[k] = a_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TyPolynomial {
    pub coeffs: Vec<i64>,
}

impl TyPolynomial {
    /// Coefficients of `y^k`.
    pub fn y_coefficients(&self) -> Vec<i64> {
        self.coeffs.iter().enumerate().map(|(k, &a)| if k % 2 == 0 { a } else { -a }).collect()
    }

    /// Value at `-y = x`.
    pub fn at_minus_y(&self, x: &CycloNumber) -> CycloNumber {
        let mut acc = CycloNumber::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &CycloNumber::from_integer(*a);
        }
        acc
    }

    pub fn todd(&self) -> i64 {
        self.coeffs[0]
    }

    /// Value at `y = 1`.
    pub fn signature(&self) -> i64 {
        self.y_coefficients().iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

impl fmt::Display for TyPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.y_coefficients().into_iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "y")?,
                (1, _) => write!(f, "{a}y")?,
                (_, 1) => write!(f, "y^{k}")?,
                _ => write!(f, "{a}y^{k}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Which formula to evaluate `T_y` with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TyMethod {
    /// `sum h_k (-y)^k`.
    HVector,
    /// `sum e_k (-1-y)^{n-k}`.
    EVector,
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

pub fn ty_genus(fan: &MultiFan, method: TyMethod) -> Result<TyPolynomial> {
    fan.require_complete()?;
    let n = fan.rank();
    let coeffs = match method {
        TyMethod::HVector => fan.h_vector()?,
        TyMethod::EVector => {
            let e = fan.e_vector()?;
            // (x - 1)^{n-k} with x = -y
            let mut c = vec![0i64; n + 1];
            for (k, ek) in e.iter().enumerate() {
                let p = n - k;
                for j in 0..=p {
                    let s = if (p - j).is_multiple_of(2) { 1 } else { -1 };
                    c[j] += ek * s * binomial(p, j);
                }
            }
            c
        }
    };
    Ok(TyPolynomial { coeffs })
}

pub fn todd(fan: &MultiFan) -> Result<i64> {
    Ok(ty_genus(fan, TyMethod::HVector)?.todd())
}

pub fn signature(fan: &MultiFan) -> Result<i64> {
    Ok(ty_genus(fan, TyMethod::HVector)?.signature())
}

/// A genus along `v` as a truncated q-series of Laurent polynomials in
/// `t`, the character along `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenusSeries {
    /// Integral powers of `q` through `qorder`.
    pub series: QSeries<LaurentPoly>,
    /// Whether the series is multiplied by `zeta^{n/2}`.
    pub normalized: bool,
    pub sigma: Angle,
    pub vector: LatticeVector,
    pub qorder: usize,
    /// `q^{1/r_hat}` granularity used during the computation.
    pub granularity: u32,
    /// Order of a root of unity containing every coefficient.
    pub conductor: u64,
    pub orbifold: bool,
    rank: usize,
}

impl GenusSeries {
    pub fn coeff(&self, s: usize) -> &LaurentPoly {
        self.series.coeff(s)
    }

    pub fn is_zero(&self) -> bool {
        self.series.is_zero()
    }

    /// Whether every q-coefficient is constant in `t`.
    pub fn is_constant_in_t(&self) -> bool {
        self.series.coeffs().iter().all(|c| c.is_constant())
    }

    fn normalizer(&self) -> CycloNumber {
        zeta_power(self.sigma, &BigRational::new(BigInt::from(self.rank as i64), BigInt::from(2)))
    }

    /// The series without the `zeta^{n/2}` factor.
    pub fn unnormalized(&self) -> GenusSeries {
        if !self.normalized {
            return self.clone();
        }
        let c = self.normalizer().inv().expect("root of unity");
        GenusSeries { series: self.series.scale_cyclo(&c), normalized: false, ..self.clone() }
    }

    pub fn normalize(&self) -> GenusSeries {
        if self.normalized {
            return self.clone();
        }
        GenusSeries { series: self.series.scale_cyclo(&self.normalizer()), normalized: true, ..self.clone() }
    }
}

fn check_vector(fan: &MultiFan, v: &LatticeVector) -> Result<()> {
    if v.dim() != fan.rank() {
        return Err(Error::DimensionMismatch { expected: fan.rank(), found: v.dim() });
    }
    if !fan.is_generic(v) {
        return Err(Error::NotGeneric { vector: v.to_i64() });
    }
    if !fan.in_lattice_lv(v) {
        return Err(Error::NotInLatticeLv { vector: v.to_i64() });
    }
    Ok(())
}

fn integral_pairings(fan: &MultiFan, j: usize, v: &LatticeVector) -> Vec<i64> {
    fan.pairings(j, v).iter().map(|p| p.to_integer().to_i64().expect("pairing fits in i64")).collect()
}

fn weight_over_order(w: i64, order: u64) -> CycloNumber {
    CycloNumber::from_rational(&BigRational::new(BigInt::from(w), BigInt::from(order)))
}

fn conductor_of(sigma: Angle, r_hat: u64, r: u64) -> u64 {
    let d = sigma.den() as u64;
    (2 * d * r_hat).lcm(&r)
}

fn finish(fan: &MultiFan, sum: PoleSum, sigma: Angle, v: &LatticeVector, qorder: usize, g: u32, orbifold: bool) -> Result<GenusSeries> {
    let raw = sum.finish()?;
    let series = if g == 1 {
        raw
    } else {
        raw.coarsen(g)
            .ok_or_else(|| Error::InvariantViolated("fractional q-power survived the orbifold sum".into()))?
    };
    let g_out = GenusSeries {
        series,
        normalized: false,
        sigma,
        vector: v.clone(),
        qorder,
        granularity: g,
        conductor: conductor_of(sigma, g as u64, fan.group_order_lcm()),
        orbifold,
        rank: fan.rank(),
    };
    Ok(g_out.normalize())
}

/// `zeta^{n/2} sum_I w(I)/|H_I| sum_h prod_i phi(<u_i^I, -z v - v(h)>)`
/// through `q^qorder`, each coefficient certified to be a Laurent
/// polynomial in `t`.
pub fn elliptic_genus_v(fan: &MultiFan, v: &LatticeVector, sigma: Angle, qorder: usize) -> Result<GenusSeries> {
    fan.require_complete()?;
    check_vector(fan, v)?;
    if sigma.is_zero() {
        return Err(Error::ZetaIsOne);
    }
    let mut sum = PoleSum::new(1, qorder);
    for (j, t) in fan.tops().iter().enumerate() {
        if t.weight() == 0 {
            continue;
        }
        let data = fan.top_data(j);
        let scale = weight_over_order(t.weight(), data.group.order());
        let m = integral_pairings(fan, j, v);
        for h in data.group.elements() {
            let mut term = FactoredSeries::one(1, qorder);
            for (pos, u) in data.dual.iter().enumerate() {
                let arg = ExpArg::integral(-m[pos], -data.group.chi_angle(u, &h));
                term = term.mul(&phi_factor(&arg, sigma, qorder, 1)?);
            }
            sum.add(&term.scale_cyclo(&scale));
        }
    }
    finish(fan, sum, sigma, v, qorder, 1, false)
}

/// Least common multiple of the denominators of the fractional coordinates
/// of all group elements.
fn orbifold_granularity(fan: &MultiFan) -> u64 {
    let mut g = 1u64;
    for j in 0..fan.tops().len() {
        let grp = &fan.top_data(j).group;
        for h in grp.elements() {
            for f in grp.fractional_coordinates(&h) {
                g = g.lcm(&f.denom().to_u64().expect("denominator fits"));
            }
        }
    }
    g
}

/// The orbifold elliptic genus along `v`: the double sum over
/// `(h1, h2) in H_I x H_I` of
/// `prod_i zeta^{f_i} phi(<u_i^I, -z v + tau v(h1) - v(h2)>)` with
/// `0 <= f_i = <u_i^I, v(h1)> < 1`.
pub fn orbifold_elliptic_genus_v(fan: &MultiFan, v: &LatticeVector, sigma: Angle, qorder: usize) -> Result<GenusSeries> {
    fan.require_complete()?;
    check_vector(fan, v)?;
    if sigma.is_zero() {
        return Err(Error::ZetaIsOne);
    }
    let g64 = orbifold_granularity(fan);
    let g = u32::try_from(g64).map_err(|_| Error::InvariantViolated("granularity overflow".into()))?;
    let steps = qorder * g as usize;
    let mut sum = PoleSum::new(g, steps);
    for (j, t) in fan.tops().iter().enumerate() {
        if t.weight() == 0 {
            continue;
        }
        let data = fan.top_data(j);
        let scale = weight_over_order(t.weight(), data.group.order());
        let m = integral_pairings(fan, j, v);
        let elements = data.group.elements();
        // factors depend on (h1, h2) only through f(h1) and chi(., h2)
        for h1 in &elements {
            let f = data.group.fractional_coordinates(h1);
            let total: BigRational = f.iter().fold(BigRational::zero(), |a, b| a + b);
            let pre = &scale * &zeta_power(sigma, &total);
            for h2 in &elements {
                let mut term = FactoredSeries::one(g, steps);
                for (pos, u) in data.dual.iter().enumerate() {
                    let arg = ExpArg::new(-m[pos], -data.group.chi_angle(u, h2), f[pos].clone());
                    term = term.mul(&phi_factor(&arg, sigma, steps, g)?);
                }
                sum.add(&term.scale_cyclo(&pre));
            }
        }
    }
    finish(fan, sum, sigma, v, qorder, g, true)
}
