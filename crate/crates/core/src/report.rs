//! Serializable summaries of a fan and of the genera computed on it.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cyclotomic::{Angle, CycloNumber};
use crate::error::{Error, Result};
use crate::genera::{ty_genus, GenusSeries, RigidityVerdict, TyMethod};
use crate::multifan::{C1Divisibility, MultiFan};
use crate::series::{LaurentPoly, QSeries};

/// A cyclotomic number as rational power-basis coordinates in `Q(zeta_M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloValue {
    pub conductor: u64,
    /// Decimal rationals `p` or `p/q`.
    pub coefficients: Vec<String>,
}

impl CycloValue {
    pub fn from_number(x: &CycloNumber) -> CycloValue {
        let mut coefficients: Vec<String> = x.coefficients().iter().map(|c| c.to_string()).collect();
        while coefficients.last().is_some_and(|c| c == "0") {
            coefficients.pop();
        }
        CycloValue { conductor: x.conductor(), coefficients }
    }

    pub fn to_number(&self) -> Result<CycloNumber> {
        let coeffs = self
            .coefficients
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(|_| Error::MalformedFan(format!("bad rational {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        CycloNumber::from_coefficients(self.conductor, &coeffs)
    }
}

/// `q`-step to `t`-exponent to coefficient; zero entries are omitted.
pub type SeriesTable = BTreeMap<usize, BTreeMap<i64, CycloValue>>;

pub fn laurent_table(s: &QSeries<LaurentPoly>) -> SeriesTable {
    let mut out = BTreeMap::new();
    for (k, c) in s.coeffs().iter().enumerate() {
        let row: BTreeMap<i64, CycloValue> = c.terms().map(|(e, x)| (e, CycloValue::from_number(x))).collect();
        if !row.is_empty() {
            out.insert(k, row);
        }
    }
    out
}

/// Coefficients of a series with constant coefficients, under `t^0`.
pub fn constant_table(s: &QSeries<CycloNumber>) -> SeriesTable {
    let mut out = BTreeMap::new();
    for (k, c) in s.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out.insert(k, [(0, CycloValue::from_number(c))].into_iter().collect());
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub kind: String,
    pub sigma: Angle,
    pub vector: Vec<i64>,
    pub qorder: usize,
    pub granularity: u32,
    pub conductor: u64,
    pub normalized: bool,
    pub coefficients: SeriesTable,
}

impl SeriesReport {
    pub fn from_genus(g: &GenusSeries) -> SeriesReport {
        SeriesReport {
            kind: if g.orbifold { "orbifold" } else { "elliptic" }.to_string(),
            sigma: g.sigma,
            vector: g.vector.to_i64(),
            qorder: g.qorder,
            granularity: g.granularity,
            conductor: g.conductor,
            normalized: g.normalized,
            coefficients: laurent_table(&g.series),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Verdict {
        Verdict { name: name.into(), passed, detail: detail.into() }
    }

    pub fn from_rigidity(r: &RigidityVerdict) -> Verdict {
        let detail = if r.is_constant {
            let c = r.constant.as_ref().map(constant_table).unwrap_or_default();
            format!("constant along {} vectors; nonzero q-steps: {:?}", r.per_vector.len(), c.keys().collect::<Vec<_>>())
        } else {
            format!("{} offending terms; constants agree: {}", r.offending.len(), r.constants_agree)
        };
        Verdict::new(format!("rigidity at level {}", r.level), r.is_constant, detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    pub name: Option<String>,
    /// SHA-256 of the fan's JSON form without its name.
    pub fan_hash: String,
    pub rank: usize,
    pub rays: usize,
    pub top_simplices: usize,
    pub complete: bool,
    pub nonsingular: bool,
    pub condition_p: bool,
    pub degree: Option<i64>,
    pub h_vector: Option<Vec<i64>>,
    pub e_vector: Option<Vec<i64>>,
    /// Coefficients of `y^k`.
    pub ty: Option<Vec<i64>>,
    pub ty_display: Option<String>,
    pub c1: C1Divisibility,
    #[serde(default)]
    pub series: Vec<SeriesReport>,
    #[serde(default)]
    pub rigidity_constant: Option<SeriesTable>,
    #[serde(default)]
    pub verdicts: Vec<Verdict>,
}

pub fn fan_hash(fan: &MultiFan) -> String {
    let mut spec = fan.to_spec();
    spec.name = None;
    let json = serde_json::to_string(&spec).expect("fan spec serializes");
    hex::encode(Sha256::digest(json.as_bytes()))
}

impl GenusReport {
    /// Structural data; genus fields stay empty for incomplete fans.
    pub fn for_fan(fan: &MultiFan) -> GenusReport {
        let complete = fan.is_complete();
        let ty = complete.then(|| ty_genus(fan, TyMethod::HVector).ok()).flatten();
        GenusReport {
            name: fan.name().map(str::to_string),
            fan_hash: fan_hash(fan),
            rank: fan.rank(),
            rays: fan.rays().len(),
            top_simplices: fan.tops().len(),
            complete,
            nonsingular: fan.is_nonsingular(),
            condition_p: fan.condition_p(),
            degree: complete.then(|| fan.degree().ok()).flatten(),
            h_vector: complete.then(|| fan.h_vector().ok()).flatten(),
            e_vector: complete.then(|| fan.e_vector().ok()).flatten(),
            ty: ty.as_ref().map(|t| t.y_coefficients()),
            ty_display: ty.as_ref().map(|t| t.to_string()),
            c1: fan.c1_divisibility(),
            series: Vec::new(),
            rigidity_constant: None,
            verdicts: Vec::new(),
        }
    }

    pub fn push_series(&mut self, g: &GenusSeries) {
        self.series.push(SeriesReport::from_genus(g));
    }

    pub fn push_verdict(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<GenusReport> {
        serde_json::from_str(s).map_err(|e| Error::MalformedFan(format!("bad report: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{projective_space_fan, weighted_p2_quotient};
    use crate::genera::orbifold_elliptic_genus_v;

    #[test]
    fn cyclo_value_round_trip() {
        let z = CycloNumber::root(Angle::new(2, 9));
        let x = &(&z * &z) - &CycloNumber::from_rational(&BigRational::new(3.into(), 7.into()));
        let v = CycloValue::from_number(&x);
        assert_eq!(v.conductor, 9);
        assert_eq!(v.to_number().unwrap(), x);
    }

    #[test]
    fn report_round_trip() {
        let f = weighted_p2_quotient(2).unwrap();
        let mut r = GenusReport::for_fan(&f);
        let v = f.generic_vector().unwrap();
        r.push_series(&orbifold_elliptic_genus_v(&f, &v, Angle::new(1, 5), 1).unwrap());
        r.push_verdict(Verdict::new("x", true, ""));
        let back = GenusReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.ty_display.as_deref(), Some("1 - y + y^2"));
    }

    #[test]
    fn hash_ignores_name() {
        let a = projective_space_fan(2).unwrap();
        let b = a.clone().with_name("other");
        assert_eq!(fan_hash(&a), fan_hash(&b));
        assert_eq!(fan_hash(&a).len(), 64);
        assert_ne!(fan_hash(&a), fan_hash(&projective_space_fan(3).unwrap()));
    }
}
