//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use mfgenus::builders::{
    fixture, hirzebruch_fan, projective_bundle_fan, projective_space_fan, random_complete_multifan,
    weighted_p2_quotient, BundleSpec,
};
use mfgenus::cyclotomic::{Angle, CycloNumber};
use mfgenus::genera::{
    canonical_twists, chern_bound_holds, classify_extremal, crosscheck_character_vs_fixedpoint, elliptic_genus_v,
    orbifold_character_table, orbifold_elliptic_genus_v, rigidity_check, signature, todd, translation_check,
    ty_genus, BundleKind, Classification, GenusSeries, TyMethod,
};
use mfgenus::multifan::{MultiFan, MultiPolytope};
use mfgenus::series::assert_polynomial;
use mfgenus::Error;

type Outcome = Result<String, String>;
type Check = Box<dyn FnMut(&mut Computed) -> Outcome>;

/// Series computed in criteria 4 to 8, checked again in criterion 10.
#[derive(Default)]
struct Computed {
    genera: Vec<(String, GenusSeries)>,
    failures: Vec<(String, Error)>,
}

impl Computed {
    fn record(&mut self, label: String, r: mfgenus::Result<GenusSeries>) -> Result<GenusSeries, String> {
        match r {
            Ok(g) => {
                self.genera.push((label, g.clone()));
                Ok(g)
            }
            Err(e) => {
                self.failures.push((label.clone(), e.clone()));
                Err(format!("{label}: {e}"))
            }
        }
    }
}

fn named_fixtures() -> Vec<MultiFan> {
    let mut names: Vec<String> = (1..=4).map(|n| format!("P{n}")).collect();
    names.extend(["P2modB:2", "P2modB:3"].map(String::from));
    names.extend((-2..=2).map(|k| format!("hirzebruch:{k}")));
    names.extend(
        ["bundle:n=2,r=1,k=1", "bundle:n=3,r=1,k=1,-2", "bundle:n=3,r=2,k=2", "bundle:n=4,r=2,k=1,0"].map(String::from),
    );
    names.iter().map(|n| fixture(n).unwrap()).collect()
}

fn random_fans() -> Vec<MultiFan> {
    (0..100).map(|s| random_complete_multifan(s, 3).unwrap()).collect()
}

fn label(f: &MultiFan) -> String {
    f.name().unwrap_or("?").to_string()
}

fn expect(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn ty_of_projective_spaces() -> Outcome {
    for n in 1..=4usize {
        let f = projective_space_fan(n).map_err(|e| e.to_string())?;
        let got = ty_genus(&f, TyMethod::HVector).map_err(|e| e.to_string())?.y_coefficients();
        let want: Vec<i64> = (0..=n).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect();
        expect(got == want, || format!("P{n}: {got:?} != {want:?}"))?;
    }
    Ok("n = 1..4".into())
}

fn h_symmetry_and_two_formulas() -> Outcome {
    let fans: Vec<MultiFan> = named_fixtures().into_iter().chain(random_fans()).collect();
    for f in &fans {
        let h = f.h_vector().map_err(|e| format!("{}: {e}", label(f)))?;
        let rev: Vec<i64> = h.iter().rev().copied().collect();
        expect(h == rev, || format!("{}: h = {h:?} not symmetric", label(f)))?;
        let a = ty_genus(f, TyMethod::HVector).map_err(|e| e.to_string())?;
        let b = ty_genus(f, TyMethod::EVector).map_err(|e| e.to_string())?;
        expect(a == b, || format!("{}: {a} vs {b}", label(f)))?;
    }
    Ok(format!("{} fans", fans.len()))
}

fn todd_is_degree() -> Outcome {
    let fans: Vec<MultiFan> = named_fixtures().into_iter().chain(random_fans()).collect();
    for f in &fans {
        let t = todd(f).map_err(|e| e.to_string())?;
        let d = f.degree().map_err(|e| e.to_string())?;
        expect(t == d, || format!("{}: todd {t}, degree {d}", label(f)))?;
    }
    Ok(format!("{} fans", fans.len()))
}

fn projective_space_vanishing(log: &mut Computed) -> Outcome {
    for n in 1..=3usize {
        let f = projective_space_fan(n).map_err(|e| e.to_string())?;
        let v = f.generic_vector().map_err(|e| e.to_string())?;
        let g = log.record(format!("P{n} level {}", n + 1), elliptic_genus_v(&f, &v, Angle::new(1, n as i64 + 1), 3))?;
        expect(g.is_zero(), || format!("P{n}: nonzero genus"))?;
    }
    Ok("P1, P2, P3 through q^3".into())
}

fn spin_vanishing(log: &mut Computed) -> Outcome {
    for k in [0, 2] {
        let f = hirzebruch_fan(k).map_err(|e| e.to_string())?;
        let v = f.generic_vector().map_err(|e| e.to_string())?;
        let g = log.record(format!("hirzebruch {k} level 2"), elliptic_genus_v(&f, &v, Angle::new(1, 2), 3))?;
        expect(g.is_zero(), || format!("k = {k}: nonzero genus"))?;
        let s = signature(&f).map_err(|e| e.to_string())?;
        expect(s == 0, || format!("k = {k}: signature {s}"))?;
    }
    Ok("k = 0, 2 through q^3".into())
}

fn rigidity_and_translation(log: &mut Computed) -> Outcome {
    let f = projective_space_fan(2).map_err(|e| e.to_string())?;
    let sigma = Angle::new(1, 3);
    let r = rigidity_check(&f, sigma, 3, false).map_err(|e| e.to_string())?;
    let mut vectors: Vec<Vec<i64>> = r.per_vector.iter().map(|p| p.vector.to_i64()).collect();
    vectors.sort();
    vectors.dedup();
    expect(vectors.len() >= 3, || format!("only {} distinct vectors", vectors.len()))?;
    expect(r.constants_agree && r.is_constant, || format!("{} offending terms", r.offending.len()))?;
    let mut windows = Vec::new();
    for p in &r.per_vector {
        log.record(format!("P2 level 3 along {:?}", p.vector.to_i64()), elliptic_genus_v(&f, &p.vector, sigma, 3))?;
        let t = translation_check(&f, &p.vector, sigma, 3).map_err(|e| e.to_string())?;
        expect(t.holds, || format!("translation fails along {:?} at {:?}", p.vector.to_i64(), t.failures))?;
        windows.push(t.reliable_steps.unwrap_or(0));
    }
    Ok(format!("{} vectors, reliable steps {windows:?}", vectors.len()))
}

fn crosschecks(log: &mut Computed) -> Outcome {
    let cases = [("P1", 4, 2, false), ("P2", 4, 1, false), ("P2modB:2", 3, 1, true)];
    let sigma = Angle::new(1, 5);
    let mut terms = 0;
    for (name, bound, d, orbifold) in cases {
        let f = fixture(name).map_err(|e| e.to_string())?;
        let c = crosscheck_character_vs_fixedpoint(&f, None, sigma, d, bound, orbifold)
            .map_err(|e| format!("{name}: {e}"))?;
        expect(c.passed, || format!("{name}: mismatches {:?}", c.mismatches))?;
        let g = if orbifold {
            orbifold_elliptic_genus_v(&f, &c.vector, sigma, d)
        } else {
            elliptic_genus_v(&f, &c.vector, sigma, d)
        };
        log.record(format!("{name} crosscheck genus"), g)?;
        terms += c.compared_terms;
    }
    Ok(format!("{terms} compared terms"))
}

/// Laurent series in integral powers of `q`, truncated above `top`.
#[derive(Clone, Debug)]
struct Laurent {
    top: i64,
    terms: BTreeMap<i64, CycloNumber>,
}

impl Laurent {
    fn monomial(c: CycloNumber, e: i64, top: i64) -> Laurent {
        let mut terms = BTreeMap::new();
        if e <= top && !c.is_zero() {
            terms.insert(e, c);
        }
        Laurent { top, terms }
    }

    fn one_minus(c: &CycloNumber, e: i64, top: i64) -> Laurent {
        let mut a = Laurent::monomial(CycloNumber::one(), 0, top);
        a.add(&Laurent::monomial(-c, e, top));
        a
    }

    fn add(&mut self, o: &Laurent) {
        for (e, c) in &o.terms {
            let s = self.terms.get(e).map_or_else(|| c.clone(), |x| x + c);
            if s.is_zero() {
                self.terms.remove(e);
            } else {
                self.terms.insert(*e, s);
            }
        }
    }

    fn mul(&self, o: &Laurent) -> Laurent {
        let mut out = Laurent { top: self.top.min(o.top), terms: BTreeMap::new() };
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                if a + b <= out.top {
                    out.add(&Laurent::monomial(x * y, a + b, out.top));
                }
            }
        }
        out
    }

    /// `1 / (1 - c q^m)` expanded around `q = 0`.
    fn inverse_one_minus(c: &CycloNumber, m: i64, top: i64) -> Laurent {
        let mut out = Laurent { top, terms: BTreeMap::new() };
        if m == 0 {
            let x = (&CycloNumber::one() - c).inv().expect("nonzero");
            return Laurent::monomial(x, 0, top);
        }
        let (base, first, sign) = if m > 0 { (c.clone(), 0, 1) } else { (c.inv().unwrap(), 1, -1) };
        let step = m.abs();
        let mut s = first;
        while s * step <= top {
            let x = base.pow(s).unwrap();
            out.add(&Laurent::monomial(if sign > 0 { x } else { -x }, s * step, top));
            s += 1;
        }
        out
    }

    fn coeff(&self, e: i64) -> CycloNumber {
        self.terms.get(&e).cloned().unwrap_or_else(CycloNumber::zero)
    }
}

fn zeta_to(sigma: Angle, num: i64, den: i64) -> CycloNumber {
    let r = sigma.to_rational() * BigRational::new(BigInt::from(num), BigInt::from(den));
    CycloNumber::root(Angle::from_rational(&r))
}

/// `(zeta^{1/2} - zeta^{-1/2}) prod_k (1 - zeta q^k)(1 - zeta^{-1} q^k) / (1 - q^k)^2`.
fn big_phi(sigma: Angle, top: i64) -> Laurent {
    let half = zeta_to(sigma, 1, 2);
    let lead = &half - &half.inv().unwrap();
    let z = zeta_to(sigma, 1, 1);
    let zi = z.inv().unwrap();
    let one = CycloNumber::one();
    let mut out = Laurent::monomial(lead, 0, top);
    for k in 1..=top.max(0) {
        out = out.mul(&Laurent::one_minus(&z, k, top)).mul(&Laurent::one_minus(&zi, k, top));
        let inv = Laurent::inverse_one_minus(&one, k, top);
        out = out.mul(&inv).mul(&inv);
    }
    out
}

/// Closed form of the coefficient of `t_1^{-m_1} t_2^{-m_2}` for the
/// quotient of the projective plane by the order-`b` group.
fn quotient_coefficient(b: i64, m1: i64, m2: i64, sigma: Angle, d: i64) -> Laurent {
    let top = d + b * m2.abs();
    let z = zeta_to(sigma, 1, 1);
    let one_minus_const = &CycloNumber::one() - &zeta_to(sigma, 3, b);
    let mut x = Laurent::monomial(one_minus_const, 0, top);
    x = x.mul(&Laurent::one_minus(&zeta_to(sigma, 2, 1), -b * m2, top));
    let phi = big_phi(sigma, top);
    x = x.mul(&phi).mul(&phi);
    x = x.mul(&Laurent::inverse_one_minus(&z, m1, top));
    x = x.mul(&Laurent::inverse_one_minus(&z, -m1 - b * m2, top));
    x = x.mul(&Laurent::inverse_one_minus(&zeta_to(sigma, 1, b), m2, top));
    x.mul(&Laurent::inverse_one_minus(&zeta_to(sigma, 2, b), -m2, top))
}

fn worked_example(log: &mut Computed) -> Outcome {
    let sigma = Angle::new(1, 5);
    let d = 1i64;
    let (mut checked, mut nonzero) = (0, 0);
    for b in [2, 3] {
        let f = weighted_p2_quotient(b).map_err(|e| e.to_string())?;
        let tab = orbifold_character_table(&f, sigma, d as usize, 2).map_err(|e| format!("b = {b}: {e}"))?;
        let v = f.generic_vector().map_err(|e| e.to_string())?;
        log.record(format!("P2modB:{b} orbifold genus"), orbifold_elliptic_genus_v(&f, &v, sigma, d as usize))?;
        for m1 in -2..=2 {
            for m2 in -2..=2 {
                let want = quotient_coefficient(b, m1, m2, sigma, d);
                let got = tab.get(&[m1, m2]).ok_or_else(|| format!("b = {b}: no entry at ({m1}, {m2})"))?;
                let g = got.granularity() as usize;
                if let Some((&e, _)) = want.terms.iter().next() {
                    expect(e >= 0, || format!("b = {b}, ({m1}, {m2}): closed form has q^{e}"))?;
                }
                for k in 0..=d {
                    let have = got.coeff(k as usize * g);
                    let expd = want.coeff(k);
                    expect(have == &expd, || format!("b = {b}, ({m1}, {m2}), q^{k}: {have:?} vs {expd:?}"))?;
                    checked += 1;
                    nonzero += usize::from(!expd.is_zero());
                }
            }
        }
    }
    expect(nonzero > 0, || "every compared coefficient is zero".into())?;
    Ok(format!("{checked} coefficients, {nonzero} nonzero"))
}

/// Lattice points of `{u : <u, v_i> <= c_i}`, counted directly.
fn polytope_points(f: &MultiFan, c: &[i64], bound: i64) -> BTreeMap<Vec<i64>, i64> {
    let n = f.rank();
    let rays: Vec<Vec<i64>> = f.rays().iter().map(|r| r.to_i64()).collect();
    let mut out = BTreeMap::new();
    let mut u = vec![-bound; n];
    loop {
        if rays.iter().zip(c).all(|(r, ci)| r.iter().zip(&u).map(|(a, b)| a * b).sum::<i64>() <= *ci) {
            out.insert(u.clone(), 1);
        }
        let mut i = 0;
        while i < n && u[i] == bound {
            u[i] = -bound;
            i += 1;
        }
        if i == n {
            return out;
        }
        u[i] += 1;
    }
}

fn duistermaat_heckman() -> Outcome {
    let mut classes: Vec<(MultiFan, Vec<i64>)> = Vec::new();
    let p1 = projective_space_fan(1).unwrap();
    let p2 = projective_space_fan(2).unwrap();
    for a in 0..=2 {
        for b in 0..=2 {
            classes.push((p1.clone(), vec![a, b]));
            for c in 0..=2 {
                classes.push((p2.clone(), vec![a, b, c]));
            }
        }
    }
    for (f, c) in &classes {
        let bound = c.iter().sum::<i64>() + 2;
        let p = MultiPolytope::from_class(f, &[], c).map_err(|e| e.to_string())?;
        let lhs = p.dh_character(bound).map_err(|e| format!("{c:?}: {e}"))?;
        let rhs = p.fixed_point_character(bound).map_err(|e| format!("{c:?}: {e}"))?;
        expect(lhs == rhs, || format!("{} {c:?}: lattice side differs from fixed-point side", label(f)))?;
        expect(lhs == polytope_points(f, c, bound), || format!("{} {c:?}: wrong lattice points", label(f)))?;
    }
    Ok(format!("{} polytopes", classes.len()))
}

fn integrality(log: &Computed) -> Outcome {
    if let Some((l, e)) = log.failures.iter().find(|(_, e)| matches!(e, Error::ResidualPole { .. })) {
        return Err(format!("{l}: {e}"));
    }
    expect(log.failures.is_empty(), || format!("{} computations failed", log.failures.len()))?;
    expect(!log.genera.is_empty(), || "nothing was computed".into())?;
    let mut coefficients = 0;
    for (l, g) in &log.genera {
        for c in g.series.coeffs() {
            let as_ratfunc = mfgenus::series::RatFunc::from_poly(c.clone());
            assert_polynomial(&as_ratfunc).map_err(|e| format!("{l}: {e}"))?;
            coefficients += 1;
        }
    }
    Ok(format!("{} series, {coefficients} q-coefficients", log.genera.len()))
}

fn root_vanishing() -> Outcome {
    let p2 = ty_genus(&projective_space_fan(2).unwrap(), TyMethod::HVector).map_err(|e| e.to_string())?;
    let z3 = CycloNumber::root(Angle::new(1, 3));
    expect(p2.at_minus_y(&z3).is_zero(), || "T_y(P2) at -y = zeta_3".into())?;
    for k in [-2, 0, 2] {
        let t = ty_genus(&hirzebruch_fan(k).unwrap(), TyMethod::HVector).map_err(|e| e.to_string())?;
        expect(t.at_minus_y(&CycloNumber::from_integer(-1)).is_zero(), || format!("hirzebruch {k} at -y = -1"))?;
    }
    Ok("P2 at zeta_3, hirzebruch k = -2, 0, 2 at -1".into())
}

fn classification() -> Outcome {
    for n in 1..=3 {
        let f = projective_space_fan(n).unwrap();
        let c = classify_extremal(&f).map_err(|e| e.to_string())?;
        expect(c == Classification::ProjectiveSpace(n), || format!("P{n}: {c:?}"))?;
    }
    let mut bundles = 0;
    for n in [2usize, 3] {
        let twist_sets: Vec<Vec<i64>> = if n == 2 {
            (-2..=2).map(|k| vec![k]).collect()
        } else {
            (-2..=2).flat_map(|a| (-2..=2).map(move |b| vec![a, b])).collect()
        };
        for ks in twist_sets {
            let f = projective_bundle_fan(&BundleSpec::new(n, 1, ks.clone()).unwrap()).unwrap();
            let c = classify_extremal(&f).map_err(|e| e.to_string())?;
            let Classification::Bundle(d) = &c else {
                return Err(format!("n = {n}, k = {ks:?}: {c:?}"));
            };
            let want = if n == 2 { vec![ks[0].abs()] } else { canonical_twists(&ks) };
            expect(d.kind == BundleKind::OverProjectiveLine && d.twists == want, || {
                format!("n = {n}, k = {ks:?}: {d:?}, expected twists {want:?}")
            })?;
            let mut labels: Vec<usize> = d.base.iter().chain(&d.fiber).copied().collect();
            labels.sort_unstable();
            expect(labels == (0..n + 2).collect::<Vec<_>>(), || format!("n = {n}, k = {ks:?}: bad labeling {d:?}"))?;
            bundles += 1;
        }
    }
    let mut bounded = 0;
    for f in named_fixtures().iter().filter(|f| f.is_nonsingular()) {
        if todd(f).map_err(|e| e.to_string())? == 0 {
            continue;
        }
        let ok = chern_bound_holds(f).map_err(|e| e.to_string())?;
        expect(ok, || format!("{}: N_max = {:?}", label(f), f.c1_divisibility().n_max))?;
        bounded += 1;
    }
    Ok(format!("P1..P3, {bundles} bundles, bound on {bounded} fixtures"))
}

fn main() {
    let mut log = Computed::default();
    let secs = Duration::from_secs;
    let mut criteria: Vec<(&str, Option<Duration>, Check)> = vec![
        ("T_y of projective spaces", Some(secs(1)), Box::new(|_| ty_of_projective_spaces())),
        ("h-symmetry and both T_y formulas", Some(secs(10)), Box::new(|_| h_symmetry_and_two_formulas())),
        ("Todd genus equals degree", None, Box::new(|_| todd_is_degree())),
        ("level n+1 vanishing on projective spaces", Some(secs(60)), Box::new(projective_space_vanishing)),
        ("level 2 vanishing on spin Hirzebruch surfaces", Some(secs(60)), Box::new(spin_vanishing)),
        ("rigidity and translation on P2 at level 3", None, Box::new(rigidity_and_translation)),
        ("character formula vs fixed-point sum", Some(secs(120)), Box::new(crosschecks)),
        ("closed-form coefficients of the plane quotient", None, Box::new(worked_example)),
        ("lattice points vs fixed-point rational functions", None, Box::new(|_| duistermaat_heckman())),
        ("integrality of every computed series", None, Box::new(|log: &mut Computed| integrality(log))),
        ("T_y vanishing at roots of unity", None, Box::new(|_| root_vanishing())),
        ("classification of projective spaces and bundles", None, Box::new(|_| classification())),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter_mut().enumerate() {
        let start = Instant::now();
        let mut outcome = run(&mut log);
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, limit) {
            if elapsed > *limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail}; {elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
