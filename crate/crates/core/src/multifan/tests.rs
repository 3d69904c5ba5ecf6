use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::builders::{hirzebruch_fan, projective_space_fan, weighted_p2_quotient};

fn lv(c: &[i64]) -> LatticeVector {
    LatticeVector::from_i64(c)
}

fn p2() -> MultiFan {
    projective_space_fan(2).unwrap()
}

fn spec(rank: usize, rays: &[&[i64]], tops: &[&[usize]]) -> FanSpec {
    FanSpec {
        name: None,
        rank,
        rays: rays.iter().map(|r| r.to_vec()).collect(),
        maximal_simplices: tops.iter().map(|t| SimplexSpec { rays: t.to_vec(), wplus: 1, wminus: 0 }).collect(),
    }
}

#[test]
fn validates_projective_plane() {
    let f = MultiFan::from_spec(&spec(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[1, 2], &[1, 3], &[2, 3]])).unwrap();
    let d = f.diagnostics();
    assert!(d.all_primitive && d.nonsingular);
    assert_eq!(f.sigma().len(), 7);
}

#[test]
fn weighted_quotient_has_non_primitive_rays() {
    let d = weighted_p2_quotient(3).unwrap().diagnostics();
    assert_eq!(d.primitive, vec![true, false, true]);
    assert_eq!(d.group_orders, vec![3, 3, 3]);
    assert!(weighted_p2_quotient(1).unwrap().diagnostics().all_primitive);
}

#[test]
fn rejects_dependent_rays() {
    let err = MultiFan::from_spec(&spec(2, &[&[1, 0], &[2, 0]], &[&[1, 2]])).unwrap_err();
    assert_eq!(err, Error::DependentRays { simplex: vec![1, 2] });
    let err = MultiFan::new(2, vec![lv(&[1, 0])], vec![]).unwrap_err();
    assert_eq!(err, Error::EmptyTopDimension);
}

#[test]
fn json_round_trip() {
    let f = weighted_p2_quotient(2).unwrap();
    let g = MultiFan::from_json(&f.to_json()).unwrap();
    assert_eq!(f.to_spec(), g.to_spec());
    let parsed: FanSpec =
        serde_json::from_str(r#"{"rank":1,"rays":[[1],[-1]],"maximal_simplices":[{"rays":[1]},{"rays":[2]}]}"#).unwrap();
    assert_eq!(parsed.maximal_simplices[0].wplus, 1);
}

#[test]
fn degree_examples() {
    let f = p2();
    assert_eq!(f.degree_at(&lv(&[1, 2])).unwrap(), 1);
    assert_eq!(f.scaled_weights(2).degree_at(&lv(&[1, 2])).unwrap(), 2);
    assert_eq!(projective_space_fan(1).unwrap().degree_at(&lv(&[5])).unwrap(), 1);
    assert_eq!(projective_space_fan(1).unwrap().degree_at(&lv(&[-3])).unwrap(), 1);
    assert!(matches!(f.degree_at(&lv(&[1, 0])), Err(Error::NotGeneric { .. })));
    for n in 1..=4 {
        assert_eq!(projective_space_fan(n).unwrap().degree().unwrap(), 1);
    }
}

#[test]
fn completeness() {
    for n in 1..=3 {
        assert!(projective_space_fan(n).unwrap().is_complete());
    }
    let broken =
        MultiFan::from_spec(&spec(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[1, 2], &[1, 3]])).unwrap();
    assert!(!broken.is_complete());
    assert!(hirzebruch_fan(3).unwrap().scaled_weights(2).is_complete());
}

#[test]
fn projection_of_vertex() {
    let f = p2();
    let p = f.project(&[0]).unwrap();
    assert_eq!(p.fan.rank(), 1);
    assert_eq!(p.labels, vec![1, 2]);
    let r: Vec<i64> = p.fan.rays().iter().map(|r| r.to_i64()[0]).collect();
    assert_eq!(r[0], -r[1]);
    assert!(r[0].abs() == 1);
    assert!(p.fan.tops().iter().all(|t| t.weight() == 1));
    assert_eq!(p.fan.degree().unwrap(), 1);
    let whole = f.project(&[]).unwrap();
    assert_eq!(whole.fan.rays(), f.rays());
    assert!(matches!(MultiFan::from_spec(&spec(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[1, 2], &[1, 3]]))
        .unwrap()
        .project(&[1, 2]), Err(Error::KeyNotInSigma { .. })));
}

#[test]
fn h_and_e_vectors() {
    assert_eq!(p2().h_vector().unwrap(), vec![1, 1, 1]);
    assert_eq!(p2().e_vector().unwrap(), vec![1, 3, 3]);
    for k in -2..=3 {
        assert_eq!(hirzebruch_fan(k).unwrap().h_vector().unwrap(), vec![1, 2, 1]);
    }
    let f = hirzebruch_fan(1).unwrap();
    for v in f.generic_vectors(6).unwrap() {
        assert_eq!(f.h_vector_at(&v).unwrap(), vec![1, 2, 1]);
    }
}

#[test]
fn condition_p_examples() {
    assert!(p2().condition_p());
    let q = weighted_p2_quotient(4).unwrap();
    assert!(q.condition_p());
    assert_eq!(q.lattice_lv().unwrap(), vec![lv(&[1, 0]), lv(&[0, 4])]);
    let bad = MultiFan::from_spec(&spec(2, &[&[1, 0], &[0, 2], &[-1, -1]], &[&[1, 2], &[2, 3], &[1, 3]])).unwrap();
    assert!(!bad.condition_p());
}

#[test]
fn first_chern_divisibility() {
    let d = p2().c1_divisibility();
    assert_eq!(d.n_max, Some(3));
    assert_eq!(d.witness, Some(vec![1, 1]));
    assert_eq!(d.divisors, vec![1, 3]);
    assert_eq!(projective_space_fan(1).unwrap().c1_divisibility().n_max, Some(2));
    for k in [-2, 0, 2, 4] {
        assert_eq!(hirzebruch_fan(k).unwrap().c1_divisibility().n_max.unwrap() % 2, 0);
    }
    assert_eq!(hirzebruch_fan(1).unwrap().c1_divisibility().n_max, Some(1));
    assert!(p2().c1_divisible_by(3) && !p2().c1_divisible_by(2));
}

#[test]
fn chern_witness_by_brute_force() {
    // every N up to 12 and every u in [0, N)^2
    for f in [p2(), hirzebruch_fan(2).unwrap(), weighted_p2_quotient(2).unwrap()] {
        for n in 1..=12i64 {
            let found = (0..n).any(|a| {
                (0..n).any(|b| {
                    f.rays().iter().all(|v| {
                        let x = v.to_i64();
                        (a * x[0] + b * x[1] - 1).rem_euclid(n) == 0
                    })
                })
            });
            assert_eq!(found, f.c1_divisible_by(n as u64), "N = {n}");
            if let Some(w) = f.c1_witness(n as u64) {
                let u = RationalCovector::from_i64(&w.to_i64());
                for v in f.rays() {
                    let p = u.pair(v).to_integer() - BigInt::from(1);
                    assert_eq!(p % BigInt::from(n), BigInt::from(0));
                }
            }
        }
    }
}

#[test]
fn restrictions() {
    let f = p2();
    let c1 = EquivCohClass::first_chern(&f);
    assert_eq!(f.restriction(&c1, &[0, 1]).unwrap(), RationalCovector::from_i64(&[1, 1]));
    assert_eq!(f.restriction(&EquivCohClass::zero(3), &[0, 1]).unwrap(), RationalCovector::zero(2));
    let u = lv(&[2, -5]);
    let x = EquivCohClass::from_covector(&f, &u);
    for t in f.tops() {
        assert_eq!(f.restriction(&x, &t.rays).unwrap(), RationalCovector::from_i64(&[2, -5]));
    }
    assert!(matches!(f.restriction(&c1, &[0]), Err(Error::KeyNotInSigma { .. })));
}

#[test]
fn mod_faces_and_types() {
    let f = p2();
    let j = f.top_index(&[0, 1]).unwrap();
    assert_eq!(f.mod_m_face(j, &lv(&[1, 2]), 2).unwrap(), vec![0]);
    assert_eq!(f.v_type(&lv(&[1, 2]), 3).unwrap(), 0);
    assert_eq!(f.v_type(&lv(&[1, 1]), 3).unwrap(), 2);
    let one = f.mod_m_partition(&lv(&[1, 2]), 1).unwrap();
    assert_eq!(one.blocks.len(), 1);
    assert!(one.blocks[0].core.is_empty());
    let two = f.mod_m_partition(&lv(&[1, 2]), 2).unwrap();
    let members: usize = two.blocks.iter().map(|b| b.members.len()).sum();
    assert_eq!(members, 3);
    for b in 0..two.blocks.len() {
        f.vm_type(&two, b, 3).unwrap();
    }
    assert_eq!(f.v_type(&lv(&[1, 2]), 2).unwrap_err(), Error::NotDivisible(2));
}

#[test]
fn dh_interval() {
    let f = projective_space_fan(1).unwrap();
    let p = MultiPolytope::from_class(&f, &[], &[2, 1]).unwrap();
    let ch = p.dh_character(5).unwrap();
    let want: BTreeMap<Vec<i64>, i64> = (-1..=2).map(|u| (vec![u], 1)).collect();
    assert_eq!(ch, want);
    assert_eq!(p.fixed_point_character(5).unwrap(), want);
}

#[test]
fn dh_trivial_triangle() {
    let f = p2();
    let p = MultiPolytope::from_class(&f, &[], &[0, 0, 0]).unwrap();
    let want: BTreeMap<Vec<i64>, i64> = [(vec![0, 0], 1)].into_iter().collect();
    assert_eq!(p.dh_character(3).unwrap(), want);
    assert_eq!(p.fixed_point_character(3).unwrap(), want);
}

#[test]
fn dh_linear_in_weights() {
    let f = p2();
    let p = MultiPolytope::from_class(&f, &[], &[1, 2, 0]).unwrap();
    let q = MultiPolytope::from_class(&f.scaled_weights(2), &[], &[1, 2, 0]).unwrap();
    let a = p.dh_character(4).unwrap();
    let b = q.dh_character(4).unwrap();
    assert_eq!(a.len(), b.len());
    for (u, x) in &a {
        assert_eq!(b[u], 2 * x);
    }
    assert_eq!(a.len(), 10);
}

#[test]
fn dh_value_errors() {
    let f = projective_space_fan(1).unwrap();
    let p = MultiPolytope::from_class(&f, &[], &[2, 1]).unwrap();
    let v = lv(&[1]);
    let wall = RationalCovector::from_i64(&[2]);
    assert_eq!(p.dh_value(&wall, &v).unwrap_err(), Error::PointOnWall { ray: 1 });
    let half = RationalCovector(vec![BigRational::new(1.into(), 2.into())]);
    assert_eq!(p.shifted(&half.0[0]).dh_character(3).unwrap_err(), Error::NonIntegralOffsets);
    assert_eq!(p.dh_value(&half, &v).unwrap(), 1);
}

#[test]
fn dh_on_projected_fan() {
    let f = p2();
    let p = MultiPolytope::from_class(&f, &[0], &[1, 1, 1]).unwrap();
    let a = p.dh_character(4).unwrap();
    assert_eq!(a, p.fixed_point_character(4).unwrap());
    assert!(a.keys().all(|u| u[0] == 1));
}
