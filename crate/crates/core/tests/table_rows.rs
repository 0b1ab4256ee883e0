//! The q = 7 catalogue under the primitive element `x + 4` (so `ω^8 = 3`).

use gtrs_core::codes::DEFAULT_DISTANCE_CAP;
use gtrs_core::gtrs::{is_mds_plus, plus_gtrs};
use gtrs_core::selfdual::{check_plus_self_dual, construct_class1};
use gtrs_core::table::{field_with_generator, reproduce, rows, search_convention, Row};
use gtrs_core::{Caps, CodeClass, FFVector, Field, Gf, GtrsParams};

fn convention() -> Field {
    field_with_generator(&[4, 1]).unwrap()
}

fn params(f: &Field, row: &Row, eta_index: usize) -> GtrsParams {
    let alpha = FFVector::new(f, row.alpha.iter().map(|e| e.resolve(f)).collect());
    let v = FFVector::new(f, row.v.iter().map(|e| e.resolve(f)).collect());
    plus_gtrs(alpha, v, row.etas[eta_index].resolve(f), 3).unwrap()
}

#[test]
fn search_finds_x_plus_4() {
    let f = search_convention(&Caps::default()).unwrap();
    assert_eq!(f.generator_coeffs(), &[4, 1]);
    assert_eq!(f.omega_pow(8), f.from_int(3));
}

#[test]
fn row1_is_self_dual_and_mds() {
    let f = convention();
    let p = params(&f, &rows()[0], 0);
    assert!(check_plus_self_dual(&p).unwrap());
    let code = p.code().unwrap();
    assert!(code.is_hermitian_self_dual().unwrap());
    assert!(code.dual_hermitian().unwrap().equals(&code).unwrap());
    assert_eq!(code.min_distance(DEFAULT_DISTANCE_CAP).unwrap(), 4);
}

#[test]
fn row1_multipliers_are_a_rescaling() {
    // v_i^8 = ω^8 u_i
    let f = convention();
    let p = params(&f, &rows()[0], 0);
    let u = gtrs_core::gtrs::u_vector(p.alpha()).unwrap();
    let ext = f.quadratic().unwrap();
    for (&v, &u) in p.v().entries().iter().zip(u.entries()) {
        assert_eq!(ext.norm(v), f.mul(f.omega_pow(8), u));
    }
}

#[test]
fn row1_closed_form_dual_negates_eta() {
    let f = convention();
    let p = params(&f, &rows()[0], 0);
    let d = p.plus_dual_euclidean().unwrap();
    assert_eq!(d.twist().plus_eta(), Some(f.neg(p.twist().plus_eta().unwrap())));
    assert!(d.code().unwrap().equals(&p.code().unwrap().dual_euclidean()).unwrap());
}

#[test]
fn rows_2_and_6_classify() {
    let f = convention();
    let all = rows();
    let c2 = params(&f, &all[1], 0).code().unwrap().classify(DEFAULT_DISTANCE_CAP).unwrap();
    assert_eq!((c2.n, c2.k, c2.d, c2.class), (6, 3, 4, CodeClass::Mds));
    let c6 = params(&f, &all[5], 0).code().unwrap().classify(DEFAULT_DISTANCE_CAP).unwrap();
    assert_eq!((c6.n, c6.k, c6.d, c6.class), (6, 3, 3, CodeClass::Nmds));
    assert!(check_plus_self_dual(&params(&f, &all[5], 0)).unwrap());
}

#[test]
fn row3_fails_the_subset_criterion() {
    let f = convention();
    let p = params(&f, &rows()[2], 0);
    assert!(!is_mds_plus(p.alpha(), f.omega_pow(26), 3, 1 << 20).unwrap());
}

#[test]
fn row4_all_true() {
    let f = convention();
    let row = &rows()[3];
    for i in 0..row.etas.len() {
        let p = params(&f, row, i);
        assert!(check_plus_self_dual(&p).unwrap());
        assert_eq!(p.code().unwrap().min_distance(DEFAULT_DISTANCE_CAP).unwrap(), 4);
    }
}

#[test]
fn class1_on_prime_subfield_gives_row1_etas() {
    let f = convention();
    let x: Vec<Gf> = (1..=6).map(|i| f.from_int(i)).collect();
    let r = construct_class1(&f, Gf::ZERO, &x, &Caps::default()).unwrap();
    let got: Vec<Gf> = r.eta_candidates.iter().map(|c| c.eta).collect();
    let want: Vec<Gf> = rows()[0].etas.iter().map(|e| e.resolve(&f)).collect();
    assert_eq!(got, want);
}

#[test]
fn wrong_convention_is_reported_per_row() {
    let f = field_with_generator(&[3, 1]).unwrap();
    let report = reproduce(&f, None, &Caps::default()).unwrap();
    assert!(!report.all_pass());
    // row 1 η values are the roots of η^6 = -1 under any primitive element
    assert_eq!(report.rows[0].exact, Some(true));
}

#[test]
fn eta_index_selects_one_value() {
    let f = convention();
    let report = reproduce(&f, Some(0), &Caps::default()).unwrap();
    assert!(report.all_pass());
    assert!(report.rows.iter().all(|r| r.checks.len() == 1));
    let report = reproduce(&f, Some(5), &Caps::default()).unwrap();
    assert_eq!(report.rows[2].checks.len(), 0);
    assert!(reproduce(&f, Some(6), &Caps::default()).is_err());
}
