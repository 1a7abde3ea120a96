use std::sync::Arc;

use gcsym::gcs::*;
use gcsym::scalar::{rat, GaussRat};
use gcsym::symkernel::*;

fn chart2() -> Arc<Chart> {
    ChartBuilder::new(&["z1", "z2"]).build().unwrap()
}

fn dz(c: &Arc<Chart>, v: &str) -> DifferentialForm {
    DifferentialForm::gen(c, v).unwrap()
}

fn del(c: &Arc<Chart>, v: &str) -> Polyvector {
    Polyvector::gen(c, v).unwrap()
}

fn scalar(c: &Arc<Chart>, e: Expr) -> DifferentialForm {
    DifferentialForm::scalar(c, e)
}

fn example_9_1(c: &Arc<Chart>) -> DifferentialForm {
    scalar(c, c.var("z1").unwrap()).add(&dz(c, "z1").wedge(&dz(c, "z2")).unwrap()).unwrap()
}

/// `ω = (i/2) Σ dz_k ∧ dz̄_k`, the standard real symplectic form.
fn standard_omega(c: &Arc<Chart>) -> DifferentialForm {
    let half_i = GaussRat::new(rat(0, 1), rat(1, 2));
    let mut w = DifferentialForm::zero(c);
    for v in c.complex_vars().to_vec() {
        let bar = conjugate_name(&v);
        w = w.add(&dz(c, &v).wedge(&dz(c, &bar)).unwrap().scale_c(&half_i)).unwrap();
    }
    w
}

#[test]
fn example_spinor_is_pure_and_nondegenerate() {
    let c = chart2();
    let phi = example_9_1(&c);
    let p = Point::new().with("z1", 1).with("z2", 0);
    let k = kernel_basis(&phi, &p).unwrap();
    assert_eq!(k.dim(), 4);
    assert!(k.is_isotropic().unwrap());
    let r = purity_report_dim4(&phi, &p).unwrap();
    assert!(r.is_pure && r.is_nondegenerate_at_point && r.kernel_agrees);
    assert_eq!(r.pairing_value, Expr::int(-1));
    assert_eq!(r.nonvanishing, Nonvanishing::Certified);
}

#[test]
fn constant_spinor_and_symplectic() {
    let c = chart2();
    let one = DifferentialForm::one(&c);
    assert_eq!(kernel_basis(&one, &Point::new()).unwrap().dim(), 4);
    let psi = standard_omega(&c).scale_c(&GaussRat::i()).exp_two_form().unwrap();
    let p = Point::new().with("z1", 3).with("z2", -2);
    let r = purity_report_dim4(&psi, &p).unwrap();
    assert!(r.is_pure && r.is_nondegenerate_at_point && r.kernel_agrees);
}

#[test]
fn degenerate_example() {
    let c = chart2();
    let phi = DifferentialForm::one(&c).add(&dz(&c, "z1").wedge(&dz(&c, "z̄1")).unwrap()).unwrap();
    let r = purity_report_dim4(&phi, &Point::new()).unwrap();
    assert!(r.is_pure);
    assert!(!r.is_nondegenerate_at_point);
    assert!(r.pairing_value.is_zero());
    assert!(r.kernel_agrees);
    let phi2 = DifferentialForm::one(&c).add(&dz(&c, "z1").wedge(&dz(&c, "z2")).unwrap()).unwrap();
    let r2 = purity_report_dim4(&phi2, &Point::new()).unwrap();
    assert!(r2.is_pure && r2.is_nondegenerate_at_point && r2.kernel_agrees);
}

#[test]
fn type_numbers() {
    let c = chart2();
    let phi = example_9_1(&c);
    assert_eq!(type_number(&phi, &Point::new().with("z1", 0)).unwrap(), 2);
    assert_eq!(type_number(&phi, &Point::new().with("z1", 1)).unwrap(), 0);
    let cx = dz(&c, "z1").wedge(&dz(&c, "z2")).unwrap();
    assert_eq!(type_number(&cx, &Point::new()).unwrap(), 2);
}

#[test]
fn witnesses() {
    let c = chart2();
    let w = integrability_witness(&example_9_1(&c), 1).unwrap().unwrap();
    assert_eq!(w.clifford(&example_9_1(&c)).unwrap(), dz(&c, "z1"));
    println!("witness {w}");
    let phi2 = scalar(&c, c.var("z2").unwrap()).add(&dz(&c, "z1").wedge(&dz(&c, "z2")).unwrap()).unwrap();
    let w2 = integrability_witness(&phi2, 1).unwrap().unwrap();
    println!("witness {w2}");
    let psi = standard_omega(&c).scale_c(&GaussRat::i()).exp_two_form().unwrap();
    assert!(integrability_witness(&psi, 2).unwrap().unwrap().is_zero());
}

#[test]
fn transforms() {
    let c = chart2();
    let beta = del(&c, "z1").wedge(&del(&c, "z2")).unwrap();
    let phi = dz(&c, "z1").wedge(&dz(&c, "z2")).unwrap();
    let out = beta_transform(&beta, &phi).unwrap();
    assert_eq!(out, phi.add(&DifferentialForm::constant(&c, GaussRat::from_int(-1))).unwrap());
    assert_eq!(type_number(&out, &Point::new()).unwrap(), 0);
    let b = dz(&c, "z1").wedge(&dz(&c, "z̄1")).unwrap().scale_c(&GaussRat::i());
    let t = b_transform(&b, &example_9_1(&c)).unwrap();
    let p = Point::new().with("z1", 1);
    assert!(purity_report_dim4(&t, &p).unwrap().is_pure);
    assert!(b_transform(&dz(&c, "z1").wedge(&dz(&c, "z2")).unwrap(), &phi).is_err());
}

#[test]
fn model_and_deformations() {
    let m1 = log_symplectic_model(1).unwrap();
    let m2 = log_symplectic_model(2).unwrap();
    assert!(m2.omega_c.d().unwrap().is_zero());
    let c = m1.chart.clone();
    let psi = m1.restrict_to_divisor(&m1.stripped_spinor(&m1.omega_c).unwrap()).unwrap();
    assert_eq!(psi, dz(&c, "z1").wedge(&dz(&c, "z2")).unwrap());
    let pts = vec![Point::new().with("z2", 1)];
    let zero = DifferentialForm::zero(&c);
    assert!(deform_spinor(&m1, &zero, &pts).unwrap().nondegenerate());
    let a = dz(&c, "z̄1").wedge(&dz(&c, "z̄2")).unwrap().scale_c(&GaussRat::frac(1, 2));
    let rep = deform_spinor(&m1, &a, &pts).unwrap();
    println!("deformed {} -> {:?}", rep.restricted, rep.reports[0].1.is_nondegenerate_at_point);
    let inv = c.var("z1").unwrap().pow(&c, -1).unwrap();
    let cancel = dz(&c, "z1").scale(&inv).wedge(&dz(&c, "z2")).unwrap().neg();
    let rep = deform_spinor(&m1, &cancel, &pts).unwrap();
    assert!(!rep.nondegenerate());
    assert!(rep.restricted.is_zero());
}

#[test]
fn jay_examples() {
    let c = chart2();
    let j = jay_matrix(&dz(&c, "z1").wedge(&dz(&c, "z2")).unwrap(), &Point::new()).unwrap();
    println!("{:?}", j.matrix);
    let psi = standard_omega(&c).scale_c(&GaussRat::i()).exp_two_form().unwrap();
    let j2 = jay_matrix(&psi, &Point::new()).unwrap();
    println!("{:?}", j2.matrix);
    println!("{:?}", two_form_matrix(&standard_omega(&c)).unwrap());
}

#[test]
fn log_vector_fields() {
    let m = log_symplectic_model(1).unwrap();
    let c = m.chart.clone();
    let z1 = c.var("z1").unwrap();
    assert!(log_vector_field_check(&del(&c, "z1").scale(&z1), &m).unwrap());
    assert!(!log_vector_field_check(&del(&c, "z1"), &m).unwrap());
    let v = del(&c, "z2").add(&del(&c, "z1").scale(&z1.mul(&z1))).unwrap();
    assert!(log_vector_field_check(&v, &m).unwrap());
}
