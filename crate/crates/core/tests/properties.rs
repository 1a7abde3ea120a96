use std::time::{Duration, Instant};

use gcsym::gcs::mukai_pairing;
use gcsym::suite::{kernel_chart, random_expr, random_form, random_genvec, random_polyvector};
use gcsym::symkernel::json::{parse_file, print_file, Value};
use gcsym::symkernel::{Blade, DifferentialForm, Expr, Monomial};
use gcsym::GaussRat;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sign(odd: bool) -> GaussRat {
    GaussRat::from_int(if odd { -1 } else { 1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expressions_form_a_commutative_ring(seed in any::<u64>()) {
        let c = kernel_chart();
        let mut r = rng(seed);
        let [a, b, d] = [0; 3].map(|_| random_expr(&c, &mut r, 3));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&d), a.mul(&b.mul(&d)));
        prop_assert_eq!(a.mul(&b.add(&d)), a.mul(&b).add(&a.mul(&d)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn partials_obey_leibniz(seed in any::<u64>(), var in 0usize..4) {
        let c = kernel_chart();
        let mut r = rng(seed);
        let (a, b) = (random_expr(&c, &mut r, 3), random_expr(&c, &mut r, 3));
        let lhs = a.mul(&b).partial(&c, var).unwrap();
        let rhs = a.partial(&c, var).unwrap().mul(&b).add(&a.mul(&b.partial(&c, var).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_is_an_involution_commuting_with_d(seed in any::<u64>()) {
        let c = kernel_chart();
        let mut r = rng(seed);
        let phi = random_form(&c, &mut r, None, 4);
        prop_assert_eq!(phi.conj().unwrap().conj().unwrap(), phi.clone());
        prop_assert_eq!(phi.d().unwrap().conj().unwrap(), phi.conj().unwrap().d().unwrap());
    }

    #[test]
    fn d_is_a_graded_derivation(seed in any::<u64>(), p in 0usize..=2) {
        let c = kernel_chart();
        let mut r = rng(seed);
        let a = random_form(&c, &mut r, Some(p), 2);
        let b = random_form(&c, &mut r, None, 2);
        let lhs = a.wedge(&b).unwrap().d().unwrap();
        let rhs = a.d().unwrap().wedge(&b).unwrap().add(&a.wedge(&b.d().unwrap()).unwrap().scale_c(&sign(p % 2 == 1))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_is_a_graded_derivation(seed in any::<u64>(), p in 0usize..=2) {
        let c = kernel_chart();
        let mut r = rng(seed);
        let x = random_polyvector(&c, &mut r, Some(1), 2);
        let a = random_form(&c, &mut r, Some(p), 2);
        let b = random_form(&c, &mut r, None, 2);
        let lhs = a.wedge(&b).unwrap().interior(&x).unwrap();
        let rhs = a.interior(&x).unwrap().wedge(&b).unwrap()
            .add(&a.wedge(&b.interior(&x).unwrap()).unwrap().scale_c(&sign(p % 2 == 1))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartan_formula(seed in any::<u64>()) {
        let c = kernel_chart();
        let mut r = rng(seed);
        let x = random_polyvector(&c, &mut r, Some(1), 2);
        let a = random_form(&c, &mut r, None, 3);
        let rhs = a.interior(&x).unwrap().d().unwrap().add(&a.d().unwrap().interior(&x).unwrap()).unwrap();
        prop_assert_eq!(a.lie_derivative(&x).unwrap(), rhs);
    }

    #[test]
    fn schouten_graded_symmetry(seed in any::<u64>(), p in 0usize..=2, q in 0usize..=2) {
        let c = kernel_chart();
        let mut r = rng(seed);
        let a = random_polyvector(&c, &mut r, Some(p), 2);
        let b = random_polyvector(&c, &mut r, Some(q), 2);
        prop_assert_eq!(a.schouten(&b).unwrap(), b.schouten(&a).unwrap().scale_c(&sign(p * q % 2 == 1)));
    }

    #[test]
    fn clifford_anticommutator(seed in any::<u64>()) {
        let c = kernel_chart();
        let mut r = rng(seed);
        let (e, f) = (random_genvec(&c, &mut r), random_genvec(&c, &mut r));
        let phi = random_form(&c, &mut r, None, 3);
        let lhs = e.clifford(&f.clifford(&phi).unwrap()).unwrap().add(&f.clifford(&e.clifford(&phi).unwrap()).unwrap()).unwrap();
        let rhs = phi.scale(&e.inner_metric(&f).unwrap()).scale_c(&GaussRat::from_int(2));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mukai_pairing_is_symmetric_in_real_dimension_four(seed in any::<u64>()) {
        let c = kernel_chart();
        let mut r = rng(seed);
        let (a, b) = (random_form(&c, &mut r, None, 4), random_form(&c, &mut r, None, 4));
        prop_assert_eq!(mukai_pairing(&a, &b).unwrap(), mukai_pairing(&b, &a).unwrap());
    }

    #[test]
    fn expression_files_round_trip(seed in any::<u64>()) {
        let c = kernel_chart();
        let mut r = rng(seed);
        let phi = random_form(&c, &mut r, None, 5);
        let text = print_file(&c, &Value::Form(phi.clone()));
        let (c2, v) = parse_file(&text).unwrap();
        prop_assert_eq!(print_file(&c2, &v), text);
        let back = v.into_form(&c2).unwrap();
        prop_assert_eq!(back.to_string(), phi.to_string());
    }
}

#[test]
fn large_form_round_trips_quickly() {
    let c = kernel_chart();
    let mut r = rng(99);
    let mut phi = DifferentialForm::zero(&c);
    while phi.terms().map(|(_, e)| e.len()).sum::<usize>() < 1000 {
        let blade = Blade(r.gen_range(0..16));
        let exps: Vec<i32> = (0..c.num_slots()).map(|s| if s == 0 { r.gen_range(-1..=4) } else { r.gen_range(0..=4) }).collect();
        let coeff = GaussRat::frac(r.gen_range(1..=50), r.gen_range(1..=7));
        phi.add_term(blade, Expr::term(coeff, Monomial::from_exponents(exps)));
    }
    let start = Instant::now();
    let text = print_file(&c, &Value::Form(phi.clone()));
    let (c2, v) = parse_file(&text).unwrap();
    assert_eq!(print_file(&c2, &v), text);
    assert!(start.elapsed() < Duration::from_secs(20), "{:?}", start.elapsed());
}
