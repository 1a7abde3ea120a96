use std::collections::BTreeMap;

use gcsym::homology::rank_exact;
use gcsym::scalar::{int, Rational};
use gcsym::suite::nodal_cubic;
use gcsym::surfaces::*;
use gcsym::Error;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Poly = BTreeMap<(i32, i32), i64>;

fn add_to(p: &mut Poly, k: (i32, i32), c: i64) {
    *p.entry(k).or_insert(0) += c;
}

fn partial(p: &Poly, var: usize) -> Poly {
    let mut out = Poly::new();
    for (&(i, j), &c) in p {
        let e = if var == 0 { i } else { j };
        if e > 0 {
            let k = if var == 0 { (i - 1, j) } else { (i, j - 1) };
            add_to(&mut out, k, c * e as i64);
        }
    }
    out
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(i, j), &c) in a {
        for (&(k, l), &d) in b {
            add_to(&mut out, (i + k, j + l), c * d);
        }
    }
    out
}

fn mono(i: i32, j: i32) -> Poly {
    Poly::from([((i, j), 1)])
}

/// `g = α(f) − f·div α` for each projective field `α = a1 ∂1 + a2 ∂2`,
/// read off in the cubic basis.
fn oracle_matrix(f: &Poly) -> Vec<Vec<i64>> {
    let zero = Poly::new();
    let fields: [(Poly, Poly); 8] = [
        (mono(0, 0), zero.clone()),
        (zero.clone(), mono(0, 0)),
        (mono(1, 0), zero.clone()),
        (zero.clone(), mono(1, 0)),
        (mono(0, 1), zero.clone()),
        (zero.clone(), mono(0, 1)),
        (mono(2, 0), mono(1, 1)),
        (mono(1, 1), mono(0, 2)),
    ];
    let basis = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)];
    let mut rows = vec![vec![0i64; 8]; 10];
    for (col, (a1, a2)) in fields.iter().enumerate() {
        let mut div = partial(a1, 0);
        for (k, c) in partial(a2, 1) {
            add_to(&mut div, k, c);
        }
        let mut g = mul(a1, &partial(f, 0));
        for (k, c) in mul(a2, &partial(f, 1)) {
            add_to(&mut g, k, c);
        }
        for (k, c) in mul(f, &div) {
            add_to(&mut g, k, -c);
        }
        for (k, c) in g {
            if c != 0 {
                let row = basis.iter().position(|&b| b == k).expect("cubic image");
                rows[row][col] = c;
            }
        }
    }
    rows
}

fn poly_from(c: &[i64; 10]) -> Poly {
    let basis = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)];
    basis.iter().zip(c).filter(|(_, &x)| x != 0).map(|(&k, &x)| (k, x)).collect()
}

fn kernel_matrix(c: &[i64; 10]) -> Vec<Vec<i64>> {
    let m = cp2_poisson_matrix(&cubic_from_coefficients(&c.map(int)).unwrap()).unwrap();
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect())
        .collect()
}

#[test]
fn cp2_matrix_matches_polynomial_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut cubics = vec![[1, 0, 0, 0, 0, 0, 1, 0, 0, 1], [0, 0, 0, -1, 0, 1, -1, 0, 0, 0]];
    for _ in 0..40 {
        cubics.push(std::array::from_fn(|_| rng.gen_range(-5..=5)));
    }
    for c in cubics {
        assert_eq!(kernel_matrix(&c), oracle_matrix(&poly_from(&c)), "cubic {c:?}");
    }
}

#[test]
fn fermat_rank_two_routes() {
    let f = cubic_from_coefficients(&[1, 0, 0, 0, 0, 0, 1, 0, 0, 1].map(int)).unwrap();
    let m = cp2_poisson_matrix(&f).unwrap();
    assert_eq!((m.rows(), m.cols()), (10, 8));
    assert_eq!(rank_exact(&m), 8);
    assert_eq!(m.rank(), 8);
    let t = cp2_table(&f, 0, 42).unwrap();
    assert_eq!(t.total, vec![1, 0, 2, 0, 0]);
    assert!(t.degenerates_at_e2);
}

#[test]
fn degenerate_cubics_frozen_ranks() {
    // values produced by the oracle above
    let cases: [([i64; 10], usize); 4] = [
        ([0, 0, 0, -1, 0, 1, -1, 0, 0, 0], 8),
        ([0, 0, 0, 0, 0, 1, -1, 0, 0, 0], 8),
        ([0, 0, 0, 0, 1, 0, 0, 0, 0, 0], 6),
        ([0; 10], 0),
    ];
    for (c, r) in cases {
        let m = cp2_poisson_matrix(&cubic_from_coefficients(&c.map(int)).unwrap()).unwrap();
        assert_eq!(rank_exact(&m), r, "{c:?}");
    }
}

#[test]
fn cubic_validation() {
    let c = cp2_chart();
    let z1 = c.var("z1").unwrap();
    let quartic = z1.mul(&z1).mul(&z1).mul(&z1);
    assert!(matches!(cp2_poisson_matrix(&quartic), Err(Error::Degree { .. })));
    let complex = z1.scale(&gcsym::GaussRat::i());
    assert!(matches!(cp2_poisson_matrix(&complex), Err(Error::NotReal)));
    assert!(cubic_from_coefficients(&[int(1)]).is_err());
}

#[test]
fn delpezzo_sweep() {
    for k in 0..=8usize {
        assert_eq!(delpezzo_dims(k, 0).unwrap(), [1, 0, k + 2]);
        let t = delpezzo_table(k, 0, 5 + k as u64).unwrap();
        assert!(t.degenerates_at_e2);
        assert_eq!(t.total, vec![1, 0, k + 2, 0, 0]);
    }
    assert!(matches!(delpezzo_dims(9, 0), Err(Error::OutOfRange(_))));
}

#[test]
fn delpezzo_kernel_shifts_dimensions() {
    let d = delpezzo_dims(0, 2).unwrap();
    assert_eq!(d, [1, 2, 4]);
    let t = delpezzo_table(0, 2, 1).unwrap();
    assert_eq!(t.total[..3], d);
}

#[test]
fn hirzebruch_large_e() {
    for e in 4..=8usize {
        let HirzebruchOutcome::Consistent { rank_delta0, rank_delta1, h2, injective, surjective } =
            hirzebruch_consistency(e).unwrap()
        else {
            panic!("e = {e} should be consistent");
        };
        let ei = e as i64;
        assert_eq!((rank_delta0, rank_delta1, h2), (ei + 5, ei - 3, 3));
        assert!(injective && surjective);
        assert!(obstruction_witness_dims(e).unwrap());
        let t = hirzebruch_table(e, 9).unwrap();
        assert_eq!(t.total, vec![1, 0, 3, 0, 0]);
        assert!(t.degenerates_at_e2);
    }
}

#[test]
fn hirzebruch_small_e() {
    for e in [1, 2] {
        match hirzebruch_consistency(e).unwrap() {
            HirzebruchOutcome::Inconsistent { row, certificate } => {
                assert_eq!(row, 1);
                assert!(certificate.contains("H1(Θ)"), "{certificate}");
            }
            other => panic!("e = {e}: {other:?}"),
        }
        assert!(hirzebruch_table(e, 0).is_err());
    }
    // the sheaf dims at e = 3 close the rows: rank δ¹ = 0
    assert!(matches!(
        hirzebruch_consistency(3).unwrap(),
        HirzebruchOutcome::Consistent { rank_delta0: 8, rank_delta1: 0, h2: 3, .. }
    ));
    assert!(obstruction_witness_dims(3).is_err());
    assert!(hirzebruch_consistency(0).is_err());
}

#[test]
fn local_algebra_matches_quasihomogeneous_formula() {
    let c = cp2_chart();
    let (x, y) = (c.var("z1").unwrap(), c.var("z2").unwrap());
    let pow = |e: &gcsym::symkernel::Expr, k: usize| (1..k).fold(e.clone(), |acc, _| acc.mul(e));
    for a in 2..=5usize {
        for b in 2..=5usize {
            let f = pow(&x, a).add(&pow(&y, b));
            let r = local_algebra_dim(&LocalAlgebraProblem { f, bound: a + b }).unwrap();
            assert_eq!(r.dim, (a - 1) * (b - 1), "z1^{a} + z2^{b}");
            assert!(r.stabilized);
        }
    }
}

#[test]
fn local_algebra_examples() {
    let c = cp2_chart();
    let (x, y) = (c.var("z1").unwrap(), c.var("z2").unwrap());
    let node = local_algebra_dim(&LocalAlgebraProblem { f: x.mul(&y), bound: 4 }).unwrap();
    assert_eq!((node.dim, node.stabilized), (1, true));
    let smooth = local_algebra_dim(&LocalAlgebraProblem { f: x.clone(), bound: 4 }).unwrap();
    assert_eq!(smooth.dim, 0);
    let shifted = x.add(&gcsym::symkernel::Expr::one());
    assert!(local_algebra_dim(&LocalAlgebraProblem { f: shifted, bound: 4 }).is_err());
    assert!(local_algebra_dim(&LocalAlgebraProblem { f: x.mul(&y), bound: 1 }).is_err());
}

#[test]
fn nodal_cubic_correction() {
    let t = cp2_table(&nodal_cubic(), 1, 3).unwrap();
    assert_eq!(t.total[2], 2);
    assert_eq!(t.complement[2], 1);
    assert_eq!(nodal_dims(&t.complement, 1, true).unwrap(), t.total);
    assert_eq!(nodal_dims(&[1, 0, 1, 0, 0], 3, true).unwrap(), vec![1, 0, 4, 0, 0]);
    assert!(matches!(nodal_dims(&[1, 0, 1], 1, false), Err(Error::MissingHypothesis(_))));
    assert!(cp2_table(&nodal_cubic(), 5, 3).is_err());
}

#[test]
fn table_renderings() {
    let t = delpezzo_table(2, 0, 0).unwrap();
    let md = t.to_markdown();
    assert!(md.contains("Lie algebroid | 1 | 0 | 4 |"));
    let v = t.to_json();
    assert_eq!(v["total"][2], 4);
    assert!(Rational::zero() == int(0));
}
