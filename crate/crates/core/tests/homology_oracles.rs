use std::collections::BTreeMap;

use gcsym::homology::*;
use gcsym::linalg::QMatrix;
use gcsym::scalar::int;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(rows: &[Vec<i64>]) -> QMatrix {
    QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
}

fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|b| b.count_ones() as usize == k).map(|b| (0..n).filter(|i| b >> i & 1 == 1).collect()).collect()
}

/// Largest `k` with a nonzero `k × k` minor.
fn minor_rank(m: &[Vec<i64>]) -> usize {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    (1..=r.min(c))
        .rev()
        .find(|&k| {
            subsets(r, k).iter().any(|rows| {
                subsets(c, k).iter().any(|cols| {
                    let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                    det(&sub) != 0
                })
            })
        })
        .unwrap_or(0)
}

#[test]
fn rank_matches_minor_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..300 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=5));
        let density = rng.gen_range(0.2..1.0);
        let m: Vec<Vec<i64>> =
            (0..r).map(|_| (0..c).map(|_| if rng.gen_bool(density) { rng.gen_range(-2..=2) } else { 0 }).collect()).collect();
        let expected = minor_rank(&m);
        assert_eq!(rank_exact(&q(&m)), expected, "{m:?}");
        assert_eq!(q(&m).rank(), expected, "{m:?}");
    }
}

/// Simplicial cochain complex of a complex given by its top simplices.
fn simplicial(top: &[Vec<usize>]) -> CochainComplex {
    let mut faces: Vec<std::collections::BTreeSet<Vec<usize>>> = vec![Default::default(); top[0].len()];
    for s in top {
        for k in 1..=s.len() {
            for idx in subsets(s.len(), k) {
                faces[k - 1].insert(idx.iter().map(|&i| s[i]).collect());
            }
        }
    }
    let faces: Vec<Vec<Vec<usize>>> = faces.into_iter().map(|f| f.into_iter().collect()).collect();
    let dims: Vec<usize> = faces.iter().map(Vec::len).collect();
    let maps = (0..faces.len() - 1)
        .map(|k| {
            let mut rows = vec![vec![0i64; dims[k]]; dims[k + 1]];
            for (i, s) in faces[k + 1].iter().enumerate() {
                for drop in 0..s.len() {
                    let face: Vec<usize> = s.iter().enumerate().filter(|&(t, _)| t != drop).map(|(_, &v)| v).collect();
                    let j = faces[k].iter().position(|f| *f == face).unwrap();
                    rows[i][j] = if drop % 2 == 0 { 1 } else { -1 };
                }
            }
            q(&rows)
        })
        .collect();
    CochainComplex::new(dims, maps).unwrap()
}

#[test]
fn simplicial_cohomology_of_classical_spaces() {
    let sphere: Vec<Vec<usize>> = subsets(4, 3);
    assert_eq!(simplicial(&sphere).cohomology_dims(), vec![1, 0, 1]);

    let torus: Vec<Vec<usize>> = (0..7)
        .flat_map(|i| {
            let mut a = vec![i, (i + 1) % 7, (i + 3) % 7];
            let mut b = vec![i, (i + 2) % 7, (i + 3) % 7];
            a.sort();
            b.sort();
            [a, b]
        })
        .collect();
    let t = simplicial(&torus);
    assert_eq!(t.dims(), &[7, 21, 14]);
    assert_eq!(t.cohomology_dims(), vec![1, 2, 1]);

    let rp2: Vec<Vec<usize>> = [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
        [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5],
    ]
    .iter()
    .map(|t| t.to_vec())
    .collect();
    let r = simplicial(&rp2);
    assert_eq!(r.dims(), &[6, 15, 10]);
    assert_eq!(r.cohomology_dims(), vec![1, 0, 0]);
}

fn kron(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let mut out = QMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out[(i * b.rows() + k, j * b.cols() + l)] = &a[(i, j)] * &b[(k, l)];
                }
            }
        }
    }
    out
}

/// `d_k = A_{k+1} E_k A_k⁻¹` with `E_k` sending the basis vectors after the
/// image of `E_{k−1}` onto the first `r_k` coordinates.
fn random_complex(rng: &mut ChaCha8Rng, len: usize) -> CochainComplex {
    let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=3)).collect();
    let change: Vec<QMatrix> = dims.iter().map(|&d| random_invertible(d, rng)).collect();
    let mut maps = Vec::new();
    let mut prev = 0;
    for k in 0..len - 1 {
        let r = rng.gen_range(0..=(dims[k] - prev).min(dims[k + 1]));
        let mut e = QMatrix::zeros(dims[k + 1], dims[k]);
        for t in 0..r {
            e[(t, prev + t)] = int(1);
        }
        let inv = change[k].inverse().unwrap();
        maps.push(change[k + 1].mul(&e).unwrap().mul(&inv).unwrap());
        prev = r;
    }
    CochainComplex::new(dims, maps).unwrap()
}

#[test]
fn tensor_double_complex_obeys_kunneth() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let a = random_complex(&mut rng, 3);
        let b = random_complex(&mut rng, 3);
        let (da, db) = (a.dims(), b.dims());
        let dims: Vec<Vec<usize>> = (0..3).map(|p| (0..3).map(|q| da[p] * db[q]).collect()).collect();
        let mut h = BTreeMap::new();
        let mut v = BTreeMap::new();
        for p in 0..3 {
            for qq in 0..3 {
                if p < 2 {
                    h.insert((p, qq), kron(&a.maps()[p], &QMatrix::identity(db[qq])));
                }
                if qq < 2 {
                    let sign = if p % 2 == 0 { int(1) } else { int(-1) };
                    v.insert((p, qq), kron(&QMatrix::identity(da[p]), &b.maps()[qq]).scale(&sign));
                }
            }
        }
        let dc = DoubleComplex::new(dims, h, v).unwrap();
        let pages = spectral_pages(&dc).unwrap();
        let (ha, hb) = (a.cohomology_dims(), b.cohomology_dims());
        let mut kunneth = vec![0; 5];
        for p in 0..3 {
            for qq in 0..3 {
                kunneth[p + qq] += ha[p] * hb[qq];
                assert_eq!(pages.e1[p][qq], da[p] * hb[qq]);
                assert_eq!(pages.e2[p][qq], ha[p] * hb[qq]);
            }
        }
        assert_eq!(pages.total, kunneth);
        assert!(pages.degenerates_at_e2());
    }
}

#[test]
fn e1_model_reproduces_its_page() {
    let e1 = vec![vec![1, 0], vec![3, 2], vec![4, 1]];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let maps = BTreeMap::from([
        ((1, 0), random_matrix_of_rank(4, 3, 2, &mut rng)),
        ((1, 1), random_matrix_of_rank(1, 2, 1, &mut rng)),
    ]);
    let dc = DoubleComplex::e1_model(&e1, &maps, 2, 9).unwrap();
    let pages = spectral_pages(&dc).unwrap();
    assert_eq!(pages.e1, e1);
    assert_eq!(pages.e2, vec![vec![1, 0], vec![1, 1], vec![2, 0]]);
    assert!(pages.degenerates_at_e2());
}

fn brute_force(p: &ExactSequenceProblem, bound: i64) -> Vec<(Vec<i64>, Vec<i64>)> {
    let n = p.dims.len();
    let mut out = Vec::new();
    let total = bound + 1;
    let count = (total as u64).pow((2 * n - 1) as u32);
    for code in 0..count {
        let mut c = code;
        let mut vals = Vec::with_capacity(2 * n - 1);
        for _ in 0..2 * n - 1 {
            vals.push((c % total as u64) as i64);
            c /= total as u64;
        }
        let (d, r) = vals.split_at(n);
        if p.satisfied_by(d, r) {
            out.push((d.to_vec(), r.to_vec()));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_sequence_solver_agrees_with_enumeration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=4);
        let ranks: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(0..=2)).collect();
        let mut dims: Vec<i64> = (0..n).map(|i| {
            let l = if i > 0 { ranks[i - 1] } else { 0 };
            let r = ranks.get(i).copied().unwrap_or(0);
            l + r
        }).collect();
        dims[0] += rng.gen_range(0..=1);
        if rng.gen_bool(0.3) {
            let k = rng.gen_range(0..n);
            dims[k] += 1;
        }
        let dk: Vec<Option<i64>> = dims.iter().map(|&d| rng.gen_bool(0.7).then_some(d)).collect();
        let rk: Vec<Option<i64>> = ranks.iter().map(|&r| rng.gen_bool(0.3).then_some(r)).collect();
        let p = ExactSequenceProblem::new(dk, rk).unwrap();
        let sols = brute_force(&p, 6);
        match p.solve() {
            ExactSequenceOutcome::Unique { dims, ranks } => {
                prop_assert!(p.satisfied_by(&dims, &ranks));
                prop_assert!(sols.len() == 1, "{:?} {:?}", p, sols);
            }
            ExactSequenceOutcome::Inconsistent { .. } => prop_assert!(sols.is_empty(), "{:?}", p),
            ExactSequenceOutcome::Underdetermined { .. } => prop_assert_ne!(sols.len(), 1),
        }
    }

    #[test]
    fn euler_characteristic_is_preserved(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = rng.gen_range(2..=5);
        let c = random_complex(&mut rng, len);
        prop_assert_eq!(alternating_sum(&c.cohomology_dims()), c.euler_characteristic());
    }

    #[test]
    fn complex_file_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_complex(&mut rng, 4);
        let text = serde_json::to_string(&ComplexFile::from_complex(&c)).unwrap();
        let back = parse_complex(&text).unwrap();
        prop_assert_eq!(back.dims(), c.dims());
        prop_assert!(back.maps() == c.maps());
    }
}

#[test]
fn complex_file_errors() {
    assert!(parse_complex(r#"{"dims": [1, 1], "maps": [{"from": 0, "to": 2, "entries": []}]}"#).is_err());
    assert!(parse_complex(r#"{"dims": [1, 1], "maps": [{"from": 0, "to": 1, "entries": [[3, 0, 1]]}]}"#).is_err());
    assert!(parse_complex(r#"{"dims": [1, 1, 1], "maps": [
        {"from": 0, "to": 1, "entries": [[0, 0, 1]]},
        {"from": 1, "to": 2, "entries": [[0, 0, 1]]}]}"#).is_err());
    assert!(parse_complex(r#"{"dims": [1], "extra": 0}"#).is_err());
}
