//! Property tests for the exact kernel and the parameter arithmetic.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use sandpile_srg::arith::valuation;
use sandpile_srg::data;
use sandpile_srg::formats::{parse_graph6, to_graph6};
use sandpile_srg::graphs::{paley, petersen, rook, schlafli, shrikhande, triangular, Graph};
use sandpile_srg::group::{critical_group, AbelianGroup};
use sandpile_srg::matrix::IntMatrix;
use sandpile_srg::srg::SrgParams;

fn small_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(rows, cols)| {
        proptest::collection::vec(-bound..=bound, rows * cols)
            .prop_map(move |entries| IntMatrix::from_i64(rows, cols, &entries))
    })
}

fn small_group() -> impl Strategy<Value = AbelianGroup> {
    proptest::collection::vec(
        (
            proptest::sample::select(vec![2u64, 3, 5, 7, 11]),
            1u32..=4,
            1u64..=4,
        ),
        0..6,
    )
    .prop_map(|terms| AbelianGroup::from_parts(&terms))
}

fn arbitrary_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut idx = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[idx] {
                        g.add_edge(i, j);
                    }
                    idx += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn snf_divisibility_chain_and_minor_oracle(m in small_matrix(5, 20)) {
        let snf = m.snf(false);
        for w in snf.invariant_factors.windows(2) {
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        let mut product = BigUint::one();
        for k in 1..=m.rows().min(m.cols()) {
            product *= &snf.invariant_factors[k - 1];
            prop_assert_eq!(&product, &m.minor_gcd(k).unwrap());
        }
    }

    #[test]
    fn snf_transforms_are_unimodular(m in small_matrix(8, 15)) {
        let snf = m.snf(true);
        let left = snf.left.as_ref().unwrap();
        let right = snf.right.as_ref().unwrap();
        let product = left.mul(&m).mul(right);
        let t = m.rows().min(m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let expected = if i == j && i < t {
                    BigInt::from(snf.invariant_factors[i].clone())
                } else {
                    BigInt::zero()
                };
                prop_assert_eq!(&product[(i, j)], &expected);
            }
        }
        prop_assert!(left.determinant().abs().is_one());
        prop_assert!(right.determinant().abs().is_one());
    }

    #[test]
    fn local_divisors_agree_with_snf(m in small_matrix(6, 12), p in proptest::sample::select(vec![2u64, 3, 5, 7])) {
        let snf = m.snf(false);
        let cap = 20;
        let local = m.local_elementary_divisors(p, cap).unwrap();
        let mut expected = vec![0u64; cap as usize + 1];
        for f in snf.nonzero_factors() {
            expected[valuation(f, &BigUint::from(p)) as usize] += 1;
        }
        prop_assert_eq!(&local.e, &expected);
        prop_assert_eq!(local.free_rank, snf.zero_count());
        prop_assert_eq!(local.e[0] as usize, m.rank_mod_p(p).unwrap());
    }

    #[test]
    fn kernel_vectors_annihilate(m in small_matrix(6, 12), p in proptest::sample::select(vec![2u64, 3, 5, 7])) {
        let basis = m.kernel_basis_mod_p(p).unwrap();
        prop_assert_eq!(basis.len() + m.rank_mod_p(p).unwrap(), m.cols());
        let big_p = BigInt::from(p);
        for vector in &basis {
            for i in 0..m.rows() {
                let mut dot = BigInt::zero();
                for j in 0..m.cols() {
                    dot += &m[(i, j)] * BigInt::from(vector[j]);
                }
                prop_assert!((dot % &big_p).is_zero());
            }
        }
    }

    #[test]
    fn graph6_roundtrip(g in arbitrary_graph(50)) {
        let encoded = to_graph6(&g);
        prop_assert_eq!(parse_graph6(&encoded).unwrap(), g);
    }

    #[test]
    fn invariant_factors_roundtrip(g in small_group()) {
        let factors = g.invariant_factors();
        // chain property with d_1 > 1
        for w in factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        if let Some(first) = factors.first() {
            prop_assert!(*first > BigUint::one());
        }
        prop_assert_eq!(AbelianGroup::from_invariant_factors(&factors), g);
    }

    #[test]
    fn sylow_parts_recompose(g in small_group()) {
        let mut order = BigUint::one();
        let mut exponent = BigUint::one();
        for p in [2u64, 3, 5, 7, 11] {
            let part = g.sylow(p).unwrap();
            order *= part.order();
            exponent *= part.exponent();
        }
        prop_assert_eq!(order, g.order());
        prop_assert_eq!(exponent, g.exponent());
    }
}

#[test]
fn kernel_dimensions_mod_2() {
    let pet = petersen().laplacian();
    assert_eq!(pet.kernel_basis_mod_p(2).unwrap().len(), 5);
    let kneser82 = sandpile_srg::graphs::kneser(8, 2).unwrap().laplacian();
    assert_eq!(kneser82.kernel_basis_mod_p(2).unwrap().len(), 28 - 7);
}

#[test]
fn sixteen_vertex_local_divisors() {
    // the two srg(16,6,2,2) graphs, resolved at p = 2 with cap
    // v_2(4) + v_2(8) = 5
    let rook4 = rook(4).unwrap().laplacian();
    let d = rook4.local_elementary_divisors(2, 5).unwrap();
    assert_eq!(d.e, vec![6, 0, 0, 5, 0, 4]);
    assert_eq!(d.free_rank, 1);

    let shrik = shrikhande().laplacian();
    let d = shrik.local_elementary_divisors(2, 5).unwrap();
    assert_eq!(d.e, vec![6, 1, 0, 2, 2, 4]);
    assert_eq!(d.free_rank, 1);

    // order 2^35 and exponent 32 for both
    for l in [&rook4, &shrik] {
        let g = critical_group(l).unwrap();
        assert_eq!(g.order(), BigUint::from(2u32).pow(35));
        assert_eq!(g.exponent(), BigUint::from(32u32));
    }
}

#[test]
fn table_rows_satisfy_spectral_identities() {
    for row in data::feasible_params() {
        let params = SrgParams::new(row.v, row.k, row.lambda, row.mu).unwrap();
        let spectrum = params.spectrum().unwrap();
        let s = spectrum.integral().unwrap();
        assert_eq!(s.f + s.g, row.v - 1);
        assert_eq!(s.r * s.f + s.s * s.g, row.v * row.k);
        assert_eq!(s.r + s.s, 2 * row.k - row.lambda + row.mu);
        assert_eq!(s.r * s.s, row.mu * row.v);
        assert!(0 < s.r && s.r < s.s);
    }
}

#[test]
fn table_complements_pair_up() {
    for row in data::feasible_params() {
        let params = SrgParams::new(row.v, row.k, row.lambda, row.mu).unwrap();
        let Ok(comp) = params.complement() else {
            continue;
        };
        assert_eq!(comp.complement().unwrap(), params);
        // eigenvalues of the complement are v - s, v - r with swapped
        // multiplicities
        let s = *params.spectrum().unwrap().integral().unwrap();
        let cs = *comp.spectrum().unwrap().integral().unwrap();
        assert_eq!((cs.r, cs.f), (row.v - s.s, s.g));
        assert_eq!((cs.s, cs.g), (row.v - s.r, s.f));
    }
}

/// Independent spanning-tree oracle: delete the first row and column and
/// take an exact determinant.
fn spanning_trees_by_determinant(g: &Graph) -> BigUint {
    let l = g.laplacian();
    let keep: Vec<usize> = (1..g.n()).collect();
    let minor = l.submatrix(&keep, &keep);
    minor
        .determinant()
        .to_biguint()
        .expect("tree counts are nonnegative")
}

#[test]
fn critical_group_order_counts_spanning_trees() {
    let graphs: Vec<(&str, Graph)> = vec![
        ("petersen", petersen()),
        ("rook(4)", rook(4).unwrap()),
        ("shrikhande", shrikhande()),
        ("schlafli", schlafli()),
        ("paley(13)", paley(13).unwrap()),
        ("triangular(6)", triangular(6).unwrap()),
        ("fixture(25)", data::srg_25_first()),
    ];
    for (name, g) in graphs {
        assert!(g.n() <= 30, "{name}: oracle is for small graphs");
        let group = critical_group(&g.laplacian()).unwrap();
        assert_eq!(
            group.order(),
            spanning_trees_by_determinant(&g),
            "{name}: order vs deletion determinant"
        );
    }
}

#[test]
fn petersen_laplacian_spectrum_is_exactly_2_5_5_4() {
    // the Laplacian annihilates (L - 2I)(L - 5I) up to the rank-one
    // all-ones correction, pinning the eigenvalues
    let l = petersen().laplacian();
    let n = 10usize;
    let shift = |c: i64| {
        IntMatrix::from_fn(n, n, |i, j| {
            let base = l[(i, j)].to_i64().unwrap();
            if i == j {
                base - c
            } else {
                base
            }
        })
    };
    let product = shift(2).mul(&shift(5));
    // mu * J with mu = 1
    for i in 0..n {
        for j in 0..n {
            assert_eq!(product[(i, j)], BigInt::one(), "at ({i},{j})");
        }
    }
}
