use arrowpencil::exact::{
    independent_extension, monomials_of_degree, poly_arith, quotient_dimension, rank, Field, PolyOp, SparseMatrix,
    SparsePolynomial,
};
use arrowpencil::grassmann::plucker_relations;
use arrowpencil::periods::build_period_kernel;
use num_bigint::BigInt;
use proptest::prelude::*;

const LARGE_PRIMES: [u64; 3] = [1_073_741_789, 2_147_483_647, 4_294_967_291];

fn poly_strategy(nvars: usize) -> impl Strategy<Value = SparsePolynomial> {
    prop::collection::vec((prop::collection::vec(-2i32..3, nvars), -5i64..6), 0..6)
        .prop_map(move |terms| SparsePolynomial::from_int_terms(nvars, Field::Rationals, terms))
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..7).prop_flat_map(|(rows, cols)| {
        prop::collection::vec(prop::collection::vec(-4i64..5, cols), rows)
    })
}

fn dense(field: Field, rows: &[Vec<i64>]) -> SparseMatrix {
    SparseMatrix::from_dense(field, rows[0].len(), rows).unwrap()
}

/// Rank by a plain fraction-free row reduction in i128, independent of the
/// library's elimination.
fn oracle_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let cols = a[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, pivot);
        for i in rank + 1..a.len() {
            let (x, y) = (a[rank][c], a[i][c]);
            for j in 0..cols {
                a[i][j] = a[i][j] * x - a[rank][j] * y;
            }
            let g = a[i].iter().fold(0i128, |g, &v| num_integer::gcd(g, v));
            if g > 1 {
                a[i].iter_mut().for_each(|v| *v /= g);
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rank_matches_elimination_oracle(rows in matrix_strategy()) {
        prop_assert_eq!(rank(&dense(Field::Rationals, &rows)), oracle_rank(&rows));
    }

    #[test]
    fn rank_over_q_agrees_with_large_primes(rows in matrix_strategy()) {
        let q = rank(&dense(Field::Rationals, &rows));
        for p in LARGE_PRIMES {
            prop_assert_eq!(rank(&dense(Field::prime(p).unwrap(), &rows)), q, "disagreement mod {}", p);
        }
    }

    #[test]
    fn rank_is_invariant_under_permutation_and_scaling(
        rows in matrix_strategy(),
        seed in any::<u64>(),
        scales in prop::collection::vec(prop_oneof![-7i64..-1, 1i64..8], 6),
    ) {
        let mut permuted = rows.clone();
        let len = permuted.len();
        for i in (1..len).rev() {
            permuted.swap(i, (seed as usize).wrapping_mul(i + 31) % (i + 1));
        }
        for (row, s) in permuted.iter_mut().zip(&scales) {
            row.iter_mut().for_each(|v| *v *= s);
        }
        for field in [Field::Rationals, Field::prime(LARGE_PRIMES[0]).unwrap()] {
            prop_assert_eq!(rank(&dense(field, &rows)), rank(&dense(field, &permuted)));
        }
    }

    #[test]
    fn independent_extension_adds_exactly_the_rank_gain(
        base in matrix_strategy(),
        extra in prop::collection::vec(prop::collection::vec(-2i64..3, 6), 0..6),
    ) {
        let cols = base[0].len();
        let extra: Vec<Vec<i64>> = extra.into_iter().map(|mut r| { r.truncate(cols); r.resize(cols, 0); r }).collect();
        for field in [Field::Rationals, Field::prime(LARGE_PRIMES[1]).unwrap()] {
            let b = dense(field, &base);
            let candidates: Vec<_> = extra
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, field.from_i64(v))).collect())
                .collect();
            let chosen = independent_extension(&b, &candidates).unwrap();
            let mut all = base.clone();
            all.extend(extra.iter().cloned());
            prop_assert_eq!(chosen.len(), rank(&dense(field, &all)) - rank(&b));
            prop_assert!(chosen.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn ring_axioms(a in poly_strategy(3), b in poly_strategy(3), c in poly_strategy(3)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            ab.add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn reduction_mod_p_is_a_ring_map(a in poly_strategy(2), b in poly_strategy(2)) {
        let f = Field::prime(LARGE_PRIMES[2]).unwrap();
        let lhs = a.mul(&b).unwrap().change_field(f).unwrap();
        let rhs = a.change_field(f).unwrap().mul(&b.change_field(f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn quartic_slice_of_the_plucker_ideal() {
    // every degree-2 multiple of the single G(2,4) relation, checked against the
    // known dimension of the degree-4 coordinate ring (d+1)(d+2)^2(d+3)/12
    let rel = &plucker_relations(2, 4, Field::Rationals).unwrap()[0];
    let monomials = monomials_of_degree(6, 4);
    let position: std::collections::HashMap<_, _> = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut span = SparseMatrix::new(Field::Rationals, monomials.len());
    for m in monomials_of_degree(6, 2) {
        span.push_row(rel.mul_monomial(&m).terms().map(|(e, c)| (position[e], c.clone())).collect()).unwrap();
    }
    assert_eq!(span.nrows(), 21);
    assert_eq!(rank(&span), 21);
    assert_eq!(quotient_dimension(126, &span).unwrap(), 105);
    assert_eq!(5 * 36 * 7 / 12, 105);
}

#[test]
fn square_of_the_period_kernel_has_constant_term_twelve() {
    let l = build_period_kernel().unwrap().kernel;
    let sq = l.mul(&l).unwrap().constant_term();
    assert_eq!(sq.to_integer().unwrap(), BigInt::from(12));
}

#[test]
fn difference_of_squares() {
    let f = Field::Rationals;
    let a = SparsePolynomial::from_int_terms(2, f, [(vec![1, 0], 1), (vec![0, 1], 1)]);
    let b = SparsePolynomial::from_int_terms(2, f, [(vec![1, 0], 1), (vec![0, 1], -1)]);
    let expected = SparsePolynomial::from_int_terms(2, f, [(vec![2, 0], 1), (vec![0, 2], -1)]);
    assert_eq!(poly_arith(&a, &b, PolyOp::Mul).unwrap(), expected);
}

#[test]
fn laurent_square() {
    let f = Field::Rationals;
    let a = SparsePolynomial::from_int_terms(2, f, [(vec![-1, 0], 1), (vec![0, 1], 1)]);
    let expected =
        SparsePolynomial::from_int_terms(2, f, [(vec![-2, 0], 1), (vec![-1, 1], 2), (vec![0, 2], 1)]);
    assert_eq!(a.pow(2), expected);
}

#[test]
fn mismatched_contexts_are_rejected() {
    let a = SparsePolynomial::one(2, Field::Rationals);
    assert!(poly_arith(&a, &SparsePolynomial::one(3, Field::Rationals), PolyOp::Add).is_err());
    assert!(poly_arith(&a, &SparsePolynomial::one(2, Field::prime(7).unwrap()), PolyOp::Mul).is_err());
}

#[test]
fn constant_terms() {
    let f = Field::Rationals;
    let a = SparsePolynomial::from_int_terms(2, f, [(vec![0, 0], 3), (vec![1, -1], 5)]);
    assert_eq!(a.constant_term(), f.from_i64(3));
    let b = SparsePolynomial::from_int_terms(2, f, [(vec![1, 0], 1), (vec![0, 1], 1)]);
    assert!(b.constant_term().is_zero());
}

#[test]
fn small_ranks() {
    for field in [Field::Rationals, Field::prime(7).unwrap()] {
        assert_eq!(rank(&dense(field, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])), 3);
        assert_eq!(rank(&dense(field, &[vec![0, 0], vec![0, 0]])), 0);
        assert_eq!(rank(&dense(field, &[vec![1, 2, 3], vec![2, 4, 6]])), 1);
        assert_eq!(quotient_dimension(4, &SparseMatrix::new(field, 4)).unwrap(), 4);
    }
}

#[test]
fn greedy_extension_examples() {
    let f = Field::Rationals;
    let e = |c: usize, v: i64| vec![(c, f.from_i64(v))];
    let empty = SparseMatrix::new(f, 2);
    assert_eq!(independent_extension(&empty, &[e(0, 1), e(0, 2), e(1, 1)]).unwrap(), vec![0, 2]);
    let base = dense(f, &[vec![1, 0]]);
    assert!(independent_extension(&base, &[e(0, 1)]).unwrap().is_empty());
}
