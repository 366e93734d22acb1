//! Property and invariant tests: algebraic laws, engine/oracle agreement,
//! and series axioms.

mod support;

use got_core::algebra::{Generator, OperatorExpr, OrderParam, OrderedBlock, SymbolPoly};
use got_core::engine::{
    canonical_eq, canonical_poly, left_multiply_power, merge_blocks, order_expression,
    reorder_block, right_multiply_power,
};
use got_core::oracle::equal_on_basis;
use got_core::rational::{rat, ratio, Rational};
use got_core::series::TruncatedSeries;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use support::{
    naive_normal_order, order_grid, random_block, random_block_product, random_expr, random_word,
    word_to_expr,
};

fn poly_strategy() -> impl Strategy<Value = SymbolPoly> {
    prop::collection::vec((0u32..5, 0u32..5, -9i64..10, 1i64..5), 0..6).prop_map(|terms| {
        let mut p = SymbolPoly::zero();
        for (n, m, num, den) in terms {
            p.add_term(n, m, Rational::new(num.into(), den.into()));
        }
        p
    })
}

proptest! {
    #[test]
    fn symbol_poly_is_a_commutative_ring(
        p in poly_strategy(),
        q in poly_strategy(),
        r in poly_strategy(),
    ) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.add(&q).mul(&r), p.mul(&r).add(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.sub(&p), SymbolPoly::zero());
        prop_assert_eq!(p.mul(&SymbolPoly::one()), p);
    }

    #[test]
    fn rational_addition_matches_cross_multiplication(
        a in -1000i64..1000, b in 1i64..1000,
        c in -1000i64..1000, d in 1i64..1000,
    ) {
        let x = Rational::new(a.into(), b.into());
        let y = Rational::new(c.into(), d.into());
        let sum = &x + &y;
        // independent big-integer cross multiplication:
        // (a/b + c/d) * (b*d) must equal a*d + c*b exactly
        let lhs = sum.numer() * BigInt::from(b) * BigInt::from(d);
        let rhs = (BigInt::from(a) * BigInt::from(d) + BigInt::from(c) * BigInt::from(b))
            * sum.denom();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn canonical_eq_is_an_equivalence_relation() {
    let mut rng = StdRng::seed_from_u64(11);
    let t = OrderParam::new(ratio(1, 2));
    let mut sample: Vec<OperatorExpr> = (0..6).map(|_| random_expr(&mut rng, 3)).collect();
    // seed equal-but-structurally-different pairs
    let dup: Vec<OperatorExpr> = sample
        .iter()
        .map(|e| e.add(&OperatorExpr::zero()).add(&e.scale(&rat(0))))
        .collect();
    sample.extend(dup);

    let n = sample.len();
    for i in 0..n {
        assert!(canonical_eq(&sample[i], &sample[i], &t), "reflexive {i}");
        for j in 0..n {
            let ij = canonical_eq(&sample[i], &sample[j], &t);
            let ji = canonical_eq(&sample[j], &sample[i], &t);
            assert_eq!(ij, ji, "symmetric {i},{j}");
            for k in 0..n {
                if ij && canonical_eq(&sample[j], &sample[k], &t) {
                    assert!(canonical_eq(&sample[i], &sample[k], &t), "transitive {i},{j},{k}");
                }
            }
        }
    }

    // equal-by-construction pairs really are identified
    for i in 0..6 {
        assert!(canonical_eq(&sample[i], &sample[i + 6], &t));
    }
}

#[test]
fn reorder_round_trip_over_extended_grid() {
    let mut orders = order_grid();
    orders.push(rat(2)); // outside the physical range on purpose
    let mut rng = StdRng::seed_from_u64(23);
    let mut blocks: Vec<OrderedBlock> = Vec::new();
    for n in 0..=6 {
        for m in 0..=6 {
            blocks.push(OrderedBlock::monomial(n, m, OrderParam::weyl()));
        }
    }
    for _ in 0..10 {
        blocks.push(random_block(&mut rng, 4, 6));
    }
    for b in &blocks {
        for t_val in &orders {
            let t = OrderParam::new(t_val.clone());
            let back = reorder_block(&reorder_block(b, &t), &b.order);
            assert_eq!(&back, b, "round trip through t={t_val}");
        }
    }
}

#[test]
fn reorder_composition_equals_direct_transform() {
    let mut orders = order_grid();
    orders.push(rat(2));
    for n in 0..=6u32 {
        for m in 0..=6u32 {
            for s_val in &orders {
                let b = OrderedBlock::monomial(n, m, OrderParam::new(s_val.clone()));
                for u_val in &orders {
                    let u = OrderParam::new(u_val.clone());
                    for t_val in &orders {
                        let t = OrderParam::new(t_val.clone());
                        let two_step = reorder_block(&reorder_block(&b, &u), &t);
                        let direct = reorder_block(&b, &t);
                        assert_eq!(two_step, direct, "s={s_val} u={u_val} t={t_val} n={n} m={m}");
                    }
                }
            }
        }
    }
}

#[test]
fn merge_fold_direction_is_irrelevant() {
    let mut rng = StdRng::seed_from_u64(37);
    for round in 0..60 {
        let t = support::random_order(&mut rng);
        let bs: Vec<OrderedBlock> = (0..3)
            .map(|_| {
                let b = random_block(&mut rng, 3, 4);
                OrderedBlock::new(b.poly, t.clone())
            })
            .collect();
        let left = merge_blocks(&merge_blocks(&bs[0], &bs[1], &t).unwrap(), &bs[2], &t).unwrap();
        let right = merge_blocks(&bs[0], &merge_blocks(&bs[1], &bs[2], &t).unwrap(), &t).unwrap();
        assert_eq!(left, right, "round {round}");
    }
}

#[test]
fn order_expression_agrees_with_oracle_on_random_products() {
    let mut rng = StdRng::seed_from_u64(41);
    for round in 0..100 {
        let e = random_block_product(&mut rng, 4, 3, 5);
        let t = support::random_order(&mut rng);
        let canon = order_expression(&e, &t);
        assert!(
            equal_on_basis(&e, &canon).expect("internally sized cutoff"),
            "round {round}: canonical form changed the operator"
        );
    }
}

#[test]
fn grading_is_conserved_on_monomial_products() {
    let mut rng = StdRng::seed_from_u64(43);
    for _ in 0..120 {
        let factors = rng.gen_range(1..=4usize);
        let mut excess: i64 = 0;
        let mut e = OperatorExpr::one();
        for _ in 0..factors {
            let n = rng.gen_range(0..5u32);
            let m = rng.gen_range(0..5u32);
            excess += n as i64 - m as i64;
            e = e.mul(&OperatorExpr::block(OrderedBlock::monomial(
                n,
                m,
                support::random_order(&mut rng),
            )));
        }
        let t = support::random_order(&mut rng);
        let poly = canonical_poly(&e, &t);
        for (n, m, _) in poly.terms() {
            assert_eq!(n as i64 - m as i64, excess);
        }
    }
}

#[test]
fn wick_consistency_with_naive_rewriter() {
    let mut rng = StdRng::seed_from_u64(47);
    let t = OrderParam::normal();
    for round in 0..60 {
        let word = random_word(&mut rng, 8);
        let expected = naive_normal_order(&word);
        let got = canonical_poly(&word_to_expr(&word), &t);
        assert_eq!(got, expected, "round {round}: word {word:?}");
    }
}

#[test]
fn derivative_lemmas_match_generic_ordering() {
    let mut rng = StdRng::seed_from_u64(53);
    for s_val in order_grid() {
        let s = OrderParam::new(s_val.clone());
        for _ in 0..4 {
            let poly = random_block(&mut rng, 3, 4).poly;
            let b = OrderedBlock::new(poly, s.clone());
            for n in 0..=3u32 {
                for g in [Generator::A, Generator::AD] {
                    let lemma = left_multiply_power(g, n, &b);
                    let generic = OperatorExpr::generator(g)
                        .pow(n)
                        .mul(&OperatorExpr::block(b.clone()));
                    assert!(
                        canonical_eq(&OperatorExpr::block(lemma), &generic, &s),
                        "left g={g:?} n={n} s={s_val}"
                    );

                    let lemma = right_multiply_power(&b, g, n);
                    let generic = OperatorExpr::block(b.clone())
                        .mul(&OperatorExpr::generator(g).pow(n));
                    assert!(
                        canonical_eq(&OperatorExpr::block(lemma), &generic, &s),
                        "right g={g:?} n={n} s={s_val}"
                    );
                }
            }
        }
    }
}

fn random_series(rng: &mut StdRng, t: &OrderParam, trunc: usize) -> TruncatedSeries {
    let coeffs = (0..=trunc).map(|_| random_expr(rng, 2)).collect();
    TruncatedSeries::new(t.clone(), trunc, coeffs)
}

#[test]
fn series_ring_axioms_up_to_truncation() {
    let mut rng = StdRng::seed_from_u64(59);
    let t = OrderParam::normal();
    for _ in 0..12 {
        let f = random_series(&mut rng, &t, 4);
        let g = random_series(&mut rng, &t, 4);
        let h = random_series(&mut rng, &t, 4);
        assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        assert_eq!(
            f.add(&g).unwrap().mul(&h).unwrap(),
            f.mul(&h).unwrap().add(&g.mul(&h).unwrap()).unwrap()
        );
        assert_eq!(
            f.mul(&g).unwrap().mul(&h).unwrap(),
            f.mul(&g.mul(&h).unwrap()).unwrap()
        );
        assert_eq!(
            f.mul(&TruncatedSeries::one(t.clone(), 4)).unwrap(),
            f
        );
    }
}

#[test]
fn series_exp_is_multiplicative_for_commuting_coefficients() {
    let t = OrderParam::new(ratio(-1, 2));
    // scalar coefficients
    let f = TruncatedSeries::from_scalars(t.clone(), 6, vec![rat(0), ratio(2, 3), rat(-1)]);
    let g = TruncatedSeries::from_scalars(t.clone(), 6, vec![rat(0), ratio(-1, 4), rat(0), rat(2)]);
    let lhs = f.add(&g).unwrap().exp().unwrap();
    let rhs = f.exp().unwrap().mul(&g.exp().unwrap()).unwrap();
    assert_eq!(lhs, rhs);

    // powers of the number operator commute with each other
    let number = OperatorExpr::block(OrderedBlock::monomial(1, 1, t.clone()));
    let number_sq = OperatorExpr::block(OrderedBlock::monomial(2, 2, t.clone()));
    let mut f = TruncatedSeries::zero(t.clone(), 5);
    f.add_coeff(1, &number);
    let mut g = TruncatedSeries::zero(t.clone(), 5);
    g.add_coeff(1, &number.scale(&ratio(-1, 2)));
    g.add_coeff(2, &number_sq.scale(&ratio(1, 3)));
    let lhs = f.add(&g).unwrap().exp().unwrap();
    let rhs = f.exp().unwrap().mul(&g.exp().unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn series_substitution_is_associative_for_scalars() {
    let t = OrderParam::normal();
    let trunc = 6;
    let f = TruncatedSeries::from_scalars(
        t.clone(),
        trunc,
        vec![ratio(1, 2), rat(1), rat(-2), ratio(3, 5), rat(1)],
    );
    let g = TruncatedSeries::from_scalars(t.clone(), trunc, vec![rat(0), rat(2), ratio(-1, 3)]);
    let h = TruncatedSeries::from_scalars(t.clone(), trunc, vec![rat(0), ratio(1, 2), rat(1), rat(-1)]);
    let lhs = f.substitute(&g).unwrap().substitute(&h).unwrap();
    let rhs = f.substitute(&g.substitute(&h).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn oracle_distinguishes_unequal_operators() {
    // {ad a}_0 and the bare word ad a differ by 1/2 and must be told apart.
    let weyl = OperatorExpr::block(OrderedBlock::monomial(1, 1, OrderParam::weyl()));
    let word = word_to_expr(&[Generator::AD, Generator::A]);
    assert!(!equal_on_basis(&weyl, &word).unwrap());
    let shifted = word.add(&OperatorExpr::scalar(ratio(1, 2)));
    assert!(equal_on_basis(&weyl, &shifted).unwrap());
}

#[test]
fn zero_coefficient_terms_never_survive_engine_output() {
    let mut rng = StdRng::seed_from_u64(61);
    for _ in 0..40 {
        let e = random_expr(&mut rng, 3);
        let t = support::random_order(&mut rng);
        let poly = canonical_poly(&e, &t);
        for (_, _, c) in poly.terms() {
            assert!(!c.is_zero());
        }
    }
}
