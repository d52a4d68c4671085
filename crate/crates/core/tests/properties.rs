mod common;

use std::cmp::Ordering;

use common::{random_monomial, random_polynomial};
use operad_forge_core::diff::{tau, DiffPolynomial};
use operad_forge_core::expansion::ConsequenceTower;
use operad_forge_core::koszul::dual_presentation;
use operad_forge_core::linalg::{kernel_basis, mul_vec, rank, rref, SparseMatrix};
use operad_forge_core::normal_form::{nf_bicom_s, nf_nov_s, DerNovDual, NovS};
use operad_forge_core::presentation::{Presentation, BUILTINS};
use operad_forge_core::term::{
    catalan, monomial_order, multilinear_basis, multilinear_count, parse_polynomial, Polynomial, Signature,
};
use operad_forge_core::Rational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sig(ops: usize) -> Signature {
    if ops == 1 {
        Signature::single()
    } else {
        Signature::prec_succ()
    }
}

fn poly(seed: u64, ops: usize, gens: u32, degree: usize) -> Polynomial {
    random_polynomial(&mut ChaCha8Rng::seed_from_u64(seed), ops, gens, degree)
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

#[test]
fn multilinear_counts() {
    for ops in 1..=2usize {
        for n in 1..=6usize {
            let expected = catalan(n - 1) * factorial(n as u64) * (ops as u64).pow(n as u32 - 1);
            assert_eq!(multilinear_count(ops, n), expected);
            assert_eq!(multilinear_basis(&sig(ops), n).len() as u64, expected, "ops={ops} n={n}");
        }
    }
}

#[test]
fn monomial_order_is_strict_total() {
    for ops in 1..=2usize {
        for n in 1..=4 {
            let mut ms = multilinear_basis(&sig(ops), n);
            ms.sort_by(monomial_order);
            for i in 0..ms.len() {
                assert_eq!(monomial_order(&ms[i], &ms[i]), Ordering::Equal);
                for j in i + 1..ms.len() {
                    assert_eq!(monomial_order(&ms[i], &ms[j]), Ordering::Less);
                    assert_eq!(monomial_order(&ms[j], &ms[i]), Ordering::Greater);
                }
            }
        }
    }
}

#[test]
fn presentations_round_trip_through_text() {
    for name in BUILTINS {
        let p = Presentation::builtin(name).unwrap();
        let back = Presentation::from_text(&p.to_text(), "x").unwrap();
        assert_eq!(back.name(), p.name());
        assert_eq!(back.relations(), p.relations());
        if p.is_quadratic() {
            let d = dual_presentation(&p).unwrap();
            assert_eq!(Presentation::from_text(&d.to_text(), "x").unwrap().relations(), d.relations());
        }
    }
}

fn small_matrix() -> impl Strategy<Value = SparseMatrix> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r).prop_map(move |rows| {
            let dense: Vec<Vec<Rational>> =
                rows.iter().map(|row| row.iter().map(|&x| Rational::from_integer(x)).collect()).collect();
            SparseMatrix::from_dense(c, &dense)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_parse_round_trip(seed in any::<u64>(), ops in 1usize..=2, degree in 1usize..=5) {
        let s = sig(ops);
        let q = poly(seed, ops, 4, degree);
        let text = q.to_text(&s);
        let back = parse_polynomial(&text, &s).unwrap();
        prop_assert_eq!(&back, &q);
        prop_assert_eq!(back.to_text(&s), text);
    }

    #[test]
    fn rref_invariants(m in small_matrix()) {
        let r = rref(&m);
        prop_assert!(r.rank <= m.nrows().min(m.ncols()));
        prop_assert_eq!(rref(&r.reduced).reduced, r.reduced.clone());
        let kernel = kernel_basis(&m);
        prop_assert_eq!(kernel.len() + rank(&m), m.ncols());
        for k in &kernel {
            prop_assert!(mul_vec(&m, k).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn normal_forms_are_idempotent_and_linear(seed in any::<u64>(), degree in 1usize..=6) {
        let a = poly(seed, 1, 3, degree);
        let b = poly(seed ^ 0x9e37, 1, 3, degree);
        for nf in [nf_nov_s as fn(&Polynomial) -> Polynomial, nf_bicom_s] {
            let na = nf(&a);
            prop_assert_eq!(nf(&na), na.clone());
            prop_assert_eq!(nf(&(&a + &b)), &na + &nf(&b));
        }
    }

    #[test]
    fn split_is_a_projection(seed in any::<u64>(), degree in 1usize..=5) {
        let d = DerNovDual::new();
        let q = poly(seed, 2, 3, degree);
        let (l, g) = d.split(&q);
        prop_assert_eq!(d.split(&l), (l.clone(), Polynomial::zero()));
        prop_assert_eq!(d.split(&g), (Polynomial::zero(), g.clone()));
    }

    #[test]
    fn normal_form_differs_by_a_consequence(seed in any::<u64>(), degree in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perm = {
            use rand::seq::SliceRandom;
            let mut p: Vec<u32> = (1..=degree as u32).collect();
            p.shuffle(&mut rng);
            p
        };
        // Multilinear: relabel the leaves of a random shape by a permutation.
        let m = random_monomial(&mut rng, 1, 1, degree);
        let mut next = perm.into_iter();
        let m = m.relabel(|_| next.next().unwrap());
        let q = Polynomial::from_monomial(m);
        let nov = Presentation::builtin("nov_s").unwrap();
        let nf = NovS::new().normal_form(&q, 0);
        prop_assert!(ConsequenceTower::new(&nov).level(degree).contains(&(&q - &nf)).unwrap());
    }

    #[test]
    fn derivations_obey_leibniz(seed in any::<u64>(), da in 1usize..=3, db in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p: DiffPolynomial = tau(&random_monomial(&mut rng, 2, 3, da));
        let q: DiffPolynomial = tau(&random_monomial(&mut rng, 2, 3, db));
        let pq = p.mul(&q);
        prop_assert_eq!(pq.deriv_d(), &p.deriv_d().mul(&q) + &p.mul(&q.deriv_d()));
        prop_assert_eq!(pq.deriv_pd(), &p.deriv_pd().mul(&q) + &p.mul(&q.deriv_pd()));
        prop_assert_eq!(p.deriv_d().deriv_pd(), p.deriv_pd().deriv_d());
    }
}
