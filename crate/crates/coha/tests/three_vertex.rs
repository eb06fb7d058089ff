//! Cross-checks on a three-vertex symmetric quiver (a triangle with one
//! arrow each way on every edge). None of the shipped fixtures has more
//! than two vertices, so this exercises the general-arity paths:
//! shuffles over three alphabets, HN types over three-entry dimension
//! vectors, the sign twist over three generators, and the counting
//! recursion against the finite-field oracle.

use coha::counting::{brute_force_sst_count, naive_coeff, SstCounter};
use coha::dt::{coha_series, dt_extract, efimov_check, graded_dims_series};
use coha::engine::{build_sign_twist, coha_mul, parity, twisted_mul, CohaElement};
use coha::poly::graded_basis;
use coha::quiver::{hn_types, DimVector, Quiver, Stability};
use coha::rational::{q_int, RatFunc};
use coha::series::dimvectors_up_to;

fn triangle() -> Quiver {
    Quiver::new(
        vec!["a", "b", "c"],
        vec![
            ("a", "b"),
            ("b", "a"),
            ("b", "c"),
            ("c", "b"),
            ("a", "c"),
            ("c", "a"),
        ],
    )
    .unwrap()
}

fn dv(entries: &[u32]) -> DimVector {
    DimVector::new(entries.to_vec())
}

#[test]
fn euler_form_is_symmetric() {
    let q = triangle();
    assert!(q.is_symmetric());
    for d in dimvectors_up_to(3, 3) {
        for e in dimvectors_up_to(3, 3) {
            assert_eq!(q.euler_form(&d, &e).unwrap(), q.euler_form(&e, &d).unwrap());
        }
    }
}

#[test]
fn shuffle_laws_on_three_alphabets() {
    let q = triangle();
    let twist = build_sign_twist(&q).unwrap();
    let f = CohaElement::power_generator(q.clone(), 0, 1);
    let g = CohaElement::power_generator(q.clone(), 1, 0);
    let h = CohaElement::power_generator(q.clone(), 2, 2);
    // associativity across three distinct vertices
    let lhs = coha_mul(&coha_mul(&f, &g).unwrap(), &h).unwrap();
    let rhs = coha_mul(&f, &coha_mul(&g, &h).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    // sign rule and twisted super-commutativity
    let chi = q.euler_form(f.dim(), g.dim()).unwrap();
    let fg = coha_mul(&f, &g).unwrap();
    let gf = coha_mul(&g, &f).unwrap();
    let expect = if chi.rem_euclid(2) == 1 {
        gf.scale(&-q_int(1))
    } else {
        gf
    };
    assert_eq!(fg, expect);
    let t_fg = twisted_mul(&f, &g, &twist).unwrap();
    let t_gf = twisted_mul(&g, &f, &twist).unwrap();
    let odd = parity(&q, f.dim()).unwrap() && parity(&q, g.dim()).unwrap();
    let expect = if odd { t_gf.scale(&-q_int(1)) } else { t_gf };
    assert_eq!(t_fg, expect);
}

#[test]
fn factorization_against_the_naive_series() {
    let q = triangle();
    let theta = Stability::from_ints(&[1, 0, -1]);
    let mut counter = SstCounter::new(q.clone(), theta.clone()).unwrap();
    for d in dimvectors_up_to(3, 3) {
        if d.is_zero() {
            continue;
        }
        let mut total = RatFunc::zero();
        for t in hn_types(&theta, &d).unwrap() {
            let mut prod = RatFunc::one();
            for part in &t.parts {
                prod = prod.mul(&counter.sst_coeff(part).unwrap());
            }
            total = total.add(&prod);
        }
        assert_eq!(total, naive_coeff(&q, &d).unwrap(), "at {:?}", d.entries());
    }
}

#[test]
fn counts_match_the_oracle() {
    let q = triangle();
    let theta = Stability::from_ints(&[1, 0, -1]);
    let mut counter = SstCounter::new(q.clone(), theta.clone()).unwrap();
    // every weight whose representation space stays inside the
    // enumeration guard
    for d in [dv(&[1, 0, 0]), dv(&[1, 1, 0]), dv(&[0, 1, 1]), dv(&[1, 1, 1])] {
        let symbolic = counter.sst_point_count(&d).unwrap();
        assert!(symbolic.is_even_in_s());
        let expected = symbolic.eval_at_q(&q_int(2)).unwrap();
        let actual = brute_force_sst_count(&q, &theta, &d, 2).unwrap();
        assert_eq!(expected, q_int(actual as i64), "at {:?}", d.entries());
    }
}

#[test]
fn series_derivations_agree() {
    let q = triangle();
    let a = coha_series(&q, 2, 10).unwrap();
    let b = graded_dims_series(&q, 2, 10).unwrap();
    assert!(a.eq_through_orders(&b));
}

#[test]
fn dt_exponents_are_nonnegative_integers() {
    let q = triangle();
    let p = coha_series(&q, 2, 24).unwrap();
    let table = dt_extract(&p, 2, 6).unwrap();
    assert!(!table.entries().is_empty());
    assert!(efimov_check(&table).is_empty());
}

#[test]
fn kernel_quotient_is_consistent_at_unit_weights() {
    // at a weight supported on one vertex there is a single HN type,
    // so the kernel must vanish and the quotient is the full component
    let q = triangle();
    let theta = Stability::from_ints(&[1, 0, -1]);
    let dims = coha::engine::hn_kernel_dims(&q, &theta, &dv(&[2, 0, 0]), 3).unwrap();
    assert!(dims.values().all(|&v| v == 0));
    let _ = graded_basis(&dv(&[2, 0, 0]), 2);
}
