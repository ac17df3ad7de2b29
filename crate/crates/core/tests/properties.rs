mod common;

use std::sync::Arc;

use cdga::algebra::{FreeGca, Homogeneity};
use cdga::io::{parse_expression, parse_rational};
use cdga::linalg::{RationalMatrix, Subspace};
use cdga::Rational;
use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sign(a: usize, b: usize) -> Rational {
    if (a * b).is_multiple_of(2) {
        q(1)
    } else {
        q(-1)
    }
}

fn random_algebra(rng: &mut ChaCha8Rng) -> Arc<FreeGca> {
    let n = rng.gen_range(1..=4);
    let names: Vec<(String, i64)> = (0..n)
        .map(|i| (format!("x{i}"), rng.gen_range(1..=3)))
        .collect();
    Arc::new(FreeGca::new(&names).unwrap())
}

/// Number of monomials of total degree `k` by enumerating exponent vectors.
fn brute_count(degrees: &[usize], k: usize) -> usize {
    fn go(degrees: &[usize], k: usize) -> usize {
        let Some((&d, rest)) = degrees.split_first() else {
            return usize::from(k == 0);
        };
        let max = if d % 2 == 1 { 1 } else { k / d };
        (0..=max.min(k / d)).map(|e| go(rest, k - e * d)).sum()
    }
    go(degrees, k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graded_commutativity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra(&mut rng);
        let (p, r) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
        let a = random_homogeneous(&mut rng, &alg, p);
        let b = random_homogeneous(&mut rng, &alg, r);
        let ab = alg.multiply(&a, &b).unwrap();
        let ba = alg.multiply(&b, &a).unwrap();
        prop_assert_eq!(ab, ba.scale(&sign(p, r)));
    }

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra(&mut rng);
        let a = random_element(&mut rng, &alg, 3);
        let b = random_element(&mut rng, &alg, 3);
        let c = random_element(&mut rng, &alg, 3);
        let m = |x: &_, y: &_| alg.multiply(x, y).unwrap();
        prop_assert_eq!(m(&m(&a, &b), &c), m(&a, &m(&b, &c)));
        prop_assert_eq!(m(&a, &(&b + &c)), &m(&a, &b) + &m(&a, &c));
        prop_assert_eq!(m(&(&a + &b), &c), &m(&a, &c) + &m(&b, &c));
        prop_assert_eq!(m(&alg.one(), &a), a.clone());
        prop_assert_eq!(m(&a, &alg.one()), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn leibniz_and_square_zero(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let count = rng.gen_range(1..=5);
        let degrees = random_degrees(&mut rng, count, 3);
        let p = random_presentation(&mut rng, &degrees);
        let alg = p.algebra().clone();
        let deg = rng.gen_range(0..=3);
        let a = random_homogeneous(&mut rng, &alg, deg);
        let b = random_element(&mut rng, &alg, 3);
        let d = |x: &_| p.differential(x).unwrap();
        let lhs = d(&alg.multiply(&a, &b).unwrap());
        let right = alg.multiply(&a, &d(&b)).unwrap();
        let rhs = &alg.multiply(&d(&a), &b).unwrap() + &right.scale(&sign(deg, 1));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(d(&d(&b)).is_zero());
        prop_assert!(p.validate().valid);
    }

    #[test]
    fn basis_sizes_and_coordinates(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra(&mut rng);
        let degrees: Vec<usize> = alg.generators().iter().map(|g| g.degree).collect();
        for k in 0..=6 {
            prop_assert_eq!(alg.degree_basis(k).len(), brute_count(&degrees, k));
        }
        let k = rng.gen_range(0..=5);
        let e = random_homogeneous(&mut rng, &alg, k);
        let basis = alg.degree_basis(k);
        let v = alg.coordinates(&e, &basis).unwrap();
        prop_assert_eq!(alg.reconstruct(&basis, &v).unwrap(), e.clone());
        match alg.homogeneity(&e) {
            Homogeneity::Zero => prop_assert!(e.is_zero()),
            Homogeneity::Degree(d) => prop_assert_eq!(d, k),
            Homogeneity::Mixed => prop_assert!(false),
        }
    }

    #[test]
    fn print_parse_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = random_algebra(&mut rng);
        let e = random_element(&mut rng, &alg, 4);
        let printed = alg.format_element(&e);
        let parsed = parse_expression(&printed, &alg).unwrap();
        prop_assert_eq!(&parsed, &e);
        prop_assert_eq!(alg.format_element(&parsed), printed);
    }

    #[test]
    fn parser_never_panics(text in "[a-z0-9_ +*/^().\\-\n]{0,40}") {
        let alg = FreeGca::new(&[("a", 1), ("b", 2), ("x0", 2)]).unwrap();
        if let Err(e) = parse_expression(&text, &alg) {
            prop_assert!(e.line >= 1 && e.column >= 1);
        }
        let _ = parse_rational(&text);
    }

    #[test]
    fn arbitrary_unicode_never_panics(text in "\\PC{0,30}") {
        let alg = FreeGca::new(&[("a", 1)]).unwrap();
        let _ = parse_expression(&text, &alg);
        let _ = cdga::io::load_str(&text);
    }

    #[test]
    fn rank_nullity(entries in proptest::collection::vec(-3i64..=3, 96)) {
        let rows: Vec<Vec<Rational>> = entries.chunks(12).map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let a = RationalMatrix::from_rows(&rows, 12).unwrap();
        let kernel = a.kernel();
        prop_assert_eq!(a.rank() + kernel.dim(), 12);
        prop_assert_eq!(a.rank(), oracle_rank(rows.clone(), 12));
        prop_assert_eq!(a.image().dim(), a.rank());
        for v in kernel.basis() {
            prop_assert!(a.apply(v).unwrap().iter().all(Zero::is_zero));
        }
        let x0: Vec<Rational> = (0..12).map(|i| q(i as i64 % 5 - 2)).collect();
        let b = a.apply(&x0).unwrap();
        let x = a.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(a.apply(&x).unwrap(), b);
    }

    #[test]
    fn subspace_dimension_formula(
        u in proptest::collection::vec(-2i64..=2, 24),
        w in proptest::collection::vec(-2i64..=2, 18),
    ) {
        let n = 6;
        let to_rows = |xs: &[i64]| -> Vec<Vec<Rational>> {
            xs.chunks(n).map(|r| r.iter().map(|&x| q(x)).collect()).collect()
        };
        let (ur, wr) = (to_rows(&u), to_rows(&w));
        let us = Subspace::span(n, ur.clone()).unwrap();
        let ws = Subspace::span(n, wr.clone()).unwrap();
        let sum = us.sum(&ws).unwrap();
        let meet = us.intersection(&ws).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), us.dim() + ws.dim());
        // U ∩ W = (U⊥ + W⊥)⊥
        let mut perp = oracle_nullspace(ur, n);
        perp.extend(oracle_nullspace(wr, n));
        prop_assert_eq!(meet.dim(), n - oracle_rank(perp, n));
        for v in meet.basis() {
            prop_assert!(us.contains(v).unwrap() && ws.contains(v).unwrap());
        }
    }
}
