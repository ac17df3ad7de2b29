#![allow(dead_code)]

use std::sync::Arc;

use cdga::algebra::{Element, FreeGca};
use cdga::linalg::{unit_vector, Subspace};
use cdga::{Dga, Rational};
use num_traits::{One, Zero};
use rand::Rng;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Dense Gaussian elimination kept separate from the library's echelon
/// code; returns the row-reduced nonzero rows and pivot columns.
pub fn oracle_rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn oracle_rank(rows: Vec<Vec<Rational>>, ncols: usize) -> usize {
    oracle_rref(rows, ncols).1.len()
}

/// Basis of `{x : rows · x = 0}`.
pub fn oracle_nullspace(rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = oracle_rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// A differential on an exterior algebra of degree-1 generators, given as
/// `d(e_g) = Σ c · e_i e_j` with `i < j`.
pub type ExteriorDiff = Vec<Vec<(Rational, usize, usize)>>;

/// Sign and sorted product of a wedge of distinct indices, or `None` if an
/// index repeats.
fn sort_wedge(word: &[usize]) -> Option<(i64, u32)> {
    let mut mask = 0u32;
    for &i in word {
        if mask & (1 << i) != 0 {
            return None;
        }
        mask |= 1 << i;
    }
    let mut inversions = 0;
    for a in 0..word.len() {
        for b in a + 1..word.len() {
            if word[a] > word[b] {
                inversions += 1;
            }
        }
    }
    Some((if inversions % 2 == 0 { 1 } else { -1 }, mask))
}

/// Betti numbers of `(⋀(e_0..e_{n-1}), d)` by brute force over subsets.
pub fn exterior_betti(n: usize, diff: &ExteriorDiff) -> Vec<usize> {
    let subsets = |k: usize| -> Vec<u32> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .collect()
    };
    // rank of d: Λ^k → Λ^{k+1}
    let rank_d = |k: usize| -> usize {
        let src = subsets(k);
        let dst = subsets(k + 1);
        if src.is_empty() || dst.is_empty() {
            return 0;
        }
        let mut cols = Vec::new();
        for &m in &src {
            let idx: Vec<usize> = (0..n).filter(|i| m & (1 << i) != 0).collect();
            let mut col = vec![Rational::zero(); dst.len()];
            for (pos, &g) in idx.iter().enumerate() {
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                for (c, i, j) in &diff[g] {
                    let mut word = idx.clone();
                    word.splice(pos..=pos, [*i, *j]);
                    if let Some((s, mask)) = sort_wedge(&word) {
                        let row = dst.iter().position(|&x| x == mask).unwrap();
                        col[row] = &col[row] + &(q(sign * s) * c);
                    }
                }
            }
            cols.push(col);
        }
        oracle_rank(cols, dst.len())
    };
    let binom = |k: usize| subsets(k).len();
    (0..=n)
        .map(|k| {
            let into = if k == 0 { 0 } else { rank_d(k - 1) };
            binom(k) - rank_d(k) - into
        })
        .collect()
}

pub fn heisenberg_diff() -> ExteriorDiff {
    vec![vec![], vec![], vec![(q(-1), 0, 1)]]
}

pub fn e_diff() -> ExteriorDiff {
    vec![vec![], vec![], vec![(q(-1), 0, 1)], vec![(q(1), 1, 2)]]
}

pub fn with_torus(mut diff: ExteriorDiff, k: usize) -> ExteriorDiff {
    diff.extend((0..k).map(|_| Vec::new()));
    diff
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let num: i64 = rng.gen_range(-4..=4);
    let den: i64 = rng.gen_range(1..=3);
    Rational::new(num.into(), den.into())
}

/// Random homogeneous element of the given degree.
pub fn random_homogeneous(rng: &mut impl Rng, alg: &FreeGca, degree: usize) -> Element {
    let basis = alg.degree_basis(degree);
    let v: Vec<Rational> = (0..basis.len())
        .map(|_| {
            if rng.gen_bool(0.6) {
                small_rational(rng)
            } else {
                Rational::zero()
            }
        })
        .collect();
    alg.reconstruct(&basis, &v).unwrap()
}

pub fn random_element(rng: &mut impl Rng, alg: &FreeGca, max_degree: usize) -> Element {
    let mut e = alg.zero();
    for _ in 0..rng.gen_range(1..=2) {
        let d = rng.gen_range(0..=max_degree);
        e = &e + &random_homogeneous(rng, alg, d);
    }
    e
}

/// A valid presentation built generator by generator: the differential of
/// each new generator is a random cocycle in the algebra of the earlier
/// ones, which makes `d² = 0` hold by construction.
pub fn random_presentation(rng: &mut impl Rng, degrees: &[usize]) -> Dga {
    let names: Vec<(String, i64)> = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| (format!("g{i}"), d as i64))
        .collect();
    let alg = Arc::new(FreeGca::new(&names).unwrap());
    let mut diff = vec![alg.zero(); degrees.len()];
    for (i, &k) in degrees.iter().enumerate() {
        let current = Dga::new("partial", alg.clone(), diff.clone()).unwrap();
        let slice = current.cohomology(k + 1);
        let basis = &slice.basis;
        let earlier: Vec<Vec<Rational>> = basis
            .monomials()
            .iter()
            .enumerate()
            .filter(|(_, m)| m.factors().iter().all(|&(g, _)| g < i))
            .map(|(j, _)| unit_vector(basis.len(), j))
            .collect();
        let allowed = Subspace::span(basis.len(), earlier).unwrap();
        let cocycles = slice.cocycles.intersection(&allowed).unwrap();
        let mut v = vec![Rational::zero(); basis.len()];
        for b in cocycles.basis() {
            if rng.gen_bool(0.7) {
                let c = q(rng.gen_range(-2..=2));
                for (x, y) in v.iter_mut().zip(b) {
                    *x = &*x + &(&c * y);
                }
            }
        }
        diff[i] = alg.reconstruct(basis, &v).unwrap();
    }
    Dga::new("random", alg, diff).unwrap()
}

pub fn random_degrees(rng: &mut impl Rng, count: usize, max_degree: usize) -> Vec<usize> {
    (0..count).map(|_| rng.gen_range(1..=max_degree)).collect()
}

/// Reads the differential of a presentation whose generators all have
/// degree 1.
pub fn exterior_diff_of(p: &Dga) -> ExteriorDiff {
    let alg = p.algebra();
    (0..alg.num_generators())
        .map(|g| {
            p.diff_of(g)
                .terms()
                .map(|(m, c)| {
                    let f = m.factors();
                    assert_eq!(f.len(), 2);
                    (c.clone(), f[0].0, f[1].0)
                })
                .collect()
        })
        .collect()
}
