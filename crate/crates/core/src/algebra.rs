//! Free graded-commutative algebras over the rationals.
//!
//! An algebra is presented by named generators of positive degree. Even
//! generators are polynomial, odd generators are exterior. Monomials are kept
//! in a canonical form (factors sorted by generator id) and every product is
//! normalised with its Koszul sign while merging.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::Rational;

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

/// Identity of an algebra instance. Elements remember which algebra they
/// were built in so mixed-algebra arithmetic can be rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId(u64);

impl AlgebraId {
    fn fresh() -> Self {
        AlgebraId(NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("generator `{name}` has degree {degree}; degrees must be at least 1")]
    NonPositiveDegree { name: String, degree: i64 },
    #[error("`{0}` is not a valid generator name")]
    InvalidName(String),
    #[error("operands belong to different algebras")]
    ForeignElement,
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("element has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("coordinate vector has length {found}, basis has {expected} monomials")]
    LengthMismatch { expected: usize, found: usize },
    #[error("unknown generator id {0}")]
    UnknownGenerator(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub id: usize,
    pub name: String,
    pub degree: usize,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// Generator names must be usable as identifiers in the expression language.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '.' || c == '\'')
}

/// A product of generator powers, factors sorted strictly ascending by id.
/// The empty monomial is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    factors: Vec<(usize, u32)>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial {
            factors: Vec::new(),
        }
    }

    pub fn generator(id: usize) -> Self {
        Monomial {
            factors: vec![(id, 1)],
        }
    }

    pub fn factors(&self) -> &[(usize, u32)] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of generator factors counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub(crate) fn from_sorted(factors: Vec<(usize, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(factors.iter().all(|&(_, e)| e >= 1));
        Monomial { factors }
    }

    pub(crate) fn shifted(&self, offset: usize) -> Self {
        Monomial {
            factors: self.factors.iter().map(|&(g, e)| (g + offset, e)).collect(),
        }
    }
}

/// Exact rational linear combination of monomials. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    algebra: AlgebraId,
    terms: BTreeMap<Monomial, Rational>,
}

/// Result of asking an element for its degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(usize),
    Mixed,
}

impl Element {
    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element {
                algebra: self.algebra,
                terms: BTreeMap::new(),
            };
        }
        Element {
            algebra: self.algebra,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &Element, c: &Rational) {
        assert_eq!(
            self.algebra, other.algebra,
            "elements from different algebras"
        );
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    /// Re-tag an element for an algebra whose generator list extends the
    /// original one (ids are preserved).
    pub(crate) fn rehomed(&self, algebra: AlgebraId) -> Element {
        Element {
            algebra,
            terms: self.terms.clone(),
        }
    }

    pub(crate) fn map_monomials(
        &self,
        algebra: AlgebraId,
        f: impl Fn(&Monomial) -> Monomial,
    ) -> Element {
        let mut out = Element {
            algebra,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }
}

impl Add for &Element {
    type Output = Element;

    /// Panics if the operands come from different algebras.
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        self.scale(&-Rational::one())
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

/// All monomials of one degree, in lexicographic order on factor lists.
#[derive(Debug, Clone)]
pub struct DegreeBasis {
    degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// A free graded-commutative algebra on named generators.
#[derive(Debug)]
pub struct FreeGca {
    id: AlgebraId,
    generators: Vec<Generator>,
    by_name: HashMap<String, usize>,
    bases: RwLock<HashMap<usize, Arc<DegreeBasis>>>,
}

impl FreeGca {
    pub fn new<S: AsRef<str>>(generators: &[(S, i64)]) -> Result<Self, AlgebraError> {
        let mut gens = Vec::with_capacity(generators.len());
        let mut by_name = HashMap::new();
        for (id, (name, degree)) in generators.iter().enumerate() {
            let name = name.as_ref();
            if !is_valid_name(name) {
                return Err(AlgebraError::InvalidName(name.to_string()));
            }
            if *degree < 1 {
                return Err(AlgebraError::NonPositiveDegree {
                    name: name.to_string(),
                    degree: *degree,
                });
            }
            if by_name.insert(name.to_string(), id).is_some() {
                return Err(AlgebraError::DuplicateName(name.to_string()));
            }
            gens.push(Generator {
                id,
                name: name.to_string(),
                degree: *degree as usize,
            });
        }
        Ok(FreeGca {
            id: AlgebraId::fresh(),
            generators: gens,
            by_name,
            bases: RwLock::new(HashMap::new()),
        })
    }

    /// A new algebra whose generators are those of `self` followed by `extra`.
    pub fn extended<S: AsRef<str>>(&self, extra: &[(S, i64)]) -> Result<Self, AlgebraError> {
        let mut all: Vec<(String, i64)> = self
            .generators
            .iter()
            .map(|g| (g.name.clone(), g.degree as i64))
            .collect();
        all.extend(extra.iter().map(|(n, d)| (n.as_ref().to_string(), *d)));
        FreeGca::new(&all)
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, id: usize) -> Option<&Generator> {
        self.generators.get(id)
    }

    pub fn generator_by_name(&self, name: &str) -> Option<&Generator> {
        self.by_name.get(name).map(|&i| &self.generators[i])
    }

    pub fn zero(&self) -> Element {
        Element {
            algebra: self.id,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> Element {
        self.constant(Rational::one())
    }

    pub fn constant(&self, c: Rational) -> Element {
        self.monomial_element(Monomial::unit(), c)
    }

    pub fn monomial_element(&self, m: Monomial, c: Rational) -> Element {
        let mut e = self.zero();
        e.add_term(m, c);
        e
    }

    /// The element consisting of a single generator.
    pub fn gen(&self, id: usize) -> Element {
        assert!(id < self.generators.len(), "generator id out of range");
        self.monomial_element(Monomial::generator(id), Rational::one())
    }

    /// Looks a generator up by name.
    pub fn var(&self, name: &str) -> Option<Element> {
        self.by_name.get(name).map(|&i| self.gen(i))
    }

    pub fn owns(&self, e: &Element) -> bool {
        e.algebra == self.id
    }

    fn check_owned(&self, e: &Element) -> Result<(), AlgebraError> {
        if self.owns(e) {
            Ok(())
        } else {
            Err(AlgebraError::ForeignElement)
        }
    }

    pub fn monomial_degree(&self, m: &Monomial) -> usize {
        m.factors
            .iter()
            .map(|&(g, e)| self.generators[g].degree * e as usize)
            .sum()
    }

    pub fn homogeneity(&self, e: &Element) -> Homogeneity {
        let mut degrees = e.terms.keys().map(|m| self.monomial_degree(m));
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degrees.all(|x| x == d) {
                    Homogeneity::Degree(d)
                } else {
                    Homogeneity::Mixed
                }
            }
        }
    }

    /// Product of two monomials with its Koszul sign, or `None` when an odd
    /// generator would appear twice.
    pub fn multiply_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let mut out = Vec::with_capacity(a.factors.len() + b.factors.len());
        let mut negative = false;
        // odd factors of `a` not yet passed by the merge
        let mut odd_remaining_in_a = a
            .factors
            .iter()
            .filter(|&&(g, _)| self.generators[g].is_odd())
            .count();
        let (mut i, mut j) = (0, 0);
        while i < a.factors.len() || j < b.factors.len() {
            let take_a = match (a.factors.get(i), b.factors.get(j)) {
                (Some(x), Some(y)) => x.0 <= y.0,
                (Some(_), None) => true,
                _ => false,
            };
            if take_a {
                let (g, e) = a.factors[i];
                if j < b.factors.len() && b.factors[j].0 == g {
                    if self.generators[g].is_odd() {
                        return None;
                    }
                    out.push((g, e + b.factors[j].1));
                    j += 1;
                } else {
                    out.push((g, e));
                }
                if self.generators[g].is_odd() {
                    odd_remaining_in_a -= 1;
                }
                i += 1;
            } else {
                let (g, e) = b.factors[j];
                if self.generators[g].is_odd() && odd_remaining_in_a % 2 == 1 {
                    negative = !negative;
                }
                out.push((g, e));
                j += 1;
            }
        }
        Some((Monomial::from_sorted(out), negative))
    }

    pub(crate) fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = self.zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some((m, negative)) = self.multiply_monomials(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.check_owned(a)?;
        self.check_owned(b)?;
        Ok(self.mul(a, b))
    }

    pub fn product<'a>(
        &self,
        factors: impl IntoIterator<Item = &'a Element>,
    ) -> Result<Element, AlgebraError> {
        let mut acc = self.one();
        for f in factors {
            self.check_owned(f)?;
            acc = self.mul(&acc, f);
        }
        Ok(acc)
    }

    pub(crate) fn power(&self, base: &Element, exp: u32) -> Element {
        let mut acc = self.one();
        for _ in 0..exp {
            acc = self.mul(&acc, base);
        }
        acc
    }

    pub fn degree_basis(&self, degree: usize) -> Arc<DegreeBasis> {
        if let Some(b) = self
            .bases
            .read()
            .expect("basis cache poisoned")
            .get(&degree)
        {
            return Arc::clone(b);
        }
        let basis = Arc::new(self.enumerate_basis(degree));
        let mut cache = self.bases.write().expect("basis cache poisoned");
        Arc::clone(cache.entry(degree).or_insert(basis))
    }

    fn enumerate_basis(&self, degree: usize) -> DegreeBasis {
        let mut monomials = Vec::new();
        let mut current = Vec::new();
        self.enumerate_from(0, degree, &mut current, &mut monomials);
        monomials.sort();
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        DegreeBasis {
            degree,
            monomials,
            index,
        }
    }

    fn enumerate_from(
        &self,
        next: usize,
        remaining: usize,
        current: &mut Vec<(usize, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(Monomial::from_sorted(current.clone()));
            return;
        }
        for g in next..self.generators.len() {
            let deg = self.generators[g].degree;
            let max_exp = if self.generators[g].is_odd() {
                1
            } else {
                remaining / deg
            };
            for e in 1..=max_exp {
                if deg * e > remaining {
                    break;
                }
                current.push((g, e as u32));
                self.enumerate_from(g + 1, remaining - deg * e, current, out);
                current.pop();
            }
        }
    }

    pub fn coordinates(
        &self,
        e: &Element,
        basis: &DegreeBasis,
    ) -> Result<Vec<Rational>, AlgebraError> {
        self.check_owned(e)?;
        match self.homogeneity(e) {
            Homogeneity::Zero => {}
            Homogeneity::Mixed => return Err(AlgebraError::NotHomogeneous),
            Homogeneity::Degree(d) if d != basis.degree => {
                return Err(AlgebraError::DegreeMismatch {
                    expected: basis.degree,
                    found: d,
                })
            }
            Homogeneity::Degree(_) => {}
        }
        let mut v = vec![Rational::zero(); basis.len()];
        for (m, c) in &e.terms {
            let pos = basis
                .position(m)
                .expect("homogeneous monomial missing from its degree basis");
            v[pos] = c.clone();
        }
        Ok(v)
    }

    pub fn reconstruct(
        &self,
        basis: &DegreeBasis,
        v: &[Rational],
    ) -> Result<Element, AlgebraError> {
        if v.len() != basis.len() {
            return Err(AlgebraError::LengthMismatch {
                expected: basis.len(),
                found: v.len(),
            });
        }
        let mut e = self.zero();
        for (m, c) in basis.monomials.iter().zip(v) {
            e.add_term(m.clone(), c.clone());
        }
        Ok(e)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_unit() {
            return "1".to_string();
        }
        m.factors
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    self.generators[g].name.clone()
                } else {
                    format!("{}^{}", self.generators[g].name, e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Canonical text form, re-readable by the expression parser.
    pub fn format_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in e.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_unit() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&self.format_monomial(m));
            } else {
                out.push_str(&format!("{}*{}", abs, self.format_monomial(m)));
            }
        }
        out
    }

    pub fn display<'a>(&'a self, e: &'a Element) -> impl fmt::Display + 'a {
        struct Shown<'a>(&'a FreeGca, &'a Element);
        impl fmt::Display for Shown<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format_element(self.1))
            }
        }
        Shown(self, e)
    }
}

impl Clone for FreeGca {
    fn clone(&self) -> Self {
        FreeGca {
            id: self.id,
            generators: self.generators.clone(),
            by_name: self.by_name.clone(),
            bases: RwLock::new(HashMap::new()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn heisenberg_algebra() -> FreeGca {
        FreeGca::new(&[("alpha", 1), ("beta", 1), ("gamma", 1)]).unwrap()
    }

    #[test]
    fn exterior_degree_two_basis() {
        let a = heisenberg_algebra();
        let b = a.degree_basis(2);
        let shown: Vec<_> = b.monomials().iter().map(|m| a.format_monomial(m)).collect();
        assert_eq!(shown, ["alpha*beta", "alpha*gamma", "beta*gamma"]);
    }

    #[test]
    fn polynomial_basis_is_one_dimensional() {
        let a = FreeGca::new(&[("x", 2)]).unwrap();
        for k in 0..6 {
            assert_eq!(a.degree_basis(2 * k).len(), 1);
            assert_eq!(a.degree_basis(2 * k + 1).len(), 0);
        }
    }

    #[test]
    fn four_odd_generators_degree_three() {
        let a = FreeGca::new(&[("alpha", 1), ("beta", 1), ("gamma", 1), ("eta", 1)]).unwrap();
        assert_eq!(a.degree_basis(3).len(), 4);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            FreeGca::new(&[("a", 1), ("a", 2)]).unwrap_err(),
            AlgebraError::DuplicateName("a".into())
        );
        assert!(matches!(
            FreeGca::new(&[("a", 0)]).unwrap_err(),
            AlgebraError::NonPositiveDegree { .. }
        ));
        assert!(matches!(
            FreeGca::new(&[("a", -2)]).unwrap_err(),
            AlgebraError::NonPositiveDegree { .. }
        ));
        assert!(matches!(
            FreeGca::new(&[("1a", 1)]).unwrap_err(),
            AlgebraError::InvalidName(_)
        ));
    }

    #[test]
    fn odd_generators_anticommute() {
        let a = heisenberg_algebra();
        let (al, be) = (a.gen(0), a.gen(1));
        let ab = a.multiply(&al, &be).unwrap();
        let ba = a.multiply(&be, &al).unwrap();
        assert_eq!(ba, -&ab);
        assert!(a.multiply(&al, &al).unwrap().is_zero());
    }

    #[test]
    fn beta_alpha_is_minus_alpha_beta() {
        let a = heisenberg_algebra();
        let ba = a.multiply(&a.gen(1), &a.gen(0)).unwrap();
        let expected = a.monomial_element(
            Monomial::from_sorted(vec![(0, 1), (1, 1)]),
            -Rational::one(),
        );
        assert_eq!(ba, expected);
    }

    #[test]
    fn mixed_algebras_are_rejected() {
        let a = heisenberg_algebra();
        let b = heisenberg_algebra();
        assert_eq!(
            a.multiply(&a.gen(0), &b.gen(1)).unwrap_err(),
            AlgebraError::ForeignElement
        );
    }

    #[test]
    fn coordinates_read_off() {
        let a = heisenberg_algebra();
        let basis = a.degree_basis(2);
        let ab = a.multiply(&a.gen(0), &a.gen(1)).unwrap();
        let bg = a.multiply(&a.gen(1), &a.gen(2)).unwrap();
        let e = &ab - &bg.scale(&q(1, 2));
        assert_eq!(
            a.coordinates(&e, &basis).unwrap(),
            vec![q(1, 1), q(0, 1), q(-1, 2)]
        );
        assert_eq!(a.coordinates(&a.zero(), &basis).unwrap(), vec![q(0, 1); 3]);
        assert!(matches!(
            a.coordinates(&a.gen(0), &basis),
            Err(AlgebraError::DegreeMismatch { .. })
        ));
        assert_eq!(
            a.coordinates(&(&a.gen(0) + &ab), &basis),
            Err(AlgebraError::NotHomogeneous)
        );
    }

    #[test]
    fn even_powers_and_mixed_signs() {
        let a = FreeGca::new(&[("x", 2), ("y", 3), ("u", 1)]).unwrap();
        let (x, y, u) = (a.gen(0), a.gen(1), a.gen(2));
        let xx = a.multiply(&x, &x).unwrap();
        assert_eq!(a.format_element(&xx), "x^2");
        // y and u are odd: u*y = -y*u
        let uy = a.multiply(&u, &y).unwrap();
        let yu = a.multiply(&y, &u).unwrap();
        assert_eq!(uy, -&yu);
        // x even commutes with everything
        assert_eq!(a.multiply(&u, &x).unwrap(), a.multiply(&x, &u).unwrap());
    }

    #[test]
    fn format_element_canonical() {
        let a = heisenberg_algebra();
        let e = &a.multiply(&a.gen(1), &a.gen(0)).unwrap() + &a.gen(2).scale(&q(3, 4));
        assert_eq!(a.format_element(&e), "-alpha*beta + 3/4*gamma");
        assert_eq!(a.format_element(&a.zero()), "0");
        assert_eq!(a.format_element(&a.constant(q(-2, 1))), "-2");
    }
}
