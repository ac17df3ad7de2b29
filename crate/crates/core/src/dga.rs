//! Differential graded algebras presented as free algebras with a
//! differential given on generators.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, DegreeBasis, Element, FreeGca, Homogeneity, Monomial};
use crate::linalg::{Echelon, RationalMatrix, Subspace, Vector};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DgaError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid presentation: {0}")]
    Invalid(ValidationReport),
    #[error("expected {expected} differential images, found {found}")]
    DifferentialCount { expected: usize, found: usize },
    #[error("element is not closed")]
    NotClosed,
    #[error("class belongs to a different presentation")]
    ForeignClass,
}

/// One reason a presentation fails validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ValidationIssue {
    ForeignImage {
        generator: String,
    },
    NotHomogeneous {
        generator: String,
    },
    WrongDegree {
        generator: String,
        expected: usize,
        found: usize,
    },
    SquareNonzero {
        generator: String,
        dd: String,
    },
}

impl ValidationIssue {
    pub fn generator(&self) -> &str {
        match self {
            ValidationIssue::ForeignImage { generator }
            | ValidationIssue::NotHomogeneous { generator }
            | ValidationIssue::WrongDegree { generator, .. }
            | ValidationIssue::SquareNonzero { generator, .. } => generator,
        }
    }
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::ForeignImage { generator } => {
                write!(f, "d({generator}) is not an element of this algebra")
            }
            ValidationIssue::NotHomogeneous { generator } => {
                write!(f, "d({generator}) is not homogeneous")
            }
            ValidationIssue::WrongDegree {
                generator,
                expected,
                found,
            } => write!(f, "d({generator}) has degree {found}, expected {expected}"),
            ValidationIssue::SquareNonzero { generator, dd } => {
                write!(f, "d(d({generator})) = {dd} is not zero")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub issues: Vec<ValidationIssue>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.issues.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

/// The differential in one degree, `d_k: A^k → A^{k+1}`, with its echelon
/// form for repeated primitive searches.
#[derive(Debug)]
pub struct DegreeDifferential {
    pub source: Arc<DegreeBasis>,
    pub target: Arc<DegreeBasis>,
    pub matrix: RationalMatrix,
    pub echelon: Echelon,
}

/// Cohomology in one degree. Class representatives are the cocycle basis
/// reduced modulo the coboundary echelon basis; they span a complement of the
/// coboundaries inside the cocycles.
#[derive(Debug, Clone)]
pub struct CohomologySlice {
    pub degree: usize,
    pub basis: Arc<DegreeBasis>,
    pub cocycles: Subspace,
    pub coboundaries: Subspace,
    classes: Subspace,
    pub representatives: Vec<Element>,
}

impl CohomologySlice {
    pub fn betti(&self) -> usize {
        self.classes.dim()
    }

    /// Coordinates of the class of a cocycle (given in monomial coordinates)
    /// in the representative basis; `None` if the vector is not a cocycle.
    pub fn class_coordinates(&self, v: &[Rational]) -> Option<Vector> {
        if !self.cocycles.contains(v).ok()? {
            return None;
        }
        let reduced = self.coboundaries.reduce(v).ok()?;
        let coords = self.classes.coordinates_of(&reduced).ok()?;
        debug_assert!(coords.is_some(), "reduced cocycle outside the class span");
        coords
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: usize,
    pub representative: Element,
    pub coordinates: Vector,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Zero::is_zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum PoincareReport {
    Nondegenerate,
    Degenerate { degree: usize },
    NotApplicable { top_betti: usize },
}

impl PoincareReport {
    pub fn is_nondegenerate(&self) -> bool {
        matches!(self, PoincareReport::Nondegenerate)
    }
}

#[derive(Debug)]
pub struct Dga {
    name: String,
    algebra: Arc<FreeGca>,
    diff: Vec<Element>,
    differentials: RwLock<HashMap<usize, Arc<DegreeDifferential>>>,
    slices: RwLock<HashMap<usize, Arc<CohomologySlice>>>,
}

impl Clone for Dga {
    fn clone(&self) -> Self {
        Dga::new_unchecked(
            self.name.clone(),
            Arc::clone(&self.algebra),
            self.diff.clone(),
        )
        .expect("cloned presentation has matching differential count")
    }
}

impl Dga {
    /// Builds and validates a presentation. `diff[i]` is the image of
    /// generator `i`.
    pub fn new(
        name: impl Into<String>,
        algebra: Arc<FreeGca>,
        diff: Vec<Element>,
    ) -> Result<Self, DgaError> {
        let dga = Self::new_unchecked(name, algebra, diff)?;
        let report = dga.validate();
        if report.valid {
            Ok(dga)
        } else {
            Err(DgaError::Invalid(report))
        }
    }

    /// Builds a presentation without checking degree or `d² = 0`; use
    /// [`Dga::validate`] to inspect it.
    pub fn new_unchecked(
        name: impl Into<String>,
        algebra: Arc<FreeGca>,
        diff: Vec<Element>,
    ) -> Result<Self, DgaError> {
        if diff.len() != algebra.num_generators() {
            return Err(DgaError::DifferentialCount {
                expected: algebra.num_generators(),
                found: diff.len(),
            });
        }
        Ok(Dga {
            name: name.into(),
            algebra,
            diff,
            differentials: RwLock::new(HashMap::new()),
            slices: RwLock::new(HashMap::new()),
        })
    }

    /// The presentation with zero differential.
    pub fn free(name: impl Into<String>, algebra: Arc<FreeGca>) -> Self {
        let diff = vec![algebra.zero(); algebra.num_generators()];
        Self::new_unchecked(name, algebra, diff).expect("counts match")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(&self, name: impl Into<String>) -> Dga {
        Dga::new_unchecked(name, Arc::clone(&self.algebra), self.diff.clone())
            .expect("counts match")
    }

    pub fn algebra(&self) -> &Arc<FreeGca> {
        &self.algebra
    }

    /// Image of generator `id` under `d`.
    pub fn diff_of(&self, id: usize) -> &Element {
        &self.diff[id]
    }

    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        for (g, image) in self.algebra.generators().iter().zip(&self.diff) {
            if !self.algebra.owns(image) {
                issues.push(ValidationIssue::ForeignImage {
                    generator: g.name.clone(),
                });
                continue;
            }
            match self.algebra.homogeneity(image) {
                Homogeneity::Zero => {}
                Homogeneity::Mixed => {
                    issues.push(ValidationIssue::NotHomogeneous {
                        generator: g.name.clone(),
                    });
                    continue;
                }
                Homogeneity::Degree(d) if d != g.degree + 1 => {
                    issues.push(ValidationIssue::WrongDegree {
                        generator: g.name.clone(),
                        expected: g.degree + 1,
                        found: d,
                    });
                    continue;
                }
                Homogeneity::Degree(_) => {}
            }
            let dd = self.apply_d(image);
            if !dd.is_zero() {
                issues.push(ValidationIssue::SquareNonzero {
                    generator: g.name.clone(),
                    dd: self.algebra.format_element(&dd),
                });
            }
        }
        ValidationReport {
            valid: issues.is_empty(),
            issues,
        }
    }

    /// `d` extended to the whole algebra by the Leibniz rule.
    pub fn differential(&self, e: &Element) -> Result<Element, DgaError> {
        if !self.algebra.owns(e) {
            return Err(AlgebraError::ForeignElement.into());
        }
        Ok(self.apply_d(e))
    }

    pub(crate) fn apply_d(&self, e: &Element) -> Element {
        let mut out = self.algebra.zero();
        for (m, c) in e.terms() {
            let dm = self.d_monomial(m);
            out = &out + &dm.scale(c);
        }
        out
    }

    fn d_monomial(&self, m: &Monomial) -> Element {
        let alg = &self.algebra;
        let factors = m.factors();
        let mut out = alg.zero();
        let mut prefix = alg.one();
        let mut prefix_degree = 0usize;
        for (j, &(g, e)) in factors.iter().enumerate() {
            let gen = alg.gen(g);
            let dg = &self.diff[g];
            if !dg.is_zero() {
                // d(g^e) = e·g^{e-1}·dg; odd generators only occur with e = 1
                let d_factor = alg
                    .mul(&alg.power(&gen, e - 1), dg)
                    .scale(&Rational::from_integer(e.into()));
                let suffix = Monomial::from_sorted(factors[j + 1..].to_vec());
                let suffix = alg.monomial_element(suffix, Rational::one());
                let mut term = alg.mul(&alg.mul(&prefix, &d_factor), &suffix);
                if prefix_degree % 2 == 1 {
                    term = -&term;
                }
                out = &out + &term;
            }
            prefix = alg.mul(&prefix, &alg.power(&gen, e));
            prefix_degree += alg.generators()[g].degree * e as usize;
        }
        out
    }

    pub fn degree_differential(&self, k: usize) -> Arc<DegreeDifferential> {
        if let Some(d) = self.differentials.read().expect("cache poisoned").get(&k) {
            return Arc::clone(d);
        }
        let source = self.algebra.degree_basis(k);
        let target = self.algebra.degree_basis(k + 1);
        let mut matrix = RationalMatrix::zeros(target.len(), source.len());
        for (j, m) in source.monomials().iter().enumerate() {
            let dm = self.d_monomial(m);
            for (tm, c) in dm.terms() {
                let i = target.position(tm).expect("d raises degree by one");
                matrix.set(i, j, c.clone());
            }
        }
        let echelon = matrix.echelon();
        let built = Arc::new(DegreeDifferential {
            source,
            target,
            matrix,
            echelon,
        });
        let mut cache = self.differentials.write().expect("cache poisoned");
        Arc::clone(cache.entry(k).or_insert(built))
    }

    pub fn cohomology(&self, k: usize) -> Arc<CohomologySlice> {
        if let Some(s) = self.slices.read().expect("cache poisoned").get(&k) {
            return Arc::clone(s);
        }
        let dk = self.degree_differential(k);
        let basis = Arc::clone(&dk.source);
        let cocycles = dk.echelon.kernel();
        let coboundaries = if k == 0 {
            Subspace::zero(basis.len())
        } else {
            self.degree_differential(k - 1).matrix.image()
        };
        let classes = cocycles
            .complement_in(&coboundaries)
            .expect("coboundaries are cocycles when d² = 0");
        let representatives = classes
            .basis()
            .iter()
            .map(|v| self.algebra.reconstruct(&basis, v).expect("basis length"))
            .collect();
        let slice = Arc::new(CohomologySlice {
            degree: k,
            basis,
            cocycles,
            coboundaries,
            classes,
            representatives,
        });
        let mut cache = self.slices.write().expect("cache poisoned");
        Arc::clone(cache.entry(k).or_insert(slice))
    }

    pub fn betti(&self, k: usize) -> usize {
        self.cohomology(k).betti()
    }

    pub fn betti_vector(&self, max_degree: usize) -> Vec<usize> {
        (0..=max_degree).map(|k| self.betti(k)).collect()
    }

    fn homogeneous_degree(&self, e: &Element) -> Result<Option<usize>, DgaError> {
        if !self.algebra.owns(e) {
            return Err(AlgebraError::ForeignElement.into());
        }
        match self.algebra.homogeneity(e) {
            Homogeneity::Zero => Ok(None),
            Homogeneity::Degree(d) => Ok(Some(d)),
            Homogeneity::Mixed => Err(AlgebraError::NotHomogeneous.into()),
        }
    }

    pub fn is_closed(&self, e: &Element) -> Result<bool, DgaError> {
        Ok(self.differential(e)?.is_zero())
    }

    /// Some `x` with `dx = e`, if `e` is exact. `e` must be homogeneous of
    /// degree `degree` (or zero).
    pub fn primitive(&self, e: &Element, degree: usize) -> Result<Option<Element>, DgaError> {
        if let Some(d) = self.homogeneous_degree(e)? {
            if d != degree {
                return Err(AlgebraError::DegreeMismatch {
                    expected: degree,
                    found: d,
                }
                .into());
            }
        }
        if degree == 0 {
            return Ok(if e.is_zero() {
                Some(self.algebra.zero())
            } else {
                None
            });
        }
        let d = self.degree_differential(degree - 1);
        let b = self.algebra.coordinates(e, &d.target)?;
        let x = d.echelon.solve(&b).expect("lengths match");
        Ok(x.map(|x| {
            self.algebra
                .reconstruct(&d.source, &x)
                .expect("lengths match")
        }))
    }

    pub fn is_exact(&self, e: &Element, degree: usize) -> Result<bool, DgaError> {
        Ok(self.primitive(e, degree)?.is_some())
    }

    /// The class of a closed homogeneous element of the given degree.
    pub fn class_of(&self, e: &Element, degree: usize) -> Result<CohomologyClass, DgaError> {
        if let Some(d) = self.homogeneous_degree(e)? {
            if d != degree {
                return Err(AlgebraError::DegreeMismatch {
                    expected: degree,
                    found: d,
                }
                .into());
            }
        }
        let slice = self.cohomology(degree);
        let v = self.algebra.coordinates(e, &slice.basis)?;
        let coordinates = slice.class_coordinates(&v).ok_or(DgaError::NotClosed)?;
        Ok(CohomologyClass {
            degree,
            representative: e.clone(),
            coordinates,
        })
    }

    /// The `index`-th basis class of `H^degree`.
    pub fn basis_class(&self, degree: usize, index: usize) -> CohomologyClass {
        let slice = self.cohomology(degree);
        let mut coordinates = vec![Rational::zero(); slice.betti()];
        coordinates[index] = Rational::one();
        CohomologyClass {
            degree,
            representative: slice.representatives[index].clone(),
            coordinates,
        }
    }

    pub fn zero_class(&self, degree: usize) -> CohomologyClass {
        CohomologyClass {
            degree,
            representative: self.algebra.zero(),
            coordinates: vec![Rational::zero(); self.betti(degree)],
        }
    }

    pub fn owns_class(&self, c: &CohomologyClass) -> bool {
        self.algebra.owns(&c.representative)
    }

    pub fn cup(
        &self,
        a: &CohomologyClass,
        b: &CohomologyClass,
    ) -> Result<CohomologyClass, DgaError> {
        if !self.owns_class(a) || !self.owns_class(b) {
            return Err(DgaError::ForeignClass);
        }
        let product = self.algebra.mul(&a.representative, &b.representative);
        self.class_of(&product, a.degree + b.degree)
    }

    /// Checks that `H^k × H^{n-k} → H^n ≅ ℚ` is a perfect pairing for every k.
    pub fn poincare_check(&self, n: usize) -> PoincareReport {
        let top = self.betti(n);
        if top != 1 {
            return PoincareReport::NotApplicable { top_betti: top };
        }
        for k in 0..=n {
            let (low, high) = (self.betti(k), self.betti(n - k));
            if low != high {
                return PoincareReport::Degenerate { degree: k };
            }
            if low == 0 {
                continue;
            }
            let mut rows = Vec::with_capacity(low);
            for i in 0..low {
                let a = self.basis_class(k, i);
                let row = (0..high)
                    .map(|j| {
                        let b = self.basis_class(n - k, j);
                        self.cup(&a, &b)
                            .expect("products of cocycles are cocycles")
                            .coordinates[0]
                            .clone()
                    })
                    .collect();
                rows.push(row);
            }
            let pairing = RationalMatrix::from_rows(&rows, high).expect("square pairing");
            if pairing.rank() != low {
                return PoincareReport::Degenerate { degree: k };
            }
        }
        PoincareReport::Nondegenerate
    }

    /// True when no generator has a differential with a linear part.
    pub fn is_minimal(&self) -> bool {
        self.diff
            .iter()
            .all(|e| e.terms().all(|(m, _)| m.word_length() >= 2))
    }

    /// Tensor product; generator names that collide are qualified with the
    /// presentation names (`N.alpha`, `T2.delta1`).
    pub fn tensor(&self, other: &Dga) -> Dga {
        let left_label = label_of(&self.name);
        let mut right_label = label_of(&other.name);
        if right_label == left_label {
            right_label.push_str("_2");
        }
        let left_names: Vec<&str> = self
            .algebra
            .generators()
            .iter()
            .map(|g| g.name.as_str())
            .collect();
        let right_names: Vec<&str> = other
            .algebra
            .generators()
            .iter()
            .map(|g| g.name.as_str())
            .collect();
        let mut gens: Vec<(String, i64)> = Vec::new();
        for g in self.algebra.generators() {
            let name = if right_names.contains(&g.name.as_str()) {
                format!("{left_label}.{}", g.name)
            } else {
                g.name.clone()
            };
            gens.push((name, g.degree as i64));
        }
        for g in other.algebra.generators() {
            let name = if left_names.contains(&g.name.as_str()) {
                format!("{right_label}.{}", g.name)
            } else {
                g.name.clone()
            };
            gens.push((name, g.degree as i64));
        }
        let algebra = Arc::new(FreeGca::new(&gens).expect("qualified names are distinct"));
        let offset = self.algebra.num_generators();
        let mut diff: Vec<Element> = self.diff.iter().map(|e| e.rehomed(algebra.id())).collect();
        diff.extend(
            other
                .diff
                .iter()
                .map(|e| e.map_monomials(algebra.id(), |m| m.shifted(offset))),
        );
        let name = format!("{}x{}", left_label, label_of(&other.name));
        Dga::new_unchecked(name, algebra, diff).expect("counts match")
    }
}

fn label_of(name: &str) -> String {
    let cleaned: String = name
        .chars()
        .filter(|c| c.is_alphanumeric() || *c == '_')
        .collect();
    if cleaned.is_empty()
        || !cleaned
            .chars()
            .next()
            .is_some_and(|c| c.is_alphabetic() || c == '_')
    {
        format!("A{cleaned}")
    } else {
        cleaned
    }
}
