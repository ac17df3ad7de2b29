use super::FormalityError;
use crate::algebra::Element;
use crate::dga::{CohomologyClass, Dga, DgaError};
use crate::linalg::Subspace;

/// Outcome of a triple Massey product computation.
#[derive(Debug, Clone)]
pub struct MasseyResult {
    pub defined: bool,
    /// p₁ + p₂ + p₃ − 1
    pub degree: usize,
    pub representative: Option<CohomologyClass>,
    /// Subspace of class coordinates in `H^degree`.
    pub indeterminacy: Subspace,
    pub nonzero: bool,
    /// The primitives ξ (dξ = α₁α₂) and η (dη = α₂α₃) used.
    pub primitives: Option<(Element, Element)>,
}

/// Position of a basis class: `(degree, index)`.
pub type ClassIndex = (usize, usize);

#[derive(Debug, Clone)]
pub struct MasseyHit {
    pub classes: [ClassIndex; 3],
    pub result: MasseyResult,
}

/// `a₁ ∪ H^{p₂+p₃−1} + H^{p₁+p₂−1} ∪ a₃` inside `H^{p₁+p₂+p₃−1}`.
pub fn indeterminacy(
    p: &Dga,
    a1: &CohomologyClass,
    a3: &CohomologyClass,
    p2: usize,
) -> Result<Subspace, FormalityError> {
    let total = a1.degree + p2 + a3.degree - 1;
    let ambient = p.betti(total);
    let mut vectors = Vec::new();
    let right = p2 + a3.degree - 1;
    for j in 0..p.betti(right) {
        vectors.push(p.cup(a1, &p.basis_class(right, j))?.coordinates);
    }
    let left = a1.degree + p2 - 1;
    for j in 0..p.betti(left) {
        vectors.push(p.cup(&p.basis_class(left, j), a3)?.coordinates);
    }
    Ok(Subspace::span(ambient, vectors).expect("cup coordinates live in the target degree"))
}

/// `α₁·η + (−1)^{p₁+1} ξ·α₃` for explicit choices of cocycles and
/// primitives. Errors if `dξ ≠ α₁α₂` or `dη ≠ α₂α₃`.
pub fn massey_representative(
    p: &Dga,
    alphas: [&Element; 3],
    p1: usize,
    xi: &Element,
    eta: &Element,
) -> Result<Element, FormalityError> {
    let alg = p.algebra();
    let [a1, a2, a3] = alphas;
    let a12 = alg.multiply(a1, a2).map_err(DgaError::from)?;
    let a23 = alg.multiply(a2, a3).map_err(DgaError::from)?;
    if p.differential(xi)? != a12 || p.differential(eta)? != a23 {
        return Err(FormalityError::BadPrimitive);
    }
    let left = alg.multiply(a1, eta).map_err(DgaError::from)?;
    let right = alg.multiply(xi, a3).map_err(DgaError::from)?;
    Ok(if p1 % 2 == 1 {
        &left + &right
    } else {
        &left - &right
    })
}

pub fn triple_massey(
    p: &Dga,
    a1: &CohomologyClass,
    a2: &CohomologyClass,
    a3: &CohomologyClass,
) -> Result<MasseyResult, FormalityError> {
    for c in [a1, a2, a3] {
        if !p.owns_class(c) {
            return Err(DgaError::ForeignClass.into());
        }
        if c.degree == 0 {
            return Err(FormalityError::DegreeZeroClass);
        }
    }
    let degree = a1.degree + a2.degree + a3.degree - 1;
    let indeterminacy = indeterminacy(p, a1, a3, a2.degree)?;
    let undefined = MasseyResult {
        defined: false,
        degree,
        representative: None,
        indeterminacy: indeterminacy.clone(),
        nonzero: false,
        primitives: None,
    };
    if !p.cup(a1, a2)?.is_zero() || !p.cup(a2, a3)?.is_zero() {
        return Ok(undefined);
    }
    let alg = p.algebra();
    let (r1, r2, r3) = (&a1.representative, &a2.representative, &a3.representative);
    let xi = p
        .primitive(
            &alg.multiply(r1, r2).map_err(DgaError::from)?,
            a1.degree + a2.degree,
        )?
        .expect("a zero cup product has a primitive");
    let eta = p
        .primitive(
            &alg.multiply(r2, r3).map_err(DgaError::from)?,
            a2.degree + a3.degree,
        )?
        .expect("a zero cup product has a primitive");
    let rep = massey_representative(p, [r1, r2, r3], a1.degree, &xi, &eta)?;
    let class = p.class_of(&rep, degree)?;
    let nonzero = !indeterminacy
        .contains(&class.coordinates)
        .expect("class coordinates match the indeterminacy ambient");
    Ok(MasseyResult {
        defined: true,
        degree,
        representative: Some(class),
        indeterminacy,
        nonzero,
        primitives: Some((xi, eta)),
    })
}

/// All nonvanishing products `⟨a, b, c⟩` of basis classes whose value lies
/// in degree at most `max_degree`, in lexicographic order of the triples.
pub fn massey_scan(p: &Dga, max_degree: usize) -> Result<Vec<MasseyHit>, FormalityError> {
    scan(p, max_degree, false)
}

/// The first hit of [`massey_scan`], without computing the rest.
pub fn massey_search(p: &Dga, max_degree: usize) -> Result<Option<MasseyHit>, FormalityError> {
    Ok(scan(p, max_degree, true)?.into_iter().next())
}

fn scan(p: &Dga, max_degree: usize, first_only: bool) -> Result<Vec<MasseyHit>, FormalityError> {
    let mut hits = Vec::new();
    // p₁ + p₂ + p₃ − 1 ≤ max_degree with every pᵢ ≥ 1
    let top = max_degree.saturating_sub(1);
    let classes: Vec<Vec<CohomologyClass>> = (0..=top)
        .map(|k| {
            if k == 0 {
                Vec::new()
            } else {
                (0..p.betti(k)).map(|i| p.basis_class(k, i)).collect()
            }
        })
        .collect();
    for p1 in 1..=top {
        for p2 in 1..=top {
            for p3 in 1..=top {
                if p1 + p2 + p3 - 1 > max_degree || p.betti(p1 + p2 + p3 - 1) == 0 {
                    continue;
                }
                for (i1, c1) in classes[p1].iter().enumerate() {
                    for (i2, c2) in classes[p2].iter().enumerate() {
                        if !p.cup(c1, c2)?.is_zero() {
                            continue;
                        }
                        for (i3, c3) in classes[p3].iter().enumerate() {
                            let result = triple_massey(p, c1, c2, c3)?;
                            if result.nonzero {
                                hits.push(MasseyHit {
                                    classes: [(p1, i1), (p2, i2), (p3, i3)],
                                    result,
                                });
                                if first_only {
                                    return Ok(hits);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(hits)
}

/// A Massey product recomputed from other choices of defining system.
#[derive(Debug, Clone)]
pub struct Rechoice {
    pub representative: CohomologyClass,
    pub nonzero: bool,
    /// The new class differs from the original by an element of the
    /// indeterminacy.
    pub within_indeterminacy: bool,
}

/// Recomputes a defined product after changing each representative by a
/// coboundary and each primitive by a cocycle, with coefficients drawn
/// from `coeff`. Returns `None` for an undefined product.
pub fn rechoose(
    p: &Dga,
    classes: [&CohomologyClass; 3],
    result: &MasseyResult,
    mut coeff: impl FnMut() -> i64,
) -> Result<Option<Rechoice>, FormalityError> {
    let Some(original) = &result.representative else {
        return Ok(None);
    };
    let alg = p.algebra();
    let mut random_in = |degree: usize, cocycles_only: bool| -> Element {
        let slice = p.cohomology(degree);
        let vectors: Vec<Vec<crate::Rational>> = if cocycles_only {
            slice.cocycles.basis().to_vec()
        } else {
            (0..slice.basis.len())
                .map(|i| crate::linalg::unit_vector(slice.basis.len(), i))
                .collect()
        };
        let mut e = alg.zero();
        for v in vectors {
            let c = crate::Rational::from_integer(coeff().into());
            let term = alg
                .reconstruct(&slice.basis, &v)
                .expect("basis lengths agree");
            e = &e + &term.scale(&c);
        }
        e
    };
    let mut reps = Vec::with_capacity(3);
    for c in classes {
        let b = random_in(c.degree - 1, false);
        reps.push(&c.representative + &p.apply_d(&b));
    }
    let (p1, p2, p3) = (classes[0].degree, classes[1].degree, classes[2].degree);
    let a12 = alg.mul(&reps[0], &reps[1]);
    let a23 = alg.mul(&reps[1], &reps[2]);
    let xi = p
        .primitive(&a12, p1 + p2)?
        .ok_or(FormalityError::BadPrimitive)?;
    let eta = p
        .primitive(&a23, p2 + p3)?
        .ok_or(FormalityError::BadPrimitive)?;
    let xi = &xi + &random_in(p1 + p2 - 1, true);
    let eta = &eta + &random_in(p2 + p3 - 1, true);
    let rep = massey_representative(p, [&reps[0], &reps[1], &reps[2]], p1, &xi, &eta)?;
    let class = p.class_of(&rep, result.degree)?;
    let diff: Vec<_> = class
        .coordinates
        .iter()
        .zip(&original.coordinates)
        .map(|(a, b)| a - b)
        .collect();
    let within = result.indeterminacy.contains(&diff).expect("same ambient");
    let nonzero = !result
        .indeterminacy
        .contains(&class.coordinates)
        .expect("same ambient");
    Ok(Some(Rechoice {
        representative: class,
        nonzero,
        within_indeterminacy: within,
    }))
}
