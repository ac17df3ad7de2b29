//! The s-formality test on a truncated minimal model.
//!
//! With `C^i` the closed generators and `N^i` their complement, every closed
//! element of the ideal generated by `N^{≤s}` inside `⋀V^{≤s}` must be exact
//! in the full model. Exactness in the full model is decided through `φ`:
//! since `φ` is a quasi-isomorphism, `z` is exact in `⋀V` iff `φ(z)` is exact
//! in the target.

use serde::Serialize;

use super::model::MinimalModel;
use super::FormalityError;
use crate::algebra::Element;
use crate::dga::Dga;
use crate::linalg::Subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SFormalityVerdict {
    CertifiedUpToCap,
    Failed,
}

/// A closed, non-exact element of the ideal `I_s`.
#[derive(Debug, Clone)]
pub struct Witness {
    pub degree: usize,
    pub element: Element,
}

#[derive(Debug, Clone)]
pub struct SFormalityReport {
    pub s: usize,
    pub cap: usize,
    pub verdict: SFormalityVerdict,
    pub witness: Option<Witness>,
}

impl SFormalityReport {
    pub fn certified(&self) -> bool {
        self.verdict == SFormalityVerdict::CertifiedUpToCap
    }
}

/// Checks the ideal condition in every degree `1..=cap`.
pub fn check_s_formality(
    model: &MinimalModel<'_>,
    s: usize,
    cap: usize,
) -> Result<SFormalityReport, FormalityError> {
    if s > model.up_to {
        return Err(FormalityError::ModelTooShort {
            built: model.up_to,
            requested: s,
        });
    }
    if cap < s + 1 {
        return Err(FormalityError::CapTooSmall { s, cap });
    }
    let alg = model.model.algebra();
    // ⋀V^{≤s}: generators are added in degree order, so this is a prefix
    let prefix = alg
        .generators()
        .iter()
        .take_while(|g| g.degree <= s)
        .count();
    let truncated = truncate(&model.model, prefix);
    let sub = truncated.algebra();
    let ideal_gens: Vec<(usize, Element)> = (1..=s)
        .flat_map(|i| {
            model
                .non_closed_elements(i)
                .into_iter()
                .map(move |e| (i, e))
        })
        .map(|(i, e)| (i, e.rehomed(sub.id())))
        .collect();

    for k in 1..=cap {
        if ideal_gens.is_empty() {
            break;
        }
        let basis = sub.degree_basis(k);
        let mut spanning = Vec::new();
        for (i, n) in &ideal_gens {
            if *i > k {
                continue;
            }
            for m in sub.degree_basis(k - i).monomials() {
                let me = sub.monomial_element(m.clone(), crate::Rational::from_integer(1.into()));
                let product = sub.mul(n, &me);
                spanning.push(sub.coordinates(&product, &basis).expect("degrees add"));
            }
        }
        let ideal = Subspace::span(basis.len(), spanning).expect("lengths agree");
        let cocycles = truncated.cohomology(k).cocycles.clone();
        let closed_in_ideal = ideal.intersection(&cocycles).expect("lengths agree");
        for v in closed_in_ideal.basis() {
            let z = sub.reconstruct(&basis, v).expect("lengths agree");
            let lifted = z.rehomed(alg.id());
            let image = model.apply(&lifted);
            if !model.target.is_exact(&image, k)? {
                return Ok(SFormalityReport {
                    s,
                    cap,
                    verdict: SFormalityVerdict::Failed,
                    witness: Some(Witness {
                        degree: k,
                        element: lifted,
                    }),
                });
            }
        }
    }
    Ok(SFormalityReport {
        s,
        cap,
        verdict: SFormalityVerdict::CertifiedUpToCap,
        witness: None,
    })
}

/// The sub-presentation on the first `count` generators. Valid only when
/// those generators are closed under `d`, which holds for degree prefixes of
/// a minimal model.
fn truncate(p: &Dga, count: usize) -> Dga {
    let alg = p.algebra();
    let names: Vec<(String, i64)> = alg.generators()[..count]
        .iter()
        .map(|g| (g.name.clone(), g.degree as i64))
        .collect();
    let sub =
        std::sync::Arc::new(crate::algebra::FreeGca::new(&names).expect("names already distinct"));
    let diffs = (0..count).map(|g| p.diff_of(g).rehomed(sub.id())).collect();
    Dga::new_unchecked(p.name(), sub, diffs).expect("counts match")
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::FreeGca;
    use crate::formality::build_minimal_model;

    fn heisenberg() -> Dga {
        let alg = Arc::new(FreeGca::new(&[("alpha", 1), ("beta", 1), ("gamma", 1)]).unwrap());
        let ab = alg.mul(&alg.gen(0), &alg.gen(1));
        let diff = vec![alg.zero(), alg.zero(), -&ab];
        Dga::new("N", alg, diff).unwrap()
    }

    #[test]
    fn heisenberg_fails_one_formality() {
        let n = heisenberg();
        let mm = build_minimal_model(&n, 1).unwrap();
        let report = check_s_formality(&mm, 1, 3).unwrap();
        assert_eq!(report.verdict, SFormalityVerdict::Failed);
        let w = report.witness.unwrap();
        assert_eq!(w.degree, 2);
        assert!(mm.model.is_closed(&w.element).unwrap());
    }

    #[test]
    fn zero_formality_is_automatic() {
        let n = heisenberg();
        let mm = build_minimal_model(&n, 0).unwrap();
        assert!(check_s_formality(&mm, 0, 3).unwrap().certified());
    }

    #[test]
    fn argument_errors() {
        let n = heisenberg();
        let mm = build_minimal_model(&n, 1).unwrap();
        assert_eq!(
            check_s_formality(&mm, 1, 1).unwrap_err(),
            FormalityError::CapTooSmall { s: 1, cap: 1 }
        );
        assert!(matches!(
            check_s_formality(&mm, 2, 4).unwrap_err(),
            FormalityError::ModelTooShort { .. }
        ));
    }

    #[test]
    fn even_sphere_product_certifies() {
        // S² × S⁶: s = 3 brings y (dy = x²) into N³, whose ideal has no
        // closed elements
        let alg = Arc::new(FreeGca::new(&[("x", 2), ("y", 3), ("z", 6), ("w", 11)]).unwrap());
        let xx = alg.mul(&alg.gen(0), &alg.gen(0));
        let zz = alg.mul(&alg.gen(2), &alg.gen(2));
        let p = Dga::new("S2xS6", alg.clone(), vec![alg.zero(), xx, alg.zero(), zz]).unwrap();
        let mm = build_minimal_model(&p, 3).unwrap();
        assert_eq!(mm.split_cn(3).unwrap().1.dim(), 1);
        assert!(check_s_formality(&mm, 3, 9).unwrap().certified());
    }
}
