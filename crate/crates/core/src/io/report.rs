//! Serializable summaries of computations. Rationals are always written as
//! exact strings (`"3"`, `"-1/2"`); field order is fixed by the structs, so
//! the serialized form is deterministic.

use serde::Serialize;

use crate::dga::{CohomologyClass, Dga, PoincareReport, ValidationIssue};
use crate::formality::{
    formality_stage, FormalityVerdict, GeneratorRole, MasseyHit, MasseyResult, MinimalModel,
    SFormalityReport, SFormalityVerdict,
};
use crate::linalg::Subspace;
use crate::Rational;

pub fn rational_string(q: &Rational) -> String {
    q.to_string()
}

pub fn vector_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational_string).collect()
}

fn subspace_strings(s: &Subspace) -> Vec<Vec<String>> {
    s.basis().iter().map(|v| vector_strings(v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationSummary {
    pub presentation: String,
    pub valid: bool,
    pub generators: Vec<GeneratorSummary>,
    pub issues: Vec<ValidationIssue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSummary {
    pub name: String,
    pub degree: usize,
    pub d: String,
}

impl ValidationSummary {
    pub fn new(p: &Dga) -> Self {
        let report = p.validate();
        ValidationSummary {
            presentation: p.name().to_string(),
            valid: report.valid,
            generators: generator_summaries(p),
            issues: report.issues,
        }
    }
}

fn generator_summaries(p: &Dga) -> Vec<GeneratorSummary> {
    let alg = p.algebra();
    alg.generators()
        .iter()
        .map(|g| GeneratorSummary {
            name: g.name.clone(),
            degree: g.degree,
            d: alg.format_element(p.diff_of(g.id)),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologySummary {
    pub presentation: String,
    pub max_degree: usize,
    pub betti: Vec<usize>,
    pub degrees: Vec<DegreeSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSummary {
    pub degree: usize,
    pub betti: usize,
    pub representatives: Vec<String>,
}

impl CohomologySummary {
    pub fn new(p: &Dga, max_degree: usize) -> Self {
        let alg = p.algebra();
        let degrees: Vec<DegreeSummary> = (0..=max_degree)
            .map(|k| {
                let slice = p.cohomology(k);
                DegreeSummary {
                    degree: k,
                    betti: slice.betti(),
                    representatives: slice
                        .representatives
                        .iter()
                        .map(|r| alg.format_element(r))
                        .collect(),
                }
            })
            .collect();
        CohomologySummary {
            presentation: p.name().to_string(),
            max_degree,
            betti: degrees.iter().map(|d| d.betti).collect(),
            degrees,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub degree: usize,
    pub representative: String,
    pub coordinates: Vec<String>,
}

impl ClassSummary {
    pub fn new(p: &Dga, c: &CohomologyClass) -> Self {
        ClassSummary {
            degree: c.degree,
            representative: p.algebra().format_element(&c.representative),
            coordinates: vector_strings(&c.coordinates),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MasseySummary {
    pub presentation: String,
    pub classes: Vec<ClassSummary>,
    pub defined: bool,
    pub nonzero: bool,
    pub degree: usize,
    pub representative: Option<ClassSummary>,
    pub indeterminacy_dim: usize,
    pub indeterminacy_basis: Vec<Vec<String>>,
    pub xi: Option<String>,
    pub eta: Option<String>,
}

impl MasseySummary {
    pub fn new(p: &Dga, classes: &[CohomologyClass; 3], result: &MasseyResult) -> Self {
        let alg = p.algebra();
        MasseySummary {
            presentation: p.name().to_string(),
            classes: classes.iter().map(|c| ClassSummary::new(p, c)).collect(),
            defined: result.defined,
            nonzero: result.nonzero,
            degree: result.degree,
            representative: result
                .representative
                .as_ref()
                .map(|c| ClassSummary::new(p, c)),
            indeterminacy_dim: result.indeterminacy.dim(),
            indeterminacy_basis: subspace_strings(&result.indeterminacy),
            xi: result
                .primitives
                .as_ref()
                .map(|(x, _)| alg.format_element(x)),
            eta: result
                .primitives
                .as_ref()
                .map(|(_, e)| alg.format_element(e)),
        }
    }

    pub fn from_hit(p: &Dga, hit: &MasseyHit) -> Self {
        let classes = hit.classes.map(|(d, i)| p.basis_class(d, i));
        Self::new(p, &classes, &hit.result)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MasseyScanSummary {
    pub presentation: String,
    pub max_degree: usize,
    pub hits: Vec<ScanHit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanHit {
    /// `(degree, index)` of each basis class.
    pub classes: [[usize; 2]; 3],
    pub result: MasseySummary,
}

impl MasseyScanSummary {
    pub fn new(p: &Dga, max_degree: usize, hits: &[MasseyHit]) -> Self {
        MasseyScanSummary {
            presentation: p.name().to_string(),
            max_degree,
            hits: hits
                .iter()
                .map(|h| ScanHit {
                    classes: h.classes.map(|(d, i)| [d, i]),
                    result: MasseySummary::from_hit(p, h),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelSummary {
    pub presentation: String,
    pub up_to: usize,
    pub minimal: bool,
    pub generators: Vec<ModelGenerator>,
    pub stages: Vec<StageSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelGenerator {
    pub name: String,
    pub degree: usize,
    pub role: GeneratorRole,
    pub d: String,
    pub image: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageSummary {
    pub degree: usize,
    pub generators: Vec<String>,
    pub rounds: usize,
    pub closed_dim: usize,
    pub non_closed_dim: usize,
    pub closed_basis: Vec<Vec<String>>,
    pub non_closed_basis: Vec<Vec<String>>,
    pub bijective: bool,
    pub injective_next: bool,
}

impl ModelSummary {
    pub fn new(mm: &MinimalModel<'_>) -> Self {
        let alg = mm.model.algebra();
        let talg = mm.target.algebra();
        let generators = alg
            .generators()
            .iter()
            .map(|g| ModelGenerator {
                name: g.name.clone(),
                degree: g.degree,
                role: mm.roles[g.id],
                d: alg.format_element(mm.model.diff_of(g.id)),
                image: talg.format_element(&mm.images[g.id]),
            })
            .collect();
        let stages = mm
            .stages
            .iter()
            .map(|s| StageSummary {
                degree: s.degree,
                generators: s
                    .generators
                    .iter()
                    .map(|&g| alg.generators()[g].name.clone())
                    .collect(),
                rounds: s.rounds,
                closed_dim: s.closed.dim(),
                non_closed_dim: s.non_closed.dim(),
                closed_basis: subspace_strings(&s.closed),
                non_closed_basis: subspace_strings(&s.non_closed),
                bijective: s.bijective,
                injective_next: s.injective_next,
            })
            .collect();
        ModelSummary {
            presentation: mm.target.name().to_string(),
            up_to: mm.up_to,
            minimal: mm.model.is_minimal(),
            generators,
            stages,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SFormalSummary {
    pub presentation: String,
    pub s: usize,
    pub cap: usize,
    pub verdict: SFormalityVerdict,
    pub witness: Option<WitnessSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    pub degree: usize,
    pub element: String,
}

impl SFormalSummary {
    pub fn new(mm: &MinimalModel<'_>, report: &SFormalityReport) -> Self {
        SFormalSummary {
            presentation: mm.target.name().to_string(),
            s: report.s,
            cap: report.cap,
            verdict: report.verdict,
            witness: report.witness.as_ref().map(|w| WitnessSummary {
                degree: w.degree,
                element: mm.model.algebra().format_element(&w.element),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictSummary {
    pub presentation: String,
    pub dimension: usize,
    pub stage: usize,
    pub cap: usize,
    pub verdict: &'static str,
    pub poincare: Option<PoincareReport>,
    pub massey: Option<ScanHit>,
    pub s_formality: Option<SFormalSummaryLite>,
}

/// s-formality outcome without the model-side witness name lookup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SFormalSummaryLite {
    pub s: usize,
    pub cap: usize,
    pub verdict: SFormalityVerdict,
    pub witness_degree: Option<usize>,
}

impl VerdictSummary {
    pub fn new(p: &Dga, dimension: usize, cap: usize, verdict: &FormalityVerdict) -> Self {
        let mut out = VerdictSummary {
            presentation: p.name().to_string(),
            dimension,
            stage: formality_stage(dimension),
            cap,
            verdict: verdict.label(),
            poincare: None,
            massey: None,
            s_formality: None,
        };
        match verdict {
            FormalityVerdict::NotApplicable { poincare } => out.poincare = Some(poincare.clone()),
            FormalityVerdict::NonFormal { certificate } => {
                out.massey = Some(ScanHit {
                    classes: certificate.classes.map(|(d, i)| [d, i]),
                    result: MasseySummary::from_hit(p, certificate),
                })
            }
            FormalityVerdict::FormalCertifiedUpToCap { report }
            | FormalityVerdict::Undecided { report } => {
                out.s_formality = Some(SFormalSummaryLite {
                    s: report.s,
                    cap: report.cap,
                    verdict: report.verdict,
                    witness_degree: report.witness.as_ref().map(|w| w.degree),
                })
            }
        }
        out
    }
}
