use super::massey::{massey_search, MasseyHit};
use super::model::build_minimal_model;
use super::sformal::{check_s_formality, SFormalityReport};
use super::FormalityError;
use crate::dga::{Dga, PoincareReport};

/// Formality stage that decides formality of a closed n-manifold: a manifold
/// of dimension 2m or 2m − 1 is formal iff it is (m − 1)-formal.
pub fn formality_stage(n: usize) -> usize {
    n.div_ceil(2).saturating_sub(1)
}

#[derive(Debug, Clone)]
pub enum FormalityVerdict {
    NonFormal { certificate: Box<MasseyHit> },
    FormalCertifiedUpToCap { report: SFormalityReport },
    Undecided { report: SFormalityReport },
    NotApplicable { poincare: PoincareReport },
}

impl FormalityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            FormalityVerdict::NonFormal { .. } => "NON-FORMAL",
            FormalityVerdict::FormalCertifiedUpToCap { .. } => "FORMAL-CERTIFIED-UP-TO-CAP",
            FormalityVerdict::Undecided { .. } => "UNDECIDED",
            FormalityVerdict::NotApplicable { .. } => "NOT-APPLICABLE",
        }
    }
}

/// Verdict for a presentation modelling a closed oriented `n`-manifold.
/// A nonvanishing Massey product wins; otherwise the s-formality check at
/// the decisive stage runs through degree `cap`.
pub fn formality_verdict(
    p: &Dga,
    n: usize,
    cap: usize,
) -> Result<FormalityVerdict, FormalityError> {
    let poincare = p.poincare_check(n);
    if !poincare.is_nondegenerate() {
        return Ok(FormalityVerdict::NotApplicable { poincare });
    }
    if let Some(hit) = massey_search(p, n)? {
        return Ok(FormalityVerdict::NonFormal {
            certificate: Box::new(hit),
        });
    }
    let s = formality_stage(n);
    let model = build_minimal_model(p, s)?;
    let report = check_s_formality(&model, s, cap)?;
    Ok(if report.certified() {
        FormalityVerdict::FormalCertifiedUpToCap { report }
    } else {
        FormalityVerdict::Undecided { report }
    })
}
