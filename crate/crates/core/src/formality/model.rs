//! Degree-by-degree construction of a minimal model `φ: (⋀V, d) → A`.
//!
//! Stage i first adds closed generators of degree i until `H^i(φ)` is onto,
//! then repeatedly adds degree-i generators whose differentials are the
//! cocycles spanning `ker H^{i+1}(φ)`. Degree-1 stages may need several
//! rounds because each new generator creates new products in degree 2.

use std::sync::Arc;

use serde::Serialize;

use super::FormalityError;
use crate::algebra::{Element, FreeGca};
use crate::dga::Dga;
use crate::linalg::{RationalMatrix, Subspace, Vector};

/// Upper bound on kill rounds per stage.
pub const MAX_ROUNDS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorRole {
    /// Added to make cohomology surjective; `d = 0`.
    Closed,
    /// Added to kill a kernel class one degree up.
    Killing,
}

#[derive(Debug, Clone)]
pub struct MinimalModelStage {
    pub degree: usize,
    /// Model generator ids of this degree, in order.
    pub generators: Vec<usize>,
    pub rounds: usize,
    /// `C^i = ker d ∩ V^i`, in coordinates over `generators`.
    pub closed: Subspace,
    /// Echelon complement of `closed`; `d` is injective on it.
    pub non_closed: Subspace,
    pub bijective: bool,
    pub injective_next: bool,
}

#[derive(Debug)]
pub struct MinimalModel<'a> {
    pub target: &'a Dga,
    pub model: Dga,
    /// `φ(v)` for every model generator, as elements of the target.
    pub images: Vec<Element>,
    pub roles: Vec<GeneratorRole>,
    pub stages: Vec<MinimalModelStage>,
    pub up_to: usize,
}

impl MinimalModel<'_> {
    pub fn apply(&self, e: &Element) -> Element {
        apply_map(&self.model, &self.images, self.target, e)
    }

    pub fn stage(&self, degree: usize) -> Option<&MinimalModelStage> {
        self.stages.iter().find(|s| s.degree == degree)
    }

    /// `(C^i, N^i)` for a built stage.
    pub fn split_cn(&self, degree: usize) -> Option<(&Subspace, &Subspace)> {
        self.stage(degree).map(|s| (&s.closed, &s.non_closed))
    }

    /// Basis elements of `N^i` as elements of the model algebra.
    pub fn non_closed_elements(&self, degree: usize) -> Vec<Element> {
        let Some(stage) = self.stage(degree) else {
            return Vec::new();
        };
        let alg = self.model.algebra();
        stage
            .non_closed
            .basis()
            .iter()
            .map(|v| {
                let mut e = alg.zero();
                for (c, &g) in v.iter().zip(&stage.generators) {
                    e = &e + &alg.gen(g).scale(c);
                }
                e
            })
            .collect()
    }
}

pub(crate) fn apply_map(source: &Dga, images: &[Element], target: &Dga, e: &Element) -> Element {
    let ta = target.algebra();
    let mut out = ta.zero();
    for (m, c) in e.terms() {
        let mut term = ta.one();
        for &(g, exp) in m.factors() {
            term = ta.mul(&term, &ta.power(&images[g], exp));
        }
        out = &out + &term.scale(c);
    }
    debug_assert!(source.algebra().owns(e));
    out
}

struct Builder<'a> {
    target: &'a Dga,
    names: Vec<(String, i64)>,
    // differentials kept as elements of the most recent rebuild
    diffs: Vec<Element>,
    images: Vec<Element>,
    roles: Vec<GeneratorRole>,
    model: Dga,
}

impl<'a> Builder<'a> {
    fn new(target: &'a Dga) -> Self {
        let model = Dga::free(
            "model",
            Arc::new(FreeGca::new::<&str>(&[]).expect("empty algebra")),
        );
        Builder {
            target,
            names: Vec::new(),
            diffs: Vec::new(),
            images: Vec::new(),
            roles: Vec::new(),
            model,
        }
    }

    fn push(&mut self, degree: usize, diff: Element, image: Element, role: GeneratorRole) {
        let index = self
            .names
            .iter()
            .filter(|(_, d)| *d as usize == degree)
            .count()
            + 1;
        self.names
            .push((format!("v{degree}_{index}"), degree as i64));
        self.diffs.push(diff);
        self.images.push(image);
        self.roles.push(role);
    }

    fn rebuild(&mut self) {
        let alg = Arc::new(FreeGca::new(&self.names).expect("generated names are distinct"));
        let diffs: Vec<Element> = self.diffs.iter().map(|e| e.rehomed(alg.id())).collect();
        self.diffs = diffs.clone();
        self.model = Dga::new_unchecked("model", alg, diffs).expect("counts match");
        debug_assert!(self.model.validate().valid);
    }

    /// Class coordinates in `H^k(target)` of `φ` applied to each basis class
    /// of `H^k(model)`.
    fn induced_columns(&self, k: usize) -> Vec<Vector> {
        let hm = self.model.cohomology(k);
        let ha = self.target.cohomology(k);
        hm.representatives
            .iter()
            .map(|z| {
                let image = apply_map(&self.model, &self.images, self.target, z);
                let v = self
                    .target
                    .algebra()
                    .coordinates(&image, &ha.basis)
                    .expect("φ preserves degree");
                ha.class_coordinates(&v)
                    .expect("φ maps cocycles to cocycles")
            })
            .collect()
    }

    fn induced_matrix(&self, k: usize) -> RationalMatrix {
        let cols = self.induced_columns(k);
        RationalMatrix::from_columns(&cols, self.target.betti(k)).expect("column lengths agree")
    }

    fn stage(&mut self, i: usize) -> Result<MinimalModelStage, FormalityError> {
        let first_new = self.names.len();

        // surjectivity onto H^i
        let ha = self.target.cohomology(i);
        let image = Subspace::span(ha.betti(), self.induced_columns(i)).expect("lengths agree");
        for j in image.standard_complement() {
            let zero = self.model.algebra().zero();
            self.push(
                i,
                zero,
                ha.representatives[j].clone(),
                GeneratorRole::Closed,
            );
        }
        self.rebuild();

        // kill the kernel in degree i + 1
        let mut rounds = 0;
        loop {
            let kernel = self.induced_matrix(i + 1).kernel();
            if kernel.is_zero() {
                break;
            }
            if rounds == MAX_ROUNDS {
                return Err(FormalityError::NotStabilised { degree: i, rounds });
            }
            rounds += 1;
            let hm = self.model.cohomology(i + 1);
            let alg = Arc::clone(self.model.algebra());
            for c in kernel.basis() {
                let mut z = alg.zero();
                for (coef, rep) in c.iter().zip(&hm.representatives) {
                    z = &z + &rep.scale(coef);
                }
                let phi_z = apply_map(&self.model, &self.images, self.target, &z);
                let a = self
                    .target
                    .primitive(&phi_z, i + 1)?
                    .expect("kernel classes map to exact elements");
                self.push(i, z, a, GeneratorRole::Killing);
            }
            self.rebuild();
        }

        let generators: Vec<usize> = (first_new..self.names.len()).collect();
        let (closed, non_closed) = self.split(&generators, i);
        let bijective = {
            let m = self.induced_matrix(i);
            m.rank() == self.target.betti(i) && m.rank() == self.model.betti(i)
        };
        let injective_next = self.induced_matrix(i + 1).kernel().is_zero();
        Ok(MinimalModelStage {
            degree: i,
            generators,
            rounds,
            closed,
            non_closed,
            bijective,
            injective_next,
        })
    }

    fn split(&self, generators: &[usize], i: usize) -> (Subspace, Subspace) {
        let alg = self.model.algebra();
        let target = alg.degree_basis(i + 1);
        let cols: Vec<Vector> = generators
            .iter()
            .map(|&g| {
                alg.coordinates(self.model.diff_of(g), &target)
                    .expect("d raises degree by one")
            })
            .collect();
        let d = RationalMatrix::from_columns(&cols, target.len()).expect("lengths agree");
        let closed = d.kernel();
        let complement = closed
            .standard_complement()
            .into_iter()
            .map(|j| crate::linalg::unit_vector(generators.len(), j));
        let non_closed = Subspace::span(generators.len(), complement).expect("lengths agree");
        (closed, non_closed)
    }
}

/// Builds the minimal model of a connected presentation through generator
/// degree `up_to`.
pub fn build_minimal_model(target: &Dga, up_to: usize) -> Result<MinimalModel<'_>, FormalityError> {
    let b0 = target.betti(0);
    if b0 != 1 {
        return Err(FormalityError::Disconnected(b0));
    }
    let mut builder = Builder::new(target);
    let mut stages = Vec::new();
    for i in 1..=up_to {
        stages.push(builder.stage(i)?);
    }
    let model = builder.model.with_name(format!("model({})", target.name()));
    Ok(MinimalModel {
        target,
        model,
        images: builder.images,
        roles: builder.roles,
        stages,
        up_to,
    })
}
