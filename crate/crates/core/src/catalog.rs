//! Named presentations of closed manifolds, first-Betti-number bookkeeping
//! for constructions without a presented model, and the geography table of
//! non-formal manifolds.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::FreeGca;
use crate::dga::Dga;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    Unknown(String),
    #[error("`{0}` needs a positive dimension")]
    BadParameter(String),
    #[error("connected sum needs equal dimensions at least 3, got {left} and {right}")]
    ConnectedSumDimension { left: usize, right: usize },
    #[error("cannot kill {killed} classes of degree 1 when b1 = {b1}")]
    TooManyKilled { killed: usize, b1: usize },
}

/// A presented closed manifold: its model, dimension and first Betti number.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub presentation: Arc<Dga>,
    pub dimension: usize,
    pub b1: usize,
    pub provenance: String,
}

impl CatalogEntry {
    fn new(
        name: impl Into<String>,
        dga: Dga,
        dimension: usize,
        b1: usize,
        provenance: impl Into<String>,
    ) -> Self {
        CatalogEntry {
            name: name.into(),
            presentation: Arc::new(dga),
            dimension,
            b1,
            provenance: provenance.into(),
        }
    }

    /// Validation, Poincaré duality in the declared dimension and the
    /// declared first Betti number.
    pub fn is_consistent(&self) -> bool {
        let p = &self.presentation;
        p.validate().valid
            && p.poincare_check(self.dimension).is_nondegenerate()
            && p.betti(1) == self.b1
    }

    pub fn bookkeeping(&self) -> Bookkeeping {
        Bookkeeping {
            name: self.name.clone(),
            dimension: self.dimension,
            b1: self.b1,
            recipe: self.name.clone(),
            base: Some(self.name.clone()),
        }
    }
}

fn algebra(gens: &[(&str, i64)]) -> Arc<FreeGca> {
    Arc::new(FreeGca::new(gens).expect("catalog generators are well formed"))
}

/// The Heisenberg nilmanifold: `dγ = −αβ`.
pub fn heisenberg() -> CatalogEntry {
    let alg = algebra(&[("alpha", 1), ("beta", 1), ("gamma", 1)]);
    let ab = alg.mul(&alg.gen(0), &alg.gen(1));
    let diff = vec![alg.zero(), alg.zero(), -&ab];
    let dga = Dga::new("N", alg, diff).expect("valid presentation");
    CatalogEntry::new(
        "heisenberg",
        dga,
        3,
        2,
        "Heisenberg nilmanifold; left-invariant forms alpha, beta, gamma",
    )
}

/// The 4-dimensional nilmanifold fibred over the Heisenberg manifold with
/// Chern class `[βγ]`: `dγ = −αβ`, `dη = βγ`.
pub fn e_nilmanifold() -> CatalogEntry {
    let alg = algebra(&[("alpha", 1), ("beta", 1), ("gamma", 1), ("eta", 1)]);
    let ab = alg.mul(&alg.gen(0), &alg.gen(1));
    let bg = alg.mul(&alg.gen(1), &alg.gen(2));
    let diff = vec![alg.zero(), alg.zero(), -&ab, bg];
    let dga = Dga::new("E", alg, diff).expect("valid presentation");
    CatalogEntry::new(
        "e-nilmanifold",
        dga,
        4,
        2,
        "circle bundle over the Heisenberg manifold with Chern class [beta*gamma]",
    )
}

/// Minimal model of `S^k`: one closed generator for odd k; `⋀(x_k, y_{2k−1})`
/// with `dy = x²` for even k.
pub fn sphere(k: usize) -> Result<CatalogEntry, CatalogError> {
    if k == 0 {
        return Err(CatalogError::BadParameter("sphere:0".into()));
    }
    let label = format!("S{k}");
    let dga = if k % 2 == 1 {
        Dga::free(label, algebra(&[("e", k as i64)]))
    } else {
        let alg = algebra(&[("x", k as i64), ("y", 2 * k as i64 - 1)]);
        let xx = alg.mul(&alg.gen(0), &alg.gen(0));
        Dga::new(label, alg.clone(), vec![alg.zero(), xx]).expect("valid presentation")
    };
    Ok(CatalogEntry::new(
        format!("sphere:{k}"),
        dga,
        k,
        usize::from(k == 1),
        "minimal model of the sphere",
    ))
}

/// The k-torus: k closed degree-1 generators `delta1, …, deltak`.
pub fn torus(k: usize) -> Result<CatalogEntry, CatalogError> {
    if k == 0 {
        return Err(CatalogError::BadParameter("torus:0".into()));
    }
    let names: Vec<(String, i64)> = (1..=k).map(|i| (format!("delta{i}"), 1)).collect();
    let alg = Arc::new(FreeGca::new(&names).expect("distinct names"));
    Ok(CatalogEntry::new(
        format!("torus:{k}"),
        Dga::free(format!("T{k}"), alg),
        k,
        k,
        "flat torus",
    ))
}

/// A point: the ground field.
pub fn point() -> CatalogEntry {
    let alg = Arc::new(FreeGca::new::<&str>(&[]).expect("empty algebra"));
    CatalogEntry::new("point", Dga::free("pt", alg), 0, 0, "a point")
}

/// Product manifold, presented by the tensor product of models.
pub fn product(a: &CatalogEntry, b: &CatalogEntry) -> CatalogEntry {
    CatalogEntry::new(
        format!("{}*{}", a.name, b.name),
        a.presentation.tensor(&b.presentation),
        a.dimension + b.dimension,
        a.b1 + b.b1,
        format!("product of {} and {}", a.name, b.name),
    )
}

/// `N × T²`, the 5-manifold on which the surgery producing a non-formal
/// manifold with `b₁ = 1` is performed.
pub fn x_manifold() -> CatalogEntry {
    product(&heisenberg(), &torus(2).expect("positive"))
}

/// `N × T³`, the 6-dimensional analogue.
pub fn x_prime_manifold() -> CatalogEntry {
    product(&heisenberg(), &torus(3).expect("positive"))
}

/// Resolves `heisenberg`, `e-nilmanifold`, `point`, `sphere:k`, `torus:k`
/// and `*`-separated products of these.
pub fn lookup(name: &str) -> Result<CatalogEntry, CatalogError> {
    let mut factors = name.split('*').map(str::trim);
    let first = lookup_factor(factors.next().unwrap_or_default())?;
    factors.try_fold(first, |acc, f| Ok(product(&acc, &lookup_factor(f)?)))
}

fn lookup_factor(name: &str) -> Result<CatalogEntry, CatalogError> {
    let unknown = || CatalogError::Unknown(name.to_string());
    match name {
        "heisenberg" | "N" => return Ok(heisenberg()),
        "e-nilmanifold" | "E" => return Ok(e_nilmanifold()),
        "point" => return Ok(point()),
        "X" => return Ok(x_manifold()),
        "X'" => return Ok(x_prime_manifold()),
        _ => {}
    }
    let (kind, k) = name.split_once(':').ok_or_else(unknown)?;
    let k: usize = k.parse().map_err(|_| unknown())?;
    match kind {
        "sphere" => sphere(k),
        "torus" => torus(k),
        _ => Err(unknown()),
    }
}

/// A manifold known only through its dimension and first Betti number,
/// with the recipe that produces it. `base` names the catalog presentation
/// whose Massey products witness non-formality, when there is one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bookkeeping {
    pub name: String,
    pub dimension: usize,
    pub b1: usize,
    pub recipe: String,
    pub base: Option<String>,
}

impl Bookkeeping {
    fn from_sphere(k: usize) -> Bookkeeping {
        sphere(k).expect("positive dimension").bookkeeping()
    }
}

/// `a # copies·b`; the first Betti numbers of closed manifolds of dimension
/// at least 3 add under connected sum.
pub fn connected_sum_b1(
    a: &Bookkeeping,
    b: &Bookkeeping,
    copies: usize,
) -> Result<Bookkeeping, CatalogError> {
    if a.dimension != b.dimension || a.dimension < 3 {
        return Err(CatalogError::ConnectedSumDimension {
            left: a.dimension,
            right: b.dimension,
        });
    }
    if copies == 0 {
        return Ok(a.clone());
    }
    let summand = if copies == 1 {
        b.name.clone()
    } else {
        format!("{copies}({})", b.name)
    };
    Ok(Bookkeeping {
        name: format!("{} # {summand}", a.name),
        dimension: a.dimension,
        b1: a.b1 + copies * b.b1,
        recipe: format!(
            "connected sum of {} with {copies} copies of {}",
            a.recipe, b.name
        ),
        base: a.base.clone(),
    })
}

/// Surgery along loops killing `killed` independent degree-1 classes.
pub fn surgery_b1(a: &CatalogEntry, killed: usize) -> Result<Bookkeeping, CatalogError> {
    if killed > a.b1 {
        return Err(CatalogError::TooManyKilled { killed, b1: a.b1 });
    }
    let mut out = a.bookkeeping();
    if killed == 0 {
        return Ok(out);
    }
    out.name = format!("surgery({}, {killed})", a.name);
    out.b1 = a.b1 - killed;
    out.recipe = format!(
        "{} with {killed} independent degree-1 classes killed by surgery along embedded circles",
        a.name
    );
    Ok(out)
}

pub fn product_b1(a: &Bookkeeping, b: &Bookkeeping) -> Bookkeeping {
    Bookkeeping {
        name: format!("({}) x {}", a.name, b.name),
        dimension: a.dimension + b.dimension,
        b1: a.b1 + b.b1,
        recipe: format!("product of {} with {}", a.recipe, b.name),
        base: a.base.clone(),
    }
}

/// `S¹ × S²`, the summand used to raise `b₁` of a 3-manifold by one.
pub fn s1_times_s2() -> Bookkeeping {
    Bookkeeping {
        name: "S1xS2".into(),
        dimension: 3,
        b1: 1,
        recipe: "S1xS2".into(),
        base: None,
    }
}

/// The 5-manifold with `b₁ = 1` obtained from `N × T²` by surgery.
pub fn m_manifold() -> Bookkeeping {
    let mut m = surgery_b1(&x_manifold(), 3).expect("b1(X) = 4");
    m.name = "M".into();
    m
}

/// The 6-manifold with `b₁ = 1` obtained from `N × T³` by surgery.
pub fn m_prime_manifold() -> Bookkeeping {
    let mut m = surgery_b1(&x_prime_manifold(), 4).expect("b1(X') = 5");
    m.name = "M'".into();
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum GeographyVerdict {
    FormalForced,
    NonFormalExists,
    NotApplicable,
}

impl fmt::Display for GeographyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeographyVerdict::FormalForced => "FORMAL-FORCED",
            GeographyVerdict::NonFormalExists => "NON-FORMAL-EXISTS",
            GeographyVerdict::NotApplicable => "NOT-APPLICABLE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeographyAnswer {
    pub dimension: usize,
    pub b1: usize,
    pub verdict: GeographyVerdict,
    /// Why every manifold in the cell is formal, or how to build a
    /// non-formal one.
    pub reason: String,
    pub example: Option<Bookkeeping>,
}

/// Whether a compact oriented `n`-manifold with `b₁ = b` can be non-formal.
pub fn geography(n: usize, b: usize) -> GeographyAnswer {
    let answer = |verdict, reason: &str, example| GeographyAnswer {
        dimension: n,
        b1: b,
        verdict,
        reason: reason.to_string(),
        example,
    };
    if n == 0 {
        return answer(
            GeographyVerdict::NotApplicable,
            "dimension must be positive",
            None,
        );
    }
    let nonformal = (n >= 3 && b >= 2) || (b <= 2 && n + 2 * b >= 7);
    if !nonformal {
        let reason = if n <= 2 {
            "every compact manifold of dimension at most 2 is formal"
        } else if b == 0 {
            "simply connected compact manifolds of dimension at most 6 are formal"
        } else {
            "compact manifolds of dimension at most 4 with b1 = 1 are formal"
        };
        return answer(GeographyVerdict::FormalForced, reason, None);
    }
    let n_entry = heisenberg().bookkeeping();
    let sum_with_handles =
        |copies: usize| connected_sum_b1(&n_entry, &s1_times_s2(), copies).expect("dimension 3");
    let (reason, example) = match (n, b) {
        (_, 0) => (
            "simply connected non-formal manifolds exist in every dimension from 7 on",
            Bookkeeping {
                name: format!("simply connected non-formal {n}-manifold"),
                dimension: n,
                b1: 0,
                recipe: "simply connected manifold with a nonvanishing triple Massey product"
                    .into(),
                base: None,
            },
        ),
        (5, 1) => (
            "surgery on N x T2 leaves b1 = 1 and a nonzero Massey product",
            m_manifold(),
        ),
        (6, 1) => (
            "surgery on N x T3 leaves b1 = 1 and a nonzero Massey product",
            m_prime_manifold(),
        ),
        (_, 1) => (
            "product of the surgered 5-manifold with a simply connected sphere",
            product_b1(&m_manifold(), &Bookkeeping::from_sphere(n - 5)),
        ),
        (3, 2) => (
            "the Heisenberg manifold carries a nonzero Massey product",
            n_entry.clone(),
        ),
        (3, _) => (
            "connected sums with copies of S1xS2 raise b1 and keep the Massey product of N",
            sum_with_handles(b - 2),
        ),
        (4, 2) => (
            "the nilmanifold E carries a nonzero Massey product",
            e_nilmanifold().bookkeeping(),
        ),
        (4, _) => (
            "product of a connected sum of N and copies of S1xS2 with a circle",
            product_b1(&sum_with_handles(b - 3), &Bookkeeping::from_sphere(1)),
        ),
        _ => (
            "product of a connected sum of N and copies of S1xS2 with a simply connected sphere",
            product_b1(&sum_with_handles(b - 2), &Bookkeeping::from_sphere(n - 3)),
        ),
    };
    debug_assert_eq!((example.dimension, example.b1), (n, b));
    answer(GeographyVerdict::NonFormalExists, reason, Some(example))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_are_consistent() {
        let mut entries = vec![
            heisenberg(),
            e_nilmanifold(),
            point(),
            x_manifold(),
            x_prime_manifold(),
        ];
        for k in 1..=6 {
            entries.push(sphere(k).unwrap());
            entries.push(torus(k).unwrap());
        }
        for e in &entries {
            assert!(e.is_consistent(), "{}", e.name);
        }
    }

    #[test]
    fn small_examples() {
        assert_eq!(heisenberg().presentation.betti_vector(3), [1, 2, 2, 1]);
        assert!(heisenberg().presentation.is_minimal());
        assert_eq!(
            e_nilmanifold().presentation.betti_vector(4),
            [1, 2, 2, 2, 1]
        );
        assert_eq!(
            sphere(3).unwrap().presentation.betti_vector(3),
            [1, 0, 0, 1]
        );
        assert_eq!(sphere(2).unwrap().presentation.betti_vector(2), [1, 0, 1]);
        assert_eq!(torus(2).unwrap().presentation.betti_vector(2), [1, 2, 1]);
    }

    #[test]
    fn lookup_names() {
        let x = lookup("heisenberg*torus:2").unwrap();
        assert_eq!((x.dimension, x.b1), (5, 4));
        assert_eq!(x.presentation.algebra().num_generators(), 5);
        assert_eq!(lookup("sphere:4").unwrap().dimension, 4);
        assert!(matches!(lookup("sphere:x"), Err(CatalogError::Unknown(_))));
        assert!(matches!(lookup("klein"), Err(CatalogError::Unknown(_))));
        assert!(matches!(
            lookup("torus:0"),
            Err(CatalogError::BadParameter(_))
        ));
    }

    #[test]
    fn bookkeeping_arithmetic() {
        let n = heisenberg().bookkeeping();
        let h = s1_times_s2();
        assert_eq!(connected_sum_b1(&n, &h, 1).unwrap().b1, 3);
        assert_eq!(connected_sum_b1(&n, &h, 2).unwrap().b1, 4);
        assert_eq!(connected_sum_b1(&n, &h, 0).unwrap(), n);
        let t2 = torus(2).unwrap().bookkeeping();
        assert!(connected_sum_b1(&t2, &t2, 1).is_err());
        assert_eq!(m_manifold().b1, 1);
        assert_eq!(m_prime_manifold().b1, 1);
        assert_eq!(m_manifold().dimension, 5);
        assert_eq!(surgery_b1(&x_manifold(), 0).unwrap().b1, 4);
        assert!(surgery_b1(&x_manifold(), 5).is_err());
        let ms = product_b1(&m_manifold(), &Bookkeeping::from_sphere(3));
        assert_eq!((ms.dimension, ms.b1), (8, 1));
    }

    #[test]
    fn geography_examples() {
        assert_eq!(geography(6, 0).verdict, GeographyVerdict::FormalForced);
        let g = geography(5, 1);
        assert_eq!(g.verdict, GeographyVerdict::NonFormalExists);
        assert_eq!(g.example.unwrap().name, "M");
        assert_eq!(geography(4, 1).verdict, GeographyVerdict::FormalForced);
        assert_eq!(geography(3, 2).example.unwrap().name, "heisenberg");
        assert_eq!(geography(2, 7).verdict, GeographyVerdict::FormalForced);
        assert_eq!(geography(0, 1).verdict, GeographyVerdict::NotApplicable);
        let g = geography(6, 4);
        assert_eq!(
            g.example.unwrap().name,
            "(heisenberg # 2(S1xS2)) x sphere:3"
        );
    }
}
