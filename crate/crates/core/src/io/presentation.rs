//! Presentation files (`.cdga`), a small TOML document:
//!
//! ```toml
//! name = "heisenberg"
//! dimension = 3
//! generators = [
//!     { name = "alpha", degree = 1 },
//!     { name = "beta", degree = 1 },
//!     { name = "gamma", degree = 1 },
//! ]
//!
//! [differential]
//! gamma = "-1*alpha*beta"
//! ```
//!
//! Generators missing from `[differential]` are closed.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::expr::{parse_expression, ParseError};
use crate::algebra::{AlgebraError, FreeGca};
use crate::dga::{Dga, DgaError, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub differential: BTreeMap<String, String>,
}

/// A loaded, validated presentation with its declared manifold dimension.
#[derive(Debug)]
pub struct Presentation {
    pub dga: Dga,
    pub dimension: Option<usize>,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed presentation file: {0}")]
    Syntax(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("differential given for unknown generator `{0}`")]
    UnknownDifferential(String),
    #[error("d({generator}): {error}")]
    Expression {
        generator: String,
        error: ParseError,
    },
    #[error("{}", describe_invalid(.0))]
    Invalid(ValidationReport),
}

fn describe_invalid(report: &ValidationReport) -> String {
    let mut s = String::from("invalid presentation");
    for issue in &report.issues {
        let _ = write!(s, "; {issue}");
    }
    s
}

impl LoadError {
    /// Generators named by the error, if any.
    pub fn generators(&self) -> Vec<&str> {
        match self {
            LoadError::UnknownDifferential(g) => vec![g],
            LoadError::Expression { generator, .. } => vec![generator],
            LoadError::Invalid(report) => report.issues.iter().map(|i| i.generator()).collect(),
            LoadError::Algebra(
                AlgebraError::DuplicateName(g)
                | AlgebraError::InvalidName(g)
                | AlgebraError::NonPositiveDegree { name: g, .. },
            ) => vec![g],
            _ => Vec::new(),
        }
    }
}

impl PresentationFile {
    pub fn from_toml(text: &str) -> Result<Self, LoadError> {
        toml::from_str(text).map_err(|e| LoadError::Syntax(e.to_string()))
    }

    /// Builds and validates the presentation.
    pub fn build(&self) -> Result<Presentation, LoadError> {
        let gens: Vec<(&str, i64)> = self
            .generators
            .iter()
            .map(|g| (g.name.as_str(), g.degree))
            .collect();
        let algebra = Arc::new(FreeGca::new(&gens)?);
        let mut diff = vec![algebra.zero(); gens.len()];
        for (name, text) in &self.differential {
            let Some(g) = algebra.generator_by_name(name) else {
                return Err(LoadError::UnknownDifferential(name.clone()));
            };
            let id = g.id;
            diff[id] = parse_expression(text, &algebra).map_err(|error| LoadError::Expression {
                generator: name.clone(),
                error,
            })?;
        }
        let dga = Dga::new(self.name.clone(), algebra, diff).map_err(|e| match e {
            DgaError::Invalid(report) => LoadError::Invalid(report),
            DgaError::Algebra(a) => LoadError::Algebra(a),
            other => unreachable!("construction from a file cannot fail with {other}"),
        })?;
        Ok(Presentation {
            dga,
            dimension: self.dimension,
        })
    }

    pub fn from_dga(dga: &Dga, dimension: Option<usize>) -> Self {
        let alg = dga.algebra();
        let generators = alg
            .generators()
            .iter()
            .map(|g| GeneratorSpec {
                name: g.name.clone(),
                degree: g.degree as i64,
            })
            .collect();
        let differential = alg
            .generators()
            .iter()
            .filter(|g| !dga.diff_of(g.id).is_zero())
            .map(|g| (g.name.clone(), alg.format_element(dga.diff_of(g.id))))
            .collect();
        PresentationFile {
            name: dga.name().to_string(),
            dimension,
            generators,
            differential,
        }
    }

    /// Deterministic TOML text in the layout shown in the module docs.
    pub fn to_toml(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "name = {}", quote(&self.name));
        if let Some(n) = self.dimension {
            let _ = writeln!(out, "dimension = {n}");
        }
        out.push_str("generators = [\n");
        for g in &self.generators {
            let _ = writeln!(
                out,
                "    {{ name = {}, degree = {} }},",
                quote(&g.name),
                g.degree
            );
        }
        out.push_str("]\n");
        if !self.differential.is_empty() {
            out.push_str("\n[differential]\n");
            for (name, expr) in &self.differential {
                let _ = writeln!(out, "{} = {}", key(name), quote(expr));
            }
        }
        out
    }
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn key(s: &str) -> String {
    if !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
    {
        s.to_string()
    } else {
        quote(s)
    }
}

pub fn load_str(text: &str) -> Result<Presentation, LoadError> {
    PresentationFile::from_toml(text)?.build()
}

pub fn load(path: impl AsRef<Path>) -> Result<Presentation, LoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    load_str(&text)
}

pub fn dump_presentation(dga: &Dga, dimension: Option<usize>) -> String {
    PresentationFile::from_dga(dga, dimension).to_toml()
}
