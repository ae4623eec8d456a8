//! Model specifications given on the command line.

use std::path::PathBuf;

use killform_core::catalog::Model;
use killform_core::CurvatureTensor;

use crate::curvature_file;
use crate::InputError;

pub const KINDS: [&str; 6] = ["sphere", "flat", "cpn", "product", "weyl4", "file"];

#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    Catalog(Model),
    File(PathBuf),
}

/// Raw flag values, before validation.
#[derive(Debug, Clone, Default)]
pub struct ModelArgs {
    pub model: String,
    pub n: Option<usize>,
    pub kappa: Option<f64>,
    pub m: Option<usize>,
    pub factors: Option<String>,
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct ResolvedModel {
    pub id: String,
    pub spec: ModelSpec,
    pub tensor: CurvatureTensor,
}

impl ResolvedModel {
    /// `Some(true)` for cataloged compact-type models, `None` when unknown.
    pub fn compact_type(&self) -> Option<bool> {
        match &self.spec {
            ModelSpec::Catalog(m) => Some(m.is_compact_type()),
            ModelSpec::File(_) => None,
        }
    }

    /// Ambient dimension of the embedded self-dual Weyl probe, if this is one.
    pub fn weyl4_dim(&self) -> Option<usize> {
        match &self.spec {
            ModelSpec::Catalog(Model::Weyl4 { n }) => Some(*n),
            _ => None,
        }
    }
}

fn need<T>(value: Option<T>, flag: &str, kind: &str) -> Result<T, InputError> {
    value.ok_or_else(|| InputError(format!("model {kind} needs --{flag}")))
}

/// Parse one factor such as `sphere:2:1`, `sphere:3`, `flat:2`, `cpn:2`,
/// `weyl4` or `weyl4:5`.
pub fn parse_factor(text: &str) -> Result<Model, InputError> {
    let parts: Vec<&str> = text.trim().split(':').collect();
    let bad = || InputError(format!("cannot parse model factor '{text}'"));
    let int = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let model = match parts.as_slice() {
        ["sphere", n] => Model::sphere(int(n)?),
        ["sphere", n, kappa] => Model::Sphere {
            n: int(n)?,
            kappa: kappa.trim().parse().map_err(|_| bad())?,
        },
        ["flat", n] => Model::Flat { n: int(n)? },
        ["cpn", m] => Model::Cpn { m: int(m)? },
        ["weyl4"] => Model::Weyl4 { n: 4 },
        ["weyl4", n] => Model::Weyl4 { n: int(n)? },
        _ => return Err(bad()),
    };
    Ok(model)
}

/// A product of factors separated by `,` or `*`.
pub fn parse_product(text: &str) -> Result<Model, InputError> {
    let mut factors = text
        .split([',', '*'])
        .filter(|s| !s.trim().is_empty())
        .map(parse_factor);
    let first = factors
        .next()
        .ok_or_else(|| InputError(String::from("--factors is empty")))??;
    factors.try_fold(first, |acc, f| Ok(Model::product(acc, f?)))
}

impl ModelArgs {
    pub fn spec(&self) -> Result<ModelSpec, InputError> {
        let kind = self.model.as_str();
        let model = match kind {
            "sphere" => Model::Sphere {
                n: need(self.n, "n", kind)?,
                kappa: self.kappa.unwrap_or(1.0),
            },
            "flat" => Model::Flat {
                n: need(self.n, "n", kind)?,
            },
            "cpn" => Model::Cpn {
                m: need(self.m, "m", kind)?,
            },
            "weyl4" => Model::Weyl4 {
                n: self.n.unwrap_or(4),
            },
            "product" => parse_product(need(self.factors.as_deref(), "factors", kind)?)?,
            "file" => return Ok(ModelSpec::File(need(self.path.clone(), "path", kind)?)),
            other if other.contains(':') || other.contains('*') => parse_product(other)?,
            other => {
                return Err(InputError(format!(
                    "unknown model '{other}' (expected one of {})",
                    KINDS.join(", ")
                )))
            }
        };
        Ok(ModelSpec::Catalog(model))
    }

    pub fn resolve(&self, max_n: usize) -> Result<ResolvedModel, InputError> {
        resolve(self.spec()?, max_n)
    }
}

fn check_factors(model: &Model) -> Result<(), InputError> {
    match model {
        Model::Sphere { n, kappa } => {
            if *n < 2 {
                return Err(InputError(format!("sphere needs n >= 2, got {n}")));
            }
            if !kappa.is_finite() {
                return Err(InputError(String::from("kappa must be finite")));
            }
        }
        Model::Cpn { m } if *m < 1 => return Err(InputError(String::from("cpn needs m >= 1"))),
        Model::Weyl4 { n } if *n < 4 => {
            return Err(InputError(format!("weyl4 needs n >= 4, got {n}")))
        }
        Model::Product(a, b) => {
            check_factors(a)?;
            check_factors(b)?;
        }
        _ => {}
    }
    Ok(())
}

pub fn resolve(spec: ModelSpec, max_n: usize) -> Result<ResolvedModel, InputError> {
    let too_large = |n: usize| InputError(format!("dimension {n} exceeds --max-n {max_n}"));
    match spec {
        ModelSpec::Catalog(model) => {
            check_factors(&model)?;
            if model.dim() > max_n {
                return Err(too_large(model.dim()));
            }
            let tensor = model.resolve()?;
            Ok(ResolvedModel {
                id: model.id(),
                spec: ModelSpec::Catalog(model),
                tensor,
            })
        }
        ModelSpec::File(path) => {
            let tensor = curvature_file::read(&path, max_n)?;
            Ok(ResolvedModel {
                id: format!("file:{}", path.display()),
                spec: ModelSpec::File(path),
                tensor,
            })
        }
    }
}
