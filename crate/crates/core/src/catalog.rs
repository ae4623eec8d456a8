//! Named curvature models.
//!
//! [`standard`] lists symmetric models of compact type (round spheres,
//! complex projective spaces, flat space and products of these). [`probes`]
//! lists the self-dual Weyl tensor in dimension 4 and its trivial
//! extensions, which are algebraic curvature tensors but not the curvature
//! of a symmetric space of compact type.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::curvature::CurvatureTensor;
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Sphere {
        n: usize,
        kappa: f64,
    },
    Flat {
        n: usize,
    },
    Cpn {
        m: usize,
    },
    Product(Box<Model>, Box<Model>),
    /// The self-dual Weyl tensor of ℝ⁴ extended by zero to ℝⁿ.
    Weyl4 {
        n: usize,
    },
}

impl Model {
    pub fn sphere(n: usize) -> Self {
        Model::Sphere { n, kappa: 1.0 }
    }

    pub fn product(a: Model, b: Model) -> Self {
        Model::Product(Box::new(a), Box::new(b))
    }

    pub fn id(&self) -> String {
        match self {
            Model::Sphere { n, kappa } => format!("sphere:{n}:{kappa}"),
            Model::Flat { n } => format!("flat:{n}"),
            Model::Cpn { m } => format!("cpn:{m}"),
            Model::Product(a, b) => format!("{}*{}", a.id(), b.id()),
            Model::Weyl4 { n: 4 } => String::from("weyl4"),
            Model::Weyl4 { n } => format!("weyl4:{n}"),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Model::Sphere { n, .. } | Model::Flat { n } | Model::Weyl4 { n } => *n,
            Model::Cpn { m } => 2 * m,
            Model::Product(a, b) => a.dim() + b.dim(),
        }
    }

    /// Whether the model is the curvature of a symmetric space of compact
    /// type (flat factors allowed).
    pub fn is_compact_type(&self) -> bool {
        match self {
            Model::Sphere { kappa, .. } => *kappa >= 0.0,
            Model::Flat { .. } | Model::Cpn { .. } => true,
            Model::Product(a, b) => a.is_compact_type() && b.is_compact_type(),
            Model::Weyl4 { .. } => false,
        }
    }

    pub fn resolve(&self) -> Result<CurvatureTensor> {
        Ok(match self {
            Model::Sphere { n, kappa } => CurvatureTensor::constant_curvature(*n, *kappa),
            Model::Flat { n } => CurvatureTensor::flat(*n),
            Model::Cpn { m } => CurvatureTensor::fubini_study(*m),
            Model::Product(a, b) => CurvatureTensor::product(&a.resolve()?, &b.resolve()?),
            Model::Weyl4 { n } => CurvatureTensor::self_dual_weyl4().embed_trivial(*n)?,
        })
    }
}

/// Compact-type models with `n ≤ 6`.
pub fn standard() -> Vec<Model> {
    vec![
        Model::Flat { n: 4 },
        Model::sphere(3),
        Model::sphere(4),
        Model::Sphere { n: 4, kappa: 2.0 },
        Model::sphere(5),
        Model::sphere(6),
        Model::Cpn { m: 2 },
        Model::Cpn { m: 3 },
        Model::product(Model::sphere(2), Model::sphere(2)),
        Model::product(Model::sphere(2), Model::sphere(3)),
        Model::product(Model::sphere(3), Model::sphere(3)),
        Model::product(Model::sphere(2), Model::Flat { n: 2 }),
        Model::product(Model::sphere(3), Model::Flat { n: 1 }),
        Model::product(Model::Cpn { m: 2 }, Model::sphere(2)),
    ]
}

pub fn probes() -> Vec<Model> {
    vec![
        Model::Weyl4 { n: 4 },
        Model::Weyl4 { n: 5 },
        Model::Weyl4 { n: 6 },
    ]
}

/// [`standard`] followed by [`probes`].
pub fn all() -> Vec<Model> {
    let mut out = standard();
    out.extend(probes());
    out
}
