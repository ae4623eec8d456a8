//! The Lie algebra spanned by the curvature endomorphisms and its action on
//! forms.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curvature::CurvatureTensor;
use crate::exterior::binomial;
use crate::linalg::{nullspace, range, vstack, Subspace};
use crate::operators::{curvature_endo, rho_matrix, SkewEndo};
use crate::{Error, Result};

/// Seed of the random combinations tried by Kähler detection.
const KAHLER_SEED: u64 = 0x6b61_686c;
const KAHLER_ATTEMPTS: usize = 8;

fn vectorize(m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_column_slice(m.as_slice())
}

fn unvectorize(n: usize, v: &[f64]) -> DMatrix<f64> {
    DMatrix::from_column_slice(n, n, v)
}

/// Bracket-closed span of skew endomorphisms with a Frobenius-orthonormal
/// basis.
#[derive(Debug, Clone)]
pub struct HolonomyAlgebra {
    n: usize,
    generators: Vec<SkewEndo>,
}

/// Outcome of the search for an invariant complex structure.
#[derive(Debug, Clone, PartialEq)]
pub struct KahlerDetection {
    pub flag: bool,
    pub structure: Option<SkewEndo>,
    pub warning: Option<&'static str>,
}

impl HolonomyAlgebra {
    /// Holonomy algebra of a symmetric space model: the span of all
    /// `R_{e_i,e_j}`, closed under brackets.
    pub fn generate(r: &CurvatureTensor) -> Self {
        let n = r.n();
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                gens.push(curvature_endo(r, i, j));
            }
        }
        HolonomyAlgebra::from_generators(n, &gens)
    }

    /// Lie algebra generated by arbitrary skew endomorphisms.
    pub fn from_generators(n: usize, generators: &[SkewEndo]) -> Self {
        let cap = n * n.saturating_sub(1) / 2;
        let cols: Vec<DVector<f64>> = generators.iter().map(|g| vectorize(g.matrix())).collect();
        let mut basis = orthonormal(n, &cols);
        loop {
            let mut cols: Vec<DVector<f64>> = basis.iter().map(|g| vectorize(g.matrix())).collect();
            for a in 0..basis.len() {
                for b in a + 1..basis.len() {
                    cols.push(vectorize(basis[a].bracket(&basis[b]).matrix()));
                }
            }
            let next = orthonormal(n, &cols);
            let grew = next.len() > basis.len();
            basis = next;
            if !grew || basis.len() >= cap {
                break;
            }
        }
        HolonomyAlgebra {
            n,
            generators: basis,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[SkewEndo] {
        &self.generators
    }

    /// Largest distance of a bracket of basis elements from the span.
    pub fn closure_residual(&self) -> f64 {
        let span = self.span_matrix();
        let mut worst: f64 = 0.0;
        for a in &self.generators {
            for b in &self.generators {
                let v = vectorize(a.bracket(b).matrix());
                let coeffs = span.transpose() * &v;
                worst = worst.max((&v - &span * coeffs).norm());
            }
        }
        worst
    }

    /// Distance of a skew endomorphism from the algebra.
    pub fn distance_to(&self, g: &SkewEndo) -> f64 {
        let span = self.span_matrix();
        let v = vectorize(g.matrix());
        let coeffs = span.transpose() * &v;
        (&v - &span * coeffs).norm()
    }

    fn span_matrix(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n * self.n, self.dim());
        for (k, g) in self.generators.iter().enumerate() {
            m.set_column(k, &vectorize(g.matrix()));
        }
        m
    }

    /// `ρ(g)` on degree `p` for every basis element.
    pub fn action_matrices(&self, p: usize) -> Vec<DMatrix<f64>> {
        self.generators.iter().map(|g| rho_matrix(g, p)).collect()
    }

    /// Joint kernel of the action on degree `p`: the forms fixed by the
    /// algebra.
    pub fn trivial_summand(&self, p: usize) -> Result<Subspace> {
        if p > self.n {
            return Err(Error::DegreeOutOfRange {
                degree: p,
                min: 0,
                max: self.n,
            });
        }
        let d = binomial(self.n, p);
        let stacked = vstack(&self.action_matrices(p), d);
        Ok(Subspace::from_orthonormal(self.n, p, nullspace(&stacked)))
    }

    /// Largest `‖ρ(g) w‖` over basis elements `g` and basis vectors `w` of `s`
    /// after removing the component inside `s`.
    pub fn invariance_residual(&self, s: &Subspace) -> f64 {
        if s.dim() == 0 {
            return 0.0;
        }
        self.action_matrices(s.degree())
            .iter()
            .map(|m| s.max_distance(&(m * s.basis())))
            .fold(0.0, f64::max)
    }

    /// Basis of `{C : [C, g] = 0 for every g}` in `gl(n)`.
    pub fn commutant(&self) -> Vec<DMatrix<f64>> {
        let n = self.n;
        let id = DMatrix::<f64>::identity(n, n);
        // vec(C g − g C) = (gᵀ ⊗ I − I ⊗ g) vec(C) for column-major vec
        let blocks: Vec<DMatrix<f64>> = self
            .generators
            .iter()
            .map(|g| g.matrix().transpose().kronecker(&id) - id.kronecker(g.matrix()))
            .collect();
        let stacked = vstack(&blocks, n * n);
        let kernel = nullspace(&stacked);
        kernel
            .column_iter()
            .map(|c| unvectorize(n, c.as_slice()))
            .collect()
    }

    /// Dimension of the commutant on vectors; 1 means irreducible of real
    /// type.
    pub fn commutant_dim_on_vectors(&self) -> usize {
        self.commutant().len()
    }

    /// Whether ℝⁿ is irreducible: the symmetric part of the commutant
    /// consists of multiples of the identity.
    pub fn is_irreducible(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let sym: Vec<DVector<f64>> = self
            .commutant()
            .iter()
            .map(|c| vectorize(&((c + c.transpose()) * 0.5)))
            .collect();
        let mut m = DMatrix::zeros(self.n * self.n, sym.len());
        for (k, v) in sym.iter().enumerate() {
            m.set_column(k, v);
        }
        range(&m).ncols() == 1
    }

    /// Skew elements of the commutant, as a basis of `so(n) ∩ commutant`.
    pub fn skew_commutant(&self) -> Vec<DMatrix<f64>> {
        let n = self.n;
        let so_basis: Vec<DMatrix<f64>> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .map(|(a, b)| {
                let mut m = DMatrix::zeros(n, n);
                m[(b, a)] = 1.0;
                m[(a, b)] = -1.0;
                m
            })
            .collect();
        if so_basis.is_empty() {
            return Vec::new();
        }
        let mut blocks = Vec::new();
        for g in &self.generators {
            let mut block = DMatrix::zeros(n * n, so_basis.len());
            for (k, e) in so_basis.iter().enumerate() {
                let c = e * g.matrix() - g.matrix() * e;
                block.set_column(k, &vectorize(&c));
            }
            blocks.push(block);
        }
        let kernel = nullspace(&vstack(&blocks, so_basis.len()));
        kernel
            .column_iter()
            .map(|coeffs| {
                let mut m = DMatrix::zeros(n, n);
                for (k, e) in so_basis.iter().enumerate() {
                    m += e * coeffs[k];
                }
                m
            })
            .collect()
    }

    /// Search the skew commutant for an invariant orthogonal complex
    /// structure. Any invertible skew `C` commuting with the algebra yields
    /// one, `J = C (−C²)^{−1/2}`.
    pub fn is_kahler(&self) -> KahlerDetection {
        let n = self.n;
        let skew = self.skew_commutant();
        let none = |warning| KahlerDetection {
            flag: false,
            structure: None,
            warning,
        };
        if skew.is_empty() {
            return none(None);
        }
        if n % 2 == 1 {
            return none(Some("skew commutant is nonzero but the dimension is odd"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(KAHLER_SEED);
        let mut candidates: Vec<DMatrix<f64>> = skew.clone();
        for _ in 0..KAHLER_ATTEMPTS {
            let mut c = DMatrix::zeros(n, n);
            for s in &skew {
                c += s * rng.gen_range(-1.0..1.0);
            }
            candidates.push(c);
        }
        for c in candidates {
            if let Some(j) = polar_complex_structure(&c) {
                let commutes = self
                    .generators
                    .iter()
                    .all(|g| (&j * g.matrix() - g.matrix() * &j).amax() < 1e-8);
                if commutes {
                    return KahlerDetection {
                        flag: true,
                        structure: Some(SkewEndo::new(j)),
                        warning: None,
                    };
                }
            }
        }
        none(Some(
            "skew commutant is nonzero but contains no complex structure",
        ))
    }
}

/// Orthonormalise vectorised skew matrices.
fn orthonormal(n: usize, cols: &[DVector<f64>]) -> Vec<SkewEndo> {
    let mut m = DMatrix::zeros(n * n, cols.len());
    for (k, c) in cols.iter().enumerate() {
        m.set_column(k, c);
    }
    let basis = range(&m);
    basis
        .column_iter()
        .map(|c| SkewEndo::new(unvectorize(n, c.as_slice())))
        .collect()
}

/// `C (−C²)^{−1/2}` when `C` is invertible.
fn polar_complex_structure(c: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let n = c.nrows();
    let minus_sq = -(c * c);
    let eig = SymmetricEigen::new((&minus_sq + minus_sq.transpose()) * 0.5);
    let max = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    if max <= 0.0 || eig.eigenvalues.iter().any(|&l| l <= 1e-8 * max) {
        return None;
    }
    let inv_sqrt = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| 1.0 / libm::sqrt(l)));
    let root = &eig.eigenvectors * inv_sqrt * eig.eigenvectors.transpose();
    let j = c * root;
    let defect = (&j * &j + DMatrix::identity(n, n)).amax();
    (defect < 1e-8).then_some(j)
}
