//! The parallel subbundle iteration for Killing forms and the checks of the
//! identities it relies on.
//!
//! For a curvature tensor `R` and a degree `p` the starting pair is
//!
//! - `E₀ = { u ∈ Λᵖ : p R_{X,Y} u + X ⌟ R⁺(Y) u − Y ⌟ R⁺(X) u = 0 }`,
//! - `F₀ = { v ∈ Λᵖ⁺¹ : p R_{X,Y} v + R⁺(X)(Y ⌟ v) − R⁺(Y)(X ⌟ v) = 0 }`,
//!
//! and the refinement step keeps `u ∈ E_{k−1}` with `R⁺(X) u ∈ F_{k−1}` and
//! `v ∈ F_{k−1}` with `X ⌟ v ∈ E_{k−1}`. Every Killing p-form `u` on a
//! symmetric space gives a section `(u, du)` of the limit `(E, F)`.
//!
//! Residuals are reported relative to the curvature scale
//! `max(1, ‖op2‖_F)` (raised to the number of curvature factors involved).

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curvature::CurvatureTensor;
use crate::exterior::binomial;
use crate::holonomy::HolonomyAlgebra;
use crate::linalg::{hstack, nullspace, range, vstack, Subspace};
use crate::operators::{casimir_from, DegreeAction};
use crate::{Error, Result, DEFAULT_TOL};

/// Samples per randomised residual check.
pub const SAMPLES: usize = 32;
pub const DEFAULT_SEED: u64 = 0;

fn degree_range(p: usize, min: usize, max: usize) -> Result<()> {
    if p < min || p > max {
        return Err(Error::DegreeOutOfRange {
            degree: p,
            min,
            max,
        });
    }
    Ok(())
}

fn scale(r: &CurvatureTensor) -> f64 {
    r.norm().max(1.0)
}

fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(d, |_, _| rng.gen_range(-1.0..1.0));
        let norm = v.norm();
        if norm > 1e-3 || d == 0 {
            return if d == 0 { v } else { v / norm };
        }
    }
}

/// Largest column norm.
fn max_col_norm(m: &DMatrix<f64>) -> f64 {
    m.column_iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// The linear map of the `(k1)` condition for the pair `(e_i, e_j)` on
/// degree `p`.
fn k1_map(lower: &DegreeAction, i: usize, j: usize) -> DMatrix<f64> {
    let p = lower.p as f64;
    &lower.curvature[i][j] * p + &lower.contract_up[i] * &lower.r_plus[j]
        - &lower.contract_up[j] * &lower.r_plus[i]
}

/// The linear map of the `(k2)` condition for `(e_i, e_j)` on degree `p + 1`.
fn k2_map(lower: &DegreeAction, upper: &DegreeAction, i: usize, j: usize) -> DMatrix<f64> {
    let p = lower.p as f64;
    &upper.curvature[i][j] * p + &lower.r_plus[i] * &lower.contract_up[j]
        - &lower.r_plus[j] * &lower.contract_up[i]
}

/// Curvature actions on degrees `p` and `p + 1`.
struct Context {
    n: usize,
    p: usize,
    lower: DegreeAction,
    upper: DegreeAction,
}

impl Context {
    fn new(r: &CurvatureTensor, p: usize) -> Self {
        Context {
            n: r.n(),
            p,
            lower: DegreeAction::new(r, p),
            upper: DegreeAction::new(r, p + 1),
        }
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    fn e0(&self) -> Subspace {
        let d = binomial(self.n, self.p);
        let blocks: Vec<DMatrix<f64>> = self
            .pairs()
            .map(|(i, j)| k1_map(&self.lower, i, j))
            .collect();
        Subspace::from_orthonormal(self.n, self.p, nullspace(&vstack(&blocks, d)))
    }

    fn f0(&self) -> Subspace {
        let d = binomial(self.n, self.p + 1);
        let blocks: Vec<DMatrix<f64>> = self
            .pairs()
            .map(|(i, j)| k2_map(&self.lower, &self.upper, i, j))
            .collect();
        Subspace::from_orthonormal(self.n, self.p + 1, nullspace(&vstack(&blocks, d)))
    }

    fn refine(&self, e: &Subspace, f: &Subspace) -> (Subspace, Subspace) {
        let outside_f = f.complement_projector();
        let outside_e = e.complement_projector();
        let d_lo = binomial(self.n, self.p);
        let d_hi = binomial(self.n, self.p + 1);
        let e_blocks: Vec<DMatrix<f64>> =
            self.lower.r_plus.iter().map(|m| &outside_f * m).collect();
        let f_blocks: Vec<DMatrix<f64>> = self
            .lower
            .contract_up
            .iter()
            .map(|m| &outside_e * m)
            .collect();
        (
            e.restrict_kernel(&vstack(&e_blocks, d_lo)),
            f.restrict_kernel(&vstack(&f_blocks, d_hi)),
        )
    }

    fn fixed_point(&self) -> Result<FixedPoint> {
        let mut e = self.e0();
        let mut f = self.f0();
        let mut steps = alloc::vec![(0, e.dim(), f.dim())];
        let mut history = alloc::vec![(e.clone(), f.clone())];
        let cap = binomial(self.n, self.p) + binomial(self.n, self.p + 1) + 1;
        for k in 1..=cap {
            let (e_next, f_next) = self.refine(&e, &f);
            let stable = e_next.dim() == e.dim() && f_next.dim() == f.dim();
            steps.push((k, e_next.dim(), f_next.dim()));
            e = e_next;
            f = f_next;
            history.push((e.clone(), f.clone()));
            if stable {
                return Ok(FixedPoint {
                    e,
                    f,
                    trace: IterationTrace {
                        steps,
                        converged_at: k,
                    },
                    history,
                });
            }
        }
        Err(Error::NoConvergence { steps: cap })
    }

    /// Residual of `(c1)` on `E`.
    fn c1_residual(&self, e: &Subspace) -> f64 {
        if e.dim() == 0 {
            return 0.0;
        }
        self.pairs()
            .map(|(i, j)| max_col_norm(&(k1_map(&self.lower, i, j) * e.basis())))
            .fold(0.0, f64::max)
    }

    /// Residual of `(c2)` on `F`.
    fn c2_residual(&self, f: &Subspace) -> f64 {
        if f.dim() == 0 {
            return 0.0;
        }
        self.pairs()
            .map(|(i, j)| max_col_norm(&(k2_map(&self.lower, &self.upper, i, j) * f.basis())))
            .fold(0.0, f64::max)
    }

    fn r_plus_into(&self, e: &Subspace, f: &Subspace) -> f64 {
        self.lower
            .r_plus
            .iter()
            .map(|m| f.max_distance(&(m * e.basis())))
            .fold(0.0, f64::max)
    }

    fn contract_into(&self, f: &Subspace, e: &Subspace) -> f64 {
        self.lower
            .contract_up
            .iter()
            .map(|m| e.max_distance(&(m * f.basis())))
            .fold(0.0, f64::max)
    }

    fn r_plus_norm_on(&self, e: &Subspace) -> f64 {
        self.lower
            .r_plus
            .iter()
            .map(|m| max_col_norm(&(m * e.basis())))
            .fold(0.0, f64::max)
    }
}

/// Dimensions of `(E_k, F_k)` per step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationTrace {
    /// `(k, dim E_k, dim F_k)`, starting at `k = 0`.
    pub steps: Vec<(usize, usize, usize)>,
    /// First `k` whose dimensions equal those of step `k − 1`.
    pub converged_at: usize,
}

#[derive(Debug, Clone)]
pub struct FixedPoint {
    pub e: Subspace,
    pub f: Subspace,
    pub trace: IterationTrace,
    /// `(E_k, F_k)` for every step of the trace.
    pub history: Vec<(Subspace, Subspace)>,
}

/// Which side of the dichotomy a model lands on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `R⁺` annihilates `E` (or `F = 0`): candidate Killing forms are
    /// parallel.
    ParallelOnly,
    /// `E` is all of `Λᵖ` and the Weyl tensor vanishes.
    SpaceForm,
    /// Neither of the above.
    Intermediate,
    /// `E = Λᵖ` with nonzero Weyl tensor for `2 ≤ p ≤ n − 2`, which cannot
    /// happen for a valid curvature tensor.
    Inconsistent,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::ParallelOnly => "PARALLEL_ONLY",
            Branch::SpaceForm => "SPACE_FORM",
            Branch::Intermediate => "INTERMEDIATE",
            Branch::Inconsistent => "INCONSISTENT",
        }
    }
}

impl core::fmt::Display for Branch {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dims {
    pub e0: usize,
    pub f0: usize,
    pub e: usize,
    pub f: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Flags {
    pub kahler: bool,
    pub irreducible: bool,
    pub weyl_norm: f64,
    pub r_plus_vanishes_on_e: bool,
    pub holonomy_dim: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub model: String,
    pub n: usize,
    pub p: usize,
    pub dims: Dims,
    pub branch: Branch,
    pub flags: Flags,
    /// Check name and maximal residual, in evaluation order.
    pub residuals: Vec<(String, f64)>,
    pub trace: IterationTrace,
    pub warnings: Vec<String>,
}

impl ClassificationReport {
    pub fn with_model(mut self, model: &str) -> Self {
        self.model = model.to_string();
        self
    }

    pub fn residual(&self, name: &str) -> Option<f64> {
        self.residuals
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| *v)
    }
}

pub fn e0(r: &CurvatureTensor, p: usize) -> Result<Subspace> {
    degree_range(p, 1, r.n())?;
    Ok(Context::new(r, p).e0())
}

/// `F₀` in degree `p + 1`.
pub fn f0(r: &CurvatureTensor, p: usize) -> Result<Subspace> {
    degree_range(p, 1, r.n().saturating_sub(1))?;
    Ok(Context::new(r, p).f0())
}

/// Largest `‖p R_{e_i,e_j} u + e_i ⌟ R⁺(e_j) u − e_j ⌟ R⁺(e_i) u‖` over
/// pairs; zero exactly when `u ∈ E₀`.
pub fn k1_residual(r: &CurvatureTensor, p: usize, u: &DVector<f64>) -> Result<f64> {
    degree_range(p, 1, r.n())?;
    let ctx = Context::new(r, p);
    if u.len() != binomial(r.n(), p) {
        return Err(Error::DimensionMismatch {
            expected: binomial(r.n(), p),
            found: u.len(),
        });
    }
    Ok(ctx
        .pairs()
        .map(|(i, j)| (k1_map(&ctx.lower, i, j) * u).norm())
        .fold(0.0, f64::max))
}

/// One refinement step.
pub fn refine(
    e_prev: &Subspace,
    f_prev: &Subspace,
    r: &CurvatureTensor,
) -> Result<(Subspace, Subspace)> {
    if f_prev.degree() != e_prev.degree() + 1 {
        return Err(Error::DegreeMismatch {
            expected: e_prev.degree() + 1,
            found: f_prev.degree(),
        });
    }
    for s in [e_prev, f_prev] {
        if s.n() != r.n() {
            return Err(Error::DimensionMismatch {
                expected: r.n(),
                found: s.n(),
            });
        }
    }
    Ok(Context::new(r, e_prev.degree()).refine(e_prev, f_prev))
}

pub fn fixed_point(r: &CurvatureTensor, p: usize) -> Result<FixedPoint> {
    degree_range(p, 1, r.n().saturating_sub(1))?;
    Context::new(r, p).fixed_point()
}

pub fn classify(r: &CurvatureTensor, p: usize) -> Result<ClassificationReport> {
    classify_with_tol(r, p, DEFAULT_TOL)
}

pub fn classify_with_tol(r: &CurvatureTensor, p: usize, tol: f64) -> Result<ClassificationReport> {
    let n = r.n();
    degree_range(p, 1, n.saturating_sub(1))?;
    let ctx = Context::new(r, p);
    let fp = ctx.fixed_point()?;
    let (e0_dim, f0_dim) = (fp.history[0].0.dim(), fp.history[0].1.dim());
    let s = scale(r);
    let h = HolonomyAlgebra::generate(r);
    let kahler = h.is_kahler();
    let weyl_norm = r.weyl_norm();

    let r_plus_on_e = ctx.r_plus_norm_on(&fp.e);
    let r_plus_vanishes = r_plus_on_e < tol * s;
    let full = fp.e.dim() == binomial(n, p);
    let weyl_vanishes = weyl_norm < tol * s;
    let branch = if r_plus_vanishes || fp.f.dim() == 0 {
        Branch::ParallelOnly
    } else if full && weyl_vanishes {
        Branch::SpaceForm
    } else if full && p >= 2 && p + 2 <= n {
        Branch::Inconsistent
    } else {
        Branch::Intermediate
    };

    let mut residuals = Vec::new();
    let mut push = |name: &str, v: f64| residuals.push((name.to_string(), v));
    push("c1", ctx.c1_residual(&fp.e) / s);
    push("c2", ctx.c2_residual(&fp.f) / s);
    push("c31_r_plus_E_in_F", ctx.r_plus_into(&fp.e, &fp.f) / s);
    push("c31_contract_F_in_E", ctx.contract_into(&fp.f, &fp.e));
    push("holonomy_invariance_E", h.invariance_residual(&fp.e));
    push("holonomy_invariance_F", h.invariance_residual(&fp.f));
    push("r_plus_on_E", r_plus_on_e / s);
    push("lemma_l1", check_lemma_l1(r, p)?);

    let mut warnings = Vec::new();
    if let Some(w) = kahler.warning {
        warnings.push(w.to_string());
    }
    Ok(ClassificationReport {
        model: String::new(),
        n,
        p,
        dims: Dims {
            e0: e0_dim,
            f0: f0_dim,
            e: fp.e.dim(),
            f: fp.f.dim(),
        },
        branch,
        flags: Flags {
            kahler: kahler.flag,
            irreducible: h.is_irreducible(),
            weyl_norm,
            r_plus_vanishes_on_e: r_plus_vanishes,
            holonomy_dim: h.dim(),
        },
        residuals,
        trace: fp.trace,
        warnings,
    })
}

/// Smallest `k ≥ 1` with `R⁺(Y₁)…R⁺(Y_k) E = 0`, searched up to `k = n − p`.
/// `None` means the powers of `R⁺` reach the top degree without vanishing
/// first, which forces `E = Λᵖ`.
pub fn nilpotency_degree(r: &CurvatureTensor, e: &Subspace) -> Option<usize> {
    let n = r.n();
    let p = e.degree();
    let mut current = e.basis().clone();
    for k in 1..=(n.saturating_sub(p)).max(1) {
        let action = DegreeAction::new(r, p + k - 1);
        let d = binomial(n, p + k);
        let images: Vec<DMatrix<f64>> = action.r_plus.iter().map(|m| m * &current).collect();
        current = range(&hstack(&images, d));
        if current.ncols() == 0 {
            return Some(k);
        }
    }
    None
}

/// Defect of `R⁺(X)(Y⌟u) − R⁺(Y)(X⌟u) = X⌟R⁺(Y)u − Y⌟R⁺(X)u + R_{X,Y}u`
/// over basis pairs and random unit `u` of degree `p`.
pub fn check_lemma_l1(r: &CurvatureTensor, p: usize) -> Result<f64> {
    check_lemma_l1_seeded(r, p, DEFAULT_SEED)
}

pub fn check_lemma_l1_seeded(r: &CurvatureTensor, p: usize, seed: u64) -> Result<f64> {
    let n = r.n();
    degree_range(p, 0, n)?;
    let here = DegreeAction::new(r, p);
    let below = (p > 0).then(|| DegreeAction::new(r, p - 1));
    let d = here.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<DVector<f64>> = (0..SAMPLES).map(|_| random_unit(&mut rng, d)).collect();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let mut defect = &here.contract_up[i] * &here.r_plus[j]
                - &here.contract_up[j] * &here.r_plus[i]
                + &here.curvature[i][j];
            if let Some(below) = &below {
                defect -=
                    &below.r_plus[i] * &here.contract[j] - &below.r_plus[j] * &here.contract[i];
            }
            for u in &samples {
                worst = worst.max((&defect * u).norm());
            }
        }
    }
    Ok(worst / scale(r))
}

fn invariance_under_curvature(r: &CurvatureTensor, action: &DegreeAction, e: &Subspace) -> f64 {
    let n = r.n();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.max(e.max_distance(&(&action.curvature[i][j] * e.basis())));
        }
    }
    worst / scale(r)
}

fn require_invariant(r: &CurvatureTensor, action: &DegreeAction, e: &Subspace) -> Result<()> {
    let residual = invariance_under_curvature(r, action, e);
    if residual > DEFAULT_TOL {
        return Err(Error::NotInvariant { residual });
    }
    Ok(())
}

fn check_subspace(r: &CurvatureTensor, e: &Subspace) -> Result<()> {
    if e.n() != r.n() {
        return Err(Error::DimensionMismatch {
            expected: r.n(),
            found: e.n(),
        });
    }
    Ok(())
}

/// The induced `[R⁺, 𝓘] : TM ⊗ TM → Hom(E, Λᵖ/E)` is symmetric; returns
/// the largest antisymmetric part.
pub fn check_sym_corollary(r: &CurvatureTensor, e: &Subspace) -> Result<f64> {
    check_subspace(r, e)?;
    let p = e.degree();
    let here = DegreeAction::new(r, p);
    require_invariant(r, &here, e)?;
    if e.dim() == 0 || e.is_full() || p == 0 {
        return Ok(0.0);
    }
    let below = DegreeAction::new(r, p - 1);
    let n = r.n();
    // [R⁺, 𝓘](X ⊗ Y) = R⁺(X) 𝓘(Y) − 𝓘(X) R⁺(Y) on degree p
    let commutator = |x: usize, y: usize| {
        &below.r_plus[x] * &here.contract[y] - &here.contract_up[x] * &here.r_plus[y]
    };
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let skew = commutator(i, j) - commutator(j, i);
            worst = worst.max(e.max_distance(&(skew * e.basis())));
        }
    }
    Ok(worst / scale(r))
}

/// `Z ⌟ Y ⌟ R⁺(X) u ∈ 𝓘(E) + 𝓘R⁺𝓘(E)` for `u ∈ E`; returns the largest
/// component outside that sum.
pub fn check_lemma2(r: &CurvatureTensor, e: &Subspace) -> Result<f64> {
    check_subspace(r, e)?;
    let p = e.degree();
    let here = DegreeAction::new(r, p);
    require_invariant(r, &here, e)?;
    if e.dim() == 0 || p == 0 {
        return Ok(0.0);
    }
    let n = r.n();
    let below = DegreeAction::new(r, p - 1);
    let d_below = binomial(n, p - 1);
    let mut spanning = Vec::new();
    for a in 0..n {
        let contracted = &here.contract[a] * e.basis();
        for b in 0..n {
            let raised = &below.r_plus[b] * &contracted;
            for c in 0..n {
                spanning.push(&here.contract[c] * &raised);
            }
        }
        spanning.push(contracted);
    }
    let s = Subspace::from_span(n, p - 1, &hstack(&spanning, d_below));
    let mut worst: f64 = 0.0;
    for x in 0..n {
        let raised = &here.r_plus[x] * e.basis();
        for y in 0..n {
            let once = &here.contract_up[y] * &raised;
            for z in 0..n {
                worst = worst.max(s.max_distance(&(&here.contract[z] * &once)));
            }
        }
    }
    Ok(worst / scale(r))
}

/// Sampled check of `X₁ ⌟ … ⌟ X_k ⌟ R⁺(Y₁) … R⁺(Y_k) u ∈ E`.
pub fn check_cont(r: &CurvatureTensor, e: &Subspace, k: usize) -> Result<f64> {
    check_cont_seeded(r, e, k, DEFAULT_SEED)
}

pub fn check_cont_seeded(r: &CurvatureTensor, e: &Subspace, k: usize, seed: u64) -> Result<f64> {
    check_subspace(r, e)?;
    let n = r.n();
    let p = e.degree();
    if e.dim() == 0 || k == 0 || p + k > n {
        return Ok(0.0);
    }
    let actions: Vec<DegreeAction> = (p..p + k).map(|q| DegreeAction::new(r, q)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..SAMPLES {
        let coeffs = random_unit(&mut rng, e.dim());
        let mut w = e.basis() * coeffs;
        for action in &actions {
            let y = random_unit(&mut rng, n);
            let mut next = DVector::zeros(binomial(n, action.p + 1));
            for i in 0..n {
                next += &action.r_plus[i] * &w * y[i];
            }
            w = next;
        }
        for action in actions.iter().rev() {
            let x = random_unit(&mut rng, n);
            let mut next = DVector::zeros(action.dim());
            for i in 0..n {
                next += &action.contract_up[i] * &w * x[i];
            }
            w = next;
        }
        worst = worst.max(e.distance_to(&w));
    }
    Ok(worst / libm::pow(scale(r), k as f64))
}

/// Result of a check that only applies under hypotheses.
#[derive(Debug, Clone, PartialEq)]
pub enum Applicability {
    Residual(f64),
    Skipped(&'static str),
}

impl Applicability {
    pub fn residual(&self) -> Option<f64> {
        match self {
            Applicability::Residual(v) => Some(*v),
            Applicability::Skipped(_) => None,
        }
    }
}

/// `⟨X ⌟ v_α, Y ⌟ v_β⟩ = (q+1)/n δ_{αβ} ⟨X, Y⟩` for an orthonormal basis of
/// the forms of degree `q + 1` fixed by the algebra. Applies when that space
/// is nonzero and the algebra acts irreducibly of real type, non-Kähler.
pub fn check_p1(h: &HolonomyAlgebra, q: usize) -> Result<Applicability> {
    let n = h.n();
    if q + 1 > n {
        return Err(Error::DegreeOutOfRange {
            degree: q,
            min: 0,
            max: n.saturating_sub(1),
        });
    }
    let w = h.trivial_summand(q + 1)?;
    if w.dim() == 0 {
        return Ok(Applicability::Skipped("no invariant forms in degree q + 1"));
    }
    if h.commutant_dim_on_vectors() != 1 {
        return Ok(Applicability::Skipped(
            "holonomy is not irreducible of real type",
        ));
    }
    if h.is_kahler().flag {
        return Ok(Applicability::Skipped(
            "holonomy preserves a complex structure",
        ));
    }
    let coefficient = (q + 1) as f64 / n as f64;
    let contracted: Vec<DMatrix<f64>> = (0..n)
        .map(|i| crate::exterior::contraction_matrix(n, i, q + 1) * w.basis())
        .collect();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let gram = contracted[i].transpose() * &contracted[j];
            for a in 0..w.dim() {
                for b in 0..w.dim() {
                    let expected = if a == b && i == j { coefficient } else { 0.0 };
                    worst = worst.max((gram[(a, b)] - expected).abs());
                }
            }
        }
    }
    Ok(Applicability::Residual(worst))
}

/// Comparison of the forms fixed by the holonomy algebra with the kernel of
/// the Casimir on one degree.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelComparison {
    pub joint_kernel_dim: usize,
    pub casimir_kernel_dim: usize,
    /// Frobenius distance of the two orthogonal projectors.
    pub distance: f64,
}

pub fn check_casimir_kernel(
    r: &CurvatureTensor,
    h: &HolonomyAlgebra,
    q: usize,
) -> Result<KernelComparison> {
    degree_range(q, 0, r.n())?;
    let joint = h.trivial_summand(q)?;
    let action = DegreeAction::new(r, q);
    let casimir = casimir_from(&action);
    let kernel = Subspace::from_orthonormal(r.n(), q, nullspace(&casimir));
    Ok(KernelComparison {
        joint_kernel_dim: joint.dim(),
        casimir_kernel_dim: kernel.dim(),
        distance: joint.distance(&kernel),
    })
}

/// Largest `‖R_{e_i,e_j} w‖` outside `s`, relative to the curvature scale.
pub fn curvature_invariance_residual(r: &CurvatureTensor, s: &Subspace) -> f64 {
    invariance_under_curvature(r, &DegreeAction::new(r, s.degree()), s)
}
