//! Algebraic curvature tensors, stored as symmetric operators on 2-forms.
//!
//! Components follow `R_{ijkl} = ⟨op2(e_i ∧ e_j), e_k ∧ e_l⟩`, so the unit
//! round sphere has `op2 = id`, `R_{ijij} = 1` for `i ≠ j` and
//! `Ric_{jk} = Σ_i R_{ijik} = (n − 1) δ_{jk}`.

use alloc::vec::Vec;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{binomial, blade_index, Multivector};
use crate::{Error, Result, MAX_DIM};

/// Tolerance for the symmetry and Bianchi invariants (relative to `‖op2‖`).
pub const VALIDATION_TOL: f64 = 1e-10;

/// Tolerance used to decide whether the Ricci tensor is a multiple of the
/// metric.
pub const EINSTEIN_TOL: f64 = 1e-8;

/// Index of `e_i ∧ e_j` in the degree 2 basis with the orientation sign,
/// or `None` when `i == j`.
pub fn pair_index(n: usize, i: usize, j: usize) -> Option<(usize, f64)> {
    match i.cmp(&j) {
        core::cmp::Ordering::Less => Some((blade_index(n, (1 << i) | (1 << j)), 1.0)),
        core::cmp::Ordering::Greater => Some((blade_index(n, (1 << i) | (1 << j)), -1.0)),
        core::cmp::Ordering::Equal => None,
    }
}

/// All `(i, j)` with `i < j`, in the lexicographic order of the degree 2
/// basis.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(binomial(n, 2));
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

fn relative(residual: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        residual / scale
    } else {
        residual
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureTensor {
    n: usize,
    op2: DMatrix<f64>,
}

/// Orthogonal splitting into scalar, traceless Ricci and Weyl parts.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureDecomposition {
    pub scalar_part: CurvatureTensor,
    pub traceless_ricci_part: CurvatureTensor,
    pub weyl_part: CurvatureTensor,
    pub scalar_norm: f64,
    pub traceless_ricci_norm: f64,
    pub weyl_norm: f64,
}

impl CurvatureTensor {
    /// Validate a symmetric operator on 2-forms.
    pub fn from_op2(n: usize, op2: DMatrix<f64>) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge { n, max: MAX_DIM });
        }
        let d = binomial(n, 2);
        if op2.nrows() != d || op2.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: op2.nrows(),
            });
        }
        let r = CurvatureTensor { n, op2 };
        let asym = r.symmetry_residual();
        if asym > VALIDATION_TOL {
            return Err(Error::NotSymmetric { residual: asym });
        }
        let bianchi = r.bianchi_residual();
        if bianchi > VALIDATION_TOL {
            return Err(Error::BianchiViolation { residual: bianchi });
        }
        Ok(r)
    }

    /// Build from `(i, j, k, l, R_{ijkl})` entries with zero based indices.
    ///
    /// Each entry also fixes the components related to it by
    /// `R_{ijkl} = −R_{jikl} = −R_{ijlk}`; the mirror `R_{klij}` is filled in
    /// when it is not given explicitly.
    pub fn from_components(
        n: usize,
        entries: &[(usize, usize, usize, usize, f64)],
    ) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge { n, max: MAX_DIM });
        }
        let d = binomial(n, 2);
        let mut values: DMatrix<f64> = DMatrix::zeros(d, d);
        let mut set: DMatrix<u8> = DMatrix::zeros(d, d);
        let scale = entries.iter().map(|e| e.4.abs()).fold(1.0, f64::max);
        for &(i, j, k, l, value) in entries {
            for index in [i, j, k, l] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            let (a, b) = match (pair_index(n, i, j), pair_index(n, k, l)) {
                (Some((a, sa)), Some((b, sb))) => ((a, sa), (b, sb)),
                _ => {
                    if value != 0.0 {
                        return Err(Error::InconsistentEntry { i, j, k, l });
                    }
                    continue;
                }
            };
            let v = value * a.1 * b.1;
            let (a, b) = (a.0, b.0);
            if set[(a, b)] == 1 && (values[(a, b)] - v).abs() > VALIDATION_TOL * scale {
                return Err(Error::InconsistentEntry { i, j, k, l });
            }
            values[(a, b)] = v;
            set[(a, b)] = 1;
        }
        for a in 0..d {
            for b in 0..d {
                if set[(a, b)] == 1 && set[(b, a)] == 0 {
                    values[(b, a)] = values[(a, b)];
                }
            }
        }
        CurvatureTensor::from_op2(n, values)
    }

    /// Nonzero components `(i, j, k, l, R_{ijkl})` with `i < j`, `k < l` and
    /// `(i, j) ≤ (k, l)`; enough to rebuild the tensor.
    pub fn to_components(&self) -> Vec<(usize, usize, usize, usize, f64)> {
        let ps = pairs(self.n);
        let mut out = Vec::new();
        for (a, &(i, j)) in ps.iter().enumerate() {
            for (b, &(k, l)) in ps.iter().enumerate().skip(a) {
                let v = self.op2[(a, b)];
                if v != 0.0 {
                    out.push((i, j, k, l, v));
                }
            }
        }
        out
    }

    pub fn flat(n: usize) -> Self {
        CurvatureTensor::constant_curvature(n, 0.0)
    }

    /// Constant sectional curvature `kappa`.
    pub fn constant_curvature(n: usize, kappa: f64) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        let d = binomial(n, 2);
        CurvatureTensor {
            n,
            op2: DMatrix::identity(d, d) * kappa,
        }
    }

    /// Fubini–Study curvature of `CPᵐ` (real dimension `2m`) with holomorphic
    /// sectional curvature 4 and complex structure `J e_{2k} = e_{2k+1}`
    /// (zero based).
    ///
    /// `op2(X∧Y) = X∧Y + JX∧JY + 2 ⟨X∧Y, κ⟩ κ` with `κ` the Kähler form.
    pub fn fubini_study(m: usize) -> Self {
        let n = 2 * m;
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        let j = standard_complex_structure(m);
        let kahler = kahler_form(m);
        let ps = pairs(n);
        let d = ps.len();
        let mut op2 = DMatrix::zeros(d, d);
        for (col, &(a, b)) in ps.iter().enumerate() {
            let xa = Multivector::e(n, a);
            let xb = Multivector::e(n, b);
            let jx = Multivector::from_grade(n, 1, j.column(a).iter().copied().collect()).unwrap();
            let jy = Multivector::from_grade(n, 1, j.column(b).iter().copied().collect()).unwrap();
            let xy = xa.wedge(&xb).unwrap();
            let mut image = &xy + &jx.wedge(&jy).unwrap();
            let k = xy.inner(&kahler).unwrap();
            image += &(&kahler * (2.0 * k));
            for (row, c) in image.grade_coeffs(2).iter().enumerate() {
                op2[(row, col)] = *c;
            }
        }
        CurvatureTensor { n, op2 }
    }

    /// Curvature of the Riemannian product: block diagonal on `ℝ^{n1+n2}`.
    pub fn product(first: &CurvatureTensor, second: &CurvatureTensor) -> Self {
        let n = first.n + second.n;
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        let d = binomial(n, 2);
        let mut op2 = DMatrix::zeros(d, d);
        for (factor, offset) in [(first, 0), (second, first.n)] {
            let ps = pairs(factor.n);
            for (a, &(i, j)) in ps.iter().enumerate() {
                let (ta, _) = pair_index(n, i + offset, j + offset).unwrap();
                for (b, &(k, l)) in ps.iter().enumerate() {
                    let (tb, _) = pair_index(n, k + offset, l + offset).unwrap();
                    op2[(ta, tb)] = factor.op2[(a, b)];
                }
            }
        }
        CurvatureTensor { n, op2 }
    }

    /// Extend by zero to `ℝ^{n_new}`: every component touching an index
    /// `≥ self.n` vanishes.
    pub fn embed_trivial(&self, n_new: usize) -> Result<Self> {
        if n_new < self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: n_new,
            });
        }
        if n_new > MAX_DIM {
            return Err(Error::DimensionTooLarge {
                n: n_new,
                max: MAX_DIM,
            });
        }
        Ok(CurvatureTensor::product(
            self,
            &CurvatureTensor::flat(n_new - self.n),
        ))
    }

    /// The four dimensional self-dual Weyl tensor with `R(α) = α`,
    /// `R(β) = −β`, `R(γ) = 0` and zero on anti-self-dual forms, where
    /// `α = e12 + e34`, `β = e13 − e24`, `γ = e14 + e23` (one based).
    pub fn self_dual_weyl4() -> Self {
        let [alpha, beta, _] = self_dual_basis();
        let a = alpha.grade_vector(2);
        let b = beta.grade_vector(2);
        // ‖α‖² = ‖β‖² = 2, hence the ½
        let op2 = (&a * a.transpose() - &b * b.transpose()) * 0.5;
        CurvatureTensor { n: 4, op2 }
    }

    /// Random tensor, deterministic in `seed`: a uniform symmetric operator
    /// projected onto the Bianchi kernel.
    pub fn random(n: usize, seed: u64) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = binomial(n, 2);
        let mut m = DMatrix::zeros(d, d);
        for a in 0..d {
            for b in a..d {
                let v: f64 = rng.gen_range(-1.0..1.0);
                m[(a, b)] = v;
                m[(b, a)] = v;
            }
        }
        CurvatureTensor {
            n,
            op2: bianchi_projection(n, &m),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn op2(&self) -> &DMatrix<f64> {
        &self.op2
    }

    /// Frobenius norm of `op2`.
    pub fn norm(&self) -> f64 {
        self.op2.norm()
    }

    /// `R_{ijkl}` with zero based indices.
    pub fn component(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        match (pair_index(self.n, i, j), pair_index(self.n, k, l)) {
            (Some((a, sa)), Some((b, sb))) => sa * sb * self.op2[(a, b)],
            _ => 0.0,
        }
    }

    /// Apply `op2` to a 2-form.
    pub fn apply(&self, omega: &Multivector) -> Result<Multivector> {
        if omega.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: omega.n(),
            });
        }
        let image = &self.op2 * omega.grade_vector(2);
        Multivector::from_dvector(self.n, 2, &image)
    }

    /// Relative defect of `R_{ijkl} = R_{klij}`.
    pub fn symmetry_residual(&self) -> f64 {
        let defect = (&self.op2 - self.op2.transpose()).amax();
        relative(defect, self.op2.amax())
    }

    /// Relative defect of `R_{ijkl} + R_{iklj} + R_{iljk} = 0`.
    pub fn bianchi_residual(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        let b = self.component(i, j, k, l)
                            + self.component(i, k, l, j)
                            + self.component(i, l, j, k);
                        worst = worst.max(b.abs());
                    }
                }
            }
        }
        relative(worst, self.op2.amax())
    }

    /// `Ric_{jk} = Σ_i R_{ijik}`.
    pub fn ricci(&self) -> DMatrix<f64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |j, k| {
            (0..n).map(|i| self.component(i, j, i, k)).sum()
        })
    }

    pub fn scalar_curvature(&self) -> f64 {
        self.ricci().trace()
    }

    /// `r` with `Ric = r · id`, when such `r` exists.
    pub fn einstein_constant(&self) -> Option<f64> {
        let n = self.n;
        if n == 0 {
            return Some(0.0);
        }
        let ric = self.ricci();
        let r = ric.trace() / n as f64;
        let defect = (&ric - DMatrix::identity(n, n) * r).norm();
        if defect <= EINSTEIN_TOL * ric.norm().max(1.0) {
            Some(r)
        } else {
            None
        }
    }

    pub fn decompose(&self) -> CurvatureDecomposition {
        let n = self.n;
        let d = binomial(n, 2);
        let ric = self.ricci();
        let s = ric.trace();
        let scalar_op = if n >= 2 {
            DMatrix::identity(d, d) * (s / (n * (n - 1)) as f64)
        } else {
            DMatrix::zeros(d, d)
        };
        let traceless_op = if n >= 3 {
            let ric0 = &ric - DMatrix::identity(n, n) * (s / n as f64);
            kulkarni_nomizu_with_metric(n, &(ric0 / (n - 2) as f64))
        } else {
            DMatrix::zeros(d, d)
        };
        let weyl_op = &self.op2 - &scalar_op - &traceless_op;
        let part = |op2: DMatrix<f64>| CurvatureTensor { n, op2 };
        CurvatureDecomposition {
            scalar_norm: scalar_op.norm(),
            traceless_ricci_norm: traceless_op.norm(),
            weyl_norm: weyl_op.norm(),
            scalar_part: part(scalar_op),
            traceless_ricci_part: part(traceless_op),
            weyl_part: part(weyl_op),
        }
    }

    pub fn weyl_part(&self) -> CurvatureTensor {
        self.decompose().weyl_part
    }

    pub fn weyl_norm(&self) -> f64 {
        self.decompose().weyl_norm
    }

    pub fn max_abs_diff(&self, other: &CurvatureTensor) -> f64 {
        (&self.op2 - &other.op2).amax()
    }
}

impl core::ops::Add for &CurvatureTensor {
    type Output = CurvatureTensor;

    fn add(self, rhs: &CurvatureTensor) -> CurvatureTensor {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        CurvatureTensor {
            n: self.n,
            op2: &self.op2 + &rhs.op2,
        }
    }
}

impl core::ops::Mul<f64> for &CurvatureTensor {
    type Output = CurvatureTensor;

    fn mul(self, c: f64) -> CurvatureTensor {
        CurvatureTensor {
            n: self.n,
            op2: &self.op2 * c,
        }
    }
}

/// `op2` of `h ⊙ g`: `e_a ∧ e_b ↦ h e_a ∧ e_b + e_a ∧ h e_b`.
fn kulkarni_nomizu_with_metric(n: usize, h: &DMatrix<f64>) -> DMatrix<f64> {
    let ps = pairs(n);
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    DMatrix::from_fn(ps.len(), ps.len(), |row, col| {
        let (i, j) = ps[col];
        let (k, l) = ps[row];
        h[(i, k)] * delta(j, l) - h[(i, l)] * delta(j, k) + delta(i, k) * h[(j, l)]
            - delta(i, l) * h[(j, k)]
    })
}

/// Remove the totally antisymmetric part of a symmetric operator on 2-forms.
/// This is the orthogonal projection onto the Bianchi kernel.
pub fn bianchi_projection(n: usize, op2: &DMatrix<f64>) -> DMatrix<f64> {
    let r = CurvatureTensor {
        n,
        op2: op2.clone(),
    };
    let mut out = op2.clone();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let a = (r.component(i, j, k, l)
                        + r.component(i, k, l, j)
                        + r.component(i, l, j, k))
                        / 3.0;
                    // alternating tensor: +a on (ij,kl), −a on (ik,jl), +a on (il,jk)
                    for (p, q, s) in [
                        ((i, j), (k, l), 1.0),
                        ((i, k), (j, l), -1.0),
                        ((i, l), (j, k), 1.0),
                    ] {
                        let (x, _) = pair_index(n, p.0, p.1).unwrap();
                        let (y, _) = pair_index(n, q.0, q.1).unwrap();
                        out[(x, y)] -= s * a;
                        out[(y, x)] -= s * a;
                    }
                }
            }
        }
    }
    out
}

/// `J e_{2k} = e_{2k+1}` on `ℝ^{2m}` (zero based), as a matrix acting on
/// column vectors.
pub fn standard_complex_structure(m: usize) -> DMatrix<f64> {
    let n = 2 * m;
    let mut j = DMatrix::zeros(n, n);
    for k in 0..m {
        j[(2 * k + 1, 2 * k)] = 1.0;
        j[(2 * k, 2 * k + 1)] = -1.0;
    }
    j
}

/// `κ = Σ_k e_{2k} ∧ e_{2k+1}`, so that `X ⌟ κ = J X`.
pub fn kahler_form(m: usize) -> Multivector {
    let n = 2 * m;
    let mut k = Multivector::zero(n);
    for t in 0..m {
        k += &Multivector::blade(n, &[2 * t, 2 * t + 1]);
    }
    k
}

/// `[α, β, γ]` spanning the self-dual 2-forms of ℝ⁴:
/// `α = e12 + e34`, `β = e13 − e24`, `γ = e14 + e23` (one based).
pub fn self_dual_basis() -> [Multivector; 3] {
    let e = |i, j| Multivector::blade(4, &[i, j]);
    [
        &e(0, 1) + &e(2, 3),
        &e(0, 2) - &e(1, 3),
        &e(0, 3) + &e(1, 2),
    ]
}

/// `[e12 − e34, e13 + e24, e14 − e23]`.
pub fn anti_self_dual_basis() -> [Multivector; 3] {
    let e = |i, j| Multivector::blade(4, &[i, j]);
    [
        &e(0, 1) - &e(2, 3),
        &e(0, 2) + &e(1, 3),
        &e(0, 3) - &e(1, 2),
    ]
}
