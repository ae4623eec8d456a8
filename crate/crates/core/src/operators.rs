//! Curvature acting on forms.
//!
//! A 2-form `ω` is identified with the skew endomorphism `A_ω X = X ⌟ ω`.
//! The curvature endomorphism is `R_{X,Y} = −A_{op2(X∧Y)}`; the sign makes
//! the unit sphere satisfy `R_{X,Y}Z = ⟨Y,Z⟩X − ⟨X,Z⟩Y`, so that the
//! Casimir `q(R)` agrees with `Ric` on vectors and is nonnegative on compact
//! type models.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};

use crate::curvature::{pair_index, CurvatureTensor};
use crate::exterior::{
    binomial, blade_index, blades, contraction_matrix, wedge_matrix, Multivector, Vector,
};
use crate::{Error, Result};

pub const COMPLEX_STRUCTURE_TOL: f64 = 1e-10;

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        });
    }
    Ok(())
}

fn check_degree(p: usize, min: usize, max: usize) -> Result<()> {
    if p < min || p > max {
        return Err(Error::DegreeOutOfRange {
            degree: p,
            min,
            max,
        });
    }
    Ok(())
}

/// Skew-symmetric endomorphism of ℝⁿ, acting on column vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewEndo {
    matrix: DMatrix<f64>,
}

impl SkewEndo {
    /// Takes the skew part of `matrix`.
    pub fn new(matrix: DMatrix<f64>) -> Self {
        assert!(matrix.is_square(), "endomorphism must be square");
        let skew = (&matrix - matrix.transpose()) * 0.5;
        SkewEndo { matrix: skew }
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `A_ω X = X ⌟ ω`.
    pub fn from_two_form(omega: &Multivector) -> Self {
        let n = omega.n();
        let mut m = DMatrix::zeros(n, n);
        for a in 0..n {
            let image = omega.contract(&Vector::basis(n, a)).unwrap();
            for (b, c) in image.grade_coeffs(1).iter().enumerate() {
                m[(b, a)] = *c;
            }
        }
        SkewEndo { matrix: m }
    }

    pub fn to_two_form(&self) -> Multivector {
        let n = self.n();
        let mut omega = Multivector::zero(n);
        for a in 0..n {
            for b in a + 1..n {
                omega += &(&Multivector::blade(n, &[a, b]) * self.matrix[(b, a)]);
            }
        }
        omega
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        same_dim(self.n(), x.n())?;
        let v = &self.matrix * DVector::from_column_slice(x.components());
        Ok(Vector::new(v.iter().copied().collect()))
    }

    pub fn bracket(&self, other: &SkewEndo) -> SkewEndo {
        SkewEndo {
            matrix: &self.matrix * &other.matrix - &other.matrix * &self.matrix,
        }
    }
}

/// Linear map from degree `p_in` to degree `p_out` forms.
#[derive(Debug, Clone, PartialEq)]
pub struct FormOperator {
    pub n: usize,
    pub p_in: usize,
    pub p_out: usize,
    pub matrix: DMatrix<f64>,
}

impl FormOperator {
    pub fn new(n: usize, p_in: usize, p_out: usize, matrix: DMatrix<f64>) -> Self {
        debug_assert_eq!(matrix.nrows(), binomial(n, p_out));
        debug_assert_eq!(matrix.ncols(), binomial(n, p_in));
        FormOperator {
            n,
            p_in,
            p_out,
            matrix,
        }
    }

    /// Applies to the degree `p_in` part of `u`.
    pub fn apply(&self, u: &Multivector) -> Result<Multivector> {
        same_dim(self.n, u.n())?;
        if self.p_out > self.n {
            return Ok(Multivector::zero(self.n));
        }
        let image = &self.matrix * u.grade_vector(self.p_in);
        Multivector::from_dvector(self.n, self.p_out, &image)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.p_in == self.p_out && (&self.matrix - self.matrix.transpose()).amax() <= tol
    }
}

/// Derivation extension of `A ∈ so(n)` to forms:
/// `ρ(A)(x_1 ∧ … ∧ x_p) = Σ_k x_1 ∧ … ∧ A x_k ∧ … ∧ x_p`.
pub fn rho_action(a: &SkewEndo, u: &Multivector) -> Result<Multivector> {
    let n = a.n();
    same_dim(n, u.n())?;
    let images: Vec<Multivector> = (0..n)
        .map(|i| {
            Multivector::from_grade(n, 1, a.matrix.column(i).iter().copied().collect()).unwrap()
        })
        .collect();
    let mut out = Multivector::zero(n);
    for (mask, c) in u.terms() {
        let indices: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        for slot in 0..indices.len() {
            let mut term = Multivector::scalar(n, c);
            for (k, &i) in indices.iter().enumerate() {
                let factor = if k == slot {
                    images[i].clone()
                } else {
                    Multivector::e(n, i)
                };
                term = term.wedge(&factor)?;
            }
            out += &term;
        }
    }
    Ok(out)
}

/// Matrix of `ρ(A)` on degree `p`: each factor `e_k` of a blade is replaced
/// by `Σ_l A_{lk} e_l`.
pub fn rho_matrix(a: &SkewEndo, p: usize) -> DMatrix<f64> {
    let n = a.n();
    let masks = blades(n, p);
    let mut m = DMatrix::zeros(masks.len(), masks.len());
    for (col, &mask) in masks.iter().enumerate() {
        for k in (0..n).filter(|k| mask & (1 << k) != 0) {
            let rest = mask & !(1u32 << k);
            for l in (0..n).filter(|l| rest & (1 << l) == 0) {
                let v = a.matrix[(l, k)];
                if v == 0.0 {
                    continue;
                }
                let (lo, hi) = if k < l { (k, l) } else { (l, k) };
                let between = if hi > lo + 1 {
                    (rest >> (lo + 1)) & ((1u32 << (hi - lo - 1)) - 1)
                } else {
                    0
                };
                let sign = if between.count_ones() % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                m[(blade_index(n, rest | (1 << l)), col)] += sign * v;
            }
        }
    }
    m
}

/// `R_{e_i, e_j}` as a skew endomorphism of ℝⁿ.
pub fn curvature_endo(r: &CurvatureTensor, i: usize, j: usize) -> SkewEndo {
    let n = r.n();
    match pair_index(n, i, j) {
        None => SkewEndo {
            matrix: DMatrix::zeros(n, n),
        },
        Some((a, sign)) => {
            let column: Vec<f64> = r.op2().column(a).iter().map(|c| -sign * c).collect();
            let omega = Multivector::from_grade(n, 2, column).unwrap();
            SkewEndo::from_two_form(&omega)
        }
    }
}

/// `R_{X,Y}` as a skew endomorphism of ℝⁿ.
pub fn curvature_endo_xy(r: &CurvatureTensor, x: &Vector, y: &Vector) -> Result<SkewEndo> {
    let n = r.n();
    same_dim(n, x.n())?;
    same_dim(n, y.n())?;
    let xy = x.to_multivector().wedge(&y.to_multivector())?;
    let omega = &r.apply(&xy)? * -1.0;
    Ok(SkewEndo::from_two_form(&omega))
}

/// `R_{X,Y} u`.
pub fn curv_action(
    r: &CurvatureTensor,
    x: &Vector,
    y: &Vector,
    u: &Multivector,
) -> Result<Multivector> {
    same_dim(r.n(), u.n())?;
    rho_action(&curvature_endo_xy(r, x, y)?, u)
}

/// `R⁺(X) u = Σ_i e_i ∧ R_{X,e_i} u`.
pub fn r_plus(r: &CurvatureTensor, x: &Vector, u: &Multivector) -> Result<Multivector> {
    let n = r.n();
    same_dim(n, u.n())?;
    same_dim(n, x.n())?;
    let mut out = Multivector::zero(n);
    for i in 0..n {
        let ei = Vector::basis(n, i);
        let term = curv_action(r, x, &ei, u)?;
        out += &Multivector::e(n, i).wedge(&term)?;
    }
    Ok(out)
}

/// Dense matrices of the curvature action on one degree, assembled once and
/// reused by the classifier.
#[derive(Debug, Clone)]
pub struct DegreeAction {
    pub n: usize,
    pub p: usize,
    /// `ρ(R_{e_i,e_j})` on degree `p`, indexed `[i][j]` (zero on the diagonal).
    pub curvature: Vec<Vec<DMatrix<f64>>>,
    /// `R⁺(e_i)` from degree `p` to `p + 1`.
    pub r_plus: Vec<DMatrix<f64>>,
    /// `e_i ⌟` from degree `p` to `p − 1`.
    pub contract: Vec<DMatrix<f64>>,
    /// `e_i ⌟` from degree `p + 1` to `p`.
    pub contract_up: Vec<DMatrix<f64>>,
}

impl DegreeAction {
    pub fn new(r: &CurvatureTensor, p: usize) -> Self {
        let n = r.n();
        let d = binomial(n, p);
        let endos: Vec<Vec<SkewEndo>> = (0..n)
            .map(|i| (0..n).map(|j| curvature_endo(r, i, j)).collect())
            .collect();
        let mut curvature: Vec<Vec<DMatrix<f64>>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                if j < i {
                    let m: &DMatrix<f64> = &curvature[j][i];
                    row.push(-m);
                } else if j == i {
                    row.push(DMatrix::zeros(d, d));
                } else {
                    row.push(rho_matrix(&endos[i][j], p));
                }
            }
            curvature.push(row);
        }
        let wedges: Vec<DMatrix<f64>> = (0..n).map(|j| wedge_matrix(n, j, p)).collect();
        let r_plus = (0..n)
            .map(|i| {
                let mut m = DMatrix::zeros(binomial(n, p + 1), d);
                for j in 0..n {
                    if i != j {
                        m += &wedges[j] * &curvature[i][j];
                    }
                }
                m
            })
            .collect();
        DegreeAction {
            n,
            p,
            curvature,
            r_plus,
            contract: (0..n).map(|i| contraction_matrix(n, i, p)).collect(),
            contract_up: (0..n).map(|i| contraction_matrix(n, i, p + 1)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        binomial(self.n, self.p)
    }
}

/// `R⁺(e_i)` on degree `p`, as a [`FormOperator`].
pub fn r_plus_operator(r: &CurvatureTensor, i: usize, p: usize) -> Result<FormOperator> {
    check_degree(p, 0, r.n())?;
    if i >= r.n() {
        return Err(Error::IndexOutOfRange { index: i, n: r.n() });
    }
    let action = DegreeAction::new(r, p);
    Ok(FormOperator::new(r.n(), p, p + 1, action.r_plus[i].clone()))
}

/// `q(R) = −Σ_i e_i ⌟ R⁺(e_i)` on degree `p`.
pub fn casimir(r: &CurvatureTensor, p: usize) -> Result<FormOperator> {
    let n = r.n();
    check_degree(p, 0, n)?;
    let action = DegreeAction::new(r, p);
    Ok(FormOperator::new(n, p, p, casimir_from(&action)))
}

pub(crate) fn casimir_from(action: &DegreeAction) -> DMatrix<f64> {
    let d = action.dim();
    let mut q = DMatrix::zeros(d, d);
    for i in 0..action.n {
        q -= &action.contract_up[i] * &action.r_plus[i];
    }
    q
}

/// The algebraic Kähler operators of a complex structure, indexed by input
/// degree.
#[derive(Debug, Clone)]
pub struct KahlerOperators {
    /// The Kähler form `κ` with `X ⌟ κ = J X`.
    pub kahler_form: Multivector,
    /// `J = Σ J e_i ∧ e_i ⌟` on degree `p`, `p = 0..=n`.
    pub j: Vec<FormOperator>,
    /// `L = κ ∧ ·` from degree `p` to `p + 2`, `p = 0..=n`.
    pub l: Vec<FormOperator>,
    /// `Λ = ½ Σ J e_i ⌟ e_i ⌟` from degree `p` to `p − 2`, `p = 0..=n`
    /// (zero maps into scalars for `p < 2`); the adjoint of `L`.
    pub lam: Vec<FormOperator>,
}

pub fn kahler_ops(j0: &SkewEndo) -> Result<KahlerOperators> {
    let n = j0.n();
    let defect = (j0.matrix() * j0.matrix() + DMatrix::identity(n, n)).amax();
    if defect > COMPLEX_STRUCTURE_TOL {
        return Err(Error::NotComplexStructure { residual: defect });
    }
    let kahler_form = j0.to_two_form();
    let j_images: Vec<Vector> = (0..n)
        .map(|i| j0.apply(&Vector::basis(n, i)).unwrap())
        .collect();
    let dims = |p: usize| binomial(n, p);

    let mut j_ops = Vec::new();
    let mut l_ops = Vec::new();
    let mut lam_ops = Vec::new();
    for p in 0..=n {
        let masks = blades(n, p);
        let mut jm = DMatrix::zeros(dims(p), masks.len());
        let mut lm = DMatrix::zeros(dims(p + 2), masks.len());
        let lam_rows = dims(p.saturating_sub(2));
        let mut lamm = DMatrix::zeros(lam_rows, masks.len());
        for (col, &mask) in masks.iter().enumerate() {
            let u = Multivector::from_blade(n, mask, 1.0);
            let mut ju = Multivector::zero(n);
            let mut lamu = Multivector::zero(n);
            for (i, jei) in j_images.iter().enumerate() {
                let inner = u.contract(&Vector::basis(n, i))?;
                ju += &jei.to_multivector().wedge(&inner)?;
                lamu += &inner.contract(jei)?;
            }
            jm.set_column(col, &ju.grade_vector(p));
            if p + 2 <= n {
                lm.set_column(col, &kahler_form.wedge(&u)?.grade_vector(p + 2));
            }
            if p >= 2 {
                lamm.set_column(col, &(&lamu * 0.5).grade_vector(p - 2));
            }
        }
        j_ops.push(FormOperator::new(n, p, p, jm));
        l_ops.push(FormOperator::new(n, p, p + 2, lm));
        lam_ops.push(FormOperator::new(n, p, p.saturating_sub(2), lamm));
    }
    Ok(KahlerOperators {
        kahler_form,
        j: j_ops,
        l: l_ops,
        lam: lam_ops,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{self_dual_basis, standard_complex_structure};

    fn e(n: usize, idx: &[usize]) -> Multivector {
        Multivector::blade(n, idx)
    }

    #[test]
    fn rho_matrix_matches_factorwise_action() {
        let n = 5;
        let a = SkewEndo::new(DMatrix::from_fn(n, n, |i, j| {
            (i * 7 + j * 3) as f64 % 5.0 - 2.0
        }));
        for p in 0..=n {
            let m = rho_matrix(&a, p);
            for (col, &mask) in blades(n, p).iter().enumerate() {
                let direct = rho_action(&a, &Multivector::from_blade(n, mask, 1.0)).unwrap();
                let diff = m.column(col) - direct.grade_vector(p);
                assert!(diff.amax() < 1e-12, "p={p} mask={mask:b}");
            }
        }
    }

    #[test]
    fn two_form_endomorphism_round_trip() {
        let [alpha, _, _] = self_dual_basis();
        let a = SkewEndo::from_two_form(&alpha);
        assert_eq!(a.to_two_form(), alpha);
        // α = g(I·,·) with I e1 = e2
        let ie1 = a.apply(&Vector::basis(4, 0)).unwrap();
        assert_eq!(ie1, Vector::basis(4, 1));
        assert!((a.matrix() + a.matrix().transpose()).amax() < 1e-12);
    }

    #[test]
    fn rho_examples() {
        let [alpha, beta, gamma] = self_dual_basis();
        let a = SkewEndo::from_two_form(&alpha);
        assert_eq!(rho_action(&a, &e(4, &[0])).unwrap(), e(4, &[1]));
        assert_eq!(rho_action(&a, &beta).unwrap(), &gamma * 2.0);
        assert!(rho_action(&a, &Multivector::scalar(4, 1.0))
            .unwrap()
            .is_zero());
        let b = SkewEndo::from_two_form(&beta);
        assert!(rho_action(&b, &beta).unwrap().is_zero());
    }

    #[test]
    fn sphere_curvature_on_vectors() {
        // R_{X,Y}Z = ⟨Y,Z⟩X − ⟨X,Z⟩Y on the unit sphere
        let n = 4;
        let r = CurvatureTensor::constant_curvature(n, 1.0);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let x = Vector::basis(n, i);
                    let y = Vector::basis(n, j);
                    let z = Multivector::e(n, k);
                    let got = curv_action(&r, &x, &y, &z).unwrap();
                    let mut want = Multivector::zero(n);
                    if j == k {
                        want += &Multivector::e(n, i);
                    }
                    if i == k {
                        want += &(&Multivector::e(n, j) * -1.0);
                    }
                    assert!(got.max_abs_diff(&want) < 1e-14);
                }
            }
        }
    }

    #[test]
    fn flat_acts_trivially() {
        let r = CurvatureTensor::flat(4);
        let u = &e(4, &[0, 2]) + &e(4, &[1]);
        let x = Vector::basis(4, 0);
        let y = Vector::basis(4, 3);
        assert!(curv_action(&r, &x, &y, &u).unwrap().is_zero());
        assert!(r_plus(&r, &x, &u).unwrap().is_zero());
    }

    #[test]
    fn weyl4_r_plus_beta() {
        let r = CurvatureTensor::self_dual_weyl4();
        let [_, beta, gamma] = self_dual_basis();
        let j = SkewEndo::from_two_form(&beta);
        let omega = Multivector::volume(4);
        for i in 0..4 {
            let x = Vector::basis(4, i);
            let got = r_plus(&r, &x, &beta).unwrap();
            let want = omega.contract(&j.apply(&x).unwrap()).unwrap();
            assert!(got.max_abs_diff(&want) < 1e-12, "X = e{}", i + 1);
        }
        let e1 = Vector::basis(4, 0);
        let e2 = Vector::basis(4, 1);
        let lhs = &r_plus(&r, &e2, &beta).unwrap().contract(&e1).unwrap()
            - &r_plus(&r, &e1, &beta).unwrap().contract(&e2).unwrap();
        assert!(lhs.max_abs_diff(&gamma) < 1e-12);
        // R_{e1,e2} = −½ A_α here, and A_α β = 2γ
        let r12 = curv_action(&r, &e1, &e2, &beta).unwrap();
        assert!(r12.max_abs_diff(&(-&gamma)) < 1e-12);
    }

    #[test]
    fn matrices_match_direct_evaluation() {
        let r = CurvatureTensor::random(4, 11);
        for p in 0..=4 {
            let action = DegreeAction::new(&r, p);
            for (col, &mask) in blades(4, p).iter().enumerate() {
                let u = Multivector::from_blade(4, mask, 1.0);
                for i in 0..4 {
                    let x = Vector::basis(4, i);
                    let direct = r_plus(&r, &x, &u).unwrap();
                    let via = action.r_plus[i].column(col).clone_owned();
                    let diff = (direct.grade_vector(p + 1) - via).amax();
                    assert!(diff < 1e-12);
                    for j in 0..4 {
                        let y = Vector::basis(4, j);
                        let direct = curv_action(&r, &x, &y, &u).unwrap();
                        let via = action.curvature[i][j].column(col).clone_owned();
                        assert!((direct.grade_vector(p) - via).amax() < 1e-12);
                    }
                }
            }
        }
    }

    /// Casimir straight from `q(R)u = −Σ_i e_i ⌟ R⁺(e_i) u` on basis forms.
    fn casimir_oracle(r: &CurvatureTensor, p: usize) -> DMatrix<f64> {
        let n = r.n();
        let masks = blades(n, p);
        let mut q = DMatrix::zeros(masks.len(), masks.len());
        for (col, &mask) in masks.iter().enumerate() {
            let u = Multivector::from_blade(n, mask, 1.0);
            let mut acc = Multivector::zero(n);
            for i in 0..n {
                let ei = Vector::basis(n, i);
                acc += &r_plus(r, &ei, &u).unwrap().contract(&ei).unwrap();
            }
            q.set_column(col, &(&acc * -1.0).grade_vector(p));
        }
        q
    }

    #[test]
    fn casimir_on_spheres() {
        for n in 3..=6 {
            let r = CurvatureTensor::constant_curvature(n, 1.0);
            for p in 0..=n {
                let oracle = casimir_oracle(&r, p);
                let d = binomial(n, p);
                let expected = DMatrix::identity(d, d) * (p * (n - p)) as f64;
                assert!((&oracle - &expected).amax() < 1e-12, "n={n} p={p}");
                let q = casimir(&r, p).unwrap();
                assert!((&q.matrix - &expected).amax() < 1e-12);
            }
        }
        let r = CurvatureTensor::random(5, 2);
        assert!(casimir(&r, 0).unwrap().matrix.amax() == 0.0);
        assert!(casimir(&r, 6).is_err());
    }

    #[test]
    fn casimir_is_ricci_on_vectors() {
        for seed in 0..4 {
            let r = CurvatureTensor::random(5, seed);
            let q = casimir(&r, 1).unwrap();
            assert!((&q.matrix - r.ricci()).amax() < 1e-12);
            for p in 0..=5 {
                assert!(casimir(&r, p).unwrap().is_symmetric(1e-12));
            }
        }
    }

    #[test]
    fn r_plus_top_degree_vanishes() {
        let r = CurvatureTensor::random(4, 5);
        let omega = Multivector::volume(4);
        for i in 0..4 {
            assert!(r_plus(&r, &Vector::basis(4, i), &omega).unwrap().is_zero());
        }
    }

    #[test]
    fn kahler_operators() {
        for m in 1..=3 {
            let n = 2 * m;
            let j0 = SkewEndo::new(standard_complex_structure(m));
            let ops = kahler_ops(&j0).unwrap();
            let kappa = &ops.kahler_form;
            assert!(ops.j[2].apply(kappa).unwrap().norm() < 1e-12);
            let one = Multivector::scalar(n, 1.0);
            let l1 = ops.l[0].apply(&one).unwrap();
            assert!(l1.max_abs_diff(kappa) < 1e-12);
            let back = ops.lam[2].apply(&l1).unwrap();
            assert!(back.max_abs_diff(&Multivector::scalar(n, m as f64)) < 1e-12);
            for p in 0..=n {
                // J agrees with the derivation action of J0
                assert!((&ops.j[p].matrix - rho_matrix(&j0, p)).amax() < 1e-12);
                if p + 2 <= n {
                    let adj = &ops.lam[p + 2].matrix - ops.l[p].matrix.transpose();
                    assert!(adj.amax() < 1e-12);
                }
            }
        }
        let bad = SkewEndo::new(DMatrix::from_row_slice(2, 2, &[0.0, -2.0, 2.0, 0.0]));
        assert!(matches!(
            kahler_ops(&bad),
            Err(Error::NotComplexStructure { .. })
        ));
    }
}
