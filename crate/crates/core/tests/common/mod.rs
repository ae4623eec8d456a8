//! Extra models for the integration tests: compact symmetric spaces built
//! from matrix Lie algebras, and the G₂ structure on ℝ⁷.
#![allow(dead_code)]

use killform_core::curvature::pairs;
use killform_core::linalg::{nullspace, range};
use killform_core::operators::rho_matrix;
use killform_core::{CurvatureTensor, HolonomyAlgebra, Multivector, SkewEndo};
use nalgebra::DMatrix;

/// Orthonormal basis of the traceless symmetric `k × k` matrices for the
/// trace form.
fn traceless_symmetric_basis(k: usize) -> Vec<DMatrix<f64>> {
    let mut out = Vec::new();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for a in 0..k {
        for b in a + 1..k {
            let mut m = DMatrix::zeros(k, k);
            m[(a, b)] = h;
            m[(b, a)] = h;
            out.push(m);
        }
    }
    for a in 1..k {
        let mut m = DMatrix::zeros(k, k);
        let c = 1.0 / ((a * (a + 1)) as f64).sqrt();
        for d in 0..a {
            m[(d, d)] = c;
        }
        m[(a, a)] = -(a as f64) * c;
        out.push(m);
    }
    out
}

fn bracket(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a * b - b * a
}

/// `SU(k)/SO(k)`: tangent space the traceless symmetric matrices,
/// `R_{ijkl} = tr([[A_i, A_j], A_l] A_k)`.
pub fn su_over_so(k: usize) -> CurvatureTensor {
    let basis = traceless_symmetric_basis(k);
    let n = basis.len();
    let ps = pairs(n);
    let mut op2 = DMatrix::zeros(ps.len(), ps.len());
    for (a, &(i, j)) in ps.iter().enumerate() {
        let b_ij = bracket(&basis[i], &basis[j]);
        for (b, &(k, l)) in ps.iter().enumerate() {
            op2[(a, b)] = (bracket(&b_ij, &basis[l]) * &basis[k]).trace();
        }
    }
    CurvatureTensor::from_op2(n, op2).unwrap()
}

/// Bi-invariant metric `tr(AᵀB)` on the group of a matrix Lie algebra,
/// `R_{ijkl} = −¼ ⟨[[e_i, e_j], e_l], e_k⟩`.
pub fn lie_group(generators: &[DMatrix<f64>]) -> CurvatureTensor {
    let size = generators[0].nrows();
    let mut stacked = DMatrix::zeros(size * size, generators.len());
    for (c, g) in generators.iter().enumerate() {
        stacked.column_mut(c).copy_from_slice(g.as_slice());
    }
    let onb = range(&stacked);
    let basis: Vec<DMatrix<f64>> = onb
        .column_iter()
        .map(|c| DMatrix::from_column_slice(size, size, c.as_slice()))
        .collect();
    let n = basis.len();
    let ps = pairs(n);
    let mut op2 = DMatrix::zeros(ps.len(), ps.len());
    for (a, &(i, j)) in ps.iter().enumerate() {
        let b_ij = bracket(&basis[i], &basis[j]);
        for (b, &(k, l)) in ps.iter().enumerate() {
            op2[(a, b)] = -0.25 * bracket(&b_ij, &basis[l]).dot(&basis[k]);
        }
    }
    CurvatureTensor::from_op2(n, op2).unwrap()
}

/// `SU(k)` through the real form of `su(k)` inside `so(2k)`.
pub fn special_unitary(k: usize) -> CurvatureTensor {
    let embed = |re: &DMatrix<f64>, im: &DMatrix<f64>| {
        let mut m = DMatrix::zeros(2 * k, 2 * k);
        m.view_mut((0, 0), (k, k)).copy_from(re);
        m.view_mut((k, k), (k, k)).copy_from(re);
        m.view_mut((0, k), (k, k)).copy_from(&(-im));
        m.view_mut((k, 0), (k, k)).copy_from(im);
        m
    };
    let zero = DMatrix::zeros(k, k);
    let mut generators = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let mut skew = DMatrix::zeros(k, k);
            skew[(a, b)] = 1.0;
            skew[(b, a)] = -1.0;
            generators.push(embed(&skew, &zero));
        }
    }
    for sym in traceless_symmetric_basis(k) {
        generators.push(embed(&zero, &sym));
    }
    lie_group(&generators)
}

/// Irreducible, non-Kähler models outside the library catalog, with ids.
pub fn extra_models() -> Vec<(String, CurvatureTensor)> {
    vec![
        ("su/so:3".to_string(), su_over_so(3)),
        ("su:3".to_string(), special_unitary(3)),
    ]
}

/// The G₂ 3-form `e123 + e145 + e167 + e246 − e257 − e347 − e356`.
pub fn g2_form() -> Multivector {
    let terms: [([usize; 3], f64); 7] = [
        ([0, 1, 2], 1.0),
        ([0, 3, 4], 1.0),
        ([0, 5, 6], 1.0),
        ([1, 3, 5], 1.0),
        ([1, 4, 6], -1.0),
        ([2, 3, 6], -1.0),
        ([2, 4, 5], -1.0),
    ];
    let mut phi = Multivector::zero(7);
    for (idx, c) in terms {
        phi += &(&Multivector::blade(7, &idx) * c);
    }
    phi
}

/// The stabiliser of [`g2_form`] in `so(7)`.
pub fn g2_algebra() -> HolonomyAlgebra {
    let n = 7;
    let phi = g2_form().grade_vector(3);
    let so: Vec<SkewEndo> = pairs(n)
        .into_iter()
        .map(|(i, j)| {
            let mut m = DMatrix::zeros(n, n);
            m[(i, j)] = 1.0;
            m[(j, i)] = -1.0;
            SkewEndo::new(m)
        })
        .collect();
    let mut action = DMatrix::zeros(phi.len(), so.len());
    for (c, a) in so.iter().enumerate() {
        action.set_column(c, &(rho_matrix(a, 3) * &phi));
    }
    let kernel = nullspace(&action);
    let generators: Vec<SkewEndo> = kernel
        .column_iter()
        .map(|coeffs| {
            let mut m = DMatrix::zeros(n, n);
            for (c, a) in so.iter().enumerate() {
                m += a.matrix() * coeffs[c];
            }
            SkewEndo::new(m)
        })
        .collect();
    HolonomyAlgebra::from_generators(n, &generators)
}
