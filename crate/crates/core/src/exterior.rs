//! Exterior algebra over ℝⁿ with the standard inner product.
//!
//! Basis blades `e_{i1} ∧ … ∧ e_{ip}` with `i1 < … < ip` are encoded as bit
//! masks. Within a degree the coefficients are stored in lexicographic order
//! of the index tuples, so for `n = 4, p = 2` the order is
//! `12, 13, 14, 23, 24, 34`. Indices are zero based throughout the API.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};

use crate::linalg::Subspace;
use crate::{Error, Result, MAX_DIM};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Masks of all degree `p` blades in lexicographic order.
pub fn blades(n: usize, p: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(binomial(n, p));
    if p > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..p).collect();
    loop {
        out.push(idx.iter().fold(0u32, |m, &i| m | (1 << i)));
        // advance to the next combination
        let mut k = p;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] < n - p + k {
                idx[k] += 1;
                for t in k + 1..p {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Lexicographic rank of a blade among blades of the same degree.
pub fn blade_index(n: usize, mask: u32) -> usize {
    let p = mask.count_ones() as usize;
    let mut rank = 0;
    let mut next = 0;
    let mut k = 0;
    for i in 0..n {
        if mask & (1 << i) == 0 {
            continue;
        }
        for j in next..i {
            rank += binomial(n - 1 - j, p - 1 - k);
        }
        next = i + 1;
        k += 1;
    }
    rank
}

/// Sign of `e_a ∧ e_b` relative to the sorted blade `e_{a|b}`.
/// The masks must be disjoint.
pub(crate) fn reorder_sign(a: u32, b: u32) -> f64 {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        swaps += (a >> (bit + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n > MAX_DIM {
        return Err(Error::DimensionTooLarge { n, max: MAX_DIM });
    }
    Ok(())
}

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        });
    }
    Ok(())
}

/// A vector of ℝⁿ, identified with a 1-form through the metric.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    components: Vec<f64>,
}

impl Vector {
    pub fn new(components: Vec<f64>) -> Self {
        Vector { components }
    }

    pub fn zero(n: usize) -> Self {
        Vector::new(vec![0.0; n])
    }

    /// The basis vector `e_i`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Vector::zero(n);
        v.components[i] = 1.0;
        v
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn to_multivector(&self) -> Multivector {
        Multivector::from_grade(self.n(), 1, self.components.clone())
            .expect("length matches binomial(n, 1)")
    }
}

impl TryFrom<&Multivector> for Vector {
    type Error = Error;

    fn try_from(u: &Multivector) -> Result<Self> {
        match u.grade() {
            Some(1) | None => Ok(Vector::new(u.grade_coeffs(1).to_vec())),
            Some(_) => Err(Error::NotHomogeneous),
        }
    }
}

/// Element of the exterior algebra `Λ*ℝⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    n: usize,
    grades: Vec<Vec<f64>>,
}

impl Multivector {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIM, "dimension {n} exceeds {MAX_DIM}");
        let grades = (0..=n).map(|p| vec![0.0; binomial(n, p)]).collect();
        Multivector { n, grades }
    }

    pub fn scalar(n: usize, c: f64) -> Self {
        let mut u = Multivector::zero(n);
        u.grades[0][0] = c;
        u
    }

    /// The basis 1-form `e_i`.
    pub fn e(n: usize, i: usize) -> Self {
        Multivector::blade(n, &[i])
    }

    /// The basis blade `e_{i1} ∧ … ∧ e_{ip}`; indices need not be sorted.
    /// Repeated indices give zero.
    pub fn blade(n: usize, indices: &[usize]) -> Self {
        let mut u = Multivector::scalar(n, 1.0);
        for &i in indices {
            assert!(i < n, "index {i} out of range for dimension {n}");
            u = u.wedge(&Multivector::from_blade(n, 1 << i, 1.0)).unwrap();
        }
        u
    }

    /// The volume form `e_1 ∧ … ∧ e_n`.
    pub fn volume(n: usize) -> Self {
        Multivector::from_blade(n, ((1u64 << n) - 1) as u32, 1.0)
    }

    pub(crate) fn from_blade(n: usize, mask: u32, c: f64) -> Self {
        let mut u = Multivector::zero(n);
        let p = mask.count_ones() as usize;
        u.grades[p][blade_index(n, mask)] = c;
        u
    }

    /// A homogeneous multivector from degree `p` coefficients in lexicographic
    /// order.
    pub fn from_grade(n: usize, p: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_dim(n)?;
        if p > n {
            return Err(Error::DegreeOutOfRange {
                degree: p,
                min: 0,
                max: n,
            });
        }
        if coeffs.len() != binomial(n, p) {
            return Err(Error::DimensionMismatch {
                expected: binomial(n, p),
                found: coeffs.len(),
            });
        }
        let mut u = Multivector::zero(n);
        u.grades[p] = coeffs;
        Ok(u)
    }

    pub fn from_dvector(n: usize, p: usize, coeffs: &DVector<f64>) -> Result<Self> {
        Multivector::from_grade(n, p, coeffs.iter().copied().collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficients of degree `p`; empty when `p > n`.
    pub fn grade_coeffs(&self, p: usize) -> &[f64] {
        self.grades.get(p).map(|g| g.as_slice()).unwrap_or(&[])
    }

    pub fn grade_vector(&self, p: usize) -> DVector<f64> {
        DVector::from_column_slice(self.grade_coeffs(p))
    }

    /// Degrees carrying a nonzero coefficient.
    pub fn grades_present(&self) -> Vec<usize> {
        (0..=self.n)
            .filter(|&p| self.grades[p].iter().any(|&c| c != 0.0))
            .collect()
    }

    /// The single degree of a homogeneous multivector. `None` for zero and for
    /// mixed-degree values.
    pub fn grade(&self) -> Option<usize> {
        match self.grades_present().as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.grades_present().is_empty()
    }

    pub fn grade_part(&self, p: usize) -> Multivector {
        let mut u = Multivector::zero(self.n);
        if p <= self.n {
            u.grades[p] = self.grades[p].clone();
        }
        u
    }

    /// Iterate over `(mask, coefficient)` of nonzero terms.
    pub(crate) fn terms(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        (0..=self.n).flat_map(move |p| {
            let masks = blades(self.n, p);
            self.grades[p]
                .iter()
                .zip(masks)
                .filter(|(c, _)| **c != 0.0)
                .map(|(c, m)| (m, *c))
                .collect::<Vec<_>>()
        })
    }

    pub(crate) fn add_term(&mut self, mask: u32, c: f64) {
        let p = mask.count_ones() as usize;
        self.grades[p][blade_index(self.n, mask)] += c;
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        same_dim(self.n, other.n)?;
        let mut out = Multivector::zero(self.n);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if a & b == 0 {
                    out.add_term(a | b, reorder_sign(a, b) * ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// Interior product `X ⌟ self`.
    pub fn contract(&self, x: &Vector) -> Result<Multivector> {
        same_dim(self.n, x.n())?;
        let mut out = Multivector::zero(self.n);
        for (mask, c) in self.terms() {
            let mut rest = mask;
            while rest != 0 {
                let i = rest.trailing_zeros();
                rest &= rest - 1;
                let xi = x.components[i as usize];
                if xi == 0.0 {
                    continue;
                }
                let position = (mask & ((1 << i) - 1)).count_ones();
                let sign = if position % 2 == 0 { 1.0 } else { -1.0 };
                out.add_term(mask & !(1 << i), sign * xi * c);
            }
        }
        Ok(out)
    }

    /// Induced inner product; distinct degrees are orthogonal.
    pub fn inner(&self, other: &Multivector) -> Result<f64> {
        same_dim(self.n, other.n)?;
        Ok(self
            .grades
            .iter()
            .zip(&other.grades)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| x * y))
            .sum())
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.inner(self).unwrap())
    }

    /// Hodge star, characterised by `u ∧ ⋆v = ⟨u, v⟩ ω`.
    pub fn hodge(&self) -> Result<Multivector> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.grade().is_none() {
            return Err(Error::NotHomogeneous);
        }
        let full = ((1u64 << self.n) - 1) as u32;
        let mut out = Multivector::zero(self.n);
        for (mask, c) in self.terms() {
            let rest = full & !mask;
            out.add_term(rest, reorder_sign(mask, rest) * c);
        }
        Ok(out)
    }

    pub fn max_abs_diff(&self, other: &Multivector) -> f64 {
        self.grades
            .iter()
            .zip(&other.grades)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }
}

impl Add for &Multivector {
    type Output = Multivector;

    fn add(self, rhs: &Multivector) -> Multivector {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (a, b) in self.grades.iter_mut().zip(&rhs.grades) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
    }
}

impl Sub for &Multivector {
    type Output = Multivector;

    fn sub(self, rhs: &Multivector) -> Multivector {
        self + &(-rhs)
    }
}

impl Neg for &Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self * -1.0
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;

    fn mul(self, c: f64) -> Multivector {
        let mut out = self.clone();
        for g in out.grades.iter_mut() {
            for x in g.iter_mut() {
                *x *= c;
            }
        }
        out
    }
}

/// Matrix of `e_i ∧ ·` from degree `p` to degree `p + 1`.
pub fn wedge_matrix(n: usize, i: usize, p: usize) -> DMatrix<f64> {
    let rows = binomial(n, p + 1);
    let masks = blades(n, p);
    let mut m = DMatrix::zeros(rows, masks.len());
    for (col, &mask) in masks.iter().enumerate() {
        if mask & (1 << i) == 0 {
            let target = mask | (1 << i);
            m[(blade_index(n, target), col)] = reorder_sign(1 << i, mask);
        }
    }
    m
}

/// Matrix of `e_i ⌟ ·` from degree `p` to degree `p - 1`.
pub fn contraction_matrix(n: usize, i: usize, p: usize) -> DMatrix<f64> {
    let rows = if p == 0 { 0 } else { binomial(n, p - 1) };
    let masks = blades(n, p);
    let mut m = DMatrix::zeros(rows, masks.len());
    for (col, &mask) in masks.iter().enumerate() {
        if mask & (1 << i) != 0 {
            let position = (mask & ((1 << i) - 1)).count_ones();
            let sign = if position.is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            m[(blade_index(n, mask & !(1 << i)), col)] = sign;
        }
    }
    m
}

/// Span of all `(n − p)`-fold contractions of the volume form.
pub fn volume_contractions(n: usize, p: usize) -> Result<Subspace> {
    check_dim(n)?;
    if p > n {
        return Err(Error::DegreeOutOfRange {
            degree: p,
            min: 0,
            max: n,
        });
    }
    let omega = Multivector::volume(n);
    let mut current = vec![omega];
    for _ in 0..n - p {
        let mut next = Vec::new();
        for u in &current {
            for i in 0..n {
                let c = u.contract(&Vector::basis(n, i))?;
                if !c.is_zero() {
                    next.push(c);
                }
            }
        }
        current = next;
    }
    let cols: Vec<DVector<f64>> = current.iter().map(|u| u.grade_vector(p)).collect();
    Ok(Subspace::from_columns(n, p, binomial(n, p), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, idx: &[usize]) -> Multivector {
        Multivector::blade(n, idx)
    }

    #[test]
    fn lexicographic_order() {
        let masks = blades(4, 2);
        let tuples: Vec<Vec<usize>> = masks
            .iter()
            .map(|m| (0..4).filter(|i| m & (1 << i) != 0).collect())
            .collect();
        assert_eq!(
            tuples,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        for n in 0..=8 {
            for p in 0..=n {
                let masks = blades(n, p);
                assert_eq!(masks.len(), binomial(n, p));
                for (k, &m) in masks.iter().enumerate() {
                    assert_eq!(blade_index(n, m), k);
                }
            }
        }
    }

    #[test]
    fn wedge_examples() {
        let n = 4;
        assert_eq!(e(n, &[0]).wedge(&e(n, &[1])).unwrap(), e(n, &[0, 1]));
        assert!(e(n, &[0]).wedge(&e(n, &[0])).unwrap().is_zero());
        let w = e(n, &[0, 1]).wedge(&e(n, &[2, 3])).unwrap();
        assert_eq!(w, Multivector::volume(4));
        let w = e(n, &[1]).wedge(&e(n, &[0])).unwrap();
        assert_eq!(w, &e(n, &[0, 1]) * -1.0);
    }

    #[test]
    fn wedge_dimension_mismatch() {
        assert_eq!(
            e(3, &[0]).wedge(&e(4, &[0])),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 4
            })
        );
        assert!(e(3, &[0]).contract(&Vector::basis(4, 0)).is_err());
        assert!(e(3, &[0]).inner(&e(2, &[0])).is_err());
    }

    #[test]
    fn contraction_examples() {
        let n = 4;
        let e12 = e(n, &[0, 1]);
        assert_eq!(e12.contract(&Vector::basis(n, 0)).unwrap(), e(n, &[1]));
        assert_eq!(
            e12.contract(&Vector::basis(n, 1)).unwrap(),
            &e(n, &[0]) * -1.0
        );
        assert!(e12.contract(&Vector::basis(n, 2)).unwrap().is_zero());
        assert!(Multivector::scalar(n, 3.0)
            .contract(&Vector::basis(n, 0))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn inner_examples() {
        let n = 4;
        let e12 = e(n, &[0, 1]);
        assert_eq!(e12.inner(&e12).unwrap(), 1.0);
        let alpha = &e(n, &[0, 1]) + &e(n, &[2, 3]);
        assert_eq!(alpha.inner(&alpha).unwrap(), 2.0);
        assert_eq!(e(n, &[0]).inner(&e(n, &[1, 2])).unwrap(), 0.0);
    }

    #[test]
    fn hodge_examples() {
        let n = 4;
        assert_eq!(
            Multivector::scalar(n, 1.0).hodge().unwrap(),
            Multivector::volume(n)
        );
        assert_eq!(e(n, &[0, 1]).hodge().unwrap(), e(n, &[2, 3]));
        let alpha = &e(n, &[0, 1]) + &e(n, &[2, 3]);
        assert_eq!(alpha.hodge().unwrap(), alpha);
        let mixed = &e(n, &[0]) + &e(n, &[0, 1]);
        assert_eq!(mixed.hodge(), Err(Error::NotHomogeneous));
    }

    #[test]
    fn grade_reporting() {
        assert_eq!(e(5, &[0, 3]).grade(), Some(2));
        assert_eq!(Multivector::zero(5).grade(), None);
        assert!(Multivector::zero(5).grades_present().is_empty());
        for p in 0..=5 {
            assert_eq!(Multivector::zero(5).grade_coeffs(p).len(), binomial(5, p));
        }
    }

    #[test]
    fn volume_contraction_spans() {
        assert_eq!(volume_contractions(4, 4).unwrap().dim(), 1);
        assert_eq!(volume_contractions(4, 2).unwrap().dim(), 6);
        assert_eq!(volume_contractions(5, 0).unwrap().dim(), 1);
        for n in 1..=6 {
            for p in 0..=n {
                assert_eq!(volume_contractions(n, p).unwrap().dim(), binomial(n, p));
            }
        }
        assert!(volume_contractions(4, 5).is_err());
    }

    #[test]
    fn operator_matrices_match_multivector_ops() {
        let n = 5;
        for p in 0..=n {
            for (col, &mask) in blades(n, p).iter().enumerate() {
                let u = Multivector::from_blade(n, mask, 1.0);
                for i in 0..n {
                    let w = u.wedge(&Multivector::e(n, i)).unwrap();
                    let w = &w * if p % 2 == 0 { 1.0 } else { -1.0 };
                    let m = wedge_matrix(n, i, p);
                    for r in 0..m.nrows() {
                        assert_eq!(m[(r, col)], w.grade_coeffs(p + 1)[r]);
                    }
                    let c = u.contract(&Vector::basis(n, i)).unwrap();
                    let m = contraction_matrix(n, i, p);
                    for r in 0..m.nrows() {
                        assert_eq!(m[(r, col)], c.grade_coeffs(p - 1)[r]);
                    }
                }
            }
        }
    }
}
