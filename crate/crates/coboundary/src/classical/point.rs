//! Bivectors attached at a group point: pi(g) = rg - gr and friends.
//!
//! A point bivector stores components over pairs of matrix units, with the
//! two tensor slots holding matrices rather than Lie-algebra elements; left
//! and right translation act slotwise. Everything is generic over the
//! coefficient ring so the same code runs at exact sample points (Scalar)
//! and on symbolic matrices (MPoly entries).

use super::{Bivector, ClassicalError, LieBasis};
use crate::linalg::Tensor;
use crate::mpoly::{Coeff, MPoly};
use crate::scalar::Scalar;

pub(crate) type Mat<T> = Vec<Vec<T>>;

#[derive(Debug, Clone, PartialEq)]
pub struct PointBivector<T: Coeff> {
    n: usize,
    comp: Vec<T>, // dim^2 entries over pairs of matrix units, index a*dim + b
}

impl<T: Coeff> PointBivector<T> {
    pub fn zero(n: usize) -> Self {
        let dim = n * n;
        PointBivector { n, comp: vec![T::zero(); dim * dim] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn dim(&self) -> usize {
        self.n * self.n
    }

    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        (i * self.n + j) * self.dim() + (k * self.n + l)
    }

    /// Component on e(i,j) (x) e(k,l).
    pub fn component(&self, i: usize, j: usize, k: usize, l: usize) -> &T {
        &self.comp[self.idx(i, j, k, l)]
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().all(T::is_zero)
    }

    /// Matrix-unit index pairs ((i,j),(k,l)) of the first nonzero component.
    pub fn first_nonzero(&self) -> Option<(usize, usize, usize, usize)> {
        let flat = self.comp.iter().position(|v| !v.is_zero())?;
        let (a, b) = (flat / self.dim(), flat % self.dim());
        Some((a / self.n, a % self.n, b / self.n, b % self.n))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let comp = self.comp.iter().zip(&other.comp).map(|(a, b)| a.add(b)).collect();
        PointBivector { n: self.n, comp }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let comp = self.comp.iter().zip(&other.comp).map(|(a, b)| a.sub(b)).collect();
        PointBivector { n: self.n, comp }
    }

    pub fn neg(&self) -> Self {
        PointBivector { n: self.n, comp: self.comp.iter().map(T::neg).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        PointBivector { n: self.n, comp: self.comp.iter().map(|c| c.mul(s)).collect() }
    }

    /// Right-translate both slots: V -> V m, using e(i,j) m = sum_q m[j][q] e(i,q).
    pub fn translate_right(&self, m: &Mat<T>) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = self.component(i, j, k, l);
                        if v.is_zero() {
                            continue;
                        }
                        for q in 0..n {
                            let vq = v.mul(&m[j][q]);
                            if vq.is_zero() {
                                continue;
                            }
                            for s in 0..n {
                                let idx = out.idx(i, q, k, s);
                                out.comp[idx] = out.comp[idx].add(&vq.mul(&m[l][s]));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Left-translate both slots: V -> m V, using m e(i,j) = sum_p m[p][i] e(p,j).
    pub fn translate_left(&self, m: &Mat<T>) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = self.component(i, j, k, l);
                        if v.is_zero() {
                            continue;
                        }
                        for p in 0..n {
                            let vp = v.mul(&m[p][i]);
                            if vp.is_zero() {
                                continue;
                            }
                            for r in 0..n {
                                let idx = out.idx(p, j, r, l);
                                out.comp[idx] = out.comp[idx].add(&vp.mul(&m[r][k]));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Antisymmetry under swapping the two slots.
    pub fn is_antisymmetric(&self) -> bool {
        let dim = self.dim();
        for a in 0..dim {
            for b in a..dim {
                if !self.comp[a * dim + b].add(&self.comp[b * dim + a]).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn pi_mat<T: Coeff>(r: &Bivector, g: &Mat<T>, minus: bool) -> PointBivector<T> {
    let n = r.n();
    let basis = LieBasis::new(n);
    let mut out: PointBivector<T> = PointBivector::zero(n);
    for (a, b, c) in r.terms() {
        let (i1, j1) = basis.pair(a);
        let (i2, j2) = basis.pair(b);
        let c = T::from_scalar(c.clone());
        // rg: slots (e(i1,j1) g, e(i2,j2) g)
        for q1 in 0..n {
            let cq = c.mul(&g[j1][q1]);
            if cq.is_zero() {
                continue;
            }
            for q2 in 0..n {
                let idx = out.idx(i1, q1, i2, q2);
                out.comp[idx] = out.comp[idx].add(&cq.mul(&g[j2][q2]));
            }
        }
        // gr: slots (g e(i1,j1), g e(i2,j2)), subtracted for pi_minus
        for p1 in 0..n {
            let cp = c.mul(&g[p1][i1]);
            if cp.is_zero() {
                continue;
            }
            for p2 in 0..n {
                let idx = out.idx(p1, j1, p2, j2);
                let term = cp.mul(&g[p2][i2]);
                out.comp[idx] =
                    if minus { out.comp[idx].sub(&term) } else { out.comp[idx].add(&term) };
            }
        }
    }
    out
}

pub(crate) fn pi_minus_mat<T: Coeff>(r: &Bivector, g: &Mat<T>) -> PointBivector<T> {
    pi_mat(r, g, true)
}

/// A constant bivector regarded as the point bivector it defines at the
/// identity: components carry over to matrix-unit pairs verbatim.
pub(crate) fn constant_point<T: Coeff>(bv: &Bivector) -> PointBivector<T> {
    let n = bv.n();
    let mut out: PointBivector<T> = PointBivector::zero(n);
    for (a, b, c) in bv.terms() {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        let idx = out.idx(i, j, k, l);
        out.comp[idx] = out.comp[idx].add(&T::from_scalar(c.clone()));
    }
    out
}

pub(crate) fn pi_plus_mat<T: Coeff>(r: &Bivector, g: &Mat<T>) -> PointBivector<T> {
    pi_mat(r, g, false)
}

/// rg - gr at an invertible point g.
pub fn pi_minus(r: &Bivector, g: &Tensor) -> Result<PointBivector<Scalar>, ClassicalError> {
    let m = mat_from_tensor(r.n(), g)?;
    if inverse_scalar(&m).is_none() {
        return Err(ClassicalError::Singular { what: "point" });
    }
    Ok(pi_minus_mat(r, &m))
}

/// rg + gr at an invertible point g.
pub fn pi_plus(r: &Bivector, g: &Tensor) -> Result<PointBivector<Scalar>, ClassicalError> {
    let m = mat_from_tensor(r.n(), g)?;
    if inverse_scalar(&m).is_none() {
        return Err(ClassicalError::Singular { what: "point" });
    }
    Ok(pi_plus_mat(r, &m))
}

// ---- matrix helpers over a coefficient ring ----

pub(crate) fn mat_from_tensor(n: usize, t: &Tensor) -> Result<Mat<Scalar>, ClassicalError> {
    if t.shape() != [n, n] {
        return Err(ClassicalError::BadLength {
            got: t.entries().len(),
            want: n * n,
        });
    }
    Ok((0..n).map(|i| (0..n).map(|j| t.at(i, j).clone()).collect()).collect())
}

pub(crate) fn mat_identity<T: Coeff>(n: usize) -> Mat<T> {
    let mut m = vec![vec![T::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::from_scalar(Scalar::one());
    }
    m
}

pub(crate) fn mat_mul<T: Coeff>(a: &Mat<T>, b: &Mat<T>) -> Mat<T> {
    let n = a.len();
    let mut out = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j]));
            }
        }
    }
    out
}

/// Laplace-expansion determinant; fine for the small n used here.
pub(crate) fn det_coeff<T: Coeff>(m: &Mat<T>) -> T {
    let n = m.len();
    if n == 0 {
        return T::from_scalar(Scalar::one());
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = T::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Mat<T> = (1..n)
            .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect())
            .collect();
        let term = m[0][j].mul(&det_coeff(&minor));
        det = if j % 2 == 0 { det.add(&term) } else { det.sub(&term) };
    }
    det
}

/// Adjugate (transposed cofactor matrix): m * adj(m) = det(m) * I over any
/// commutative coefficient ring.
pub(crate) fn adjugate<T: Coeff>(m: &Mat<T>) -> Mat<T> {
    let n = m.len();
    let mut out = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Mat<T> = (0..n)
                .filter(|&r| r != i)
                .map(|r| {
                    (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect()
                })
                .collect();
            let cof = det_coeff(&minor);
            out[j][i] = if (i + j) % 2 == 0 { cof } else { cof.neg() };
        }
    }
    out
}

/// Exact inverse by Gauss-Jordan elimination; None when singular.
pub(crate) fn inverse_scalar(m: &Mat<Scalar>) -> Option<Mat<Scalar>> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = mat_identity::<Scalar>(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        let pinv = &Scalar::one() / &p;
        for j in 0..n {
            a[col][j] = &a[col][j] * &pinv;
            inv[col][j] = &inv[col][j] * &pinv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
pub(crate) fn int_to_scalar_mat(m: &[Vec<i64>]) -> Mat<Scalar> {
    m.iter().map(|row| row.iter().map(|&v| Scalar::from(v)).collect()).collect()
}

/// n x n matrix whose (i,j) entry is the polynomial variable base + i*n + j.
pub(crate) fn symbolic_matrix(n: usize, base: usize) -> Mat<MPoly> {
    (0..n)
        .map(|i| (0..n).map(|j| MPoly::var(base + i * n + j)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::standard_r;
    use super::*;
    use crate::sample;

    fn tensor_from_int(m: &[Vec<i64>]) -> Tensor {
        let n = m.len();
        let entries = m.iter().flatten().map(|&v| Scalar::from(v)).collect();
        Tensor::new(vec![n, n], entries)
    }

    #[test]
    fn pi_minus_vanishes_at_identity() {
        for n in 2..=3 {
            let r = standard_r(n).unwrap();
            let pi = pi_minus(&r, &Tensor::identity(n)).unwrap();
            assert!(pi.is_zero());
        }
    }

    #[test]
    fn pi_rejects_singular_points() {
        let r = standard_r(2).unwrap();
        let g = tensor_from_int(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(pi_minus(&r, &g), Err(ClassicalError::Singular { what: "point" }));
        assert_eq!(pi_plus(&r, &g), Err(ClassicalError::Singular { what: "point" }));
    }

    #[test]
    fn point_bivectors_are_antisymmetric_at_samples() {
        let mut rng = sample::seeded_rng(11);
        for n in 2..=3 {
            let r = standard_r(n).unwrap();
            for _ in 0..5 {
                let g = sample::invertible_integer_matrix(&mut rng, n, 3);
                let m = int_to_scalar_mat(&g);
                assert!(pi_minus_mat(&r, &m).is_antisymmetric());
                assert!(pi_plus_mat(&r, &m).is_antisymmetric());
            }
        }
    }

    #[test]
    fn translation_composes() {
        let r = standard_r(2).unwrap();
        let mut rng = sample::seeded_rng(5);
        let g = int_to_scalar_mat(&sample::invertible_integer_matrix(&mut rng, 2, 3));
        let h = int_to_scalar_mat(&sample::invertible_integer_matrix(&mut rng, 2, 3));
        let k = int_to_scalar_mat(&sample::invertible_integer_matrix(&mut rng, 2, 3));
        let pi = pi_minus_mat(&r, &g);
        assert_eq!(
            pi.translate_right(&h).translate_right(&k),
            pi.translate_right(&mat_mul(&h, &k))
        );
        assert_eq!(
            pi.translate_left(&h).translate_left(&k),
            pi.translate_left(&mat_mul(&k, &h))
        );
    }

    #[test]
    fn adjugate_times_matrix_is_determinant() {
        let mut rng = sample::seeded_rng(9);
        for n in 2..=3 {
            let m = int_to_scalar_mat(&sample::integer_matrix(&mut rng, n, 4));
            let adj = adjugate(&m);
            let det = det_coeff(&m);
            let mut expect = mat_identity::<Scalar>(n);
            for row in expect.iter_mut() {
                for v in row.iter_mut() {
                    *v = &*v * &det;
                }
            }
            assert_eq!(mat_mul(&m, &adj), expect);
            assert_eq!(mat_mul(&adj, &m), expect);
        }
    }

    #[test]
    fn inverse_matches_adjugate_over_determinant() {
        let mut rng = sample::seeded_rng(13);
        let g = sample::invertible_integer_matrix(&mut rng, 3, 3);
        let m = int_to_scalar_mat(&g);
        let inv = inverse_scalar(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), mat_identity::<Scalar>(3));
        let det = det_coeff(&m);
        let adj = adjugate(&m);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(inv[i][j], &adj[i][j] / &det);
            }
        }
    }
}
