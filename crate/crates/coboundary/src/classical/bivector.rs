//! Constant bivectors and trivectors over the e(i,j) basis.
//!
//! Components are stored dense over flat basis indices; constructors enforce
//! antisymmetry (total antisymmetry for trivectors), so an instance is always
//! an element of the exterior square/cube.

use super::{ClassicalError, LieBasis};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bivector {
    n: usize,
    comp: Vec<Scalar>, // dim^2 entries, index a*dim + b
}

impl Bivector {
    pub fn zero(n: usize) -> Self {
        let dim = n * n;
        Bivector { n, comp: vec![Scalar::zero(); dim * dim] }
    }

    /// Wrap raw components, rejecting arrays that are not antisymmetric.
    pub fn new(n: usize, comp: Vec<Scalar>) -> Result<Self, ClassicalError> {
        let dim = n * n;
        if comp.len() != dim * dim {
            return Err(ClassicalError::BadLength { got: comp.len(), want: dim * dim });
        }
        let b = Bivector { n, comp };
        for a in 0..dim {
            for c in a..dim {
                let lhs = b.component(a, c);
                let rhs = b.component(c, a);
                if &(-lhs.clone()) != rhs {
                    return Err(ClassicalError::NotAntisymmetric {
                        a,
                        b: c,
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
        Ok(b)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn component(&self, a: usize, b: usize) -> &Scalar {
        &self.comp[a * self.dim() + b]
    }

    /// Add c * (e_a wedge e_b) = c * (e_a (x) e_b - e_b (x) e_a).
    pub fn add_wedge(&mut self, a: usize, b: usize, c: Scalar) {
        if a == b || c.is_zero() {
            return;
        }
        let dim = self.dim();
        self.comp[a * dim + b] = &self.comp[a * dim + b] + &c;
        self.comp[b * dim + a] = &self.comp[b * dim + a] - &c;
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Bivector { n: self.n, comp: self.comp.iter().map(|c| c * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().all(Scalar::is_zero)
    }

    /// Nonzero components as (a, b, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        let dim = self.dim();
        self.comp
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (k / dim, k % dim, c))
    }
}

impl std::ops::Neg for &Bivector {
    type Output = Bivector;
    fn neg(self) -> Bivector {
        Bivector { n: self.n, comp: self.comp.iter().map(|c| -c.clone()).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trivector {
    n: usize,
    comp: Vec<Scalar>, // dim^3 entries, index (a*dim + b)*dim + c
}

impl Trivector {
    pub fn zero(n: usize) -> Self {
        let dim = n * n;
        Trivector { n, comp: vec![Scalar::zero(); dim * dim * dim] }
    }

    /// Wrap raw components, rejecting arrays not alternating under the two
    /// adjacent transpositions (which generate all of S3).
    pub fn new(n: usize, comp: Vec<Scalar>) -> Result<Self, ClassicalError> {
        let dim = n * n;
        if comp.len() != dim * dim * dim {
            return Err(ClassicalError::BadLength { got: comp.len(), want: dim * dim * dim });
        }
        let t = Trivector { n, comp };
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let v = t.component(a, b, c);
                    if &(-t.component(b, a, c).clone()) != v
                        || &(-t.component(a, c, b).clone()) != v
                    {
                        return Err(ClassicalError::NotTotallyAntisymmetric { a, b, c });
                    }
                }
            }
        }
        Ok(t)
    }

    /// e_a wedge e_b wedge e_c: the signed sum over all six slot orders.
    pub fn wedge(n: usize, a: usize, b: usize, c: usize) -> Self {
        let mut t = Trivector::zero(n);
        let one = Scalar::one();
        for (x, y, z, sign) in [
            (a, b, c, 1),
            (b, c, a, 1),
            (c, a, b, 1),
            (b, a, c, -1),
            (a, c, b, -1),
            (c, b, a, -1),
        ] {
            let idx = t.tidx(x, y, z);
            let term = if sign > 0 { one.clone() } else { -one.clone() };
            t.comp[idx] = &t.comp[idx] + &term;
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    fn tidx(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.dim() + b) * self.dim() + c
    }

    pub fn component(&self, a: usize, b: usize, c: usize) -> &Scalar {
        &self.comp[self.tidx(a, b, c)]
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Trivector { n: self.n, comp: self.comp.iter().map(|c| c * s).collect() }
    }

    /// Nonzero components as (a, b, c, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        let dim = self.dim();
        self.comp
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / (dim * dim), (k / dim) % dim, k % dim, v))
    }
}

/// The standard solution sum_{j<k} e(j,k) wedge e(k,j) on gl(n), n >= 2.
pub fn standard_r(n: usize) -> Result<Bivector, ClassicalError> {
    if n < 2 {
        return Err(ClassicalError::TooSmall { n, min: 2 });
    }
    let basis = LieBasis::new(n);
    let mut r = Bivector::zero(n);
    for j in 0..n {
        for k in (j + 1)..n {
            r.add_wedge(basis.idx(j, k), basis.idx(k, j), Scalar::one());
        }
    }
    Ok(r)
}

/// The obstruction trivector [r12,r13] + [r12,r23] + [r13,r23], expanded
/// through the gl(n) structure constants. For antisymmetric r the result is
/// totally antisymmetric; it vanishes exactly when r solves the classical
/// Yang-Baxter equation, and equals an invariant element exactly when r is a
/// coboundary structure candidate.
pub fn schouten_square(r: &Bivector) -> Trivector {
    let n = r.n();
    let basis = LieBasis::new(n);
    let dim = basis.dim();
    let mut comp = vec![Scalar::zero(); dim * dim * dim];
    let tidx = |a: usize, b: usize, c: usize| (a * dim + b) * dim + c;
    for (a1, b1, c1) in r.terms() {
        for (a2, b2, c2) in r.terms() {
            let coeff = c1 * c2;
            // [r12, r13]: commutator in slot 1, spectators b1, b2.
            for (x, s) in basis.commutator(a1, a2) {
                let idx = tidx(x, b1, b2);
                comp[idx] = &comp[idx] + &scaled(&coeff, s);
            }
            // [r12, r23]: commutator in slot 2, spectators a1, b2.
            for (x, s) in basis.commutator(b1, a2) {
                let idx = tidx(a1, x, b2);
                comp[idx] = &comp[idx] + &scaled(&coeff, s);
            }
            // [r13, r23]: commutator in slot 3, spectators a1, a2.
            for (x, s) in basis.commutator(b1, b2) {
                let idx = tidx(a1, a2, x);
                comp[idx] = &comp[idx] + &scaled(&coeff, s);
            }
        }
    }
    Trivector::new(n, comp)
        .expect("obstruction of an antisymmetric bivector is totally antisymmetric")
}

fn scaled(c: &Scalar, s: i64) -> Scalar {
    c * &Scalar::from(s)
}

/// Check that t is killed by every ad_x (x (x) 1 (x) 1 + 1 (x) x (x) 1 +
/// 1 (x) 1 (x) x acting by commutators); on failure reports the acting basis
/// element and the first nonzero component.
pub fn is_ad_invariant(t: &Trivector) -> Result<(), String> {
    let basis = LieBasis::new(t.n());
    let dim = basis.dim();
    for x in 0..dim {
        let mut acted = vec![Scalar::zero(); dim * dim * dim];
        let tidx = |a: usize, b: usize, c: usize| (a * dim + b) * dim + c;
        for (a, b, c, v) in t.terms() {
            for (a2, s) in basis.commutator(x, a) {
                let idx = tidx(a2, b, c);
                acted[idx] = &acted[idx] + &scaled(v, s);
            }
            for (b2, s) in basis.commutator(x, b) {
                let idx = tidx(a, b2, c);
                acted[idx] = &acted[idx] + &scaled(v, s);
            }
            for (c2, s) in basis.commutator(x, c) {
                let idx = tidx(a, b, c2);
                acted[idx] = &acted[idx] + &scaled(v, s);
            }
        }
        if let Some(k) = acted.iter().position(|v| !v.is_zero()) {
            let (xi, xj) = basis.pair(x);
            let (a, b, c) = (k / (dim * dim), (k / dim) % dim, k % dim);
            return Err(format!(
                "ad e({xi},{xj}) maps it to a trivector with component ({a},{b},{c}) = {}",
                acted[k]
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Tensor;

    fn basis_tensor(n: usize, a: usize) -> Tensor {
        let basis = LieBasis::new(n);
        let (i, j) = basis.pair(a);
        let mut t = Tensor::zeros(vec![n, n]);
        *t.entry_mut(&[i, j]) = Scalar::one();
        t
    }

    /// Independent route: realize r12, r13, r23 as n^3 x n^3 matrices,
    /// take literal matrix commutators, and read components back off the
    /// entries of the resulting tensor.
    fn schouten_square_matrix_oracle(r: &Bivector) -> Vec<Scalar> {
        let n = r.n();
        let dim = n * n;
        let id = Tensor::identity(n);
        let mut legs: Vec<Tensor> = Vec::new();
        for slots in [(0usize, 1usize), (0, 2), (1, 2)] {
            let mut acc = Tensor::zeros(vec![n * n * n, n * n * n]);
            for (a, b, c) in r.terms() {
                let mut factors = vec![id.clone(), id.clone(), id.clone()];
                factors[slots.0] = basis_tensor(n, a);
                factors[slots.1] = basis_tensor(n, b);
                let term = factors[0]
                    .kron(&factors[1])
                    .unwrap()
                    .kron(&factors[2])
                    .unwrap()
                    .scale(c);
                acc = acc.add(&term);
            }
            legs.push(acc);
        }
        let comm =
            |x: &Tensor, y: &Tensor| x.matmul(y).unwrap().sub(&y.matmul(x).unwrap());
        let total = comm(&legs[0], &legs[1])
            .add(&comm(&legs[0], &legs[2]))
            .add(&comm(&legs[1], &legs[2]));
        // Entry ((i1,i2,i3),(j1,j2,j3)) is the component on
        // e(i1,j1) (x) e(i2,j2) (x) e(i3,j3).
        let basis = LieBasis::new(n);
        let mut comp = vec![Scalar::zero(); dim * dim * dim];
        for i1 in 0..n {
            for i2 in 0..n {
                for i3 in 0..n {
                    for j1 in 0..n {
                        for j2 in 0..n {
                            for j3 in 0..n {
                                let row = (i1 * n + i2) * n + i3;
                                let col = (j1 * n + j2) * n + j3;
                                let a = basis.idx(i1, j1);
                                let b = basis.idx(i2, j2);
                                let c = basis.idx(i3, j3);
                                comp[(a * dim + b) * dim + c] = total.at(row, col).clone();
                            }
                        }
                    }
                }
            }
        }
        comp
    }

    #[test]
    fn standard_r_components_for_n2() {
        let r = standard_r(2).unwrap();
        let b = LieBasis::new(2);
        assert!(r.component(b.idx(0, 1), b.idx(1, 0)).is_one());
        assert_eq!(r.component(b.idx(1, 0), b.idx(0, 1)), &-Scalar::one());
        assert_eq!(r.terms().count(), 2);
    }

    #[test]
    fn standard_r_rejects_n1() {
        assert_eq!(standard_r(1), Err(ClassicalError::TooSmall { n: 1, min: 2 }));
    }

    #[test]
    fn schouten_square_matches_matrix_oracle() {
        for n in 2..=3 {
            let r = standard_r(n).unwrap();
            let sq = schouten_square(&r);
            let oracle = schouten_square_matrix_oracle(&r);
            let dim = n * n;
            for a in 0..dim {
                for b in 0..dim {
                    for c in 0..dim {
                        assert_eq!(
                            sq.component(a, b, c),
                            &oracle[(a * dim + b) * dim + c],
                            "n={n}, component ({a},{b},{c})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn schouten_square_for_n2_is_wedge_of_sl2_triple() {
        // With h = e(0,0) - e(1,1), x = e(0,1), y = e(1,0) the square is
        // h ^ x ^ y.
        let r = standard_r(2).unwrap();
        let sq = schouten_square(&r);
        let b = LieBasis::new(2);
        let (h1, h2, x, y) = (b.idx(0, 0), b.idx(1, 1), b.idx(0, 1), b.idx(1, 0));
        assert!(sq.component(h1, x, y).is_one());
        assert_eq!(sq.component(h2, x, y), &-Scalar::one());
        assert_eq!(sq.component(x, h1, y), &-Scalar::one());
        let plus = Trivector::wedge(2, h1, x, y);
        let minus = Trivector::wedge(2, h2, x, y);
        for a in 0..4 {
            for bb in 0..4 {
                for c in 0..4 {
                    let want = sq.component(a, bb, c);
                    let got = plus.component(a, bb, c) - minus.component(a, bb, c);
                    assert_eq!(want, &got, "component ({a},{bb},{c})");
                }
            }
        }
    }

    #[test]
    fn schouten_square_is_quadratic_in_r() {
        let r = standard_r(3).unwrap();
        let two = Scalar::from(2);
        let four = Scalar::from(4);
        assert_eq!(schouten_square(&r.scale(&two)), schouten_square(&r).scale(&four));
    }

    #[test]
    fn standard_square_is_ad_invariant() {
        for n in 2..=3 {
            let sq = schouten_square(&standard_r(n).unwrap());
            assert_eq!(is_ad_invariant(&sq), Ok(()));
        }
    }

    #[test]
    fn non_invariant_trivector_is_detected_with_witness() {
        let b = LieBasis::new(2);
        let t = Trivector::wedge(2, b.idx(0, 0), b.idx(0, 1), b.idx(1, 0));
        let err = is_ad_invariant(&t).unwrap_err();
        assert!(err.contains("ad e("), "witness should name the acting element: {err}");
    }

    #[test]
    fn constructors_reject_symmetry_breakage() {
        let mut comp = vec![Scalar::zero(); 16];
        comp[4 + 2] = Scalar::one();
        // missing the mirrored -1 entry
        assert!(matches!(
            Bivector::new(2, comp),
            Err(ClassicalError::NotAntisymmetric { .. })
        ));
        let mut comp3 = vec![Scalar::zero(); 64];
        // flattened index [0, 1, 2]
        comp3[4 + 2] = Scalar::one();
        assert!(matches!(
            Trivector::new(2, comp3),
            Err(ClassicalError::NotTotallyAntisymmetric { .. })
        ));
    }
}
