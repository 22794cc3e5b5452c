//! Finite-dimensional Hopf data as exact structure tensors.
//!
//! Conventions, fixed for the whole module: `mul[i,j,k]` is the coefficient
//! of e_k in e_i·e_j, `comul[k,i,j]` the coefficient of e_i⊗e_j in Δ(e_k),
//! `antipode[i,j]` the coefficient of e_j in S(e_i).  Every axiom is checked
//! on construction, so a `HopfData` in hand is a Hopf algebra, not a claim.

use std::sync::Arc;

use crate::linalg::{multi_indices, Tensor};
use crate::scalar::Scalar;

use super::HopfError;

#[derive(Debug)]
pub struct HopfData {
    basis: Vec<String>,
    mul: Tensor,
    comul: Tensor,
    unit: Tensor,
    counit: Tensor,
    antipode: Tensor,
}

impl HopfData {
    pub fn new(
        basis: Vec<String>,
        mul: Tensor,
        comul: Tensor,
        unit: Tensor,
        counit: Tensor,
        antipode: Tensor,
    ) -> Result<Self, HopfError> {
        let d = basis.len();
        if d == 0 {
            return Err(HopfError::Shape { what: "basis", expected: vec![1] });
        }
        for (what, tensor, expected) in [
            ("mul", &mul, vec![d, d, d]),
            ("comul", &comul, vec![d, d, d]),
            ("unit", &unit, vec![d]),
            ("counit", &counit, vec![d]),
            ("antipode", &antipode, vec![d, d]),
        ] {
            if tensor.shape() != expected.as_slice() {
                return Err(HopfError::Shape { what, expected });
            }
        }
        let h = HopfData { basis, mul, comul, unit, counit, antipode };
        h.check_axioms()?;
        Ok(h)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn mul(&self) -> &Tensor {
        &self.mul
    }

    pub fn comul(&self) -> &Tensor {
        &self.comul
    }

    pub fn unit(&self) -> &Tensor {
        &self.unit
    }

    pub fn counit(&self) -> &Tensor {
        &self.counit
    }

    pub fn antipode(&self) -> &Tensor {
        &self.antipode
    }

    /// Δ with its two output legs swapped: the opposite coproduct.
    pub fn comul_op(&self) -> Tensor {
        let d = self.dim();
        let mut out = Tensor::zeros(vec![d, d, d]);
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    *out.entry_mut(&[k, j, i]) = self.comul.entry(&[k, i, j]).clone();
                }
            }
        }
        out
    }

    /// Product of two elements of H^{⊗rank} given by coefficient tensors of
    /// equal shape [d; rank]: each tensor leg multiplies through `mul`.
    pub fn alg_product(&self, a: &Tensor, b: &Tensor) -> Tensor {
        let d = self.dim();
        let rank = a.rank();
        assert_eq!(a.shape(), b.shape(), "alg_product operands must share a shape");
        assert!(a.shape().iter().all(|&s| s == d), "alg_product legs must have dimension d");

        // sparse view of the multiplication table: (i, j) -> [(k, coeff)]
        let mut pairs: Vec<Vec<(usize, &Scalar)>> = vec![vec![]; d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = self.mul.entry(&[i, j, k]);
                    if !c.is_zero() {
                        pairs[i * d + j].push((k, c));
                    }
                }
            }
        }

        let shape = a.shape().to_vec();
        let mut out = Tensor::zeros(shape.clone());
        for ia in multi_indices(&shape) {
            let ca = a.entry(&ia);
            if ca.is_zero() {
                continue;
            }
            for ib in multi_indices(&shape) {
                let cb = b.entry(&ib);
                if cb.is_zero() {
                    continue;
                }
                let mut branches: Vec<(Vec<usize>, Scalar)> = vec![(Vec::with_capacity(rank), ca * cb)];
                for leg in 0..rank {
                    let mut next = Vec::with_capacity(branches.len());
                    for (idx, coeff) in &branches {
                        for (k, c) in &pairs[ia[leg] * d + ib[leg]] {
                            let mut grown = idx.clone();
                            grown.push(*k);
                            next.push((grown, coeff * *c));
                        }
                    }
                    branches = next;
                }
                for (idx, coeff) in branches {
                    let slot = out.entry_mut(&idx);
                    *slot = &*slot + &coeff;
                }
            }
        }
        out
    }

    /// unit ⊗ unit ⊗ … as a rank-`rank` coefficient tensor.
    pub fn unit_power(&self, rank: usize) -> Tensor {
        let d = self.dim();
        let shape = vec![d; rank];
        let mut out = Tensor::zeros(shape.clone());
        for idx in multi_indices(&shape) {
            let mut c = Scalar::one();
            for &i in &idx {
                c = &c * &self.unit.entries()[i];
            }
            *out.entry_mut(&idx) = c;
        }
        out
    }

    // ---- construction-time axioms ----

    fn check_axioms(&self) -> Result<(), HopfError> {
        let d = self.dim();
        let m = &self.mul;
        let cm = &self.comul;

        // associativity: (e_i e_j) e_k = e_i (e_j e_k)
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let mut lhs = Scalar::zero();
                        let mut rhs = Scalar::zero();
                        for p in 0..d {
                            lhs = &lhs + &(m.entry(&[i, j, p]) * m.entry(&[p, k, l]));
                            rhs = &rhs + &(m.entry(&[j, k, p]) * m.entry(&[i, p, l]));
                        }
                        if lhs != rhs {
                            return Err(HopfError::Associativity { i, j, k });
                        }
                    }
                }
            }
        }

        // unit: I·e_j = e_j = e_j·I
        for j in 0..d {
            for k in 0..d {
                let mut left = Scalar::zero();
                let mut right = Scalar::zero();
                for i in 0..d {
                    left = &left + &(&self.unit.entries()[i] * m.entry(&[i, j, k]));
                    right = &right + &(&self.unit.entries()[i] * m.entry(&[j, i, k]));
                }
                let expect = delta(j, k);
                if left != expect {
                    return Err(HopfError::Unit { side: "left", i: j });
                }
                if right != expect {
                    return Err(HopfError::Unit { side: "right", i: j });
                }
            }
        }

        // coassociativity: (Δ⊗id)Δ = (id⊗Δ)Δ
        for k in 0..d {
            for x in 0..d {
                for y in 0..d {
                    for z in 0..d {
                        let mut lhs = Scalar::zero();
                        let mut rhs = Scalar::zero();
                        for a in 0..d {
                            lhs = &lhs + &(cm.entry(&[k, a, z]) * cm.entry(&[a, x, y]));
                            rhs = &rhs + &(cm.entry(&[k, x, a]) * cm.entry(&[a, y, z]));
                        }
                        if lhs != rhs {
                            return Err(HopfError::Coassociativity { k });
                        }
                    }
                }
            }
        }

        // counit: (c⊗id)Δ = id = (id⊗c)Δ
        for k in 0..d {
            for b in 0..d {
                let mut left = Scalar::zero();
                let mut right = Scalar::zero();
                for a in 0..d {
                    left = &left + &(&self.counit.entries()[a] * cm.entry(&[k, a, b]));
                    right = &right + &(cm.entry(&[k, b, a]) * &self.counit.entries()[a]);
                }
                let expect = delta(k, b);
                if left != expect {
                    return Err(HopfError::Counit { side: "left", k });
                }
                if right != expect {
                    return Err(HopfError::Counit { side: "right", k });
                }
            }
        }

        // bialgebra compatibility: Δ and c are algebra maps
        for i in 0..d {
            for j in 0..d {
                for x in 0..d {
                    for y in 0..d {
                        let mut lhs = Scalar::zero();
                        for k in 0..d {
                            lhs = &lhs + &(m.entry(&[i, j, k]) * cm.entry(&[k, x, y]));
                        }
                        let mut rhs = Scalar::zero();
                        for a in 0..d {
                            for b in 0..d {
                                let ci = cm.entry(&[i, a, b]);
                                if ci.is_zero() {
                                    continue;
                                }
                                for a2 in 0..d {
                                    for b2 in 0..d {
                                        let cj = cm.entry(&[j, a2, b2]);
                                        if cj.is_zero() {
                                            continue;
                                        }
                                        let term = &(ci * cj)
                                            * &(m.entry(&[a, a2, x]) * m.entry(&[b, b2, y]));
                                        rhs = &rhs + &term;
                                    }
                                }
                            }
                        }
                        if lhs != rhs {
                            return Err(HopfError::ComulMultiplicative { i, j });
                        }
                    }
                }
                let mut ce = Scalar::zero();
                for k in 0..d {
                    ce = &ce + &(m.entry(&[i, j, k]) * &self.counit.entries()[k]);
                }
                if ce != &self.counit.entries()[i] * &self.counit.entries()[j] {
                    return Err(HopfError::CounitMultiplicative { i, j });
                }
            }
        }
        for x in 0..d {
            for y in 0..d {
                let mut lhs = Scalar::zero();
                for k in 0..d {
                    lhs = &lhs + &(&self.unit.entries()[k] * cm.entry(&[k, x, y]));
                }
                if lhs != &self.unit.entries()[x] * &self.unit.entries()[y] {
                    return Err(HopfError::ComulUnit);
                }
            }
        }
        let mut cu = Scalar::zero();
        for k in 0..d {
            cu = &cu + &(&self.unit.entries()[k] * &self.counit.entries()[k]);
        }
        if !cu.is_one() {
            return Err(HopfError::CounitUnit);
        }

        // antipode: m(S⊗id)Δ = I·c = m(id⊗S)Δ
        for k in 0..d {
            for l in 0..d {
                let mut left = Scalar::zero();
                let mut right = Scalar::zero();
                for a in 0..d {
                    for b in 0..d {
                        let c0 = cm.entry(&[k, a, b]);
                        if c0.is_zero() {
                            continue;
                        }
                        for p in 0..d {
                            left = &left
                                + &(c0 * &(self.antipode.at(a, p) * m.entry(&[p, b, l])));
                            right = &right
                                + &(c0 * &(self.antipode.at(b, p) * m.entry(&[a, p, l])));
                        }
                    }
                }
                let expect = &self.counit.entries()[k] * &self.unit.entries()[l];
                if left != expect {
                    return Err(HopfError::Antipode { side: "left", k });
                }
                if right != expect {
                    return Err(HopfError::Antipode { side: "right", k });
                }
            }
        }

        Ok(())
    }
}

fn delta(i: usize, j: usize) -> Scalar {
    if i == j {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// Element of H⊗H tied to its algebra, the carrier for twisting data.
#[derive(Clone)]
pub struct RElement {
    hopf: Arc<HopfData>,
    coeffs: Tensor,
}

impl RElement {
    pub fn new(hopf: &Arc<HopfData>, coeffs: Tensor) -> Result<Self, HopfError> {
        let d = hopf.dim();
        if coeffs.shape() != [d, d] {
            return Err(HopfError::Shape { what: "R coefficients", expected: vec![d, d] });
        }
        Ok(RElement { hopf: Arc::clone(hopf), coeffs })
    }

    /// I⊗I, the trivial twist.
    pub fn identity(hopf: &Arc<HopfData>) -> Self {
        RElement { hopf: Arc::clone(hopf), coeffs: hopf.unit_power(2) }
    }

    pub fn hopf(&self) -> &Arc<HopfData> {
        &self.hopf
    }

    pub fn coeffs(&self) -> &Tensor {
        &self.coeffs
    }

    /// Both counit contractions give the unit.
    pub fn is_counit_normalized(&self) -> bool {
        let h = &self.hopf;
        let d = h.dim();
        for j in 0..d {
            let mut left = Scalar::zero();
            let mut right = Scalar::zero();
            for i in 0..d {
                left = &left + &(&h.counit().entries()[i] * self.coeffs.at(i, j));
                right = &right + &(self.coeffs.at(j, i) * &h.counit().entries()[i]);
            }
            if left != h.unit().entries()[j] || right != h.unit().entries()[j] {
                return false;
            }
        }
        true
    }
}

impl PartialEq for RElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.hopf, &other.hopf) && self.coeffs == other.coeffs
    }
}

impl std::fmt::Debug for RElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let d = self.hopf.dim();
        let mut terms = vec![];
        for i in 0..d {
            for j in 0..d {
                let c = self.coeffs.at(i, j);
                if !c.is_zero() {
                    terms.push(format!(
                        "({})·{}⊗{}",
                        c, self.hopf.basis()[i], self.hopf.basis()[j]
                    ));
                }
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Coproduct twisted on the right: each row k holds Δ(e_k)·R.
pub fn delta_tilde(h: &HopfData, r: &RElement) -> Tensor {
    let d = h.dim();
    let mut out = Tensor::zeros(vec![d, d, d]);
    for k in 0..d {
        let mut row = Tensor::zeros(vec![d, d]);
        for i in 0..d {
            for j in 0..d {
                *row.entry_mut(&[i, j]) = h.comul().entry(&[k, i, j]).clone();
            }
        }
        let twisted = h.alg_product(&row, r.coeffs());
        for i in 0..d {
            for j in 0..d {
                *out.entry_mut(&[k, i, j]) = twisted.at(i, j).clone();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::catalog::{sweedler, z2};

    #[test]
    fn products_follow_the_multiplication_table() {
        let h = z2();
        let mut a = Tensor::zeros(vec![2, 2]);
        *a.entry_mut(&[0, 1]) = Scalar::one(); // 1⊗g
        let mut b = Tensor::zeros(vec![2, 2]);
        *b.entry_mut(&[1, 0]) = Scalar::one(); // g⊗1
        let p = h.alg_product(&a, &b);
        assert!(p.at(1, 1).is_one(), "expected g⊗g, got {p:?}");
        assert!(p.sub(&{
            let mut t = Tensor::zeros(vec![2, 2]);
            *t.entry_mut(&[1, 1]) = Scalar::one();
            t
        })
        .is_zero());
    }

    #[test]
    fn unit_power_is_the_tensor_power_of_the_unit() {
        let h = sweedler();
        let u = h.unit_power(3);
        assert!(u.entry(&[0, 0, 0]).is_one());
        assert_eq!(u.entries().iter().filter(|c| !c.is_zero()).count(), 1);
    }

    #[test]
    fn opposite_coproduct_swaps_output_legs() {
        let h = sweedler();
        let op = h.comul_op();
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(op.entry(&[k, i, j]), h.comul().entry(&[k, j, i]));
                }
            }
        }
    }

    #[test]
    fn identity_twist_leaves_the_coproduct_alone() {
        for h in [z2(), sweedler()] {
            let r = RElement::identity(&h);
            assert!(delta_tilde(&h, &r).sub(h.comul()).is_zero());
        }
    }

    #[test]
    fn twisted_coproduct_of_the_unit_is_the_twist() {
        let h = sweedler();
        let mut coeffs = Tensor::zeros(vec![4, 4]);
        *coeffs.entry_mut(&[1, 2]) = Scalar::from_integer(3); // 3·g⊗x, arbitrary
        *coeffs.entry_mut(&[0, 0]) = Scalar::one();
        let r = RElement::new(&h, coeffs.clone()).unwrap();
        let dt = delta_tilde(&h, &r);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(dt.entry(&[0, i, j]), coeffs.at(i, j));
            }
        }
    }

    #[test]
    fn counit_normalization_accepts_the_identity_and_rejects_grouplikes() {
        let h = sweedler();
        assert!(RElement::identity(&h).is_counit_normalized());
        let mut gg = Tensor::zeros(vec![4, 4]);
        *gg.entry_mut(&[1, 1]) = Scalar::one();
        assert!(!RElement::new(&h, gg).unwrap().is_counit_normalized());
    }

    #[test]
    fn wrong_shapes_are_rejected() {
        let h = z2();
        assert!(matches!(
            RElement::new(&h, Tensor::zeros(vec![3, 3])),
            Err(HopfError::Shape { .. })
        ));
    }
}
