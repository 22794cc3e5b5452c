//! Noncommutative polynomials over a shared generator set, and the matrix
//! plumbing (star companions, tensor squares, factor composition) the
//! relation builders are phrased in.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::linalg::Tensor;
use crate::ncalg::{GenId, GeneratorSet, NcError, Word};
use crate::scalar::Scalar;

/// Finite sum of scalar-weighted canonical words.  No zero coefficients are
/// stored; the zero polynomial has an empty term map.
#[derive(Clone)]
pub struct NCPoly {
    gens: Arc<GeneratorSet>,
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero(gens: &Arc<GeneratorSet>) -> Self {
        NCPoly { gens: Arc::clone(gens), terms: BTreeMap::new() }
    }

    pub fn one(gens: &Arc<GeneratorSet>) -> Self {
        NCPoly::constant(gens, Scalar::one())
    }

    pub fn constant(gens: &Arc<GeneratorSet>, c: Scalar) -> Self {
        let mut p = NCPoly::zero(gens);
        if !c.is_zero() {
            p.terms.insert(Word::empty(), c);
        }
        p
    }

    pub fn generator(gens: &Arc<GeneratorSet>, g: GenId) -> Self {
        let mut p = NCPoly::zero(gens);
        p.terms.insert(Word::normalize(gens, vec![g]), Scalar::one());
        p
    }

    pub fn from_word(gens: &Arc<GeneratorSet>, w: Word, c: Scalar) -> Self {
        let mut p = NCPoly::zero(gens);
        if !c.is_zero() {
            p.terms.insert(w, c);
        }
        p
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word length present; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Leading term in deg-lex order, if any.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.last_key_value()
    }

    pub(crate) fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        let mut out = NCPoly::zero(&self.gens);
        if c.is_zero() {
            return out;
        }
        for (w, v) in &self.terms {
            out.terms.insert(w.clone(), v * c);
        }
        out
    }

    /// Star: antihomomorphism fixing generators' star partners, conjugating
    /// coefficients.
    pub fn star(&self) -> NCPoly {
        let mut out = NCPoly::zero(&self.gens);
        for (w, c) in &self.terms {
            out.add_term(w.star(&self.gens), c.conjugate());
        }
        out
    }

    /// Replaces every generator by its image, which may live in a different
    /// generator set.  Images must be star-consistent: whenever both g and
    /// g* have images, the images must be stars of each other.
    pub fn substitute(
        &self,
        target: &Arc<GeneratorSet>,
        images: &BTreeMap<GenId, NCPoly>,
    ) -> Result<NCPoly, NcError> {
        for (&g, img) in images {
            let partner = self.gens.star_of(g);
            if let Some(partner_img) = images.get(&partner) {
                if partner_img.terms != img.star().terms {
                    return Err(NcError::StarMismatch { gen: self.gens.name_of(g).to_string() });
                }
            }
        }
        let mut out = NCPoly::zero(target);
        for (w, c) in &self.terms {
            let mut acc = NCPoly::constant(target, c.clone());
            for &g in w.letters() {
                let img = images
                    .get(&g)
                    .ok_or_else(|| NcError::MissingImage { gen: self.gens.name_of(g).to_string() })?;
                acc = &acc * img;
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    fn assert_same_set(&self, other: &NCPoly) {
        assert!(
            Arc::ptr_eq(&self.gens, &other.gens),
            "polynomials over different generator sets"
        );
    }
}

impl PartialEq for NCPoly {
    fn eq(&self, other: &Self) -> bool {
        self.assert_same_set(other);
        self.terms == other.terms
    }
}

impl Eq for NCPoly {}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        self.assert_same_set(rhs);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self.assert_same_set(rhs);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        let mut out = NCPoly::zero(&self.gens);
        for (w, c) in &self.terms {
            out.terms.insert(w.clone(), -c);
        }
        out
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        self.assert_same_set(rhs);
        let mut out = NCPoly::zero(&self.gens);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                out.add_term(Word::concat(&self.gens, wa, wb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let cs = c.to_string();
            if cs.contains(' ') {
                write!(f, "({cs})")?;
            } else {
                f.write_str(&cs)?;
            }
            if !w.is_empty() {
                write!(f, "*{}", w.display(&self.gens))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---- generator matrices ----

/// Square matrix with [`NCPoly`] entries over one shared generator set.
#[derive(Clone)]
pub struct GeneratorMatrix {
    gens: Arc<GeneratorSet>,
    n: usize,
    entries: Vec<NCPoly>,
}

impl PartialEq for GeneratorMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl Eq for GeneratorMatrix {}

impl GeneratorMatrix {
    /// The matrix of a family's generators: entry (i, j) is family(i, j).
    pub fn from_family(gens: &Arc<GeneratorSet>, family: crate::ncalg::FamilyId) -> Self {
        let n = gens.family_side(family);
        let entries = (0..n * n)
            .map(|a| NCPoly::generator(gens, gens.gen_id(family, a / n, a % n)))
            .collect();
        GeneratorMatrix { gens: Arc::clone(gens), n, entries }
    }

    pub fn identity(gens: &Arc<GeneratorSet>, n: usize) -> Self {
        let entries = (0..n * n)
            .map(|a| {
                if a / n == a % n {
                    NCPoly::one(gens)
                } else {
                    NCPoly::zero(gens)
                }
            })
            .collect();
        GeneratorMatrix { gens: Arc::clone(gens), n, entries }
    }

    pub fn from_entries(gens: &Arc<GeneratorSet>, n: usize, entries: Vec<NCPoly>) -> Self {
        assert_eq!(entries.len(), n * n, "entry count must be n^2");
        GeneratorMatrix { gens: Arc::clone(gens), n, entries }
    }

    /// Lifts a rank-2 scalar tensor to a matrix of constant polynomials.
    pub fn from_scalar_tensor(gens: &Arc<GeneratorSet>, t: &Tensor) -> Self {
        assert_eq!(t.rank(), 2, "scalar lift needs a rank-2 tensor");
        let n = t.shape()[0];
        assert_eq!(t.shape()[1], n, "scalar lift needs a square tensor");
        let entries = (0..n * n)
            .map(|a| NCPoly::constant(gens, t.at(a / n, a % n).clone()))
            .collect();
        GeneratorMatrix { gens: Arc::clone(gens), n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn entry(&self, i: usize, j: usize) -> &NCPoly {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[NCPoly] {
        &self.entries
    }

    /// Conjugate transpose: entry (i, j) is the star of entry (j, i).
    pub fn star_companion(&self) -> GeneratorMatrix {
        let entries = (0..self.n * self.n)
            .map(|a| self.entry(a % self.n, a / self.n).star())
            .collect();
        GeneratorMatrix { gens: Arc::clone(&self.gens), n: self.n, entries }
    }

    /// Star of every entry in place, without the transpose.
    pub fn entrywise_star(&self) -> GeneratorMatrix {
        let entries = self.entries.iter().map(NCPoly::star).collect();
        GeneratorMatrix { gens: Arc::clone(&self.gens), n: self.n, entries }
    }

    pub fn matmul(&self, rhs: &GeneratorMatrix) -> Result<GeneratorMatrix, NcError> {
        if self.n != rhs.n {
            return Err(NcError::SizeMismatch { left: self.n, right: rhs.n });
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = NCPoly::zero(&self.gens);
                for k in 0..n {
                    acc = &acc + &(self.entry(i, k) * rhs.entry(k, j));
                }
                entries.push(acc);
            }
        }
        Ok(GeneratorMatrix { gens: Arc::clone(&self.gens), n, entries })
    }

    pub fn scale(&self, c: &Scalar) -> GeneratorMatrix {
        let entries = self.entries.iter().map(|p| p.scale(c)).collect();
        GeneratorMatrix { gens: Arc::clone(&self.gens), n: self.n, entries }
    }

    /// Legs that actually occur in the entries' words.
    pub fn legs(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for p in &self.entries {
            for (w, _) in p.terms() {
                for &g in w.letters() {
                    out.insert(self.gens.leg_of(g));
                }
            }
        }
        out
    }
}

impl fmt::Debug for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GeneratorMatrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        f.write_str("]")
    }
}

/// Tensor square as an n²×n² matrix: entry ((i,k),(j,l)) = M(i,j)·M(k,l).
pub fn matrix_tensor_square(m: &GeneratorMatrix) -> GeneratorMatrix {
    let n = m.n();
    let mut entries = Vec::with_capacity(n.pow(4));
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                for l in 0..n {
                    entries.push(m.entry(i, j) * m.entry(k, l));
                }
            }
        }
    }
    GeneratorMatrix { gens: Arc::clone(m.gens()), n: n * n, entries }
}

/// Entrywise matrix product of factors living on disjoint, strictly
/// ascending legs.  Scalar factors (no legs) are allowed anywhere.
pub fn matrix_compose_factors(ms: &[&GeneratorMatrix]) -> Result<GeneratorMatrix, NcError> {
    assert!(!ms.is_empty(), "need at least one factor");
    let mut last_leg: Option<usize> = None;
    for m in ms {
        let legs = m.legs();
        if let (&Some(prev), Some(&lo)) = (&last_leg, legs.first()) {
            if lo <= prev {
                return Err(NcError::LegCollision { leg: lo });
            }
        }
        if let Some(&hi) = legs.last() {
            last_leg = Some(hi);
        }
    }
    let mut acc = (*ms[0]).clone();
    for m in &ms[1..] {
        acc = acc.matmul(m)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::GeneratorSetBuilder;

    fn two_leg_set() -> (Arc<GeneratorSet>, crate::ncalg::FamilyId, crate::ncalg::FamilyId) {
        let mut b = GeneratorSetBuilder::new();
        let u = b.matrix_family("u", 2, 0);
        let w = b.matrix_family("w", 2, 1);
        (b.finish(), u, w)
    }

    #[test]
    fn cross_leg_letters_commute_in_products() {
        let (gens, u, w) = two_leg_set();
        let a = NCPoly::generator(&gens, gens.gen_id(u, 0, 0));
        let b = NCPoly::generator(&gens, gens.gen_id(w, 1, 1));
        assert_eq!(&a * &b, &b * &a);
        let c = NCPoly::generator(&gens, gens.gen_id(u, 0, 1));
        assert_ne!(&a * &c, &c * &a);
    }

    #[test]
    fn star_is_an_involutive_antihomomorphism() {
        let (gens, u, _) = two_leg_set();
        let a = NCPoly::generator(&gens, gens.gen_id(u, 0, 0));
        let b = NCPoly::generator(&gens, gens.gen_id(u, 0, 1));
        let p = &(&a * &b).scale(&Scalar::q()) + &NCPoly::one(&gens);
        assert_eq!(p.star().star(), p);
        assert_eq!((&a * &b).star(), &b.star() * &a.star());
        let q_conj = Scalar::q().conjugate();
        assert_eq!(a.scale(&Scalar::q()).star(), a.star().scale(&q_conj));
    }

    #[test]
    fn substitution_respects_star_and_rejects_mismatches() {
        let (gens, u, w) = two_leg_set();
        let u11 = gens.gen_id(u, 0, 0);
        let s11 = gens.star_of(u11);
        let w11 = NCPoly::generator(&gens, gens.gen_id(w, 0, 0));

        let mut good = BTreeMap::new();
        good.insert(u11, w11.clone());
        good.insert(s11, w11.star());
        let p = &NCPoly::generator(&gens, u11) * &NCPoly::generator(&gens, s11);
        let image = p.substitute(&gens, &good).unwrap();
        assert_eq!(image, &w11 * &w11.star());

        let mut bad = BTreeMap::new();
        bad.insert(u11, w11.clone());
        bad.insert(s11, w11.clone());
        assert!(matches!(p.substitute(&gens, &bad), Err(NcError::StarMismatch { .. })));

        let mut partial = BTreeMap::new();
        partial.insert(u11, w11);
        assert!(matches!(p.substitute(&gens, &partial), Err(NcError::MissingImage { .. })));
    }

    #[test]
    fn star_companion_is_the_conjugate_transpose() {
        let (gens, u, _) = two_leg_set();
        let m = GeneratorMatrix::from_family(&gens, u);
        let mc = m.star_companion();
        assert_eq!(*mc.entry(0, 1), m.entry(1, 0).star());
        assert_eq!(mc.star_companion(), m);
    }

    #[test]
    fn tensor_square_layout_pairs_row_and_column_indices() {
        let (gens, u, _) = two_leg_set();
        let m = GeneratorMatrix::from_family(&gens, u);
        let sq = matrix_tensor_square(&m);
        assert_eq!(sq.n(), 4);
        // ((i,k),(j,l)) with i=0,k=1,j=1,l=0 sits at row 0*2+1, col 1*2+0.
        assert_eq!(*sq.entry(1, 2), m.entry(0, 1) * m.entry(1, 0));
    }

    #[test]
    fn factor_composition_requires_ascending_disjoint_legs() {
        let (gens, u, w) = two_leg_set();
        let mu = GeneratorMatrix::from_family(&gens, u);
        let mw = GeneratorMatrix::from_family(&gens, w);
        let id = GeneratorMatrix::identity(&gens, 2);

        let v = matrix_compose_factors(&[&mu, &mw]).unwrap();
        let direct = mu.matmul(&mw).unwrap();
        assert_eq!(v, direct);

        let with_id = matrix_compose_factors(&[&mu, &id, &mw]).unwrap();
        assert_eq!(with_id, direct);

        assert!(matches!(
            matrix_compose_factors(&[&mw, &mu]),
            Err(NcError::LegCollision { .. })
        ));
        assert!(matches!(
            matrix_compose_factors(&[&mu, &mu]),
            Err(NcError::LegCollision { .. })
        ));
    }
}
