//! Normal-ordered words over matrix generator families, exact-coefficient
//! noncommutative polynomials, and a bounded-degree ideal-membership engine
//! whose positive answers come with replayable certificates.
//!
//! Generators are declared in n×n matrix families, each pinned to a tensor
//! leg; declaring a family also declares its star partners as a sibling
//! family on the same leg.  Letters on different legs commute, letters on a
//! shared leg do not, so the canonical form of a word is the stable sort of
//! its letters by leg.  Words compare deg-lex via the global declaration
//! order of their letters.

mod ideal;
mod poly;

pub use ideal::{reduce_mod_ideal, CertTerm, IdealSpan, Reduction, RelationSet};
pub use poly::{matrix_compose_factors, matrix_tensor_square, GeneratorMatrix, NCPoly};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Index of a generator in declaration order; doubles as the letter alphabet.
pub type GenId = u32;

/// Index of a generator family (a matrix block or its star block).
pub type FamilyId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NcError {
    #[error("word {word} has degree {degree}, above the bound {max_degree}")]
    DegreeOverflow { word: String, degree: usize, max_degree: usize },
    #[error("span needs more than {cap} rows at this degree; refusing to build")]
    RowBudget { cap: usize },
    #[error("sector of {word} was not prepared when this span was built")]
    SectorNotPrepared { word: String },
    #[error("image of {gen} is not the star of its partner's image")]
    StarMismatch { gen: String },
    #[error("no image provided for generator {gen}")]
    MissingImage { gen: String },
    #[error("factor legs must be disjoint and strictly ascending; leg {leg} breaks that")]
    LegCollision { leg: usize },
    #[error("matrix sizes {left} and {right} do not compose")]
    SizeMismatch { left: usize, right: usize },
}

// ---- generator sets ----

#[derive(Debug)]
struct GenInfo {
    family: FamilyId,
    leg: usize,
    star: GenId,
    name: String,
}

#[derive(Debug)]
struct FamilyInfo {
    name: String,
    leg: usize,
    n: usize,
    starred: bool,
    first: GenId,
}

/// Immutable alphabet of generators, grouped into matrix families with star
/// partners.  Built once via [`GeneratorSetBuilder`] and shared by `Arc`.
#[derive(Debug)]
pub struct GeneratorSet {
    gens: Vec<GenInfo>,
    families: Vec<FamilyInfo>,
}

#[derive(Default)]
pub struct GeneratorSetBuilder {
    gens: Vec<GenInfo>,
    families: Vec<FamilyInfo>,
}

impl GeneratorSetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares an n×n family `name` on `leg` together with its star family
    /// `name*`; returns the id of the unstarred family.
    pub fn matrix_family(&mut self, name: &str, n: usize, leg: usize) -> FamilyId {
        assert!(n >= 1, "matrix family needs n >= 1");
        let base = self.push_family(name.to_string(), n, leg, false);
        let star = self.push_family(format!("{name}*"), n, leg, true);
        let count = (n * n) as u32;
        let base_first = self.families[base].first;
        let star_first = self.families[star].first;
        for k in 0..count {
            self.gens[(base_first + k) as usize].star = star_first + k;
            self.gens[(star_first + k) as usize].star = base_first + k;
        }
        base
    }

    fn push_family(&mut self, name: String, n: usize, leg: usize, starred: bool) -> FamilyId {
        let id = self.families.len();
        let first = self.gens.len() as GenId;
        for i in 0..n {
            for j in 0..n {
                self.gens.push(GenInfo {
                    family: id,
                    leg,
                    star: 0,
                    name: format!("{}({},{})", name, i + 1, j + 1),
                });
            }
        }
        self.families.push(FamilyInfo { name, leg, n, starred, first });
        id
    }

    pub fn finish(self) -> Arc<GeneratorSet> {
        Arc::new(GeneratorSet { gens: self.gens, families: self.families })
    }
}

impl GeneratorSet {
    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn family_count(&self) -> usize {
        self.families.len()
    }

    /// Generator at row `i`, column `j` (0-based) of `family`.
    pub fn gen_id(&self, family: FamilyId, i: usize, j: usize) -> GenId {
        let info = &self.families[family];
        assert!(i < info.n && j < info.n, "generator index out of range");
        info.first + (i * info.n + j) as GenId
    }

    /// The star family paired with `family` (in either direction).
    pub fn star_family(&self, family: FamilyId) -> FamilyId {
        let info = &self.families[family];
        self.gens[self.gens[info.first as usize].star as usize].family
    }

    pub fn star_of(&self, g: GenId) -> GenId {
        self.gens[g as usize].star
    }

    pub fn leg_of(&self, g: GenId) -> usize {
        self.gens[g as usize].leg
    }

    pub fn family_of(&self, g: GenId) -> FamilyId {
        self.gens[g as usize].family
    }

    pub fn name_of(&self, g: GenId) -> &str {
        &self.gens[g as usize].name
    }

    pub fn family_name(&self, family: FamilyId) -> &str {
        &self.families[family].name
    }

    pub fn family_side(&self, family: FamilyId) -> usize {
        self.families[family].n
    }

    pub fn family_leg(&self, family: FamilyId) -> usize {
        self.families[family].leg
    }

    pub fn family_is_starred(&self, family: FamilyId) -> bool {
        self.families[family].starred
    }

    /// All generator ids whose leg lies in `legs`.
    pub(crate) fn gens_on_legs(&self, legs: &[usize]) -> Vec<GenId> {
        (0..self.gens.len() as GenId).filter(|&g| legs.contains(&self.leg_of(g))).collect()
    }

    /// Letter counts per family: the grading used for sector pruning.
    pub(crate) fn multidegree(&self, word: &Word) -> Vec<u16> {
        let mut d = vec![0u16; self.families.len()];
        for &g in word.letters() {
            d[self.gens[g as usize].family] += 1;
        }
        d
    }
}

// ---- words ----

/// Canonical product of generators: letters stably sorted by leg, free order
/// within a leg.  Empty word is the algebra unit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word(Box<[GenId]>);

impl Word {
    pub fn empty() -> Self {
        Word(Box::from([]))
    }

    /// Canonicalizes `letters` by a stable sort on leg.
    pub fn normalize(gens: &GeneratorSet, mut letters: Vec<GenId>) -> Self {
        letters.sort_by_key(|&g| gens.leg_of(g));
        Word(letters.into_boxed_slice())
    }

    pub(crate) fn concat(gens: &GeneratorSet, a: &Word, b: &Word) -> Self {
        let mut letters = Vec::with_capacity(a.len() + b.len());
        letters.extend_from_slice(a.letters());
        letters.extend_from_slice(b.letters());
        Word::normalize(gens, letters)
    }

    /// Star partner: reverse the word and star each letter.  Reversing and
    /// re-sorting by leg reverses each leg's subsequence, which is exactly
    /// the antihomomorphism on canonical forms.
    pub(crate) fn star(&self, gens: &GeneratorSet) -> Self {
        let letters: Vec<GenId> = self.0.iter().rev().map(|&g| gens.star_of(g)).collect();
        Word::normalize(gens, letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    pub fn display(&self, gens: &GeneratorSet) -> String {
        if self.is_empty() {
            return "1".into();
        }
        self.0.iter().map(|&g| gens.name_of(g)).collect::<Vec<_>>().join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", &self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_come_with_star_partners_on_the_same_leg() {
        let mut b = GeneratorSetBuilder::new();
        let u = b.matrix_family("u", 2, 0);
        let w = b.matrix_family("w", 2, 1);
        let gens = b.finish();
        assert_eq!(gens.gen_count(), 16);
        assert_eq!(gens.family_count(), 4);
        let u11 = gens.gen_id(u, 0, 0);
        let s11 = gens.star_of(u11);
        assert_eq!(gens.star_of(s11), u11);
        assert_eq!(gens.leg_of(s11), 0);
        assert_eq!(gens.name_of(u11), "u(1,1)");
        assert_eq!(gens.name_of(s11), "u*(1,1)");
        assert_eq!(gens.name_of(gens.gen_id(w, 1, 0)), "w(2,1)");
        assert_eq!(gens.star_family(u), u + 1);
        assert_eq!(gens.star_family(u + 1), u);
    }

    #[test]
    fn normalization_sorts_by_leg_and_keeps_leg_order() {
        let mut b = GeneratorSetBuilder::new();
        let u = b.matrix_family("u", 2, 0);
        let w = b.matrix_family("w", 2, 1);
        let gens = b.finish();
        let (u11, u12) = (gens.gen_id(u, 0, 0), gens.gen_id(u, 0, 1));
        let w21 = gens.gen_id(w, 1, 0);
        let word = Word::normalize(&gens, vec![w21, u12, u11]);
        assert_eq!(word.letters(), &[u12, u11, w21]);
        assert_eq!(word.display(&gens), "u(1,2)*u(1,1)*w(2,1)");
        let same = Word::normalize(&gens, vec![u12, w21, u11]);
        assert_eq!(word, same);
        let different = Word::normalize(&gens, vec![u11, w21, u12]);
        assert_ne!(word, different);
    }

    #[test]
    fn word_order_is_degree_then_lex() {
        let mut b = GeneratorSetBuilder::new();
        let u = b.matrix_family("u", 2, 0);
        let gens = b.finish();
        let (u11, u12) = (gens.gen_id(u, 0, 0), gens.gen_id(u, 0, 1));
        let one = Word::empty();
        let a = Word::normalize(&gens, vec![u11]);
        let ab = Word::normalize(&gens, vec![u11, u12]);
        let ba = Word::normalize(&gens, vec![u12, u11]);
        assert!(one < a && a < ab && ab < ba);
    }

    #[test]
    fn star_reverses_within_each_leg() {
        let mut b = GeneratorSetBuilder::new();
        let u = b.matrix_family("u", 2, 0);
        let w = b.matrix_family("w", 2, 1);
        let gens = b.finish();
        let (u11, u12) = (gens.gen_id(u, 0, 0), gens.gen_id(u, 0, 1));
        let (w11, w21) = (gens.gen_id(w, 0, 0), gens.gen_id(w, 1, 0));
        let word = Word::normalize(&gens, vec![u11, u12, w11, w21]);
        let star = word.star(&gens);
        assert_eq!(
            star.letters(),
            &[gens.star_of(u12), gens.star_of(u11), gens.star_of(w21), gens.star_of(w11)]
        );
        assert_eq!(star.star(&gens), word);
    }
}
