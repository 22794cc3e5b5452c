//! Bounded-degree ideal membership with replayable certificates.
//!
//! Membership of p in the two-sided ideal of a relation set, truncated at
//! degree D, means p is a linear combination of border products m·r·m′ in
//! which every monomial has degree ≤ D.  Borders are pruned by a closure
//! over per-family letter counts: starting from the sectors of the queried
//! polynomials, any border row with one component inside the closure has
//! all its components added.  Rows entirely outside the closure cannot
//! contribute to a query (their support is disjoint), so the pruned span
//! decides membership exactly.  Surviving rows are echelonized by leading
//! word, and every pivot row carries its expression as a combination of
//! borders, which makes positive answers replayable.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::ncalg::{GeneratorSet, NcError, NCPoly, Word};
use crate::scalar::Scalar;

const ROW_CAP: usize = 500_000;

// ---- relation sets ----

/// Named list of relations over one generator set, deduplicated up to scalar
/// multiples.  The default constructor also closes the list under star, so
/// the generated ideal is a *-ideal.
pub struct RelationSet {
    gens: Arc<GeneratorSet>,
    name: String,
    rels: Vec<NCPoly>,
    max_degree: usize,
    homogeneous: bool,
}

impl RelationSet {
    pub fn star_closed(name: &str, gens: &Arc<GeneratorSet>, rels: Vec<NCPoly>) -> Self {
        let mut all = rels.clone();
        all.extend(rels.iter().map(NCPoly::star));
        Self::without_star_closure(name, gens, all)
    }

    /// Keeps the list as given (deduplicated); for experiments that need the
    /// plain ideal rather than the *-ideal.
    pub fn without_star_closure(name: &str, gens: &Arc<GeneratorSet>, rels: Vec<NCPoly>) -> Self {
        let mut seen = BTreeSet::new();
        let mut kept = Vec::new();
        for r in rels {
            assert!(
                Arc::ptr_eq(r.gens(), gens),
                "relation over a different generator set"
            );
            if r.is_zero() {
                continue;
            }
            let lead = r.leading().expect("nonzero").1.clone();
            let monic = r.scale(&lead.inv().expect("leading coefficient is nonzero"));
            if seen.insert(monic.to_string()) {
                kept.push(r);
            }
        }
        let max_degree = kept.iter().map(NCPoly::degree).max().unwrap_or(0);
        let homogeneous = kept
            .iter()
            .all(|r| r.terms().all(|(w, _)| w.len() == r.degree()));
        RelationSet { gens: Arc::clone(gens), name: name.to_string(), rels: kept, max_degree, homogeneous }
    }

    /// Concatenation of two relation sets over the same generators.
    pub fn union(name: &str, a: &RelationSet, b: &RelationSet) -> Self {
        assert!(Arc::ptr_eq(&a.gens, &b.gens), "union across generator sets");
        let mut rels = a.rels.clone();
        rels.extend(b.rels.iter().cloned());
        Self::without_star_closure(name, &a.gens, rels)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn relations(&self) -> &[NCPoly] {
        &self.rels
    }

    pub fn len(&self) -> usize {
        self.rels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rels.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "max_degree": self.max_degree,
            "homogeneous": self.homogeneous,
            "relations": self.rels.iter().map(|r| poly_json(r)).collect::<Vec<_>>(),
        })
    }
}

fn poly_json(p: &NCPoly) -> Value {
    let gens = p.gens();
    let terms: Vec<Value> = p
        .terms()
        .map(|(w, c)| {
            json!({
                "coeff": c.to_string(),
                "word": w.letters().iter().map(|&g| gens.name_of(g)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Value::Array(terms)
}

// ---- reductions ----

/// One border product in a membership certificate: coeff · left · rel · right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertTerm {
    pub coeff: Scalar,
    pub rel: usize,
    pub left: Word,
    pub right: Word,
}

/// Outcome of reducing a polynomial against a truncated ideal span.
#[derive(Debug)]
pub struct Reduction {
    pub in_span: bool,
    pub residual: NCPoly,
    pub certificate: Vec<CertTerm>,
}

impl Reduction {
    /// Re-expands the certificate; equals the queried polynomial whenever
    /// `in_span` (and p − residual in general).
    pub fn replay(&self, rels: &RelationSet) -> NCPoly {
        let gens = rels.gens();
        let mut acc = NCPoly::zero(gens);
        for t in &self.certificate {
            let l = NCPoly::from_word(gens, t.left.clone(), t.coeff.clone());
            let r = NCPoly::from_word(gens, t.right.clone(), Scalar::one());
            acc = &acc + &(&(&l * &rels.relations()[t.rel]) * &r);
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        let gens = self.residual.gens();
        let cert: Vec<Value> = self
            .certificate
            .iter()
            .map(|t| {
                json!({
                    "coeff": t.coeff.to_string(),
                    "rel": t.rel,
                    "left": t.left.letters().iter().map(|&g| gens.name_of(g)).collect::<Vec<_>>(),
                    "right": t.right.letters().iter().map(|&g| gens.name_of(g)).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "in_span": self.in_span,
            "residual": poly_json(&self.residual),
            "certificate": cert,
        })
    }
}

// ---- the span engine ----

struct RelMeta {
    components: BTreeSet<Vec<u16>>,
    legs: Vec<usize>,
    max_degree: usize,
}

struct Border {
    rel: usize,
    left: Word,
    right: Word,
}

struct Row {
    poly: BTreeMap<Word, Scalar>,
    cert: BTreeMap<usize, Scalar>,
}

/// Echelonized truncated span of an ideal, prepared for the sectors of a
/// fixed set of target polynomials and reusable across queries there.
pub struct IdealSpan {
    gens: Arc<GeneratorSet>,
    max_degree: usize,
    sectors: BTreeSet<Vec<u16>>,
    borders: Vec<Border>,
    rows: Vec<Row>,
    pivots: BTreeMap<Word, usize>,
}

fn vec_add(a: &[u16], b: &[u16]) -> Vec<u16> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vec_sub(a: &[u16], b: &[u16]) -> Option<Vec<u16>> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y)).collect()
}

fn vec_sum(a: &[u16]) -> usize {
    a.iter().map(|&x| x as usize).sum()
}

fn check_degree(p: &NCPoly, max_degree: usize) -> Result<(), NcError> {
    for (w, _) in p.terms() {
        if w.len() > max_degree {
            return Err(NcError::DegreeOverflow {
                word: w.display(p.gens()),
                degree: w.len(),
                max_degree,
            });
        }
    }
    Ok(())
}

impl IdealSpan {
    /// Prepares the span for the sectors occupied by `targets`.
    pub fn build(
        rels: &RelationSet,
        max_degree: usize,
        targets: &[&NCPoly],
    ) -> Result<IdealSpan, NcError> {
        let gens = rels.gens();
        let mut seed = BTreeSet::new();
        for p in targets {
            check_degree(p, max_degree)?;
            for (w, _) in p.terms() {
                seed.insert(gens.multidegree(w));
            }
        }
        Self::build_seeded(rels, max_degree, seed)
    }

    /// Prepares the span for every sector reachable at the degree bound;
    /// used to measure span dimensions.
    pub fn build_all(rels: &RelationSet, max_degree: usize) -> Result<IdealSpan, NcError> {
        let fam = rels.gens().family_count();
        let mut seed = BTreeSet::new();
        let mut stack = vec![vec![0u16; fam]];
        while let Some(v) = stack.pop() {
            if !seed.insert(v.clone()) {
                continue;
            }
            if vec_sum(&v) < max_degree {
                for f in 0..fam {
                    let mut next = v.clone();
                    next[f] += 1;
                    stack.push(next);
                }
            }
        }
        Self::build_seeded(rels, max_degree, seed)
    }

    fn build_seeded(
        rels: &RelationSet,
        max_degree: usize,
        seed: BTreeSet<Vec<u16>>,
    ) -> Result<IdealSpan, NcError> {
        let gens = Arc::clone(rels.gens());
        let metas: Vec<RelMeta> = rels
            .relations()
            .iter()
            .map(|r| {
                let components = r.terms().map(|(w, _)| gens.multidegree(w)).collect();
                let mut legs: Vec<usize> = r
                    .terms()
                    .flat_map(|(w, _)| w.letters().iter().map(|&g| gens.leg_of(g)))
                    .collect();
                legs.sort_unstable();
                legs.dedup();
                RelMeta { components, legs, max_degree: r.degree() }
            })
            .collect();

        // Closure: a border row is included as soon as one of its components
        // lies in the sector set, so all its components must lie there too.
        let mut sectors = seed;
        loop {
            let mut added = BTreeSet::new();
            for meta in &metas {
                if meta.max_degree > max_degree {
                    continue;
                }
                for c in &sectors {
                    for di in &meta.components {
                        let Some(beta) = vec_sub(c, di) else { continue };
                        if vec_sum(&beta) + meta.max_degree > max_degree {
                            continue;
                        }
                        for dj in &meta.components {
                            let comp = vec_add(&beta, dj);
                            if !sectors.contains(&comp) {
                                added.insert(comp);
                            }
                        }
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            sectors.extend(added);
        }

        let caps: Vec<u16> = (0..gens.family_count())
            .map(|f| sectors.iter().map(|s| s[f]).max().unwrap_or(0))
            .collect();

        let mut span = IdealSpan {
            gens: Arc::clone(&gens),
            max_degree,
            sectors,
            borders: Vec::new(),
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        };

        let all_gens: Vec<u32> = (0..gens.gen_count() as u32).collect();
        for (ri, (rel, meta)) in rels.relations().iter().zip(&metas).enumerate() {
            if meta.max_degree > max_degree {
                continue;
            }
            let budget = max_degree - meta.max_degree;
            let left_gens = gens.gens_on_legs(&meta.legs);
            let mut seen = BTreeSet::new();
            let mut counts = vec![0u16; gens.family_count()];
            let mut prefix = Vec::new();
            walk_words(&gens, &left_gens, budget, &caps, &mut counts, &mut prefix, &mut |left, lcounts| {
                let left_word = Word::normalize(&gens, left.to_vec());
                let mut rcounts = lcounts.to_vec();
                let mut rprefix = Vec::new();
                let remaining = budget - left.len();
                walk_words(&gens, &all_gens, remaining, &caps, &mut rcounts, &mut rprefix, &mut |right, border_counts| {
                    let admissible = meta
                        .components
                        .iter()
                        .any(|di| span.sectors.contains(&vec_add(border_counts, di)));
                    if !admissible {
                        return Ok(());
                    }
                    let right_word = Word::normalize(&gens, right.to_vec());
                    if !seen.insert((left_word.clone(), right_word.clone())) {
                        return Ok(());
                    }
                    if span.borders.len() >= ROW_CAP {
                        return Err(NcError::RowBudget { cap: ROW_CAP });
                    }
                    let mut poly = BTreeMap::new();
                    for (w, c) in rel.terms() {
                        let word = Word::concat(&gens, &Word::concat(&gens, &left_word, w), &right_word);
                        map_add(&mut poly, word, c.clone());
                    }
                    if poly.is_empty() {
                        return Ok(());
                    }
                    let id = span.borders.len();
                    span.borders.push(Border {
                        rel: ri,
                        left: left_word.clone(),
                        right: right_word.clone(),
                    });
                    let mut cert = BTreeMap::new();
                    cert.insert(id, Scalar::one());
                    span.insert_row(poly, cert);
                    Ok(())
                })
            })?;
        }
        Ok(span)
    }

    fn insert_row(&mut self, mut poly: BTreeMap<Word, Scalar>, mut cert: BTreeMap<usize, Scalar>) {
        loop {
            let Some((lead, coeff)) = poly.last_key_value() else { return };
            let (lead, coeff) = (lead.clone(), coeff.clone());
            match self.pivots.get(&lead) {
                Some(&ri) => {
                    map_sub_scaled(&mut poly, &self.rows[ri].poly, &coeff);
                    map_sub_scaled(&mut cert, &self.rows[ri].cert, &coeff);
                }
                None => {
                    let inv = coeff.inv().expect("pivot coefficient is nonzero");
                    for v in poly.values_mut() {
                        *v = &*v * &inv;
                    }
                    for v in cert.values_mut() {
                        *v = &*v * &inv;
                    }
                    self.pivots.insert(lead, self.rows.len());
                    self.rows.push(Row { poly, cert });
                    return;
                }
            }
        }
    }

    /// Number of independent border products at this degree: the dimension
    /// of the prepared truncated span.
    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Reduces p against the prepared span.  p must occupy prepared sectors.
    pub fn reduce(&self, p: &NCPoly) -> Result<Reduction, NcError> {
        check_degree(p, self.max_degree)?;
        for (w, _) in p.terms() {
            if !self.sectors.contains(&self.gens.multidegree(w)) {
                return Err(NcError::SectorNotPrepared { word: w.display(&self.gens) });
            }
        }
        let mut work: BTreeMap<Word, Scalar> =
            p.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut stuck: BTreeMap<Word, Scalar> = BTreeMap::new();
        let mut combo: BTreeMap<usize, Scalar> = BTreeMap::new();
        while let Some((lead, coeff)) = work.last_key_value() {
            let (lead, coeff) = (lead.clone(), coeff.clone());
            match self.pivots.get(&lead) {
                Some(&ri) => {
                    map_sub_scaled(&mut work, &self.rows[ri].poly, &coeff);
                    for (b, v) in &self.rows[ri].cert {
                        map_add(&mut combo, *b, &coeff * v);
                    }
                }
                None => {
                    work.remove(&lead);
                    stuck.insert(lead, coeff);
                }
            }
        }
        let in_span = stuck.is_empty();
        let mut residual = NCPoly::zero(&self.gens);
        for (w, c) in stuck {
            residual.add_term(w, c);
        }
        let certificate = if in_span {
            combo
                .into_iter()
                .map(|(b, coeff)| {
                    let border = &self.borders[b];
                    CertTerm {
                        coeff,
                        rel: border.rel,
                        left: border.left.clone(),
                        right: border.right.clone(),
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        Ok(Reduction { in_span, residual, certificate })
    }
}

/// Depth-first enumeration of words over `alphabet` up to `max_len`, with
/// per-family letter counts capped; calls `f(word, counts)` at every node,
/// the empty word included.  `counts` may start nonzero to continue a
/// partially spent budget.
fn walk_words(
    gens: &GeneratorSet,
    alphabet: &[u32],
    max_len: usize,
    caps: &[u16],
    counts: &mut Vec<u16>,
    prefix: &mut Vec<u32>,
    f: &mut dyn FnMut(&[u32], &[u16]) -> Result<(), NcError>,
) -> Result<(), NcError> {
    f(prefix, counts)?;
    if prefix.len() >= max_len {
        return Ok(());
    }
    for &g in alphabet {
        let fam = gens.family_of(g);
        if counts[fam] >= caps[fam] {
            continue;
        }
        counts[fam] += 1;
        prefix.push(g);
        walk_words(gens, alphabet, max_len, caps, counts, prefix, f)?;
        prefix.pop();
        counts[fam] -= 1;
    }
    Ok(())
}

fn map_add<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, val: Scalar) {
    if val.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(val);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get() + &val;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

fn map_sub_scaled<K: Ord + Clone>(
    map: &mut BTreeMap<K, Scalar>,
    other: &BTreeMap<K, Scalar>,
    factor: &Scalar,
) {
    for (k, v) in other {
        map_add(map, k.clone(), -&(factor * v));
    }
}

/// One-shot membership test of p in the degree-truncated ideal of `rels`.
pub fn reduce_mod_ideal(
    p: &NCPoly,
    rels: &RelationSet,
    max_degree: usize,
) -> Result<Reduction, NcError> {
    IdealSpan::build(rels, max_degree, &[p])?.reduce(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::GeneratorSetBuilder;

    fn one_family() -> (Arc<GeneratorSet>, crate::ncalg::FamilyId) {
        let mut b = GeneratorSetBuilder::new();
        let u = b.matrix_family("u", 2, 0);
        (b.finish(), u)
    }

    fn gen(gens: &Arc<GeneratorSet>, fam: crate::ncalg::FamilyId, i: usize, j: usize) -> NCPoly {
        NCPoly::generator(gens, gens.gen_id(fam, i, j))
    }

    #[test]
    fn a_relation_is_in_its_own_ideal_with_a_unit_certificate() {
        let (gens, u) = one_family();
        let a = gen(&gens, u, 0, 0);
        let b = gen(&gens, u, 0, 1);
        let r = &(&a * &b) - &(&b * &a).scale(&Scalar::q());
        let rels = RelationSet::star_closed("swap", &gens, vec![r.clone()]);
        let red = reduce_mod_ideal(&r, &rels, 2).unwrap();
        assert!(red.in_span);
        assert!(red.residual.is_zero());
        assert_eq!(red.certificate.len(), 1);
        assert!(red.certificate[0].left.is_empty() && red.certificate[0].right.is_empty());
        assert_eq!(red.replay(&rels), r);
    }

    #[test]
    fn star_closure_certifies_the_starred_relation_too() {
        let (gens, u) = one_family();
        let a = gen(&gens, u, 0, 0);
        let b = gen(&gens, u, 0, 1);
        let r = &(&a * &b) - &(&b * &a).scale(&Scalar::q());
        let closed = RelationSet::star_closed("swap", &gens, vec![r.clone()]);
        assert_eq!(closed.len(), 2);
        let red = reduce_mod_ideal(&r.star(), &closed, 2).unwrap();
        assert!(red.in_span);

        let raw = RelationSet::without_star_closure("swap-raw", &gens, vec![r.clone()]);
        assert_eq!(raw.len(), 1);
        let red = reduce_mod_ideal(&r.star(), &raw, 2).unwrap();
        assert!(!red.in_span, "star image needs the closure");
    }

    #[test]
    fn products_of_a_relation_certify_and_replay() {
        let (gens, u) = one_family();
        let a = gen(&gens, u, 0, 0);
        let b = gen(&gens, u, 0, 1);
        let c = gen(&gens, u, 1, 0);
        let r = &(&a * &b) - &(&b * &a).scale(&Scalar::q());
        let rels = RelationSet::star_closed("swap", &gens, vec![r.clone()]);
        let p = &(&c * &r) - &(&r * &c).scale(&Scalar::from(3));
        let red = reduce_mod_ideal(&p, &rels, 3).unwrap();
        assert!(red.in_span, "residual {}", red.residual);
        assert_eq!(red.replay(&rels), p);
    }

    #[test]
    fn membership_fails_below_the_needed_degree_without_failing_the_call() {
        let (gens, u) = one_family();
        let a = gen(&gens, u, 0, 0);
        let b = gen(&gens, u, 0, 1);
        let c = gen(&gens, u, 1, 0);
        let r = &(&a * &b) - &(&b * &a).scale(&Scalar::q());
        let rels = RelationSet::star_closed("swap", &gens, vec![r.clone()]);
        let p = &c * &r;
        let err = reduce_mod_ideal(&p, &rels, 2).unwrap_err();
        assert!(matches!(err, NcError::DegreeOverflow { .. }));
        assert!(err.to_string().contains("u(2,1)*u(1,1)*u(1,2)"));
    }

    #[test]
    fn a_lone_generator_is_not_in_a_quadratic_homogeneous_ideal() {
        let (gens, u) = one_family();
        let a = gen(&gens, u, 0, 0);
        let b = gen(&gens, u, 0, 1);
        let r = &(&a * &b) - &(&b * &a).scale(&Scalar::q());
        let rels = RelationSet::star_closed("swap", &gens, vec![r]);
        let red = reduce_mod_ideal(&a, &rels, 3).unwrap();
        assert!(!red.in_span);
        assert_eq!(red.residual, a);
        assert!(red.certificate.is_empty());
    }

    #[test]
    fn span_dimension_is_monotone_in_the_degree_bound() {
        let (gens, u) = one_family();
        let a = gen(&gens, u, 0, 0);
        let b = gen(&gens, u, 0, 1);
        let r = &(&a * &b) - &(&b * &a).scale(&Scalar::q());
        let rels = RelationSet::star_closed("swap", &gens, vec![r]);
        let mut last = 0;
        for d in 2..=4 {
            let dim = IdealSpan::build_all(&rels, d).unwrap().dimension();
            assert!(dim >= last, "dimension dropped from {last} to {dim} at degree {d}");
            last = dim;
        }
        assert!(last > 2);
    }

    #[test]
    fn relation_set_json_spells_words_as_symbol_lists() {
        let (gens, u) = one_family();
        let a = gen(&gens, u, 0, 0);
        let b = gen(&gens, u, 0, 1);
        let r = &(&a * &b) - &(&b * &a).scale(&Scalar::q());
        let rels = RelationSet::without_star_closure("swap", &gens, vec![r]);
        let v = rels.to_json();
        assert_eq!(v["name"], "swap");
        assert_eq!(v["max_degree"], 2);
        assert_eq!(v["homogeneous"], true);
        assert_eq!(v["relations"][0][0]["word"][0], "u(1,1)");
        assert_eq!(v["relations"][0][1]["coeff"], "-q");
    }
}
