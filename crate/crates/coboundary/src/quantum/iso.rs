//! Column-reversal change of variables between the two unitary
//! presentations, certified relation by relation in both directions.
//!
//! The map sends u(i,j) to ε·w(i, n−1−j) with ε the parity root picked by
//! `epsilon_for` (so εⁿ = (−1)^{n(n−1)/2}), and star generators to the star
//! of the image.  Every relation of either presentation must land in the
//! ideal of the other; each certificate is replayed before it counts.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::ncalg::{GeneratorSet, IdealSpan, NCPoly, NcError, RelationSet};
use crate::quantum::relations::{relations_b, relations_suq, QuantumFamily};
use crate::quantum::QuantumError;
use crate::report::CheckOutcome;
use crate::scalar::{epsilon_for, Scalar};

/// Certification tally for one substitution direction.
#[derive(Clone, Debug)]
pub struct IsoDirectionReport {
    pub total: usize,
    pub certified: usize,
    pub failed: Vec<String>,
}

impl IsoDirectionReport {
    pub fn all_certified(&self) -> bool {
        self.certified == self.total
    }
}

#[derive(Clone, Debug)]
pub struct IsoReport {
    pub n: usize,
    pub max_degree: usize,
    pub forward: IsoDirectionReport,
    pub backward: IsoDirectionReport,
}

impl IsoReport {
    pub fn outcome(&self) -> CheckOutcome {
        if self.forward.all_certified() && self.backward.all_certified() {
            CheckOutcome::pass(format!(
                "all relation images certified both ways at degree <= {}: forward {} of {}, \
                 backward {} of {}",
                self.max_degree,
                self.forward.certified,
                self.forward.total,
                self.backward.certified,
                self.backward.total,
            ))
        } else {
            let witness = self
                .forward
                .failed
                .first()
                .or_else(|| self.backward.failed.first())
                .cloned()
                .unwrap_or_default();
            CheckOutcome::fail(
                format!(
                    "uncertified images at degree <= {}: forward {} of {}, backward {} of {}",
                    self.max_degree,
                    self.forward.certified,
                    self.forward.total,
                    self.backward.certified,
                    self.backward.total,
                ),
                witness,
            )
        }
    }
}

/// Images of one matrix family under column reversal and scaling: every
/// plain generator maps to scale·target(i, n−1−j), stars to the star image.
fn reversal_images(
    source: &QuantumFamily,
    target: &QuantumFamily,
    scale: &Scalar,
) -> BTreeMap<crate::ncalg::GenId, NCPoly> {
    let n = source.n();
    let sg = source.gens();
    let tg = target.gens();
    let mut images = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let g = sg.gen_id(source.family(), i, j);
            let img =
                NCPoly::generator(tg, tg.gen_id(target.family(), i, n - 1 - j)).scale(scale);
            images.insert(sg.star_of(g), img.star());
            images.insert(g, img);
        }
    }
    images
}

fn certify_images(
    source: &RelationSet,
    target: &RelationSet,
    images: &BTreeMap<crate::ncalg::GenId, NCPoly>,
    target_gens: &Arc<GeneratorSet>,
    max_degree: usize,
) -> Result<IsoDirectionReport, QuantumError> {
    let mapped: Vec<(String, NCPoly)> = source
        .relations()
        .iter()
        .map(|r| Ok((r.to_string(), r.substitute(target_gens, images)?)))
        .collect::<Result<_, NcError>>()?;
    let targets: Vec<&NCPoly> = mapped.iter().map(|(_, p)| p).collect();
    let span = IdealSpan::build(target, max_degree, &targets)?;
    let verdicts: Vec<(String, bool)> = mapped
        .par_iter()
        .map(|(name, p)| {
            let red = span.reduce(p)?;
            Ok((name.clone(), red.in_span && red.replay(target) == *p))
        })
        .collect::<Result<_, QuantumError>>()?;
    let total = verdicts.len();
    let failed: Vec<String> =
        verdicts.into_iter().filter(|(_, ok)| !ok).map(|(name, _)| name).collect();
    Ok(IsoDirectionReport { total, certified: total - failed.len(), failed })
}

/// CLI check `iso-20-21`: substitutes u(i,j) ↦ ε·w(i, n−1−j) into every
/// relation of the plain unitary presentation and certifies the image in
/// the twisted presentation's ideal, then runs the inverse substitution
/// w(i,j) ↦ ε⁻¹·u(i, n−1−j) the other way.
pub fn check_isomorphism(n: usize, max_degree: usize) -> Result<IsoReport, QuantumError> {
    let (fam_u, rels_u) = relations_suq(n)?;
    let (fam_w, rels_w) = relations_b(n)?;
    let eps = epsilon_for(n as u32);
    let eps_inv = eps.inv().expect("root of unity is invertible");

    let forward_images = reversal_images(&fam_u, &fam_w, &eps);
    let backward_images = reversal_images(&fam_w, &fam_u, &eps_inv);
    let forward = certify_images(&rels_u, &rels_w, &forward_images, fam_w.gens(), max_degree)?;
    let backward = certify_images(&rels_w, &rels_u, &backward_images, fam_u.gens(), max_degree)?;
    Ok(IsoReport { n, max_degree, forward, backward })
}
