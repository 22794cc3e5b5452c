//! Conjugating a twisted-braid matrix by a unitary one is again a
//! twisted-braid matrix, certified entrywise.
//!
//! Three commuting matrix families live on separate legs of one generator
//! set: `u` and a second copy `u'` obeying the plain braid exchange, and `w`
//! obeying the twisted one.  The composition v = u·w·(u')* then satisfies
//! B·(vⓉv) = (vⓉv)·B̃ modulo the combined relation ideal, one certificate
//! per entry of the n²×n² difference.  Replacing B̃ by B on the right is the
//! control run: at least one entry must fail, otherwise the twist would be
//! vacuous.

use rayon::prelude::*;

use crate::ncalg::{
    matrix_compose_factors, matrix_tensor_square, GeneratorMatrix, GeneratorSetBuilder, IdealSpan,
    NCPoly, RelationSet,
};
use crate::quantum::relations::{relations_frt, relations_star_partner, unitarity_relations};
use crate::quantum::rmatrix::RMatrixData;
use crate::quantum::QuantumError;
use crate::report::CheckOutcome;

/// Certification record for one entry of B·(vⓉv) − (vⓉv)·B̃.
#[derive(Clone, Debug)]
pub struct GaugeEntry {
    pub row: usize,
    pub col: usize,
    pub in_span: bool,
    pub replay_ok: bool,
    pub certificate_terms: usize,
}

#[derive(Clone, Debug)]
pub struct QuantumGaugeReport {
    pub n: usize,
    pub max_degree: usize,
    pub span_dimension: usize,
    pub entries: Vec<GaugeEntry>,
    /// Entries of the untwisted control B·(vⓉv) − (vⓉv)·B that do NOT
    /// certify; the twist is necessary exactly when this is nonzero.
    pub control_failures: usize,
    pub control_witness: Option<(usize, usize)>,
}

impl QuantumGaugeReport {
    pub fn all_certified(&self) -> bool {
        self.entries.iter().all(|e| e.in_span && e.replay_ok)
    }

    pub fn outcome(&self) -> CheckOutcome {
        let failed: Vec<String> = self
            .entries
            .iter()
            .filter(|e| !(e.in_span && e.replay_ok))
            .map(|e| format!("({},{})", e.row, e.col))
            .collect();
        if !failed.is_empty() {
            return CheckOutcome::fail(
                format!(
                    "{} of {} entries failed to certify at degree <= {}",
                    failed.len(),
                    self.entries.len(),
                    self.max_degree
                ),
                failed.join(" "),
            );
        }
        if self.control_failures == 0 {
            return CheckOutcome::fail(
                format!(
                    "all {} entries certified, but the untwisted control also certified \
                     everywhere at degree <= {}; the twist never bit",
                    self.entries.len(),
                    self.max_degree
                ),
                String::from("control"),
            );
        }
        CheckOutcome::pass(format!(
            "all {} entries certified and replayed (span dimension {}); untwisted control \
             fails {} of {} entries, e.g. at {:?}",
            self.entries.len(),
            self.span_dimension,
            self.control_failures,
            self.entries.len(),
            self.control_witness.unwrap(),
        ))
    }
}

/// Entrywise difference of two generator matrices of equal size.
fn entry_diff(a: &GeneratorMatrix, b: &GeneratorMatrix) -> Vec<NCPoly> {
    a.entries().iter().zip(b.entries()).map(|(x, y)| x - y).collect()
}

/// CLI check `gauge-quantum`: certifies that v = u·w·(u')* satisfies the
/// twisted exchange relation modulo plain relations on u, twisted on w,
/// star-side on u', and unitarity of u and w, then re-runs the reduction
/// with the untwisted right-hand side as the control.
pub fn check_quantum_gauge(n: usize, max_degree: usize) -> Result<QuantumGaugeReport, QuantumError> {
    if n < 2 {
        return Err(QuantumError::TooSmall { what: "quantum gauge", n, min: 2 });
    }
    let r = RMatrixData::standard(n)?;
    let mut builder = GeneratorSetBuilder::new();
    let fam_u = builder.matrix_family("u", n, 0);
    let fam_w = builder.matrix_family("w", n, 1);
    let fam_u2 = builder.matrix_family("u'", n, 2);
    let gens = builder.finish();
    let u = GeneratorMatrix::from_family(&gens, fam_u);
    let w = GeneratorMatrix::from_family(&gens, fam_w);
    let u2 = GeneratorMatrix::from_family(&gens, fam_u2);
    let v = matrix_compose_factors(&[&u, &w, &u2.star_companion()])?;

    let ideal = RelationSet::union(
        "gauge",
        &RelationSet::union(
            "gauge",
            &RelationSet::union("gauge", &relations_frt(&r, &u, false), &relations_frt(&r, &w, true)),
            &RelationSet::union("gauge", &unitarity_relations(&u), &unitarity_relations(&w)),
        ),
        &relations_star_partner(&r, &u2),
    );

    let msq = matrix_tensor_square(&v);
    let b = GeneratorMatrix::from_scalar_tensor(&gens, &r.braid());
    let bt = GeneratorMatrix::from_scalar_tensor(&gens, &r.braid_tilde());
    let lhs = b.matmul(&msq)?;
    let main = entry_diff(&lhs, &msq.matmul(&bt)?);
    let control = entry_diff(&lhs, &msq.matmul(&b)?);

    let targets: Vec<&NCPoly> = main.iter().chain(control.iter()).collect();
    let span = IdealSpan::build(&ideal, max_degree, &targets)?;
    let dim = n * n;

    let entries = main
        .par_iter()
        .enumerate()
        .map(|(k, p)| {
            let red = span.reduce(p)?;
            let replay_ok = red.in_span && red.replay(&ideal) == *p;
            Ok(GaugeEntry {
                row: k / dim,
                col: k % dim,
                in_span: red.in_span,
                replay_ok,
                certificate_terms: red.certificate.len(),
            })
        })
        .collect::<Result<Vec<_>, QuantumError>>()?;

    let control_misses = control
        .par_iter()
        .enumerate()
        .map(|(k, p)| Ok((k, span.reduce(p)?.in_span)))
        .collect::<Result<Vec<(usize, bool)>, QuantumError>>()?;
    let control_failures = control_misses.iter().filter(|(_, ok)| !ok).count();
    let control_witness = control_misses
        .iter()
        .find(|(_, ok)| !ok)
        .map(|(k, _)| (k / dim, k % dim));

    Ok(QuantumGaugeReport {
        n,
        max_degree,
        span_dimension: span.dimension(),
        entries,
        control_failures,
        control_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::relations::single_family;

    #[test]
    fn scalar_outer_factors_reduce_to_the_twisted_relations() {
        // v = I·w·I = w, so every target entry is itself a twisted relation.
        let n = 2;
        let r = RMatrixData::standard(n).unwrap();
        let fam = single_family("w", n);
        let w = fam.matrix();
        let id = GeneratorMatrix::identity(fam.gens(), n);
        let v = matrix_compose_factors(&[&id, &w, &id]).unwrap();
        let ideal = relations_frt(&r, &w, true);

        let msq = matrix_tensor_square(&v);
        let b = GeneratorMatrix::from_scalar_tensor(fam.gens(), &r.braid());
        let bt = GeneratorMatrix::from_scalar_tensor(fam.gens(), &r.braid_tilde());
        let main = entry_diff(&b.matmul(&msq).unwrap(), &msq.matmul(&bt).unwrap());
        let targets: Vec<&NCPoly> = main.iter().collect();
        let span = IdealSpan::build(&ideal, 2, &targets).unwrap();
        for p in &main {
            let red = span.reduce(p).unwrap();
            assert!(red.in_span);
            assert_eq!(red.replay(&ideal), *p);
        }
    }

    #[test]
    fn too_small_n_is_rejected() {
        assert!(check_quantum_gauge(1, 4).is_err());
    }

    #[test]
    fn conjugated_matrix_certifies_and_the_control_does_not() {
        let report = check_quantum_gauge(2, 6).unwrap();
        assert_eq!(report.entries.len(), 16);
        assert!(report.all_certified());
        assert!(report.control_failures >= 1);
        assert!(report.outcome().passed());
        // diagonal entries of the difference vanish identically
        assert!(report.entries.iter().any(|e| e.certificate_terms > 0));
    }
}
