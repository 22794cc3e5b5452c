//! Group-level identities for pi(g) = rg - gr: the product rule, the
//! inversion rule, gauge-shifted variants, and translation by a fixed
//! element. Sample checks run at exact invertible integer points;
//! the *_symbolic variants prove the same identity over matrices of
//! independent polynomial variables.

use rayon::prelude::*;

use super::point::{
    adjugate, constant_point, det_coeff, inverse_scalar, mat_from_tensor, mat_mul, pi_minus_mat,
    pi_plus_mat, symbolic_matrix, Mat, PointBivector,
};
use super::{Bivector, ClassicalError, LieBasis};
use crate::linalg::Tensor;
use crate::mpoly::Coeff;
use crate::report::CheckOutcome;
use crate::sample;
use crate::scalar::{epsilon_for, Scalar};

// ---- sample generation ----

/// Invertible integer points with entries in [-3, 3], reproducible by seed.
pub fn seeded_points(seed: u64, n: usize, count: usize) -> Vec<Tensor> {
    let mut rng = sample::seeded_rng(seed);
    (0..count)
        .map(|_| sample::to_tensor(&sample::invertible_integer_matrix(&mut rng, n, 3)))
        .collect()
}

pub fn seeded_pairs(seed: u64, n: usize, count: usize) -> Vec<(Tensor, Tensor)> {
    let mut rng = sample::seeded_rng(seed);
    (0..count)
        .map(|_| {
            let g = sample::to_tensor(&sample::invertible_integer_matrix(&mut rng, n, 3));
            let h = sample::to_tensor(&sample::invertible_integer_matrix(&mut rng, n, 3));
            (g, h)
        })
        .collect()
}

pub fn seeded_triples(seed: u64, n: usize, count: usize) -> Vec<(Tensor, Tensor, Tensor)> {
    let mut rng = sample::seeded_rng(seed);
    (0..count)
        .map(|_| {
            let x = sample::to_tensor(&sample::invertible_integer_matrix(&mut rng, n, 3));
            let y = sample::to_tensor(&sample::invertible_integer_matrix(&mut rng, n, 3));
            let z = sample::to_tensor(&sample::invertible_integer_matrix(&mut rng, n, 3));
            (x, y, z)
        })
        .collect()
}

/// The distinguished point: the antidiagonal permutation matrix scaled so its
/// determinant is 1 (entries epsilon with epsilon^n = (-1)^(n(n-1)/2)).
pub fn epsilon_antidiagonal(n: usize) -> Tensor {
    let eps = epsilon_for(n as u32);
    let mut t = Tensor::zeros(vec![n, n]);
    for i in 0..n {
        *t.entry_mut(&[i, n - 1 - i]) = eps.clone();
    }
    t
}

// ---- shared plumbing ----

fn witness_at<T: Coeff + std::fmt::Display>(
    what: &str,
    diff: &PointBivector<T>,
) -> Option<String> {
    diff.first_nonzero().map(|(i, j, k, l)| {
        format!(
            "{what}: component e({i},{j})(x)e({k},{l}) differs by {}",
            diff.component(i, j, k, l)
        )
    })
}

/// Run one closure per sample in parallel; the reported failure is the one
/// with the smallest sample index, so output is deterministic.
fn first_failure<F>(count: usize, f: F) -> Option<String>
where
    F: Fn(usize) -> Option<String> + Sync + Send,
{
    (0..count)
        .into_par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next()
}

fn mats(n: usize, t: &Tensor) -> Result<Mat<Scalar>, ClassicalError> {
    mat_from_tensor(n, t)
}

// ---- product rule ----

/// pi(gh) = pi(g) h + g pi(h) at the given sample pairs.
pub fn check_multiplicativity(
    r: &Bivector,
    samples: &[(Tensor, Tensor)],
) -> Result<CheckOutcome, ClassicalError> {
    let n = r.n();
    let pairs: Vec<(Mat<Scalar>, Mat<Scalar>)> = samples
        .iter()
        .map(|(g, h)| Ok((mats(n, g)?, mats(n, h)?)))
        .collect::<Result<_, ClassicalError>>()?;
    let failure = first_failure(pairs.len(), |k| {
        let (g, h) = &pairs[k];
        let lhs = pi_minus_mat(r, &mat_mul(g, h));
        let rhs = pi_minus_mat(r, g).translate_right(h).add(&pi_minus_mat(r, h).translate_left(g));
        witness_at(&format!("sample {k}"), &lhs.sub(&rhs))
    });
    Ok(match failure {
        None => CheckOutcome::pass(format!(
            "product rule holds at {} sample pairs (n={n})",
            samples.len()
        )),
        Some(w) => CheckOutcome::fail("product rule violated", w),
    })
}

/// The same identity over two matrices of independent polynomial variables,
/// which proves it on a Zariski-dense set of pairs.
pub fn check_multiplicativity_symbolic(r: &Bivector) -> CheckOutcome {
    let n = r.n();
    let g = symbolic_matrix(n, 0);
    let h = symbolic_matrix(n, n * n);
    let lhs = pi_minus_mat(r, &mat_mul(&g, &h));
    let rhs = pi_minus_mat(r, &g).translate_right(&h).add(&pi_minus_mat(r, &h).translate_left(&g));
    match witness_at("symbolic", &lhs.sub(&rhs)) {
        None => CheckOutcome::pass(format!("product rule holds symbolically (n={n})")),
        Some(w) => CheckOutcome::fail("symbolic product rule violated", w),
    }
}

// ---- inversion rule ----

/// g^-1 pi(g) g^-1 = -pi(g^-1) at the given samples.
pub fn check_antipode(r: &Bivector, samples: &[Tensor]) -> Result<CheckOutcome, ClassicalError> {
    let n = r.n();
    let points: Vec<(Mat<Scalar>, Mat<Scalar>)> = samples
        .iter()
        .map(|g| {
            let m = mats(n, g)?;
            let inv =
                inverse_scalar(&m).ok_or(ClassicalError::Singular { what: "sample point" })?;
            Ok((m, inv))
        })
        .collect::<Result<_, ClassicalError>>()?;
    let failure = first_failure(points.len(), |k| {
        let (g, ginv) = &points[k];
        let lhs = pi_minus_mat(r, g).translate_left(ginv).translate_right(ginv);
        let rhs = pi_minus_mat(r, ginv).neg();
        witness_at(&format!("sample {k}"), &lhs.sub(&rhs))
    });
    Ok(match failure {
        None => CheckOutcome::pass(format!(
            "inversion rule holds at {} samples (n={n})",
            samples.len()
        )),
        Some(w) => CheckOutcome::fail("inversion rule violated", w),
    })
}

/// Inversion rule on a symbolic matrix, with denominators cleared through the
/// adjugate: since pi is quadratic in its point and each slot translation is
/// quadratic in the translating matrix, g^-1 pi(g) g^-1 = -pi(g^-1) clears to
/// adj(g) pi(g) adj(g) + det(g)^2 pi(adj(g)) = 0.
pub fn check_antipode_symbolic(r: &Bivector) -> CheckOutcome {
    let n = r.n();
    let g = symbolic_matrix(n, 0);
    let adj = adjugate(&g);
    let det = det_coeff(&g);
    let lhs = pi_minus_mat(r, &g).translate_left(&adj).translate_right(&adj);
    let rhs = pi_minus_mat(r, &adj).scale(&det.mul(&det));
    match witness_at("symbolic", &lhs.add(&rhs)) {
        None => CheckOutcome::pass(format!(
            "inversion rule holds symbolically after clearing determinants (n={n})"
        )),
        Some(w) => CheckOutcome::fail("symbolic inversion rule violated", w),
    }
}

// ---- gauge-shifted variants ----

#[derive(Debug, Clone)]
pub struct GaugeReport {
    /// rho(xyz) = pi(x) yz + x rho(y) z - xy pi(z)
    pub triple: CheckOutcome,
    /// rho(xy) = pi(x) y + x rho(y)
    pub pair_head: CheckOutcome,
    /// rho(yz) = rho(y) z - y pi(z)
    pub pair_tail: CheckOutcome,
}

impl GaugeReport {
    pub fn passed(&self) -> bool {
        self.triple.passed() && self.pair_head.passed() && self.pair_tail.passed()
    }
}

/// Check the three compatibility identities for the shifted field
/// rho(g) = pi(g) + g * offset at the given sample triples.
///
/// The head identity holds for every antisymmetric offset; the triple and
/// tail identities hold exactly when the offset is twice the bivector, i.e.
/// when rho is the plus-field rg + gr.
pub fn check_gauge_identity(
    r: &Bivector,
    rho_offset: &Bivector,
    samples: &[(Tensor, Tensor, Tensor)],
) -> Result<GaugeReport, ClassicalError> {
    let n = r.n();
    let offset = constant_point::<Scalar>(rho_offset);
    let rho = |g: &Mat<Scalar>| pi_minus_mat(r, g).add(&offset.translate_left(g));
    let triples: Vec<(Mat<Scalar>, Mat<Scalar>, Mat<Scalar>)> = samples
        .iter()
        .map(|(x, y, z)| Ok((mats(n, x)?, mats(n, y)?, mats(n, z)?)))
        .collect::<Result<_, ClassicalError>>()?;

    let triple_failure = first_failure(triples.len(), |k| {
        let (x, y, z) = &triples[k];
        let xyz = mat_mul(&mat_mul(x, y), z);
        let lhs = rho(&xyz);
        let rhs = pi_minus_mat(r, x)
            .translate_right(&mat_mul(y, z))
            .add(&rho(y).translate_left(x).translate_right(z))
            .sub(&pi_minus_mat(r, z).translate_left(&mat_mul(x, y)));
        witness_at(&format!("sample {k}"), &lhs.sub(&rhs))
    });
    let head_failure = first_failure(triples.len(), |k| {
        let (x, y, _) = &triples[k];
        let lhs = rho(&mat_mul(x, y));
        let rhs = pi_minus_mat(r, x).translate_right(y).add(&rho(y).translate_left(x));
        witness_at(&format!("sample {k}"), &lhs.sub(&rhs))
    });
    let tail_failure = first_failure(triples.len(), |k| {
        let (_, y, z) = &triples[k];
        let lhs = rho(&mat_mul(y, z));
        let rhs = rho(y).translate_right(z).sub(&pi_minus_mat(r, z).translate_left(y));
        witness_at(&format!("sample {k}"), &lhs.sub(&rhs))
    });

    let outcome = |failure: Option<String>, label: &str| match failure {
        None => CheckOutcome::pass(format!(
            "{label} identity holds at {} sample triples (n={n})",
            samples.len()
        )),
        Some(w) => CheckOutcome::fail(format!("{label} identity violated"), w),
    };
    Ok(GaugeReport {
        triple: outcome(triple_failure, "triple product"),
        pair_head: outcome(head_failure, "head pair"),
        pair_tail: outcome(tail_failure, "tail pair"),
    })
}

// ---- translation by a fixed element ----

#[derive(Debug, Clone)]
pub struct TranslationReport {
    /// g0 r g0^-1 = -r
    pub conjugation: CheckOutcome,
    /// pi_plus(g0) = 0
    pub vanishing: CheckOutcome,
    /// pi(g g0) = pi_plus(g) g0 at samples
    pub intertwine: CheckOutcome,
}

impl TranslationReport {
    pub fn passed(&self) -> bool {
        self.conjugation.passed() && self.vanishing.passed() && self.intertwine.passed()
    }
}

/// Check the three properties that make right translation by g0 send the
/// minus-field to the plus-field.
pub fn check_translation(
    r: &Bivector,
    g0: &Tensor,
    samples: &[Tensor],
) -> Result<TranslationReport, ClassicalError> {
    let n = r.n();
    let basis = LieBasis::new(n);
    let dim = basis.dim();
    let g0m = mats(n, g0)?;
    let g0inv =
        inverse_scalar(&g0m).ok_or(ClassicalError::Singular { what: "translation point" })?;

    // (a) conjugating each slot by g0 negates the bivector
    let images: Vec<Mat<Scalar>> = (0..dim)
        .map(|a| {
            let (i, j) = basis.pair(a);
            let mut e = vec![vec![Scalar::zero(); n]; n];
            e[i][j] = Scalar::one();
            mat_mul(&g0m, &mat_mul(&e, &g0inv))
        })
        .collect();
    let mut conj = vec![Scalar::zero(); dim * dim];
    for (a, b, c) in r.terms() {
        for p in 0..n {
            for q in 0..n {
                let cpq = c * &images[a][p][q];
                if cpq.is_zero() {
                    continue;
                }
                for s in 0..n {
                    for t in 0..n {
                        let idx = (p * n + q) * dim + (s * n + t);
                        conj[idx] = &conj[idx] + &(&cpq * &images[b][s][t]);
                    }
                }
            }
        }
    }
    let mut conj_witness = None;
    'outer: for a in 0..dim {
        for b in 0..dim {
            let got = &conj[a * dim + b];
            let want = -r.component(a, b).clone();
            if got != &want {
                let (p, q) = basis.pair(a);
                let (s, t) = basis.pair(b);
                conj_witness = Some(format!(
                    "component e({p},{q})(x)e({s},{t}): conjugate has {got}, negation has {want}"
                ));
                break 'outer;
            }
        }
    }
    let conjugation = match conj_witness {
        None => CheckOutcome::pass(format!("conjugation by the point negates the bivector (n={n})")),
        Some(w) => CheckOutcome::fail("conjugation does not negate the bivector", w),
    };

    // (b) the plus-field vanishes at g0
    let plus_at_g0 = pi_plus_mat(r, &g0m);
    let vanishing = match witness_at("at the translation point", &plus_at_g0) {
        None => CheckOutcome::pass(format!("plus-field vanishes at the point (n={n})")),
        Some(w) => CheckOutcome::fail("plus-field does not vanish at the point", w),
    };

    // (c) pi(g g0) = pi_plus(g) g0 at samples
    let points: Vec<Mat<Scalar>> =
        samples.iter().map(|g| mats(n, g)).collect::<Result<_, ClassicalError>>()?;
    let failure = first_failure(points.len(), |k| {
        let g = &points[k];
        let lhs = pi_minus_mat(r, &mat_mul(g, &g0m));
        let rhs = pi_plus_mat(r, g).translate_right(&g0m);
        witness_at(&format!("sample {k}"), &lhs.sub(&rhs))
    });
    let intertwine = match failure {
        None => CheckOutcome::pass(format!(
            "translation carries minus-field to plus-field at {} samples (n={n})",
            samples.len()
        )),
        Some(w) => CheckOutcome::fail("translation identity violated", w),
    };

    Ok(TranslationReport { conjugation, vanishing, intertwine })
}

#[cfg(test)]
mod tests {
    use super::super::standard_r;
    use super::*;
    use crate::linalg::total_permutation_matrix;

    #[test]
    fn multiplicativity_holds_at_samples_and_symbolically() {
        for n in 2..=3 {
            let r = standard_r(n).unwrap();
            let samples = seeded_pairs(7, n, 10);
            let out = check_multiplicativity(&r, &samples).unwrap();
            assert!(out.passed(), "{out:?}");
        }
        let out = check_multiplicativity_symbolic(&standard_r(2).unwrap());
        assert!(out.passed(), "{out:?}");
    }

    #[test]
    fn antipode_rule_holds_at_samples_and_symbolically() {
        for n in 2..=3 {
            let r = standard_r(n).unwrap();
            let out = check_antipode(&r, &seeded_points(7, n, 5)).unwrap();
            assert!(out.passed(), "{out:?}");
        }
        let out = check_antipode_symbolic(&standard_r(2).unwrap());
        assert!(out.passed(), "{out:?}");
    }

    #[test]
    fn antipode_rejects_singular_samples() {
        let r = standard_r(2).unwrap();
        let singular = sample::to_tensor(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(
            check_antipode(&r, &[singular]),
            Err(ClassicalError::Singular { what: "sample point" })
        );
    }

    #[test]
    fn gauge_identities_hold_for_doubled_offset() {
        let r = standard_r(2).unwrap();
        let offset = r.scale(&Scalar::from(2));
        let rep = check_gauge_identity(&r, &offset, &seeded_triples(7, 2, 6)).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn gauge_tail_fails_for_generic_offset() {
        // A fixed antisymmetric offset that is not twice the bivector: the
        // head identity still holds, the tail identity must break.
        let r = standard_r(2).unwrap();
        let basis = LieBasis::new(2);
        let mut offset = Bivector::zero(2);
        offset.add_wedge(basis.idx(0, 0), basis.idx(0, 1), Scalar::one());
        let rep = check_gauge_identity(&r, &offset, &seeded_triples(7, 2, 6)).unwrap();
        assert!(rep.pair_head.passed(), "{:?}", rep.pair_head);
        assert!(!rep.pair_tail.passed(), "tail identity should fail for this offset");
        assert!(!rep.triple.passed(), "triple identity should fail for this offset");
        assert!(rep.pair_tail.witness.is_some());
    }

    #[test]
    fn translation_by_epsilon_antidiagonal_passes() {
        for n in 2..=3 {
            let r = standard_r(n).unwrap();
            let g0 = epsilon_antidiagonal(n);
            let rep = check_translation(&r, &g0, &seeded_points(7, n, 5)).unwrap();
            assert!(rep.passed(), "n={n}: {rep:?}");
        }
    }

    #[test]
    fn translation_by_identity_fails_conjugation() {
        let r = standard_r(2).unwrap();
        let rep = check_translation(&r, &Tensor::identity(2), &seeded_points(7, 2, 3)).unwrap();
        assert!(!rep.conjugation.passed());
        assert!(rep.conjugation.witness.is_some());
    }

    #[test]
    fn epsilon_antidiagonal_scales_the_reversal_matrix() {
        let g0 = epsilon_antidiagonal(3);
        let p = total_permutation_matrix(3);
        let eps = epsilon_for(3);
        assert_eq!(g0, p.scale(&eps));
    }
}
