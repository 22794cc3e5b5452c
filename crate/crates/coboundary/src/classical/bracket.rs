//! The quadratic Poisson bracket on matrix coordinates induced by pi(g).
//!
//! Coordinates are the entries of a symbolic point: variable i*n + j is the
//! (i,j) entry. The bracket of two coordinate polynomials contracts their
//! partial derivatives against the components of pi at the symbolic point.

use super::point::{pi_minus_mat, symbolic_matrix, PointBivector};
use super::Bivector;
use crate::mpoly::MPoly;
use crate::report::CheckOutcome;

/// pi at a fully symbolic point whose (i,j) entry is variable i*n + j.
pub fn symbolic_pi(r: &Bivector) -> PointBivector<MPoly> {
    pi_minus_mat(r, &symbolic_matrix(r.n(), 0))
}

/// {f, h} = sum over component pairs of pi * (df/dx_ij) * (dh/dx_kl).
pub fn poisson_bracket(pi: &PointBivector<MPoly>, f: &MPoly, h: &MPoly) -> MPoly {
    let n = pi.n();
    let df: Vec<MPoly> = (0..n * n).map(|a| f.derivative(a)).collect();
    let dh: Vec<MPoly> = (0..n * n).map(|a| h.derivative(a)).collect();
    let mut out = MPoly::zero();
    for i in 0..n {
        for j in 0..n {
            if df[i * n + j].is_zero() {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    let c = pi.component(i, j, k, l);
                    if c.is_zero() || dh[k * n + l].is_zero() {
                        continue;
                    }
                    out = out.add(&c.mul(&df[i * n + j]).mul(&dh[k * n + l]));
                }
            }
        }
    }
    out
}

fn coord_label(n: usize, a: usize) -> String {
    format!("u({},{})", a / n, a % n)
}

/// Jacobi identity {{f,g},h} + {{g,h},f} + {{h,f},g} = 0 over every triple
/// of matrix coordinates.
pub fn jacobi_check(r: &Bivector) -> CheckOutcome {
    let n = r.n();
    let dim = n * n;
    let pi = symbolic_pi(r);
    let pair: Vec<Vec<MPoly>> = (0..dim)
        .map(|a| {
            (0..dim)
                .map(|b| pi.component(a / n, a % n, b / n, b % n).clone())
                .collect()
        })
        .collect();
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                let sum = poisson_bracket(&pi, &pair[a][b], &MPoly::var(c))
                    .add(&poisson_bracket(&pi, &pair[b][c], &MPoly::var(a)))
                    .add(&poisson_bracket(&pi, &pair[c][a], &MPoly::var(b)));
                if !sum.is_zero() {
                    return CheckOutcome::fail(
                        "Jacobi identity violated",
                        format!(
                            "triple ({}, {}, {}): cyclic sum is {}",
                            coord_label(n, a),
                            coord_label(n, b),
                            coord_label(n, c),
                            sum
                        ),
                    );
                }
            }
        }
    }
    CheckOutcome::pass(format!(
        "Jacobi identity holds for all {dim}^3 coordinate triples (n={n})"
    ))
}

/// Derivation property {fg, h} = f {g, h} + {f, h} g over every triple of
/// matrix coordinates.
pub fn leibniz_check(r: &Bivector) -> CheckOutcome {
    let n = r.n();
    let dim = n * n;
    let pi = symbolic_pi(r);
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                let (xa, xb, xc) = (MPoly::var(a), MPoly::var(b), MPoly::var(c));
                let lhs = poisson_bracket(&pi, &xa.mul(&xb), &xc);
                let rhs = xa
                    .mul(&poisson_bracket(&pi, &xb, &xc))
                    .add(&poisson_bracket(&pi, &xa, &xc).mul(&xb));
                if lhs != rhs {
                    return CheckOutcome::fail(
                        "Leibniz rule violated",
                        format!(
                            "triple ({}, {}, {}): {} vs {}",
                            coord_label(n, a),
                            coord_label(n, b),
                            coord_label(n, c),
                            lhs,
                            rhs
                        ),
                    );
                }
            }
        }
    }
    CheckOutcome::pass(format!(
        "Leibniz rule holds for all {dim}^3 coordinate triples (n={n})"
    ))
}

#[cfg(test)]
mod tests {
    use super::super::standard_r;
    use super::*;
    use crate::scalar::Scalar;

    fn x(i: usize) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn bracket_table_for_n2_matches_hand_computation() {
        // Coordinates a = u(0,0), b = u(0,1), c = u(1,0), d = u(1,1).
        let pi = symbolic_pi(&standard_r(2).unwrap());
        let (a, b, c, d) = (x(0), x(1), x(2), x(3));
        let br = |f: &MPoly, h: &MPoly| poisson_bracket(&pi, f, h);
        assert_eq!(br(&a, &b), a.mul(&b));
        assert_eq!(br(&a, &c), a.mul(&c));
        assert_eq!(br(&b, &d), b.mul(&d));
        assert_eq!(br(&c, &d), c.mul(&d));
        assert_eq!(br(&b, &c), MPoly::zero());
        let two = MPoly::constant(Scalar::from(2));
        assert_eq!(br(&a, &d), two.mul(&b).mul(&c));
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let pi = symbolic_pi(&standard_r(2).unwrap());
        let f = x(0).mul(&x(3)).add(&x(1));
        let h = x(2).pow(2).sub(&x(0));
        let lhs = poisson_bracket(&pi, &f, &h);
        let rhs = poisson_bracket(&pi, &h, &f);
        assert_eq!(lhs, rhs.neg());
    }

    #[test]
    fn jacobi_holds_for_standard_structures() {
        for n in 2..=3 {
            let out = jacobi_check(&standard_r(n).unwrap());
            assert!(out.passed(), "n={n}: {out:?}");
        }
    }

    #[test]
    fn leibniz_holds_for_standard_structure() {
        let out = leibniz_check(&standard_r(2).unwrap());
        assert!(out.passed(), "{out:?}");
    }

    #[test]
    fn determinant_is_casimir_for_n2() {
        // det = ad - bc brackets to zero with every coordinate.
        let pi = symbolic_pi(&standard_r(2).unwrap());
        let det = x(0).mul(&x(3)).sub(&x(1).mul(&x(2)));
        for a in 0..4 {
            let br = poisson_bracket(&pi, &det, &x(a));
            assert!(br.is_zero(), "det should central: {{det, x{a}}} = {br}");
        }
    }
}
