//! Twist solver: cuts an affine ansatz down by the linear intertwiner and
//! counit conditions via exact elimination, then by the quadratic cocycle
//! condition.
//!
//! The quadratic stage has three regimes, all exact: when the cocycle
//! vanishes identically on the linear solution family the family itself is
//! the answer and deterministic representatives are returned; with one free
//! parameter the cocycle entries collapse to a univariate gcd whose rational
//! roots are extracted; with more parameters the family is certified on a
//! fixed rational grid (a sampled, not exhaustive, search).

use std::sync::Arc;

use num_rational::BigRational;

use crate::linalg::{solve_linear, LinearSolution, Tensor};
use crate::scalar::Scalar;

use super::checks::{cocycle_bilinear, intertwiner_defect};
use super::data::{HopfData, RElement};
use super::HopfError;

/// Affine family base + span(directions) inside H⊗H.
#[derive(Clone, Debug)]
pub struct RAnsatz {
    pub base: Tensor,
    pub directions: Vec<Tensor>,
}

impl RAnsatz {
    /// All of H⊗H: zero base and one direction per coefficient.
    pub fn full(h: &HopfData) -> Self {
        let d = h.dim();
        let mut directions = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut dir = Tensor::zeros(vec![d, d]);
                *dir.entry_mut(&[i, j]) = Scalar::one();
                directions.push(dir);
            }
        }
        RAnsatz { base: Tensor::zeros(vec![d, d]), directions }
    }

    /// A single candidate, no free parameters.
    pub fn point(base: Tensor) -> Self {
        RAnsatz { base, directions: vec![] }
    }
}

#[derive(Clone, Debug)]
pub struct RSolutionSet {
    /// The linear conditions admit at least one solution.
    pub linear_consistent: bool,
    /// Free parameters remaining after the linear stage.
    pub linear_dim: usize,
    /// The cocycle condition vanishes identically on the linear family; the
    /// solutions are then deterministic representatives of the whole family.
    pub whole_family: bool,
    pub solutions: Vec<RElement>,
    /// Degree of a gcd factor whose roots are irrational or outside the
    /// candidate list (single-parameter regime only).
    pub unresolved_degree: Option<usize>,
}

pub(super) fn rat(n: i64, d: i64) -> Scalar {
    Scalar::from_rational(BigRational::new(n.into(), d.into()))
}

/// Deterministic parameter values tried per free coordinate.
fn grid_values(linear_dim: usize) -> Vec<Scalar> {
    if linear_dim <= 4 {
        vec![rat(0, 1), rat(1, 1), rat(-1, 1), rat(1, 2), rat(-1, 2)]
    } else {
        vec![rat(0, 1), rat(1, 1), rat(-1, 1)]
    }
}

/// Rational root candidates for the single-parameter regime.
fn root_candidates() -> Vec<Scalar> {
    let mut out = vec![rat(0, 1)];
    for (n, d) in [
        (1, 1),
        (1, 2),
        (2, 1),
        (1, 3),
        (3, 1),
        (3, 2),
        (2, 3),
        (1, 4),
        (4, 1),
    ] {
        out.push(rat(n, d));
        out.push(rat(-n, d));
    }
    out
}

// ---- dense univariate polynomials over the scalar field ----

type Poly = Vec<Scalar>;

fn ptrim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

fn peval(p: &Poly, x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

fn pmonic(p: Poly) -> Poly {
    let p = ptrim(p);
    match p.last() {
        None => p,
        Some(lead) => {
            let inv = lead.inv().expect("nonzero scalar is invertible");
            p.iter().map(|c| c * &inv).collect()
        }
    }
}

fn prem(a: &Poly, b: &Poly) -> Poly {
    let b = pmonic(b.clone());
    let mut r = ptrim(a.clone());
    while r.len() >= b.len() && !b.is_empty() {
        let shift = r.len() - b.len();
        let lead = r.last().unwrap().clone();
        for (i, c) in b.iter().enumerate() {
            let t = &lead * c;
            r[shift + i] = &r[shift + i] - &t;
        }
        r = ptrim(r);
    }
    r
}

fn pgcd(a: &Poly, b: &Poly) -> Poly {
    let mut x = ptrim(a.clone());
    let mut y = ptrim(b.clone());
    while !y.is_empty() {
        let r = prem(&x, &y);
        x = y;
        y = r;
    }
    pmonic(x)
}

/// Divide out (t - root); the root must actually be a root.
fn pdeflate(p: &Poly, root: &Scalar) -> Poly {
    let mut out = vec![Scalar::zero(); p.len().saturating_sub(1)];
    let mut carry = Scalar::zero();
    for i in (0..p.len()).rev() {
        if i == 0 {
            break;
        }
        let c = &p[i] + &(&carry * root);
        carry = c.clone();
        out[i - 1] = c;
    }
    debug_assert!(peval(p, root).is_zero(), "deflation at a non-root");
    ptrim(out)
}

// ---- the solver ----

pub fn find_r(h: &Arc<HopfData>, ansatz: &RAnsatz) -> Result<RSolutionSet, HopfError> {
    let d = h.dim();
    if ansatz.base.shape() != [d, d] {
        return Err(HopfError::Shape { what: "ansatz base", expected: vec![d, d] });
    }
    for dir in &ansatz.directions {
        if dir.shape() != [d, d] {
            return Err(HopfError::Shape { what: "ansatz direction", expected: vec![d, d] });
        }
    }

    // linear stage: intertwiner rows (one per defect entry) and counit rows
    let m = ansatz.directions.len();
    let condition = |r: &Tensor| -> Vec<Scalar> {
        let mut rows: Vec<Scalar> = intertwiner_defect(h, r).entries().to_vec();
        for j in 0..d {
            let mut left = Scalar::zero();
            let mut right = Scalar::zero();
            for i in 0..d {
                left = &left + &(&h.counit().entries()[i] * r.at(i, j));
                right = &right + &(r.at(j, i) * &h.counit().entries()[i]);
            }
            rows.push(left);
            rows.push(right);
        }
        rows
    };
    let base_rows = condition(&ansatz.base);
    let n_rows = base_rows.len();
    let n_linear = d * d * d;
    let mut rhs = Vec::with_capacity(n_rows);
    for (row, value) in base_rows.into_iter().enumerate() {
        // intertwiner rows are homogeneous; counit rows must reach the unit
        let target = if row < n_linear {
            Scalar::zero()
        } else {
            h.unit().entries()[(row - n_linear) / 2].clone()
        };
        rhs.push(&target - &value);
    }
    // the condition map is linear, so each direction contributes one column
    let columns: Vec<Vec<Scalar>> = ansatz.directions.iter().map(&condition).collect();
    let mut a_entries = Vec::with_capacity(n_rows * m);
    for row in 0..n_rows {
        for col in &columns {
            a_entries.push(col[row].clone());
        }
    }
    let a = Tensor::matrix(n_rows, m, a_entries);
    let b = Tensor::vector(rhs);
    let (particular, nullspace) = match solve_linear(&a, &b).expect("well-shaped system") {
        LinearSolution::Inconsistent => {
            return Ok(RSolutionSet {
                linear_consistent: false,
                linear_dim: 0,
                whole_family: false,
                solutions: vec![],
                unresolved_degree: None,
            });
        }
        LinearSolution::Solved { particular, nullspace } => (particular, nullspace),
    };

    let combine = |weights: &Tensor| -> Tensor {
        let mut out = ansatz.base.clone();
        for (k, dir) in ansatz.directions.iter().enumerate() {
            let w = &weights.entries()[k];
            if !w.is_zero() {
                out = out.add(&dir.scale(w));
            }
        }
        out
    };
    let base0 = combine(&particular);
    let family: Vec<Tensor> = nullspace
        .iter()
        .map(|v| {
            let mut out = Tensor::zeros(vec![d, d]);
            for (k, dir) in ansatz.directions.iter().enumerate() {
                let w = &v.entries()[k];
                if !w.is_zero() {
                    out = out.add(&dir.scale(w));
                }
            }
            out
        })
        .collect();
    let f = family.len();
    if f > 8 {
        return Err(HopfError::TooManyParameters { got: f, max: 8 });
    }

    // quadratic stage: polarize the cocycle over the family
    let q = |r1: &Tensor, r2: &Tensor| cocycle_bilinear(h, r1, r2);
    let constant = q(&base0, &base0);
    let linear: Vec<Tensor> =
        (0..f).map(|i| q(&base0, &family[i]).add(&q(&family[i], &base0))).collect();
    let quadratic: Vec<Vec<Tensor>> =
        (0..f).map(|i| (0..f).map(|j| q(&family[i], &family[j])).collect()).collect();

    let whole_family = constant.is_zero()
        && linear.iter().all(Tensor::is_zero)
        && quadratic.iter().flatten().all(Tensor::is_zero);

    let evaluate = |s: &[Scalar]| -> Tensor {
        let mut out = constant.clone();
        for i in 0..f {
            if !s[i].is_zero() {
                out = out.add(&linear[i].scale(&s[i]));
                for j in 0..f {
                    if !s[j].is_zero() {
                        out = out.add(&quadratic[i][j].scale(&(&s[i] * &s[j])));
                    }
                }
            }
        }
        out
    };
    let point = |s: &[Scalar]| -> Tensor {
        let mut out = base0.clone();
        for i in 0..f {
            if !s[i].is_zero() {
                out = out.add(&family[i].scale(&s[i]));
            }
        }
        out
    };

    let mut parameter_points: Vec<Vec<Scalar>> = vec![];
    let mut unresolved_degree = None;

    if whole_family {
        parameter_points.push(vec![Scalar::zero(); f]);
        for i in 0..f {
            for v in [rat(1, 1), rat(-1, 1), rat(1, 2), rat(-1, 2)] {
                let mut s = vec![Scalar::zero(); f];
                s[i] = v;
                parameter_points.push(s);
            }
        }
    } else if f == 0 {
        if constant.is_zero() {
            parameter_points.push(vec![]);
        }
    } else if f == 1 {
        // every cocycle entry is a univariate quadratic in the parameter;
        // common roots are the roots of their gcd
        let mut g: Poly = vec![];
        let entries = constant.entries().len();
        for e in 0..entries {
            let p = ptrim(vec![
                constant.entries()[e].clone(),
                linear[0].entries()[e].clone(),
                quadratic[0][0].entries()[e].clone(),
            ]);
            if p.is_empty() {
                continue;
            }
            g = if g.is_empty() { pmonic(p) } else { pgcd(&g, &p) };
            if g.len() == 1 {
                break;
            }
        }
        if g.len() > 1 {
            let mut remaining = g;
            for c in root_candidates() {
                while remaining.len() > 1 && peval(&remaining, &c).is_zero() {
                    if !parameter_points.iter().any(|s| s[0] == c) {
                        parameter_points.push(vec![c.clone()]);
                    }
                    remaining = pdeflate(&remaining, &c);
                }
            }
            if remaining.len() > 1 {
                unresolved_degree = Some(remaining.len() - 1);
            }
        }
    } else {
        // sampled certification on a deterministic rational grid
        let values = grid_values(f);
        let mut stack: Vec<Vec<Scalar>> = vec![vec![]];
        for _ in 0..f {
            let mut next = Vec::with_capacity(stack.len() * values.len());
            for prefix in &stack {
                for v in &values {
                    let mut s = prefix.clone();
                    s.push(v.clone());
                    next.push(s);
                }
            }
            stack = next;
        }
        for s in stack {
            if evaluate(&s).is_zero() {
                parameter_points.push(s);
            }
        }
    }

    let mut solutions = Vec::with_capacity(parameter_points.len());
    for s in &parameter_points {
        let coeffs = point(s);
        let r = RElement::new(h, coeffs)?;
        // every accepted point must satisfy all three conditions exactly
        assert!(r.is_counit_normalized(), "solver produced a non-normalized twist");
        assert!(
            intertwiner_defect(h, r.coeffs()).is_zero(),
            "solver produced a non-intertwining twist"
        );
        assert!(q(r.coeffs(), r.coeffs()).is_zero(), "solver produced a non-cocycle twist");
        solutions.push(r);
    }

    Ok(RSolutionSet {
        linear_consistent: true,
        linear_dim: f,
        whole_family,
        solutions,
        unresolved_degree,
    })
}
