//! Elements of cyclotomic fields Q(zeta_m) with exact rational coordinates.
//!
//! A value is stored in the power basis 1, z, ..., z^{phi(m)-1} modulo the
//! m-th cyclotomic polynomial, and always at its minimal conductor: after
//! every operation the result is re-expressed in the smallest Q(zeta_d),
//! d | m, that contains it. Zero is order 1 with no coefficients. Under
//! these invariants structural equality is semantic equality, so the derived
//! `Eq`/`Hash` are canonical.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

// ---- dense rational polynomials (ascending coefficients, trimmed) ----

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (o, x) in out.iter_mut().zip(b) {
        *o -= x;
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Long division by a nonzero divisor; returns (quotient, remainder).
fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    if a.len() < b.len() {
        return (vec![], a.to_vec());
    }
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut rem = a.to_vec();
    let mut quo = vec![BigRational::zero(); a.len() - db];
    for i in (db..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = &rem[i] * &lead_inv;
        for j in 0..db {
            if !b[j].is_zero() {
                let t = &b[j] * &c;
                rem[i - db + j] -= t;
            }
        }
        rem[i] = BigRational::zero();
        quo[i - db] = c;
    }
    trim(&mut quo);
    trim(&mut rem);
    (quo, rem)
}

// ---- cyclotomic polynomials ----

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m % d == 0).collect()
}

fn phi(m: u32) -> usize {
    (1..=m).filter(|&k| num_integer::gcd(k, m) == 1).count()
}

/// Phi_m as a dense rational polynomial, computed by dividing x^m - 1 by the
/// cyclotomic polynomials of all proper divisors. Cached for the process.
fn cyclotomic_poly(m: u32) -> Vec<BigRational> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigRational>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut poly = vec![BigRational::zero(); (m + 1) as usize];
    poly[0] = -BigRational::one();
    poly[m as usize] = BigRational::one();
    for d in divisors(m) {
        if d < m {
            let (quo, rem) = poly_divrem(&poly, &cyclotomic_poly(d));
            debug_assert!(rem.is_empty());
            poly = quo;
        }
    }
    cache.lock().unwrap().insert(m, poly.clone());
    poly
}

/// `z{m}` or `z{m}^{k}`: the display form of a root-of-unity power.
pub(crate) fn root_power_str(order: u32, exp: usize) -> String {
    if exp == 1 {
        format!("z{order}")
    } else {
        format!("z{order}^{exp}")
    }
}

// ---- field elements ----

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloRational {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycloRational {
    pub fn zero() -> Self {
        CycloRational { order: 1, coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        if r.is_zero() {
            Self::zero()
        } else {
            CycloRational { order: 1, coeffs: vec![r] }
        }
    }

    /// zeta_m^k for any integer k (reduced mod m), canonicalized.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        assert!(m >= 1, "root order must be positive");
        let e = k.rem_euclid(m as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = BigRational::one();
        Self::make(m, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// The conductor of the stored representation (1 for rationals).
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Some(r) iff the element is rational (zero included).
    pub fn as_rational(&self) -> Option<BigRational> {
        (self.order == 1).then(|| self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
    }

    /// Some((coefficient, exponent)) iff exactly one basis coefficient is nonzero.
    pub fn single_term(&self) -> Option<(BigRational, usize)> {
        let mut nz = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let (j, c) = nz.next()?;
        nz.next().is_none().then(|| (c.clone(), j))
    }

    // ---- construction & canonicalization ----

    /// Reduce a dense coefficient vector mod Phi_order, then minimize the conductor.
    fn make(order: u32, mut coeffs: Vec<BigRational>) -> Self {
        trim(&mut coeffs);
        if coeffs.len() > phi(order) {
            let (_, rem) = poly_divrem(&coeffs, &cyclotomic_poly(order));
            coeffs = rem;
        }
        Self::minimize(order, coeffs)
    }

    fn minimize(order: u32, coeffs: Vec<BigRational>) -> Self {
        if coeffs.len() <= 1 || coeffs[1..].iter().all(Zero::is_zero) {
            let mut coeffs = coeffs;
            coeffs.truncate(1);
            trim(&mut coeffs);
            return CycloRational { order: 1, coeffs };
        }
        for d in divisors(order) {
            if d > 1 && d < order {
                if let Some(smaller) = subfield_solver(order, d).solve(&coeffs) {
                    return CycloRational { order: d, coeffs: smaller };
                }
            }
        }
        CycloRational { order, coeffs }
    }

    /// Rebuild at the same conductor (reduce + trim); for operations that
    /// provably preserve the minimal order (conjugation, inversion).
    fn make_same_conductor(order: u32, coeffs: Vec<BigRational>) -> Self {
        let mut coeffs = coeffs;
        trim(&mut coeffs);
        if coeffs.len() > phi(order) {
            let (_, rem) = poly_divrem(&coeffs, &cyclotomic_poly(order));
            coeffs = rem;
        }
        CycloRational { order, coeffs }
    }

    /// Coefficients re-expressed over Q(zeta_l), reduced mod Phi_l. Requires order | l.
    fn lift_dense(&self, l: u32) -> Vec<BigRational> {
        debug_assert_eq!(l % self.order, 0);
        if self.coeffs.is_empty() {
            return vec![];
        }
        let k = (l / self.order) as usize;
        if k == 1 {
            return self.coeffs.clone();
        }
        let mut v = vec![BigRational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[j * k] = c.clone();
            }
        }
        if v.len() > phi(l) {
            let (_, rem) = poly_divrem(&v, &cyclotomic_poly(l));
            v = rem;
        }
        v
    }

    // ---- arithmetic ----

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        match (self.order, other.order) {
            (1, 1) => Self::from_rational(&self.coeffs[0] + &other.coeffs[0]),
            // adding a rational never changes a conductor > 1
            (1, _) => other.add_rational(&self.coeffs[0]),
            (_, 1) => self.add_rational(&other.coeffs[0]),
            (a, b) => {
                let l = num_integer::lcm(a, b);
                let mut x = self.lift_dense(l);
                let y = other.lift_dense(l);
                if x.len() < y.len() {
                    x.resize(y.len(), BigRational::zero());
                }
                for (o, c) in x.iter_mut().zip(&y) {
                    *o += c;
                }
                Self::make(l, x)
            }
        }
    }

    fn add_rational(&self, r: &BigRational) -> Self {
        debug_assert!(self.order > 1);
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += r;
        CycloRational { order: self.order, coeffs }
    }

    pub fn neg(&self) -> Self {
        CycloRational {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        match (self.order, other.order) {
            (1, 1) => Self::from_rational(&self.coeffs[0] * &other.coeffs[0]),
            // scaling by a nonzero rational never changes a conductor > 1
            (1, _) => other.scaled_by(&self.coeffs[0]),
            (_, 1) => self.scaled_by(&other.coeffs[0]),
            (a, b) => {
                let l = num_integer::lcm(a, b);
                let prod = poly_mul(&self.lift_dense(l), &other.lift_dense(l));
                Self::make(l, prod)
            }
        }
    }

    fn scaled_by(&self, r: &BigRational) -> Self {
        debug_assert!(!r.is_zero());
        CycloRational {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse; None for zero. Computed by the extended
    /// Euclidean algorithm against Phi_m, which is irreducible, so the last
    /// nonzero remainder is a constant.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.order == 1 {
            return Some(Self::from_rational(self.coeffs[0].recip()));
        }
        let (mut r0, mut r1) = (cyclotomic_poly(self.order), self.coeffs.clone());
        let (mut s0, mut s1) = (vec![], vec![BigRational::one()]);
        while !r1.is_empty() {
            let (quo, rem) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&quo, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let inv: Vec<BigRational> = s0.iter().map(|x| x * &c).collect();
        // Q(a) = Q(a^{-1}), so the conductor is unchanged.
        Some(Self::make_same_conductor(self.order, inv))
    }

    /// Complex conjugation: zeta_m -> zeta_m^{-1}, rationals fixed. A field
    /// automorphism preserving every subfield, hence the conductor.
    pub fn conjugate(&self) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        let m = self.order as usize;
        let mut v = vec![BigRational::zero(); m];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = (m - j) % m;
                v[e] = &v[e] + c;
            }
        }
        Self::make_same_conductor(self.order, v)
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        let mut base = if k < 0 {
            self.inv().expect("zero has no negative power")
        } else {
            self.clone()
        };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Precomputed membership tester for Q(zeta_d) inside Q(zeta_m): the lifted
/// power-basis columns x^{(m/d) j} mod Phi_m and a left inverse of that
/// column matrix. Candidate coordinates come from one matrix-vector product;
/// reconstruction through the columns decides membership.
struct SubfieldSolver {
    columns: Vec<Vec<BigRational>>,
    left_inv: Vec<Vec<BigRational>>,
}

impl SubfieldSolver {
    fn build(m: u32, d: u32) -> Self {
        let rows = phi(m);
        let cols = phi(d);
        let step = (m / d) as usize;
        let phi_m = cyclotomic_poly(m);
        let mut columns = vec![vec![BigRational::zero(); rows]; cols];
        for (j, col) in columns.iter_mut().enumerate() {
            let e = step * j;
            if e < rows {
                col[e] = BigRational::one();
            } else {
                let mut xe = vec![BigRational::zero(); e + 1];
                xe[e] = BigRational::one();
                let (_, rem) = poly_divrem(&xe, &phi_m);
                for (r, c) in rem.into_iter().enumerate() {
                    col[r] = c;
                }
            }
        }
        // Gauss-Jordan on [M | I]; the columns are independent, so the RREF
        // of M is [I; 0] and the top rows of the transform are a left inverse.
        let mut aug = vec![vec![BigRational::zero(); cols + rows]; rows];
        for r in 0..rows {
            for j in 0..cols {
                aug[r][j] = columns[j][r].clone();
            }
            aug[r][cols + r] = BigRational::one();
        }
        for c in 0..cols {
            let p = (c..rows)
                .find(|&r| !aug[r][c].is_zero())
                .expect("subfield basis columns are independent");
            aug.swap(c, p);
            let inv = aug[c][c].recip();
            for x in &mut aug[c] {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            for r in 0..rows {
                if r != c && !aug[r][c].is_zero() {
                    let f = std::mem::replace(&mut aug[r][c], BigRational::zero());
                    for cc in c + 1..cols + rows {
                        if !aug[c][cc].is_zero() {
                            let t = &aug[c][cc] * &f;
                            aug[r][cc] -= t;
                        }
                    }
                }
            }
        }
        let left_inv = aug[..cols]
            .iter()
            .map(|row| row[cols..].to_vec())
            .collect();
        SubfieldSolver { columns, left_inv }
    }

    /// Coordinates of `a` over the subfield basis, or None if `a` is outside.
    fn solve(&self, a: &[BigRational]) -> Option<Vec<BigRational>> {
        let dot = |row: &[BigRational]| -> BigRational {
            let mut acc = BigRational::zero();
            for (x, y) in row.iter().zip(a) {
                if !x.is_zero() && !y.is_zero() {
                    acc += x * y;
                }
            }
            acc
        };
        let y: Vec<BigRational> = self.left_inv.iter().map(|row| dot(row)).collect();
        let rows = self.columns.first().map_or(0, Vec::len);
        let mut recon = vec![BigRational::zero(); rows];
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() {
                for (r, c) in self.columns[j].iter().enumerate() {
                    if !c.is_zero() {
                        recon[r] += c * yj;
                    }
                }
            }
        }
        let matches = (0..rows).all(|r| match a.get(r) {
            Some(v) => recon[r] == *v,
            None => recon[r].is_zero(),
        });
        if !matches {
            return None;
        }
        let mut y = y;
        trim(&mut y);
        Some(y)
    }
}

fn subfield_solver(m: u32, d: u32) -> Arc<SubfieldSolver> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<SubfieldSolver>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(s) = cache.lock().unwrap().get(&(m, d)) {
        return s.clone();
    }
    let solver = Arc::new(SubfieldSolver::build(m, d));
    cache.lock().unwrap().insert((m, d), solver.clone());
    solver
}

impl fmt::Display for CycloRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, false) => {}
                (true, true) => f.write_str("-")?,
                (false, false) => f.write_str(" + ")?,
                (false, true) => f.write_str(" - ")?,
            }
            first = false;
            let mag = c.abs();
            if j == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&root_power_str(self.order, j))?;
            } else {
                write!(f, "{mag}*{}", root_power_str(self.order, j))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(m: u32) -> CycloRational {
        CycloRational::root_of_unity(m, 1)
    }

    #[test]
    fn square_of_i_is_minus_one() {
        let p = zeta(4).mul(&zeta(4));
        assert_eq!(p, CycloRational::from_integer(-1));
        assert_eq!(p.order(), 1);
    }

    #[test]
    fn sixth_root_collapses_to_order_three() {
        let z6 = zeta(6);
        assert_eq!(z6.order(), 3);
        assert_eq!(z6, CycloRational::one().add(&zeta(3)));
    }

    #[test]
    fn eighth_root_squared_is_fourth_root() {
        let p = zeta(8).mul(&zeta(8));
        assert_eq!(p, zeta(4));
        assert_eq!(p.order(), 4);
    }

    #[test]
    fn twelfth_root_squared_drops_to_order_three() {
        let p = zeta(12).mul(&zeta(12));
        assert_eq!(p.order(), 3);
        assert_eq!(p, zeta(6));
    }

    #[test]
    fn primitive_cube_roots_sum_to_minus_one() {
        let s = zeta(3).add(&zeta(3).mul(&zeta(3)));
        assert_eq!(s, CycloRational::from_integer(-1));
    }

    #[test]
    fn conjugation_inverts_roots() {
        assert_eq!(zeta(4).conjugate(), zeta(4).neg());
        assert_eq!(zeta(5).conjugate().mul(&zeta(5)), CycloRational::one());
        assert_eq!(zeta(8).conjugate(), CycloRational::root_of_unity(8, -1));
    }

    #[test]
    fn inverse_round_trips() {
        let x = CycloRational::one()
            .add(&zeta(8).scaled_by(&BigRational::from_integer(2.into())))
            .sub(&CycloRational::root_of_unity(8, 3));
        let xi = x.inv().unwrap();
        assert_eq!(x.mul(&xi), CycloRational::one());
    }

    #[test]
    fn negative_exponents_wrap() {
        assert_eq!(CycloRational::root_of_unity(4, -1), zeta(4).neg());
        assert_eq!(CycloRational::root_of_unity(4, 9), zeta(4));
        assert_eq!(zeta(7).pow(-1).mul(&zeta(7)), CycloRational::one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(zeta(4).to_string(), "z4");
        assert_eq!(zeta(6).to_string(), "1 + z3");
        assert_eq!(zeta(4).neg().to_string(), "-z4");
        assert_eq!(CycloRational::from_integer(-5).to_string(), "-5");
        let c = CycloRational::root_of_unity(8, 2)
            .mul(&CycloRational::from_rational(BigRational::new(3.into(), 2.into())));
        assert_eq!(c.to_string(), "3/2*z4");
        let r = CycloRational::root_of_unity(8, 3)
            .scaled_by(&BigRational::new(3.into(), 2.into()));
        assert_eq!(r.to_string(), "3/2*z8^3");
    }
}
