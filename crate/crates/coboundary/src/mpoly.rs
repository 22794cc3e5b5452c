//! Commutative multivariate polynomials over Scalar.
//!
//! Terms live in a BTreeMap from exponent vectors to nonzero coefficients.
//! Exponent keys always have trailing zeros trimmed, so a polynomial does not
//! carry a variable count: variables are a global supply x0, x1, … and any
//! two polynomials can be combined. The map order makes iteration (hence
//! display and extraction) deterministic.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Ring-of-coefficients interface; lets matrix machinery run over either
/// plain scalars or symbolic polynomial entries.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn from_scalar(s: Scalar) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

fn trim_key(mut k: Vec<u16>) -> Vec<u16> {
    while k.last() == Some(&0) {
        k.pop();
    }
    k
}

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<Vec<u16>, Scalar>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(s: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(vec![], s);
        }
        MPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        let mut key = vec![0u16; i + 1];
        key[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(key, Scalar::one());
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Vec::is_empty)
    }

    /// Some(coefficient) iff the polynomial has no variables (zero included).
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Scalar::zero))
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &Scalar)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest variable index that occurs, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter(|k| !k.is_empty()).map(|k| k.len() - 1).max()
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|k| k.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    fn insert_term(&mut self, key: Vec<u16>, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let key = trim_key(key);
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.insert_term(k.clone(), v.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let mut key = ka.clone();
                if key.len() < kb.len() {
                    key.resize(kb.len(), 0);
                }
                for (p, e) in kb.iter().enumerate() {
                    key[p] += e;
                }
                out.insert_term(key, va * vb);
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * s)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative with respect to variable i.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            let e = k.get(i).copied().unwrap_or(0);
            if e == 0 {
                continue;
            }
            let mut key = k.clone();
            key[i] = e - 1;
            out.insert_term(key, v * &Scalar::from_integer(e as i64));
        }
        out
    }

    /// Substitute a polynomial for variable i.
    pub fn substitute(&self, i: usize, value: &MPoly) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            let e = k.get(i).copied().unwrap_or(0);
            let mut rest = k.clone();
            if e > 0 {
                rest[i] = 0;
            }
            let mut term = MPoly { terms: BTreeMap::new() };
            term.insert_term(rest, v.clone());
            if e > 0 {
                term = term.mul(&value.pow(e as u32));
            }
            out = out.add(&term);
        }
        out
    }

    /// Coefficient vector when the polynomial involves only variable i
    /// (ascending powers); None if another variable occurs.
    pub fn univariate_in(&self, i: usize) -> Option<Vec<Scalar>> {
        let mut coeffs: Vec<Scalar> = vec![];
        for (k, v) in &self.terms {
            if k.iter().enumerate().any(|(p, &e)| p != i && e != 0) {
                return None;
            }
            let e = k.get(i).copied().unwrap_or(0) as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Scalar::zero());
            }
            coeffs[e] = v.clone();
        }
        Some(coeffs)
    }

    pub fn to_string_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (k, v)) in self.terms.iter().enumerate() {
            if n > 0 {
                out.push_str(" + ");
            }
            let vs = v.to_string();
            if vs.contains(' ') {
                out.push_str(&format!("({vs})"));
            } else {
                out.push_str(&vs);
            }
            for (p, &e) in k.iter().enumerate() {
                match e {
                    0 => {}
                    1 => out.push_str(&format!("*{}", name(p))),
                    _ => out.push_str(&format!("*{}^{e}", name(p))),
                }
            }
        }
        out
    }
}

impl Coeff for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn from_scalar(s: Scalar) -> Self {
        MPoly::constant(s)
    }
    fn add(&self, other: &Self) -> Self {
        MPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        MPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        MPoly::neg(self)
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&|i| format!("x{i}")))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn ring_identities() {
        let p = x(0).mul(&x(1)).add(&MPoly::constant(Scalar::q()));
        let q = x(1).sub(&MPoly::one());
        assert_eq!(p.mul(&q), q.mul(&p));
        assert_eq!(p.sub(&p), MPoly::zero());
        assert_eq!(p.mul(&MPoly::one()), p);
        assert_eq!(p.mul(&MPoly::zero()), MPoly::zero());
        let r = x(2).add(&MPoly::one());
        assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
    }

    #[test]
    fn keys_are_canonical_across_variable_counts() {
        // x0 built alone and x0 built via cancellation against x5 agree
        let a = x(0).add(&x(5)).sub(&x(5));
        assert_eq!(a, x(0));
    }

    #[test]
    fn derivative_satisfies_product_rule() {
        let p = x(0).mul(&x(0)).add(&x(1));
        let q = x(0).sub(&MPoly::constant(Scalar::q()));
        let lhs = p.mul(&q).derivative(0);
        let rhs = p.derivative(0).mul(&q).add(&p.mul(&q.derivative(0)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_evaluates() {
        // (x0^2 + x1) with x0 := x1 + 1 at x1 := 2 gives 11
        let p = x(0).pow(2).add(&x(1));
        let sub = p.substitute(0, &x(1).add(&MPoly::one()));
        let val = sub.substitute(1, &MPoly::constant(Scalar::from_integer(2)));
        assert_eq!(val.as_constant().unwrap(), Scalar::from_integer(11));
    }

    #[test]
    fn univariate_extraction() {
        let p = x(2).pow(3).scale(&Scalar::q()).add(&MPoly::one());
        let coeffs = p.univariate_in(2).unwrap();
        assert_eq!(coeffs.len(), 4);
        assert_eq!(coeffs[0], Scalar::one());
        assert_eq!(coeffs[3], Scalar::q());
        assert!(p.univariate_in(1).is_none());
        assert!(x(0).add(&x(1)).univariate_in(0).is_none());
    }
}
