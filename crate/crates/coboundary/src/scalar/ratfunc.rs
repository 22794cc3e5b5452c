//! Rational functions in a formal variable q over the cyclotomic rationals.
//!
//! A Scalar is q^shift * num/den where num and den are polynomials in q with
//! CycloRational coefficients, subject to: num has a nonzero constant term
//! (zero is shift 0, num 0, den 1), den has constant term 1, and
//! gcd(num, den) = 1. Together with minimal-conductor coefficients this form
//! is unique, so the derived `Eq`/`Hash` are canonical. Pure q-power
//! denominators live entirely in `shift`, which keeps the dominant Laurent
//! case free of polynomial gcd work.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::de::Error as _;

use super::cyclotomic::{root_power_str, CycloRational};
use super::parse::{parse_scalar, ParseError};

// ---- dense polynomials over CycloRational (ascending, trimmed) ----

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct CPoly(Vec<CycloRational>);

impl CPoly {
    fn new(mut v: Vec<CycloRational>) -> Self {
        while v.last().is_some_and(CycloRational::is_zero) {
            v.pop();
        }
        CPoly(v)
    }

    fn zero() -> Self {
        CPoly(vec![])
    }

    fn one() -> Self {
        CPoly(vec![CycloRational::one()])
    }

    fn constant(c: CycloRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            CPoly(vec![c])
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Index of the lowest nonzero coefficient (0 for the zero polynomial).
    fn valuation(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    fn shifted_down(&self, k: usize) -> Self {
        debug_assert!(self.0.iter().take(k).all(CycloRational::is_zero));
        CPoly(self.0[k..].to_vec())
    }

    fn shifted_up(&self, k: usize) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let mut v = vec![CycloRational::zero(); k];
        v.extend(self.0.iter().cloned());
        CPoly(v)
    }

    fn add(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        if v.len() < other.0.len() {
            v.resize(other.0.len(), CycloRational::zero());
        }
        for (o, c) in v.iter_mut().zip(&other.0) {
            *o = o.add(c);
        }
        Self::new(v)
    }

    fn neg(&self) -> Self {
        CPoly(self.0.iter().map(CycloRational::neg).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![CycloRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(v)
    }

    fn scaled(&self, c: &CycloRational) -> Self {
        debug_assert!(!c.is_zero());
        CPoly(self.0.iter().map(|x| x.mul(c)).collect())
    }

    fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.0.len() < d.0.len() {
            return (Self::zero(), self.clone());
        }
        let db = d.deg();
        let lead_inv = d.0[db].inv().unwrap();
        let mut rem = self.0.clone();
        let mut quo = vec![CycloRational::zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = rem[i].mul(&lead_inv);
            for j in 0..db {
                if !d.0[j].is_zero() {
                    rem[i - db + j] = rem[i - db + j].sub(&d.0[j].mul(&c));
                }
            }
            rem[i] = CycloRational::zero();
            quo[i - db] = c;
        }
        (Self::new(quo), Self::new(rem))
    }

    fn div_exact(&self, d: &Self) -> Self {
        let (quo, rem) = self.divrem(d);
        debug_assert!(rem.is_zero());
        quo
    }

    fn gcd(a: &Self, b: &Self) -> Self {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            // monic remainders keep coefficient growth in check
            let lead = r1.0[r1.deg()].clone();
            if !lead.is_one() {
                r1 = r1.scaled(&lead.inv().unwrap());
            }
            let (_, rem) = r0.divrem(&r1);
            r0 = r1;
            r1 = rem;
        }
        r0
    }

    fn pow(&self, k: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
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

    fn conjugated(&self) -> Self {
        CPoly(self.0.iter().map(CycloRational::conjugate).collect())
    }
}

// ---- scalars ----

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    shift: i64,
    num: CPoly,
    den: CPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { shift: 0, num: CPoly::zero(), den: CPoly::one() }
    }

    pub fn one() -> Self {
        Scalar { shift: 0, num: CPoly::one(), den: CPoly::one() }
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(k: i64) -> Self {
        Scalar { shift: k, num: CPoly::one(), den: CPoly::one() }
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_cyclo(CycloRational::from_integer(k))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_cyclo(CycloRational::from_rational(r))
    }

    pub fn from_cyclo(c: CycloRational) -> Self {
        Scalar { shift: 0, num: CPoly::constant(c), den: CPoly::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// Normalize shift/num/den into canonical form.
    fn make(mut shift: i64, num: CPoly, den: CPoly) -> Self {
        assert!(!den.is_zero(), "scalar with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let vn = num.valuation();
        let vd = den.valuation();
        shift += vn as i64 - vd as i64;
        let mut num = if vn > 0 { num.shifted_down(vn) } else { num };
        let mut den = if vd > 0 { den.shifted_down(vd) } else { den };
        if !den.is_one() {
            let g = CPoly::gcd(&num, &den);
            if g.deg() > 0 {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
            let c0 = den.0[0].clone();
            if !c0.is_one() {
                let ci = c0.inv().unwrap();
                num = num.scaled(&ci);
                den = den.scaled(&ci);
            }
        }
        Scalar { shift, num, den }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // swap num/den; scale both so the new denominator has constant term 1
        let c = self.num.0[0].inv().unwrap();
        Some(Scalar {
            shift: -self.shift,
            num: self.den.scaled(&c),
            den: self.num.scaled(&c),
        })
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        let base = if k < 0 {
            self.inv().expect("zero scalar has no negative power")
        } else {
            self.clone()
        };
        let e = k.unsigned_abs();
        // coprimality and the constant-term normalizations survive powers
        Scalar {
            shift: base.shift * e as i64,
            num: base.num.pow(e),
            den: base.den.pow(e),
        }
    }

    /// Coefficient-wise complex conjugation; q itself is fixed.
    pub fn conjugate(&self) -> Self {
        Scalar {
            shift: self.shift,
            num: self.num.conjugated(),
            den: self.den.conjugated(),
        }
    }

    /// Value at q = 1, when the denominator does not vanish there.
    pub fn eval_q1(&self) -> Option<CycloRational> {
        let sum = |p: &CPoly| {
            p.0.iter()
                .fold(CycloRational::zero(), |acc, c| acc.add(c))
        };
        Some(sum(&self.num).mul(&sum(&self.den).inv()?))
    }
}

// ---- arithmetic ----

fn add_impl(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let s = a.shift.min(b.shift);
    let na = a.num.shifted_up((a.shift - s) as usize);
    let nb = b.num.shifted_up((b.shift - s) as usize);
    if a.den.is_one() && b.den.is_one() {
        return Scalar::make(s, na.add(&nb), CPoly::one());
    }
    let num = na.mul(&b.den).add(&nb.mul(&a.den));
    Scalar::make(s, num, a.den.mul(&b.den))
}

fn mul_impl(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() || b.is_zero() {
        return Scalar::zero();
    }
    Scalar::make(a.shift + b.shift, a.num.mul(&b.num), a.den.mul(&b.den))
}

fn neg_impl(a: &Scalar) -> Scalar {
    Scalar { shift: a.shift, num: a.num.neg(), den: a.den.clone() }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $f:expr) => {
        impl std::ops::$trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                ($f)(self, rhs)
            }
        }
        impl std::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                ($f)(&self, &rhs)
            }
        }
        impl std::ops::$trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                ($f)(&self, rhs)
            }
        }
        impl std::ops::$trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                ($f)(self, &rhs)
            }
        }
    };
}

binop!(Add, add, add_impl);
binop!(Sub, sub, |a: &Scalar, b: &Scalar| add_impl(a, &neg_impl(b)));
binop!(Mul, mul, mul_impl);
binop!(Div, div, |a: &Scalar, b: &Scalar| {
    mul_impl(a, &b.inv().expect("scalar division by zero"))
});

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg_impl(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        neg_impl(&self)
    }
}

impl From<i64> for Scalar {
    fn from(k: i64) -> Self {
        Scalar::from_integer(k)
    }
}

// ---- display & serialization ----

fn q_power_str(e: usize) -> String {
    if e == 1 {
        "q".into()
    } else {
        format!("q^{e}")
    }
}

fn push_term(out: &mut String, c: &CycloRational, e: usize, first: &mut bool) {
    let (neg, body) = if let Some(r) = c.as_rational() {
        let body = if e == 0 {
            format!("{}", r.abs())
        } else if r.abs().is_one() {
            q_power_str(e)
        } else {
            format!("{}*{}", r.abs(), q_power_str(e))
        };
        (r.is_negative(), body)
    } else if let Some((r, j)) = c.single_term() {
        let z = root_power_str(c.order(), j);
        let mut body = if r.abs().is_one() {
            z
        } else {
            format!("{}*{z}", r.abs())
        };
        if e > 0 {
            body = format!("{body}*{}", q_power_str(e));
        }
        (r.is_negative(), body)
    } else {
        let body = if e == 0 {
            format!("{c}")
        } else {
            format!("({c})*{}", q_power_str(e))
        };
        (false, body)
    };
    match (*first, neg) {
        (true, false) => {}
        (true, true) => out.push('-'),
        (false, false) => out.push_str(" + "),
        (false, true) => out.push_str(" - "),
    }
    out.push_str(&body);
    *first = false;
}

fn poly_string(p: &CPoly, up: usize) -> String {
    let mut out = String::new();
    let mut first = true;
    for (i, c) in p.0.iter().enumerate() {
        if !c.is_zero() {
            push_term(&mut out, c, i + up, &mut first);
        }
    }
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let (up_num, up_den) = if self.shift >= 0 {
            (self.shift as usize, 0)
        } else {
            (0, (-self.shift) as usize)
        };
        let ns = poly_string(&self.num, up_num);
        if self.den.is_one() && up_den == 0 {
            return f.write_str(&ns);
        }
        write!(f, "({ns})/({})", poly_string(&self.den, up_den))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Scalar {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_scalar(s)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::super::cyclotomic::CycloRational;
    use super::*;

    fn lambda() -> Scalar {
        Scalar::q() - Scalar::q_pow(-1)
    }

    fn mu() -> Scalar {
        Scalar::q() + Scalar::q_pow(-1)
    }

    #[test]
    fn q_times_q_inverse_is_one() {
        assert!((Scalar::q() * Scalar::q_pow(-1)).is_one());
    }

    #[test]
    fn fraction_sum_matches_cross_multiplied_form() {
        let lhs = lambda() / mu() + Scalar::one();
        let rhs = (Scalar::from(2) * Scalar::q()) / mu();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn common_factors_cancel() {
        // (q^2 - 1)/(q + q^2) = (q - 1)/q
        let num = Scalar::q_pow(2) - Scalar::one();
        let den = Scalar::q() + Scalar::q_pow(2);
        assert_eq!(num / den, Scalar::one() - Scalar::q_pow(-1));
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::q().to_string(), "q");
        assert_eq!(Scalar::q_pow(-1).to_string(), "(1)/(q)");
        assert_eq!(lambda().to_string(), "(-1 + q^2)/(q)");
        assert_eq!((Scalar::q_pow(-1) - Scalar::q()).to_string(), "(1 - q^2)/(q)");
        assert_eq!((Scalar::from(2) * Scalar::q()).to_string(), "2*q");
        let e3 = Scalar::from_cyclo(CycloRational::root_of_unity(6, 1));
        assert_eq!(e3.to_string(), "1 + z3");
        let z4q = Scalar::from_cyclo(CycloRational::root_of_unity(4, 1)) * Scalar::q();
        assert_eq!((-&z4q).to_string(), "-z4*q");
        assert_eq!((e3 * Scalar::q()).to_string(), "(1 + z3)*q");
        let frac = (Scalar::from(2) * Scalar::q_pow(2)) / (Scalar::one() + Scalar::q_pow(2));
        assert_eq!(frac.to_string(), "(2*q^2)/(1 + q^2)");
    }

    #[test]
    fn conjugate_fixes_q_and_inverts_roots() {
        let i = Scalar::from_cyclo(CycloRational::root_of_unity(4, 1));
        assert_eq!(Scalar::q().conjugate(), Scalar::q());
        assert_eq!((&i * &Scalar::q()).conjugate(), -(&i * &Scalar::q()));
        let messy = (&i + &lambda()) / (Scalar::from(3) + Scalar::q());
        assert_eq!(messy.conjugate().conjugate(), messy);
    }

    #[test]
    fn powers_and_inverses() {
        let s = lambda() / mu();
        assert!((s.pow(3) * s.pow(-3)).is_one());
        assert_eq!(s.pow(0), Scalar::one());
        assert_eq!(Scalar::q().pow(5), Scalar::q_pow(5));
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn serde_round_trip() {
        let s = lambda() / mu();
        let json = serde_json::to_string(&s).unwrap();
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
