//! Exact scalars: rational functions in q over cyclotomic rationals, the
//! conjugation underlying *-structures, and the deterministic roots of unity
//! used to normalize volume elements.

mod cyclotomic;
mod parse;
mod ratfunc;

pub use cyclotomic::CycloRational;
pub use parse::ParseError;
pub use ratfunc::Scalar;

/// The deterministic root ε with ε^n = (−1)^{n(n−1)/2}: 1 when that sign is
/// +1, otherwise the primitive 2n-th root with smallest positive argument.
pub fn epsilon_for(n: u32) -> Scalar {
    assert!(n >= 1, "epsilon_for requires n >= 1");
    let parity = (u64::from(n) * u64::from(n - 1) / 2) % 2;
    if parity == 0 {
        Scalar::one()
    } else {
        Scalar::from_cyclo(CycloRational::root_of_unity(2 * n, 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_matches_parity_rule() {
        assert_eq!(epsilon_for(1), Scalar::one());
        assert_eq!(epsilon_for(2), Scalar::from_cyclo(CycloRational::root_of_unity(4, 1)));
        assert_eq!(epsilon_for(3), Scalar::from_cyclo(CycloRational::root_of_unity(6, 1)));
        assert_eq!(epsilon_for(3).to_string(), "1 + z3");
        assert_eq!(epsilon_for(4), Scalar::one());
        assert_eq!(epsilon_for(5), Scalar::one());
        assert_eq!(epsilon_for(6), Scalar::from_cyclo(CycloRational::root_of_unity(12, 1)));
    }

    #[test]
    fn epsilon_satisfies_its_defining_equation() {
        for n in 1..=8u32 {
            let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
            assert_eq!(epsilon_for(n).pow(n as i64), Scalar::from_integer(sign));
        }
    }
}
