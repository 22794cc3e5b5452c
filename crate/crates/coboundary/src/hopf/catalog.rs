//! Built-in algebra catalog and the structure-tensor loader.
//!
//! Catalog names: "z2", "z3", "s3" (group algebras, identity first in the
//! basis) and "sweedler" (the 4-dimensional non-cocommutative algebra).

use std::sync::Arc;

use serde::Deserialize;

use crate::linalg::Tensor;
use crate::scalar::Scalar;

use super::data::HopfData;
use super::HopfError;

/// Group algebra: basis the group elements, Δ(h) = h⊗h, c(h) = 1, S(h) = h⁻¹.
fn group_algebra(labels: &[&str], table: &[Vec<usize>]) -> HopfData {
    let d = labels.len();
    let mut mul = Tensor::zeros(vec![d, d, d]);
    let mut comul = Tensor::zeros(vec![d, d, d]);
    let mut unit = Tensor::zeros(vec![d]);
    let mut counit = Tensor::zeros(vec![d]);
    let mut antipode = Tensor::zeros(vec![d, d]);
    for i in 0..d {
        assert_eq!(table[0][i], i, "identity must come first in the group table");
        for j in 0..d {
            *mul.entry_mut(&[i, j, table[i][j]]) = Scalar::one();
        }
        let inv = (0..d).find(|&j| table[i][j] == 0).expect("group element has an inverse");
        *comul.entry_mut(&[i, i, i]) = Scalar::one();
        *counit.entry_mut(&[i]) = Scalar::one();
        *antipode.entry_mut(&[i, inv]) = Scalar::one();
    }
    *unit.entry_mut(&[0]) = Scalar::one();
    HopfData::new(labels.iter().map(|s| s.to_string()).collect(), mul, comul, unit, counit, antipode)
        .expect("group algebra satisfies the axioms")
}

/// Group algebra of the cyclic group of order 2.
pub fn z2() -> Arc<HopfData> {
    Arc::new(group_algebra(&["1", "g"], &[vec![0, 1], vec![1, 0]]))
}

/// Group algebra of the cyclic group of order 3.
pub fn z3() -> Arc<HopfData> {
    Arc::new(group_algebra(
        &["1", "g", "g2"],
        &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
    ))
}

/// Group algebra of the symmetric group on three letters.
pub fn s3() -> Arc<HopfData> {
    let perms: [[usize; 3]; 6] =
        [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
    let labels = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"];
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    let composed = [a[b[0]], a[b[1]], a[b[2]]];
                    perms.iter().position(|p| *p == composed).expect("closed under composition")
                })
                .collect()
        })
        .collect();
    Arc::new(group_algebra(&labels, &table))
}

/// The 4-dimensional algebra on {1, g, x, gx}: g² = 1, x² = 0, xg = -gx,
/// Δ(g) = g⊗g, Δ(x) = x⊗1 + g⊗x, S(g) = g, S(x) = -gx.  The smallest
/// non-cocommutative Hopf algebra, so the first place a twist can act.
pub fn sweedler() -> Arc<HopfData> {
    let one = Scalar::one;
    let d = 4;
    let mut mul = Tensor::zeros(vec![d, d, d]);
    // rows/columns in basis order 1, g, x, gx; entries (i, j) -> ±e_k or 0
    let products: [[Option<(usize, i64)>; 4]; 4] = [
        [Some((0, 1)), Some((1, 1)), Some((2, 1)), Some((3, 1))],
        [Some((1, 1)), Some((0, 1)), Some((3, 1)), Some((2, 1))],
        [Some((2, 1)), Some((3, -1)), None, None],
        [Some((3, 1)), Some((2, -1)), None, None],
    ];
    for (i, row) in products.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            if let Some((k, sign)) = cell {
                *mul.entry_mut(&[i, j, *k]) = Scalar::from_integer(*sign);
            }
        }
    }
    let mut comul = Tensor::zeros(vec![d, d, d]);
    *comul.entry_mut(&[0, 0, 0]) = one();
    *comul.entry_mut(&[1, 1, 1]) = one();
    *comul.entry_mut(&[2, 2, 0]) = one();
    *comul.entry_mut(&[2, 1, 2]) = one();
    *comul.entry_mut(&[3, 3, 1]) = one();
    *comul.entry_mut(&[3, 0, 3]) = one();
    let mut unit = Tensor::zeros(vec![d]);
    *unit.entry_mut(&[0]) = one();
    let mut counit = Tensor::zeros(vec![d]);
    *counit.entry_mut(&[0]) = one();
    *counit.entry_mut(&[1]) = one();
    let mut antipode = Tensor::zeros(vec![d, d]);
    *antipode.entry_mut(&[0, 0]) = one();
    *antipode.entry_mut(&[1, 1]) = one();
    *antipode.entry_mut(&[2, 3]) = -one();
    *antipode.entry_mut(&[3, 2]) = one();
    Arc::new(
        HopfData::new(
            ["1", "g", "x", "gx"].iter().map(|s| s.to_string()).collect(),
            mul,
            comul,
            unit,
            counit,
            antipode,
        )
        .expect("the four-dimensional algebra satisfies the axioms"),
    )
}

pub const CATALOG: [&str; 4] = ["z2", "z3", "s3", "sweedler"];

pub fn catalog(name: &str) -> Result<Arc<HopfData>, HopfError> {
    match name {
        "z2" => Ok(z2()),
        "z3" => Ok(z3()),
        "s3" => Ok(s3()),
        "sweedler" => Ok(sweedler()),
        _ => Err(HopfError::UnknownAlgebra { name: name.to_string() }),
    }
}

// ---- JSON structure-tensor loader ----

#[derive(Deserialize)]
struct Entry1 {
    i: usize,
    coeff: String,
}

#[derive(Deserialize)]
struct Entry2 {
    i: usize,
    j: usize,
    coeff: String,
}

#[derive(Deserialize)]
struct Entry3 {
    i: usize,
    j: usize,
    k: usize,
    coeff: String,
}

#[derive(Deserialize)]
struct AlgebraSpec {
    basis: Vec<String>,
    mul: Vec<Entry3>,
    comul: Vec<Entry3>,
    unit: Vec<Entry1>,
    counit: Vec<Entry1>,
    antipode: Vec<Entry2>,
}

fn coeff(text: &str) -> Result<Scalar, HopfError> {
    text.parse().map_err(|_| HopfError::BadScalar { text: text.to_string() })
}

fn bound(what: &'static str, idx: usize, d: usize) -> Result<(), HopfError> {
    if idx < d {
        Ok(())
    } else {
        Err(HopfError::IndexOutOfRange { what, index: idx, dim: d })
    }
}

/// Parse a JSON structure-tensor description and validate every axiom.
pub fn load_hopf(text: &str) -> Result<HopfData, HopfError> {
    let spec: AlgebraSpec =
        serde_json::from_str(text).map_err(|e| HopfError::Json(e.to_string()))?;
    let d = spec.basis.len();
    let mut mul = Tensor::zeros(vec![d, d, d]);
    for e in &spec.mul {
        bound("mul", e.i, d)?;
        bound("mul", e.j, d)?;
        bound("mul", e.k, d)?;
        *mul.entry_mut(&[e.i, e.j, e.k]) = coeff(&e.coeff)?;
    }
    let mut comul = Tensor::zeros(vec![d, d, d]);
    for e in &spec.comul {
        bound("comul", e.i, d)?;
        bound("comul", e.j, d)?;
        bound("comul", e.k, d)?;
        *comul.entry_mut(&[e.i, e.j, e.k]) = coeff(&e.coeff)?;
    }
    let mut unit = Tensor::zeros(vec![d]);
    for e in &spec.unit {
        bound("unit", e.i, d)?;
        *unit.entry_mut(&[e.i]) = coeff(&e.coeff)?;
    }
    let mut counit = Tensor::zeros(vec![d]);
    for e in &spec.counit {
        bound("counit", e.i, d)?;
        *counit.entry_mut(&[e.i]) = coeff(&e.coeff)?;
    }
    let mut antipode = Tensor::zeros(vec![d, d]);
    for e in &spec.antipode {
        bound("antipode", e.i, d)?;
        bound("antipode", e.j, d)?;
        *antipode.entry_mut(&[e.i, e.j]) = coeff(&e.coeff)?;
    }
    HopfData::new(spec.basis, mul, comul, unit, counit, antipode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::HopfError;

    #[test]
    fn catalog_names_resolve_and_validate() {
        for name in CATALOG {
            let h = catalog(name).unwrap();
            assert!(h.dim() >= 2, "{name}");
        }
        assert!(matches!(
            catalog("so-what"),
            Err(HopfError::UnknownAlgebra { .. })
        ));
    }

    #[test]
    fn four_dimensional_products_match_hand_values() {
        let h = sweedler();
        // gx·g = -x and g·gx = x
        assert_eq!(*h.mul().entry(&[3, 1, 2]), -Scalar::one());
        assert!(h.mul().entry(&[1, 3, 2]).is_one());
        // x·x = 0
        for k in 0..4 {
            assert!(h.mul().entry(&[2, 2, k]).is_zero());
        }
    }

    #[test]
    fn symmetric_group_algebra_is_noncommutative() {
        let h = s3();
        let m = h.mul();
        let some_noncommuting = (0..6).any(|i| {
            (0..6).any(|j| (0..6).any(|k| m.entry(&[i, j, k]) != m.entry(&[j, i, k])))
        });
        assert!(some_noncommuting);
    }

    const Z2_JSON: &str = r#"{
        "basis": ["1", "g"],
        "mul": [
            {"i": 0, "j": 0, "k": 0, "coeff": "1"},
            {"i": 0, "j": 1, "k": 1, "coeff": "1"},
            {"i": 1, "j": 0, "k": 1, "coeff": "1"},
            {"i": 1, "j": 1, "k": 0, "coeff": "1"}
        ],
        "comul": [
            {"i": 0, "j": 0, "k": 0, "coeff": "1"},
            {"i": 1, "j": 1, "k": 1, "coeff": "1"}
        ],
        "unit": [{"i": 0, "coeff": "1"}],
        "counit": [{"i": 0, "coeff": "1"}, {"i": 1, "coeff": "1"}],
        "antipode": [
            {"i": 0, "j": 0, "coeff": "1"},
            {"i": 1, "j": 1, "coeff": "1"}
        ]
    }"#;

    #[test]
    fn json_description_round_trips_to_the_catalog_algebra() {
        let loaded = load_hopf(Z2_JSON).unwrap();
        let built = z2();
        assert!(loaded.mul().sub(built.mul()).is_zero());
        assert!(loaded.comul().sub(built.comul()).is_zero());
        assert!(loaded.unit().sub(built.unit()).is_zero());
        assert!(loaded.counit().sub(built.counit()).is_zero());
        assert!(loaded.antipode().sub(built.antipode()).is_zero());
    }

    #[test]
    fn broken_associativity_is_named() {
        // redefine 1·g = 1 + g, so (1·1)·g and 1·(1·g) disagree
        let broken = Z2_JSON.replace(
            r#"{"i": 0, "j": 1, "k": 1, "coeff": "1"}"#,
            r#"{"i": 0, "j": 1, "k": 1, "coeff": "1"}, {"i": 0, "j": 1, "k": 0, "coeff": "1"}"#,
        );
        let err = load_hopf(&broken).unwrap_err();
        assert!(
            matches!(err, HopfError::Associativity { .. }),
            "expected an associativity error, got {err}"
        );
    }

    #[test]
    fn loader_rejects_bad_scalars_and_indices() {
        assert!(matches!(
            load_hopf(&Z2_JSON.replace(r#"{"i": 1, "coeff": "1"}"#, r#"{"i": 1, "coeff": "oops"}"#)),
            Err(HopfError::BadScalar { .. })
        ));
        assert!(matches!(
            load_hopf(&Z2_JSON.replace(r#"{"i": 1, "j": 1, "coeff": "1"}"#, r#"{"i": 1, "j": 7, "coeff": "1"}"#)),
            Err(HopfError::IndexOutOfRange { .. })
        ));
        assert!(matches!(load_hopf("not json"), Err(HopfError::Json(_))));
    }
}
