//! Built-in algebras and representations.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, TowerContext};
use crate::lie::LieAlgebra;
use crate::matrix::MatrixK;

/// Largest `n` accepted for `abelian`.
pub const MAX_ABELIAN_DIM: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub constraint: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub aliases: Vec<&'static str>,
    pub params: Vec<ParamSpec>,
    pub description: &'static str,
}

pub fn entries() -> Vec<CatalogEntry> {
    let p = |name, constraint| ParamSpec { name, constraint };
    vec![
        CatalogEntry {
            name: "su2",
            aliases: vec![],
            params: vec![],
            description: "Pauli basis, [s1,s2] = 2i s3 cyclically",
        },
        CatalogEntry {
            name: "sl2",
            aliases: vec![],
            params: vec![],
            description: "basis H, X, Y with [H,X] = 2X, [H,Y] = -2Y, [X,Y] = H",
        },
        CatalogEntry {
            name: "heisenberg3",
            aliases: vec![],
            params: vec![],
            description: "[x1,x2] = x3",
        },
        CatalogEntry {
            name: "abelian",
            aliases: vec![],
            params: vec![p("n", "integer, 1 <= n <= 12")],
            description: "all brackets zero",
        },
        CatalogEntry {
            name: "L_ab",
            aliases: vec![],
            params: vec![p("a", "any"), p("b", "b != 0")],
            description: "[x3,x1] = x2, [x3,x2] = a x1 + b x2",
        },
        CatalogEntry {
            name: "A_ab",
            aliases: vec!["L46"],
            params: vec![p("a", "a != 0"), p("b", "any")],
            description: "[x1,x4] = a x1, [x2,x4] = b x2 - x3, [x3,x4] = x2 + b x3",
        },
    ]
}

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn coords(n: usize, terms: &[(usize, FieldElement)]) -> Vec<FieldElement> {
    let mut v = vec![FieldElement::zero(); n];
    for (k, c) in terms {
        v[*k] = &v[*k] + c;
    }
    v
}

fn fe(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

fn ctx_for(params: &[&FieldElement]) -> Result<TowerContext> {
    params
        .iter()
        .try_fold(TowerContext::rationals(), |c, x| c.embed(x).map(|(c, _)| c))
}

pub fn su2() -> LieAlgebra {
    let ctx = TowerContext::gaussian();
    let two_i = fe(2) * ctx.imaginary_unit().expect("gaussian");
    let br = [
        ((0, 1), coords(3, &[(2, two_i.clone())])),
        ((1, 2), coords(3, &[(0, two_i.clone())])),
        ((2, 0), coords(3, &[(1, two_i)])),
    ];
    let names = ["s1", "s2", "s3"].map(String::from).to_vec();
    LieAlgebra::new("su2", names, br, ctx).expect("su2 is a Lie algebra")
}

pub fn sl2() -> LieAlgebra {
    let br = [
        ((0, 1), coords(3, &[(1, fe(2))])),
        ((0, 2), coords(3, &[(2, fe(-2))])),
        ((1, 2), coords(3, &[(0, fe(1))])),
    ];
    let names = ["H", "X", "Y"].map(String::from).to_vec();
    LieAlgebra::new("sl2", names, br, TowerContext::rationals()).expect("sl2 is a Lie algebra")
}

pub fn heisenberg3() -> LieAlgebra {
    LieAlgebra::new(
        "heisenberg3",
        labels(3),
        [((0, 1), coords(3, &[(2, fe(1))]))],
        TowerContext::rationals(),
    )
    .expect("heisenberg is a Lie algebra")
}

pub fn abelian(n: usize) -> Result<LieAlgebra> {
    if n == 0 || n > MAX_ABELIAN_DIM {
        return Err(Error::ParameterConstraintViolated(format!(
            "abelian needs 1 <= n <= {MAX_ABELIAN_DIM}, got {n}"
        )));
    }
    Ok(LieAlgebra::abelian(n))
}

/// `[x3,x1] = x2`, `[x3,x2] = a x1 + b x2`, `b ≠ 0`.
pub fn l_ab(a: &FieldElement, b: &FieldElement) -> Result<LieAlgebra> {
    if b.is_zero() {
        return Err(Error::ParameterConstraintViolated("L_ab needs b != 0".into()));
    }
    let ctx = ctx_for(&[a, b])?;
    let br = [
        ((2, 0), coords(3, &[(1, fe(1))])),
        ((2, 1), coords(3, &[(0, a.clone()), (1, b.clone())])),
    ];
    LieAlgebra::new(format!("L_ab(a={a},b={b})"), labels(3), br, ctx)
}

/// `[x1,x4] = a x1`, `[x2,x4] = b x2 − x3`, `[x3,x4] = x2 + b x3`, `a ≠ 0`.
pub fn a_ab(a: &FieldElement, b: &FieldElement) -> Result<LieAlgebra> {
    if a.is_zero() {
        return Err(Error::ParameterConstraintViolated("A_ab needs a != 0".into()));
    }
    let ctx = ctx_for(&[a, b])?;
    let br = [
        ((0, 3), coords(4, &[(0, a.clone())])),
        ((1, 3), coords(4, &[(1, b.clone()), (2, fe(-1))])),
        ((2, 3), coords(4, &[(1, fe(1)), (2, b.clone())])),
    ];
    LieAlgebra::new(format!("A_ab(a={a},b={b})"), labels(4), br, ctx)
}

fn take(params: &mut BTreeMap<String, FieldElement>, name: &str, entry: &str) -> Result<FieldElement> {
    params
        .remove(name)
        .ok_or_else(|| Error::ParameterConstraintViolated(format!("{entry} needs parameter {name}")))
}

/// Looks up an entry by name or alias and instantiates it.
pub fn get(name: &str, params: &BTreeMap<String, FieldElement>) -> Result<LieAlgebra> {
    let mut params = params.clone();
    let alg = match name {
        "su2" => su2(),
        "sl2" => sl2(),
        "heisenberg3" => heisenberg3(),
        "abelian" => {
            let n = take(&mut params, "n", name)?;
            let n = n
                .as_rational()
                .filter(|q| q.is_integer())
                .and_then(|q| usize::try_from(q.numer()).ok())
                .ok_or_else(|| Error::ParameterConstraintViolated("n must be a positive integer".into()))?;
            abelian(n)?
        }
        "L_ab" => {
            let a = take(&mut params, "a", name)?;
            let b = take(&mut params, "b", name)?;
            l_ab(&a, &b)?
        }
        "A_ab" | "L46" => {
            let a = take(&mut params, "a", name)?;
            let b = take(&mut params, "b", name)?;
            a_ab(&a, &b)?
        }
        _ => return Err(Error::UnknownEntry(name.to_string())),
    };
    if let Some(extra) = params.keys().next() {
        return Err(Error::ParameterConstraintViolated(format!(
            "{name} has no parameter {extra}"
        )));
    }
    Ok(alg)
}

/// The `(m+1)`-dimensional irreducible representation of sl(2) as matrices
/// `[H, X, Y]` on `v_0..v_m`.
pub fn sl2_irrep(m: usize) -> [MatrixK; 3] {
    let d = m + 1;
    let mut h = MatrixK::zeros(d, d);
    let mut x = MatrixK::zeros(d, d);
    let mut y = MatrixK::zeros(d, d);
    for j in 0..d {
        h.set(j, j, fe(m as i64 - 2 * j as i64));
        if j + 1 < d {
            y.set(j + 1, j, fe(1));
        }
        if j > 0 {
            x.set(j - 1, j, fe((j * (m - j + 1)) as i64));
        }
    }
    [h, x, y]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_validates() {
        let one = fe(1);
        let algs = [
            su2(),
            sl2(),
            heisenberg3(),
            abelian(4).unwrap(),
            l_ab(&one, &one).unwrap(),
            a_ab(&one, &fe(2)).unwrap(),
        ];
        for a in &algs {
            assert!(a.validate().is_empty(), "{}", a.name());
        }
        assert!(abelian(4).unwrap().adjoint().iter().all(MatrixK::is_zero));
    }

    #[test]
    fn lookup_and_constraints() {
        let mut p = BTreeMap::new();
        p.insert("a".to_string(), fe(1));
        p.insert("b".to_string(), fe(1));
        let l = get("L_ab", &p).unwrap();
        assert_eq!(l.bracket(2, 0), vec![fe(0), fe(1), fe(0)]);
        assert_eq!(l.bracket(2, 1), vec![fe(1), fe(1), fe(0)]);
        p.insert("b".to_string(), fe(0));
        assert!(matches!(get("L_ab", &p), Err(Error::ParameterConstraintViolated(_))));
        assert_eq!(get("nope", &p).unwrap_err(), Error::UnknownEntry("nope".into()));
        assert!(get("L46", &BTreeMap::from([("a".into(), fe(1)), ("b".into(), fe(2))])).is_ok());
    }

    #[test]
    fn irreps_satisfy_relations() {
        for m in 0..=6 {
            let [h, x, y] = sl2_irrep(m);
            assert_eq!(h.commutator(&x), x.scale(&fe(2)));
            assert_eq!(h.commutator(&y), y.scale(&fe(-2)));
            assert_eq!(x.commutator(&y), h);
        }
        let [h, ..] = sl2_irrep(1);
        assert_eq!(h, MatrixK::diag(&[fe(1), fe(-1)]));
    }
}
