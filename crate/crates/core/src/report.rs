//! Serializable views of the computed data. Field names are stable.

use std::fmt::Write as _;

use serde::Serialize;

use crate::catalog;
use crate::error::Result;
use crate::field::FieldElement;
use crate::lie::{JacobiViolation, LieAlgebra};
use crate::matrix::MatrixK;
use crate::mpoly::{MultiPoly, TermJson};
use crate::spectral::{
    self, char_poly_pencil, sl2_closed_form, CharPoly, Difference, InvariantReport,
    LinearFactorization,
};

fn strs(v: &[FieldElement]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn rows(m: &MatrixK) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| strs(r)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorJson {
    pub coeffs: Vec<String>,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumJson {
    pub generator: String,
    pub spectrum_multiset: Vec<String>,
    pub spectrum_distinct: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportJson {
    pub name: String,
    pub dim: usize,
    pub solvable: bool,
    pub nilpotent: bool,
    pub z0_multiplicity: u32,
    pub charpoly: String,
    pub reduced: String,
    pub factors: Vec<FactorJson>,
    pub residual: String,
    pub residual_degree: u32,
    pub rank_lambda: Option<usize>,
    pub k: Option<usize>,
    pub nilradical: Option<Vec<Vec<String>>>,
    pub nilradical_dim: Option<usize>,
    pub spectral_matrix: Option<Vec<Vec<String>>>,
    pub spectra: Vec<SpectrumJson>,
    pub trace_vector: Vec<String>,
    pub poincare: Option<Vec<u64>>,
    /// Radicands of the quadratic tower the eigenvalues live in.
    pub tower: Vec<String>,
}

fn factors_json(f: &LinearFactorization) -> Vec<FactorJson> {
    f.factors
        .iter()
        .map(|(c, m)| FactorJson {
            coeffs: strs(c),
            mult: *m,
        })
        .collect()
}

impl ReportJson {
    pub fn new(r: &InvariantReport, labels: &[String]) -> Self {
        let sd = r.solvable_data.as_ref();
        ReportJson {
            name: r.name.clone(),
            dim: r.dim,
            solvable: r.solvable,
            nilpotent: r.nilpotent,
            z0_multiplicity: r.charpoly.z0_multiplicity,
            charpoly: r.charpoly.q.to_string(),
            reduced: r.charpoly.reduced.to_string(),
            factors: factors_json(&r.factorization),
            residual: r.factorization.residual.to_string(),
            residual_degree: r.factorization.residual_degree(),
            rank_lambda: sd.map(|s| s.rank_lambda),
            k: sd.map(|s| s.k),
            nilradical: sd.map(|s| s.nilradical.iter().map(|v| strs(v)).collect()),
            nilradical_dim: sd.map(|s| s.nilradical.len()),
            spectral_matrix: sd.map(|s| rows(&s.spectral_matrix.lambda)),
            spectra: r
                .spectra
                .iter()
                .zip(labels)
                .map(|(s, l)| SpectrumJson {
                    generator: l.clone(),
                    spectrum_multiset: strs(&s.multiset()),
                    spectrum_distinct: strs(&s.distinct()),
                })
                .collect(),
            trace_vector: strs(&r.trace_vector),
            poincare: sd.map(|s| s.poincare.coeffs.clone()),
            tower: r.ctx.levels().iter().map(|l| l.radicand().to_string()).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "name: {}", self.name);
        let _ = writeln!(s, "dim: {}", self.dim);
        let _ = writeln!(s, "solvable: {}", self.solvable);
        let _ = writeln!(s, "nilpotent: {}", self.nilpotent);
        let _ = writeln!(s, "Q(z) = {}", self.charpoly);
        let _ = writeln!(s, "z0 multiplicity: {}", self.z0_multiplicity);
        for f in &self.factors {
            let _ = writeln!(s, "factor ({})^{}", f.coeffs.join(", "), f.mult);
        }
        if self.residual_degree > 0 {
            let _ = writeln!(s, "residual: {}", self.residual);
        }
        for sp in &self.spectra {
            let _ = writeln!(s, "spectrum {}: {{{}}}", sp.generator, sp.spectrum_multiset.join(", "));
        }
        if let Some(m) = &self.spectral_matrix {
            let _ = writeln!(s, "spectral matrix:");
            for r in m {
                let _ = writeln!(s, "  [{}]", r.join(", "));
            }
        }
        if let (Some(rank), Some(k)) = (self.rank_lambda, self.k) {
            let _ = writeln!(s, "rank lambda: {rank}");
            let _ = writeln!(s, "k: {k}");
        }
        if let Some(n) = &self.nilradical {
            let vs: Vec<String> = n.iter().map(|v| format!("({})", v.join(", "))).collect();
            let _ = writeln!(s, "nilradical: span{{{}}}", vs.join(", "));
        }
        if let Some(p) = &self.poincare {
            let _ = writeln!(s, "poincare: {p:?}");
        }
        s
    }
}

pub fn report(alg: &LieAlgebra) -> Result<ReportJson> {
    let r = spectral::invariant_report(alg)?;
    Ok(ReportJson::new(&r, alg.labels()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationJson {
    pub triple: [usize; 3],
    pub residual: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidateJson {
    pub valid: bool,
    pub dim: usize,
    pub violations: Vec<ViolationJson>,
}

pub fn validate_json(dim: usize, v: &[JacobiViolation]) -> ValidateJson {
    ValidateJson {
        valid: v.is_empty(),
        dim,
        violations: v
            .iter()
            .map(|x| ViolationJson {
                triple: [x.triple.0, x.triple.1, x.triple.2],
                residual: strs(&x.residual),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharPolyJson {
    pub charpoly: String,
    pub terms: Vec<TermJson>,
    pub z0_multiplicity: u32,
    pub homogeneous: bool,
    pub degree: u32,
}

pub fn charpoly_json(cp: &CharPoly, reduced: bool) -> CharPolyJson {
    let p: &MultiPoly = if reduced { &cp.reduced } else { &cp.q };
    CharPolyJson {
        charpoly: p.to_string(),
        terms: p.to_json_terms(),
        z0_multiplicity: cp.z0_multiplicity,
        homogeneous: p.is_homogeneous(),
        degree: p.degree(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationJson {
    pub complete: bool,
    pub factors: Vec<FactorJson>,
    pub residual: String,
    pub residual_degree: u32,
}

pub fn factorization_json(f: &LinearFactorization) -> FactorizationJson {
    FactorizationJson {
        complete: f.is_complete(),
        factors: factors_json(f),
        residual: f.residual.to_string(),
        residual_degree: f.residual_degree(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareJson {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
}

pub fn compare_json(d: Option<Difference>) -> CompareJson {
    match d {
        Some(d) => CompareJson {
            verdict: "distinguished",
            invariant: Some(d.invariant),
            a: Some(d.a),
            b: Some(d.b),
        },
        None => CompareJson {
            verdict: "indistinguishable_by_computed_invariants",
            invariant: None,
            a: None,
            b: None,
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepJson {
    pub m: usize,
    pub dim: usize,
    pub h: Vec<Vec<String>>,
    pub x: Vec<Vec<String>>,
    pub y: Vec<Vec<String>>,
    pub charpoly: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_closed_form: Option<bool>,
}

pub fn sl2_rep_json(m: usize, closed_form: bool) -> Result<RepJson> {
    let [h, x, y] = catalog::sl2_irrep(m);
    let cp = char_poly_pencil(&[h.clone(), x.clone(), y.clone()])?;
    let cf = closed_form.then(|| sl2_closed_form(m));
    Ok(RepJson {
        m,
        dim: m + 1,
        h: rows(&h),
        x: rows(&x),
        y: rows(&y),
        charpoly: cp.q.to_string(),
        matches_closed_form: cf.as_ref().map(|c| *c == cp.q),
        closed_form: cf.map(|c| c.to_string()),
    })
}
