//! Characteristic polynomials of pencils, their linear factors, the spectral
//! matrix of a solvable algebra and the invariants read off from it.

use crate::arrangement::{self, PoincarePoly};
use crate::error::{Error, Result};
use crate::field::{roots, FieldElement, TowerContext};
use crate::lie::LieAlgebra;
use crate::matrix::MatrixK;
use crate::mpoly::{Monomial, MultiPoly, PolyMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub q: MultiPoly,
    pub z0_multiplicity: u32,
    /// `Q / z0^k` with the full multiplicity removed.
    pub reduced: MultiPoly,
}

impl CharPoly {
    fn from_q(q: MultiPoly) -> Self {
        let k = q.var_multiplicity(0);
        let reduced = q.div_var_pow(0, k);
        CharPoly {
            q,
            z0_multiplicity: k,
            reduced,
        }
    }

    /// `Q / z0`, dividing out a single factor only.
    pub fn reduced_single(&self) -> MultiPoly {
        if self.z0_multiplicity == 0 {
            self.q.clone()
        } else {
            self.q.div_var_pow(0, 1)
        }
    }

    pub fn nvars(&self) -> usize {
        self.q.nvars()
    }

    /// Whether `Q = z0^n`.
    pub fn is_pure_z0_power(&self) -> bool {
        self.reduced.is_constant()
    }
}

/// `det(z0·I + Σ z_i M_i)` for any pencil.
pub fn char_poly_pencil(mats: &[MatrixK]) -> Result<CharPoly> {
    let q = PolyMatrix::pencil(mats)?.det()?;
    Ok(CharPoly::from_q(q))
}

/// Characteristic polynomial of the adjoint pencil.
pub fn char_poly(alg: &LieAlgebra) -> Result<CharPoly> {
    let n = alg.dim();
    let cp = char_poly_pencil(&alg.adjoint())?;
    if cp.z0_multiplicity == 0 {
        return Err(Error::InternalInconsistency(
            "adjoint characteristic polynomial lacks the factor z0".into(),
        ));
    }
    let lead = cp.q.coeff(&Monomial::new(
        std::iter::once(n as u32).chain(std::iter::repeat_n(0, n)).collect(),
    ));
    if !cp.q.is_homogeneous() || cp.q.degree() as usize != n || !lead.is_one() {
        return Err(Error::InternalInconsistency(
            "adjoint characteristic polynomial is not monic homogeneous of degree n".into(),
        ));
    }
    Ok(cp)
}

/// Eigenvalues of one matrix, with multiplicities, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub values: Vec<(FieldElement, usize)>,
}

impl Spectrum {
    pub fn multiset(&self) -> Vec<FieldElement> {
        self.values
            .iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v.clone(), *m))
            .collect()
    }

    pub fn distinct(&self) -> Vec<FieldElement> {
        self.values.iter().map(|(v, _)| v.clone()).collect()
    }
}

pub fn spectrum(ctx: &TowerContext, m: &MatrixK) -> Result<(TowerContext, Spectrum)> {
    let (ctx, values) = roots(ctx, &m.charpoly())?;
    Ok((ctx, Spectrum { values }))
}

/// Spectra of every matrix of the pencil, extending the tower as needed.
pub fn spectra(ctx: &TowerContext, mats: &[MatrixK]) -> Result<(TowerContext, Vec<Spectrum>)> {
    let mut ctx = ctx.clone();
    let mut out = Vec::with_capacity(mats.len());
    for m in mats {
        let (next, s) = spectrum(&ctx, m)?;
        ctx = next;
        out.push(s);
    }
    Ok((ctx, out))
}

/// A linear form `z0 + Σ λ_i z_i`, stored as `(1, λ_1, …, λ_n)`.
pub type LinearForm = Vec<FieldElement>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactorization {
    /// Distinct factors with multiplicity, in canonical order.
    pub factors: Vec<(LinearForm, usize)>,
    pub residual: MultiPoly,
}

impl LinearFactorization {
    pub fn is_complete(&self) -> bool {
        self.residual.is_constant()
    }

    pub fn residual_degree(&self) -> u32 {
        self.residual.degree()
    }

    pub fn product(&self) -> MultiPoly {
        self.factors
            .iter()
            .fold(self.residual.clone(), |acc, (f, m)| {
                acc.mul(&MultiPoly::linear(f).pow(*m as u32))
            })
    }

    fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(Error::NotFullyFactorable {
                residual_degree: self.residual_degree() as usize,
            })
        }
    }
}

/// Whether `z0 + Σ_{i≤m} λ_i z_i` divides `p` restricted to `z0..z_m`.
fn prefix_divides(p: &MultiPoly, lambda: &[FieldElement]) -> bool {
    let m = lambda.len();
    let restricted = p.truncate_vars(m);
    let mut coeffs = vec![FieldElement::zero(); p.nvars()];
    for (i, l) in lambda.iter().enumerate() {
        coeffs[i + 1] = -l;
    }
    restricted.compose_var(0, &MultiPoly::linear(&coeffs)).is_zero()
}

fn search(p: &MultiPoly, choices: &[Vec<FieldElement>], prefix: &mut Vec<FieldElement>) -> bool {
    if prefix.len() == choices.len() {
        return true;
    }
    for c in &choices[prefix.len()] {
        prefix.push(c.clone());
        if prefix_divides(p, prefix) && search(p, choices, prefix) {
            return true;
        }
        prefix.pop();
    }
    false
}

/// Splits off every linear factor `z0 + Σ λ_i z_i` of `cp`, drawing each `λ_i`
/// from the eigenvalues of `pencil[i]`.
pub fn linear_factorize(
    cp: &CharPoly,
    pencil: &[MatrixK],
    ctx: &TowerContext,
) -> Result<(TowerContext, LinearFactorization)> {
    let nvars = cp.nvars();
    if pencil.len() + 1 != nvars {
        return Err(Error::DimensionMismatch(format!(
            "{} matrices for a polynomial in {nvars} variables",
            pencil.len()
        )));
    }
    let (ctx, specs) = spectra(ctx, pencil)?;
    let choices: Vec<Vec<FieldElement>> = specs.iter().map(Spectrum::distinct).collect();
    let mut factors = Vec::new();
    if cp.z0_multiplicity > 0 {
        let mut z0 = vec![FieldElement::zero(); nvars];
        z0[0] = FieldElement::one();
        factors.push((z0, cp.z0_multiplicity as usize));
    }
    let mut rem = cp.reduced.clone();
    while rem.degree() > 0 {
        let mut prefix = Vec::new();
        if !search(&rem, &choices, &mut prefix) {
            break;
        }
        let form: LinearForm = std::iter::once(FieldElement::one()).chain(prefix).collect();
        let lin = MultiPoly::linear(&form);
        let mut mult = 0;
        while let Some(q) = rem.exact_div(&lin) {
            rem = q;
            mult += 1;
        }
        if mult == 0 {
            return Err(Error::InternalInconsistency(
                "candidate factor passed the substitution test but does not divide".into(),
            ));
        }
        factors.push((form, mult));
    }
    factors.sort();
    Ok((ctx, LinearFactorization { factors, residual: rem }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralMatrix {
    /// Column `j` holds `(λ_1j, …, λ_nj)`.
    pub lambda: MatrixK,
}

/// Columns are the factor coefficients repeated by multiplicity, zero columns
/// first and the rest in canonical order.
pub fn spectral_matrix(f: &LinearFactorization) -> Result<SpectralMatrix> {
    f.require_complete()?;
    let mut cols: Vec<Vec<FieldElement>> = f
        .factors
        .iter()
        .flat_map(|(form, m)| std::iter::repeat_n(form[1..].to_vec(), *m))
        .collect();
    cols.sort_by(|a, b| {
        let za = a.iter().all(FieldElement::is_zero);
        let zb = b.iter().all(FieldElement::is_zero);
        zb.cmp(&za).then_with(|| a.cmp(b))
    });
    Ok(SpectralMatrix {
        lambda: MatrixK::from_columns(&cols)?,
    })
}

pub fn spectral_rank(sm: &SpectralMatrix) -> usize {
    sm.lambda.rank()
}

/// The nilradical of a solvable algebra as `ker λᵀ`, each basis vector
/// certified to have nilpotent `ad`.
pub fn nilradical_basis(alg: &LieAlgebra, sm: &SpectralMatrix) -> Result<Vec<Vec<FieldElement>>> {
    let n = alg.dim();
    let basis = sm.lambda.transpose().kernel();
    for v in &basis {
        if !alg.ad(v).pow(n).is_zero() {
            return Err(Error::InternalInconsistency(format!(
                "nilradical vector {:?} has non-nilpotent ad",
                v.iter().map(ToString::to_string).collect::<Vec<_>>()
            )));
        }
    }
    if basis.len() + spectral_rank(sm) != n {
        return Err(Error::InternalInconsistency(
            "nilradical dimension differs from n - rank".into(),
        ));
    }
    Ok(basis)
}

/// Number of distinct linear factors, `z0` included.
pub fn k_count(f: &LinearFactorization) -> Result<usize> {
    f.require_complete()?;
    Ok(f.factors.len())
}

/// A scalar `t ≠ 0` with `a = t·b` as multisets, if one exists.
pub fn extension_spectrum_ratio(a: &[FieldElement], b: &[FieldElement]) -> Option<FieldElement> {
    if a.len() != b.len() {
        return None;
    }
    let mut sa = a.to_vec();
    sa.sort();
    let Some(a0) = a.iter().find(|x| !x.is_zero()) else {
        return b.iter().all(FieldElement::is_zero).then(FieldElement::one);
    };
    let mut candidates: Vec<FieldElement> = b
        .iter()
        .filter(|y| !y.is_zero())
        .map(|y| a0 / y)
        .collect();
    candidates.sort();
    candidates.dedup();
    candidates.into_iter().find(|t| {
        let mut sb: Vec<FieldElement> = b.iter().map(|y| t * y).collect();
        sb.sort();
        sb == sa
    })
}

/// Closed form of the characteristic polynomial of the `(m+1)`-dimensional
/// irreducible representation of sl(2), in `z0..z3` for `(H, X, Y)`.
pub fn sl2_closed_form(m: usize) -> MultiPoly {
    let z = |i| MultiPoly::var(4, i);
    let form = z(1).pow(2).add(&z(2).mul(&z(3)));
    let z0sq = z(0).pow(2);
    let start = if m.is_multiple_of(2) { z(0) } else { MultiPoly::one(4) };
    (0..m.div_ceil(2)).fold(start, |acc, j| {
        let w = FieldElement::from_int(((m - 2 * j) * (m - 2 * j)) as i64);
        acc.mul(&z0sq.sub(&form.scale(&w)))
    })
}

/// Everything computed for one algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub name: String,
    pub dim: usize,
    pub ctx: TowerContext,
    pub solvable: bool,
    pub nilpotent: bool,
    pub charpoly: CharPoly,
    pub factorization: LinearFactorization,
    pub spectra: Vec<Spectrum>,
    pub trace_vector: Vec<FieldElement>,
    /// Present exactly when the algebra is solvable.
    pub solvable_data: Option<SolvableData>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvableData {
    pub spectral_matrix: SpectralMatrix,
    pub rank_lambda: usize,
    pub k: usize,
    pub nilradical: Vec<Vec<FieldElement>>,
    pub poincare: PoincarePoly,
}

pub fn invariant_report(alg: &LieAlgebra) -> Result<InvariantReport> {
    let cp = char_poly(alg)?;
    let pencil = alg.adjoint();
    let (ctx, f) = linear_factorize(&cp, &pencil, alg.ctx())?;
    let (ctx, specs) = spectra(&ctx, &pencil)?;

    let nilpotent = alg.is_nilpotent();
    if nilpotent != cp.is_pure_z0_power() {
        return Err(Error::InternalInconsistency(format!(
            "lower central series says nilpotent={nilpotent}, characteristic polynomial disagrees"
        )));
    }
    let solvable = alg.is_solvable();
    if solvable != f.is_complete() {
        return Err(Error::InternalInconsistency(format!(
            "derived series says solvable={solvable}, linear factorization disagrees"
        )));
    }

    let solvable_data = if solvable {
        let sm = spectral_matrix(&f)?;
        let rank_lambda = spectral_rank(&sm);
        let nilradical = nilradical_basis(alg, &sm)?;
        let hs = arrangement::build_arrangement(&f)?;
        let lattice = arrangement::intersection_lattice(&hs)?;
        Some(SolvableData {
            rank_lambda,
            k: k_count(&f)?,
            nilradical,
            poincare: arrangement::poincare_polynomial(&lattice),
            spectral_matrix: sm,
        })
    } else {
        None
    };

    Ok(InvariantReport {
        name: alg.name().to_string(),
        dim: alg.dim(),
        ctx,
        solvable,
        nilpotent,
        charpoly: cp,
        factorization: f,
        spectra: specs,
        trace_vector: alg.trace_vector(),
        solvable_data,
    })
}

/// First invariant on which two reports differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Difference {
    pub invariant: &'static str,
    pub a: String,
    pub b: String,
}

/// Compares basis-independent invariants in a fixed order. `None` means no
/// computed invariant tells the algebras apart, which is not a proof of
/// isomorphism.
pub fn compare(a: &InvariantReport, b: &InvariantReport) -> Result<Option<Difference>> {
    fn check<T: PartialEq + std::fmt::Debug>(name: &'static str, x: T, y: T) -> Option<Difference> {
        (x != y).then(|| Difference {
            invariant: name,
            a: format!("{x:?}"),
            b: format!("{y:?}"),
        })
    }
    let unimodular = |r: &InvariantReport| r.trace_vector.iter().all(FieldElement::is_zero);
    let sd = |r: &InvariantReport| r.solvable_data.clone();
    let checks = [
        check("dim", a.dim, b.dim),
        check("solvable", a.solvable, b.solvable),
        check("nilpotent", a.nilpotent, b.nilpotent),
        check("z0_multiplicity", a.charpoly.z0_multiplicity, b.charpoly.z0_multiplicity),
        check("unimodular", unimodular(a), unimodular(b)),
        check(
            "residual_degree",
            a.factorization.residual_degree(),
            b.factorization.residual_degree(),
        ),
        check("k", sd(a).map(|s| s.k), sd(b).map(|s| s.k)),
        check("rank_lambda", sd(a).map(|s| s.rank_lambda), sd(b).map(|s| s.rank_lambda)),
        check(
            "nilradical_dim",
            sd(a).map(|s| s.nilradical.len()),
            sd(b).map(|s| s.nilradical.len()),
        ),
        check(
            "poincare",
            sd(a).map(|s| s.poincare.coeffs),
            sd(b).map(|s| s.poincare.coeffs),
        ),
    ];
    if let Some(d) = checks.into_iter().flatten().next() {
        return Ok(Some(d));
    }
    if let (Some(sa), Some(sb)) = (&a.solvable_data, &b.solvable_data) {
        if sa.rank_lambda == 1 && sa.nilradical.len() + 1 == a.dim {
            let row = |s: &SolvableData| {
                (0..s.spectral_matrix.lambda.rows())
                    .map(|i| s.spectral_matrix.lambda.row(i))
                    .find(|r| r.iter().any(|x| !x.is_zero()))
                    .expect("rank one")
            };
            let ra = row(sa);
            let mut ctx = a.ctx.clone();
            let mut rb = Vec::new();
            for x in row(sb) {
                let (next, y) = ctx.embed(&x)?;
                ctx = next;
                rb.push(y);
            }
            if extension_spectrum_ratio(&ra, &rb).is_none() {
                let show = |v: &[FieldElement]| {
                    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                };
                return Ok(Some(Difference {
                    invariant: "extension_spectrum_ratio",
                    a: format!("{{{}}}", show(&ra)),
                    b: format!("{{{}}}", show(&rb)),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn su2_and_sl2() {
        let cp = char_poly(&catalog::su2()).unwrap();
        assert_eq!(cp.q.to_string(), "z0^3 - 4*z0*z1^2 - 4*z0*z2^2 - 4*z0*z3^2");
        let sl2 = catalog::sl2();
        let cp = char_poly(&sl2).unwrap();
        assert_eq!(cp.q.to_string(), "z0^3 - 4*z0*z1^2 - 4*z0*z2*z3");
        let (_, f) = linear_factorize(&cp, &sl2.adjoint(), sl2.ctx()).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.residual.to_string(), "z0^2 - 4*z1^2 - 4*z2*z3");
        assert_eq!(
            spectral_matrix(&f).unwrap_err(),
            Error::NotFullyFactorable { residual_degree: 2 }
        );
    }

    #[test]
    fn heisenberg_is_pure_power() {
        let cp = char_poly(&catalog::heisenberg3()).unwrap();
        assert_eq!(cp.q.to_string(), "z0^3");
        assert!(cp.is_pure_z0_power());
    }

    #[test]
    fn l_ab_spectral_matrix() {
        let l = catalog::l_ab(&fe(1), &fe(1)).unwrap();
        let cp = char_poly(&l).unwrap();
        assert_eq!(cp.q.to_string(), "z0^3 + z0^2*z3 - z0*z3^2");
        let (_, f) = linear_factorize(&cp, &l.adjoint(), l.ctx()).unwrap();
        let sm = spectral_matrix(&f).unwrap();
        let row: Vec<String> = sm.lambda.row(2).iter().map(ToString::to_string).collect();
        // eigenvalues of T_3, the roots of t² − t − 1
        assert_eq!(row, ["0", "1/2-1/2*sqrt(5)", "1/2+1/2*sqrt(5)"]);
        assert_eq!(k_count(&f).unwrap(), 3);
        let nil = nilradical_basis(&l, &sm).unwrap();
        assert_eq!(nil, vec![vec![fe(1), fe(0), fe(0)], vec![fe(0), fe(1), fe(0)]]);
    }

    #[test]
    fn ratios() {
        let v = |xs: &[i64]| xs.iter().map(|&x| fe(x)).collect::<Vec<_>>();
        assert_eq!(extension_spectrum_ratio(&v(&[0, 2, 4]), &v(&[0, 1, 2])), Some(fe(2)));
        assert_eq!(extension_spectrum_ratio(&v(&[0, 2, 4]), &v(&[0, 1, 3])), None);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(sl2_closed_form(0).to_string(), "z0");
        assert_eq!(sl2_closed_form(1).to_string(), "z0^2 - z1^2 - z2*z3");
        assert_eq!(
            sl2_closed_form(2),
            char_poly(&catalog::sl2()).unwrap().q
        );
    }
}
