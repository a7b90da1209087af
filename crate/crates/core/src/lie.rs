//! Lie algebras given by structure constants, with the structural operations
//! the spectral layer builds on.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, TowerContext};
use crate::matrix::{span_basis, MatrixK};

/// The matrices `T_1..T_n` of `ad x_1..ad x_n`.
pub type AdjointPencil = Vec<MatrixK>;

/// A failing Jacobi triple, with 1-based indices and the nonzero residual
/// `[x_i,[x_j,x_k]] + [x_j,[x_k,x_i]] + [x_k,[x_i,x_j]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub residual: Vec<FieldElement>,
}

impl fmt::Display for JacobiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        let r: Vec<String> = self.residual.iter().map(ToString::to_string).collect();
        write!(f, "triple ({i},{j},{k}) has residual [{}]", r.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
}

/// A descending chain of subspaces, each given by a row-reduced basis, ending
/// where it stabilizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub kind: SeriesKind,
    pub terms: Vec<Vec<Vec<FieldElement>>>,
}

impl Series {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }

    pub fn reaches_zero(&self) -> bool {
        self.terms.last().is_some_and(Vec::is_empty)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    /// `[x_i, x_j]` for `i < j` (0-based), only nonzero brackets.
    brackets: BTreeMap<(usize, usize), Vec<FieldElement>>,
    ctx: TowerContext,
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn zero_vec(n: usize) -> Vec<FieldElement> {
    vec![FieldElement::zero(); n]
}

fn axpy(acc: &mut [FieldElement], c: &FieldElement, v: &[FieldElement]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

impl LieAlgebra {
    /// Builds the algebra and checks the Jacobi identity.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = ((usize, usize), Vec<FieldElement>)>,
        ctx: TowerContext,
    ) -> Result<Self> {
        let alg = Self::new_unchecked(name, labels, brackets, ctx)?;
        if let Some(v) = alg.validate().into_iter().next() {
            return Err(Error::InvalidAlgebra(v.to_string()));
        }
        Ok(alg)
    }

    /// Builds the algebra without the Jacobi check. Indices are 0-based; a
    /// bracket given as `(j, i)` with `j > i` is stored negated.
    pub fn new_unchecked(
        name: impl Into<String>,
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = ((usize, usize), Vec<FieldElement>)>,
        ctx: TowerContext,
    ) -> Result<Self> {
        let n = labels.len();
        let mut map = BTreeMap::new();
        for ((i, j), v) in brackets {
            if i >= n || j >= n || i == j {
                return Err(Error::DimensionMismatch(format!(
                    "bracket ({}, {}) outside 1..{n} or on the diagonal",
                    i + 1,
                    j + 1
                )));
            }
            if v.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "bracket ({}, {}) has {} coordinates, expected {n}",
                    i + 1,
                    j + 1,
                    v.len()
                )));
            }
            if v.iter().any(|c| !ctx.contains(c)) {
                return Err(Error::IncompatibleTowers);
            }
            let (key, v) = if i < j {
                ((i, j), v)
            } else {
                ((j, i), v.iter().map(|c| -c).collect())
            };
            if map.contains_key(&key) {
                return Err(Error::DimensionMismatch(format!(
                    "bracket ({}, {}) declared twice",
                    key.0 + 1,
                    key.1 + 1
                )));
            }
            if v.iter().any(|c| !c.is_zero()) {
                map.insert(key, v);
            }
        }
        Ok(LieAlgebra {
            name: name.into(),
            labels,
            brackets: map,
            ctx,
        })
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra {
            name: format!("abelian{n}"),
            labels: default_labels(n),
            brackets: BTreeMap::new(),
            ctx: TowerContext::rationals(),
        }
    }

    /// The algebra whose `ad x_i` matrices are `mats[i]`, i.e. column `j` of
    /// `mats[i]` holds `[x_i, x_j]`. Antisymmetry and Jacobi are checked.
    pub fn from_adjoint(name: impl Into<String>, mats: &[MatrixK], ctx: TowerContext) -> Result<Self> {
        let n = mats.len();
        let mut br = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if mats[i].column(j) != mats[j].column(i).iter().map(|c| -c).collect::<Vec<_>>() {
                    return Err(Error::InvalidAlgebra(format!(
                        "[x{}, x{}] is not antisymmetric",
                        i + 1,
                        j + 1
                    )));
                }
                if i < j {
                    br.push(((i, j), mats[i].column(j)));
                }
            }
        }
        Self::new(name, default_labels(n), br, ctx)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn ctx(&self) -> &TowerContext {
        &self.ctx
    }

    /// Nonzero brackets `[x_i, x_j]` with `i < j` (0-based).
    pub fn brackets(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<FieldElement>)> {
        self.brackets.iter()
    }

    /// Coordinates of `[x_i, x_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<FieldElement> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => zero_vec(self.dim()),
            Less => self
                .brackets
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| zero_vec(self.dim())),
            Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|c| -c).collect())
                .unwrap_or_else(|| zero_vec(self.dim())),
        }
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket_vec(&self, u: &[FieldElement], v: &[FieldElement]) -> Vec<FieldElement> {
        let mut out = zero_vec(self.dim());
        for (&(i, j), b) in &self.brackets {
            let c = &(&u[i] * &v[j]) - &(&u[j] * &v[i]);
            axpy(&mut out, &c, b);
        }
        out
    }

    pub fn validate(&self) -> Vec<JacobiViolation> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let e = |a: usize| {
                        let mut v = zero_vec(n);
                        v[a] = FieldElement::one();
                        v
                    };
                    let mut r = self.bracket_vec(&e(i), &self.bracket(j, k));
                    for (x, y) in r.iter_mut().zip(self.bracket_vec(&e(j), &self.bracket(k, i))) {
                        *x = &*x + &y;
                    }
                    for (x, y) in r.iter_mut().zip(self.bracket_vec(&e(k), &self.bracket(i, j))) {
                        *x = &*x + &y;
                    }
                    if r.iter().any(|c| !c.is_zero()) {
                        out.push(JacobiViolation {
                            triple: (i + 1, j + 1, k + 1),
                            residual: r,
                        });
                    }
                }
            }
        }
        out
    }

    /// `T_i` with `T_i[k][j]` the `x_k` coordinate of `[x_i, x_j]`.
    pub fn adjoint(&self) -> AdjointPencil {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut t = MatrixK::zeros(n, n);
                for j in 0..n {
                    for (k, c) in self.bracket(i, j).into_iter().enumerate() {
                        t.set(k, j, c);
                    }
                }
                t
            })
            .collect()
    }

    /// Matrix of `ad v` for a coordinate vector `v`.
    pub fn ad(&self, v: &[FieldElement]) -> MatrixK {
        let n = self.dim();
        let mut t = MatrixK::zeros(n, n);
        for j in 0..n {
            let mut e = zero_vec(n);
            e[j] = FieldElement::one();
            for (k, c) in self.bracket_vec(v, &e).into_iter().enumerate() {
                t.set(k, j, c);
            }
        }
        t
    }

    pub fn series(&self, kind: SeriesKind) -> Series {
        let n = self.dim();
        let full: Vec<Vec<FieldElement>> = (0..n)
            .map(|i| {
                let mut e = zero_vec(n);
                e[i] = FieldElement::one();
                e
            })
            .collect();
        let mut terms = vec![full.clone()];
        loop {
            let prev = terms.last().unwrap();
            let left = match kind {
                SeriesKind::Derived => prev,
                SeriesKind::LowerCentral => &full,
            };
            let mut gens = Vec::new();
            for u in left {
                for v in prev {
                    let b = self.bracket_vec(u, v);
                    if b.iter().any(|c| !c.is_zero()) {
                        gens.push(b);
                    }
                }
            }
            let next = span_basis(&gens, n);
            let stable = next.len() == prev.len();
            if stable {
                break;
            }
            let done = next.is_empty();
            terms.push(next);
            if done {
                break;
            }
        }
        Series { kind, terms }
    }

    pub fn is_solvable(&self) -> bool {
        self.series(SeriesKind::Derived).reaches_zero()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.series(SeriesKind::LowerCentral).reaches_zero()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let tau = vec![MatrixK::zeros(other.dim(), other.dim()); self.dim()];
        self.semidirect_sum(other, &tau)
    }

    /// `self ⋉_τ other` on the concatenated basis, with `[x_i, y_j] = τ(x_i) y_j`.
    pub fn semidirect_sum(&self, other: &Self, tau: &[MatrixK]) -> Result<Self> {
        let (p, q) = (self.dim(), other.dim());
        if tau.len() != p || tau.iter().any(|t| t.rows() != q || t.cols() != q) {
            return Err(Error::DimensionMismatch(format!(
                "tau needs {p} matrices of size {q}x{q}"
            )));
        }
        let ctx = merge_ctx(&self.ctx, &other.ctx)?;
        let ctx = tau
            .iter()
            .flat_map(MatrixK::entries)
            .try_fold(ctx, |c, x| c.embed(x).map(|(c, _)| c))?;
        for (i, t) in tau.iter().enumerate() {
            for a in 0..q {
                for b in a + 1..q {
                    let lhs = t.apply(&other.bracket(a, b));
                    let mut rhs = other.bracket_vec(&t.column(a), &unit(q, b));
                    let r2 = other.bracket_vec(&unit(q, a), &t.column(b));
                    for (x, y) in rhs.iter_mut().zip(r2) {
                        *x = &*x + &y;
                    }
                    if lhs != rhs {
                        return Err(Error::NotADerivation(i + 1));
                    }
                }
            }
        }
        for i in 0..p {
            for j in i + 1..p {
                let mut img = MatrixK::zeros(q, q);
                for (k, c) in self.bracket(i, j).iter().enumerate() {
                    img = img.add(&tau[k].scale(c));
                }
                if img != tau[i].commutator(&tau[j]) {
                    return Err(Error::NotAHomomorphism(i + 1, j + 1));
                }
            }
        }
        let n = p + q;
        let mut br = Vec::new();
        let pad = |v: Vec<FieldElement>, off: usize| {
            let mut out = zero_vec(n);
            for (k, c) in v.into_iter().enumerate() {
                out[k + off] = c;
            }
            out
        };
        for (&(i, j), v) in &self.brackets {
            br.push(((i, j), pad(v.clone(), 0)));
        }
        for (i, t) in tau.iter().enumerate() {
            for j in 0..q {
                br.push(((i, p + j), pad(t.column(j), p)));
            }
        }
        for (&(i, j), v) in &other.brackets {
            br.push(((p + i, p + j), pad(v.clone(), p)));
        }
        let mut labels: Vec<String> = self.labels.iter().chain(&other.labels).cloned().collect();
        let mut seen = std::collections::HashSet::new();
        if !labels.iter().all(|l| seen.insert(l.clone())) {
            labels = default_labels(n);
        }
        Self::new_unchecked(format!("{}+{}", self.name, other.name), labels, br, ctx)
    }

    /// Structure constants in the basis `x̂_i = Σ_j b_ij x_j`.
    pub fn change_basis(&self, b: &MatrixK) -> Result<Self> {
        let n = self.dim();
        if b.rows() != n || b.cols() != n {
            return Err(Error::DimensionMismatch(format!("basis change must be {n}x{n}")));
        }
        let mut ctx = self.ctx.clone();
        for x in b.entries() {
            ctx = ctx.embed(x)?.0;
        }
        let bt_inv = b.transpose().inverse()?;
        let mut br = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let w = self.bracket_vec(&b.row(i), &b.row(j));
                br.push(((i, j), bt_inv.apply(&w)));
            }
        }
        Self::new_unchecked(self.name.clone(), self.labels.clone(), br, ctx)
    }

    /// Whether `φ(x_i) = Σ_j b_ij x_j` is an invertible bracket-preserving map.
    pub fn is_automorphism(&self, b: &MatrixK) -> bool {
        let n = self.dim();
        if b.rows() != n || b.cols() != n || b.det().is_zero() {
            return false;
        }
        let bt = b.transpose();
        (0..n).all(|i| {
            (i + 1..n).all(|j| bt.apply(&self.bracket(i, j)) == self.bracket_vec(&b.row(i), &b.row(j)))
        })
    }

    /// `(tr T_1, …, tr T_n)`.
    pub fn trace_vector(&self) -> Vec<FieldElement> {
        self.adjoint().iter().map(MatrixK::trace).collect()
    }

    /// A basis of the derivation algebra, each derivation given by its matrix
    /// acting on coordinate columns.
    pub fn derivation_basis(&self) -> Vec<MatrixK> {
        let n = self.dim();
        let var = |r: usize, c: usize| r * n + c;
        let mut rows = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let ab = self.bracket(a, b);
                for m in 0..n {
                    let mut eq = zero_vec(n * n);
                    // D[x_a, x_b] at coordinate m
                    for (k, c) in ab.iter().enumerate() {
                        eq[var(m, k)] = &eq[var(m, k)] + c;
                    }
                    // − [D x_a, x_b] − [x_a, D x_b]
                    for l in 0..n {
                        let lb = &self.bracket(l, b)[m];
                        eq[var(l, a)] = &eq[var(l, a)] - lb;
                        let al = &self.bracket(a, l)[m];
                        eq[var(l, b)] = &eq[var(l, b)] - al;
                    }
                    if eq.iter().any(|c| !c.is_zero()) {
                        rows.push(eq);
                    }
                }
            }
        }
        let sols = if rows.is_empty() {
            (0..n * n).map(|k| unit(n * n, k)).collect()
        } else {
            MatrixK::from_rows(rows).expect("equal lengths").kernel()
        };
        sols.into_iter()
            .map(|s| {
                MatrixK::from_rows(s.chunks(n).map(<[FieldElement]>::to_vec).collect())
                    .expect("square")
            })
            .collect()
    }

    /// The same algebra over an extension of `ctx`.
    pub fn embed_into(&self, ctx: &TowerContext) -> Result<Self> {
        if ctx.extends(&self.ctx) {
            let mut out = self.clone();
            out.ctx = ctx.clone();
            return Ok(out);
        }
        let mut ctx = ctx.clone();
        let mut br = BTreeMap::new();
        for (k, v) in &self.brackets {
            let mut w = Vec::with_capacity(v.len());
            for c in v {
                let (next, e) = ctx.embed(c)?;
                ctx = next;
                w.push(e);
            }
            br.insert(*k, w);
        }
        Ok(LieAlgebra {
            name: self.name.clone(),
            labels: self.labels.clone(),
            brackets: br,
            ctx,
        })
    }
}

fn unit(n: usize, k: usize) -> Vec<FieldElement> {
    let mut e = zero_vec(n);
    e[k] = FieldElement::one();
    e
}

/// The deeper of two contexts when one extends the other.
pub fn merge_ctx(a: &TowerContext, b: &TowerContext) -> Result<TowerContext> {
    if a.extends(b) {
        Ok(a.clone())
    } else if b.extends(a) {
        Ok(b.clone())
    } else {
        Err(Error::IncompatibleTowers)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn v(xs: &[i64]) -> Vec<FieldElement> {
        xs.iter().map(|&x| fe(x)).collect()
    }

    #[test]
    fn jacobi_violation_is_reported() {
        let alg = LieAlgebra::new_unchecked(
            "bad",
            default_labels(3),
            [((0, 1), v(&[0, 0, 1])), ((0, 2), v(&[1, 0, 0]))],
            TowerContext::rationals(),
        )
        .unwrap();
        let bad = alg.validate();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].triple, (1, 2, 3));
        assert_eq!(bad[0].residual, v(&[0, 0, 1]));
    }

    #[test]
    fn heisenberg_series() {
        let h = catalog::heisenberg3();
        assert!(h.validate().is_empty());
        assert_eq!(h.series(SeriesKind::LowerCentral).dims(), vec![3, 1, 0]);
        assert!(h.is_nilpotent() && h.is_solvable());
        let sl2 = catalog::sl2();
        assert_eq!(sl2.series(SeriesKind::Derived).dims(), vec![3]);
        assert!(!sl2.is_solvable());
    }

    #[test]
    fn adjoint_of_sl2() {
        let t = catalog::sl2().adjoint();
        assert_eq!(t[0], MatrixK::diag(&v(&[0, 2, -2])));
    }

    #[test]
    fn basis_changes() {
        let h = catalog::heisenberg3();
        let swap = MatrixK::from_int_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let s = h.change_basis(&swap).unwrap();
        assert_eq!(s.bracket(0, 1), v(&[0, 0, -1]));
        assert_eq!(h.change_basis(&MatrixK::identity(3)).unwrap(), h);

        let sl2 = catalog::sl2();
        let d = MatrixK::diag(&[fe(1), fe(2), FieldElement::frac(1, 2)]);
        let s = sl2.change_basis(&d).unwrap();
        assert_eq!(s.bracket(0, 1), v(&[0, 2, 0]));
        assert_eq!(s.bracket(0, 2), v(&[0, 0, -2]));
        assert_eq!(s.bracket(1, 2), v(&[1, 0, 0]));
    }

    #[test]
    fn automorphisms() {
        let sl2 = catalog::sl2();
        let swap = MatrixK::from_int_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert!(!sl2.is_automorphism(&swap));
        let lab = catalog::l_ab(&fe(1), &fe(1)).unwrap();
        let b = MatrixK::from_int_rows(&[&[1, 1, 0], &[1, 2, 0], &[0, 0, 1]]);
        assert!(lab.is_automorphism(&b));
        assert_eq!(lab.trace_vector(), v(&[0, 0, 1]));
    }

    #[test]
    fn semidirect_checks() {
        let a1 = LieAlgebra::abelian(1);
        let a2 = LieAlgebra::abelian(2);
        let nil = MatrixK::from_int_rows(&[&[0, 1], &[0, 0]]);
        let s = a1.semidirect_sum(&a2, &[nil]).unwrap();
        assert!(s.validate().is_empty());
        // τ(x1) = ad-type map that is not a derivation of the Heisenberg algebra
        let h = catalog::heisenberg3();
        let bad = MatrixK::from_int_rows(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(a1.semidirect_sum(&h, &[bad]).unwrap_err(), Error::NotADerivation(1));
        // two commuting generators mapped to non-commuting matrices
        let e = MatrixK::from_int_rows(&[&[0, 1], &[0, 0]]);
        let f = MatrixK::from_int_rows(&[&[0, 0], &[1, 0]]);
        assert_eq!(a2.semidirect_sum(&a2, &[e, f]).unwrap_err(), Error::NotAHomomorphism(1, 2));
    }

    #[test]
    fn derivations_of_heisenberg() {
        // Der(h3) has dimension 6
        let d = catalog::heisenberg3().derivation_basis();
        assert_eq!(d.len(), 6);
        let h = catalog::heisenberg3();
        for m in &d {
            assert!(LieAlgebra::abelian(1).semidirect_sum(&h, std::slice::from_ref(m)).is_ok());
        }
        assert_eq!(LieAlgebra::abelian(2).derivation_basis().len(), 4);
    }
}
