//! Sparse multivariate polynomials in `z0..zn` over tower elements.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose order is
//! graded-lexicographic with `z0 > z1 > … > zn`; iterating in reverse therefore
//! yields the canonical descending order used by every rendering.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::matrix::MatrixK;

/// Largest pencil handled by [`PolyMatrix::det`].
pub const MAX_DET_DIM: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Self) -> Self {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "z{i}")?,
                _ => write!(f, "z{i}^{e}")?,
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// One term in the JSON rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: FieldElement) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, FieldElement::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_terms(nvars, [(Monomial::var(nvars, i), FieldElement::one())])
    }

    /// `Σ c_i z_i`.
    pub fn linear(coeffs: &[FieldElement]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial length");
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(FieldElement::zero()),
            1 if self.is_constant() => self.terms.values().next().cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "ambient variable count");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &FieldElement) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "ambient variable count");
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// `self / q` when `q` divides `self` exactly.
    pub fn exact_div(&self, q: &Self) -> Option<Self> {
        let (lq_m, lq_c) = q.leading()?;
        let inv = lq_c.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((lm, lc)) = rem.leading() {
            if !lq_m.divides(lm) {
                return None;
            }
            let m = lq_m.quotient_of(lm);
            let c = lc * &inv;
            rem = rem.sub(&q.mul_term(&m, &c));
            quot.add_term(m, &c);
        }
        Some(quot)
    }

    /// Largest `k` with `z_var^k` dividing `self`; zero for the zero polynomial.
    pub fn var_multiplicity(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).min().unwrap_or(0)
    }

    /// Divides by `z_var^k`, which must divide exactly.
    pub fn div_var_pow(&self, var: usize, k: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    assert!(e[var] >= k, "z{var}^{k} does not divide");
                    e[var] -= k;
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Partial evaluation: each assigned variable is replaced by its value.
    pub fn specialize(&self, assignment: &[(usize, FieldElement)]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let mut c = c.clone();
            for (v, x) in assignment {
                let k = std::mem::take(&mut e[*v]);
                if k > 0 {
                    c = c * x.pow(k);
                }
            }
            out.add_term(Monomial(e), &c);
        }
        out
    }

    /// Sets every variable with index above `last` to zero.
    pub fn truncate_vars(&self, last: usize) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[last + 1..].iter().all(|&e| e == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Replaces `z_var` by the polynomial `p`.
    pub fn compose_var(&self, var: usize, p: &Self) -> Self {
        let mut powers = vec![Self::one(self.nvars)];
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().mul(p);
                powers.push(next);
            }
            let mut rest = m.0.clone();
            rest[var] = 0;
            out = out.add(&powers[k].mul_term(&Monomial(rest), c));
        }
        out
    }

    /// Evaluates at `(z0, z'B)` where `z' = (z1..zn)` is a row vector, so that
    /// `z_j` becomes `Σ_k z_k b_kj` and `z0` is left alone.
    pub fn substitute_linear(&self, b: &MatrixK) -> Result<Self> {
        let n = self.nvars.saturating_sub(1);
        if b.rows() != n || b.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "substitution matrix is {}x{}, expected {n}x{n}",
                b.rows(),
                b.cols()
            )));
        }
        let forms: Vec<MultiPoly> = (1..=n)
            .map(|j| {
                let mut coeffs = vec![FieldElement::zero(); self.nvars];
                for (k, c) in coeffs.iter_mut().enumerate().skip(1).take(n) {
                    *c = b.get(k - 1, j - 1).clone();
                }
                Self::linear(&coeffs)
            })
            .collect();
        let mut powers: Vec<Vec<MultiPoly>> = vec![vec![Self::one(self.nvars)]; n];
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut z0 = vec![0; self.nvars];
            z0[0] = m.0[0];
            let mut t = Self::from_terms(self.nvars, [(Monomial(z0), c.clone())]);
            for j in 1..=n {
                let e = m.0[j] as usize;
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[j - 1];
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&forms[j - 1]);
                    pw.push(next);
                }
                t = t.mul(&pw[e]);
            }
            for (m, c) in &t.terms {
                out.add_term(m.clone(), c);
            }
        }
        Ok(out)
    }

    /// Reinterprets the polynomial in a larger ring, shifting `z1..` so that the
    /// old `z_i` (i ≥ 1) becomes `z_{i+offset}`; `z0` is kept.
    pub fn embed_shifted(&self, nvars: usize, offset: usize) -> Self {
        MultiPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0; nvars];
                    e[0] = m.0[0];
                    e[1 + offset..self.nvars + offset].copy_from_slice(&m.0[1..]);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms()
            .map(|(m, c)| TermJson {
                monomial: m.0.clone(),
                coeff: c.to_string(),
            })
            .collect()
    }
}

/// Splits a rendered coefficient into a sign and a body that can be prefixed to
/// a monomial.
fn signed_body(c: &FieldElement) -> (bool, String) {
    let s = c.to_string();
    let mut depth = 0i32;
    let compound = s.char_indices().any(|(k, ch)| {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        k > 0 && depth == 0 && (ch == '+' || ch == '-')
    });
    if compound {
        (false, format!("({s})"))
    } else if let Some(rest) = s.strip_prefix('-') {
        (true, rest.to_string())
    } else {
        (false, s)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let (neg, body) = signed_body(c);
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{body}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Square matrix of polynomials sharing one ambient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    nvars: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn new(dim: usize, nvars: usize, entries: Vec<MultiPoly>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.nvars != nvars) {
            return Err(Error::DimensionMismatch("entries in different rings".into()));
        }
        Ok(PolyMatrix {
            dim,
            nvars,
            entries,
        })
    }

    /// `z0·I + Σ z_i M_i` for square matrices `M_1..M_m` of one size.
    pub fn pencil(mats: &[MatrixK]) -> Result<Self> {
        let dim = mats.first().map_or(0, MatrixK::rows);
        if mats.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch("pencil matrices differ in size".into()));
        }
        let nvars = mats.len() + 1;
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                let mut coeffs = vec![FieldElement::zero(); nvars];
                if r == c {
                    coeffs[0] = FieldElement::one();
                }
                for (i, m) in mats.iter().enumerate() {
                    coeffs[i + 1] = m.get(r, c).clone();
                }
                entries.push(MultiPoly::linear(&coeffs));
            }
        }
        Self::new(dim, nvars, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r * self.dim + c]
    }

    /// Determinant by Laplace expansion along successive rows, memoizing the
    /// minor for every subset of columns.
    pub fn det(&self) -> Result<MultiPoly> {
        let k = self.dim;
        if k > MAX_DET_DIM {
            return Err(Error::DimensionLimitExceeded {
                got: k,
                max: MAX_DET_DIM,
            });
        }
        let mut minors: Vec<MultiPoly> = Vec::with_capacity(1 << k);
        minors.push(MultiPoly::one(self.nvars));
        for mask in 1usize..(1 << k) {
            let row = mask.count_ones() as usize - 1;
            let mut acc = MultiPoly::zero(self.nvars);
            for col in 0..k {
                if mask & (1 << col) == 0 {
                    continue;
                }
                let entry = self.get(row, col);
                let sub = &minors[mask ^ (1 << col)];
                if entry.is_zero() || sub.is_zero() {
                    continue;
                }
                let above = (mask >> (col + 1)).count_ones();
                let term = entry.mul(sub);
                acc = if above % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            minors.push(acc);
        }
        Ok(minors.pop().expect("full mask"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::TowerContext;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn z(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn difference_of_squares() {
        let p = z(2, 0).add(&z(2, 1)).mul(&z(2, 0).sub(&z(2, 1)));
        assert_eq!(p.to_string(), "z0^2 - z1^2");
        assert_eq!(p.exact_div(&z(2, 0).add(&z(2, 1))), Some(z(2, 0).sub(&z(2, 1))));
        let sq = z(2, 0).add(&z(2, 1)).pow(2);
        assert_eq!(sq.to_string(), "z0^2 + 2*z0*z1 + z1^2");
        assert_eq!(MultiPoly::zero(3).to_string(), "0");
    }

    #[test]
    fn gaussian_expansion() {
        let g = TowerContext::gaussian();
        let i = g.imaginary_unit().unwrap();
        let a = z(5, 0).add(&z(5, 4).scale(&fe(2)));
        let b = z(5, 0).add(&z(5, 4).scale(&(fe(1) + &i)));
        let p = a.mul(&b);
        assert_eq!(p.to_string(), "z0^2 + (3+i)*z0*z4 + (2+2i)*z4^2");
        let q = z(2, 0).sub(&z(2, 1).scale(&(fe(2) * &i)));
        assert_eq!(q.to_string(), "z0 - 2i*z1");
    }

    #[test]
    fn not_divisible() {
        // z0² − 4(z1² + z2 z3) has no linear factor z0 + z1
        let n = 4;
        let p = z(n, 0)
            .pow(2)
            .sub(&z(n, 1).pow(2).add(&z(n, 2).mul(&z(n, 3))).scale(&fe(4)));
        assert_eq!(p.exact_div(&z(n, 0).add(&z(n, 1))), None);
        assert_eq!(z(2, 0).pow(3).exact_div(&z(2, 0)), Some(z(2, 0).pow(2)));
    }

    #[test]
    fn linear_substitution() {
        let swap = MatrixK::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(z(3, 1).substitute_linear(&swap).unwrap(), z(3, 2));
        let p = z(2, 0).pow(2).sub(&z(2, 1).pow(2).scale(&fe(4)));
        let half = MatrixK::diag(&[FieldElement::frac(1, 2)]);
        assert_eq!(
            p.substitute_linear(&half).unwrap(),
            z(2, 0).pow(2).sub(&z(2, 1).pow(2))
        );
        assert!(matches!(
            p.substitute_linear(&swap),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn determinants() {
        let id = PolyMatrix::pencil(&[MatrixK::zeros(3, 3)]).unwrap();
        assert_eq!(id.det().unwrap(), z(2, 0).pow(3));
        let d = PolyMatrix::pencil(&[MatrixK::diag(&[fe(1), fe(2)])]).unwrap();
        assert_eq!(
            d.det().unwrap(),
            z(2, 0).add(&z(2, 1)).mul(&z(2, 0).add(&z(2, 1).scale(&fe(2))))
        );
        let big = PolyMatrix::pencil(&[MatrixK::zeros(13, 13)]).unwrap();
        assert_eq!(
            big.det().unwrap_err(),
            Error::DimensionLimitExceeded { got: 13, max: 12 }
        );
    }

    #[test]
    fn specialization_and_multiplicity() {
        let p = z(2, 0).pow(3);
        assert!(p.specialize(&[(0, fe(0))]).is_zero());
        let q = z(3, 0).pow(2).mul(&z(3, 1).add(&z(3, 2)));
        assert_eq!(q.var_multiplicity(0), 2);
        assert_eq!(q.div_var_pow(0, 2), z(3, 1).add(&z(3, 2)));
        assert_eq!(q.truncate_vars(1), z(3, 0).pow(2).mul(&z(3, 1)));
    }
}
