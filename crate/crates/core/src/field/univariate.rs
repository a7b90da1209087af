//! Dense univariate polynomials over tower elements, factorization into
//! factors of degree at most two, and exact root extraction.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::numeric;
use super::rational::{divisors, lcm_denominators, sqrt_rational, Rational};
use super::tower::{FieldElement, TowerContext};
use crate::error::{Error, Result};

/// Coefficients in ascending order of degree, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UniPoly {
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| FieldElement::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(FieldElement::one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(vec![c])
    }

    /// `t − r`.
    pub fn linear_root(r: &FieldElement) -> Self {
        Self::new(vec![-r, FieldElement::one()])
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial given degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_rational)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = FieldElement::zero();
        Self::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).unwrap_or(&zero) + other.coeffs.get(k).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&FieldElement::from_int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![FieldElement::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dl = divisor.leading().inv()?;
        let dd = divisor.degree();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![FieldElement::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &dl;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Quotient when `divisor` divides exactly.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &FieldElement::from_int(i as i64))
                .collect(),
        )
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    fn map_coeffs(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        Self::new(self.coeffs.iter().map(f).collect())
    }

    /// Product of all conjugates of `self` over the tower, which has rational
    /// coefficients and vanishes at every root of `self`.
    pub fn norm_to_rational(&self) -> Self {
        let mut p = self.clone();
        while let Some(top) = p.coeffs.iter().map(FieldElement::level).max().filter(|&l| l > 0) {
            let conj = p.map_coeffs(|c| c.conjugate_at(top));
            p = p.mul(&conj);
        }
        p
    }

    /// Primitive integer coefficients with positive leading coefficient,
    /// proportional to `self`. Requires rational coefficients.
    fn primitive_integer(&self) -> Vec<BigInt> {
        let qs: Vec<&Rational> = self
            .coeffs
            .iter()
            .map(|c| c.as_rational().expect("rational polynomial"))
            .collect();
        let l = lcm_denominators(qs.iter().copied());
        let mut ints: Vec<BigInt> = qs.iter().map(|q| (*q * &l).to_integer()).collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, c));
        if !g.is_zero() {
            for c in &mut ints {
                *c /= &g;
            }
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            for c in &mut ints {
                *c = -c.clone();
            }
        }
        ints
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ => {
                    if !c.is_one() {
                        write!(f, "({c})*")?;
                    }
                    if k == 1 {
                        write!(f, "t")?
                    } else {
                        write!(f, "t^{k}")?
                    }
                }
            }
        }
        Ok(())
    }
}

/// Monic factors of degree ≤ 2 with multiplicities, plus whatever could not be
/// split that far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniFactorization {
    pub factors: Vec<(UniPoly, usize)>,
    pub residual: UniPoly,
}

impl UniFactorization {
    pub fn product(&self) -> UniPoly {
        self.factors
            .iter()
            .fold(self.residual.clone(), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }

    fn push(&mut self, f: UniPoly) {
        match self.factors.iter_mut().find(|(g, _)| *g == f) {
            Some((_, m)) => *m += 1,
            None => self.factors.push((f, 1)),
        }
    }

    fn sort(&mut self) {
        self.factors
            .sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    }
}

/// Factors a polynomial over the base field its coefficients generate.
///
/// Rational polynomials are split into irreducible factors over ℚ by rational
/// roots and quadratic factors read off from high-precision complex roots,
/// with a divisor search as a fallback for small coefficients.
/// Polynomials over a tower are handled through their norm: the rational
/// factors of the norm are intersected with `p` by gcds over the tower.
/// Irreducible pieces of degree ≥ 3 end up in `residual`.
pub fn factor_univariate(p: &UniPoly) -> UniFactorization {
    if p.is_zero() || p.degree() == 0 {
        return UniFactorization {
            factors: vec![],
            residual: UniPoly::one(),
        };
    }
    let p = p.monic();
    if p.is_rational() {
        return factor_rational(&p);
    }
    let norm = factor_rational(&p.norm_to_rational());
    let mut out = UniFactorization {
        factors: vec![],
        residual: UniPoly::one(),
    };
    let mut rem = p;
    for (f, _) in &norm.factors {
        loop {
            let g = rem.gcd(f);
            if g.degree() == 0 {
                break;
            }
            rem = rem.exact_div(&g).expect("gcd divides");
            out.push(g);
        }
    }
    out.residual = rem.monic();
    out.sort();
    out
}

fn factor_rational(p: &UniPoly) -> UniFactorization {
    let mut out = UniFactorization {
        factors: vec![],
        residual: UniPoly::one(),
    };
    let mut rem = p.monic();

    let t = UniPoly::from_ints(&[0, 1]);
    while rem.degree() > 0 && rem.coeffs[0].is_zero() {
        rem = rem.exact_div(&t).expect("zero root");
        out.push(t.clone());
    }

    let sf = rem.squarefree_part();
    let coeffs: Vec<Rational> = sf
        .coeffs
        .iter()
        .map(|c| c.as_rational().expect("rational polynomial").clone())
        .collect();
    let (guided_roots, guided_quadratics) = numeric::candidates(&coeffs);
    let divide_roots = |rem: &mut UniPoly, out: &mut UniFactorization, rs: Vec<FieldElement>| {
        for r in rs {
            if rem.degree() == 0 {
                break;
            }
            let lin = UniPoly::linear_root(&r);
            while rem.eval(&r).is_zero() {
                *rem = rem.exact_div(&lin).expect("root divides");
                out.push(lin.clone());
            }
        }
    };
    let guided = guided_roots.into_iter().map(FieldElement::from_rational).collect();
    divide_roots(&mut rem, &mut out, guided);
    for (b, c) in guided_quadratics {
        if rem.degree() < 2 {
            break;
        }
        if sqrt_rational(&(&b * &b - &c * Rational::from_integer(4.into()))).is_some() {
            continue;
        }
        let q = UniPoly::new(vec![
            FieldElement::from_rational(c),
            FieldElement::from_rational(b),
            FieldElement::one(),
        ]);
        while let Some(next) = rem.exact_div(&q) {
            rem = next;
            out.push(q.clone());
        }
    }

    let fallback = rational_root_candidates(&rem);
    divide_roots(&mut rem, &mut out, fallback);

    while rem.degree() >= 4 {
        let Some(q) = integer_quadratic_factor(&rem) else {
            break;
        };
        while let Some(next) = rem.exact_div(&q) {
            rem = next;
            out.push(q.clone());
        }
    }
    if rem.degree() == 2 {
        out.push(rem.clone());
        rem = UniPoly::one();
    }
    out.residual = rem.monic();
    out.sort();
    out
}

/// Largest number of candidate triples tried by the quadratic search.
const KRONECKER_BUDGET: usize = 250_000;

fn signed(divs: &[BigInt]) -> impl Iterator<Item = BigInt> + '_ {
    divs.iter().flat_map(|d| [d.clone(), -d.clone()])
}

fn rational_root_candidates(p: &UniPoly) -> Vec<FieldElement> {
    if p.degree() == 0 {
        return vec![];
    }
    let ints = p.primitive_integer();
    let (Some(num), Some(den)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return vec![];
    };
    if num.len() * den.len() > KRONECKER_BUDGET / 10 {
        return vec![];
    }
    let mut out: Vec<Rational> = signed(&num)
        .flat_map(|u| den.iter().map(move |v| Rational::new(u.clone(), v.clone())))
        .collect();
    out.sort();
    out.dedup();
    out.into_iter().map(FieldElement::from_rational).collect()
}

/// Kronecker-style search for a quadratic factor `a t² + b t + c` of a
/// rational polynomial without rational roots: `a | lead`, `c | const`,
/// `a + b + c | p(1)` and `a − b + c | p(−1)`.
fn integer_quadratic_factor(p: &UniPoly) -> Option<UniPoly> {
    let ints = p.primitive_integer();
    let at = |x: i64| -> BigInt {
        ints.iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * BigInt::from(x) + c)
    };
    let (p1, pm1) = (at(1), at(-1));
    let lead = divisors(ints.last()?)?;
    let cons = divisors(&ints[0])?;
    let ones = divisors(&p1)?;
    if lead.len() * cons.len() * ones.len() > KRONECKER_BUDGET {
        return None;
    }
    for a in &lead {
        for c in signed(&cons) {
            for d in signed(&ones) {
                let b = &d - a - &c;
                let h_m1 = a - &b + &c;
                if h_m1.is_zero() || !(&pm1 % &h_m1).is_zero() {
                    continue;
                }
                let cand = UniPoly::new(vec![
                    FieldElement::from_rational(Rational::from_integer(c.clone())),
                    FieldElement::from_rational(Rational::from_integer(b)),
                    FieldElement::from_rational(Rational::from_integer(a.clone())),
                ]);
                if p.exact_div(&cand).is_some() {
                    return Some(cand.monic());
                }
            }
        }
    }
    None
}

/// Both roots of `a t² + b t + c`, extending the tower by at most one level.
pub fn solve_quadratic(
    ctx: &TowerContext,
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
) -> Result<(TowerContext, FieldElement, FieldElement)> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let disc = b * b - &(FieldElement::from_int(4) * a * c);
    let (ctx, s) = ctx.adjoin_sqrt(&disc)?;
    let two_a = FieldElement::from_int(2) * a;
    let r1 = (-b + &s) / two_a.clone();
    let r2 = (-b - &s) / two_a;
    Ok((ctx, r1, r2))
}

/// All roots of `p` with multiplicity, extending the tower as needed.
pub fn roots(ctx: &TowerContext, p: &UniPoly) -> Result<(TowerContext, Vec<(FieldElement, usize)>)> {
    let fac = factor_univariate(p);
    if fac.residual.degree() > 0 {
        return Err(Error::UnsupportedFieldExtension {
            degree: fac.residual.degree(),
        });
    }
    let mut ctx = ctx.clone();
    let mut out: Vec<(FieldElement, usize)> = Vec::new();
    let mut add = |r: FieldElement, m: usize| match out.iter_mut().find(|(x, _)| *x == r) {
        Some((_, k)) => *k += m,
        None => out.push((r, m)),
    };
    for (f, m) in fac.factors {
        let c = f.coeffs();
        match f.degree() {
            1 => add(-&c[0], m),
            2 => {
                let (next, r1, r2) = solve_quadratic(&ctx, &c[2], &c[1], &c[0])?;
                ctx = next;
                add(r1, m);
                add(r2, m);
            }
            _ => unreachable!("factors have degree 1 or 2"),
        }
    }
    out.sort();
    Ok((ctx, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::rat;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn t_cubed() {
        let f = factor_univariate(&UniPoly::from_ints(&[0, 0, 0, 1]));
        assert_eq!(f.factors, vec![(UniPoly::from_ints(&[0, 1]), 3)]);
        assert_eq!(f.residual, UniPoly::one());
    }

    #[test]
    fn quartic_with_gaussian_pair() {
        // t⁴ + 2t³ + 2t² = t·t·(t + 1 − i)(t + 1 + i)
        let f = factor_univariate(&UniPoly::from_ints(&[0, 0, 2, 2, 1]));
        assert_eq!(
            f.factors,
            vec![
                (UniPoly::from_ints(&[0, 1]), 2),
                (UniPoly::from_ints(&[2, 2, 1]), 1)
            ]
        );
        assert_eq!(f.residual, UniPoly::one());
    }

    #[test]
    fn cube_root_of_two_is_residual() {
        let p = UniPoly::from_ints(&[-2, 0, 0, 1]);
        let f = factor_univariate(&p);
        assert!(f.factors.is_empty());
        assert_eq!(f.residual, p);
        assert_eq!(
            roots(&TowerContext::rationals(), &p).unwrap_err(),
            Error::UnsupportedFieldExtension { degree: 3 }
        );
    }

    #[test]
    fn product_of_two_irreducible_quadratics() {
        // (t² + 1)(t² − 2)(t − 3)²
        let p = UniPoly::from_ints(&[1, 0, 1])
            .mul(&UniPoly::from_ints(&[-2, 0, 1]))
            .mul(&UniPoly::from_ints(&[-3, 1]).pow(2));
        let f = factor_univariate(&p);
        assert_eq!(f.residual, UniPoly::one());
        assert_eq!(f.product(), p);
        assert_eq!(f.factors.len(), 3);
    }

    #[test]
    fn quadratic_roots() {
        let ctx = TowerContext::rationals();
        let (_, r1, r2) = solve_quadratic(&ctx, &fe(1), &fe(2), &fe(2)).unwrap();
        assert_eq!(r1.to_string(), "-1+i");
        assert_eq!(r2.to_string(), "-1-i");
        let (_, r1, r2) = solve_quadratic(&ctx, &fe(1), &fe(-1), &fe(0)).unwrap();
        assert_eq!((r1, r2), (fe(1), fe(0)));
        let (_, r1, r2) = solve_quadratic(&ctx, &fe(1), &fe(1), &fe(-1)).unwrap();
        assert_eq!(r1.to_string(), "-1/2+1/2*sqrt(5)");
        assert_eq!(r2.to_string(), "-1/2-1/2*sqrt(5)");
    }

    #[test]
    fn gaussian_base_polynomial() {
        // (t − (2+i))(t − 3) over ℚ(i)
        let g = TowerContext::gaussian();
        let a = g.gaussian_element(rat(2, 1), rat(1, 1)).unwrap();
        let p = UniPoly::linear_root(&a).mul(&UniPoly::linear_root(&fe(3)));
        let f = factor_univariate(&p);
        assert_eq!(f.residual, UniPoly::one());
        assert_eq!(f.factors.len(), 2);
        let (ctx, rs) = roots(&g, &p).unwrap();
        assert_eq!(ctx.depth(), 1);
        assert_eq!(rs, vec![(fe(3), 1), (a, 1)]);
    }

    #[test]
    fn gcd_and_division() {
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[1, 1]);
        assert_eq!(a.gcd(&b), b);
        assert_eq!(a.exact_div(&b), Some(UniPoly::from_ints(&[-1, 1])));
        assert_eq!(UniPoly::from_ints(&[1, 0, 1]).exact_div(&b), None);
    }
}
