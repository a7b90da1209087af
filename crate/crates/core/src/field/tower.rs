//! Towers of quadratic extensions ℚ(√d₁)(√d₂)… and their elements.
//!
//! An element of level `L` is a pair `(a, b)` standing for `a + b·√d_L`, where
//! `a` and `b` live strictly below `L` and `b ≠ 0`. Because every adjoined
//! radicand is checked not to be a square one level down, `{1, √d_L}` is a basis
//! and this representation is unique: equality is structural.
//!
//! Elements carry a shared handle to their level (and therefore to its
//! radicand), so arithmetic needs no context argument. Mixing elements of two
//! towers that disagree at some level panics with `IncompatibleTowers`; front
//! ends re-embed values with [`TowerContext::embed`] first.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, rat, sqrt_rational, squarefree_split, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_TOWER_DEPTH: usize = 4;

/// One adjoined square root.
#[derive(Debug)]
pub struct Level {
    index: usize,
    radicand: FieldElement,
}

impl Level {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn radicand(&self) -> &FieldElement {
        &self.radicand
    }
}

impl PartialEq for Level {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.index == other.index && self.radicand == other.radicand)
    }
}

impl Eq for Level {}

#[derive(Debug)]
struct Quad {
    level: Arc<Level>,
    a: FieldElement,
    b: FieldElement,
}

#[derive(Clone, Debug)]
enum Repr {
    Rat(Rational),
    Quad(Arc<Quad>),
}

/// Exact scalar in a quadratic tower over ℚ.
#[derive(Clone, Debug)]
pub struct FieldElement(Repr);

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement(Repr::Rat(Rational::zero()))
    }

    pub fn one() -> Self {
        FieldElement(Repr::Rat(Rational::one()))
    }

    pub fn from_rational(q: Rational) -> Self {
        FieldElement(Repr::Rat(q))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    fn make(level: &Arc<Level>, a: FieldElement, b: FieldElement) -> Self {
        if b.is_zero() {
            a
        } else {
            FieldElement(Repr::Quad(Arc::new(Quad {
                level: level.clone(),
                a,
                b,
            })))
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Rat(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Rat(q) if q.is_one())
    }

    /// Index of the highest adjoined root this element uses (0 for ℚ).
    pub fn level(&self) -> usize {
        match &self.0 {
            Repr::Rat(_) => 0,
            Repr::Quad(q) => q.level.index,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.0 {
            Repr::Rat(q) => Some(q),
            Repr::Quad(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// `(a, b)` with `self = a + b·√d` at the top level, or `None` for rationals.
    pub fn top_coordinates(&self) -> Option<(&Arc<Level>, &FieldElement, &FieldElement)> {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Quad(q) => Some((&q.level, &q.a, &q.b)),
        }
    }

    fn level_handle(&self) -> Option<&Arc<Level>> {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Quad(q) => Some(&q.level),
        }
    }

    /// Coordinates with respect to `level`, which must be at least this element's level.
    fn split(&self, level: &Arc<Level>) -> (FieldElement, FieldElement) {
        match &self.0 {
            Repr::Quad(q) if q.level.index == level.index => (q.a.clone(), q.b.clone()),
            _ => (self.clone(), FieldElement::zero()),
        }
    }

    fn common_level(&self, other: &Self) -> Option<Arc<Level>> {
        match (self.level_handle(), other.level_handle()) {
            (None, None) => None,
            (Some(l), None) | (None, Some(l)) => Some(l.clone()),
            (Some(l), Some(m)) => match l.index.cmp(&m.index) {
                Ordering::Greater => Some(l.clone()),
                Ordering::Less => Some(m.clone()),
                Ordering::Equal => {
                    if l != m {
                        panic!("{}", Error::IncompatibleTowers);
                    }
                    Some(l.clone())
                }
            },
        }
    }

    fn collect_levels(&self, out: &mut Vec<Option<Arc<Level>>>) {
        if let Repr::Quad(q) = &self.0 {
            let idx = q.level.index;
            if out.len() < idx {
                out.resize(idx, None);
            }
            if out[idx - 1].is_none() {
                out[idx - 1] = Some(q.level.clone());
                q.level.radicand.collect_levels(out);
            }
            q.a.collect_levels(out);
            q.b.collect_levels(out);
        }
    }

    /// Whether two elements agree on every level they both use, so that they
    /// can be combined arithmetically.
    pub fn compatible(&self, other: &Self) -> bool {
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        self.collect_levels(&mut xs);
        other.collect_levels(&mut ys);
        xs.iter().zip(&ys).all(|pair| match pair {
            (Some(x), Some(y)) => x == y,
            _ => true,
        })
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Rat(x), Repr::Rat(y)) => Self::from_rational(x + y),
            _ => {
                let level = self.common_level(other).expect("non-rational operand");
                let (a1, b1) = self.split(&level);
                let (a2, b2) = other.split(&level);
                Self::make(&level, a1.add_ref(&a2), b1.add_ref(&b2))
            }
        }
    }

    pub fn neg_ref(&self) -> Self {
        match &self.0 {
            Repr::Rat(x) => Self::from_rational(-x),
            Repr::Quad(q) => Self::make(&q.level, q.a.neg_ref(), q.b.neg_ref()),
        }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Rat(x), Repr::Rat(y)) => Self::from_rational(x * y),
            _ if self.is_zero() || other.is_zero() => Self::zero(),
            _ => {
                let level = self.common_level(other).expect("non-rational operand");
                let (a1, b1) = self.split(&level);
                let (a2, b2) = other.split(&level);
                let d = &level.radicand;
                let a = a1.mul_ref(&a2).add_ref(&d.mul_ref(&b1.mul_ref(&b2)));
                let b = a1.mul_ref(&b2).add_ref(&a2.mul_ref(&b1));
                Self::make(&level, a, b)
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.0 {
            Repr::Rat(x) => {
                if x.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Self::from_rational(x.recip()))
                }
            }
            Repr::Quad(q) => {
                // (a + b√d)⁻¹ = (a − b√d) / (a² − d b²); the norm is nonzero
                // because √d is not in the field below.
                let norm = q
                    .a
                    .mul_ref(&q.a)
                    .sub_ref(&q.level.radicand.mul_ref(&q.b.mul_ref(&q.b)));
                let ninv = norm.inv()?;
                Ok(Self::make(
                    &q.level,
                    q.a.mul_ref(&ninv),
                    q.b.neg_ref().mul_ref(&ninv),
                ))
            }
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }

    /// The automorphism `√d ↦ −√d` at the given level index, identity below it.
    pub fn conjugate_at(&self, index: usize) -> Self {
        match &self.0 {
            Repr::Quad(q) if q.level.index == index => Self::make(&q.level, q.a.clone(), q.b.neg_ref()),
            _ => self.clone(),
        }
    }

    /// Complex conjugation: `i ↦ −i`, square roots of positive rationals fixed.
    /// Other radicands have no conjugation fixed by this engine.
    pub fn complex_conj(&self) -> Result<Self> {
        match &self.0 {
            Repr::Rat(_) => Ok(self.clone()),
            Repr::Quad(q) => {
                let a = q.a.complex_conj()?;
                let b = q.b.complex_conj()?;
                match q.level.radicand.as_rational() {
                    Some(d) if *d == -Rational::one() => Ok(Self::make(&q.level, a, b.neg_ref())),
                    Some(d) if d.is_positive() => Ok(Self::make(&q.level, a, b)),
                    _ => Err(Error::ConjugationUndefined(format!(
                        "sqrt({})",
                        q.level.radicand
                    ))),
                }
            }
        }
    }

    /// Sign of the first nonzero coordinate, reading the rational part first and
    /// then the radical coordinates from the top level down.
    pub fn sign_key(&self) -> i8 {
        match &self.0 {
            Repr::Rat(x) => {
                if x.is_positive() {
                    1
                } else if x.is_negative() {
                    -1
                } else {
                    0
                }
            }
            Repr::Quad(q) => match q.a.sign_key() {
                0 => q.b.sign_key(),
                s => s,
            },
        }
    }

    /// `(re, im)` when the element lies in ℚ(i).
    pub fn to_gaussian(&self) -> Option<(Rational, Rational)> {
        match &self.0 {
            Repr::Rat(x) => Some((x.clone(), Rational::zero())),
            Repr::Quad(q) => {
                let minus_one = q.level.radicand.as_rational()? == &-Rational::one();
                if !minus_one {
                    return None;
                }
                Some((q.a.as_rational()?.clone(), q.b.as_rational()?.clone()))
            }
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$inner(rhs)
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$inner(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$inner(rhs)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Div<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    /// Panics on division by zero; use [`FieldElement::checked_div`] otherwise.
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Div<FieldElement> for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        &self / &rhs
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl From<Rational> for FieldElement {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for FieldElement {}

/// Canonical total order on representations. It is deterministic but carries
/// no arithmetic meaning beyond ℚ, where it is the usual order.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Rat(x), Repr::Rat(y)) => x.cmp(y),
            (Repr::Rat(_), Repr::Quad(_)) => Ordering::Less,
            (Repr::Quad(_), Repr::Rat(_)) => Ordering::Greater,
            (Repr::Quad(x), Repr::Quad(y)) => {
                if Arc::ptr_eq(x, y) {
                    return Ordering::Equal;
                }
                x.level
                    .index
                    .cmp(&y.level.index)
                    .then_with(|| {
                        if Arc::ptr_eq(&x.level, &y.level) {
                            Ordering::Equal
                        } else {
                            x.level.radicand.cmp(&y.level.radicand)
                        }
                    })
                    .then_with(|| x.a.cmp(&y.a))
                    .then_with(|| x.b.cmp(&y.b))
            }
        }
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Rat(x) => {
                0u8.hash(state);
                x.hash(state);
            }
            Repr::Quad(q) => {
                q.level.index.hash(state);
                q.a.hash(state);
                q.b.hash(state);
            }
        }
    }
}

fn is_compound(s: &str) -> bool {
    s.char_indices().skip(1).any(|(_, c)| c == '+' || c == '-')
}

fn wrap(s: String) -> String {
    if is_compound(&s) {
        format!("({s})")
    } else {
        s
    }
}

/// Renders a rational multiple of a symbol, e.g. `i`, `-i`, `4/5i`.
fn scaled(coef: &Rational, symbol: &str, sep: &str) -> String {
    if coef.is_one() {
        symbol.to_string()
    } else if *coef == -Rational::one() {
        format!("-{symbol}")
    } else {
        format!("{}{sep}{symbol}", format_rational(coef))
    }
}

impl fmt::Display for FieldElement {
    /// Gaussian rationals render in the scalar literal grammar (`3/5+4/5i`,
    /// `-i`); deeper towers render as `a+b*sqrt(d)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((re, im)) = self.to_gaussian() {
            if im.is_zero() {
                return write!(f, "{}", format_rational(&re));
            }
            let imag = scaled(&im, "i", "");
            if re.is_zero() {
                return write!(f, "{imag}");
            }
            let sep = if im.is_negative() { "" } else { "+" };
            return write!(f, "{}{sep}{imag}", format_rational(&re));
        }
        let Repr::Quad(q) = &self.0 else {
            unreachable!("rationals are gaussian")
        };
        let radical = format!("sqrt({})", q.level.radicand);
        let rad_part = match q.b.as_rational() {
            Some(b) => scaled(b, &radical, "*"),
            None => format!("{}*{radical}", wrap(q.b.to_string())),
        };
        if q.a.is_zero() {
            write!(f, "{rad_part}")
        } else if rad_part.starts_with('-') {
            write!(f, "{}{rad_part}", wrap(q.a.to_string()))
        } else {
            write!(f, "{}+{rad_part}", wrap(q.a.to_string()))
        }
    }
}

/// The ordered list of adjoined square roots.
///
/// Contexts are values: adjoining returns a new context, and every element of
/// a context remains valid in each of its extensions.
#[derive(Clone, Debug)]
pub struct TowerContext {
    levels: Vec<Arc<Level>>,
    max_depth: usize,
}

impl Default for TowerContext {
    fn default() -> Self {
        Self::rationals()
    }
}

impl PartialEq for TowerContext {
    fn eq(&self, other: &Self) -> bool {
        self.levels == other.levels
    }
}

impl Eq for TowerContext {}

impl TowerContext {
    pub fn rationals() -> Self {
        Self::with_max_depth(DEFAULT_TOWER_DEPTH)
    }

    pub fn with_max_depth(max_depth: usize) -> Self {
        TowerContext {
            levels: Vec::new(),
            max_depth,
        }
    }

    /// ℚ(i).
    pub fn gaussian() -> Self {
        Self::rationals()
            .adjoin_sqrt(&FieldElement::from_int(-1))
            .expect("depth ≥ 1")
            .0
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    pub fn set_max_depth(mut self, max_depth: usize) -> Self {
        self.max_depth = max_depth;
        self
    }

    pub fn levels(&self) -> &[Arc<Level>] {
        &self.levels
    }

    /// The element `i`, if −1 has a square root in this tower.
    pub fn imaginary_unit(&self) -> Option<FieldElement> {
        self.sqrt(&FieldElement::from_int(-1))
    }

    pub fn gaussian_element(&self, re: Rational, im: Rational) -> Result<FieldElement> {
        if im.is_zero() {
            return Ok(FieldElement::from_rational(re));
        }
        let i = self
            .imaginary_unit()
            .ok_or_else(|| Error::ConjugationUndefined("no square root of -1 in tower".into()))?;
        Ok(FieldElement::from_rational(re) + FieldElement::from_rational(im) * i)
    }

    /// Whether every level `x` refers to is a level of this context.
    pub fn contains(&self, x: &FieldElement) -> bool {
        match &x.0 {
            Repr::Rat(_) => true,
            Repr::Quad(q) => {
                let idx = q.level.index;
                idx <= self.levels.len()
                    && *self.levels[idx - 1] == *q.level
                    && self.contains(&q.a)
                    && self.contains(&q.b)
            }
        }
    }

    /// Whether `other` is a prefix of (or equal to) this context.
    pub fn extends(&self, other: &TowerContext) -> bool {
        other.levels.len() <= self.levels.len()
            && other
                .levels
                .iter()
                .zip(&self.levels)
                .all(|(a, b)| a == b)
    }

    /// Square root of `d` inside the tower, with canonical sign.
    pub fn sqrt(&self, d: &FieldElement) -> Option<FieldElement> {
        if !self.contains(d) {
            return None;
        }
        self.sqrt_upto(d, self.levels.len()).map(canonical_sign)
    }

    fn sqrt_upto(&self, d: &FieldElement, upto: usize) -> Option<FieldElement> {
        if d.is_zero() {
            return Some(FieldElement::zero());
        }
        if upto == 0 {
            return d
                .as_rational()
                .and_then(sqrt_rational)
                .map(FieldElement::from_rational);
        }
        if d.level() > upto {
            return None;
        }
        let level = &self.levels[upto - 1];
        let (a, b) = d.split(level);
        let e = &level.radicand;
        if b.is_zero() {
            if let Some(r) = self.sqrt_upto(&a, upto - 1) {
                return Some(r);
            }
            // d = e·y²  ⇒  √d = y·√e
            let q = a.checked_div(e).ok()?;
            return self
                .sqrt_upto(&q, upto - 1)
                .map(|y| FieldElement::make(level, FieldElement::zero(), y));
        }
        // (x + y√e)² = a + b√e  ⇒  x² − e y² = ±√(a² − e b²), 2xy = b
        let norm = &a * &a - e * &(&b * &b);
        let s = self.sqrt_upto(&norm, upto - 1)?;
        let two = FieldElement::from_int(2);
        for s in [s.clone(), -s] {
            let x2 = (&a + &s) / two.clone();
            if let Some(x) = self.sqrt_upto(&x2, upto - 1) {
                if !x.is_zero() {
                    let y = &b / &(&two * &x);
                    return Some(FieldElement::make(level, x, y));
                }
            }
        }
        None
    }

    /// Returns a context containing `√d` together with that root. When the root
    /// already exists the context is returned unchanged.
    pub fn adjoin_sqrt(&self, d: &FieldElement) -> Result<(TowerContext, FieldElement)> {
        if !self.contains(d) {
            return Err(Error::IncompatibleTowers);
        }
        if let Some(r) = self.sqrt(d) {
            return Ok((self.clone(), r));
        }
        if self.levels.len() + 1 > self.max_depth {
            return Err(Error::TowerDepthExceeded {
                max: self.max_depth,
            });
        }
        let (coef, radicand) = match d.as_rational() {
            Some(q) => {
                let (c, r) = squarefree_split(q);
                (
                    FieldElement::from_rational(c),
                    FieldElement::from_rational(Rational::from_integer(r)),
                )
            }
            None => (FieldElement::one(), d.clone()),
        };
        let level = Arc::new(Level {
            index: self.levels.len() + 1,
            radicand,
        });
        let mut next = self.clone();
        next.levels.push(level.clone());
        let root = FieldElement::make(&level, FieldElement::zero(), coef);
        Ok((next, root))
    }

    /// Rewrites `x`, which may come from a different tower, as an element of an
    /// extension of this context.
    pub fn embed(&self, x: &FieldElement) -> Result<(TowerContext, FieldElement)> {
        if self.contains(x) {
            return Ok((self.clone(), x.clone()));
        }
        let Repr::Quad(q) = &x.0 else {
            return Ok((self.clone(), x.clone()));
        };
        let (ctx, d) = self.embed(&q.level.radicand)?;
        let (ctx, root) = ctx.adjoin_sqrt(&d)?;
        let (ctx, a) = ctx.embed(&q.a)?;
        let (ctx, b) = ctx.embed(&q.b)?;
        Ok((ctx, a + b * root))
    }
}

fn canonical_sign(r: FieldElement) -> FieldElement {
    if r.sign_key() < 0 {
        -r
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> FieldElement {
        FieldElement::frac(n, d)
    }

    #[test]
    fn rational_sum() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
    }

    #[test]
    fn conjugate_product_in_q_sqrt2() {
        let (_, s) = TowerContext::rationals().adjoin_sqrt(&q(2, 1)).unwrap();
        let one = FieldElement::one();
        assert_eq!((&one + &s) * (&one - &s), q(-1, 1));
    }

    #[test]
    fn unit_modulus_gaussian() {
        let ctx = TowerContext::gaussian();
        let alpha = ctx.gaussian_element(rat(3, 5), rat(4, 5)).unwrap();
        let conj = alpha.complex_conj().unwrap();
        assert_eq!(alpha.to_string(), "3/5+4/5i");
        assert_eq!(conj.to_string(), "3/5-4/5i");
        assert!((alpha * conj).is_one());
    }

    #[test]
    fn adjoin_perfect_square_keeps_context() {
        let ctx = TowerContext::rationals();
        let (next, r) = ctx.adjoin_sqrt(&q(4, 1)).unwrap();
        assert_eq!(next.depth(), 0);
        assert_eq!(r, q(2, 1));
    }

    #[test]
    fn adjoin_minus_one() {
        let (ctx, i) = TowerContext::rationals().adjoin_sqrt(&q(-1, 1)).unwrap();
        assert_eq!(ctx.depth(), 1);
        assert_eq!(i.to_string(), "i");
        assert_eq!(&i * &i, q(-1, 1));
    }

    #[test]
    fn sqrt8_over_q_sqrt2() {
        // (a + b√2)² = 8 forces a = 0, b² = 4
        let (ctx, s2) = TowerContext::rationals().adjoin_sqrt(&q(2, 1)).unwrap();
        let (next, r) = ctx.adjoin_sqrt(&q(8, 1)).unwrap();
        assert_eq!(next.depth(), 1);
        assert_eq!(r, q(2, 1) * s2);
    }

    #[test]
    fn sqrt_of_non_rational_element() {
        // 3 + 2√2 = (1 + √2)²
        let (ctx, s2) = TowerContext::rationals().adjoin_sqrt(&q(2, 1)).unwrap();
        let d = q(3, 1) + q(2, 1) * &s2;
        let (next, r) = ctx.adjoin_sqrt(&d).unwrap();
        assert_eq!(next.depth(), 1);
        assert_eq!(r, q(1, 1) + s2);
        // 2i = (1 + i)²
        let g = TowerContext::gaussian();
        let two_i = g.gaussian_element(rat(0, 1), rat(2, 1)).unwrap();
        assert_eq!(g.sqrt(&two_i).unwrap().to_string(), "1+i");
    }

    #[test]
    fn depth_limit() {
        let ctx = TowerContext::with_max_depth(1);
        let (ctx, _) = ctx.adjoin_sqrt(&q(2, 1)).unwrap();
        assert_eq!(
            ctx.adjoin_sqrt(&q(3, 1)).unwrap_err(),
            Error::TowerDepthExceeded { max: 1 }
        );
        // √6 = √2·√3 needs √3 first, but √8 is already present
        assert!(ctx.adjoin_sqrt(&q(8, 1)).is_ok());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(q(1, 1).checked_div(&q(0, 1)), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_forms() {
        let ctx = TowerContext::gaussian();
        let g = |a: i64, b: i64| ctx.gaussian_element(rat(a, 1), rat(b, 1)).unwrap();
        assert_eq!(g(0, -1).to_string(), "-i");
        assert_eq!(g(-2, -1).to_string(), "-2-i");
        assert_eq!(g(0, 2).to_string(), "2i");
        let (_, s5) = TowerContext::rationals().adjoin_sqrt(&q(5, 1)).unwrap();
        assert_eq!((q(-1, 2) + q(1, 2) * &s5).to_string(), "-1/2+1/2*sqrt(5)");
        assert_eq!((q(-1, 2) - q(1, 2) * &s5).to_string(), "-1/2-1/2*sqrt(5)");
    }

    #[test]
    fn embed_into_other_tower() {
        let (c5, _) = TowerContext::rationals().adjoin_sqrt(&q(5, 1)).unwrap();
        let g = TowerContext::gaussian();
        let x = g.gaussian_element(rat(1, 1), rat(2, 1)).unwrap();
        let (ctx, y) = c5.embed(&x).unwrap();
        assert_eq!(ctx.depth(), 2);
        assert!(ctx.contains(&y));
        assert_eq!(y.to_gaussian(), Some((rat(1, 1), rat(2, 1))));
    }

    #[test]
    fn conjugation_undefined_for_other_negatives() {
        let (_, r) = TowerContext::rationals().adjoin_sqrt(&q(-3, 1)).unwrap();
        assert!(matches!(r.complex_conj(), Err(Error::ConjugationUndefined(_))));
    }
}
